//! Open sets of the base graph as finite unions of metric balls, and membership
//! of closed subsets in the upper (`U+`), lower (`V-`) and basic (`<U1..Un>`)
//! Vietoris open sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::graph::{ElementId, GraphPoint, RayGraph, VertexId};
use crate::homotopy::HyperPath;
use crate::metric::{dist_point_to_set, DistanceProfile};
use crate::rational::{fmt_q, parse_q, Q};
use crate::subsets::{ClosedSubset, Interval};

/// Interval of element coordinates; `hi == None` is unbounded (rays only). An end is
/// closed only where it sits on the element boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenInterval {
    pub lo: Q,
    pub lo_closed: bool,
    pub hi: Option<Q>,
    pub hi_closed: bool,
}

impl OpenInterval {
    pub fn contains(&self, x: Q) -> bool {
        let above = self.lo < x || (self.lo == x && self.lo_closed);
        let below = match self.hi {
            None => true,
            Some(hi) => x < hi || (x == hi && self.hi_closed),
        };
        above && below
    }

    pub fn covers(&self, iv: &Interval) -> bool {
        let start = self.lo < iv.lo || (self.lo == iv.lo && self.lo_closed);
        let end = match (self.hi, iv.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(h), Some(b)) => b < h || (b == h && self.hi_closed),
        };
        start && end
    }

    pub fn intersects(&self, iv: &Interval) -> bool {
        let left_ok = match iv.hi {
            None => true,
            Some(b) => self.lo < b || (self.lo == b && self.lo_closed),
        };
        let right_ok = match self.hi {
            None => true,
            Some(h) => iv.lo < h || (iv.lo == h && self.hi_closed),
        };
        left_ok && right_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: GraphPoint,
    pub radius: Q,
}

/// A finite union of open balls, or the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenRegion {
    all: bool,
    balls: Vec<Ball>,
    form: BTreeMap<ElementId, Vec<OpenInterval>>,
    vertices: BTreeSet<VertexId>,
}

impl OpenRegion {
    pub fn all() -> Self {
        OpenRegion { all: true, balls: Vec::new(), form: BTreeMap::new(), vertices: BTreeSet::new() }
    }

    pub fn is_all(&self) -> bool {
        self.all
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    /// Per-element interval form of the region (empty for the whole space).
    pub fn intervals(&self, e: ElementId) -> &[OpenInterval] {
        self.form.get(&e).map_or(&[], |v| v.as_slice())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.all || self.vertices.contains(&v)
    }

    pub fn contains_point(&self, g: &RayGraph, p: &GraphPoint) -> bool {
        if self.all {
            return true;
        }
        match g.vertex_of(p) {
            Some(v) => self.vertices.contains(&v),
            None => self.intervals(p.element).iter().any(|iv| iv.contains(p.coord)),
        }
    }

    pub fn union(regions: &[OpenRegion]) -> OpenRegion {
        if regions.iter().any(|r| r.all) {
            return OpenRegion::all();
        }
        let mut form: BTreeMap<ElementId, Vec<OpenInterval>> = BTreeMap::new();
        let mut vertices = BTreeSet::new();
        let mut balls = Vec::new();
        for r in regions {
            balls.extend(r.balls.iter().cloned());
            vertices.extend(r.vertices.iter().copied());
            for (e, ivs) in &r.form {
                form.entry(*e).or_default().extend(ivs.iter().copied());
            }
        }
        for ivs in form.values_mut() {
            *ivs = merge(std::mem::take(ivs));
        }
        OpenRegion { all: false, balls, form, vertices }
    }

    pub fn format(&self, g: &RayGraph) -> String {
        if self.all {
            return "all".into();
        }
        let atoms: Vec<String> = self
            .balls
            .iter()
            .map(|b| format!("ball {} {}", g.format_point(&b.center), fmt_q(&b.radius)))
            .collect();
        atoms.join(" ")
    }

    /// Interval form rendered like a set literal, with `(`/`)` for open ends.
    pub fn format_form(&self, g: &RayGraph) -> String {
        if self.all {
            return "all".into();
        }
        let mut atoms = Vec::new();
        for (e, ivs) in &self.form {
            for iv in ivs {
                let hi = iv.hi.map_or("inf".to_string(), |h| fmt_q(&h));
                atoms.push(format!(
                    "{}:{}{},{}{}",
                    g.element(*e).id,
                    if iv.lo_closed { '[' } else { '(' },
                    fmt_q(&iv.lo),
                    hi,
                    if iv.hi_closed { ']' } else { ')' }
                ));
            }
        }
        atoms.join(" ")
    }
}

fn merge(mut ivs: Vec<OpenInterval>) -> Vec<OpenInterval> {
    ivs.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut out: Vec<OpenInterval> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        if let Some(last) = out.last_mut() {
            let joins = match last.hi {
                None => true,
                Some(h) => iv.lo < h || (iv.lo == h && (last.hi_closed || iv.lo_closed)),
            };
            if joins {
                match (last.hi, iv.hi) {
                    (None, _) => {}
                    (_, None) => {
                        last.hi = None;
                        last.hi_closed = false;
                    }
                    (Some(a), Some(b)) if b > a => {
                        last.hi = Some(b);
                        last.hi_closed = iv.hi_closed;
                    }
                    (Some(a), Some(b)) if b == a => last.hi_closed |= iv.hi_closed,
                    _ => {}
                }
                continue;
            }
        }
        out.push(iv);
    }
    out
}

/// `{ s : profile(s) < r }` on one element.
fn sublevel(g: &RayGraph, profile: &DistanceProfile, r: Q) -> Vec<OpenInterval> {
    let el = g.element(profile.element());
    let bp = profile.breakpoints();
    let mut points: Vec<Q> = bp.iter().map(|p| p.0).collect();
    for w in bp.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if (y0 < r && y1 > r) || (y0 > r && y1 < r) {
            points.push(x0 + (r - y0) * (x1 - x0) / (y1 - y0));
        }
    }
    let (lx, ly) = *bp.last().expect("profile has breakpoints");
    let slope = profile.end_slope();
    if let Some(s) = slope.filter(|s| s.is_positive()) {
        if ly < r {
            points.push(lx + (r - ly) / s);
        }
    }
    points.sort();
    points.dedup();

    // Cells alternate: point, open gap, point, ..., with a trailing unbounded gap on rays.
    let below = |x: Q| profile.value_at(x) < r;
    let mut cells: Vec<(Q, Option<Q>, bool, bool)> = Vec::new(); // (lo, hi, is_point, member)
    for (i, &x) in points.iter().enumerate() {
        cells.push((x, Some(x), true, below(x)));
        if let Some(&nx) = points.get(i + 1) {
            cells.push((x, Some(nx), false, below((x + nx) / Q::from_integer(2))));
        } else if el.is_ray() {
            cells.push((x, None, false, below(x + Q::one())));
        }
    }
    let mut out = Vec::new();
    let mut current: Option<OpenInterval> = None;
    for (lo, hi, is_point, member) in cells {
        if member {
            match current.as_mut() {
                Some(cur) => {
                    cur.hi = hi;
                    cur.hi_closed = is_point;
                }
                None => current = Some(OpenInterval { lo, lo_closed: is_point, hi, hi_closed: is_point }),
            }
        } else if let Some(cur) = current.take() {
            out.push(cur);
        }
    }
    out.extend(current);
    out
}

/// Open ball `{ x : d(x, p) < r }`.
pub fn ball(g: &RayGraph, p: GraphPoint, r: Q) -> Result<OpenRegion> {
    g.check_point(&p)?;
    if !r.is_positive() {
        return Err(Error::NonPositiveRadius);
    }
    let center = ClosedSubset::point(g, p)?;
    let mut form = BTreeMap::new();
    for e in g.element_ids() {
        let ivs = sublevel(g, &DistanceProfile::build(g, e, &center), r);
        if !ivs.is_empty() {
            form.insert(e, ivs);
        }
    }
    let mut vertices = BTreeSet::new();
    for v in 0..g.vertex_count() {
        let v = VertexId(v);
        if g.point_distance(&g.vertex_point(v), &p)? < r {
            vertices.insert(v);
        }
    }
    Ok(OpenRegion { all: false, balls: vec![Ball { center: p, radius: r }], form, vertices })
}

/// `A ⊂ U`.
pub fn member_upper(_g: &RayGraph, a: &ClosedSubset, u: &OpenRegion) -> bool {
    if u.all {
        return true;
    }
    a.vertices().iter().all(|v| u.vertices.contains(v))
        && a.pieces().all(|(e, iv)| u.intervals(e).iter().any(|o| o.covers(iv)))
}

/// `A ∩ V ≠ ∅`, decided by distances from ball centres.
pub fn member_lower(g: &RayGraph, a: &ClosedSubset, v: &OpenRegion) -> bool {
    v.all
        || v.balls.iter().any(|b| dist_point_to_set(g, &b.center, a).expect("ball centres are valid") < b.radius)
}

/// `A ∩ V ≠ ∅`, decided on the interval form instead of distances.
pub fn meets_form(a: &ClosedSubset, v: &OpenRegion) -> bool {
    v.all
        || a.vertices().iter().any(|x| v.vertices.contains(x))
        || a.pieces().any(|(e, iv)| v.intervals(e).iter().any(|o| o.intersects(iv)))
}

/// `A ∈ <U1, ..., Un>`.
pub fn member_basic(g: &RayGraph, a: &ClosedSubset, regions: &[OpenRegion]) -> Result<bool> {
    if regions.is_empty() {
        return Err(Error::Precondition("basic open set needs at least one region".into()));
    }
    let covered = member_upper(g, a, &OpenRegion::union(regions));
    Ok(covered && regions.iter().all(|r| member_lower(g, a, r)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Every sampled `t` with `|t - t0| <= delta` stays in the open set.
    Delta(Q),
    /// Halving reached the sampling resolution; `escape` is the nearest sampled exit.
    Failure { escape: Q },
}

/// Searches for `delta` such that the path stays in `<Us>` on the sampled neighbourhood of `t0`.
/// The search starts from the smallest `delta` covering the whole domain and halves it.
pub fn continuity_witness(p: &HyperPath, t0: Q, regions: &[OpenRegion], resolution: Q) -> Result<Witness> {
    if !resolution.is_positive() {
        return Err(Error::Precondition("resolution must be positive".into()));
    }
    let g = p.graph();
    if !member_basic(g, &p.eval(t0)?, regions)? {
        return Err(Error::Precondition("path value at t0 is outside the open set".into()));
    }
    let union = OpenRegion::union(regions);
    let mut cache: HashMap<i128, bool> = HashMap::new();
    let mut inside = |k: i128| -> bool {
        *cache.entry(k).or_insert_with(|| {
            let t = t0 + resolution * Q::from_integer(k);
            let s = p.eval(t).expect("sample within [0,1]");
            member_upper(g, &s, &union) && regions.iter().all(|r| member_lower(g, &s, r))
        })
    };
    let mut delta = t0.max(Q::one() - t0);
    let mut nearest_escape: Option<Q> = None;
    while delta >= resolution {
        let reach = (delta / resolution).floor().to_integer();
        let lo = -((t0 / resolution).floor().to_integer()).min(reach);
        let hi = (((Q::one() - t0) / resolution).floor().to_integer()).min(reach);
        let mut ok = true;
        for k in (lo..=hi).filter(|k| *k != 0) {
            if !inside(k) {
                let d = resolution * Q::from_integer(k.abs());
                nearest_escape = Some(nearest_escape.map_or(d, |e: Q| e.min(d)));
                ok = false;
            }
        }
        if ok {
            return Ok(Witness::Delta(delta));
        }
        delta /= Q::from_integer(2);
    }
    Ok(Witness::Failure { escape: nearest_escape.unwrap_or(resolution) })
}

/// Parses one region: `all`, or one or more `ball ELEM:coord radius` atoms.
pub fn parse_open(text: &str, g: &RayGraph) -> Result<OpenRegion> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens == ["all"] {
        return Ok(OpenRegion::all());
    }
    if tokens.is_empty() || !tokens.len().is_multiple_of(3) {
        return Err(Error::syntax(1, 1, "expected `all` or `ball ELEM:coord radius` atoms"));
    }
    let mut regions = Vec::new();
    for chunk in tokens.chunks(3) {
        if chunk[0] != "ball" {
            return Err(Error::syntax(1, 1, format!("expected `ball`, found `{}`", chunk[0])));
        }
        regions.push(ball(g, g.parse_point(chunk[1])?, parse_q(chunk[2])?)?);
    }
    Ok(OpenRegion::union(&regions))
}
