//! Exact Hausdorff distance between closed subsets.
//!
//! Along one element, the distance to a target set `B` is the lower envelope of
//! finitely many functions: leaving through an endpoint (`s + d(u,B)`,
//! `len - s + d(v,B)`) or reaching one of `B`'s intervals on the same element
//! directly. Every piece has slope -1, 0 or +1, so the envelope is piecewise
//! linear with breakpoints among the pairwise crossings of those lines, and a
//! supremum over a closed interval is attained at one of them.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::graph::{ElementId, ElementKind, GraphPoint, RayGraph};
use crate::rational::{ExtendedDistance, Q};
use crate::subsets::{ClosedSubset, Interval};

/// Distance from every vertex to `b`.
pub fn vertex_distances(g: &RayGraph, b: &ClosedSubset) -> Vec<Q> {
    (0..g.vertex_count())
        .map(|w| {
            let w = crate::graph::VertexId(w);
            let mut best: Option<Q> = None;
            let mut offer = |d: Q| {
                if best.is_none_or(|cur| d < cur) {
                    best = Some(d);
                }
            };
            for v in b.vertices() {
                offer(g.vertex_distance(w, *v));
            }
            for (e, iv) in b.pieces() {
                match g.element(e).kind {
                    ElementKind::Edge { from, to, length } => {
                        offer(g.vertex_distance(w, from) + iv.lo);
                        if let Some(hi) = iv.hi {
                            offer(g.vertex_distance(w, to) + length - hi);
                        }
                    }
                    ElementKind::Ray { at, .. } => offer(g.vertex_distance(w, at) + iv.lo),
                }
            }
            best.expect("target set is nonempty")
        })
        .collect()
}

fn interval_gap(s: Q, iv: &Interval) -> Q {
    let below = iv.lo - s;
    let above = iv.hi.map_or(Q::zero(), |hi| s - hi);
    below.max(above).max(Q::zero())
}

/// `d((e, s), B)` given the vertex distances of `B`.
fn local_distance(g: &RayGraph, e: ElementId, s: Q, b: &ClosedSubset, vdist: &[Q]) -> Q {
    let el = g.element(e);
    let through = el.exits(s).into_iter().map(|(v, d)| d + vdist[v.0]);
    let direct = b.intervals(e).iter().map(|iv| interval_gap(s, iv));
    through.chain(direct).min().expect("at least one exit")
}

/// The function `coord -> d(point, B)` along one element, stored by breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    element: ElementId,
    breakpoints: Vec<(Q, Q)>,
    /// Slope past the last breakpoint (rays only).
    end_slope: Option<Q>,
}

impl DistanceProfile {
    pub fn build(g: &RayGraph, e: ElementId, b: &ClosedSubset) -> Self {
        let vdist = vertex_distances(g, b);
        Self::with_vertex_distances(g, e, b, &vdist)
    }

    pub(crate) fn with_vertex_distances(g: &RayGraph, e: ElementId, b: &ClosedSubset, vdist: &[Q]) -> Self {
        let el = g.element(e);
        // value = s + c
        let mut rising = Vec::new();
        // value = c - s
        let mut falling = Vec::new();
        match el.kind {
            ElementKind::Edge { from, to, length } => {
                rising.push(vdist[from.0]);
                falling.push(length + vdist[to.0]);
            }
            ElementKind::Ray { at, .. } => rising.push(vdist[at.0]),
        }
        for iv in b.intervals(e) {
            falling.push(iv.lo);
            if let Some(hi) = iv.hi {
                rising.push(-hi);
            }
        }
        let two = Q::from_integer(2);
        let mut xs = vec![Q::zero()];
        xs.extend(el.length());
        xs.extend(rising.iter().map(|c| -*c));
        xs.extend(falling.iter().copied());
        for r in &rising {
            for f in &falling {
                xs.push((*f - *r) / two);
            }
        }
        xs.retain(|x| el.contains_coord(*x));
        xs.sort();
        xs.dedup();
        let breakpoints: Vec<(Q, Q)> = xs.iter().map(|&x| (x, local_distance(g, e, x, b, vdist))).collect();
        let end_slope = el.is_ray().then(|| {
            let (x, y) = *breakpoints.last().expect("coordinate 0 is always a breakpoint");
            local_distance(g, e, x + Q::one(), b, vdist) - y
        });
        DistanceProfile { element: e, breakpoints, end_slope }
    }

    pub fn element(&self) -> ElementId {
        self.element
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.breakpoints
    }

    pub fn end_slope(&self) -> Option<Q> {
        self.end_slope
    }

    pub fn value_at(&self, x: Q) -> Q {
        let bp = &self.breakpoints;
        match bp.binary_search_by(|(bx, _)| bx.cmp(&x)) {
            Ok(i) => bp[i].1,
            Err(0) => bp[0].1,
            Err(i) if i == bp.len() => {
                let (lx, ly) = bp[i - 1];
                ly + self.end_slope.unwrap_or_else(Q::zero) * (x - lx)
            }
            Err(i) => {
                let (x0, y0) = bp[i - 1];
                let (x1, y1) = bp[i];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Maximum of the profile over `[lo, hi]`.
    pub fn sup_on(&self, lo: Q, hi: Q) -> Q {
        let inner = self.breakpoints.iter().filter(|(x, _)| lo < *x && *x < hi).map(|(_, y)| *y);
        inner.chain([self.value_at(lo), self.value_at(hi)]).max().expect("nonempty candidates")
    }
}

/// `inf_{b in B} d(p, b)`.
pub fn dist_point_to_set(g: &RayGraph, p: &GraphPoint, b: &ClosedSubset) -> Result<Q> {
    g.check_point(p)?;
    let vdist = vertex_distances(g, b);
    Ok(local_distance(g, p.element, p.coord, b, &vdist))
}

/// `sup_{a in A} d(a, B)`; infinite when `A` runs off along a ray where `B` does not.
pub fn directed_hausdorff(g: &RayGraph, a: &ClosedSubset, b: &ClosedSubset) -> ExtendedDistance {
    if g.rays().iter().any(|&r| a.tail_start(r).is_some() && b.tail_start(r).is_none()) {
        return ExtendedDistance::Infinite;
    }
    let vdist = vertex_distances(g, b);
    let mut best = a.vertices().iter().map(|v| vdist[v.0]).max().unwrap_or_else(Q::zero);
    let mut element = None;
    let mut profile = None;
    for (e, iv) in a.pieces() {
        if element != Some(e) {
            element = Some(e);
            profile = Some(DistanceProfile::with_vertex_distances(g, e, b, &vdist));
        }
        let profile = profile.as_ref().expect("profile built for current element");
        // Past the later of the two tail starts both sets cover the ray.
        let hi = iv.hi.unwrap_or_else(|| iv.lo.max(b.tail_start(e).expect("checked above")));
        best = best.max(profile.sup_on(iv.lo, hi));
    }
    ExtendedDistance::Finite(best)
}

pub fn hausdorff(g: &RayGraph, a: &ClosedSubset, b: &ClosedSubset) -> ExtendedDistance {
    if g.rays().iter().any(|&r| a.tail_start(r).is_some() != b.tail_start(r).is_some()) {
        return ExtendedDistance::Infinite;
    }
    directed_hausdorff(g, a, b).max(directed_hausdorff(g, b, a))
}
