//! Closed subsets of a ray-graph built from finitely many closed intervals.
//!
//! A [`ClosedSubset`] stores, per element, the sorted maximal intervals of the
//! set's preimage in that element's coordinate range, and separately the set of
//! graph vertices it contains. Degenerate intervals sitting on a vertex are
//! dropped in favour of the vertex entry, so two canonical values are equal
//! exactly when they describe the same subset of the space.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{ElementId, ElementKind, GraphPoint, RayGraph, VertexId};
use crate::rational::{fmt_q, parse_q, Q};
use crate::union_find::UnionFind;

/// Closed interval `[lo, hi]`, or the unbounded tail `[lo, inf)` when `hi` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Q,
    pub hi: Option<Q>,
}

impl Interval {
    pub fn closed(lo: Q, hi: Q) -> Self {
        Interval { lo, hi: Some(hi) }
    }

    pub fn point(at: Q) -> Self {
        Interval { lo: at, hi: Some(at) }
    }

    pub fn tail(lo: Q) -> Self {
        Interval { lo, hi: None }
    }

    pub fn is_tail(&self) -> bool {
        self.hi.is_none()
    }

    pub fn is_degenerate(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn contains(&self, x: Q) -> bool {
        self.lo <= x && self.hi.is_none_or(|hi| x <= hi)
    }

    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo
            && match (self.hi, other.hi) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => b <= a,
            }
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lo.cmp(&other.lo).then_with(|| match (self.hi, other.hi) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        })
    }
}

/// A nonempty closed subset in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedSubset {
    vertices: BTreeSet<VertexId>,
    pieces: BTreeMap<ElementId, Vec<Interval>>,
}

/// Set of 1-based ray indices along which a subset is unbounded.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectionSet(pub BTreeSet<usize>);

impl DirectionSet {
    pub fn empty() -> Self {
        DirectionSet(BTreeSet::new())
    }

    pub fn full(k: usize) -> Self {
        DirectionSet((1..=k).collect())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        DirectionSet(indices.into_iter().collect())
    }

    /// Every subset of `{1..k}`, in bitmask order.
    pub fn all(k: usize) -> Vec<DirectionSet> {
        (0u64..1 << k)
            .map(|mask| DirectionSet((1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect()))
            .collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn union(&self, other: &DirectionSet) -> DirectionSet {
        DirectionSet(self.0.union(&other.0).copied().collect())
    }

    /// Smallest ray index in exactly one of the two sets.
    pub fn first_difference(&self, other: &DirectionSet) -> Option<usize> {
        self.0.symmetric_difference(&other.0).min().copied()
    }
}

impl fmt::Display for DirectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl ClosedSubset {
    /// Builds a canonical set from raw vertex points and element intervals, validating ranges.
    pub fn from_parts(
        g: &RayGraph,
        vertices: impl IntoIterator<Item = VertexId>,
        intervals: impl IntoIterator<Item = (ElementId, Interval)>,
    ) -> Result<Self> {
        let mut raw: BTreeMap<ElementId, Vec<Interval>> = BTreeMap::new();
        for (e, iv) in intervals {
            validate(g, e, &iv)?;
            raw.entry(e).or_default().push(iv);
        }
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        if let Some(v) = vertices.iter().find(|v| v.0 >= g.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
        let set = canonicalize(g, vertices, raw);
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(set)
    }

    pub fn point(g: &RayGraph, p: GraphPoint) -> Result<Self> {
        Self::from_parts(g, [], [(p.element, Interval::point(p.coord))])
    }

    pub fn vertex(g: &RayGraph, v: VertexId) -> Result<Self> {
        Self::from_parts(g, [v], [])
    }

    /// The whole space.
    pub fn whole(g: &RayGraph) -> Self {
        canonical_element(g, &DirectionSet::full(g.ray_count())).expect("full direction set is valid")
    }

    fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.pieces.is_empty()
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn intervals(&self, e: ElementId) -> &[Interval] {
        self.pieces.get(&e).map_or(&[], |v| v.as_slice())
    }

    pub fn pieces(&self) -> impl Iterator<Item = (ElementId, &Interval)> + '_ {
        self.pieces.iter().flat_map(|(e, ivs)| ivs.iter().map(move |iv| (*e, iv)))
    }

    pub fn interval_count(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    /// Start of the unbounded tail on element `e`, if any.
    pub fn tail_start(&self, e: ElementId) -> Option<Q> {
        self.intervals(e).last().filter(|iv| iv.is_tail()).map(|iv| iv.lo)
    }

    pub fn is_bounded(&self) -> bool {
        self.pieces().all(|(_, iv)| !iv.is_tail())
    }

    pub fn contains_point(&self, g: &RayGraph, p: &GraphPoint) -> bool {
        match g.vertex_of(p) {
            Some(v) => self.vertices.contains(&v),
            None => self.intervals(p.element).iter().any(|iv| iv.contains(p.coord)),
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &ClosedSubset) -> bool {
        self.vertices.is_subset(&other.vertices)
            && self.pieces.iter().all(|(e, ivs)| {
                let theirs = other.intervals(*e);
                ivs.iter().all(|iv| theirs.iter().any(|t| t.covers(iv)))
            })
    }

    /// Copy of the set with every interval on the given elements removed (vertices kept only if
    /// still covered by something else or listed explicitly).
    pub fn without_elements(&self, g: &RayGraph, drop: &BTreeSet<ElementId>) -> Result<ClosedSubset> {
        let kept_pieces: Vec<(ElementId, Interval)> =
            self.pieces().filter(|(e, _)| !drop.contains(e)).map(|(e, iv)| (e, *iv)).collect();
        let touched: BTreeSet<VertexId> = self
            .pieces()
            .filter(|(e, _)| drop.contains(e))
            .flat_map(|(e, iv)| interval_vertices(g, e, iv))
            .collect();
        let still: BTreeSet<VertexId> = kept_pieces.iter().flat_map(|(e, iv)| interval_vertices(g, *e, iv)).collect();
        let vertices = self.vertices.iter().copied().filter(|v| !touched.contains(v) || still.contains(v));
        ClosedSubset::from_parts(g, vertices, kept_pieces)
    }

    /// Renders the set with the literal grammar accepted by [`parse_set`].
    pub fn format(&self, g: &RayGraph) -> String {
        let mut atoms: Vec<(GraphPoint, String)> = Vec::new();
        let mut covered = BTreeSet::new();
        for (e, iv) in self.pieces() {
            covered.extend(interval_vertices(g, e, iv));
            let id = &g.element(e).id;
            let text = match iv.hi {
                None => format!("{id}:[{},inf)", fmt_q(&iv.lo)),
                Some(hi) if hi == iv.lo => format!("{id}:{{{}}}", fmt_q(&iv.lo)),
                Some(hi) => format!("{id}:[{},{}]", fmt_q(&iv.lo), fmt_q(&hi)),
            };
            atoms.push((GraphPoint::new(e, iv.lo), text));
        }
        for v in self.vertices.iter().filter(|v| !covered.contains(v)) {
            let p = g.vertex_point(*v);
            atoms.push((p, format!("{}:{{{}}}", g.element(p.element).id, fmt_q(&p.coord))));
        }
        atoms.sort_by(|a, b| g.cmp_points(&a.0, &b.0));
        atoms.into_iter().map(|(_, t)| t).collect::<Vec<_>>().join(" ")
    }
}

fn validate(g: &RayGraph, e: ElementId, iv: &Interval) -> Result<()> {
    let el = g.elements().get(e.0).ok_or_else(|| Error::UnknownElement(format!("#{}", e.0)))?;
    let out = |c: &Q| Error::CoordOutOfRange { element: el.id.clone(), coord: fmt_q(c) };
    if iv.lo.is_negative() {
        return Err(out(&iv.lo));
    }
    match (iv.hi, el.length()) {
        (Some(hi), _) if hi < iv.lo => {
            Err(Error::MalformedInterval { lo: fmt_q(&iv.lo), hi: fmt_q(&hi) })
        }
        (Some(hi), Some(len)) if hi > len => Err(out(&hi)),
        (None, Some(_)) => Err(Error::CoordOutOfRange { element: el.id.clone(), coord: "inf".into() }),
        _ => Ok(()),
    }
}

/// Vertices an interval touches at its ends.
pub(crate) fn interval_vertices(g: &RayGraph, e: ElementId, iv: &Interval) -> Vec<VertexId> {
    let el = g.element(e);
    let mut out = Vec::new();
    out.extend(el.vertex_at(iv.lo));
    if let Some(hi) = iv.hi {
        out.extend(el.vertex_at(hi));
    }
    out
}

fn canonicalize(
    g: &RayGraph,
    mut vertices: BTreeSet<VertexId>,
    raw: BTreeMap<ElementId, Vec<Interval>>,
) -> ClosedSubset {
    let mut pieces = BTreeMap::new();
    for (e, mut ivs) in raw {
        ivs.sort();
        let mut merged: Vec<Interval> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            match merged.last_mut() {
                Some(last) if last.hi.is_none_or(|hi| iv.lo <= hi) => {
                    last.hi = match (last.hi, iv.hi) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        _ => None,
                    };
                }
                _ => merged.push(iv),
            }
        }
        for iv in &merged {
            vertices.extend(interval_vertices(g, e, iv));
        }
        let el = g.element(e);
        merged.retain(|iv| !(iv.is_degenerate() && el.vertex_at(iv.lo).is_some()));
        if !merged.is_empty() {
            pieces.insert(e, merged);
        }
    }
    ClosedSubset { vertices, pieces }
}

/// Canonical union of two sets on the same graph.
pub fn union(g: &RayGraph, a: &ClosedSubset, b: &ClosedSubset) -> ClosedSubset {
    union_all(g, [a, b])
}

pub fn union_all<'a>(g: &RayGraph, sets: impl IntoIterator<Item = &'a ClosedSubset>) -> ClosedSubset {
    let mut vertices = BTreeSet::new();
    let mut raw: BTreeMap<ElementId, Vec<Interval>> = BTreeMap::new();
    for s in sets {
        vertices.extend(s.vertices.iter().copied());
        for (e, iv) in s.pieces() {
            raw.entry(e).or_default().push(*iv);
        }
    }
    canonicalize(g, vertices, raw)
}

/// Adds raw intervals to a canonical set.
pub(crate) fn extend(g: &RayGraph, base: &ClosedSubset, extra: impl IntoIterator<Item = (ElementId, Interval)>) -> ClosedSubset {
    let mut raw: BTreeMap<ElementId, Vec<Interval>> = base.pieces.clone();
    for (e, iv) in extra {
        raw.entry(e).or_default().push(iv);
    }
    canonicalize(g, base.vertices.clone(), raw)
}

/// Number of connected components of the set as a subspace of the graph.
pub fn component_count(g: &RayGraph, a: &ClosedSubset) -> usize {
    let nv = g.vertex_count();
    let pieces: Vec<(ElementId, &Interval)> = a.pieces().collect();
    let mut uf = UnionFind::new(nv + pieces.len());
    for (i, (e, iv)) in pieces.iter().enumerate() {
        for v in interval_vertices(g, *e, iv) {
            uf.union(nv + i, v.0);
        }
    }
    let mut roots = BTreeSet::new();
    for v in a.vertices() {
        roots.insert(uf.find(v.0));
    }
    for i in 0..pieces.len() {
        roots.insert(uf.find(nv + i));
    }
    roots.len()
}

/// Indices of rays on which the set has an unbounded tail.
pub fn direction_set(g: &RayGraph, a: &ClosedSubset) -> DirectionSet {
    DirectionSet(
        g.rays()
            .iter()
            .filter(|&&r| a.tail_start(r).is_some())
            .map(|&r| match g.element(r).kind {
                ElementKind::Ray { index, .. } => index,
                ElementKind::Edge { .. } => unreachable!("rays() lists rays only"),
            })
            .collect(),
    )
}

fn check_directions(g: &RayGraph, delta: &DirectionSet) -> Result<()> {
    match delta.0.iter().find(|&&i| i == 0 || i > g.ray_count()) {
        Some(i) => Err(Error::Precondition(format!("ray index {i} outside 1..={}", g.ray_count()))),
        None => Ok(()),
    }
}

/// Every vertex, every edge in full, and exactly the rays in `delta` in full.
pub fn canonical_element(g: &RayGraph, delta: &DirectionSet) -> Result<ClosedSubset> {
    check_directions(g, delta)?;
    let mut intervals = Vec::new();
    for e in g.element_ids() {
        match g.element(e).kind {
            ElementKind::Edge { length, .. } => intervals.push((e, Interval::closed(Q::zero(), length))),
            ElementKind::Ray { index, .. } if delta.contains(index) => intervals.push((e, Interval::tail(Q::zero()))),
            ElementKind::Ray { .. } => {}
        }
    }
    ClosedSubset::from_parts(g, (0..g.vertex_count()).map(VertexId), intervals)
}

/// Whether the set has at most `n` components.
pub fn in_cn(g: &RayGraph, a: &ClosedSubset, n: usize) -> bool {
    component_count(g, a) <= n
}

/// Parses a whitespace-separated list of `ELEM:[a,b]`, `ELEM:[a,inf)`, `ELEM:{a}` atoms.
/// `@name` names a vertex point directly; `,` and `∪` between atoms are ignored.
pub fn parse_set(text: &str, g: &RayGraph) -> Result<ClosedSubset> {
    let mut vertices = Vec::new();
    let mut intervals = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let col = |i: usize| chars.get(i).map_or(text.len(), |c| c.0) + 1;
    while i < chars.len() {
        let c = chars[i].1;
        if c.is_whitespace() || c == ',' || c == '∪' {
            i += 1;
            continue;
        }
        if c == '@' {
            let start = i + 1;
            i = start;
            while i < chars.len() && !chars[i].1.is_whitespace() && chars[i].1 != ',' {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|c| c.1).collect();
            vertices.push(g.vertex(&name).ok_or(Error::UnknownVertex(name))?);
            continue;
        }
        let start = i;
        while i < chars.len() && chars[i].1 != ':' {
            if chars[i].1.is_whitespace() {
                return Err(Error::syntax(1, col(start), "expected `ELEM:` before interval"));
            }
            i += 1;
        }
        if i >= chars.len() {
            return Err(Error::syntax(1, col(start), "expected `:` after element id"));
        }
        let name: String = chars[start..i].iter().map(|c| c.1).collect();
        let element = g.lookup_element(&name)?;
        i += 1;
        let open = chars.get(i).map(|c| c.1);
        let close_set: &[char] = match open {
            Some('[') => &[']', ')'],
            Some('{') => &['}'],
            _ => return Err(Error::syntax(1, col(i), "expected `[` or `{`")),
        };
        let body_start = i + 1;
        while i < chars.len() && !close_set.contains(&chars[i].1) {
            i += 1;
        }
        if i >= chars.len() {
            return Err(Error::syntax(1, col(start), "unterminated interval"));
        }
        let close = chars[i].1;
        let body: String = chars[body_start..i].iter().map(|c| c.1).collect();
        i += 1;
        let coord = |s: &str| parse_q(s.trim()).map_err(|_| Error::syntax(1, col(body_start), format!("bad coordinate `{}`", s.trim())));
        let iv = if open == Some('{') {
            Interval::point(coord(&body)?)
        } else {
            let (a, b) = body.split_once(',').ok_or_else(|| Error::syntax(1, col(body_start), "expected `a,b`"))?;
            let b = b.trim();
            match (b, close) {
                ("inf" | "∞", ')') => Interval::tail(coord(a)?),
                (_, ']') => Interval::closed(coord(a)?, coord(b)?),
                _ => return Err(Error::syntax(1, col(body_start), "`)` only closes `[a,inf)`")),
            }
        };
        intervals.push((element, iv));
    }
    ClosedSubset::from_parts(g, vertices, intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, q};

    fn set(g: &RayGraph, s: &str) -> ClosedSubset {
        parse_set(s, g).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = fixtures::ray();
        let a = set(&g, "R1:[1,inf)");
        assert_eq!(a.tail_start(g.ray(1)), Some(int(1)));
        let g = fixtures::interval();
        assert_eq!(set(&g, "E1:[0,1/4] E1:[1/4,1/2]").format(&g), "E1:[0,1/2]");
        assert_eq!(parse_set("", &g), Err(Error::EmptySet));
        assert_eq!(parse_set("   ", &g), Err(Error::EmptySet));
    }

    #[test]
    fn parse_errors() {
        let g = fixtures::interval();
        assert!(matches!(parse_set("E9:[0,1]", &g), Err(Error::UnknownElement(_))));
        assert!(matches!(parse_set("E1:[0,2]", &g), Err(Error::CoordOutOfRange { .. })));
        assert!(matches!(parse_set("E1:[1/2,1/4]", &g), Err(Error::MalformedInterval { .. })));
        assert!(matches!(parse_set("E1:[0,inf)", &g), Err(Error::CoordOutOfRange { .. })));
        assert!(matches!(parse_set("E1:[0,1", &g), Err(Error::Syntax { .. })));
        assert!(matches!(parse_set("E1:(0,1]", &g), Err(Error::Syntax { .. })));
        assert!(matches!(parse_set("E1:[0,1)", &g), Err(Error::Syntax { .. })));
        assert!(matches!(parse_set("@w", &g), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn vertex_aliases_are_one_point() {
        let g = fixtures::triod();
        let a = set(&g, "E1:{0}");
        assert_eq!(a, set(&g, "E2:{0}"));
        assert_eq!(a, set(&g, "@v"));
        assert_eq!(a.format(&g), "E1:{0}");
        assert_eq!(union(&g, &set(&g, "E1:[0,1/2]"), &set(&g, "E3:{0}")), set(&g, "E1:[0,1/2]"));
        let g = fixtures::loop_graph();
        assert_eq!(set(&g, "E1:{1}"), set(&g, "E1:{0}"));
        assert_eq!(set(&g, "E1:[0,1/2] E1:{1}"), set(&g, "E1:[0,1/2]"));
    }

    #[test]
    fn union_examples() {
        let g = fixtures::interval();
        let u = union(&g, &set(&g, "E1:[0,1/4]"), &set(&g, "E1:[1/8,1/2]"));
        assert_eq!(u, set(&g, "E1:[0,1/2]"));
        let a = set(&g, "E1:[1/4,1/3] E1:{1}");
        assert_eq!(union(&g, &a, &a), a);
        let g = fixtures::ray();
        let u = union(&g, &set(&g, "R1:[0,1]"), &set(&g, "R1:[2,inf)"));
        assert_eq!(u.interval_count(), 2);
        assert_eq!(u.format(&g), "R1:[0,1] R1:[2,inf)");
        let u = union(&g, &set(&g, "R1:[0,2]"), &set(&g, "R1:[1,inf)"));
        assert_eq!(u.format(&g), "R1:[0,inf)");
    }

    #[test]
    fn component_count_examples() {
        let g = fixtures::triod();
        let leaves = set(&g, "E1:{1} E2:{1} E3:{1}");
        assert_eq!(component_count(&g, &leaves), 3);
        assert_eq!(component_count(&g, &set(&g, "E1:[0,1/2] E2:[0,1/2]")), 1);
        let g = fixtures::loop_graph();
        assert_eq!(component_count(&g, &set(&g, "E1:[0,1]")), 1);
        assert_eq!(component_count(&g, &set(&g, "E1:[0,1/4] E1:[3/4,1]")), 1);
        assert_eq!(component_count(&g, &set(&g, "E1:[1/8,1/4] E1:[3/4,7/8]")), 2);
        let g = fixtures::theta();
        // E1 covers a..b, so the ray pieces at both ends join through it.
        assert_eq!(component_count(&g, &set(&g, "E1:[0,1] R1:[0,1] R2:[0,2]")), 1);
        assert_eq!(component_count(&g, &set(&g, "E1:[0,1/2] R1:[0,1] R2:[0,2]")), 2);
    }

    #[test]
    fn direction_set_examples() {
        let g = fixtures::line();
        assert_eq!(direction_set(&g, &set(&g, "R1:[2,inf)")), DirectionSet::from_indices([1]));
        assert_eq!(direction_set(&g, &set(&g, "R1:[0,inf) R2:[0,inf)")), DirectionSet::full(2));
        assert_eq!(direction_set(&g, &set(&g, "R1:[0,5] R2:{3}")), DirectionSet::empty());
        assert_eq!(DirectionSet::full(2).to_string(), "{1,2}");
    }

    #[test]
    fn canonical_elements() {
        let g = fixtures::line();
        assert_eq!(canonical_element(&g, &DirectionSet::full(2)).unwrap(), ClosedSubset::whole(&g));
        assert_eq!(canonical_element(&g, &DirectionSet::empty()).unwrap(), set(&g, "@v"));
        assert!(canonical_element(&g, &DirectionSet::from_indices([3])).is_err());
        let g = fixtures::noose_inf();
        assert_eq!(canonical_element(&g, &DirectionSet::full(1)).unwrap(), set(&g, "E1:[0,1] R1:[0,inf)"));
        for (_, g) in fixtures::all() {
            for delta in DirectionSet::all(g.ray_count()) {
                let a = canonical_element(&g, &delta).unwrap();
                assert_eq!(direction_set(&g, &a), delta);
                assert_eq!(component_count(&g, &a), 1);
                assert!(in_cn(&g, &a, 1));
            }
        }
    }

    #[test]
    fn in_cn_examples() {
        let g = fixtures::triod();
        let leaves = set(&g, "E1:{1} E2:{1} E3:{1}");
        assert!(in_cn(&g, &leaves, 3));
        assert!(!in_cn(&g, &leaves, 2));
    }

    #[test]
    fn subset_and_removal() {
        let g = fixtures::line();
        let a = set(&g, "R1:[0,2] R2:[1,2]");
        assert!(set(&g, "R1:[1,2]").is_subset(&a));
        assert!(set(&g, "@v").is_subset(&a));
        assert!(!set(&g, "R2:{0}").is_subset(&set(&g, "R2:[1,2]")));
        assert!(set(&g, "R1:[3,inf)").is_subset(&set(&g, "R1:[2,inf)")));
        assert!(!set(&g, "R1:[3,inf)").is_subset(&set(&g, "R1:[2,9]")));
        let dropped = a.without_elements(&g, &[g.ray(1)].into_iter().collect()).unwrap();
        assert_eq!(dropped, set(&g, "R2:[1,2]"));
        let kept = set(&g, "@v R1:[0,1]").without_elements(&g, &[g.ray(1)].into_iter().collect());
        assert_eq!(kept, Err(Error::EmptySet));
        assert!(a.contains_point(&g, &GraphPoint::new(g.ray(2), q(3, 2))));
    }
}
