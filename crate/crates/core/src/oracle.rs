//! Brute-force ground truth on a grid: enumerate discretized elements of `C_n(X)`,
//! connect those within `δ` of each other, and count the clusters.
//!
//! Nothing here uses the piecewise-linear distance profiles; `oracle_hausdorff`
//! works from sampled points and the vertex distance table only.

use std::collections::BTreeSet;

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{ElementId, RayGraph};
use crate::metric::hausdorff;
use crate::rational::{fmt_q, ExtendedDistance, Q};
use crate::subsets::{component_count, direction_set, ClosedSubset, DirectionSet, Interval};
use crate::union_find::UnionFind;

/// Upper bound on raw candidates (before dedupe and filtering).
pub const CANDIDATE_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridParams {
    pub step: Q,
    pub trunc: Q,
    pub n: usize,
    pub max_pieces: usize,
    /// Hard cap on the number of enumerated sets.
    pub cap: usize,
}

impl GridParams {
    pub fn new(step: Q, trunc: Q, n: usize) -> Self {
        GridParams { step, trunc, n, max_pieces: 1, cap: 20_000 }
    }

    pub fn with_max_pieces(mut self, max_pieces: usize) -> Self {
        self.max_pieces = max_pieces;
        self
    }

    fn check(&self) -> Result<()> {
        if !self.step.is_positive() {
            return Err(Error::Precondition(format!("grid step must be positive, got {}", fmt_q(&self.step))));
        }
        if self.trunc.is_negative() || !(self.trunc / self.step).is_integer() {
            return Err(Error::Precondition(format!(
                "truncation {} is not a nonnegative multiple of the step {}",
                fmt_q(&self.trunc),
                fmt_q(&self.step)
            )));
        }
        if self.n == 0 || self.max_pieces == 0 {
            return Err(Error::Precondition("n and max pieces must be positive".into()));
        }
        Ok(())
    }
}

fn grid_upto(step: Q, top: Q) -> Vec<Q> {
    let mut out = Vec::new();
    let mut x = Q::from_integer(0);
    while x <= top {
        out.push(x);
        x += step;
    }
    if out.last() != Some(&top) {
        out.push(top);
    }
    out
}

/// Every way to place up to `max_pieces` pairwise separated grid intervals on one element
/// (the last may be a tail on a ray). Includes the empty choice.
fn element_choices(points: &[Q], tails: bool, max_pieces: usize) -> Vec<Vec<Interval>> {
    fn extend(
        points: &[Q],
        tails: bool,
        from: usize,
        left: usize,
        current: &mut Vec<Interval>,
        out: &mut Vec<Vec<Interval>>,
    ) {
        out.push(current.clone());
        if left == 0 {
            return;
        }
        for i in from..points.len() {
            for j in i..points.len() {
                current.push(Interval::closed(points[i], points[j]));
                extend(points, tails, j + 1, left - 1, current, out);
                current.pop();
            }
            if tails {
                current.push(Interval::tail(points[i]));
                out.push(current.clone());
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(points, tails, 0, max_pieces, &mut Vec::new(), &mut out);
    out
}

/// Number of entries `element_choices` would produce, saturating.
fn count_choices(m: usize, tails: bool, max_pieces: usize) -> u128 {
    let t = u128::from(tails);
    // prev[k]: choices with one fewer piece allowed, starting at point k.
    let mut prev = vec![1u128; m + 1];
    for _ in 0..max_pieces {
        let mut inner = vec![0u128; m + 1];
        for k in (0..m).rev() {
            inner[k] = inner[k + 1].saturating_add(prev[k + 1]);
        }
        let mut next = vec![1u128; m + 1];
        let mut acc = 0u128;
        for from in (0..m).rev() {
            acc = acc.saturating_add(inner[from]).saturating_add(t);
            next[from] = acc.saturating_add(1);
        }
        prev = next;
    }
    prev[0]
}

/// Grid-discretized elements of `C_n(X)`, in canonical order.
pub fn enumerate_sets(g: &RayGraph, params: &GridParams) -> Result<Vec<ClosedSubset>> {
    params.check()?;
    let grids: Vec<(ElementId, Vec<Q>, bool)> = g
        .element_ids()
        .map(|e| {
            let el = g.element(e);
            (e, grid_upto(params.step, el.length().unwrap_or(params.trunc)), el.is_ray())
        })
        .collect();
    let candidates = grids
        .iter()
        .fold(1u128, |acc, (_, pts, tails)| acc.saturating_mul(count_choices(pts.len(), *tails, params.max_pieces)));
    if candidates > CANDIDATE_CAP {
        return Err(Error::ResourceCap(format!(
            "grid has {candidates} candidate sets, above the limit of {CANDIDATE_CAP}; coarsen the step or lower the truncation"
        )));
    }
    let per_element: Vec<(ElementId, Vec<Vec<Interval>>)> =
        grids.iter().map(|(e, pts, tails)| (*e, element_choices(pts, *tails, params.max_pieces))).collect();

    let mut found = BTreeSet::new();
    let mut index = vec![0usize; per_element.len()];
    loop {
        let intervals: Vec<(ElementId, Interval)> = per_element
            .iter()
            .zip(&index)
            .flat_map(|((e, choices), &k)| choices[k].iter().map(move |iv| (*e, *iv)))
            .collect();
        if !intervals.is_empty() {
            let set = ClosedSubset::from_parts(g, Vec::new(), intervals)?;
            if component_count(g, &set) <= params.n {
                found.insert(set);
                if found.len() > params.cap {
                    return Err(Error::ResourceCap(format!("more than {} sets enumerated", params.cap)));
                }
            }
        }
        // Odometer step.
        let mut pos = 0;
        loop {
            if pos == index.len() {
                return Ok(found.into_iter().collect());
            }
            index[pos] += 1;
            if index[pos] < per_element[pos].1.len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleComponent {
    pub representative: ClosedSubset,
    pub size: usize,
    /// Direction sets seen inside the component (one, if the partition refines by direction).
    pub directions: BTreeSet<DirectionSet>,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub sets: Vec<ClosedSubset>,
    /// Component index of each set; components are numbered by first appearance.
    pub labels: Vec<usize>,
    pub components: Vec<OracleComponent>,
    pub warnings: Vec<String>,
}

impl OracleReport {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    /// Each component carries a single direction set, and no two components share one.
    pub fn refines_by_direction(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.components
            .iter()
            .all(|c| c.directions.len() == 1 && seen.insert(c.directions.iter().next().cloned()))
    }
}

/// Clusters the enumerated sets under the relation `d_H ≤ δ`.
pub fn oracle_components(g: &RayGraph, params: &GridParams, delta: Q) -> Result<OracleReport> {
    let sets = enumerate_sets(g, params)?;
    let mut warnings = Vec::new();
    let floor = params.step + params.step / Q::from_integer(5);
    if delta < floor {
        warnings.push(format!(
            "delta {} is below step + step/5 = {}; grid neighbours may fail to connect",
            fmt_q(&delta),
            fmt_q(&floor)
        ));
    }
    let bound = ExtendedDistance::Finite(delta);
    // Different direction sets are at infinite distance; skip those pairs up front.
    let directions: Vec<DirectionSet> = sets.iter().map(|s| direction_set(g, s)).collect();
    let adjacency: Vec<Vec<usize>> = (0..sets.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..sets.len())
                .filter(|&j| directions[i] == directions[j] && hausdorff(g, &sets[i], &sets[j]) <= bound)
                .collect()
        })
        .collect();
    let mut uf = UnionFind::new(sets.len());
    for (i, row) in adjacency.iter().enumerate() {
        for &j in row {
            uf.union(i, j);
        }
    }

    let mut labels = vec![usize::MAX; sets.len()];
    let mut root_label = std::collections::BTreeMap::new();
    let mut components: Vec<OracleComponent> = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        let root = uf.find(i);
        let label = *root_label.entry(root).or_insert_with(|| {
            components.push(OracleComponent { representative: set.clone(), size: 0, directions: BTreeSet::new() });
            components.len() - 1
        });
        labels[i] = label;
        components[label].size += 1;
        components[label].directions.insert(directions[i].clone());
    }
    Ok(OracleReport { sets, labels, components, warnings })
}

/// Grid samples of `a`: every vertex, and each interval stepped by `h` from its left end,
/// right end included. Tails stop at `cut`.
fn samples(g: &RayGraph, a: &ClosedSubset, h: Q, cut: Q) -> Vec<(ElementId, Q)> {
    let mut out: Vec<(ElementId, Q)> = a.vertices().iter().map(|&v| {
        let p = g.vertex_point(v);
        (p.element, p.coord)
    }).collect();
    for (e, iv) in a.pieces() {
        let hi = iv.hi.unwrap_or(cut.max(iv.lo));
        let mut x = iv.lo;
        while x < hi {
            out.push((e, x));
            x += h;
        }
        out.push((e, hi));
    }
    out
}

/// Nearest-sample distance structure for one sampled set.
struct SampleIndex<'g> {
    g: &'g RayGraph,
    by_element: Vec<Vec<Q>>,
    /// Distance from each vertex to the nearest sample.
    from_vertex: Vec<Option<Q>>,
}

impl<'g> SampleIndex<'g> {
    fn new(g: &'g RayGraph, pts: &[(ElementId, Q)]) -> Self {
        let mut by_element = vec![Vec::new(); g.elements().len()];
        let mut from_vertex: Vec<Option<Q>> = vec![None; g.vertex_count()];
        let table = g.vertex_distance_table();
        for &(e, x) in pts {
            by_element[e.0].push(x);
            for (u, du) in g.element(e).exits(x) {
                for (v, slot) in from_vertex.iter_mut().enumerate() {
                    let d = du + table[u.0][v];
                    if slot.is_none_or(|s| d < s) {
                        *slot = Some(d);
                    }
                }
            }
        }
        for xs in &mut by_element {
            xs.sort();
            xs.dedup();
        }
        SampleIndex { g, by_element, from_vertex }
    }

    fn nearest(&self, e: ElementId, x: Q) -> Q {
        let mut best: Option<Q> = None;
        let mut offer = |d: Q| {
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        };
        let xs = &self.by_element[e.0];
        let k = xs.partition_point(|y| *y < x);
        if let Some(y) = xs.get(k) {
            offer(*y - x);
        }
        if k > 0 {
            offer(x - xs[k - 1]);
        }
        for (u, du) in self.g.element(e).exits(x) {
            if let Some(dv) = self.from_vertex[u.0] {
                offer(du + dv);
            }
        }
        best.expect("sample sets are nonempty")
    }
}

/// Grid approximation of the Hausdorff distance; within `h` of the exact value when the
/// direction sets agree. Tails are cut at `T`, or further out if a tail starts beyond it.
pub fn oracle_hausdorff(g: &RayGraph, a: &ClosedSubset, b: &ClosedSubset, h: Q, trunc: Q) -> ExtendedDistance {
    if direction_set(g, a) != direction_set(g, b) {
        return ExtendedDistance::Infinite;
    }
    let cut = a
        .pieces()
        .chain(b.pieces())
        .filter(|(_, iv)| iv.is_tail())
        .map(|(_, iv)| iv.lo)
        .fold(trunc, Q::max);
    let sa = samples(g, a, h, cut);
    let sb = samples(g, b, h, cut);
    let directed = |from: &[(ElementId, Q)], to: &[(ElementId, Q)]| {
        let index = SampleIndex::new(g, to);
        from.iter().map(|&(e, x)| index.nearest(e, x)).max().expect("sample sets are nonempty")
    };
    ExtendedDistance::Finite(directed(&sa, &sb).max(directed(&sb, &sa)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, q};
    use crate::subsets::parse_set;

    fn formatted(g: &RayGraph, sets: &[ClosedSubset]) -> Vec<String> {
        sets.iter().map(|s| s.format(g)).collect()
    }

    #[test]
    fn ray_enumeration() {
        let g = fixtures::ray();
        let sets = enumerate_sets(&g, &GridParams::new(int(1), int(1), 1)).unwrap();
        let mut got = formatted(&g, &sets);
        got.sort();
        let mut want: Vec<String> = ["R1:[0,0]", "R1:[0,1]", "R1:[1,1]", "R1:[0,inf)", "R1:[1,inf)"]
            .iter()
            .map(|t| parse_set(t, &g).unwrap().format(&g))
            .collect();
        want.sort();
        assert_eq!(got, want);

        let zero = enumerate_sets(&g, &GridParams::new(int(1), int(0), 1)).unwrap();
        assert_eq!(zero.len(), 2);
    }

    #[test]
    fn connectivity_filter() {
        let g = fixtures::ray();
        let p = GridParams::new(int(1), int(3), 1).with_max_pieces(2);
        assert!(enumerate_sets(&g, &p).unwrap().iter().all(|s| component_count(&g, s) == 1));
        let two = enumerate_sets(&g, &GridParams { n: 2, ..p }).unwrap();
        assert!(two.iter().any(|s| component_count(&g, s) == 2));
    }

    #[test]
    fn choice_count_matches_generation() {
        let pts: Vec<Q> = (0..6).map(int).collect();
        for tails in [false, true] {
            for pieces in 1..4 {
                assert_eq!(count_choices(6, tails, pieces), element_choices(&pts, tails, pieces).len() as u128);
            }
        }
    }

    #[test]
    fn parameter_checks() {
        let g = fixtures::ray();
        let bad_trunc = GridParams::new(q(1, 2), q(1, 3), 1);
        assert!(matches!(enumerate_sets(&g, &bad_trunc), Err(Error::Precondition(_))));
        let tight = GridParams { cap: 3, ..GridParams::new(int(1), int(2), 1) };
        assert!(matches!(enumerate_sets(&g, &tight), Err(Error::ResourceCap(_))));
        let huge = GridParams::new(q(1, 100), int(10), 1).with_max_pieces(3);
        assert!(matches!(enumerate_sets(&fixtures::star3(), &huge), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn component_examples() {
        let params = GridParams::new(q(1, 2), int(2), 1);
        for (g, want) in [(fixtures::line(), 4), (fixtures::noose_inf(), 2), (fixtures::interval(), 1)] {
            let report = oracle_components(&g, &params, q(3, 5)).unwrap();
            assert_eq!(report.count(), want);
            assert!(report.refines_by_direction());
            assert!(report.warnings.is_empty());
        }
        let g = fixtures::interval();
        let coarse = oracle_components(&g, &GridParams::new(int(1), int(0), 1), q(1, 2)).unwrap();
        assert_eq!(coarse.warnings.len(), 1);
        assert!(coarse.count() > 1);
    }

    #[test]
    fn hausdorff_examples() {
        let g = fixtures::interval();
        let a = parse_set("E1:[0,1]", &g).unwrap();
        let b = parse_set("E1:[0,0]", &g).unwrap();
        let h = q(1, 100);
        match oracle_hausdorff(&g, &a, &b, h, int(0)) {
            ExtendedDistance::Finite(d) => assert!((d - int(1)).abs() <= h),
            ExtendedDistance::Infinite => panic!("finite expected"),
        }
        assert_eq!(oracle_hausdorff(&g, &a, &a, h, int(0)), ExtendedDistance::ZERO);

        let r = fixtures::ray();
        let bounded = parse_set("R1:[1/4,1/2]", &r).unwrap();
        let tail = parse_set("R1:[1/4,inf)", &r).unwrap();
        assert_eq!(oracle_hausdorff(&r, &bounded, &tail, h, int(2)), ExtendedDistance::Infinite);
    }

    #[test]
    fn tails_beyond_truncation() {
        let g = fixtures::ray();
        let a = parse_set("R1:[0,1] R1:[5,inf)", &g).unwrap();
        let b = parse_set("R1:[3,inf)", &g).unwrap();
        assert_eq!(oracle_hausdorff(&g, &a, &b, q(1, 4), int(1)), ExtendedDistance::Finite(int(3)));
    }
}
