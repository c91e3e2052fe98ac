//! Explicit paths through the hyperspace.
//!
//! [`path_to_canonical`] joins a set `A` to the canonical element `A_Δ` of its
//! unbounded direction set `Δ` in three stages:
//!
//! * **F0** grows every tail `[a, inf)` on a ray in `Δ` down to the vertex;
//! * **F1** shrinks and slides every bounded piece on a ray outside `Δ` onto the
//!   attachment vertex (piece `[a, b]` becomes `[(1-t)a, (1-t)b]`);
//! * **F2** sweeps a covering walk of the finite part of the graph, adding its
//!   image `γ([0, t])`.
//!
//! [`vietoris_path`] appends **GAMMA**, which grows `[0, t/(1-t)]` on each
//! remaining ray and reaches the whole space at `t = 1`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{ElementId, ElementKind, GraphPoint, RayGraph, VertexId};
use crate::rational::{abs_diff, ExtendedDistance, Q};
use crate::subsets::{
    canonical_element, component_count, direction_set, extend, ClosedSubset, DirectionSet, Interval,
};

/// One leg of an element traversal inside the covering walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traversal {
    pub element: ElementId,
    pub from: Q,
    pub to: Q,
}

impl Traversal {
    pub fn length(&self) -> Q {
        abs_diff(self.from, self.to)
    }
}

/// Depth-first edge-doubling walk covering every edge of the graph, rays excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringWalk {
    pub start: GraphPoint,
    pub steps: Vec<Traversal>,
    length: Q,
}

impl CoveringWalk {
    pub fn build(g: &RayGraph, start: GraphPoint) -> Self {
        let mut steps = Vec::new();
        let root = match g.vertex_of(&start) {
            Some(v) => v,
            None => {
                steps.push(Traversal { element: start.element, from: start.coord, to: Q::zero() });
                g.element(start.element).start()
            }
        };
        let mut edges: Vec<ElementId> = g.edges().collect();
        edges.sort_by(|a, b| g.element(*a).id.cmp(&g.element(*b).id));
        let mut visited = vec![false; g.vertex_count()];
        let mut used = vec![false; g.elements().len()];
        walk_from(g, root, &edges, &mut visited, &mut used, &mut steps);
        let length = steps.iter().map(Traversal::length).sum();
        CoveringWalk { start, steps, length }
    }

    pub fn length(&self) -> Q {
        self.length
    }

    /// Image of the walk restricted to the parameter range `[0, t]`.
    pub fn prefix(&self, t: Q) -> Vec<(ElementId, Interval)> {
        let mut out = vec![(self.start.element, Interval::point(self.start.coord))];
        let mut budget = t * self.length;
        for step in &self.steps {
            if budget.is_zero() {
                break;
            }
            let len = step.length();
            let reach = len.min(budget);
            let end = if step.to >= step.from { step.from + reach } else { step.from - reach };
            out.push((step.element, Interval::closed(step.from.min(end), step.from.max(end))));
            budget -= reach;
        }
        out
    }
}

fn walk_from(
    g: &RayGraph,
    at: VertexId,
    edges: &[ElementId],
    visited: &mut [bool],
    used: &mut [bool],
    steps: &mut Vec<Traversal>,
) {
    visited[at.0] = true;
    for &e in edges {
        let ElementKind::Edge { from, to, length } = g.element(e).kind else { continue };
        if used[e.0] || (from != at && to != at) {
            continue;
        }
        used[e.0] = true;
        if from == to {
            steps.push(Traversal { element: e, from: Q::zero(), to: length });
            continue;
        }
        let (out, back, next) = if from == at { (Q::zero(), length, to) } else { (length, Q::zero(), from) };
        steps.push(Traversal { element: e, from: out, to: back });
        if !visited[next.0] {
            walk_from(g, next, edges, visited, used, steps);
        }
        steps.push(Traversal { element: e, from: back, to: out });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    Constant,
    F0,
    F1,
    F2,
    Gamma,
}

impl StageKind {
    pub fn name(&self) -> &'static str {
        match self {
            StageKind::Constant => "CONST",
            StageKind::F0 => "F0",
            StageKind::F1 => "F1",
            StageKind::F2 => "F2",
            StageKind::Gamma => "GAMMA",
        }
    }
}

/// A single stage, parametrized by `t` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stage {
    Constant(ClosedSubset),
    /// `start ∪ ⋃ [(1-t)a, inf)` over the listed (ray, a).
    GrowTails { start: ClosedSubset, tails: Vec<(ElementId, Q)> },
    /// `base ∪ ⋃ [(1-t)a, (1-t)b]` over the listed (ray, a, b).
    Slide { base: Option<ClosedSubset>, pieces: Vec<(ElementId, Q, Q)> },
    /// `base ∪ walk([0, t])`.
    Sweep { base: ClosedSubset, walk: CoveringWalk },
    /// `base ∪ ⋃ [0, t/(1-t)]` over the listed rays for `t < 1`; the rays in full at `t = 1`.
    Grow { base: ClosedSubset, rays: Vec<ElementId> },
}

impl Stage {
    pub fn kind(&self) -> StageKind {
        match self {
            Stage::Constant(_) => StageKind::Constant,
            Stage::GrowTails { .. } => StageKind::F0,
            Stage::Slide { .. } => StageKind::F1,
            Stage::Sweep { .. } => StageKind::F2,
            Stage::Grow { .. } => StageKind::Gamma,
        }
    }

    pub fn eval(&self, g: &RayGraph, t: Q) -> ClosedSubset {
        let rest = Q::one() - t;
        match self {
            Stage::Constant(s) => s.clone(),
            Stage::GrowTails { start, tails } => {
                extend(g, start, tails.iter().map(|&(r, a)| (r, Interval::tail(rest * a))))
            }
            Stage::Slide { base, pieces } => {
                let moved = pieces.iter().map(|&(r, a, b)| (r, Interval::closed(rest * a, rest * b)));
                match base {
                    Some(base) => extend(g, base, moved),
                    None => ClosedSubset::from_parts(g, [], moved).expect("a sliding stage has pieces"),
                }
            }
            Stage::Sweep { base, walk } => extend(g, base, walk.prefix(t)),
            Stage::Grow { base, rays } => {
                if rest.is_zero() {
                    extend(g, base, rays.iter().map(|&r| (r, Interval::tail(Q::zero()))))
                } else {
                    let reach = t / rest;
                    extend(g, base, rays.iter().map(|&r| (r, Interval::closed(Q::zero(), reach))))
                }
            }
        }
    }

    /// Constant `L` with `d_H(stage(s), stage(t)) <= L |s - t|`; infinite for GAMMA.
    pub fn lipschitz(&self) -> ExtendedDistance {
        let max = |xs: &mut dyn Iterator<Item = Q>| ExtendedDistance::Finite(xs.max().unwrap_or_else(Q::zero));
        match self {
            Stage::Constant(_) => ExtendedDistance::ZERO,
            Stage::GrowTails { tails, .. } => max(&mut tails.iter().map(|t| t.1)),
            Stage::Slide { pieces, .. } => max(&mut pieces.iter().map(|p| p.1.max(p.2))),
            Stage::Sweep { walk, .. } => ExtendedDistance::Finite(walk.length()),
            Stage::Grow { rays, .. } if rays.is_empty() => ExtendedDistance::ZERO,
            Stage::Grow { .. } => ExtendedDistance::Infinite,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub stage: Stage,
    pub reversed: bool,
}

impl Leg {
    fn eval(&self, g: &RayGraph, t: Q) -> ClosedSubset {
        self.stage.eval(g, if self.reversed { Q::one() - t } else { t })
    }
}

/// Piecewise path `[0,1] -> C_n(X)`; legs share the parameter interval equally.
#[derive(Debug, Clone)]
pub struct HyperPath {
    graph: Arc<RayGraph>,
    legs: Vec<Leg>,
}

impl HyperPath {
    pub fn new(graph: Arc<RayGraph>, legs: Vec<Leg>) -> Self {
        assert!(!legs.is_empty(), "a path needs at least one stage");
        HyperPath { graph, legs }
    }

    pub fn constant(g: &RayGraph, set: ClosedSubset) -> Self {
        HyperPath::new(Arc::new(g.clone()), vec![Leg { stage: Stage::Constant(set), reversed: false }])
    }

    pub fn graph(&self) -> &RayGraph {
        &self.graph
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn stage_count(&self) -> usize {
        self.legs.len()
    }

    /// Parameter interval occupied by stage `i`.
    pub fn stage_range(&self, i: usize) -> (Q, Q) {
        let m = self.legs.len() as i128;
        (Q::new(i as i128, m), Q::new(i as i128 + 1, m))
    }

    /// Evaluates stage `i` at its own local parameter.
    pub fn eval_stage(&self, i: usize, t: Q) -> Result<ClosedSubset> {
        check_unit(t)?;
        let leg = self.legs.get(i).ok_or_else(|| Error::Precondition(format!("no stage {i}")))?;
        Ok(leg.eval(&self.graph, t))
    }

    pub fn eval(&self, t: Q) -> Result<ClosedSubset> {
        check_unit(t)?;
        let m = Q::from_integer(self.legs.len() as i128);
        let scaled = t * m;
        let i = scaled.floor().to_integer().min(self.legs.len() as i128 - 1);
        let local = scaled - Q::from_integer(i);
        Ok(self.legs[i as usize].eval(&self.graph, local))
    }

    pub fn start(&self) -> ClosedSubset {
        self.legs[0].eval(&self.graph, Q::zero())
    }

    pub fn end(&self) -> ClosedSubset {
        self.legs[self.legs.len() - 1].eval(&self.graph, Q::one())
    }

    /// Per-stage Lipschitz constants in each stage's local parameter.
    pub fn stage_lipschitz(&self) -> Vec<ExtendedDistance> {
        self.legs.iter().map(|l| l.stage.lipschitz()).collect()
    }

    /// The path traversed backwards.
    pub fn reversed(&self) -> HyperPath {
        let legs = self.legs.iter().rev().map(|l| Leg { stage: l.stage.clone(), reversed: !l.reversed }).collect();
        HyperPath { graph: Arc::clone(&self.graph), legs }
    }

    pub fn concat(&self, other: &HyperPath) -> HyperPath {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        HyperPath { graph: Arc::clone(&self.graph), legs }
    }

    /// `samples + 1` equally spaced evaluations from 0 to 1.
    pub fn sample(&self, samples: usize) -> Vec<(Q, ClosedSubset)> {
        let m = samples.max(1) as i128;
        (0..=m)
            .map(|k| {
                let t = Q::new(k, m);
                (t, self.eval(t).expect("t within [0,1]"))
            })
            .collect()
    }
}

fn check_unit(t: Q) -> Result<()> {
    if t < Q::zero() || t > Q::one() {
        Err(Error::ParameterOutOfRange(crate::rational::fmt_q(&t)))
    } else {
        Ok(())
    }
}

pub fn eval_path(p: &HyperPath, t: Q) -> Result<ClosedSubset> {
    p.eval(t)
}

/// Largest per-stage Lipschitz constant.
pub fn lipschitz_bound(p: &HyperPath) -> ExtendedDistance {
    p.stage_lipschitz().into_iter().max().unwrap_or(ExtendedDistance::ZERO)
}

fn check_bound(g: &RayGraph, a: &ClosedSubset, n: usize) -> Result<()> {
    let found = component_count(g, a);
    if n == 0 || found > n {
        Err(Error::ComponentBound { found, bound: n })
    } else {
        Ok(())
    }
}

/// Least point (by element-id name) of the set inside the finite part of the graph.
fn base_point(g: &RayGraph, a: &ClosedSubset) -> GraphPoint {
    let from_vertices = a.vertices().iter().map(|v| g.vertex_point(*v));
    let from_edges = a
        .pieces()
        .filter(|(e, _)| !g.element(*e).is_ray())
        .map(|(e, iv)| g.normalize(GraphPoint::new(e, iv.lo)));
    from_vertices
        .chain(from_edges)
        .min_by(|x, y| g.cmp_points(x, y))
        .expect("the set meets the finite part of the graph after sliding")
}

fn canonical_legs(g: &RayGraph, a: &ClosedSubset) -> Vec<Stage> {
    let delta = direction_set(g, a);
    let tails: Vec<(ElementId, Q)> = delta
        .0
        .iter()
        .map(|&i| g.ray(i))
        .filter_map(|r| a.tail_start(r).filter(|s| !s.is_zero()).map(|s| (r, s)))
        .collect();
    let f0 = Stage::GrowTails { start: a.clone(), tails };
    let a1 = f0.eval(g, Q::one());

    let outside: Vec<ElementId> = g.rays().iter().copied().filter(|r| !a1.intervals(*r).is_empty()).filter(|r| {
        a1.tail_start(*r).is_none()
    }).collect();
    let pieces: Vec<(ElementId, Q, Q)> = outside
        .iter()
        .flat_map(|&r| a1.intervals(r).iter().map(move |iv| (r, iv.lo, iv.hi.expect("bounded outside Δ"))))
        .collect();
    let dropped: BTreeSet<ElementId> = outside.iter().copied().collect();
    let base = if dropped.is_empty() { Some(a1.clone()) } else { a1.without_elements(g, &dropped).ok() };
    let f1 = Stage::Slide { base, pieces };
    let a2 = f1.eval(g, Q::one());

    let walk = CoveringWalk::build(g, base_point(g, &a2));
    let f2 = Stage::Sweep { base: a2, walk };
    vec![f0, f1, f2]
}

fn forward(g: &RayGraph, stages: Vec<Stage>) -> HyperPath {
    HyperPath::new(Arc::new(g.clone()), stages.into_iter().map(|stage| Leg { stage, reversed: false }).collect())
}

/// Three-stage path from `a` to the canonical element of its direction set, staying in `C_n`.
pub fn path_to_canonical(g: &RayGraph, a: &ClosedSubset, n: usize) -> Result<HyperPath> {
    check_bound(g, a, n)?;
    Ok(forward(g, canonical_legs(g, a)))
}

/// Path from `a` to the whole space: the canonical path followed by the GAMMA growth stage.
pub fn vietoris_path(g: &RayGraph, a: &ClosedSubset, n: usize) -> Result<HyperPath> {
    check_bound(g, a, n)?;
    let delta = direction_set(g, a);
    let mut stages = canonical_legs(g, a);
    let base = canonical_element(g, &delta)?;
    let rays = (1..=g.ray_count()).filter(|i| !delta.contains(*i)).map(|i| g.ray(i)).collect();
    stages.push(Stage::Grow { base, rays });
    Ok(forward(g, stages))
}

/// Outcome of a same-component query in the Hausdorff metric.
#[derive(Debug, Clone)]
pub struct ComponentVerdict {
    pub same: bool,
    pub directions_a: DirectionSet,
    pub directions_b: DirectionSet,
    /// Smallest ray index on which exactly one of the sets is unbounded.
    pub witness_ray: Option<usize>,
    pub path: Option<HyperPath>,
}

pub fn same_component_hausdorff(g: &RayGraph, a: &ClosedSubset, b: &ClosedSubset, n: usize) -> Result<ComponentVerdict> {
    check_bound(g, a, n)?;
    check_bound(g, b, n)?;
    let directions_a = direction_set(g, a);
    let directions_b = direction_set(g, b);
    if directions_a != directions_b {
        let witness_ray = directions_a.first_difference(&directions_b);
        return Ok(ComponentVerdict { same: false, directions_a, directions_b, witness_ray, path: None });
    }
    let path = if a == b {
        HyperPath::constant(g, a.clone())
    } else {
        path_to_canonical(g, a, n)?.concat(&path_to_canonical(g, b, n)?.reversed())
    };
    Ok(ComponentVerdict { same: true, directions_a, directions_b, witness_ray: None, path: Some(path) })
}

/// Number of path components of `C_n(X)` in the Hausdorff metric: `2^k` for `k` rays, for every `n`.
pub fn component_count_formula(g: &RayGraph, n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    1u128
        .checked_shl(g.ray_count() as u32)
        .filter(|_| g.ray_count() < 128)
        .ok_or_else(|| Error::ResourceCap(format!("2^{} does not fit in 128 bits", g.ray_count())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::metric::hausdorff;
    use crate::rational::{int, q};
    use crate::subsets::parse_set;
    use rand::SeedableRng;

    fn set(g: &RayGraph, s: &str) -> ClosedSubset {
        parse_set(s, g).unwrap()
    }

    #[test]
    fn f0_moves_tail_endpoint_linearly() {
        let g = fixtures::ray();
        let p = path_to_canonical(&g, &set(&g, "R1:[2,inf)"), 1).unwrap();
        assert_eq!(p.eval_stage(0, q(1, 2)).unwrap(), set(&g, "R1:[1,inf)"));
        assert_eq!(eval_path(&p, Q::zero()).unwrap(), set(&g, "R1:[2,inf)"));
        assert_eq!(eval_path(&p, Q::one()).unwrap(), ClosedSubset::whole(&g));
        assert_eq!(lipschitz_bound(&p), ExtendedDistance::Finite(int(2)));
    }

    #[test]
    fn f1_slides_pieces_to_vertex() {
        let g = fixtures::line();
        let p = path_to_canonical(&g, &set(&g, "R1:[0,inf) R2:[1,2]"), 2).unwrap();
        assert_eq!(p.eval_stage(1, q(1, 2)).unwrap(), set(&g, "R1:[0,inf) R2:[1/2,1]"));
        assert_eq!(p.eval_stage(1, Q::one()).unwrap(), set(&g, "R1:[0,inf)"));
        assert_eq!(p.end(), canonical_element(&g, &DirectionSet::from_indices([1])).unwrap());
        assert_eq!(p.stage_lipschitz()[1], ExtendedDistance::Finite(int(2)));
    }

    #[test]
    fn bounded_piece_alone_collapses_to_vertex() {
        let g = fixtures::line();
        let p = path_to_canonical(&g, &set(&g, "R2:[1,2]"), 1).unwrap();
        assert_eq!(p.eval_stage(1, Q::one()).unwrap(), set(&g, "@v"));
        assert_eq!(p.end(), set(&g, "@v"));
    }

    #[test]
    fn f2_covers_finite_part() {
        let g = fixtures::triod();
        let p = path_to_canonical(&g, &set(&g, "@v"), 1).unwrap();
        assert_eq!(p.eval_stage(0, q(1, 2)).unwrap(), set(&g, "@v"));
        assert_eq!(p.eval_stage(1, q(1, 2)).unwrap(), set(&g, "@v"));
        assert_eq!(p.eval_stage(2, Q::one()).unwrap(), set(&g, "E1:[0,1] E2:[0,1] E3:[0,1]"));
        // Three edges out and back.
        assert_eq!(p.stage_lipschitz()[2], ExtendedDistance::Finite(int(6)));
        assert_eq!(p.eval_stage(2, q(1, 4)).unwrap(), set(&g, "E1:[0,1]"));
        assert_eq!(p.eval_stage(2, q(5, 12)).unwrap(), set(&g, "E1:[0,1] E2:[0,1/2]"));
    }

    #[test]
    fn walk_starting_inside_an_edge() {
        let g = fixtures::interval();
        let p = path_to_canonical(&g, &set(&g, "E1:[1/4,1/2]"), 1).unwrap();
        let Stage::Sweep { walk, .. } = &p.legs()[2].stage else { panic!() };
        assert_eq!(walk.start, g.parse_point("E1:1/4").unwrap());
        assert_eq!(walk.length(), q(1, 4) + int(2));
        assert_eq!(p.end(), set(&g, "E1:[0,1]"));
    }

    #[test]
    fn covering_walk_of_theta_traverses_each_edge_twice_or_loop_once() {
        let g = fixtures::theta();
        let walk = CoveringWalk::build(&g, g.vertex_point(g.vertex("a").unwrap()));
        assert_eq!(walk.length(), int(2) * (int(1) + q(3, 2)) + q(1, 2));
        let image = extend(&g, &set(&g, "@a"), walk.prefix(Q::one()));
        assert_eq!(image, canonical_element(&g, &DirectionSet::empty()).unwrap());
    }

    #[test]
    fn gamma_formula() {
        let g = fixtures::line();
        let p = vietoris_path(&g, &set(&g, "@v"), 1).unwrap();
        let gamma = p.stage_count() - 1;
        assert_eq!(p.eval_stage(gamma, Q::zero()).unwrap(), set(&g, "@v"));
        assert_eq!(p.eval_stage(gamma, q(1, 2)).unwrap(), set(&g, "R1:[0,1] R2:[0,1]"));
        assert_eq!(p.eval_stage(gamma, q(2, 3)).unwrap(), set(&g, "R1:[0,2] R2:[0,2]"));
        assert_eq!(p.end(), ClosedSubset::whole(&g));
        assert!(lipschitz_bound(&p).is_infinite());
        let g = fixtures::ray();
        let whole = ClosedSubset::whole(&g);
        let p = vietoris_path(&g, &whole, 1).unwrap();
        for k in 0..=10 {
            assert_eq!(p.eval(q(k, 10)).unwrap(), whole);
        }
    }

    #[test]
    fn same_component_queries() {
        let g = fixtures::line();
        let v = same_component_hausdorff(&g, &set(&g, "R1:[0,inf)"), &set(&g, "R2:[0,inf)"), 1).unwrap();
        assert!(!v.same);
        assert_eq!(v.witness_ray, Some(1));
        assert!(v.path.is_none());
        let a = set(&g, "@v");
        let b = set(&g, "R1:[0,3]");
        let v = same_component_hausdorff(&g, &a, &b, 1).unwrap();
        let path = v.path.unwrap();
        assert!(v.same);
        assert_eq!((path.start(), path.end()), (a.clone(), b));
        let v = same_component_hausdorff(&g, &a, &a, 1).unwrap();
        let path = v.path.unwrap();
        assert_eq!(lipschitz_bound(&path), ExtendedDistance::ZERO);
        assert_eq!(path.eval(q(1, 3)).unwrap(), a);
    }

    #[test]
    fn component_formula() {
        assert_eq!(component_count_formula(&fixtures::interval(), 1).unwrap(), 1);
        assert_eq!(component_count_formula(&fixtures::line(), 3).unwrap(), 4);
        assert_eq!(component_count_formula(&fixtures::star3(), 1).unwrap(), 8);
        assert!(component_count_formula(&fixtures::star3(), 0).is_err());
    }

    #[test]
    fn errors() {
        let g = fixtures::triod();
        let leaves = set(&g, "E1:{1} E2:{1} E3:{1}");
        assert!(matches!(path_to_canonical(&g, &leaves, 2), Err(Error::ComponentBound { found: 3, bound: 2 })));
        let p = path_to_canonical(&g, &leaves, 3).unwrap();
        assert!(matches!(p.eval(q(3, 2)), Err(Error::ParameterOutOfRange(_))));
        assert!(p.eval(q(-1, 2)).is_err());
    }

    #[test]
    fn f2_lipschitz_on_random_pairs() {
        let g = fixtures::triod();
        let p = path_to_canonical(&g, &set(&g, "@v"), 1).unwrap();
        let l = p.stage_lipschitz()[2];
        assert_eq!(l, ExtendedDistance::Finite(int(6)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let s = crate::random::unit_rational(996, &mut rng);
            let t = crate::random::unit_rational(996, &mut rng);
            let d = hausdorff(&g, &p.eval_stage(2, s).unwrap(), &p.eval_stage(2, t).unwrap());
            assert!(d <= l.scale(abs_diff(s, t)), "s={s} t={t} d={d}");
        }
    }
}
