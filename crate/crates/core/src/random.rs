//! Seedable random generation of points and closed subsets, for property tests and demos.

use rand::Rng;

use crate::graph::{ElementId, GraphPoint, RayGraph, VertexId};
use crate::rational::Q;
use crate::subsets::{component_count, ClosedSubset, Interval};

#[derive(Debug, Clone)]
pub struct SetSampler {
    /// Coordinates are multiples of `1/denominator`.
    pub denominator: i128,
    /// Bounded coordinates on rays stay below this value.
    pub ray_extent: i128,
    /// Maximum number of raw intervals drawn per element.
    pub max_pieces: usize,
    /// Probability that an element receives any intervals.
    pub element_prob: f64,
    /// Probability that a ray gets an unbounded tail; zero for bounded sets.
    pub tail_prob: f64,
    /// Probability of adding each vertex as an isolated point.
    pub vertex_prob: f64,
}

impl Default for SetSampler {
    fn default() -> Self {
        SetSampler { denominator: 8, ray_extent: 4, max_pieces: 2, element_prob: 0.6, tail_prob: 0.4, vertex_prob: 0.15 }
    }
}

impl SetSampler {
    pub fn bounded() -> Self {
        SetSampler { tail_prob: 0.0, ..Self::default() }
    }

    fn coord<R: Rng + ?Sized>(&self, g: &RayGraph, e: ElementId, rng: &mut R) -> Q {
        let top = match g.element(e).length() {
            Some(len) => (len * Q::from_integer(self.denominator)).floor().to_integer(),
            None => self.ray_extent * self.denominator,
        };
        let c = Q::new(rng.gen_range(0..=top), self.denominator);
        g.element(e).length().map_or(c, |len| c.min(len))
    }

    pub fn point<R: Rng + ?Sized>(&self, g: &RayGraph, rng: &mut R) -> GraphPoint {
        let e = ElementId(rng.gen_range(0..g.elements().len()));
        GraphPoint::new(e, self.coord(g, e, rng))
    }

    pub fn set<R: Rng + ?Sized>(&self, g: &RayGraph, rng: &mut R) -> ClosedSubset {
        loop {
            let mut vertices = Vec::new();
            for v in 0..g.vertex_count() {
                if rng.gen_bool(self.vertex_prob) {
                    vertices.push(VertexId(v));
                }
            }
            let mut intervals = Vec::new();
            for e in g.element_ids() {
                if !rng.gen_bool(self.element_prob) {
                    continue;
                }
                for _ in 0..rng.gen_range(1..=self.max_pieces.max(1)) {
                    let (a, b) = (self.coord(g, e, rng), self.coord(g, e, rng));
                    intervals.push((e, Interval::closed(a.min(b), a.max(b))));
                }
                if g.element(e).is_ray() && self.tail_prob > 0.0 && rng.gen_bool(self.tail_prob) {
                    intervals.push((e, Interval::tail(self.coord(g, e, rng))));
                }
            }
            if let Ok(s) = ClosedSubset::from_parts(g, vertices, intervals) {
                return s;
            }
        }
    }

    /// Rejection-samples a set with at most `n` components.
    pub fn set_in_cn<R: Rng + ?Sized>(&self, g: &RayGraph, n: usize, rng: &mut R) -> ClosedSubset {
        loop {
            let s = self.set(g, rng);
            if component_count(g, &s) <= n {
                return s;
            }
        }
    }
}

/// Uniform rational in `[0, 1]` with the given denominator.
pub fn unit_rational<R: Rng + ?Sized>(denominator: i128, rng: &mut R) -> Q {
    Q::new(rng.gen_range(0..=denominator), denominator)
}
