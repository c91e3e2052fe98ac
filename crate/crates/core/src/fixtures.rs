//! Small named graphs used throughout the tests, the CLI examples, and the demo.

use crate::graph::{parse_graph, RayGraph};

pub const INTERVAL: &str = "vertex u v\nedge E1 u v\n";
pub const LOOP: &str = "vertex v\nedge E1 v v\n";
pub const RAY: &str = "vertex v\nray R1 v\n";
pub const LINE: &str = "vertex v\nray R1 v\nray R2 v\n";
pub const TRIOD: &str = "vertex v a b c\nedge E1 v a\nedge E2 v b\nedge E3 v c\n";
pub const NOOSE_INF: &str = "vertex v\nedge E1 v v\nray R1 v\n";
pub const STAR3: &str = "vertex v\nray R1 v\nray R2 v\nray R3 v\n";
/// Two vertices joined by two edges, a half-length loop at one end and a ray at each end.
pub const THETA: &str = "vertex a b\nedge E1 a b\nedge E2 a b length 3/2\nedge E3 b b length 1/2\nray R1 a\nray R2 b\n";

fn build(text: &str) -> RayGraph {
    parse_graph(text).expect("fixture graphs are valid")
}

pub fn interval() -> RayGraph {
    build(INTERVAL)
}

pub fn loop_graph() -> RayGraph {
    build(LOOP)
}

pub fn ray() -> RayGraph {
    build(RAY)
}

pub fn line() -> RayGraph {
    build(LINE)
}

pub fn triod() -> RayGraph {
    build(TRIOD)
}

pub fn noose_inf() -> RayGraph {
    build(NOOSE_INF)
}

pub fn star3() -> RayGraph {
    build(STAR3)
}

pub fn theta() -> RayGraph {
    build(THETA)
}

/// All fixtures with their names.
pub fn all() -> Vec<(&'static str, RayGraph)> {
    vec![
        ("interval", interval()),
        ("loop", loop_graph()),
        ("ray", ray()),
        ("line", line()),
        ("triod", triod()),
        ("noose_inf", noose_inf()),
        ("star3", star3()),
        ("theta", theta()),
    ]
}

pub fn by_name(name: &str) -> Option<RayGraph> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}
