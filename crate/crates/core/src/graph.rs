//! Finite ray-graphs with the arc-length metric.
//!
//! A graph is a finite set of vertices joined by edges of positive rational
//! length (loops allowed) together with rays, copies of `[0, inf)` attached at
//! a single vertex. Points are addressed by an element (edge or ray) and an
//! arc-length coordinate; coordinate 0 sits at an edge's first endpoint and at
//! a ray's attachment vertex.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, int, parse_q, Q};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementKind {
    Edge { from: VertexId, to: VertexId, length: Q },
    /// `index` is the 1-based ray number used by direction sets.
    Ray { at: VertexId, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub id: String,
    pub kind: ElementKind,
}

impl Element {
    pub fn is_ray(&self) -> bool {
        matches!(self.kind, ElementKind::Ray { .. })
    }

    /// Length of an edge; `None` for rays.
    pub fn length(&self) -> Option<Q> {
        match self.kind {
            ElementKind::Edge { length, .. } => Some(length),
            ElementKind::Ray { .. } => None,
        }
    }

    pub fn start(&self) -> VertexId {
        match self.kind {
            ElementKind::Edge { from, .. } => from,
            ElementKind::Ray { at, .. } => at,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self.kind, ElementKind::Edge { from, to, .. } if from == to)
    }

    pub fn contains_coord(&self, coord: Q) -> bool {
        !coord.is_negative() && self.length().is_none_or(|len| coord <= len)
    }

    /// Vertex sitting at `coord`, if any.
    pub fn vertex_at(&self, coord: Q) -> Option<VertexId> {
        match self.kind {
            _ if coord.is_zero() => Some(self.start()),
            ElementKind::Edge { to, length, .. } if coord == length => Some(to),
            _ => None,
        }
    }

    /// Ways to leave the element from `coord`: (endpoint vertex, distance along the element).
    pub(crate) fn exits(&self, coord: Q) -> Vec<(VertexId, Q)> {
        match self.kind {
            ElementKind::Edge { from, to, length } => vec![(from, coord), (to, length - coord)],
            ElementKind::Ray { at, .. } => vec![(at, coord)],
        }
    }
}

/// A location on the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphPoint {
    pub element: ElementId,
    pub coord: Q,
}

impl GraphPoint {
    pub fn new(element: ElementId, coord: Q) -> Self {
        GraphPoint { element, coord }
    }
}

#[derive(Debug, Clone)]
pub struct RayGraph {
    vertices: Vec<String>,
    elements: Vec<Element>,
    vertex_lookup: HashMap<String, VertexId>,
    element_lookup: HashMap<String, ElementId>,
    rays: Vec<ElementId>,
    table: Vec<Vec<Q>>,
}

pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub length: Q,
}

pub struct RaySpec {
    pub id: String,
    pub at: String,
}

impl RayGraph {
    /// Validates and builds a graph. Every vertex must be reachable and ids must be unique.
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>, rays: Vec<RaySpec>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NoVertices);
        }
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let lookup = |name: &str| vertex_lookup.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));

        let mut elements = Vec::with_capacity(edges.len() + rays.len());
        let mut element_lookup = HashMap::new();
        let mut ray_ids = Vec::new();
        for e in edges {
            if !e.length.is_positive() {
                return Err(Error::NonPositiveLength(e.id));
            }
            let kind = ElementKind::Edge { from: lookup(&e.from)?, to: lookup(&e.to)?, length: e.length };
            if element_lookup.insert(e.id.clone(), ElementId(elements.len())).is_some() {
                return Err(Error::DuplicateId(e.id));
            }
            elements.push(Element { id: e.id, kind });
        }
        for r in rays {
            let at = lookup(&r.at)?;
            if element_lookup.insert(r.id.clone(), ElementId(elements.len())).is_some() {
                return Err(Error::DuplicateId(r.id));
            }
            ray_ids.push(ElementId(elements.len()));
            elements.push(Element { id: r.id, kind: ElementKind::Ray { at, index: ray_ids.len() } });
        }
        if elements.is_empty() {
            return Err(Error::NoElements);
        }

        let mut uf = UnionFind::new(vertices.len());
        for el in &elements {
            if let ElementKind::Edge { from, to, .. } = el.kind {
                uf.union(from.0, to.0);
            }
        }
        if let Some(v) = (1..vertices.len()).find(|&v| uf.find(v) != uf.find(0)) {
            return Err(Error::Disconnected(format!("`{}` unreachable from `{}`", vertices[v], vertices[0])));
        }

        let table = all_pairs(vertices.len(), &elements);
        Ok(RayGraph { vertices, elements, vertex_lookup, element_lookup, rays: ray_ids, table })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &Element {
        &self.elements[id.0]
    }

    pub fn element_ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.elements.len()).map(ElementId)
    }

    pub fn lookup_element(&self, name: &str) -> Result<ElementId> {
        self.element_lookup.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Rays in declaration order; ray `i` (1-based) is `rays()[i - 1]`.
    pub fn rays(&self) -> &[ElementId] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, index: usize) -> ElementId {
        self.rays[index - 1]
    }

    pub fn edges(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.element_ids().filter(|&e| !self.element(e).is_ray())
    }

    pub fn vertex_distance(&self, a: VertexId, b: VertexId) -> Q {
        self.table[a.0][b.0]
    }

    /// Exact shortest-path distance between every pair of vertices.
    pub fn vertex_distance_table(&self) -> &[Vec<Q>] {
        &self.table
    }

    /// Every (element, coordinate) pair naming vertex `v`.
    pub fn incidences(&self, v: VertexId) -> Vec<GraphPoint> {
        let mut out = Vec::new();
        for (i, el) in self.elements.iter().enumerate() {
            match el.kind {
                ElementKind::Edge { from, to, length } => {
                    if from == v {
                        out.push(GraphPoint::new(ElementId(i), Q::zero()));
                    }
                    if to == v {
                        out.push(GraphPoint::new(ElementId(i), length));
                    }
                }
                ElementKind::Ray { at, .. } if at == v => out.push(GraphPoint::new(ElementId(i), Q::zero())),
                ElementKind::Ray { .. } => {}
            }
        }
        out
    }

    fn point_key(&self, p: &GraphPoint) -> (&str, Q) {
        (self.element(p.element).id.as_str(), p.coord)
    }

    /// Lexicographically least (element id, coord) representation of vertex `v`.
    pub fn vertex_point(&self, v: VertexId) -> GraphPoint {
        self.incidences(v)
            .into_iter()
            .min_by(|a, b| self.point_key(a).cmp(&self.point_key(b)))
            .expect("every vertex of a validated graph has an incident element")
    }

    /// Orders points by their (element id, coord) names, as used for normalization.
    pub fn cmp_points(&self, a: &GraphPoint, b: &GraphPoint) -> std::cmp::Ordering {
        self.point_key(a).cmp(&self.point_key(b))
    }

    pub fn vertex_of(&self, p: &GraphPoint) -> Option<VertexId> {
        self.element(p.element).vertex_at(p.coord)
    }

    pub fn normalize(&self, p: GraphPoint) -> GraphPoint {
        match self.vertex_of(&p) {
            Some(v) => self.vertex_point(v),
            None => p,
        }
    }

    pub fn check_point(&self, p: &GraphPoint) -> Result<()> {
        let el = self.elements.get(p.element.0).ok_or_else(|| Error::UnknownElement(format!("#{}", p.element.0)))?;
        if el.contains_coord(p.coord) {
            Ok(())
        } else {
            Err(Error::CoordOutOfRange { element: el.id.clone(), coord: fmt_q(&p.coord) })
        }
    }

    /// Arc-length distance between two points.
    pub fn point_distance(&self, p: &GraphPoint, q: &GraphPoint) -> Result<Q> {
        self.check_point(p)?;
        self.check_point(q)?;
        let ep = self.element(p.element);
        let eq = self.element(q.element);
        let mut best: Option<Q> = None;
        if p.element == q.element {
            best = Some((p.coord - q.coord).abs());
        }
        for (u, du) in ep.exits(p.coord) {
            for (w, dw) in eq.exits(q.coord) {
                let d = du + self.table[u.0][w.0] + dw;
                if best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
        }
        Ok(best.expect("elements always have an exit"))
    }

    pub fn format_point(&self, p: &GraphPoint) -> String {
        format!("{}:{}", self.element(p.element).id, fmt_q(&p.coord))
    }

    /// Parses `ELEM:coord`.
    pub fn parse_point(&self, text: &str) -> Result<GraphPoint> {
        let (name, coord) = text
            .split_once(':')
            .ok_or_else(|| Error::syntax(1, 1, format!("expected ELEM:coord, found `{text}`")))?;
        let p = GraphPoint::new(self.lookup_element(name.trim())?, parse_q(coord.trim())?);
        self.check_point(&p)?;
        Ok(p)
    }

    /// Renders the graph back to the line grammar.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertex {}\n", self.vertices.join(" "));
        for el in &self.elements {
            match &el.kind {
                ElementKind::Edge { from, to, length } => {
                    out.push_str(&format!("edge {} {} {}", el.id, self.vertices[from.0], self.vertices[to.0]));
                    if *length != int(1) {
                        out.push_str(&format!(" length {}", fmt_q(length)));
                    }
                    out.push('\n');
                }
                ElementKind::Ray { at, .. } => out.push_str(&format!("ray {} {}\n", el.id, self.vertices[at.0])),
            }
        }
        out
    }
}

impl fmt::Display for RayGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn all_pairs(n: usize, elements: &[Element]) -> Vec<Vec<Q>> {
    let mut d: Vec<Vec<Option<Q>>> = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(Q::zero());
    }
    for el in elements {
        if let ElementKind::Edge { from, to, length } = el.kind {
            if from == to {
                continue;
            }
            for (a, b) in [(from.0, to.0), (to.0, from.0)] {
                if d[a][b].is_none_or(|cur| length < cur) {
                    d[a][b] = Some(length);
                }
            }
        }
    }
    for k in 0..n {
        let through = d[k].clone();
        for row in d.iter_mut() {
            let Some(ik) = row[k] else { continue };
            for (cell, kj) in row.iter_mut().zip(&through) {
                if let Some(kj) = kj {
                    let via = ik + kj;
                    if cell.is_none_or(|cur| via < cur) {
                        *cell = Some(via);
                    }
                }
            }
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|x| x.expect("connected graph")).collect())
        .collect()
}

/// Parses either the line grammar or the JSON structured form (detected by a leading `{`).
pub fn parse_graph(text: &str) -> Result<RayGraph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

/// Line grammar: `vertex <id>...`, `edge <id> <v1> <v2> [length <p>/<q>]`, `ray <id> [at] <v>`.
/// `#` starts a comment; `;` separates statements like a newline does. A statement
/// made only of bare identifiers declares those vertices.
pub fn parse_graph_text(text: &str) -> Result<RayGraph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in content.split(';') {
            let column = offset + 1 + stmt.len() - stmt.trim_start().len();
            offset += stmt.len() + 1;
            let tokens: Vec<&str> = stmt.split_whitespace().collect();
            let Some(&head) = tokens.first() else { continue };
            let err = |msg: &str| Error::syntax(line_no, column, msg);
            match head {
                "vertex" | "vertices" => {
                    if tokens.len() < 2 {
                        return Err(err("`vertex` needs at least one id"));
                    }
                    vertices.extend(tokens[1..].iter().map(|s| s.to_string()));
                }
                "edge" => {
                    let length = match tokens.len() {
                        4 => int(1),
                        6 if tokens[4] == "length" => {
                            parse_q(tokens[5]).map_err(|_| err(&format!("bad length `{}`", tokens[5])))?
                        }
                        _ => return Err(err("expected `edge <id> <v1> <v2> [length <p>/<q>]`")),
                    };
                    edges.push(EdgeSpec {
                        id: tokens[1].to_string(),
                        from: tokens[2].to_string(),
                        to: tokens[3].to_string(),
                        length,
                    });
                }
                "ray" => {
                    let at = match tokens.len() {
                        3 => tokens[2],
                        4 if tokens[2] == "at" => tokens[3],
                        _ => return Err(err("expected `ray <id> [at] <v>`")),
                    };
                    rays.push(RaySpec { id: tokens[1].to_string(), at: at.to_string() });
                }
                _ => {
                    if let Some(bad) = tokens.iter().find(|t| !is_ident(t)) {
                        return Err(err(&format!("unexpected token `{bad}`")));
                    }
                    vertices.extend(tokens.iter().map(|s| s.to_string()));
                }
            }
        }
    }
    RayGraph::new(vertices, edges, rays)
}

fn is_ident(s: &str) -> bool {
    s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '\'')
}

#[derive(Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeFile>,
    #[serde(default)]
    rays: Vec<RayFile>,
}

#[derive(Deserialize)]
struct EdgeFile {
    id: String,
    from: String,
    to: String,
    #[serde(default)]
    length: Option<serde_json::Value>,
}

#[derive(Deserialize)]
struct RayFile {
    id: String,
    at: String,
}

/// Structured form: `{"vertices": [..], "edges": [{"id","from","to","length"?}], "rays": [{"id","at"}]}`.
/// Lengths may be JSON integers or `"p/q"` strings.
pub fn parse_graph_json(text: &str) -> Result<RayGraph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::syntax(e.line(), e.column(), e.to_string()))?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for e in file.edges {
        let length = match &e.length {
            None => int(1),
            Some(serde_json::Value::Number(n)) => {
                int(n.as_i64().ok_or_else(|| Error::syntax(0, 0, format!("length of `{}` must be an integer or \"p/q\"", e.id)))? as i128)
            }
            Some(serde_json::Value::String(s)) => parse_q(s)?,
            Some(other) => return Err(Error::syntax(0, 0, format!("bad length {other}"))),
        };
        edges.push(EdgeSpec { id: e.id, from: e.from, to: e.to, length });
    }
    let rays = file.rays.into_iter().map(|r| RaySpec { id: r.id, at: r.at }).collect();
    RayGraph::new(file.vertices, edges, rays)
}
