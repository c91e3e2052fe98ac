//! Symbolic cell models of `C(X)` and their composition under wedge products.
//!
//! A model is an inventory of pieces (formal products of base cells), the
//! containment locus `C_p` (the sets containing the wedge point, listed by
//! component) and the gluings between pieces. Wedging two models adds the
//! product of their containment loci and glues each factor's locus onto the
//! slice through the other factor's `{p}` marker. A piece that lies entirely
//! inside the locus is absorbed by its slice rather than kept separately.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, RayGraph, RaySpec};
use crate::rational::int;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    /// Solid triangle `0 <= a <= b <= 1`.
    Tri,
    /// Solid disc.
    Disc,
    /// Infinite triangle `0 <= a <= b`.
    TriInf,
    /// Half-line `[0, inf)` of unbounded sets.
    Ray,
    Pt,
    /// Compact edge (left edge of a triangle).
    Segment,
    /// Compact sub-disc.
    SubDisc,
    /// Noncompact edge (left edge of an infinite triangle).
    HalfLine,
}

impl Cell {
    pub fn dim(self) -> usize {
        match self {
            Cell::Tri | Cell::Disc | Cell::TriInf | Cell::SubDisc => 2,
            Cell::Ray | Cell::Segment | Cell::HalfLine => 1,
            Cell::Pt => 0,
        }
    }

    pub fn compact(self) -> bool {
        !matches!(self, Cell::TriInf | Cell::Ray | Cell::HalfLine)
    }

    pub fn name(self) -> &'static str {
        match self {
            Cell::Tri => "TRI",
            Cell::Disc => "DISC",
            Cell::TriInf => "TRI∞",
            Cell::Ray => "RAY",
            Cell::Pt => "PT",
            Cell::Segment => "EDGE",
            Cell::SubDisc => "SUBDISC",
            Cell::HalfLine => "HALFLINE",
        }
    }
}

fn product_name(cells: &[Cell]) -> String {
    cells.iter().map(|c| c.name()).collect::<Vec<_>>().join("×")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub factors: Vec<Cell>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|c| c.dim()).sum()
    }

    pub fn compact(&self) -> bool {
        self.factors.iter().all(|c| c.compact())
    }
}

/// One component of the containment locus, living inside piece `host`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusComponent {
    pub host: usize,
    pub face: Vec<Cell>,
    /// The component is the entire host piece.
    pub whole: bool,
    /// Carries the point `{p}` itself.
    pub marker: bool,
}

/// Identification of `face` inside piece `a` with the same face type inside piece `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub a: usize,
    pub b: usize,
    pub face: Vec<Cell>,
    /// Human-readable description of the slice in `b`.
    pub slice: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HModel {
    pub name: String,
    pub pieces: Vec<Piece>,
    pub locus: Vec<LocusComponent>,
    pub gluings: Vec<Gluing>,
    /// Rays contributed by the base spaces.
    pub rays: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Interval,
    Circle,
    Ray,
}

impl BaseKind {
    pub fn parse(name: &str) -> Result<BaseKind> {
        match name {
            "interval" | "arc" => Ok(BaseKind::Interval),
            "circle" => Ok(BaseKind::Circle),
            "ray" => Ok(BaseKind::Ray),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseKind::Interval => "interval",
            BaseKind::Circle => "circle",
            BaseKind::Ray => "ray",
        }
    }
}

/// Models of the three base spaces, with `p` at coordinate 0.
pub fn base_model(kind: BaseKind) -> HModel {
    let locus = |host, face, marker| LocusComponent { host, face: vec![face], whole: false, marker };
    match kind {
        BaseKind::Interval => HModel {
            name: "interval".into(),
            pieces: vec![Piece { factors: vec![Cell::Tri] }],
            locus: vec![locus(0, Cell::Segment, true)],
            gluings: vec![],
            rays: 0,
        },
        BaseKind::Circle => HModel {
            name: "circle".into(),
            pieces: vec![Piece { factors: vec![Cell::Disc] }],
            locus: vec![locus(0, Cell::SubDisc, true)],
            gluings: vec![],
            rays: 0,
        },
        BaseKind::Ray => HModel {
            name: "ray".into(),
            pieces: vec![Piece { factors: vec![Cell::TriInf] }, Piece { factors: vec![Cell::Ray] }],
            locus: vec![locus(0, Cell::HalfLine, true), locus(1, Cell::Pt, false)],
            gluings: vec![],
            rays: 1,
        },
    }
}

pub fn base_model_named(name: &str) -> Result<HModel> {
    BaseKind::parse(name).map(base_model)
}

fn marker_index(m: &HModel) -> Result<usize> {
    match m.locus.iter().filter(|c| c.marker).count() {
        1 => Ok(m.locus.iter().position(|c| c.marker).expect("counted one")),
        _ => Err(Error::MissingLocus),
    }
}

/// Model of `C(X1 ∨_p X2)` from models of `C(X1)` and `C(X2)`.
pub fn wedge(m1: &HModel, m2: &HModel) -> Result<HModel> {
    let mark1 = marker_index(m1)?;
    let mark2 = marker_index(m2)?;
    let off2 = m1.pieces.len();
    let mut pieces: Vec<Piece> = m1.pieces.iter().chain(&m2.pieces).cloned().collect();
    let mut gluings: Vec<Gluing> = m1.gluings.clone();
    gluings.extend(m2.gluings.iter().map(|g| Gluing { a: g.a + off2, b: g.b + off2, ..g.clone() }));

    let mut product = vec![vec![0usize; m2.locus.len()]; m1.locus.len()];
    for (i, c1) in m1.locus.iter().enumerate() {
        for (j, c2) in m2.locus.iter().enumerate() {
            product[i][j] = pieces.len();
            pieces.push(Piece { factors: c1.face.iter().chain(&c2.face).copied().collect() });
        }
    }

    let mut alias: Vec<usize> = (0..pieces.len()).collect();
    for (i, c1) in m1.locus.iter().enumerate() {
        let target = product[i][mark2];
        if c1.whole {
            alias[c1.host] = target;
        } else {
            gluings.push(Gluing {
                a: c1.host,
                b: target,
                face: c1.face.clone(),
                slice: format!("{}×{{p}}", product_name(&c1.face)),
            });
        }
    }
    for (j, c2) in m2.locus.iter().enumerate() {
        let target = product[mark1][j];
        if c2.whole {
            alias[c2.host + off2] = target;
        } else {
            gluings.push(Gluing {
                a: c2.host + off2,
                b: target,
                face: c2.face.clone(),
                slice: format!("{{p}}×{}", product_name(&c2.face)),
            });
        }
    }

    // Drop absorbed pieces and renumber.
    let mut renumber = BTreeMap::new();
    let mut kept = Vec::new();
    for (id, piece) in pieces.into_iter().enumerate() {
        if alias[id] == id {
            renumber.insert(id, kept.len());
            kept.push(piece);
        }
    }
    let resolve = |id: usize| renumber[&alias[id]];
    let gluings = gluings
        .into_iter()
        .map(|g| Gluing { a: resolve(g.a), b: resolve(g.b), ..g })
        .filter(|g| g.a != g.b)
        .collect();
    let mut locus = Vec::new();
    for (i, c1) in m1.locus.iter().enumerate() {
        for (j, c2) in m2.locus.iter().enumerate() {
            locus.push(LocusComponent {
                host: resolve(product[i][j]),
                face: c1.face.iter().chain(&c2.face).copied().collect(),
                whole: true,
                marker: i == mark1 && j == mark2,
            });
        }
    }
    Ok(HModel {
        name: format!("({} ∨ {})", m1.name, m2.name),
        pieces: kept,
        locus,
        gluings,
        rays: m1.rays + m2.rays,
    })
}

/// Connected components of the glued model.
pub fn model_components(m: &HModel) -> usize {
    let mut uf = UnionFind::new(m.pieces.len());
    let mut count = m.pieces.len();
    for g in &m.gluings {
        if uf.union(g.a, g.b) {
            count -= 1;
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelStats {
    pub max_dim: usize,
    /// Piece dimensions, largest first.
    pub dims: Vec<usize>,
    pub compact: Vec<bool>,
    pub components: usize,
}

pub fn model_stats(m: &HModel) -> ModelStats {
    let mut dims: Vec<usize> = m.pieces.iter().map(Piece::dim).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    ModelStats {
        max_dim: dims.first().copied().unwrap_or(0),
        dims,
        compact: m.pieces.iter().map(Piece::compact).collect(),
        components: model_components(m),
    }
}

impl HModel {
    /// Checks the structural invariants: gluings reference existing pieces with
    /// matching faces, and there is exactly one `{p}` marker.
    pub fn validate(&self) -> Result<()> {
        marker_index(self)?;
        for g in &self.gluings {
            if g.a >= self.pieces.len() || g.b >= self.pieces.len() {
                return Err(Error::Precondition(format!("gluing {}~{} references a missing piece", g.a, g.b)));
            }
        }
        for c in &self.locus {
            if c.host >= self.pieces.len() {
                return Err(Error::Precondition(format!("locus host {} missing", c.host)));
            }
            if c.whole && self.pieces[c.host].factors != c.face {
                return Err(Error::Precondition(format!("locus on piece {} is not the whole piece", c.host)));
            }
        }
        Ok(())
    }

    pub fn report(&self) -> String {
        let stats = model_stats(self);
        let mut out = format!("model: {}\n", self.name);
        out.push_str(&format!("pieces: {}\n", self.pieces.len()));
        for (i, p) in self.pieces.iter().enumerate() {
            out.push_str(&format!(
                "piece {i}: {} dim={} {}\n",
                product_name(&p.factors),
                p.dim(),
                if p.compact() { "compact" } else { "noncompact" }
            ));
        }
        out.push_str(&format!("gluings: {}\n", self.gluings.len()));
        for g in &self.gluings {
            out.push_str(&format!("glue {}:{} ~ {}:{}\n", g.a, product_name(&g.face), g.b, g.slice));
        }
        out.push_str(&format!("locus_components: {}\n", self.locus.len()));
        let dims: Vec<String> = stats.dims.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("dims: {}\n", dims.join(",")));
        out.push_str(&format!("max_dim: {}\n", stats.max_dim));
        out.push_str(&format!("compact: {}\n", stats.compact.iter().all(|c| *c)));
        out.push_str(&format!("components: {}\n", stats.components));
        out
    }
}

impl fmt::Display for HModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report())
    }
}

/// Parsed wedge expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WedgeExpr {
    Base(BaseKind),
    Wedge(Box<WedgeExpr>, Box<WedgeExpr>),
}

impl WedgeExpr {
    pub fn model(&self) -> Result<HModel> {
        match self {
            WedgeExpr::Base(kind) => Ok(base_model(*kind)),
            WedgeExpr::Wedge(a, b) => wedge(&a.model()?, &b.model()?),
        }
    }

    fn bases(&self, out: &mut Vec<BaseKind>) {
        match self {
            WedgeExpr::Base(k) => out.push(*k),
            WedgeExpr::Wedge(a, b) => {
                a.bases(out);
                b.bases(out);
            }
        }
    }

    /// The ray-graph the expression describes: every base attached at one common vertex `p`.
    pub fn graph(&self) -> RayGraph {
        let mut bases = Vec::new();
        self.bases(&mut bases);
        let mut vertices = vec!["p".to_string()];
        let mut edges = Vec::new();
        let mut rays = Vec::new();
        for (i, kind) in bases.iter().enumerate() {
            match kind {
                BaseKind::Interval => {
                    vertices.push(format!("x{i}"));
                    edges.push(EdgeSpec { id: format!("E{i}"), from: "p".into(), to: format!("x{i}"), length: int(1) });
                }
                BaseKind::Circle => {
                    edges.push(EdgeSpec { id: format!("E{i}"), from: "p".into(), to: "p".into(), length: int(1) })
                }
                BaseKind::Ray => rays.push(RaySpec { id: format!("R{i}"), at: "p".into() }),
            }
        }
        RayGraph::new(vertices, edges, rays).expect("a star of bases is a valid graph")
    }
}

/// Grammar: `interval | circle | ray | (expr ∨ expr)`; `v`, `\/` and `wedge` also denote `∨`,
/// and a chain without parentheses associates to the left.
pub fn parse_wedge(text: &str) -> Result<WedgeExpr> {
    let spaced = text.replace('∨', " ∨ ").replace("\\/", " ∨ ").replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced
        .split_whitespace()
        .map(|t| if t == "v" || t == "wedge" { "∨" } else { t })
        .collect();
    let mut pos = 0;
    let expr = parse_chain(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::syntax(1, pos + 1, format!("unexpected `{}`", tokens[pos])));
    }
    Ok(expr)
}

fn parse_chain(tokens: &[&str], pos: &mut usize) -> Result<WedgeExpr> {
    let mut left = parse_term(tokens, pos)?;
    while tokens.get(*pos) == Some(&"∨") {
        *pos += 1;
        let right = parse_term(tokens, pos)?;
        left = WedgeExpr::Wedge(Box::new(left), Box::new(right));
    }
    Ok(left)
}

fn parse_term(tokens: &[&str], pos: &mut usize) -> Result<WedgeExpr> {
    match tokens.get(*pos) {
        None => Err(Error::syntax(1, *pos + 1, "unexpected end of expression")),
        Some(&"(") => {
            *pos += 1;
            let inner = parse_chain(tokens, pos)?;
            if tokens.get(*pos) != Some(&")") {
                return Err(Error::syntax(1, *pos + 1, "expected `)`"));
            }
            *pos += 1;
            Ok(inner)
        }
        Some(name) => {
            *pos += 1;
            BaseKind::parse(name).map(WedgeExpr::Base)
        }
    }
}
