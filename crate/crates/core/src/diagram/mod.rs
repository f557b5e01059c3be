//! Combinatorial diagrams of Y-oriented spatial trivalent graphs.
//!
//! Every semi-arc carries a direction and the two regions it separates:
//! the normal direction (travel direction turned counterclockwise by a
//! right angle) points from `source` to `target`.

mod file;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use file::{CrossingEntry, DiagramFile, SemiArcEntry, VertexEntry};

/// Distinct diagnostics produced while validating a diagram.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("{kind} `{site}` references unknown id `{id}`")]
    Dangling { kind: &'static str, site: String, id: String },
    #[error("semi-arc `{arc}`: {detail}")]
    Endpoint { arc: String, detail: String },
    #[error("region inconsistency at `{site}`: {detail}")]
    RegionInconsistency { site: String, detail: String },
    #[error("Euler check failed: V - E + F = {got}, expected {expected}")]
    Euler { got: i64, expected: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// Legs `a` and `c` enter, `b` leaves.
    TwoInOneOut,
    /// Leg `b` enters, `a` and `c` leave.
    OneInTwoOut,
}

impl VertexKind {
    pub fn flip(self) -> VertexKind {
        match self {
            VertexKind::TwoInOneOut => VertexKind::OneInTwoOut,
            VertexKind::OneInTwoOut => VertexKind::TwoInOneOut,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiArc {
    pub id: String,
    pub source: usize,
    pub target: usize,
    /// A circle component without crossings or vertices.
    pub closed: bool,
}

/// A crossing; all fields are semi-arc indices except `weight_region`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: String,
    pub sign: Sign,
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    pub weight_region: usize,
}

impl Crossing {
    /// The under and over semi-arcs on the source side, `(u_L, o_L)`.
    ///
    /// The colours satisfy `u_R = u_L ⋇̲ o_L` and `o_R = o_L ⋇̄ u_L`.
    pub fn left(&self) -> (usize, usize) {
        match self.sign {
            Sign::Positive => (self.under_in, self.over_out),
            Sign::Negative => (self.under_out, self.over_in),
        }
    }

    /// `(u_R, o_R)`.
    pub fn right(&self) -> (usize, usize) {
        match self.sign {
            Sign::Positive => (self.under_out, self.over_in),
            Sign::Negative => (self.under_in, self.over_out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub weight_region: usize,
}

/// Counts reported by [`Diagram::stats`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    pub semiarcs: usize,
    pub closed: usize,
    pub positive: usize,
    pub negative: usize,
    pub two_in_one_out: usize,
    pub one_in_two_out: usize,
    pub regions: usize,
}

impl DiagramStats {
    pub fn crossings(&self) -> usize {
        self.positive + self.negative
    }

    pub fn vertices(&self) -> usize {
        self.two_in_one_out + self.one_in_two_out
    }
}

/// A validated diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    name: Option<String>,
    regions: Vec<String>,
    semiarcs: Vec<SemiArc>,
    crossings: Vec<Crossing>,
    vertices: Vec<Vertex>,
}

impl Diagram {
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let file: DiagramFile = serde_json::from_str(text).map_err(|e| DiagramError::Schema(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("diagram serializes")
    }

    pub fn from_file(f: &DiagramFile) -> Result<Self, DiagramError> {
        let regions = index_ids(f.regions.iter().map(String::as_str))?;
        let arcs = index_ids(f.semiarcs.iter().map(|s| s.id.as_str()))?;
        index_ids(f.crossings.iter().map(|c| c.id.as_str()).chain(f.vertices.iter().map(|v| v.id.as_str())))?;
        let region = |kind, site: &str, id: &str| lookup(&regions, kind, site, id);
        let arc = |kind, site: &str, id: &str| lookup(&arcs, kind, site, id);

        let mut closed = vec![false; f.semiarcs.len()];
        for id in &f.closed {
            closed[arc("closed list", "closed", id)?] = true;
        }
        let semiarcs = f
            .semiarcs
            .iter()
            .zip(&closed)
            .map(|(s, &closed)| {
                Ok(SemiArc {
                    id: s.id.clone(),
                    source: region("semi-arc", &s.id, &s.source)?,
                    target: region("semi-arc", &s.id, &s.target)?,
                    closed,
                })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let crossings = f
            .crossings
            .iter()
            .map(|c| {
                let sign = match c.sign {
                    1 => Sign::Positive,
                    -1 => Sign::Negative,
                    s => return Err(DiagramError::Schema(format!("crossing `{}` has sign {s}", c.id))),
                };
                Ok(Crossing {
                    id: c.id.clone(),
                    sign,
                    under_in: arc("crossing", &c.id, &c.under_in)?,
                    under_out: arc("crossing", &c.id, &c.under_out)?,
                    over_in: arc("crossing", &c.id, &c.over_in)?,
                    over_out: arc("crossing", &c.id, &c.over_out)?,
                    weight_region: region("crossing", &c.id, &c.weight_region)?,
                })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let vertices = f
            .vertices
            .iter()
            .map(|v| {
                Ok(Vertex {
                    id: v.id.clone(),
                    kind: v.kind,
                    a: arc("vertex", &v.id, &v.a)?,
                    b: arc("vertex", &v.id, &v.b)?,
                    c: arc("vertex", &v.id, &v.c)?,
                    weight_region: region("vertex", &v.id, &v.weight_region)?,
                })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let d = Diagram { name: f.name.clone(), regions: f.regions.clone(), semiarcs, crossings, vertices };
        d.validate()?;
        Ok(d)
    }

    pub fn to_file(&self) -> DiagramFile {
        let a = |i: usize| self.semiarcs[i].id.clone();
        let r = |i: usize| self.regions[i].clone();
        DiagramFile {
            name: self.name.clone(),
            regions: self.regions.clone(),
            semiarcs: self
                .semiarcs
                .iter()
                .map(|s| SemiArcEntry { id: s.id.clone(), source: r(s.source), target: r(s.target) })
                .collect(),
            closed: self.semiarcs.iter().filter(|s| s.closed).map(|s| s.id.clone()).collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingEntry {
                    id: c.id.clone(),
                    sign: c.sign.value() as i8,
                    under_in: a(c.under_in),
                    under_out: a(c.under_out),
                    over_in: a(c.over_in),
                    over_out: a(c.over_out),
                    weight_region: r(c.weight_region),
                })
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    kind: v.kind,
                    a: a(v.a),
                    b: a(v.b),
                    c: a(v.c),
                    weight_region: r(v.weight_region),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn regions(&self) -> &[String] {
        &self.regions
    }

    pub fn semiarcs(&self) -> &[SemiArc] {
        &self.semiarcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.semiarcs.iter().position(|s| s.id == id)
    }

    pub fn region_index(&self, id: &str) -> Option<usize> {
        self.regions.iter().position(|r| r == id)
    }

    pub fn stats(&self) -> DiagramStats {
        let count_sign = |s| self.crossings.iter().filter(|c| c.sign == s).count();
        let count_kind = |k| self.vertices.iter().filter(|v| v.kind == k).count();
        DiagramStats {
            semiarcs: self.semiarcs.len(),
            closed: self.semiarcs.iter().filter(|s| s.closed).count(),
            positive: count_sign(Sign::Positive),
            negative: count_sign(Sign::Negative),
            two_in_one_out: count_kind(VertexKind::TwoInOneOut),
            one_in_two_out: count_kind(VertexKind::OneInTwoOut),
            regions: self.regions.len(),
        }
    }

    /// Number of connected components of the underlying graph.
    pub fn components(&self) -> usize {
        let nc = self.crossings.len();
        let nodes = nc + self.vertices.len();
        let mut uf = UnionFind::new(nodes);
        let mut end: Vec<Option<usize>> = vec![None; self.semiarcs.len()];
        let mut touch = |arc: usize, node: usize, uf: &mut UnionFind| match end[arc] {
            Some(other) => uf.union(other, node),
            None => end[arc] = Some(node),
        };
        for (i, c) in self.crossings.iter().enumerate() {
            for arc in [c.under_in, c.under_out, c.over_in, c.over_out] {
                touch(arc, i, &mut uf);
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            for arc in [v.a, v.b, v.c] {
                touch(arc, nc + i, &mut uf);
            }
        }
        let closed = self.semiarcs.iter().filter(|s| s.closed).count();
        uf.count() + closed
    }

    fn validate(&self) -> Result<(), DiagramError> {
        self.check_endpoints()?;
        self.check_regions()?;
        self.check_euler()
    }

    fn check_endpoints(&self) -> Result<(), DiagramError> {
        let n = self.semiarcs.len();
        let mut starts = vec![0usize; n];
        let mut ends = vec![0usize; n];
        for c in &self.crossings {
            ends[c.under_in] += 1;
            ends[c.over_in] += 1;
            starts[c.under_out] += 1;
            starts[c.over_out] += 1;
        }
        for v in &self.vertices {
            let (ins, outs) = match v.kind {
                VertexKind::TwoInOneOut => ([v.a, v.c].to_vec(), [v.b].to_vec()),
                VertexKind::OneInTwoOut => ([v.b].to_vec(), [v.a, v.c].to_vec()),
            };
            for i in ins {
                ends[i] += 1;
            }
            for o in outs {
                starts[o] += 1;
            }
        }
        for (i, s) in self.semiarcs.iter().enumerate() {
            let want = if s.closed { 0 } else { 1 };
            if starts[i] != want || ends[i] != want {
                return Err(DiagramError::Endpoint {
                    arc: s.id.clone(),
                    detail: format!("{} start(s) and {} end(s), expected {want} of each", starts[i], ends[i]),
                });
            }
            if s.source == s.target && self.regions.len() > 1 {
                return Err(DiagramError::RegionInconsistency {
                    site: s.id.clone(),
                    detail: "both sides lie in the same region".into(),
                });
            }
        }
        Ok(())
    }

    fn check_regions(&self) -> Result<(), DiagramError> {
        let src = |a: usize| self.semiarcs[a].source;
        let tgt = |a: usize| self.semiarcs[a].target;
        let fail = |site: &str, detail: String| Err(DiagramError::RegionInconsistency { site: site.into(), detail });
        for c in &self.crossings {
            let (ui, uo, oi, oo) = (c.under_in, c.under_out, c.over_in, c.over_out);
            // Corners listed as pairs that must coincide.
            let corners = match c.sign {
                Sign::Positive => [
                    (src(ui), src(oo), "source of under_in vs source of over_out"),
                    (tgt(ui), src(oi), "target of under_in vs source of over_in"),
                    (tgt(oi), tgt(uo), "target of over_in vs target of under_out"),
                    (src(uo), tgt(oo), "source of under_out vs target of over_out"),
                ],
                Sign::Negative => [
                    (src(oi), src(uo), "source of over_in vs source of under_out"),
                    (tgt(oi), src(ui), "target of over_in vs source of under_in"),
                    (tgt(ui), tgt(oo), "target of under_in vs target of over_out"),
                    (src(oo), tgt(uo), "source of over_out vs target of under_out"),
                ],
            };
            for (p, q, what) in corners {
                if p != q {
                    return fail(&c.id, format!("{what}: `{}` != `{}`", self.regions[p], self.regions[q]));
                }
            }
            let y = src(c.left().0);
            if c.weight_region != y {
                return fail(
                    &c.id,
                    format!("weight region `{}` should be `{}`", self.regions[c.weight_region], self.regions[y]),
                );
            }
        }
        for v in &self.vertices {
            let checks = [
                (src(v.a), src(v.b), "source of a vs source of b"),
                (tgt(v.a), src(v.c), "target of a vs source of c"),
                (tgt(v.c), tgt(v.b), "target of c vs target of b"),
            ];
            for (p, q, what) in checks {
                if p != q {
                    return fail(&v.id, format!("{what}: `{}` != `{}`", self.regions[p], self.regions[q]));
                }
            }
            if v.weight_region != src(v.b) {
                return fail(
                    &v.id,
                    format!(
                        "weight region `{}` should be `{}`",
                        self.regions[v.weight_region],
                        self.regions[src(v.b)]
                    ),
                );
            }
        }
        Ok(())
    }

    fn check_euler(&self) -> Result<(), DiagramError> {
        let closed = self.semiarcs.iter().filter(|s| s.closed).count() as i64;
        let v = (self.crossings.len() + self.vertices.len()) as i64 + closed;
        let e = self.semiarcs.len() as i64;
        let f = self.regions.len() as i64;
        let expected = 1 + self.components() as i64;
        if v - e + f != expected {
            return Err(DiagramError::Euler { got: v - e + f, expected });
        }
        Ok(())
    }

    /// Reverses every direction: `in` and `out` slots swap, the two sides
    /// of every semi-arc swap, and vertex kinds flip with `a` and `c` exchanged.
    pub fn reverse(&self) -> Diagram {
        let mut d = self.clone();
        for s in &mut d.semiarcs {
            std::mem::swap(&mut s.source, &mut s.target);
        }
        for c in &mut d.crossings {
            std::mem::swap(&mut c.under_in, &mut c.under_out);
            std::mem::swap(&mut c.over_in, &mut c.over_out);
        }
        for v in &mut d.vertices {
            v.kind = v.kind.flip();
            std::mem::swap(&mut v.a, &mut v.c);
        }
        d.repin_weights();
        d
    }

    /// Reflects the plane of the diagram: crossing signs flip, the two
    /// sides of every semi-arc swap and the `a` and `c` legs exchange.
    pub fn reflect(&self) -> Diagram {
        let mut d = self.clone();
        for s in &mut d.semiarcs {
            std::mem::swap(&mut s.source, &mut s.target);
        }
        for c in &mut d.crossings {
            c.sign = c.sign.flip();
        }
        for v in &mut d.vertices {
            std::mem::swap(&mut v.a, &mut v.c);
        }
        d.repin_weights();
        d
    }

    /// A diagram of the mirror image with reversed orientation: the plane
    /// reflection `(x, y) ↦ (−x, y)` followed by orientation reversal.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.reflect().reverse();
        d.name = self.name.as_ref().map(|n| format!("-{n}*"));
        d
    }

    fn repin_weights(&mut self) {
        for c in &mut self.crossings {
            c.weight_region = self.semiarcs[c.left().0].source;
        }
        for v in &mut self.vertices {
            v.weight_region = self.semiarcs[v.b].source;
        }
    }
}

fn index_ids<'a>(ids: impl Iterator<Item = &'a str>) -> Result<HashMap<String, usize>, DiagramError> {
    let mut map = HashMap::new();
    for (i, id) in ids.enumerate() {
        if map.insert(id.to_string(), i).is_some() {
            return Err(DiagramError::DuplicateId(id.to_string()));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<String, usize>, kind: &'static str, site: &str, id: &str) -> Result<usize, DiagramError> {
    map.get(id)
        .copied()
        .ok_or_else(|| DiagramError::Dangling { kind, site: site.to_string(), id: id.to_string() })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests;
