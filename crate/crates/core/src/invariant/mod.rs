//! Local weights, the 2-cycle `W(D;C)` and the invariants `Φ_θ(D)` and
//! `𝓗(D)`.
//!
//! At a crossing with source-side colours `(u_L, o_L)` the weight is
//! `±⟨y⟩⟨u_L⟩⟨o_L⟩`, the sign being the crossing sign and `y` the colour
//! of the region on the source side of `u_L`. At a vertex it is
//! `⟨y⟩⟨a,b⟩` (two in, one out) or `−⟨y⟩⟨a,b⟩` (one in, two out), with `y`
//! the colour of the region on the source side of `b`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::chain::{Chain, ClassMap, Complex, HomologyOptions, PrismGen};
use crate::cocycle::{Coefficients, Cochain};
use crate::coloring::{fold_colorings, Coloring, ColoringRef, SearchOptions};
use crate::diagram::{Diagram, VertexKind};
use crate::error::{Error, Result};
use crate::mcb::{Mcb, XSetAction};

/// A crossing or a vertex, by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Crossing(usize),
    Vertex(usize),
}

/// `w(ξ; C)` as a sign and a generator.
pub fn local_weight(d: &Diagram, site: Site, c: ColoringRef<'_>) -> Result<(i64, PrismGen)> {
    let region = |r: usize| -> Result<u32> {
        match c.regions {
            None => Ok(0),
            Some(rs) => rs.get(r).copied().ok_or_else(|| Error::structural("region colouring is too short")),
        }
    };
    let arc = |i: usize| -> Result<u32> {
        c.arcs.get(i).copied().ok_or_else(|| Error::structural("arc colouring is too short"))
    };
    match site {
        Site::Crossing(i) => {
            let x = d.crossings().get(i).ok_or_else(|| Error::structural(format!("no crossing {i}")))?;
            let (ul, ol) = x.left();
            let g = PrismGen::new(region(x.weight_region)?, vec![vec![arc(ul)?], vec![arc(ol)?]]);
            Ok((x.sign.value(), g))
        }
        Site::Vertex(i) => {
            let v = d.vertices().get(i).ok_or_else(|| Error::structural(format!("no vertex {i}")))?;
            let s = match v.kind {
                VertexKind::TwoInOneOut => 1,
                VertexKind::OneInTwoOut => -1,
            };
            Ok((s, PrismGen::new(region(v.weight_region)?, vec![vec![arc(v.a)?, arc(v.b)?]])))
        }
    }
}

fn sites(d: &Diagram) -> impl Iterator<Item = Site> + '_ {
    (0..d.crossings().len()).map(Site::Crossing).chain((0..d.vertices().len()).map(Site::Vertex))
}

/// `W(D; C)`, the sum of all local weights.
pub fn cycle_of_coloring(d: &Diagram, c: ColoringRef<'_>) -> Result<Chain> {
    let mut w = Chain::zero();
    for s in sites(d) {
        let (k, g) = local_weight(d, s, c)?;
        w.add_term(g, k);
    }
    Ok(w)
}

/// The first colouring whose `W(D;C)` has nonzero boundary, if any.
pub fn find_noncycle<M: Mcb>(
    d: &Diagram,
    m: &M,
    ys: Option<&XSetAction>,
    opts: &SearchOptions,
) -> Result<Option<Coloring>> {
    let trivial;
    let act = match ys {
        Some(ys) => ys,
        None => {
            trivial = XSetAction::trivial(m.size());
            &trivial
        }
    };
    let cx = Complex::new(m, act)?;
    let parts = fold_colorings(d, m, ys, opts, || None, |bad: &mut Option<Coloring>, c| {
        if bad.is_none() && !cx.boundary_chain(&cycle_of_coloring(d, c)?).is_zero() {
            *bad = Some(c.to_owned());
        }
        Ok(())
    })?;
    Ok(parts.into_iter().flatten().next())
}

/// A multiset of values of `A` with arbitrary-precision multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub coefficients: Coefficients,
    pub counts: BTreeMap<i64, BigUint>,
}

#[derive(Serialize)]
struct ValueCount {
    value: i64,
    count: String,
}

#[derive(Serialize)]
struct ResultJson {
    coefficients: String,
    colorings: String,
    values: Vec<ValueCount>,
}

impl InvariantResult {
    pub fn new(coefficients: Coefficients) -> Self {
        InvariantResult { coefficients, counts: BTreeMap::new() }
    }

    pub fn insert(&mut self, value: i64, count: impl Into<BigUint>) {
        let v = self.coefficients.reduce(value);
        *self.counts.entry(v).or_default() += count.into();
    }

    /// Total multiplicity, the number of colourings.
    pub fn colorings(&self) -> BigUint {
        self.counts.values().fold(BigUint::zero(), |acc, c| acc + c)
    }

    pub fn count(&self, value: i64) -> BigUint {
        self.counts.get(&self.coefficients.reduce(value)).cloned().unwrap_or_default()
    }

    /// The multiset `{−v}`.
    pub fn negated(&self) -> Self {
        let mut out = Self::new(self.coefficients);
        for (&v, c) in &self.counts {
            out.insert(self.coefficients.neg(v), c.clone());
        }
        out
    }

    /// JSON with values in increasing order; counts are decimal strings.
    pub fn to_json(&self) -> String {
        let r = ResultJson {
            coefficients: self.coefficients.to_string(),
            colorings: self.colorings().to_string(),
            values: self.counts.iter().map(|(&value, c)| ValueCount { value, count: c.to_string() }).collect(),
        };
        serde_json::to_string(&r).expect("results serialise")
    }
}

impl fmt::Display for InvariantResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in &self.counts {
            writeln!(f, "{v}: {c}")?;
        }
        Ok(())
    }
}

/// `θ(W(D;C))`, evaluated site by site.
pub fn evaluate<C: Cochain + ?Sized>(d: &Diagram, theta: &C, c: ColoringRef<'_>) -> i64 {
    let a = theta.coefficients();
    let y = |r: usize| c.regions.map_or(0, |rs| rs[r]);
    let mut acc = 0;
    for x in d.crossings() {
        let (ul, ol) = x.left();
        let v = theta.eval(y(x.weight_region), &[&[c.arcs[ul]], &[c.arcs[ol]]]);
        acc = a.add(acc, a.scale(x.sign.value(), v));
    }
    for v in d.vertices() {
        let k = match v.kind {
            VertexKind::TwoInOneOut => 1,
            VertexKind::OneInTwoOut => -1,
        };
        let t = theta.eval(y(v.weight_region), &[&[c.arcs[v.a], c.arcs[v.b]]]);
        acc = a.add(acc, a.scale(k, t));
    }
    acc
}

/// `Φ_θ(D)`: the multiset of `θ(W(D;C))` over all colourings.
///
/// `θ` should be a degree-2 cocycle on the complex of `m` and `ys` (the
/// one-point X-set when `ys` is `None`); this is not rechecked here.
pub fn phi_invariant<M: Mcb, C: Cochain + ?Sized>(
    d: &Diagram,
    m: &M,
    ys: Option<&XSetAction>,
    theta: &C,
    opts: &SearchOptions,
) -> Result<InvariantResult> {
    if theta.degree() != 2 {
        return Err(Error::structural(format!("need a 2-cocycle, got degree {}", theta.degree())));
    }
    let parts = fold_colorings(d, m, ys, opts, BTreeMap::<i64, u64>::new, |acc, c| {
        *acc.entry(evaluate(d, theta, c)).or_default() += 1;
        Ok(())
    })?;
    let mut out = InvariantResult::new(theta.coefficients());
    for part in parts {
        for (v, c) in part {
            out.insert(v, c);
        }
    }
    Ok(out)
}

/// `Φ_θ` of a diagram and of its mirror image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    pub original: InvariantResult,
    pub mirrored: InvariantResult,
}

impl MirrorReport {
    /// `Φ_θ(mirror) = −Φ_θ(D)` as multisets.
    pub fn holds(&self) -> bool {
        self.mirrored == self.original.negated()
    }
}

pub fn mirror_check<M: Mcb, C: Cochain + ?Sized>(
    d: &Diagram,
    m: &M,
    ys: Option<&XSetAction>,
    theta: &C,
    opts: &SearchOptions,
) -> Result<MirrorReport> {
    let original = phi_invariant(d, m, ys, theta, opts)?;
    let mirrored = phi_invariant(&d.mirror(), m, ys, theta, opts)?;
    Ok(MirrorReport { original, mirrored })
}

/// `𝓗(D)`: the classes `[W(D;C)] ∈ H₂(X)_Y` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMultiset {
    /// `H₂(X)_Y` as an abstract group.
    pub group: crate::chain::AbelianGroup,
    /// Each class by its canonical coordinates; the zero class is empty.
    pub classes: BTreeMap<Vec<(usize, BigInt)>, BigUint>,
}

impl ClassMultiset {
    pub fn zero_class_count(&self) -> BigUint {
        self.classes.get(&Vec::new()).cloned().unwrap_or_default()
    }
}

/// Computes `𝓗(D)`; subject to the homology caps.
pub fn homology_class_multiset<M: Mcb>(
    d: &Diagram,
    m: &M,
    ys: Option<&XSetAction>,
    search: &SearchOptions,
    hopts: &HomologyOptions,
) -> Result<ClassMultiset> {
    let trivial;
    let act = match ys {
        Some(ys) => ys,
        None => {
            trivial = XSetAction::trivial(m.size());
            &trivial
        }
    };
    let cx = Complex::new(m, act)?;
    let map = ClassMap::new(&cx, 2, hopts)?;
    let parts = fold_colorings(d, m, ys, search, BTreeMap::new, |acc, c| {
        let class = map.class_of(&cycle_of_coloring(d, c)?)?;
        *acc.entry(class).or_insert(0u64) += 1;
        Ok(())
    })?;
    let mut classes: BTreeMap<Vec<(usize, BigInt)>, BigUint> = BTreeMap::new();
    for part in parts {
        for (k, c) in part {
            *classes.entry(k).or_default() += BigUint::from(c);
        }
    }
    Ok(ClassMultiset { group: map.group().clone(), classes })
}

#[cfg(test)]
mod tests;
