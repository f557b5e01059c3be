//! Homology of `C_*(X)_Y = P_*(X)_Y / D_*(X)_Y`.
//!
//! Two independent computations are provided. [`homology`] presents each
//! `C_k` by eliminating one generator per degenerate relation and reduces
//! the induced boundary matrices; [`homology_lattice`] works in `P_*`
//! directly, as `{x : ∂x ∈ D_{n−1}} / (D_n + ∂P_{n+1})`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::{diagonalize, invariant_factors, normalize, rank_mod_p, Lattice, Sparse, UnitQuotient};
use super::{Chain, Complex, PrismGen, DEFAULT_GENERATOR_CAP};
use crate::error::{Error, Result};
use crate::mcb::Mcb;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    pub generator_cap: usize,
    pub max_degree: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { generator_cap: DEFAULT_GENERATOR_CAP, max_degree: 3 }
    }
}

/// `ℤ^free_rank ⊕ ℤ/t₁ ⊕ ⋯`, with `t₁ | t₂ | ⋯` all greater than one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    fn from_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let torsion = factors.iter().filter(|d| !d.is_one()).map(|d| d.magnitude().clone()).collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands in the invariant-factor decomposition.
    pub fn summands(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct Degree {
    gens: Vec<PrismGen>,
    index: HashMap<PrismGen, usize>,
}

impl Degree {
    fn new<M: Mcb + ?Sized>(c: &Complex<'_, M>, k: usize, cap: usize) -> Result<Self> {
        let gens = c.generators(k, cap)?;
        let index = gens.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        Ok(Degree { gens, index })
    }

    fn boundary_of<M: Mcb + ?Sized>(&self, c: &Complex<'_, M>, g: &PrismGen) -> Sparse<i64> {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        c.boundary_terms(g, |s, t| *acc.entry(self.index[&t]).or_default() += s);
        let mut v: Sparse<i64> = acc.into_iter().filter(|(_, x)| *x != 0).collect();
        v.sort_unstable();
        v
    }

    fn chain_vec(&self, ch: &Chain) -> Sparse<BigInt> {
        ch.iter().map(|(g, k)| (self.index[g], k.clone())).collect()
    }
}

fn check_degree(n: usize, opts: &HomologyOptions) -> Result<()> {
    if n > opts.max_degree {
        return Err(Error::budget(format!(
            "homology in degree {n} is above the configured maximum degree {}",
            opts.max_degree
        )));
    }
    Ok(())
}

fn check_caps<M: Mcb + ?Sized>(c: &Complex<'_, M>, n: usize, opts: &HomologyOptions) -> Result<()> {
    for k in n.saturating_sub(1)..=n + 1 {
        c.check_cap(k, opts.generator_cap)?;
    }
    Ok(())
}

/// The reduced complex `C_k` in degrees `n−1 ..= n+1` and the boundary
/// matrices between them.
struct Reduced {
    dims: HashMap<usize, usize>,
    /// `∂̄_k` as columns, for `k ≥ 1`.
    boundaries: HashMap<usize, Vec<Sparse<i64>>>,
}

fn reduce<M: Mcb + ?Sized>(c: &Complex<'_, M>, n: usize, opts: &HomologyOptions) -> Result<Option<Reduced>> {
    let lo = n.saturating_sub(1);
    let mut degrees = HashMap::new();
    let mut quotients = HashMap::new();
    for k in lo..=n + 1 {
        let d = Degree::new(c, k, opts.generator_cap)?;
        let rels: Vec<Sparse<i64>> = c
            .degenerate_generators(k, opts.generator_cap)?
            .iter()
            .map(|ch| {
                ch.iter()
                    .map(|(g, x)| x.to_i64().map(|x| (d.index[g], x)))
                    .collect::<Option<Sparse<i64>>>()
            })
            .collect::<Option<_>>()
            .ok_or_else(|| Error::structural("degenerate relation coefficient out of range"))?;
        let Some(q) = UnitQuotient::new(d.gens.len(), rels) else {
            return Ok(None);
        };
        degrees.insert(k, d);
        quotients.insert(k, q);
    }
    let mut boundaries = HashMap::new();
    for k in (lo + 1).max(1)..=n + 1 {
        let (upper, lower) = (&degrees[&k], &degrees[&(k - 1)]);
        let (qu, ql) = (&quotients[&k], &quotients[&(k - 1)]);
        let mut cols = Vec::with_capacity(qu.dim());
        for &gi in &qu.free {
            let Some(col) = ql.project(&lower.boundary_of(c, &upper.gens[gi])) else {
                return Ok(None);
            };
            cols.push(col);
        }
        boundaries.insert(k, cols);
    }
    let dims = quotients.iter().map(|(&k, q)| (k, q.dim())).collect();
    Ok(Some(Reduced { dims, boundaries }))
}

/// `H_n(X; ℤ)_Y` via the reduced quotient complex, falling back to the
/// lattice computation when a degenerate relation has no unit pivot.
fn integral<M: Mcb + ?Sized>(c: &Complex<'_, M>, n: usize, opts: &HomologyOptions) -> Result<AbelianGroup> {
    let Some(r) = reduce(c, n, opts)? else {
        return homology_lattice(c, n, opts);
    };
    let rank_out = if n == 0 { 0 } else { invariant_factors(&r.boundaries[&n]).len() };
    let incoming = invariant_factors(&r.boundaries[&(n + 1)]);
    Ok(AbelianGroup::from_factors(r.dims[&n] - rank_out - incoming.len(), &incoming))
}

/// `H_n(C_*(X; A)_Y)` for `A = ℤ` (`modulus == 0`) or `A = ℤ_m`.
///
/// For `ℤ_m` the universal coefficient theorem is applied to the integral
/// groups in degrees `n` and `n−1`, which is valid since each `C_k` is
/// free. The result then lists every summand as torsion.
pub fn homology<M: Mcb + ?Sized>(
    c: &Complex<'_, M>,
    n: usize,
    modulus: u64,
    opts: &HomologyOptions,
) -> Result<AbelianGroup> {
    check_degree(n, opts)?;
    check_caps(c, n, opts)?;
    let h = integral(c, n, opts)?;
    if modulus == 0 {
        return Ok(h);
    }
    if modulus == 1 {
        return Ok(AbelianGroup::default());
    }
    let m = BigUint::from(modulus);
    let mut parts: Vec<BigUint> = vec![m.clone(); h.free_rank];
    parts.extend(h.torsion.iter().map(|t| t.gcd(&m)));
    if n > 0 {
        let below = integral(c, n - 1, opts)?;
        parts.extend(below.torsion.iter().map(|t| t.gcd(&m)));
    }
    let factors: Vec<BigInt> = normalize(parts.into_iter().map(BigInt::from).collect());
    Ok(AbelianGroup::from_factors(0, &factors))
}

/// `dim H_n(C_*(X; 𝔽_p)_Y)` by ranks over `𝔽_p` of the reduced
/// boundary matrices, without passing through integral homology.
pub fn homology_mod_p_direct<M: Mcb + ?Sized>(
    c: &Complex<'_, M>,
    n: usize,
    p: u64,
    opts: &HomologyOptions,
) -> Result<usize> {
    check_degree(n, opts)?;
    check_caps(c, n, opts)?;
    if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::structural(format!("{p} is not prime")));
    }
    let r = reduce(c, n, opts)?.ok_or_else(|| Error::structural("quotient complex has no unit presentation"))?;
    let out = if n == 0 { 0 } else { rank_mod_p(&r.boundaries[&n], p) };
    Ok(r.dims[&n] - out - rank_mod_p(&r.boundaries[&(n + 1)], p))
}

/// Canonical names for the classes of `H_n(X; ℤ)_Y`.
///
/// A class is named by the reduced coordinates of any representative in a
/// basis of `{x : ∂x ∈ D_{n−1}}`, modulo `D_n + ∂P_{n+1}`; equal classes get
/// equal names.
pub struct ClassMap {
    top: Degree,
    cycles: Lattice,
    relations: Lattice,
    group: AbelianGroup,
}

impl ClassMap {
    pub fn new<M: Mcb + ?Sized>(c: &Complex<'_, M>, n: usize, opts: &HomologyOptions) -> Result<Self> {
        let (top, cycles, coords) = lattice_parts(c, n, opts)?;
        let group = group_of(&cycles, &coords);
        let relations = Lattice::new(coords.into_iter().map(|x| sparse(&x)).collect());
        Ok(ClassMap { top, cycles, relations, group })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The class of a chain that is a cycle modulo degeneracies.
    pub fn class_of(&self, ch: &Chain) -> Result<Vec<(usize, BigInt)>> {
        if ch.iter().any(|(g, _)| !self.top.index.contains_key(g)) {
            return Err(Error::structural("chain is not in the degree of this class map"));
        }
        let x = self
            .cycles
            .coordinates(&self.top.chain_vec(ch))
            .ok_or_else(|| Error::structural("chain is not a cycle modulo degenerate chains"))?;
        Ok(self.relations.reduce(&sparse(&x)).into_iter().collect())
    }
}

fn sparse(x: &[BigInt]) -> Sparse<BigInt> {
    x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

/// The degree-`n` generators, a lattice basis of the cycles modulo
/// degeneracies, and every relation in cycle coordinates.
fn lattice_parts<M: Mcb + ?Sized>(
    c: &Complex<'_, M>,
    n: usize,
    opts: &HomologyOptions,
) -> Result<(Degree, Lattice, Vec<Vec<BigInt>>)> {
    check_degree(n, opts)?;
    check_caps(c, n, opts)?;
    let top = Degree::new(c, n, opts.generator_cap)?;
    let nn = top.gens.len();
    // Cycles modulo degeneracies.
    let cycles: Vec<Sparse<BigInt>> = if n == 0 {
        (0..nn).map(|i| vec![(i, BigInt::one())]).collect()
    } else {
        let low = Degree::new(c, n - 1, opts.generator_cap)?;
        let off = low.gens.len();
        let mut rows: Vec<Sparse<BigInt>> = top
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v: Sparse<BigInt> =
                    low.boundary_of(c, g).into_iter().map(|(k, x)| (k, BigInt::from(x))).collect();
                v.push((off + i, BigInt::one()));
                v
            })
            .collect();
        for d in c.degenerate_generators(n - 1, opts.generator_cap)? {
            rows.push(low.chain_vec(&d));
        }
        let l = Lattice::new(rows);
        l.rows()
            .filter(|(p, _)| *p >= off)
            .map(|(_, r)| r.iter().map(|(&k, x)| (k - off, x.clone())).collect())
            .collect()
    };
    let z = Lattice::new(cycles);
    // Boundaries plus degeneracies, in cycle coordinates.
    let mut rels: Vec<Sparse<BigInt>> = c
        .degenerate_generators(n, opts.generator_cap)?
        .iter()
        .map(|d| top.chain_vec(d))
        .collect();
    for g in c.generators(n + 1, opts.generator_cap)? {
        rels.push(top.chain_vec(&c.boundary(&g)));
    }
    let mut coords = Vec::with_capacity(rels.len());
    for v in &rels {
        let x = z.coordinates(v).ok_or_else(|| {
            Error::axiom(format!("a boundary in degree {n} is not a cycle modulo degeneracies (∂∂ ≠ 0)"))
        })?;
        coords.push(x);
    }
    Ok((top, z, coords))
}

fn group_of(z: &Lattice, coords: &[Vec<BigInt>]) -> AbelianGroup {
    let factors = if coords.is_empty() || z.rank() == 0 { Vec::new() } else { normalize(diagonalize(coords.to_vec())) };
    let factors: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_zero()).collect();
    AbelianGroup::from_factors(z.rank() - factors.len(), &factors)
}

/// `H_n(X; ℤ)_Y` computed in `P_*` as
/// `{x ∈ P_n : ∂x ∈ D_{n−1}} / (D_n + ∂P_{n+1})` with exact lattices.
pub fn homology_lattice<M: Mcb + ?Sized>(
    c: &Complex<'_, M>,
    n: usize,
    opts: &HomologyOptions,
) -> Result<AbelianGroup> {
    let (_, z, coords) = lattice_parts(c, n, opts)?;
    Ok(group_of(&z, &coords))
}
