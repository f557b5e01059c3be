//! The prismatic chain complex `P_*(X)_Y`, its degenerate subcomplex
//! `D_*(X)_Y` and the homology of the quotient `C_* = P_* / D_*`.

mod homology;
mod matrix;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcb::{Mcb, XSetAction};

pub use homology::{homology, homology_lattice, homology_mod_p_direct, AbelianGroup, ClassMap, HomologyOptions};

/// Default cap on the number of generators in any degree touched.
pub const DEFAULT_GENERATOR_CAP: usize = 200_000;

/// `⟨y⟩⟨x_{1,1},…⟩⋯⟨x_{k,1},…⟩`: a region colour and a list of nonempty
/// blocks, each inside one group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrismGen {
    pub y: u32,
    pub blocks: Vec<Vec<u32>>,
}

impl PrismGen {
    pub fn new(y: u32, blocks: Vec<Vec<u32>>) -> Self {
        PrismGen { y, blocks }
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Checks ranges and that every block is nonempty and inside one group.
    pub fn validate<M: Mcb + ?Sized>(&self, m: &M, ys: &XSetAction) -> Result<()> {
        if self.y as usize >= ys.num_points() {
            return Err(Error::structural(format!("region colour {} out of range", self.y)));
        }
        for b in &self.blocks {
            let Some(&first) = b.first() else {
                return Err(Error::structural("empty block"));
            };
            if b.iter().any(|&x| x as usize >= m.size()) {
                return Err(Error::structural(format!("block {b:?} has an element out of range")));
            }
            if b.iter().any(|&x| !m.same_group(x as usize, first as usize)) {
                return Err(Error::structural(format!("block {b:?} mixes groups")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PrismGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.y)?;
        for b in &self.blocks {
            let parts: Vec<String> = b.iter().map(u32::to_string).collect();
            write!(f, "<{}>", parts.join(","))?;
        }
        Ok(())
    }
}

/// A finite integer combination of generators; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<PrismGen, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct ChainTerm {
    coef: String,
    y: u32,
    blocks: Vec<Vec<u32>>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn from_gen(g: PrismGen) -> Self {
        let mut c = Chain::zero();
        c.add_term(g, 1);
        c
    }

    pub fn add_term(&mut self, g: PrismGen, coef: impl Into<BigInt>) {
        let coef = coef.into();
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(g);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, k: &BigInt) {
        for (g, c) in &other.terms {
            self.add_term(g.clone(), c * k);
        }
    }

    pub fn coefficient(&self, g: &PrismGen) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrismGen, &BigInt)> {
        self.terms.iter()
    }

    pub fn to_json(&self) -> String {
        let terms: Vec<ChainTerm> = self
            .terms
            .iter()
            .map(|(g, c)| ChainTerm { coef: c.to_string(), y: g.y, blocks: g.blocks.clone() })
            .collect();
        serde_json::to_string_pretty(&terms).expect("chains serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let terms: Vec<ChainTerm> = serde_json::from_str(text)?;
        let mut c = Chain::zero();
        for t in terms {
            let coef: BigInt = t.coef.parse().map_err(|_| Error::structural(format!("bad coefficient {:?}", t.coef)))?;
            c.add_term(PrismGen::new(t.y, t.blocks), coef);
        }
        Ok(c)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sign}{g}")?;
            } else {
                write!(f, "{sign}{a}{g}")?;
            }
        }
        Ok(())
    }
}

impl Add for Chain {
    type Output = Chain;
    fn add(mut self, rhs: Chain) -> Chain {
        for (g, c) in rhs.terms {
            self.add_term(g, c);
        }
        self
    }
}

impl Sub for Chain {
    type Output = Chain;
    fn sub(self, rhs: Chain) -> Chain {
        self + (-rhs)
    }
}

impl Neg for Chain {
    type Output = Chain;
    fn neg(mut self) -> Chain {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl FromIterator<(PrismGen, i64)> for Chain {
    fn from_iter<I: IntoIterator<Item = (PrismGen, i64)>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for (g, k) in iter {
            c.add_term(g, k);
        }
        c
    }
}

/// `⟨⟨a⟩⟨b⟩⟩` as signed single blocks: one term per `μ ∈ M(s, s+t)`.
pub fn shuffle<M: Mcb + ?Sized>(m: &M, a: &[u32], b: &[u32]) -> Result<Vec<(i64, Vec<u32>)>> {
    let (s, t) = (a.len(), b.len());
    let Some(&first) = a.first().or(b.first()) else {
        return Ok(vec![(1, Vec::new())]);
    };
    let lambda = m.group_of(first as usize);
    if a.iter().chain(b).any(|&x| m.group_of(x as usize) != lambda) {
        return Err(Error::structural("shuffle blocks must lie in one group"));
    }
    let e = m.identity(lambda);
    let pick = |v: &[u32], i: usize| if i == 0 { e } else { v[i - 1] as usize };
    let mut out = Vec::new();
    for mu in increasing_maps(s, s + t) {
        let exponent: usize = mu.iter().enumerate().map(|(k, &v)| v - (k + 1)).sum();
        let sign = if exponent % 2 == 0 { 1 } else { -1 };
        let mut floor = 0;
        let seq = (1..=s + t)
            .map(|j| {
                while floor < s && mu[floor] <= j {
                    floor += 1;
                }
                m.mul(pick(a, floor), pick(b, j - floor)) as u32
            })
            .collect();
        out.push((sign, seq));
    }
    Ok(out)
}

/// Strictly increasing maps `{1..s} → {1..n}`, as value lists, in
/// lexicographic order.
fn increasing_maps(s: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(s: usize, n: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in from..=n - (s - cur.len()) + 1 {
            cur.push(v);
            go(s, n, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(s, n, 1, &mut Vec::with_capacity(s), &mut out);
    out
}

/// The prismatic complex of an MCB with an X-set.
pub struct Complex<'a, M: Mcb + ?Sized> {
    m: &'a M,
    ys: &'a XSetAction,
    hat_sign: i64,
}

impl<'a, M: Mcb + ?Sized> Complex<'a, M> {
    pub fn new(m: &'a M, ys: &'a XSetAction) -> Result<Self> {
        if ys.carrier_size() != m.size() {
            return Err(Error::structural(format!(
                "X-set acts on {} elements but the MCB has {}",
                ys.carrier_size(),
                m.size()
            )));
        }
        Ok(Complex { m, ys, hat_sign: 1 })
    }

    /// A deliberately wrong boundary with the deletion terms negated.
    #[doc(hidden)]
    pub fn with_flipped_deletion_sign(mut self) -> Self {
        self.hat_sign = -1;
        self
    }

    pub fn mcb(&self) -> &M {
        self.m
    }

    pub fn xset(&self) -> &XSetAction {
        self.ys
    }

    /// `|Y| · Σ_{n₁+⋯+n_k = n} Π s(n_i)` with `s(m) = Σ_λ |G_λ|^m`,
    /// saturating.
    pub fn generator_count(&self, n: usize) -> u128 {
        let sizes: Vec<u128> = (0..self.m.num_groups()).map(|l| self.m.group_members(l).len() as u128).collect();
        let s = |k: usize| -> u128 {
            sizes.iter().fold(0u128, |acc, &g| acc.saturating_add(g.saturating_pow(k as u32)))
        };
        // c[j]: weighted compositions of j.
        let mut c = vec![0u128; n + 1];
        c[0] = 1;
        for j in 1..=n {
            for first in 1..=j {
                c[j] = c[j].saturating_add(s(first).saturating_mul(c[j - first]));
            }
        }
        c[n].saturating_mul(self.ys.num_points() as u128)
    }

    pub(crate) fn check_cap(&self, n: usize, cap: usize) -> Result<()> {
        let count = self.generator_count(n);
        if count > cap as u128 {
            return Err(Error::budget(format!(
                "degree {n} has {count} prismatic generators (|X| = {}, |Y| = {}), above the cap of {cap}",
                self.m.size(),
                self.ys.num_points()
            )));
        }
        Ok(())
    }

    /// All generators of degree `n` in canonical order.
    pub fn generators(&self, n: usize, cap: usize) -> Result<Vec<PrismGen>> {
        self.check_cap(n, cap)?;
        let mut out = Vec::new();
        let mut blocks = Vec::new();
        for y in 0..self.ys.num_points() as u32 {
            self.fill(n, y, &mut blocks, &mut out);
        }
        out.sort();
        Ok(out)
    }

    /// Calls `f` on every generator of degree `n` with region colour `y`,
    /// without materialising them. No cap applies.
    pub fn for_each_generator(&self, n: usize, y: u32, mut f: impl FnMut(&PrismGen)) {
        let mut g = PrismGen::new(y, Vec::new());
        self.walk(n, &mut g, &mut f);
    }

    fn walk(&self, left: usize, g: &mut PrismGen, f: &mut dyn FnMut(&PrismGen)) {
        if left == 0 {
            f(g);
            return;
        }
        for len in 1..=left {
            for lambda in 0..self.m.num_groups() {
                let members = self.m.group_members(lambda);
                let mut idx = vec![0usize; len];
                loop {
                    g.blocks.push(idx.iter().map(|&i| members[i]).collect());
                    self.walk(left - len, g, f);
                    g.blocks.pop();
                    if !bump(&mut idx, members.len()) {
                        break;
                    }
                }
            }
        }
    }

    fn fill(&self, left: usize, y: u32, blocks: &mut Vec<Vec<u32>>, out: &mut Vec<PrismGen>) {
        if left == 0 {
            out.push(PrismGen::new(y, blocks.clone()));
            return;
        }
        for len in 1..=left {
            for lambda in 0..self.m.num_groups() {
                let members = self.m.group_members(lambda);
                let mut idx = vec![0usize; len];
                loop {
                    blocks.push(idx.iter().map(|&i| members[i]).collect());
                    self.fill(left - len, y, blocks, out);
                    blocks.pop();
                    if !bump(&mut idx, members.len()) {
                        break;
                    }
                }
            }
        }
    }

    /// Calls `f(sign, term)` for each term of `∂g`, before cancellation.
    pub fn boundary_terms(&self, g: &PrismGen, mut f: impl FnMut(i64, PrismGen)) {
        let m = self.m;
        let mut prefix = 0usize;
        for (i, blk) in g.blocks.iter().enumerate() {
            let a = blk[0] as usize;
            let sign = if prefix % 2 == 0 { 1 } else { -1 };
            // ∂̃: ⋇̲a on everything before, ⋇̄a after, a⁻¹(·)⋇̄a inside.
            let ainv = m.inv(a);
            let mut blocks = Vec::with_capacity(g.blocks.len());
            for (j, b) in g.blocks.iter().enumerate() {
                let nb: Vec<u32> = if j < i {
                    b.iter().map(|&x| m.under(x as usize, a) as u32).collect()
                } else if j == i {
                    b[1..].iter().map(|&x| m.over(m.mul(ainv, x as usize), a) as u32).collect()
                } else {
                    b.iter().map(|&x| m.over(x as usize, a) as u32).collect()
                };
                if !nb.is_empty() {
                    blocks.push(nb);
                }
            }
            f(sign, PrismGen::new(self.ys.act(g.y as usize, a) as u32, blocks));
            // ∂̂: alternating deletions.
            for j in 1..=blk.len() {
                let s = if (prefix + j) % 2 == 0 { 1 } else { -1 };
                let mut blocks = g.blocks.clone();
                blocks[i].remove(j - 1);
                if blocks[i].is_empty() {
                    blocks.remove(i);
                }
                f(s * self.hat_sign, PrismGen::new(g.y, blocks));
            }
            prefix += blk.len();
        }
    }

    pub fn boundary(&self, g: &PrismGen) -> Chain {
        let mut c = Chain::zero();
        self.boundary_terms(g, |s, t| c.add_term(t, s));
        c
    }

    pub fn boundary_chain(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero();
        for (g, k) in c.iter() {
            self.boundary_terms(g, |s, t| out.add_term(t, k * s));
        }
        out
    }

    /// `g − (g with blocks i, i+1 replaced by their shuffle)`, if those
    /// blocks share a group.
    pub fn degenerate_at(&self, g: &PrismGen, i: usize) -> Result<Option<Chain>> {
        if i + 1 >= g.blocks.len() {
            return Ok(None);
        }
        let (a, b) = (&g.blocks[i], &g.blocks[i + 1]);
        if !self.m.same_group(a[0] as usize, b[0] as usize) {
            return Ok(None);
        }
        let mut c = Chain::from_gen(g.clone());
        for (s, seq) in shuffle(self.m, a, b)? {
            let mut blocks = Vec::with_capacity(g.blocks.len() - 1);
            blocks.extend_from_slice(&g.blocks[..i]);
            blocks.push(seq);
            blocks.extend_from_slice(&g.blocks[i + 2..]);
            c.add_term(PrismGen::new(g.y, blocks), -s);
        }
        Ok(Some(c))
    }

    /// The spanning set of `D_n`: one element per generator and adjacent
    /// same-group block pair. Empty for `n ≤ 1`.
    pub fn degenerate_generators(&self, n: usize, cap: usize) -> Result<Vec<Chain>> {
        if n <= 1 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for g in self.generators(n, cap)? {
            for i in 0..g.blocks.len().saturating_sub(1) {
                if let Some(d) = self.degenerate_at(&g, i)? {
                    out.push(d);
                }
            }
        }
        Ok(out)
    }

    /// The first degree-`n` generator with `∂∂g ≠ 0`, if any.
    pub fn verify_dd_zero(&self, n: usize, cap: usize) -> Result<Option<PrismGen>> {
        for g in self.generators(n, cap)? {
            let mut acc: HashMap<PrismGen, i64> = HashMap::new();
            self.boundary_terms(&g, |s, t| {
                self.boundary_terms(&t, |s2, t2| *acc.entry(t2).or_default() += s * s2);
            });
            if acc.values().any(|&v| v != 0) {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// The first degenerate generator of degree `n` whose boundary is not
    /// in the integer span of `D_{n−1}`, if any.
    pub fn verify_subcomplex(&self, n: usize, cap: usize) -> Result<Option<Chain>> {
        let lower = self.degenerate_generators(n.saturating_sub(1), cap)?;
        let mut index: HashMap<PrismGen, usize> = HashMap::new();
        let to_sparse = |c: &Chain, index: &mut HashMap<PrismGen, usize>| -> Vec<(usize, BigInt)> {
            c.iter()
                .map(|(g, k)| {
                    let next = index.len();
                    (*index.entry(g.clone()).or_insert(next), k.clone())
                })
                .collect()
        };
        let basis: Vec<Vec<(usize, BigInt)>> = lower.iter().map(|c| to_sparse(c, &mut index)).collect();
        let lattice = matrix::Lattice::new(basis);
        for d in self.degenerate_generators(n, cap)? {
            let bd = self.boundary_chain(&d);
            let v = to_sparse(&bd, &mut index);
            if !lattice.contains(&v) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }
}

fn bump(v: &mut [usize], base: usize) -> bool {
    for x in v.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}
