use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Coefficients, TableCochain};
use crate::algebra::{BiquandleTables, FinBiquandle, Side};
use crate::error::{Error, Result};
use crate::mcb::{xset_from_parallel, AssocMcb, Mcb, XSetAction};

/// A biquandle `n`-cocycle `θ: Y × Xⁿ → A` (`n` = 2 or 3), tabulated as
/// `table[((y·|X| + x₁)·|X| + x₂)⋯]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BQCocycle {
    arity: usize,
    base: FinBiquandle,
    xset: XSetAction,
    coefficients: Coefficients,
    table: Vec<i64>,
}

/// Serialized form; a missing `xset` is the one-point X-set.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BqFile {
    arity: usize,
    modulus: u64,
    biquandle: BiquandleTables,
    #[serde(default)]
    xset: Option<Vec<Vec<usize>>>,
    values: Vec<i64>,
}

/// Where a biquandle cocycle or a lifting hypothesis fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BqWitness {
    pub condition: String,
    pub y: usize,
    pub xs: Vec<usize>,
    pub value: i64,
}

impl fmt::Display for BqWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at y = {}, x = {:?} (value {})", self.condition, self.y, self.xs, self.value)
    }
}

impl BQCocycle {
    pub fn new(
        base: FinBiquandle,
        xset: XSetAction,
        arity: usize,
        coefficients: Coefficients,
        table: Vec<i64>,
    ) -> Result<Self> {
        if !(2..=3).contains(&arity) {
            return Err(Error::structural(format!("biquandle cocycles of arity {arity} are not supported")));
        }
        if xset.carrier_size() != base.size() {
            return Err(Error::structural("the X-set does not act on the biquandle"));
        }
        let len = xset.num_points() * base.size().pow(arity as u32);
        if table.len() != len {
            return Err(Error::structural(format!("cocycle table has {} entries, expected {len}", table.len())));
        }
        let table = table.into_iter().map(|v| coefficients.reduce(v)).collect();
        Ok(BQCocycle { arity, base, xset, coefficients, table })
    }

    pub fn from_fn(
        base: FinBiquandle,
        xset: XSetAction,
        arity: usize,
        coefficients: Coefficients,
        f: impl Fn(usize, &[usize]) -> i64,
    ) -> Result<Self> {
        let n = base.size();
        let len = xset.num_points() * n.pow(arity as u32);
        let mut xs = vec![0usize; arity];
        let table = (0..len)
            .map(|i| {
                let mut r = i;
                for x in xs.iter_mut().rev() {
                    *x = r % n;
                    r /= n;
                }
                f(r, &xs)
            })
            .collect();
        Self::new(base, xset, arity, coefficients, table)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> &FinBiquandle {
        &self.base
    }

    pub fn xset(&self) -> &XSetAction {
        &self.xset
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn value(&self, y: usize, xs: &[usize]) -> i64 {
        debug_assert_eq!(xs.len(), self.arity);
        self.table[xs.iter().fold(y, |acc, &x| acc * self.base.size() + x)]
    }

    /// Pointwise sum.
    pub fn add(&self, other: &BQCocycle) -> Result<BQCocycle> {
        if self.arity != other.arity
            || self.coefficients != other.coefficients
            || self.base != other.base
            || self.xset != other.xset
        {
            return Err(Error::structural("cocycles are defined on different data"));
        }
        let a = self.coefficients;
        let table = self.table.iter().zip(&other.table).map(|(&x, &y)| a.add(x, y)).collect();
        Ok(BQCocycle { table, ..self.clone() })
    }

    pub fn to_json(&self) -> String {
        let f = BqFile {
            arity: self.arity,
            modulus: self.coefficients.modulus,
            biquandle: self.base.to_tables(),
            xset: (self.xset.num_points() > 1).then(|| self.xset.table()),
            values: self.table.clone(),
        };
        serde_json::to_string(&f).expect("tables serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: BqFile = serde_json::from_str(text)?;
        let base = FinBiquandle::from_tables(&f.biquandle)?;
        let xset = match f.xset {
            Some(t) => XSetAction::from_table(base.size(), &t)?,
            None => XSetAction::trivial(base.size()),
        };
        let coefficients = if f.modulus == 0 { Coefficients::integers() } else { Coefficients::cyclic(f.modulus) };
        Self::new(base, xset, f.arity, coefficients, f.values)
    }

    /// `θ̃(⟨y⟩⟨(x₁,i₁)⟩⋯⟨(x_n,i_n)⟩)` for any representatives `i_k ≥ 0`.
    ///
    /// The first index runs over `⋇̄^[i] x₁` applied to every entry and to
    /// `y`. Each later index `k` runs over `z = ` the current `k`-th entry,
    /// applying `⋇̲^[j] z` to `y` and the entries up to `k` and `⋇̄^[j] z`
    /// to the entries after it.
    pub fn lifted_value(&self, y: usize, entries: &[(usize, usize)]) -> i64 {
        assert_eq!(entries.len(), self.arity);
        let x = &self.base;
        let (x1, i1) = entries[0];
        let mut acc = 0;
        for i in 0..i1 {
            let ys = self.xset.parallel_act(x, y, x1, i);
            let xs: Vec<usize> = entries.iter().map(|&(e, _)| x.parallel_op(e, x1, i as i64, Side::Over)).collect();
            acc = self.coefficients.add(acc, self.nested(ys, &xs, entries, 1));
        }
        acc
    }

    fn nested(&self, y: usize, xs: &[usize], entries: &[(usize, usize)], k: usize) -> i64 {
        if k == entries.len() {
            return self.value(y, xs);
        }
        let x = &self.base;
        let z = xs[k];
        let mut acc = 0;
        for j in 0..entries[k].1 {
            let yj = self.xset.parallel_act(x, y, z, j);
            let next: Vec<usize> = xs
                .iter()
                .enumerate()
                .map(|(q, &e)| x.parallel_op(e, z, j as i64, lift_side(q, k)))
                .collect();
            acc = self.coefficients.add(acc, self.nested(yj, &next, entries, k + 1));
        }
        acc
    }
}

fn tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..base.pow(len as u32)).map(move |mut i| {
        let mut v = vec![0; len];
        for x in v.iter_mut().rev() {
            *x = i % base;
            i /= base;
        }
        v
    })
}

/// Checks that `θ` vanishes when two adjacent arguments agree and that
/// `θ(Σᵢ (−1)ⁱ {⟨y⟩⟨x₁⟩⋯⟨x̂ᵢ⟩⋯ − ⟨y∗xᵢ⟩⟨x₁⋇̲xᵢ⟩⋯⟨x_{i−1}⋇̲xᵢ⟩⟨x_{i+1}⋇̄xᵢ⟩⋯}) = 0`
/// for all `y` and `x₁, …, x_{n+1}`.
pub fn verify_bq_cocycle(theta: &BQCocycle) -> Option<BqWitness> {
    let n = theta.arity;
    let x = &theta.base;
    let a = theta.coefficients;
    for y in 0..theta.xset.num_points() {
        for xs in tuples(x.size(), n) {
            let v = theta.value(y, &xs);
            if v != 0 && xs.windows(2).any(|w| w[0] == w[1]) {
                return Some(BqWitness { condition: "degeneracy".into(), y, xs, value: v });
            }
        }
    }
    for y in 0..theta.xset.num_points() {
        for xs in tuples(x.size(), n + 1) {
            let mut acc = 0;
            for i in 0..=n {
                let s = if i % 2 == 0 { -1 } else { 1 };
                let del: Vec<usize> = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &e)| e).collect();
                let act: Vec<usize> = xs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(k, &e)| if k < i { x.under(e, xs[i]) } else { x.over(e, xs[i]) })
                    .collect();
                let yi = theta.xset.act(y, xs[i]);
                acc = a.add(acc, a.scale(s, theta.value(y, &del) - theta.value(yi, &act)));
            }
            if acc != 0 {
                return Some(BqWitness { condition: "cocycle condition".into(), y, xs, value: acc });
            }
        }
    }
    None
}

/// The side acting on entry `q` in the sum for index `k`.
fn lift_side(q: usize, k: usize) -> Side {
    if k == 0 || q > k {
        Side::Over
    } else {
        Side::Under
    }
}

/// The first failing hypothesis sum, if any: for each `k`, the sum over a
/// full period of the substitutions of [`BQCocycle::lifted_value`] by `x_k`.
fn hypothesis_witness(theta: &BQCocycle, t: usize) -> Option<BqWitness> {
    let x = &theta.base;
    let a = theta.coefficients;
    for k in 0..theta.arity {
        for y in 0..theta.xset.num_points() {
            for xs in tuples(x.size(), theta.arity) {
                let mut acc = 0;
                for i in 0..t {
                    let yi = theta.xset.parallel_act(x, y, xs[k], i);
                    let moved: Vec<usize> = xs
                        .iter()
                        .enumerate()
                        .map(|(q, &e)| x.parallel_op(e, xs[k], i as i64, lift_side(q, k)))
                        .collect();
                    acc = a.add(acc, theta.value(yi, &moved));
                }
                if acc != 0 {
                    return Some(BqWitness { condition: format!("hypothesis sum {}", k + 1), y, xs, value: acc });
                }
            }
        }
    }
    None
}

/// Largest table size [`liftable_cocycles`] will solve for.
pub const MAX_SOLVE_COLUMNS: usize = 4096;

/// A basis over `ℤ_p` of the biquandle `n`-cocycles on `base` and `xset`
/// whose lifting hypotheses hold, so that each lifts with
/// [`lift_cocycle`]. `p` must be prime.
pub fn liftable_cocycles(base: &FinBiquandle, xset: &XSetAction, arity: usize, p: u64) -> Result<Vec<BQCocycle>> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::structural(format!("{p} is not prime")));
    }
    let nx = base.size();
    let cols = xset.num_points() * nx.pow(arity as u32);
    if cols > MAX_SOLVE_COLUMNS {
        return Err(Error::budget(format!("{cols} unknowns, above the cap of {MAX_SOLVE_COLUMNS}")));
    }
    let t = base.type_with_xset(xset)?;
    let idx = |y: usize, xs: &[usize]| xs.iter().fold(y, |acc, &e| acc * nx + e);
    let p = p as i64;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for y in 0..xset.num_points() {
        for xs in tuples(nx, arity) {
            if xs.windows(2).any(|w| w[0] == w[1]) {
                let mut r = vec![0; cols];
                r[idx(y, &xs)] = 1;
                rows.push(r);
            }
            for k in 0..arity {
                let mut r = vec![0; cols];
                for i in 0..t {
                    let moved: Vec<usize> =
                        xs.iter().enumerate().map(|(q, &e)| base.parallel_op(e, xs[k], i as i64, lift_side(q, k))).collect();
                    r[idx(xset.parallel_act(base, y, xs[k], i), &moved)] += 1;
                }
                rows.push(r);
            }
        }
        for xs in tuples(nx, arity + 1) {
            let mut r = vec![0; cols];
            for i in 0..=arity {
                let s = if i % 2 == 0 { 1 } else { -1 };
                let del: Vec<usize> = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &e)| e).collect();
                let act: Vec<usize> = xs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(k, &e)| if k < i { base.under(e, xs[i]) } else { base.over(e, xs[i]) })
                    .collect();
                r[idx(y, &del)] += s;
                r[idx(xset.act(y, xs[i]), &act)] -= s;
            }
            rows.push(r);
        }
    }
    nullspace_mod_p(rows, cols, p)
        .into_iter()
        .map(|v| BQCocycle::new(base.clone(), xset.clone(), arity, Coefficients::cyclic(p as u64), v))
        .collect()
}

/// Reduced row echelon form over `ℤ_p`, then one basis vector per free column.
fn nullspace_mod_p(mut m: Vec<Vec<i64>>, cols: usize, p: i64) -> Vec<Vec<i64>> {
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).expect("p is prime");
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v = v.rem_euclid(p);
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let s = inv(m[r][c]);
        for v in m[r].iter_mut() {
            *v = *v * s % p;
        }
        let pivot = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, &q) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * q).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (-m[i][free]).rem_euclid(p);
            }
            v
        })
        .collect()
}

/// A lifted cocycle with the complex it lives on.
#[derive(Clone, Debug)]
pub struct Lift {
    /// `type X_Y`.
    pub period: usize,
    /// `X × ℤ_period`; `(x, i)` has index `x·period + i`.
    pub mcb: AssocMcb,
    pub xset: XSetAction,
    pub cochain: TableCochain,
}

/// The lift `θ̃` of a verified biquandle cocycle to `X × ℤ_{type X_Y}`,
/// zero on every generator with a block of length two or more.
///
/// `θ` and every hypothesis sum are checked first.
pub fn lift_cocycle(theta: &BQCocycle) -> Result<Lift> {
    if let Some(w) = verify_bq_cocycle(theta) {
        return Err(Error::axiom(format!("not a biquandle cocycle: {w}")));
    }
    let t = theta.base.type_with_xset(&theta.xset)?;
    if let Some(w) = hypothesis_witness(theta, t) {
        return Err(Error::axiom(format!("lifting hypothesis: {w}")));
    }
    let (mcb, xset) = xset_from_parallel(&theta.base, &theta.xset)?;
    let cochain = TableCochain::from_simple(theta.arity, theta.coefficients, mcb.size(), xset.num_points(), |y, xs| {
        let entries: Vec<(usize, usize)> = xs.iter().map(|&e| (e / t, e % t)).collect();
        theta.lifted_value(y, &entries)
    });
    Ok(Lift { period: t, mcb, xset, cochain })
}

pub fn lift_2cocycle(theta: &BQCocycle) -> Result<Lift> {
    if theta.arity != 2 {
        return Err(Error::structural("expected a biquandle 2-cocycle"));
    }
    lift_cocycle(theta)
}

pub fn lift_3cocycle(theta: &BQCocycle) -> Result<Lift> {
    if theta.arity != 3 {
        return Err(Error::structural("expected a biquandle 3-cocycle"));
    }
    lift_cocycle(theta)
}
