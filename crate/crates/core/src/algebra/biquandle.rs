use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcb::XSetAction;
use crate::report::AxiomReport;

/// Largest table (in entries) a constructor accepts.
pub const MAX_TABLE_ENTRIES: usize = 1_000_000;

/// Which of the two biquandle operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `⋇̲`, the operation applied to an under-arc.
    Under,
    /// `⋇̄`, the operation applied to an over-arc.
    Over,
}

/// A finite biquandle given by its two operation tables on `0..n`.
///
/// Entry `[a][b]` of the under (over) table is `a ⋇̲ b` (`a ⋇̄ b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinBiquandle {
    n: usize,
    under: Vec<u32>,
    over: Vec<u32>,
    under_inv: Option<Vec<u32>>,
    over_inv: Option<Vec<u32>>,
    /// Inverse of `x ↦ x ⋇̲ x`.
    sqrt: Option<Vec<u32>>,
}

/// Serialized form `{"elements": N, "under": [[..]], "over": [[..]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiquandleTables {
    pub elements: usize,
    pub under: Vec<Vec<usize>>,
    pub over: Vec<Vec<usize>>,
}

impl FinBiquandle {
    /// Checks table shape only; axioms are left to [`FinBiquandle::verify`].
    pub fn new(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<Self> {
        let n = under.len();
        if n == 0 {
            return Err(Error::structural("a biquandle needs at least one element"));
        }
        if n * n > MAX_TABLE_ENTRIES {
            return Err(Error::budget(format!("{n}x{n} tables exceed {MAX_TABLE_ENTRIES} entries")));
        }
        let under = flatten(under, n, "under")?;
        let over = flatten(over, n, "over")?;
        Ok(Self::from_flat(n, under, over))
    }

    pub(crate) fn from_flat(n: usize, under: Vec<u32>, over: Vec<u32>) -> Self {
        let under_inv = column_inverse(n, &under);
        let over_inv = column_inverse(n, &over);
        let diag: Vec<u32> = (0..n).map(|x| under[x * n + x]).collect();
        let sqrt = permutation_inverse(&diag);
        FinBiquandle { n, under, over, under_inv, over_inv, sqrt }
    }

    pub fn from_fn(n: usize, under: impl Fn(usize, usize) -> usize, over: impl Fn(usize, usize) -> usize) -> Self {
        let mut u = Vec::with_capacity(n * n);
        let mut o = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                u.push(under(a, b) as u32);
                o.push(over(a, b) as u32);
            }
        }
        Self::from_flat(n, u, o)
    }

    pub fn from_tables(t: &BiquandleTables) -> Result<Self> {
        if t.under.len() != t.elements {
            return Err(Error::structural(format!(
                "declared {} elements but under table has {} rows",
                t.elements,
                t.under.len()
            )));
        }
        Self::new(&t.under, &t.over)
    }

    pub fn to_tables(&self) -> BiquandleTables {
        let rows = |t: &[u32]| -> Vec<Vec<usize>> {
            t.chunks(self.n).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
        };
        BiquandleTables { elements: self.n, under: rows(&self.under), over: rows(&self.over) }
    }

    /// `x ⋇̲ y = x`, `x ⋇̄ y = x`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |a, _| a, |a, _| a)
    }

    /// `x ⋇̲ y = 2y − x`, `x ⋇̄ y = x` over `ℤ_n`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(n, |a, b| (2 * b + n - a) % n, |a, _| a)
    }

    /// `x ⋇̲ y = tx + (s − t)y`, `x ⋇̄ y = sx` over `ℤ_n`; `t`, `s` must be units.
    pub fn alexander(n: usize, t: usize, s: usize) -> Self {
        let (t, s) = (t % n, s % n);
        Self::from_fn(n, |a, b| (t * a + (s + n - t) * b) % n, |a, _| (s * a) % n)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn under(&self, a: usize, b: usize) -> usize {
        self.under[a * self.n + b] as usize
    }

    #[inline]
    pub fn over(&self, a: usize, b: usize) -> usize {
        self.over[a * self.n + b] as usize
    }

    #[inline]
    pub fn op(&self, side: Side, a: usize, b: usize) -> usize {
        match side {
            Side::Under => self.under(a, b),
            Side::Over => self.over(a, b),
        }
    }

    /// The unique `x` with `x ⋇̲ b = a`. Panics if the column is not bijective.
    pub fn under_inv(&self, a: usize, b: usize) -> usize {
        self.under_inv.as_ref().expect("under columns are not bijective")[b * self.n + a] as usize
    }

    /// The unique `x` with `x ⋇̄ b = a`. Panics if the column is not bijective.
    pub fn over_inv(&self, a: usize, b: usize) -> usize {
        self.over_inv.as_ref().expect("over columns are not bijective")[b * self.n + a] as usize
    }

    /// Checks B1, B2 and B3 exhaustively.
    pub fn verify(&self) -> AxiomReport {
        let n = self.n;
        let mut r = AxiomReport::new();
        r.push("B1", (0..n).find(|&x| self.under(x, x) != self.over(x, x)).map(|x| vec![x]));
        r.push("B2-under-columns", non_bijective_column(n, &self.under));
        r.push("B2-over-columns", non_bijective_column(n, &self.over));
        let mut seen = vec![false; n * n];
        let mut s_witness = None;
        'outer: for x in 0..n {
            for y in 0..n {
                let img = self.over(y, x) * n + self.under(x, y);
                if seen[img] {
                    s_witness = Some(vec![x, y]);
                    break 'outer;
                }
                seen[img] = true;
            }
        }
        r.push("B2-S-bijective", s_witness);
        let (u, o) = (|a, b| self.under(a, b), |a, b| self.over(a, b));
        r.push("B3-under-under", find_triple(n, |x, y, z| u(u(x, y), u(z, y)) == u(u(x, z), o(y, z))));
        r.push("B3-under-over", find_triple(n, |x, y, z| o(u(x, y), u(z, y)) == u(o(x, z), o(y, z))));
        r.push("B3-over-over", find_triple(n, |x, y, z| o(o(x, y), o(z, y)) == o(o(x, z), u(y, z))));
        r
    }

    /// `a ⋇̲^[n] b` or `a ⋇̄^[n] b` for any integer `n`.
    ///
    /// Negative `n` needs a certified biquandle (bijective columns and
    /// squaring map).
    pub fn parallel_op(&self, a: usize, b: usize, n: i64, side: Side) -> usize {
        let mut a = a;
        let mut d = b;
        if n >= 0 {
            for _ in 0..n {
                a = self.op(side, a, d);
                d = self.under(d, d);
            }
        } else {
            let sqrt = self.sqrt.as_ref().expect("x ↦ x ⋇̲ x is not bijective");
            for _ in 0..n.unsigned_abs() {
                d = sqrt[d] as usize;
                a = match side {
                    Side::Under => self.under_inv(a, d),
                    Side::Over => self.over_inv(a, d),
                };
            }
        }
        a
    }

    /// Tables of `⋇̲^[k]` and `⋇̄^[k]` for `k = 0..count`, flat `[k][a][b]`.
    pub fn parallel_tables(&self, count: usize) -> (Vec<u32>, Vec<u32>) {
        let n = self.n;
        let mut u = Vec::with_capacity(count * n * n);
        let mut o = Vec::with_capacity(count * n * n);
        let mut cur_u: Vec<u32> = (0..n * n).map(|i| (i / n) as u32).collect();
        let mut cur_o = cur_u.clone();
        let mut d: Vec<usize> = (0..n).collect();
        for _ in 0..count {
            u.extend_from_slice(&cur_u);
            o.extend_from_slice(&cur_o);
            for a in 0..n {
                for b in 0..n {
                    let i = a * n + b;
                    cur_u[i] = self.under(cur_u[i] as usize, d[b]) as u32;
                    cur_o[i] = self.over(cur_o[i] as usize, d[b]) as u32;
                }
            }
            for x in d.iter_mut() {
                *x = self.under(*x, *x);
            }
        }
        (u, o)
    }

    /// The least `n > 0` with `a ⋇̲^[n] b = a = a ⋇̄^[n] b` for all `a, b`.
    pub fn biquandle_type(&self) -> Result<usize> {
        self.type_scan(None)
    }

    /// The least `n > 0` that also fixes `y ∗^[n] a = y` for every point of `ys`.
    pub fn type_with_xset(&self, ys: &XSetAction) -> Result<usize> {
        if ys.carrier_size() != self.n {
            return Err(Error::structural(format!(
                "X-set acts on {} elements, biquandle has {}",
                ys.carrier_size(),
                self.n
            )));
        }
        self.type_scan(Some(ys))
    }

    fn type_scan(&self, ys: Option<&XSetAction>) -> Result<usize> {
        const MAX_STEPS: usize = 1 << 20;
        let n = self.n;
        let mut cur_u: Vec<u32> = (0..n * n).map(|i| (i / n) as u32).collect();
        let mut cur_o = cur_u.clone();
        let np = ys.map_or(0, |y| y.num_points());
        let mut cur_y: Vec<u32> = (0..np * n).map(|i| (i / n) as u32).collect();
        let mut d: Vec<usize> = (0..n).collect();
        for step in 1..=MAX_STEPS {
            for i in 0..n * n {
                let b = i % n;
                cur_u[i] = self.under(cur_u[i] as usize, d[b]) as u32;
                cur_o[i] = self.over(cur_o[i] as usize, d[b]) as u32;
            }
            if let Some(ys) = ys {
                for i in 0..np * n {
                    cur_y[i] = ys.act(cur_y[i] as usize, d[i % n]) as u32;
                }
            }
            for x in d.iter_mut() {
                *x = self.under(*x, *x);
            }
            let fixed = |t: &[u32]| t.iter().enumerate().all(|(i, &v)| v as usize == i / n);
            if fixed(&cur_u) && fixed(&cur_o) && fixed(&cur_y) {
                return Ok(step);
            }
        }
        Err(Error::budget(format!("no type found within {MAX_STEPS} steps")))
    }
}

fn flatten(t: &[Vec<usize>], n: usize, name: &str) -> Result<Vec<u32>> {
    if t.len() != n {
        return Err(Error::structural(format!("{name} table has {} rows, expected {n}", t.len())));
    }
    let mut out = Vec::with_capacity(n * n);
    for (i, row) in t.iter().enumerate() {
        if row.len() != n {
            return Err(Error::structural(format!(
                "{name} table row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        for &v in row {
            if v >= n {
                return Err(Error::structural(format!("{name} table entry {v} out of range 0..{n}")));
            }
            out.push(v as u32);
        }
    }
    Ok(out)
}

/// For a flat `[a][b]` table, returns `inv[b][c]` = the `a` with `a·b = c`.
pub(crate) fn column_inverse(n: usize, t: &[u32]) -> Option<Vec<u32>> {
    let mut inv = vec![u32::MAX; n * n];
    for a in 0..n {
        for b in 0..n {
            let slot = &mut inv[b * n + t[a * n + b] as usize];
            if *slot != u32::MAX {
                return None;
            }
            *slot = a as u32;
        }
    }
    Some(inv)
}

pub(crate) fn permutation_inverse(p: &[u32]) -> Option<Vec<u32>> {
    let mut inv = vec![u32::MAX; p.len()];
    for (i, &v) in p.iter().enumerate() {
        if inv[v as usize] != u32::MAX {
            return None;
        }
        inv[v as usize] = i as u32;
    }
    Some(inv)
}

/// Witness `[b, a1, a2]`: column `b` sends `a1` and `a2` to the same place.
fn non_bijective_column(n: usize, t: &[u32]) -> Option<Vec<usize>> {
    for b in 0..n {
        let mut first = vec![usize::MAX; n];
        for a in 0..n {
            let v = t[a * n + b] as usize;
            if first[v] != usize::MAX {
                return Some(vec![b, first[v], a]);
            }
            first[v] = a;
        }
    }
    None
}

fn find_triple(n: usize, holds: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !holds(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_z3_is_a_biquandle_of_type_2() {
        let x = FinBiquandle::dihedral(3);
        assert!(x.verify().certified());
        assert_eq!(x.parallel_op(0, 1, 2, Side::Under), 0);
        assert_eq!(x.biquandle_type().unwrap(), 2);
    }

    #[test]
    fn negative_parallel_inverts_positive() {
        let x = FinBiquandle::alexander(5, 2, 3);
        assert!(x.verify().certified());
        for a in 0..5 {
            for b in 0..5 {
                for side in [Side::Under, Side::Over] {
                    let p = x.parallel_op(a, b, 1, side);
                    let d = x.parallel_op(b, b, 1, Side::Under);
                    assert_eq!(x.parallel_op(p, d, -1, side), a);
                }
            }
        }
    }

    #[test]
    fn broken_column_reports_b2() {
        let mut t = FinBiquandle::trivial(3).to_tables();
        t.under[0][1] = 1;
        let r = FinBiquandle::from_tables(&t).unwrap().verify();
        assert!(!r.check("B2-under-columns").unwrap().passed);
    }

    #[test]
    fn ragged_table_is_structural() {
        let err = FinBiquandle::new(&[vec![0, 1], vec![1]], &[vec![0, 0], vec![1, 1]]);
        assert!(matches!(err, Err(Error::Structural(_))));
    }
}
