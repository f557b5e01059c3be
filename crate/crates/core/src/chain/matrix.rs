//! Exact integer linear algebra on sparse vectors.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer vector: `(coordinate, nonzero value)` pairs.
pub(crate) type Sparse<T> = Vec<(usize, T)>;

/// A sublattice of `ℤ^N` kept in row echelon form: every row has a distinct
/// pivot (its least nonzero coordinate) and rows span the lattice.
pub(crate) struct Lattice {
    rows: Vec<BTreeMap<usize, BigInt>>,
    by_pivot: HashMap<usize, usize>,
}

impl Lattice {
    pub fn new(rows: Vec<Sparse<BigInt>>) -> Self {
        let mut l = Lattice { rows: Vec::new(), by_pivot: HashMap::new() };
        for r in rows {
            l.insert(r);
        }
        l
    }

    pub fn insert(&mut self, v: Sparse<BigInt>) {
        let mut v: BTreeMap<usize, BigInt> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        while let Some((&c, vc)) = v.iter().next() {
            let Some(&ri) = self.by_pivot.get(&c) else {
                self.by_pivot.insert(c, self.rows.len());
                self.rows.push(v);
                return;
            };
            let vc = vc.clone();
            let rc = self.rows[ri][&c].clone();
            if vc.is_multiple_of(&rc) {
                let q = &vc / &rc;
                axpy(&mut v, &-q, &self.rows[ri]);
                continue;
            }
            // Replace the row by a gcd combination and keep reducing v.
            let e = vc.extended_gcd(&rc);
            let (s, t) = (e.y, e.x); // s·rc + t·vc = g
            let mut new_row = scaled(&self.rows[ri], &s);
            axpy(&mut new_row, &t, &v);
            let mut rest = scaled(&self.rows[ri], &(&vc / &e.gcd));
            axpy(&mut rest, &-(&rc / &e.gcd), &v);
            self.rows[ri] = new_row;
            v = rest;
        }
    }

    /// Whether `v` lies in the lattice.
    pub fn contains(&self, v: &Sparse<BigInt>) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows with their pivots, in insertion order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &BTreeMap<usize, BigInt>)> {
        self.rows.iter().map(|r| (*r.keys().next().expect("rows are nonzero"), r))
    }

    /// The canonical representative of `v` modulo the lattice: every
    /// coordinate at a pivot `p` is brought into `0..|r_p|`. Two vectors
    /// reduce to the same result iff their difference lies in the lattice.
    pub fn reduce(&self, v: &Sparse<BigInt>) -> BTreeMap<usize, BigInt> {
        let mut v: BTreeMap<usize, BigInt> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        let mut next = 0usize;
        while let Some((&c, vc)) = v.range(next..).next() {
            if let Some(&ri) = self.by_pivot.get(&c) {
                let rc = &self.rows[ri][&c];
                let q = vc.div_floor(&rc.abs()) * rc.signum();
                let row = &self.rows[ri];
                axpy(&mut v, &-q, row);
            }
            next = c + 1;
        }
        v
    }

    /// `v` as an integer combination of the rows, if it lies in the lattice.
    pub fn coordinates(&self, v: &Sparse<BigInt>) -> Option<Vec<BigInt>> {
        let mut v: BTreeMap<usize, BigInt> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        let mut coords = vec![BigInt::zero(); self.rows.len()];
        while let Some((&c, vc)) = v.iter().next() {
            let &ri = self.by_pivot.get(&c)?;
            let rc = &self.rows[ri][&c];
            if !vc.is_multiple_of(rc) {
                return None;
            }
            let q = vc / rc;
            axpy(&mut v, &-&q, &self.rows[ri]);
            coords[ri] += q;
        }
        Some(coords)
    }
}

fn axpy(v: &mut BTreeMap<usize, BigInt>, k: &BigInt, w: &BTreeMap<usize, BigInt>) {
    if k.is_zero() {
        return;
    }
    for (&i, x) in w {
        let e = v.entry(i).or_default();
        *e += k * x;
        if e.is_zero() {
            v.remove(&i);
        }
    }
}

fn scaled(w: &BTreeMap<usize, BigInt>, k: &BigInt) -> BTreeMap<usize, BigInt> {
    if k.is_zero() {
        return BTreeMap::new();
    }
    w.iter().map(|(&i, x)| (i, x * k)).collect()
}

/// The nonzero invariant factors (in divisibility order) of the matrix
/// with the given columns. Their count is the rank.
pub(crate) fn invariant_factors(cols: &[Sparse<i64>]) -> Vec<BigInt> {
    let big: Vec<Sparse<BigInt>> =
        cols.iter().map(|c| c.iter().map(|(i, x)| (*i, BigInt::from(*x))).collect()).collect();
    let (units, rest) = match unit_eliminate(cols.to_vec()) {
        Some((u, rest)) => (u, rest.into_iter().map(|c| c.into_iter().map(|(i, x)| (i, BigInt::from(x))).collect()).collect()),
        None => unit_eliminate(big).expect("big integers do not overflow"),
    };
    let mut diag = vec![BigInt::one(); units];
    diag.extend(diagonalize(dense(&rest)));
    normalize(diag)
}

/// Coefficients usable in the sparse elimination: `i64` with overflow
/// detection, or big integers.
pub(crate) trait Coef: Clone + PartialEq + Signed {
    fn mul_sub(&self, k: &Self, x: &Self) -> Option<Self>;
}

impl Coef for i64 {
    fn mul_sub(&self, k: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(k.checked_mul(*x)?)
    }
}

impl Coef for BigInt {
    fn mul_sub(&self, k: &Self, x: &Self) -> Option<Self> {
        Some(self - k * x)
    }
}

/// Column elimination on ±1 pivots. Returns how many unit pivots were used
/// and the remaining nonzero columns, or `None` on overflow.
fn unit_eliminate<T: Coef>(cols: Vec<Sparse<T>>) -> Option<(usize, Vec<Sparse<T>>)> {
    let mut m = SparseCols::new(cols);
    let mut units = 0;
    while let Some((c, r)) = m.next_unit_pivot() {
        m.pivot(c, r)?;
        m.kill_column(c);
        units += 1;
    }
    Some((units, m.alive_columns()))
}

/// Columns plus a row → columns index, for pivoting.
struct SparseCols<T> {
    cols: Vec<BTreeMap<usize, T>>,
    alive: Vec<bool>,
    rows: HashMap<usize, HashSet<usize>>,
    heap: BinaryHeap<Reverse<(usize, usize)>>,
}

impl<T: Coef> SparseCols<T> {
    fn new(cols: Vec<Sparse<T>>) -> Self {
        let cols: Vec<BTreeMap<usize, T>> =
            cols.into_iter().map(|c| c.into_iter().filter(|(_, x)| !x.is_zero()).collect()).collect();
        let mut rows: HashMap<usize, HashSet<usize>> = HashMap::new();
        for (j, c) in cols.iter().enumerate() {
            for &i in c.keys() {
                rows.entry(i).or_default().insert(j);
            }
        }
        let heap = cols.iter().enumerate().map(|(j, c)| Reverse((c.len(), j))).collect();
        SparseCols { alive: vec![true; cols.len()], cols, rows, heap }
    }

    /// The shortest column with a unit entry, and its sparsest unit row.
    fn next_unit_pivot(&mut self) -> Option<(usize, usize)> {
        while let Some(Reverse((len, c))) = self.heap.pop() {
            if !self.alive[c] || len != self.cols[c].len() {
                continue;
            }
            if len == 0 {
                self.alive[c] = false;
                continue;
            }
            let best = self.cols[c]
                .iter()
                .filter(|(_, x)| x.abs().is_one())
                .map(|(&r, _)| r)
                .min_by_key(|r| (self.rows[r].len(), *r));
            if let Some(r) = best {
                return Some((c, r));
            }
            // No unit now; revisited if the column changes.
        }
        None
    }

    /// Clears row `r` from every other column using column `c`, whose
    /// entry there is a unit.
    fn pivot(&mut self, c: usize, r: usize) -> Option<()> {
        let u = self.cols[c][&r].clone(); // ±1, so u⁻¹ = u
        let others: Vec<usize> = self.rows[&r].iter().copied().filter(|&j| j != c).collect();
        let pc = self.cols[c].clone();
        for j in others {
            let k = self.cols[j][&r].clone() * u.clone();
            for (&i, x) in &pc {
                let cur = self.cols[j].get(&i).cloned().unwrap_or_else(T::zero);
                let nv = cur.mul_sub(&k, x)?;
                if nv.is_zero() {
                    self.cols[j].remove(&i);
                    self.rows.get_mut(&i).map(|s| s.remove(&j));
                } else {
                    if cur.is_zero() {
                        self.rows.entry(i).or_default().insert(j);
                    }
                    self.cols[j].insert(i, nv);
                }
            }
            self.heap.push(Reverse((self.cols[j].len(), j)));
        }
        Some(())
    }

    fn kill_column(&mut self, c: usize) {
        self.alive[c] = false;
        for &i in self.cols[c].keys() {
            if let Some(s) = self.rows.get_mut(&i) {
                s.remove(&c);
            }
        }
    }

    fn alive_columns(self) -> Vec<Sparse<T>> {
        self.cols
            .into_iter()
            .zip(self.alive)
            .filter(|(c, a)| *a && !c.is_empty())
            .map(|(c, _)| c.into_iter().collect())
            .collect()
    }
}

fn dense(cols: &[Sparse<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<usize> = cols.iter().flat_map(|c| c.iter().map(|(i, _)| *i)).collect();
    rows.sort_unstable();
    rows.dedup();
    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let mut a = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            a[pos[i]][j] = x.clone();
        }
    }
    a
}

/// Diagonalises a dense matrix by unimodular row and column operations and
/// returns the nonzero diagonal entries (absolute values, any order).
pub(crate) fn diagonalize(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..nc {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
            // Bring the smallest remainder in row/column t to the pivot.
            let mut best = (t, t);
            for i in t + 1..nr {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rewrites diagonal entries as invariant factors `d₁ | d₂ | ⋯`.
pub(crate) fn normalize(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Rank over `𝔽_p` of the matrix with the given columns.
pub(crate) fn rank_mod_p(cols: &[Sparse<i64>], p: u64) -> usize {
    let p = p as i128;
    let md = |x: i128| x.rem_euclid(p);
    let inv = |x: i128| {
        // p is prime: x^(p−2).
        let (mut b, mut e, mut r) = (md(x), p - 2, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivots: HashMap<usize, BTreeMap<usize, i128>> = HashMap::new();
    for c in cols {
        let mut v: BTreeMap<usize, i128> =
            c.iter().map(|&(i, x)| (i, md(x as i128))).filter(|(_, x)| *x != 0).collect();
        while let Some((&r, &x)) = v.iter().next() {
            match pivots.get(&r) {
                Some(w) => {
                    // w is normalised with w[r] = 1.
                    for (&i, &y) in w {
                        let e = v.entry(i).or_insert(0);
                        *e = md(*e - x * y);
                        if *e == 0 {
                            v.remove(&i);
                        }
                    }
                }
                None => {
                    let k = inv(x);
                    let w = v.iter().map(|(&i, &y)| (i, y * k % p)).collect();
                    pivots.insert(r, w);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// A presentation of `ℤ^N / R` in which every relation was used to
/// eliminate one coordinate with a unit coefficient.
pub(crate) struct UnitQuotient {
    /// Surviving coordinates, which form a basis of the quotient.
    pub free: Vec<usize>,
    position: Vec<Option<usize>>,
    /// Eliminated coordinate ↦ its value in terms of free positions.
    expr: HashMap<usize, Sparse<i64>>,
}

impl UnitQuotient {
    /// `None` if some relation has no unit pivot (the quotient may then
    /// have torsion) or on overflow.
    pub fn new(n: usize, relations: Vec<Sparse<i64>>) -> Option<Self> {
        let mut m = SparseCols::new(relations);
        let mut order: Vec<(usize, BTreeMap<usize, i64>)> = Vec::new();
        while let Some((c, r)) = m.next_unit_pivot() {
            m.pivot(c, r)?;
            // g_r ≡ −u · (relation − u g_r).
            let u = m.cols[c][&r];
            let e: BTreeMap<usize, i64> =
                m.cols[c].iter().filter(|(&i, _)| i != r).map(|(&i, &x)| (i, -u * x)).collect();
            m.kill_column(c);
            order.push((r, e));
        }
        if !m.alive_columns().is_empty() {
            return None;
        }
        let eliminated: HashSet<usize> = order.iter().map(|(r, _)| *r).collect();
        let free: Vec<usize> = (0..n).filter(|i| !eliminated.contains(i)).collect();
        let mut position = vec![None; n];
        for (k, &i) in free.iter().enumerate() {
            position[i] = Some(k);
        }
        // Later eliminations only mention coordinates still free at that
        // time, so resolve from the last one back.
        let mut expr: HashMap<usize, Sparse<i64>> = HashMap::new();
        for (r, e) in order.into_iter().rev() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (i, x) in e {
                match position[i] {
                    Some(k) => add_checked(&mut acc, k, x)?,
                    None => {
                        for &(k, y) in &expr[&i] {
                            add_checked(&mut acc, k, x.checked_mul(y)?)?;
                        }
                    }
                }
            }
            expr.insert(r, acc.into_iter().collect());
        }
        Some(UnitQuotient { free, position, expr })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// The image of a vector of `ℤ^N` in the quotient basis.
    pub fn project(&self, v: &[(usize, i64)]) -> Option<Sparse<i64>> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, x) in v {
            match self.position[i] {
                Some(k) => add_checked(&mut acc, k, x)?,
                None => {
                    for &(k, y) in &self.expr[&i] {
                        add_checked(&mut acc, k, x.checked_mul(y)?)?;
                    }
                }
            }
        }
        Some(acc.into_iter().collect())
    }
}

fn add_checked(acc: &mut BTreeMap<usize, i64>, k: usize, x: i64) -> Option<()> {
    let e = acc.entry(k).or_insert(0);
    *e = e.checked_add(x)?;
    if *e == 0 {
        acc.remove(&k);
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        let d = normalize(diagonalize(big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = normalize(diagonalize(big(&[&[2, 0], &[0, 3]])));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn sparse_factors_match_dense() {
        let cols: Vec<Sparse<i64>> = vec![vec![(0, 2), (1, -6), (2, 10)], vec![(0, 4), (1, 6), (2, -4)], vec![(0, 4), (1, 12), (2, -16)]];
        let f = invariant_factors(&cols);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let unit: Vec<Sparse<i64>> = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (2, -1)]];
        assert_eq!(invariant_factors(&unit), vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::new(vec![vec![(0, BigInt::from(2)), (1, BigInt::from(1))], vec![(0, BigInt::from(4))]]);
        assert!(l.contains(&vec![(1, BigInt::from(2))]));
        assert!(!l.contains(&vec![(1, BigInt::from(1))]));
        assert!(!l.contains(&vec![(0, BigInt::from(1))]));
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn rank_over_fp() {
        let cols: Vec<Sparse<i64>> = vec![vec![(0, 2)], vec![(1, 3)], vec![(0, 4), (1, 6)]];
        assert_eq!(rank_mod_p(&cols, 2), 1);
        assert_eq!(rank_mod_p(&cols, 3), 1);
        assert_eq!(rank_mod_p(&cols, 5), 2);
    }

    #[test]
    fn unit_quotient_projects() {
        // ℤ³ / (e0 − e1, e1 + e2): basis {e2}, e1 ≡ −e2, e0 ≡ −e2.
        let q = UnitQuotient::new(3, vec![vec![(0, 1), (1, -1)], vec![(1, 1), (2, 1)]]).unwrap();
        assert_eq!(q.dim(), 1);
        let img = |i| q.project(&[(i, 1)]).unwrap();
        assert_eq!(img(0), img(1));
        assert_eq!(img(0).iter().map(|x| x.1).sum::<i64>() + img(2).iter().map(|x| x.1).sum::<i64>(), 0);
        assert!(UnitQuotient::new(1, vec![vec![(0, 2)]]).is_none());
    }
}
