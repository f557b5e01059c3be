use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

impl FinGroup {
    /// Builds a group from an explicit table, checking the group laws.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::structural("a group needs at least one element"));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::structural(format!(
                    "multiplication table row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::structural(format!("table entry {v} out of range 0..{n}")));
                }
                mult.push(v as u32);
            }
        }
        Self::from_flat(n, mult)
    }

    /// Builds a group from a row-major flat table, checking the group laws.
    pub(crate) fn from_flat(n: usize, mult: Vec<u32>) -> Result<Self> {
        debug_assert_eq!(mult.len(), n * n);
        let at = |a: usize, b: usize| mult[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::axiom("no two-sided identity element"))?;
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::axiom(format!("element {a} has no inverse")))?;
            inv[a] = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::axiom(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FinGroup { order: n, mult, inv, identity: identity as u32 })
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        FinGroup { order: 1, mult: vec![0], inv: vec![0], identity: 0 }
    }

    /// The cyclic group ℤ_n, element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let mult = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let inv = (0..n).map(|k| ((n - k) % n) as u32).collect();
        FinGroup { order: n, mult, inv, identity: 0 }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `h⁻¹ g h`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn is_central(&self, g: usize) -> bool {
        (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g))
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// A homomorphism between finite groups, stored by its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    image: Vec<u32>,
    target_order: usize,
}

impl GroupHom {
    /// Checks that `image` respects multiplication (hence the identity).
    pub fn new(source: &FinGroup, target: &FinGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() {
            return Err(Error::structural(format!(
                "homomorphism table has {} entries, source group has {}",
                image.len(),
                source.order()
            )));
        }
        if let Some(&v) = image.iter().find(|&&v| v >= target.order()) {
            return Err(Error::structural(format!("image {v} out of range")));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::axiom(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom {
            image: image.into_iter().map(|v| v as u32).collect(),
            target_order: target.order(),
        })
    }

    pub fn identity_map(g: &FinGroup) -> Self {
        GroupHom { image: (0..g.order() as u32).collect(), target_order: g.order() }
    }

    /// The homomorphism sending everything to the identity.
    pub fn trivial(source: &FinGroup, target: &FinGroup) -> Self {
        GroupHom { image: vec![target.identity() as u32; source.order()], target_order: target.order() }
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g] as usize
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Returns the first element whose image is not central in `target`.
    pub fn non_central_witness(&self, target: &FinGroup) -> Option<usize> {
        (0..self.image.len()).find(|&g| !target.is_central(self.apply(g)))
    }
}

/// `SL(2, ℤ_n)`, enumerated by filtering all `n⁴` matrices on determinant 1.
#[derive(Clone, Debug)]
pub struct Sl2 {
    modulus: u32,
    /// Entries `[a, b, c, d]` of `[[a, b], [c, d]]`, in lexicographic order.
    matrices: Vec<[u32; 4]>,
    group: FinGroup,
}

impl Sl2 {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let n = modulus;
        let mut matrices = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if (a * d + n * n - b * c) % n == 1 % n {
                            matrices.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let key = |m: &[u32; 4]| (((m[0] * n + m[1]) * n + m[2]) * n + m[3]) as usize;
        let mut index = vec![u32::MAX; (n as usize).pow(4)];
        for (i, m) in matrices.iter().enumerate() {
            index[key(m)] = i as u32;
        }
        let k = matrices.len();
        let mut mult = Vec::with_capacity(k * k);
        for x in &matrices {
            for y in &matrices {
                mult.push(index[key(&mat_mul(x, y, n))]);
            }
        }
        let group = FinGroup::from_flat(k, mult).expect("SL(2) tables form a group");
        Sl2 { modulus, matrices, group }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn matrix(&self, g: usize) -> [u32; 4] {
        self.matrices[g]
    }

    pub fn matrices(&self) -> &[[u32; 4]] {
        &self.matrices
    }

    pub fn index_of(&self, m: [u32; 4]) -> Option<usize> {
        self.matrices.iter().position(|x| *x == m)
    }
}

pub(crate) fn mat_mul(x: &[u32; 4], y: &[u32; 4], n: u32) -> [u32; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]) % n,
        (x[0] * y[1] + x[1] * y[3]) % n,
        (x[2] * y[0] + x[3] * y[2]) % n,
        (x[2] * y[1] + x[3] * y[3]) % n,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_z6_has_144_elements() {
        assert_eq!(Sl2::new(6).group().order(), 144);
        assert_eq!(Sl2::new(2).group().order(), 6);
    }

    #[test]
    fn cyclic_laws() {
        let g = FinGroup::cyclic(5);
        assert_eq!(g.mul(3, 4), 2);
        assert_eq!(g.inv(2), 3);
        assert_eq!(g.pow(2, -1), 3);
        assert!(FinGroup::from_table(&g.table()).is_ok());
    }

    #[test]
    fn broken_table_is_rejected() {
        let mut t = FinGroup::cyclic(3).table();
        t[1][1] = 1;
        assert!(matches!(FinGroup::from_table(&t), Err(Error::Axiom(_))));
        t[1].pop();
        assert!(matches!(FinGroup::from_table(&t), Err(Error::Structural(_))));
    }

    #[test]
    fn hom_checks_multiplication() {
        let z4 = FinGroup::cyclic(4);
        let z2 = FinGroup::cyclic(2);
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 1, 1]).is_err());
    }
}
