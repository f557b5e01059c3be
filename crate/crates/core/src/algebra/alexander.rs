use serde::{Deserialize, Serialize};

use super::gfamily::GFamily;
use super::group::{FinGroup, GroupHom, Sl2};
use crate::error::{Error, Result};

/// A point of `ℤ_n^k` with coordinates reduced mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZnPoint {
    pub modulus: u32,
    pub coords: Vec<u32>,
}

impl ZnPoint {
    pub fn new(modulus: u32, coords: impl IntoIterator<Item = i64>) -> Self {
        let m = modulus as i64;
        let coords = coords.into_iter().map(|c| c.rem_euclid(m) as u32).collect();
        ZnPoint { modulus, coords }
    }
}

/// The free module `ℤ_n^k`, points indexed by `Σ c_i n^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZnModule {
    pub modulus: u32,
    pub dim: usize,
}

impl ZnModule {
    pub fn new(modulus: u32, dim: usize) -> Self {
        assert!(modulus >= 1 && dim >= 1);
        ZnModule { modulus, dim }
    }

    pub fn size(&self) -> usize {
        (self.modulus as usize).pow(self.dim as u32)
    }

    pub fn decode(&self, mut idx: usize) -> ZnPoint {
        let n = self.modulus as usize;
        let coords = (0..self.dim)
            .map(|_| {
                let c = idx % n;
                idx /= n;
                c as u32
            })
            .collect();
        ZnPoint { modulus: self.modulus, coords }
    }

    pub fn encode(&self, p: &ZnPoint) -> usize {
        debug_assert_eq!(p.coords.len(), self.dim);
        p.coords.iter().rev().fold(0, |acc, &c| acc * self.modulus as usize + c as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.zip(a, b, |x, y| x + y)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.zip(a, b, |x, y| x + self.modulus - y)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    fn zip(&self, a: usize, b: usize, f: impl Fn(u32, u32) -> u32) -> usize {
        let (pa, pb) = (self.decode(a), self.decode(b));
        let coords = pa.coords.iter().zip(&pb.coords).map(|(&x, &y)| f(x, y) % self.modulus).collect();
        self.encode(&ZnPoint { modulus: self.modulus, coords })
    }

    /// Row vector times a `dim × dim` row-major matrix.
    pub fn act(&self, a: usize, m: &[u32]) -> usize {
        let p = self.decode(a);
        let k = self.dim;
        let n = self.modulus as u64;
        let coords = (0..k)
            .map(|j| ((0..k).map(|i| p.coords[i] as u64 * m[i * k + j] as u64).sum::<u64>() % n) as u32)
            .collect();
        self.encode(&ZnPoint { modulus: self.modulus, coords })
    }
}

/// A `G`-family of Alexander biquandles on a module `ℤ_n^k` together with
/// the data it was built from.
#[derive(Clone, Debug)]
pub struct AlexanderFamily {
    pub module: ZnModule,
    /// Right action: one `k × k` row-major matrix per element of `G`.
    pub matrices: Vec<Vec<u32>>,
    pub phi: GroupHom,
    pub family: GFamily,
}

impl AlexanderFamily {
    pub fn group(&self) -> &FinGroup {
        self.family.group()
    }

    /// `x · g` in the module.
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.module.act(x, &self.matrices[g])
    }

    /// `x (1 − φ(g) g⁻¹)`.
    pub fn one_minus_phi_ginv(&self, x: usize, g: usize) -> usize {
        let gr = self.group();
        let t = gr.mul(self.phi.apply(g), gr.inv(g));
        self.module.sub(x, self.act(x, t))
    }

    /// `x (1 − φ(g)⁻¹ g)`.
    pub fn one_minus_phiinv_g(&self, x: usize, g: usize) -> usize {
        let gr = self.group();
        let t = gr.mul(gr.inv(self.phi.apply(g)), g);
        self.module.sub(x, self.act(x, t))
    }

    /// The family on `X = ℤ₆²` over `G = SL(2, ℤ₆)` with
    /// `φ(g) = (−1)^{(a+b+c+1)(b+c+d+1)} I`.
    pub fn sl2z6_det_example() -> Self {
        let sl = Sl2::new(6);
        let minus_i = sl.index_of([5, 0, 0, 5]).expect("−I lies in SL(2, ℤ₆)");
        let id = sl.group().identity();
        let phi: Vec<usize> = sl
            .matrices()
            .iter()
            .map(|&[a, b, c, d]| if ((a + b + c + 1) * (b + c + d + 1)) % 2 == 1 { minus_i } else { id })
            .collect();
        Self::from_sl2(&sl, phi).expect("the ℤ₆ example is a valid Alexander family")
    }

    /// `SL(2, ℤ_2)` acting on `ℤ₂²` with trivial `φ` (carrier 24).
    pub fn sl2z2() -> Self {
        let sl = Sl2::new(2);
        let phi = vec![sl.group().identity(); sl.group().order()];
        Self::from_sl2(&sl, phi).expect("SL(2, ℤ₂) family is valid")
    }

    /// The unipotent group `{[[1, t], [0, 1]]} ≅ ℤ_p` acting on `ℤ_p²`,
    /// with `φ(t) = phi_mult · t`.
    pub fn unipotent(p: u32, phi_mult: u32) -> Self {
        let g = FinGroup::cyclic(p as usize);
        let phi = GroupHom::new(&g, &g, (0..p).map(|t| ((t * phi_mult) % p) as usize).collect())
            .expect("multiplication by a scalar is a homomorphism of ℤ_p");
        let matrices = (0..p).map(|t| vec![1 % p, t, 0, 1 % p]).collect();
        make_alexander_gfamily(g, phi, ZnModule::new(p, 2), matrices).expect("unipotent family is valid")
    }

    fn from_sl2(sl: &Sl2, phi: Vec<usize>) -> Result<Self> {
        let g = sl.group().clone();
        let phi = GroupHom::new(&g, &g, phi)?;
        let matrices = sl.matrices().iter().map(|m| m.to_vec()).collect();
        make_alexander_gfamily(g, phi, ZnModule::new(sl.modulus(), 2), matrices)
    }
}

/// `x ⋇̲^g y = xg + y(φ(g) − g)`, `x ⋇̄^g y = xφ(g)`.
///
/// Checks that `φ` is central and that the matrices form a right action.
pub fn make_alexander_gfamily(
    group: FinGroup,
    phi: GroupHom,
    module: ZnModule,
    matrices: Vec<Vec<u32>>,
) -> Result<AlexanderFamily> {
    let ng = group.order();
    let k = module.dim;
    if matrices.len() != ng || matrices.iter().any(|m| m.len() != k * k) {
        return Err(Error::structural(format!("need {ng} matrices of size {k}x{k}")));
    }
    if phi.target_order() != ng {
        return Err(Error::structural("φ must map G to itself"));
    }
    if let Some(g) = phi.non_central_witness(&group) {
        return Err(Error::axiom(format!("φ({g}) is not central")));
    }
    let n = module.modulus;
    let matrices: Vec<Vec<u32>> = matrices.into_iter().map(|m| m.into_iter().map(|v| v % n).collect()).collect();
    let identity: Vec<u32> = (0..k * k).map(|i| if i / k == i % k { 1 % n } else { 0 }).collect();
    if matrices[group.identity()] != identity {
        return Err(Error::axiom("the identity of G does not act trivially"));
    }
    for g in 0..ng {
        for h in 0..ng {
            if matrices[group.mul(g, h)] != mat_mul(&matrices[g], &matrices[h], k, n) {
                return Err(Error::axiom(format!("action is not a right action at ({g}, {h})")));
            }
        }
    }
    let nx = module.size();
    let act: Vec<Vec<u32>> = (0..ng).map(|g| (0..nx).map(|x| module.act(x, &matrices[g]) as u32).collect()).collect();
    let family = GFamily::from_fn(
        group,
        nx,
        |g, x, y| {
            let pg = phi.apply(g);
            let yg = act[g][y] as usize;
            let t = module.add(act[g][x] as usize, act[pg][y] as usize);
            module.sub(t, yg)
        },
        |g, x, _| act[phi.apply(g)][x] as usize,
    )?;
    Ok(AlexanderFamily { module, matrices, phi, family })
}

/// `x ⋇̲^g y = (xy⁻¹)^g y^{φ(g)}`, `x ⋇̄^g y = x^{φ(g)}`.
///
/// `action[g][x]` is `x^g`; it must be a right action by automorphisms.
pub fn make_generalized_alexander_gfamily(
    x: &FinGroup,
    group: FinGroup,
    action: &[Vec<usize>],
    phi: &GroupHom,
) -> Result<GFamily> {
    let (nx, ng) = (x.order(), group.order());
    if action.len() != ng || action.iter().any(|r| r.len() != nx || r.iter().any(|&v| v >= nx)) {
        return Err(Error::structural(format!("action table must be {ng} rows of {nx} entries in range")));
    }
    if let Some(g) = phi.non_central_witness(&group) {
        return Err(Error::axiom(format!("φ({g}) is not central")));
    }
    for g in 0..ng {
        for a in 0..nx {
            for b in 0..nx {
                if action[g][x.mul(a, b)] != x.mul(action[g][a], action[g][b]) {
                    return Err(Error::axiom(format!("element {g} does not act by a homomorphism")));
                }
            }
        }
        for h in 0..ng {
            let gh = group.mul(g, h);
            if (0..nx).any(|a| action[gh][a] != action[h][action[g][a]]) {
                return Err(Error::axiom(format!("not a right action at ({g}, {h})")));
            }
        }
    }
    if (0..nx).any(|a| action[group.identity()][a] != a) {
        return Err(Error::axiom("the identity of G does not act trivially"));
    }
    GFamily::from_fn(
        group,
        nx,
        |g, a, b| x.mul(action[g][x.mul(a, x.inv(b))], action[phi.apply(g)][b]),
        |g, a, _| action[phi.apply(g)][a],
    )
}

fn mat_mul(a: &[u32], b: &[u32], k: usize, n: u32) -> Vec<u32> {
    let mut out = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            let s: u64 = (0..k).map(|l| a[i * k + l] as u64 * b[l * k + j] as u64).sum();
            out[i * k + j] = (s % n as u64) as u32;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_acting_on_z3_by_negation() {
        let g = FinGroup::cyclic(2);
        let phi = GroupHom::trivial(&g, &g);
        let f = make_alexander_gfamily(g, phi, ZnModule::new(3, 1), vec![vec![1], vec![2]]).unwrap();
        assert!(f.family.verify().certified());
        for x in 0..3 {
            for y in 0..3 {
                // g = 1 acts by −1, φ trivial: x ⋇̲ y = −x + 2y.
                assert_eq!(f.family.under(1, x, y), (6 - x + 2 * y) % 3);
                assert_eq!(f.family.over(1, x, y), x);
            }
        }
    }

    #[test]
    fn generalized_alexander_on_z3() {
        let x = FinGroup::cyclic(3);
        let g = FinGroup::cyclic(2);
        let phi = GroupHom::trivial(&g, &g);
        let action = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let f = make_generalized_alexander_gfamily(&x, g, &action, &phi).unwrap();
        assert!(f.verify().certified());
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(f.under(0, a, b), a);
            }
            assert_eq!(f.under(1, a, a), f.over(1, a, a));
        }
    }

    #[test]
    fn non_central_phi_is_rejected() {
        let sl = Sl2::new(2);
        let g = sl.group().clone();
        let phi = GroupHom::identity_map(&g);
        let m = sl.matrices().iter().map(|m| m.to_vec()).collect();
        assert!(matches!(make_alexander_gfamily(g, phi, ZnModule::new(2, 2), m), Err(Error::Axiom(_))));
    }

    #[test]
    fn module_coordinates_round_trip() {
        let m = ZnModule::new(6, 2);
        for i in 0..36 {
            assert_eq!(m.encode(&m.decode(i)), i);
        }
        let p = ZnPoint::new(6, [-1, 7]);
        assert_eq!(p.coords, vec![5, 1]);
    }
}
