//! Stable names for the built-in algebras, X-sets and cocycles.
//!
//! | name | object |
//! |------|--------|
//! | `trivial-group` | the single trivial group |
//! | `trivial:N` | `N` trivial groups with trivial operations |
//! | `dihedral:N` | `X × ℤ_t` from the parallel operations of the dihedral quandle `R_N` |
//! | `parallel:B` | the same construction for any built-in biquandle `B` |
//! | `conjugation:G` | conjugation MCB on `G` = `cyclic:N`, `dihedral:N`, `s3` or `sl2:N` |
//! | `alexander:sl2z6-det-example` | the Alexander family over `SL(2, ℤ₆)` on `ℤ₆²` |
//! | `alexander:sl2z2` | `SL(2, ℤ₂)` on `ℤ₂²`, trivial `φ` |
//! | `alexander:unipotent:P[:K]` | unipotent `ℤ_P` on `ℤ_P²`, `φ(t) = Kt` |
//!
//! Biquandles: `trivial:N`, `dihedral:N`, `alexander:N:T:S`.
//! X-sets: `trivial`, `self-under`, `self-over`, `index`.
//! Cocycles: `phi-det` (on `alexander:sl2z6-det-example`), `zero:N`.

use crate::algebra::{AlexanderFamily, FinBiquandle, FinGroup, GFamily, Sl2};
use crate::cocycle::{AlexanderCocycle, AlexanderKind, Cochain, Coefficients, MultilinearForm, TableCochain};
use crate::error::{Error, Result};
use crate::mcb::{AssocMcb, Mcb, TableMcb, XSetAction};

/// Either kind of MCB, chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyMcb {
    Table(TableMcb),
    Assoc(AssocMcb),
}

macro_rules! delegate {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            AnyMcb::Table($m) => $e,
            AnyMcb::Assoc($m) => $e,
        }
    };
}

impl Mcb for AnyMcb {
    fn size(&self) -> usize {
        delegate!(self, m => m.size())
    }
    fn num_groups(&self) -> usize {
        delegate!(self, m => m.num_groups())
    }
    #[inline]
    fn group_of(&self, a: usize) -> usize {
        delegate!(self, m => m.group_of(a))
    }
    fn group_members(&self, lambda: usize) -> &[u32] {
        delegate!(self, m => m.group_members(lambda))
    }
    fn identity(&self, lambda: usize) -> usize {
        delegate!(self, m => m.identity(lambda))
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        delegate!(self, m => m.mul(a, b))
    }
    #[inline]
    fn inv(&self, a: usize) -> usize {
        delegate!(self, m => m.inv(a))
    }
    #[inline]
    fn under(&self, a: usize, b: usize) -> usize {
        delegate!(self, m => m.under(a, b))
    }
    #[inline]
    fn over(&self, a: usize, b: usize) -> usize {
        delegate!(self, m => m.over(a, b))
    }
    #[inline]
    fn under_inv(&self, a: usize, b: usize) -> usize {
        delegate!(self, m => m.under_inv(a, b))
    }
    #[inline]
    fn over_inv(&self, a: usize, b: usize) -> usize {
        delegate!(self, m => m.over_inv(a, b))
    }
    fn family(&self) -> Option<&GFamily> {
        delegate!(self, m => m.family())
    }
    fn label(&self, a: usize) -> String {
        delegate!(self, m => m.label(a))
    }
}

fn number(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::structural(format!("{what}: expected a number, got {s:?}")))
}

fn positive(s: &str, what: &str) -> Result<usize> {
    match number(s, what)? {
        0 => Err(Error::structural(format!("{what} must be positive"))),
        n => Ok(n),
    }
}

/// The dihedral group of order `2n`: `r^k` at `k`, `s r^k` at `n + k`.
pub fn dihedral_group(n: usize) -> FinGroup {
    let elt = |refl: bool, k: usize| if refl { n + k } else { k };
    let table: Vec<Vec<usize>> = (0..2 * n)
        .map(|a| {
            let (sa, ka) = (a >= n, a % n);
            (0..2 * n)
                .map(|b| {
                    let (sb, kb) = (b >= n, b % n);
                    // r^i s = s r^{-i}
                    let k = if sb { (n + kb - ka) % n } else { (ka + kb) % n };
                    elt(sa != sb, k)
                })
                .collect()
        })
        .collect();
    FinGroup::from_table(&table).expect("dihedral table is a group")
}

fn group(name: &str) -> Result<FinGroup> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["s3"] => Ok(dihedral_group(3)),
        ["cyclic", n] => Ok(FinGroup::cyclic(positive(n, "cyclic order")?)),
        ["dihedral", n] => Ok(dihedral_group(positive(n, "dihedral degree")?)),
        ["sl2", n] => Ok(Sl2::new(positive(n, "modulus")? as u32).group().clone()),
        _ => Err(Error::structural(format!("unknown group {name:?}"))),
    }
}

/// A built-in biquandle by name.
pub fn biquandle(name: &str) -> Result<FinBiquandle> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["trivial", n] => Ok(FinBiquandle::trivial(positive(n, "size")?)),
        ["dihedral", n] => Ok(FinBiquandle::dihedral(positive(n, "size")?)),
        ["alexander", n, t, s] => {
            let n = positive(n, "modulus")?;
            let (t, s) = (number(t, "t")?, number(s, "s")?);
            let unit = |v: usize| (1..n.max(2)).any(|w| v * w % n == 1 % n);
            if !unit(t) || !unit(s) {
                return Err(Error::structural(format!("t = {t} and s = {s} must be units mod {n}")));
            }
            Ok(FinBiquandle::alexander(n, t, s))
        }
        _ => Err(Error::structural(format!("unknown biquandle {name:?}"))),
    }
}

/// A built-in MCB by name.
pub fn mcb(name: &str) -> Result<AnyMcb> {
    let parts: Vec<&str> = name.splitn(2, ':').collect();
    match parts.as_slice() {
        ["trivial-group"] => Ok(AnyMcb::Table(TableMcb::trivial_group())),
        ["trivial", n] => Ok(AnyMcb::Table(TableMcb::trivial_groups(positive(n, "number of groups")?))),
        ["dihedral", n] => mcb(&format!("parallel:dihedral:{n}")),
        ["parallel", b] => Ok(AnyMcb::Assoc(AssocMcb::new(GFamily::from_parallel(&biquandle(b)?)?))),
        ["conjugation", g] => Ok(AnyMcb::Table(TableMcb::conjugation(&group(g)?))),
        ["alexander", fam] => Ok(AnyMcb::Assoc(AssocMcb::new(alexander_family(fam)?.family))),
        _ => Err(Error::structural(format!("unknown algebra {name:?}"))),
    }
}

/// The Alexander family behind an `alexander:` name.
pub fn alexander_family(name: &str) -> Result<AlexanderFamily> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["sl2z6-det-example"] => Ok(AlexanderFamily::sl2z6_det_example()),
        ["sl2z2"] => Ok(AlexanderFamily::sl2z2()),
        ["unipotent", p] => unipotent(p, "1"),
        ["unipotent", p, k] => unipotent(p, k),
        _ => Err(Error::structural(format!("unknown Alexander family {name:?}"))),
    }
}

fn unipotent(p: &str, k: &str) -> Result<AlexanderFamily> {
    let p = positive(p, "modulus")?;
    if p < 2 || (2..p).any(|d| p % d == 0) {
        return Err(Error::structural(format!("unipotent families need a prime modulus, got {p}")));
    }
    Ok(AlexanderFamily::unipotent(p as u32, number(k, "φ multiplier")? as u32))
}

/// A built-in X-set of `m` by name.
pub fn xset<M: Mcb + ?Sized>(name: &str, m: &M) -> Result<XSetAction> {
    match name {
        "trivial" => Ok(XSetAction::trivial(m.size())),
        "self-under" => Ok(XSetAction::self_under(m)),
        "self-over" => Ok(XSetAction::self_over(m)),
        "index" => XSetAction::index_set(m),
        _ => Err(Error::structural(format!("unknown X-set {name:?}"))),
    }
}

/// `λ(g) = 2(a + d)(b − c)(1 − bc)` on `SL(2, ℤ₆)`.
pub fn det_example_lambda() -> Vec<i64> {
    Sl2::new(6)
        .matrices()
        .iter()
        .map(|&[a, b, c, d]| {
            let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
            2 * (a + d) * (b - c) * (1 - b * c)
        })
        .collect()
}

/// `Φ_det` over `ℤ₆` on the `SL(2, ℤ₆)` Alexander family, one-point X-set.
pub fn phi_det() -> AlexanderCocycle {
    let fam = AlexanderFamily::sl2z6_det_example();
    let f = MultilinearForm::det(fam.module, Coefficients::cyclic(6)).expect("ℤ₆² has rank 2");
    AlexanderCocycle::new(AlexanderKind::One, fam, f, det_example_lambda()).expect("Φ_det data are valid")
}

/// A built-in cochain for `m` and `ys` by name.
pub fn cochain<M: Mcb + ?Sized>(name: &str, m: &M, ys: &XSetAction) -> Result<Box<dyn Cochain>> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["phi-det"] => {
            let th = phi_det();
            if m.size() != th.mcb().size() || ys.num_points() != 1 {
                return Err(Error::structural(
                    "phi-det lives on alexander:sl2z6-det-example with the trivial X-set",
                ));
            }
            Ok(Box::new(th))
        }
        ["zero", n] => Ok(Box::new(TableCochain::zero(
            number(n, "degree")?,
            Coefficients::integers(),
            m.size(),
            ys.num_points(),
        ))),
        _ => Err(Error::structural(format!("unknown cocycle {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcb::verify_mcb;

    #[test]
    fn names_resolve() {
        for (name, size) in [
            ("trivial-group", 1),
            ("trivial:3", 3),
            ("dihedral:3", 6),
            ("parallel:alexander:4:1:3", 8),
            ("conjugation:s3", 6),
            ("conjugation:cyclic:4", 4),
            ("conjugation:dihedral:4", 8),
            ("conjugation:sl2:2", 6),
            ("alexander:sl2z2", 24),
            ("alexander:unipotent:3", 27),
            ("alexander:unipotent:3:2", 27),
        ] {
            let m = mcb(name).unwrap();
            assert_eq!(m.size(), size, "{name}");
            assert!(verify_mcb(&m).certified(), "{name}");
        }
        assert_eq!(mcb("alexander:sl2z6-det-example").unwrap().size(), 5184);
    }

    #[test]
    fn bad_names_are_structural() {
        for name in ["", "trivial", "trivial:0", "dihedral:x", "alexander:unipotent:4", "conjugation:q8", "foo:1"] {
            assert!(matches!(mcb(name), Err(Error::Structural(_))), "{name}");
        }
        assert!(biquandle("alexander:4:2:1").is_err());
        let m = mcb("trivial:2").unwrap();
        assert!(xset("left", &m).is_err());
        assert!(cochain("phi-det", &m, &XSetAction::trivial(2)).is_err());
    }

    #[test]
    fn dihedral_group_is_nonabelian_of_order_2n() {
        let g = dihedral_group(4);
        assert_eq!(g.order(), 8);
        assert!((0..8).any(|a| (0..8).any(|b| g.mul(a, b) != g.mul(b, a))));
        assert!(g.is_central(2));
    }

    #[test]
    fn xsets_act_on_the_carrier() {
        let m = mcb("conjugation:s3").unwrap();
        for name in ["trivial", "self-under", "self-over", "index"] {
            assert_eq!(xset(name, &m).unwrap().carrier_size(), 6);
        }
        assert_eq!(xset("index", &m).unwrap().num_points(), 1);
    }

    #[test]
    fn det_lambda_is_a_homomorphism() {
        let th = phi_det();
        assert_eq!(th.family().group().order(), 144);
        assert_eq!(det_example_lambda().len(), 144);
    }
}
