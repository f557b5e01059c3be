use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Mcb, XSetAction};
use crate::report::AxiomReport;

/// Instances of the group-indexed laws: `(x, a, b)` with `a, b` in one group.
type GroupInstance = (usize, usize, usize);

/// Checks every axiom of the self-contained MCB definition exhaustively.
///
/// Exchange-law witnesses are `[x, y, z]`; the others are `[x, a, b]` or
/// `[x, a]` with `a, b` in a common group.
pub fn verify_mcb<M: Mcb + ?Sized>(m: &M) -> AxiomReport {
    let n = m.size();
    let mut r = AxiomReport::new();
    for law in 0..3 {
        let w = (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    if !exchange_holds(m, law, x, y, z) {
                        return Some(vec![x, y, z]);
                    }
                }
            }
            None
        });
        r.push(EXCHANGE[law], w);
    }
    for law in 0..GROUP_LAWS.len() {
        let w = (0..n).into_par_iter().find_map_first(|x| {
            for l in 0..m.num_groups() {
                let mem = m.group_members(l);
                for &a in mem {
                    for &b in mem {
                        if !group_law_holds(m, law, (x, a as usize, b as usize)) {
                            return Some(vec![x, a as usize, b as usize]);
                        }
                    }
                }
            }
            None
        });
        r.push(GROUP_LAWS[law], w);
    }
    r
}

/// Checks every schema on `samples` random instances each.
///
/// The report is marked as sampled; it never certifies exhaustively.
pub fn verify_mcb_sampled<M: Mcb + ?Sized>(m: &M, samples: u64, seed: u64) -> AxiomReport {
    let n = m.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = AxiomReport::sampled(samples);
    for law in 0..3 {
        let mut w = None;
        for _ in 0..samples {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !exchange_holds(m, law, x, y, z) {
                w = Some(vec![x, y, z]);
                break;
            }
        }
        r.push(EXCHANGE[law], w);
    }
    for law in 0..GROUP_LAWS.len() {
        let mut w = None;
        for _ in 0..samples {
            let x = rng.gen_range(0..n);
            let mem = m.group_members(rng.gen_range(0..m.num_groups()));
            let a = mem[rng.gen_range(0..mem.len())] as usize;
            let b = mem[rng.gen_range(0..mem.len())] as usize;
            if !group_law_holds(m, law, (x, a, b)) {
                w = Some(vec![x, a, b]);
                break;
            }
        }
        r.push(GROUP_LAWS[law], w);
    }
    r
}

const EXCHANGE: [&str; 3] = ["exchange-under-under", "exchange-under-over", "exchange-over-over"];

const GROUP_LAWS: [&str; 7] = [
    "under-homomorphism",
    "over-homomorphism",
    "under-product",
    "over-product",
    "under-identity",
    "over-identity",
    "conjugation",
];

fn exchange_holds<M: Mcb + ?Sized>(m: &M, law: usize, x: usize, y: usize, z: usize) -> bool {
    let u = |a, b| m.under(a, b);
    let o = |a, b| m.over(a, b);
    match law {
        0 => u(u(x, y), u(z, y)) == u(u(x, z), o(y, z)),
        1 => o(u(x, y), u(z, y)) == u(o(x, z), o(y, z)),
        _ => o(o(x, y), o(z, y)) == o(o(x, z), u(y, z)),
    }
}

fn group_law_holds<M: Mcb + ?Sized>(m: &M, law: usize, (x, a, b): GroupInstance) -> bool {
    let hom = |op: &dyn Fn(usize, usize) -> usize| {
        let (ax, bx) = (op(a, x), op(b, x));
        m.same_group(ax, bx) && op(m.mul(a, b), x) == m.mul(ax, bx)
    };
    match law {
        0 => hom(&|p, q| m.under(p, q)),
        1 => hom(&|p, q| m.over(p, q)),
        2 => m.under(x, m.mul(a, b)) == m.under(m.under(x, a), m.over(b, a)),
        3 => m.over(x, m.mul(a, b)) == m.over(m.over(x, a), m.over(b, a)),
        4 => m.under(x, m.identity(m.group_of(a))) == x,
        5 => m.over(x, m.identity(m.group_of(a))) == x,
        _ => m.over(m.mul(m.inv(a), b), a) == m.under(m.mul(b, m.inv(a)), a),
    }
}

/// Checks both X-set axiom schemata exhaustively. Witnesses are `[y, a, b]`.
pub fn verify_xset<M: Mcb + ?Sized>(ys: &XSetAction, m: &M) -> AxiomReport {
    let mut r = AxiomReport::new();
    if ys.carrier_size() != m.size() {
        r.push("carrier-size", Some(vec![ys.carrier_size(), m.size()]));
        return r;
    }
    let np = ys.num_points();
    let n = m.size();
    r.push(
        "identity",
        (0..np).find_map(|y| {
            (0..m.num_groups()).find_map(|l| {
                let e = m.identity(l);
                (ys.act(y, e) != y).then(|| vec![y, e])
            })
        }),
    );
    r.push(
        "product",
        (0..np).into_par_iter().find_map_first(|y| {
            for l in 0..m.num_groups() {
                let mem = m.group_members(l);
                for &a in mem {
                    for &b in mem {
                        let (a, b) = (a as usize, b as usize);
                        if ys.act(y, m.mul(a, b)) != ys.act(ys.act(y, a), m.over(b, a)) {
                            return Some(vec![y, a, b]);
                        }
                    }
                }
            }
            None
        }),
    );
    r.push(
        "exchange",
        (0..np).into_par_iter().find_map_first(|y| {
            for a in 0..n {
                for b in 0..n {
                    if ys.act(ys.act(y, a), m.over(b, a)) != ys.act(ys.act(y, b), m.under(a, b)) {
                        return Some(vec![y, a, b]);
                    }
                }
            }
            None
        }),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FinBiquandle, FinGroup, GFamily};
    use crate::mcb::{xset_from_parallel, AssocMcb, TableMcb};

    fn dihedral_mcb() -> AssocMcb {
        AssocMcb::new(GFamily::from_parallel(&FinBiquandle::dihedral(3)).unwrap())
    }

    #[test]
    fn dihedral_family_gives_a_verified_mcb() {
        let m = dihedral_mcb();
        assert_eq!(m.size(), 6);
        assert!(verify_mcb(&m).certified());
        assert!(verify_mcb(&TableMcb::from_mcb(&m).unwrap()).certified());
    }

    #[test]
    fn single_trivial_group() {
        assert!(verify_mcb(&TableMcb::trivial_group()).certified());
        assert!(verify_mcb(&TableMcb::conjugation(&FinGroup::cyclic(3))).certified());
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let t = TableMcb::from_mcb(&dihedral_mcb()).unwrap().with_under_entry(0, 1, 5);
        let r = verify_mcb(&t);
        assert!(!r.certified());
        assert!(r.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn canonical_xsets_verify() {
        let m = dihedral_mcb();
        assert!(verify_xset(&XSetAction::trivial(6), &m).certified());
        assert!(verify_xset(&XSetAction::self_under(&m), &m).certified());
        assert!(verify_xset(&XSetAction::self_over(&m), &m).certified());
        assert!(verify_xset(&XSetAction::index_set(&m).unwrap(), &m).certified());
    }

    #[test]
    fn identities_map_to_identities() {
        let m = dihedral_mcb();
        for l in 0..m.num_groups() {
            for x in 0..m.size() {
                assert!(m.is_identity(m.under(m.identity(l), x)));
                assert!(m.is_identity(m.over(m.identity(l), x)));
            }
        }
    }

    #[test]
    fn parallel_xset_over_dihedral() {
        let x = FinBiquandle::dihedral(3);
        let base = XSetAction::biquandle_under(&x);
        assert_eq!(x.type_with_xset(&base).unwrap(), 2);
        let (m, ys) = xset_from_parallel(&x, &base).unwrap();
        assert!(verify_xset(&ys, &m).certified());
        for y in 0..3 {
            for a in 0..3 {
                assert_eq!(ys.act(y, m.join(a, 0)), y);
            }
        }
    }

    #[test]
    fn sampled_report_is_labelled() {
        let r = verify_mcb_sampled(&dihedral_mcb(), 1000, 7);
        assert_eq!(r.sampled, Some(1000));
        assert!(r.certified());
    }
}
