use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{AlexanderFamily, FinGroup};
use crate::chain::HomologyOptions;
use crate::cocycle::{AlexanderCocycle, AlexanderKind, MultilinearForm, TableCochain};
use crate::coloring::{count_colorings, enumerate_colorings};
use crate::mcb::{AssocMcb, TableMcb};

fn fixture(name: &str) -> Diagram {
    let text = match name {
        "5_2" => include_str!("../../../../fixtures/5_2.json"),
        "5_2_r1r2" => include_str!("../../../../fixtures/5_2_r1r2.json"),
        "circle" => include_str!("../../../../fixtures/circle.json"),
        "kink" => include_str!("../../../../fixtures/kink.json"),
        "theta" => include_str!("../../../../fixtures/theta.json"),
        "theta_kink" => include_str!("../../../../fixtures/theta_kink.json"),
        "hopf" => include_str!("../../../../fixtures/hopf.json"),
        _ => unreachable!(),
    };
    Diagram::parse(text).unwrap()
}

fn unipotent(kind: AlexanderKind) -> AlexanderCocycle {
    let fam = AlexanderFamily::unipotent(3, 1);
    let a = Coefficients::cyclic(3);
    let f = match kind {
        AlexanderKind::One => MultilinearForm::det(fam.module, a).unwrap(),
        _ => MultilinearForm::from_fn(fam.module, 3, a, |v| {
            (v[0][0] as i64 * v[1][1] as i64 - v[0][1] as i64 * v[1][0] as i64) * v[2][0] as i64
        }),
    };
    AlexanderCocycle::new(kind, fam, f, vec![0, 1, 2]).unwrap()
}

fn random_cochain(degree: usize, m: &impl Mcb, points: usize, seed: u64) -> TableCochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table: Vec<i64> = (0..points * m.size().pow(degree as u32)).map(|_| rng.gen_range(0..3)).collect();
    TableCochain::from_simple(degree, Coefficients::cyclic(3), m.size(), points, |y, xs| {
        table[xs.iter().fold(y, |acc, &x| acc * m.size() + x)]
    })
}

fn s3() -> FinGroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| perms.iter().map(|q| idx([q[p[0]], q[p[1]], q[p[2]]])).collect())
        .collect();
    FinGroup::from_table(&table).unwrap()
}

/// `θ + δη` for a 1-cochain `η`.
struct Shifted<'a, M: Mcb> {
    theta: &'a dyn Cochain,
    eta: &'a TableCochain,
    complex: &'a Complex<'a, M>,
}

impl<M: Mcb> Cochain for Shifted<'_, M> {
    fn degree(&self) -> usize {
        2
    }

    fn coefficients(&self) -> Coefficients {
        self.theta.coefficients()
    }

    fn eval(&self, y: u32, blocks: &[&[u32]]) -> i64 {
        let a = self.coefficients();
        let g = PrismGen::new(y, blocks.iter().map(|b| b.to_vec()).collect());
        let mut acc = self.theta.eval(y, blocks);
        self.complex.boundary_terms(&g, |s, h| acc = a.add(acc, a.scale(s, self.eta.eval_gen(&h))));
        acc
    }
}

#[test]
fn circle_takes_only_the_zero_value() {
    let d = fixture("circle");
    let th = unipotent(AlexanderKind::Two);
    let (m, ys) = (th.mcb(), th.xset());
    let r = phi_invariant(&d, &m, Some(&ys), &th, &SearchOptions::default()).unwrap();
    let n = count_colorings(&d, &m, Some(&ys), &SearchOptions::default()).unwrap();
    assert_eq!(r.counts.len(), 1);
    assert_eq!(r.count(0), BigUint::from(n));
    assert_eq!(n as usize, m.size() * ys.num_points());
}

#[test]
fn kink_weight_is_the_diagonal_value() {
    let d = fixture("kink");
    let m = TableMcb::conjugation(&s3());
    let ys = XSetAction::self_under(&m);
    let th = random_cochain(2, &m, ys.num_points(), 11);
    let s = d.arc_index("s").unwrap();
    let region = d.region_index("A").unwrap();
    let mut expected = InvariantResult::new(th.coefficients());
    for c in enumerate_colorings(&d, &m, Some(&ys), &SearchOptions::default()).unwrap() {
        let y = c.regions.as_ref().unwrap()[region];
        expected.insert(th.eval(y, &[&[c.arcs[s]], &[c.arcs[s]]]), 1u32);
        let w = cycle_of_coloring(&d, c.as_ref()).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.coefficient(&PrismGen::new(y, vec![vec![c.arcs[s]], vec![c.arcs[s]]])), BigInt::from(1));
    }
    assert_eq!(phi_invariant(&d, &m, Some(&ys), &th, &SearchOptions::default()).unwrap(), expected);
}

#[test]
fn theta_vertex_weights_cancel() {
    let d = fixture("theta");
    let m = TableMcb::conjugation(&s3());
    let ys = XSetAction::self_under(&m);
    let cs = enumerate_colorings(&d, &m, Some(&ys), &SearchOptions::default()).unwrap();
    assert!(!cs.is_empty());
    for c in &cs {
        assert!(cycle_of_coloring(&d, c.as_ref()).unwrap().is_zero());
    }
    let th = random_cochain(2, &m, ys.num_points(), 12);
    let r = phi_invariant(&d, &m, Some(&ys), &th, &SearchOptions::default()).unwrap();
    assert_eq!(r.count(0), BigUint::from(cs.len()));
}

#[test]
fn weights_are_cycles() {
    let th = unipotent(AlexanderKind::Two);
    let (m, ys) = (th.mcb(), th.xset());
    for name in ["kink", "hopf", "theta_kink", "5_2"] {
        let d = fixture(name);
        assert_eq!(find_noncycle(&d, &m, Some(&ys), &SearchOptions::default()).unwrap(), None, "{name}");
    }
    let m = TableMcb::conjugation(&s3());
    let ys = XSetAction::self_under(&m);
    for name in ["kink", "hopf", "theta_kink", "5_2"] {
        assert_eq!(find_noncycle(&fixture(name), &m, Some(&ys), &SearchOptions::default()).unwrap(), None, "{name}");
    }
}

#[test]
fn evaluation_agrees_with_the_cycle() {
    let d = fixture("5_2");
    let th = unipotent(AlexanderKind::Two);
    let (m, ys) = (th.mcb(), th.xset());
    for c in enumerate_colorings(&d, &m, Some(&ys), &SearchOptions::default()).unwrap().iter().take(200) {
        let w = cycle_of_coloring(&d, c.as_ref()).unwrap();
        assert_eq!(evaluate(&d, &th, c.as_ref()), th.eval_chain(&w).unwrap());
    }
}

#[test]
fn multiplicities_sum_to_the_coloring_count() {
    let d = fixture("5_2");
    for kind in [AlexanderKind::One, AlexanderKind::Two, AlexanderKind::TwoPrime] {
        let th = unipotent(kind);
        let (m, ys) = (th.mcb(), th.xset());
        let ys = (kind != AlexanderKind::One).then_some(&ys);
        let r = phi_invariant(&d, &m, ys, &th, &SearchOptions::default()).unwrap();
        let n = count_colorings(&d, &m, ys, &SearchOptions::default()).unwrap();
        assert_eq!(r.colorings(), BigUint::from(n), "kind {kind}");
    }
}

#[test]
fn relabelling_does_not_change_the_result() {
    let d = fixture("5_2");
    let mut f = d.to_file();
    f.regions.reverse();
    f.semiarcs.reverse();
    f.crossings.rotate_left(2);
    f.vertices.reverse();
    for a in f.semiarcs.iter_mut() {
        a.id = format!("arc-{}", a.id);
    }
    for x in f.crossings.iter_mut() {
        for s in [&mut x.under_in, &mut x.under_out, &mut x.over_in, &mut x.over_out] {
            *s = format!("arc-{s}");
        }
    }
    for v in f.vertices.iter_mut() {
        for s in [&mut v.a, &mut v.b, &mut v.c] {
            *s = format!("arc-{s}");
        }
    }
    let e = Diagram::from_file(&f).unwrap();
    let th = unipotent(AlexanderKind::Two);
    let (m, ys) = (th.mcb(), th.xset());
    let opts = SearchOptions::default();
    assert_eq!(
        phi_invariant(&d, &m, Some(&ys), &th, &opts).unwrap(),
        phi_invariant(&e, &m, Some(&ys), &th, &opts).unwrap()
    );
}

#[test]
fn reidemeister_moves_preserve_phi() {
    let (d, e) = (fixture("5_2"), fixture("5_2_r1r2"));
    let opts = SearchOptions::default();
    for kind in [AlexanderKind::One, AlexanderKind::Two] {
        let th = unipotent(kind);
        let (m, ys) = (th.mcb(), th.xset());
        let ys = (kind != AlexanderKind::One).then_some(&ys);
        assert_eq!(phi_invariant(&d, &m, ys, &th, &opts).unwrap(), phi_invariant(&e, &m, ys, &th, &opts).unwrap());
    }
}

#[test]
fn cohomologous_cocycles_give_equal_invariants() {
    let th = unipotent(AlexanderKind::Two);
    let (m, ys) = (th.mcb(), th.xset());
    let cx = Complex::new(&m, &ys).unwrap();
    let eta = random_cochain(1, &m, ys.num_points(), 13);
    let shifted = Shifted { theta: &th, eta: &eta, complex: &cx };
    let zero = TableCochain::zero(2, th.coefficients(), m.size(), ys.num_points());
    let exact = Shifted { theta: &zero, eta: &eta, complex: &cx };
    let opts = SearchOptions::default();
    for name in ["kink", "hopf", "theta_kink"] {
        let d = fixture(name);
        let base = phi_invariant(&d, &m, Some(&ys), &th, &opts).unwrap();
        assert_eq!(phi_invariant(&d, &m, Some(&ys), &shifted, &opts).unwrap(), base, "{name}");
        let r = phi_invariant(&d, &m, Some(&ys), &exact, &opts).unwrap();
        assert_eq!(r.count(0), base.colorings(), "{name}");
    }
}

#[test]
fn result_json_lists_values_in_order() {
    let mut r = InvariantResult::new(Coefficients::cyclic(5));
    r.insert(7, 3u32);
    r.insert(-1, 1u32);
    r.insert(2, 1u32);
    assert_eq!(r.to_json(), r#"{"coefficients":"Z/5","colorings":"5","values":[{"value":2,"count":"4"},{"value":4,"count":"1"}]}"#);
    assert_eq!(r.negated().count(3), BigUint::from(4u32));
    assert_eq!(r.to_string(), "2: 4\n4: 1\n");
}

#[test]
fn non_degree_two_cochain_is_refused() {
    let m = TableMcb::trivial_group();
    let c = TableCochain::zero(3, Coefficients::integers(), 1, 1);
    let e = phi_invariant(&fixture("circle"), &m, None, &c, &SearchOptions::default()).unwrap_err();
    assert!(matches!(e, Error::Structural(_)));
}

#[test]
fn class_multiset_on_trivial_groups() {
    let m = TableMcb::trivial_groups(2);
    let hopts = HomologyOptions::default();
    let opts = SearchOptions::default();
    for name in ["circle", "hopf", "kink"] {
        let d = fixture(name);
        let h = homology_class_multiset(&d, &m, None, &opts, &hopts).unwrap();
        let n = count_colorings(&d, &m, None, &opts).unwrap();
        assert_eq!(h.classes.values().fold(BigUint::zero(), |a, c| a + c), BigUint::from(n), "{name}");
    }
    let h = homology_class_multiset(&fixture("circle"), &m, None, &opts, &hopts).unwrap();
    assert_eq!(h.zero_class_count(), BigUint::from(2u32));
}

#[test]
fn class_multiset_survives_reidemeister_moves() {
    let m = TableMcb::conjugation(&s3());
    let hopts = HomologyOptions::default();
    let opts = SearchOptions::default();
    let a = homology_class_multiset(&fixture("5_2"), &m, None, &opts, &hopts).unwrap();
    let b = homology_class_multiset(&fixture("5_2_r1r2"), &m, None, &opts, &hopts).unwrap();
    assert_eq!(a, b);
    let n = count_colorings(&fixture("5_2"), &m, None, &opts).unwrap();
    assert_eq!(a.classes.values().fold(BigUint::zero(), |a, c| a + c), BigUint::from(n));
}

#[test]
fn mirror_negates_phi() {
    let opts = SearchOptions::default();
    let th = unipotent(AlexanderKind::Two);
    let (m, ys) = (th.mcb(), th.xset());
    for name in ["circle", "kink", "hopf", "theta_kink", "5_2"] {
        let r = mirror_check(&fixture(name), &m, Some(&ys), &th, &opts).unwrap();
        assert!(r.holds(), "{name}: {:?}", r);
        assert_eq!(r.original.colorings(), r.mirrored.colorings());
    }
    let zero = TableCochain::zero(2, Coefficients::cyclic(7), m.size(), ys.num_points());
    let r = mirror_check(&fixture("5_2"), &m, Some(&ys), &zero, &opts).unwrap();
    assert!(r.holds());
    assert_eq!(r.original.counts.len(), 1);
}

#[test]
fn reflection_and_reversal_are_not_the_mirror() {
    let d = fixture("kink");
    let m = AssocMcb::new(AlexanderFamily::unipotent(3, 1).family);
    let ys = XSetAction::self_under(&m);
    let opts = SearchOptions::default();
    let n = count_colorings(&d, &m, Some(&ys), &opts).unwrap();
    assert_eq!(count_colorings(&d.mirror(), &m, Some(&ys), &opts).unwrap(), n);
    assert_eq!(d.mirror().crossings()[0].sign.value(), -d.crossings()[0].sign.value());
}
