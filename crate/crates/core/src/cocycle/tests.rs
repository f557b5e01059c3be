use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{AlexanderFamily, FinBiquandle, Side, Sl2};
use crate::chain::Complex;
use crate::mcb::{Mcb, XSetAction};

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    (0..base.pow(len as u32))
        .map(|mut i| {
            let mut v = vec![0; len];
            for x in v.iter_mut().rev() {
                *x = i % base;
                i /= base;
            }
            v
        })
        .collect()
}

/// Basis of the solutions of `rows · v = 0` over `ℤ_p`.
fn nullspace(rows: &[Vec<i64>], cols: usize, p: i64) -> Vec<Vec<i64>> {
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let s = inv(m[r][c]);
        for v in m[r].iter_mut() {
            *v = *v * s % p;
        }
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                for j in 0..cols {
                    m[k][j] = (m[k][j] - f * m[r][j]).rem_euclid(p);
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

/// The linear conditions on a biquandle `n`-cochain table, written out
/// directly: degeneracy, the cocycle sum and (optionally) the lifting
/// hypotheses for period `t`.
fn conditions(x: &FinBiquandle, ys: &XSetAction, n: usize, hypotheses: Option<usize>) -> (Vec<Vec<i64>>, usize) {
    let nx = x.size();
    let cols = ys.num_points() * nx.pow(n as u32);
    let idx = |y: usize, xs: &[usize]| xs.iter().fold(y, |acc, &e| acc * nx + e);
    let mut rows = Vec::new();
    for y in 0..ys.num_points() {
        for xs in tuples(nx, n) {
            if xs.windows(2).any(|w| w[0] == w[1]) {
                let mut r = vec![0; cols];
                r[idx(y, &xs)] = 1;
                rows.push(r);
            }
        }
        for xs in tuples(nx, n + 1) {
            let mut r = vec![0; cols];
            for i in 0..=n {
                let s = if i % 2 == 0 { 1 } else { -1 };
                let del: Vec<usize> = (0..=n).filter(|&k| k != i).map(|k| xs[k]).collect();
                let act: Vec<usize> = (0..=n)
                    .filter(|&k| k != i)
                    .map(|k| if k < i { x.under(xs[k], xs[i]) } else { x.over(xs[k], xs[i]) })
                    .collect();
                r[idx(y, &del)] += s;
                r[idx(ys.act(y, xs[i]), &act)] -= s;
            }
            rows.push(r);
        }
        if let Some(t) = hypotheses {
            for k in 0..n {
                for xs in tuples(nx, n) {
                    let mut r = vec![0; cols];
                    for i in 0..t {
                        let moved: Vec<usize> = xs.iter().enumerate().map(|(q, &e)| {
                            let side = if k == 0 || q > k { Side::Over } else { Side::Under };
                            x.parallel_op(e, xs[k], i as i64, side)
                        }).collect();
                        r[idx(ys.parallel_act(x, y, xs[k], i), &moved)] += 1;
                    }
                    rows.push(r);
                }
            }
        }
    }
    (rows, cols)
}

fn combination(basis: &[Vec<i64>], p: i64, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let mut v = vec![0; basis[0].len()];
    for b in basis {
        let k = rng.gen_range(0..p);
        for (x, y) in v.iter_mut().zip(b) {
            *x = (*x + k * y) % p;
        }
    }
    v
}

fn dihedral_regions() -> (FinBiquandle, XSetAction) {
    let x = FinBiquandle::dihedral(3);
    let ys = XSetAction::biquandle_under(&x);
    (x, ys)
}

fn exhaustive() -> VerifyOptions {
    VerifyOptions { generator_cap: 2_000_000, samples: 0, ..Default::default() }
}

fn lifted_cocycles(arity: usize) -> (FinBiquandle, XSetAction, Vec<Vec<i64>>) {
    let (x, ys) = dihedral_regions();
    let t = x.type_with_xset(&ys).unwrap();
    let (rows, cols) = conditions(&x, &ys, arity, Some(t));
    (x, ys, nullspace(&rows, cols, 3))
}

#[test]
fn zero_cocycle_verifies_and_lifts_to_zero() {
    let (x, ys) = dihedral_regions();
    for arity in [2, 3] {
        let len = ys.num_points() * x.size().pow(arity as u32);
        let th = BQCocycle::new(x.clone(), ys.clone(), arity, Coefficients::cyclic(3), vec![0; len]).unwrap();
        assert_eq!(verify_bq_cocycle(&th), None);
        let lift = lift_cocycle(&th).unwrap();
        assert!(lift.cochain.is_zero());
    }
}

#[test]
fn differences_on_the_trivial_biquandle() {
    let x = FinBiquandle::trivial(4);
    let ys = XSetAction::trivial(4);
    let f = [0, 1, 5, 2];
    let th = BQCocycle::from_fn(x, ys, 2, Coefficients::integers(), |_, xs| f[xs[0]] - f[xs[1]]).unwrap();
    assert_eq!(verify_bq_cocycle(&th), None);
}

#[test]
fn differences_on_dihedral_are_decided_by_the_scan() {
    let x = FinBiquandle::dihedral(3);
    let ys = XSetAction::trivial(3);
    let f = [0i64, 1, 0];
    let a = Coefficients::cyclic(3);
    let th = BQCocycle::from_fn(x.clone(), ys.clone(), 2, a, |_, xs| f[xs[0]] - f[xs[1]]).unwrap();
    let (rows, _) = conditions(&x, &ys, 2, None);
    let table: Vec<i64> = tuples(3, 2).iter().map(|xs| a.reduce(f[xs[0]] - f[xs[1]])).collect();
    let expected = rows.iter().all(|r| r.iter().zip(&table).map(|(c, v)| c * v).sum::<i64>() % 3 == 0);
    assert_eq!(verify_bq_cocycle(&th).is_none(), expected);
}

#[test]
fn random_table_is_rejected() {
    let (x, ys) = dihedral_regions();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let table = (0..27).map(|_| rng.gen_range(0..5)).collect();
    let th = BQCocycle::new(x, ys, 2, Coefficients::cyclic(5), table).unwrap();
    let w = verify_bq_cocycle(&th).expect("a random table is not a cocycle");
    assert_ne!(w.value, 0);
}

#[test]
fn nullspace_cocycles_pass_the_scan() {
    let (x, ys) = dihedral_regions();
    let (rows, cols) = conditions(&x, &ys, 2, None);
    let basis = nullspace(&rows, cols, 3);
    assert!(!basis.is_empty());
    for b in &basis {
        let th = BQCocycle::new(x.clone(), ys.clone(), 2, Coefficients::cyclic(3), b.clone()).unwrap();
        assert_eq!(verify_bq_cocycle(&th), None);
    }
}

#[test]
fn lifted_two_cocycles_are_mcb_cocycles() {
    let (x, ys, basis) = lifted_cocycles(2);
    assert!(!basis.is_empty(), "no liftable 2-cocycles on the dihedral quandle");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..4 {
        let th = BQCocycle::new(x.clone(), ys.clone(), 2, Coefficients::cyclic(3), combination(&basis, 3, &mut rng)).unwrap();
        let lift = lift_2cocycle(&th).unwrap();
        let c = Complex::new(&lift.mcb, &lift.xset).unwrap();
        let report = verify_mcb_cocycle(&c, &lift.cochain, &exhaustive()).unwrap();
        assert!(report.verified(), "{report}");
        assert!(!report.sampled);
    }
}

#[test]
fn lifted_three_cocycles_are_mcb_cocycles() {
    let (x, ys, basis) = lifted_cocycles(3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2 {
        let v = if basis.is_empty() { vec![0; 81] } else { combination(&basis, 3, &mut rng) };
        let th = BQCocycle::new(x.clone(), ys.clone(), 3, Coefficients::cyclic(3), v).unwrap();
        let lift = lift_3cocycle(&th).unwrap();
        let c = Complex::new(&lift.mcb, &lift.xset).unwrap();
        let report = verify_mcb_cocycle(&c, &lift.cochain, &exhaustive()).unwrap();
        assert!(report.verified(), "{report}");
    }
}

#[test]
fn single_period_lift_is_the_original_value() {
    let (x, ys, basis) = lifted_cocycles(2);
    let th = BQCocycle::new(x, ys, 2, Coefficients::cyclic(3), basis[0].clone()).unwrap();
    for y in 0..3 {
        for xs in tuples(3, 2) {
            assert_eq!(th.lifted_value(y, &[(xs[0], 1), (xs[1], 1)]), th.value(y, &xs));
            assert_eq!(th.lifted_value(y, &[(xs[0], 0), (xs[1], 1)]), 0);
        }
    }
}

#[test]
fn lift_does_not_depend_on_representatives() {
    for arity in [2, 3] {
        let (x, ys, basis) = lifted_cocycles(arity);
        if basis.is_empty() {
            continue;
        }
        let t = x.type_with_xset(&ys).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let th = BQCocycle::new(x, ys, arity, Coefficients::cyclic(3), combination(&basis, 3, &mut rng)).unwrap();
        for y in 0..3 {
            for xs in tuples(3, arity) {
                for is in tuples(t, arity) {
                    let base: Vec<(usize, usize)> = xs.iter().zip(&is).map(|(&x, &i)| (x, i)).collect();
                    let v = th.lifted_value(y, &base);
                    for k in 0..arity {
                        let mut shifted = base.clone();
                        shifted[k].1 += t;
                        assert_eq!(th.lifted_value(y, &shifted), v, "slot {k} at y={y} {base:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn lift_is_additive() {
    let (x, ys, basis) = lifted_cocycles(2);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = Coefficients::cyclic(3);
    let t1 = BQCocycle::new(x.clone(), ys.clone(), 2, a, combination(&basis, 3, &mut rng)).unwrap();
    let t2 = BQCocycle::new(x, ys, 2, a, combination(&basis, 3, &mut rng)).unwrap();
    let sum = lift_cocycle(&t1.add(&t2).unwrap()).unwrap().cochain;
    let parts = lift_cocycle(&t1).unwrap().cochain.add(&lift_cocycle(&t2).unwrap().cochain).unwrap();
    assert_eq!(sum, parts);
}

#[test]
fn failing_hypothesis_is_rejected() {
    let (x, ys) = dihedral_regions();
    let t = x.type_with_xset(&ys).unwrap();
    let (rows, cols) = conditions(&x, &ys, 2, None);
    let (hrows, _) = conditions(&x, &ys, 2, Some(t));
    let bad = nullspace(&rows, cols, 3)
        .into_iter()
        .find(|v| hrows.iter().any(|r| r.iter().zip(v).map(|(c, x)| c * x).sum::<i64>() % 3 != 0))
        .expect("some cocycle violates a hypothesis sum");
    let th = BQCocycle::new(x, ys, 2, Coefficients::cyclic(3), bad).unwrap();
    assert_eq!(verify_bq_cocycle(&th), None);
    match lift_2cocycle(&th) {
        Err(Error::Axiom(msg)) => assert!(msg.contains("hypothesis"), "{msg}"),
        other => panic!("expected a hypothesis failure, got {other:?}"),
    }
}

#[test]
fn wrong_arity_is_structural() {
    let (x, ys) = dihedral_regions();
    let th = BQCocycle::new(x, ys, 3, Coefficients::cyclic(3), vec![0; 81]).unwrap();
    assert!(matches!(lift_2cocycle(&th), Err(Error::Structural(_))));
}

#[test]
fn bq_json_round_trip() {
    let (x, ys, basis) = lifted_cocycles(2);
    let th = BQCocycle::new(x, ys, 2, Coefficients::cyclic(3), basis[0].clone()).unwrap();
    assert_eq!(BQCocycle::from_json(&th.to_json()).unwrap(), th);
    let lift = lift_cocycle(&th).unwrap();
    assert_eq!(TableCochain::from_json(&lift.cochain.to_json()).unwrap(), lift.cochain);
}

fn trilinear(fam: &AlexanderFamily, a: Coefficients) -> MultilinearForm {
    MultilinearForm::from_fn(fam.module, 3, a, |v| {
        (v[0][0] as i64 * v[1][1] as i64 - v[0][1] as i64 * v[1][0] as i64) * v[2][0] as i64
    })
}

fn unipotent_cocycle(kind: AlexanderKind) -> AlexanderCocycle {
    let fam = AlexanderFamily::unipotent(3, 1);
    let a = Coefficients::cyclic(3);
    let f = match kind {
        AlexanderKind::One => MultilinearForm::det(fam.module, a).unwrap(),
        _ => trilinear(&fam, a),
    };
    AlexanderCocycle::new(kind, fam, f, vec![0, 1, 2]).unwrap()
}

#[test]
fn unipotent_alexander_cocycles_verify() {
    for kind in [AlexanderKind::One, AlexanderKind::Two, AlexanderKind::TwoPrime] {
        let th = unipotent_cocycle(kind);
        let (m, ys) = (th.mcb(), th.xset());
        let c = Complex::new(&m, &ys).unwrap();
        let report = verify_mcb_cocycle(&c, &th, &exhaustive()).unwrap();
        assert!(report.verified(), "kind {kind}: {report}");
        assert!(!report.sampled);
    }
}

fn transposition_sign(sl: &Sl2) -> Vec<i64> {
    let g = sl.group();
    (0..g.order()).map(|x| i64::from(x != g.identity() && g.mul(x, x) == g.identity())).collect()
}

#[test]
fn sl2z2_alexander_cocycle_verifies() {
    let fam = AlexanderFamily::sl2z2();
    let a = Coefficients::cyclic(2);
    let lambda = transposition_sign(&Sl2::new(2));
    let th = AlexanderCocycle::new(AlexanderKind::One, fam.clone(), MultilinearForm::det(fam.module, a).unwrap(), lambda)
        .unwrap();
    let (m, ys) = (th.mcb(), th.xset());
    let report = verify_mcb_cocycle(&Complex::new(&m, &ys).unwrap(), &th, &exhaustive()).unwrap();
    assert!(report.verified(), "{report}");
}

#[test]
fn non_homomorphism_lambda_is_caught() {
    let fam = AlexanderFamily::sl2z2();
    let a = Coefficients::cyclic(2);
    let f = MultilinearForm::det(fam.module, a).unwrap();
    let mut lambda = vec![0; 6];
    lambda[(fam.group().identity() + 1) % 6] = 1;
    assert!(matches!(
        AlexanderCocycle::new(AlexanderKind::One, fam.clone(), f.clone(), lambda.clone()),
        Err(Error::Axiom(_))
    ));
    let th = AlexanderCocycle::new_unchecked(AlexanderKind::One, fam, f, lambda).unwrap();
    let (m, ys) = (th.mcb(), th.xset());
    let report = verify_mcb_cocycle(&Complex::new(&m, &ys).unwrap(), &th, &exhaustive()).unwrap();
    assert!(!report.verified());
}

#[test]
fn non_multilinear_form_is_rejected() {
    let fam = AlexanderFamily::unipotent(3, 1);
    let f = MultilinearForm::from_fn(fam.module, 2, Coefficients::cyclic(3), |v| v[0][0] as i64 * v[0][0] as i64);
    assert!(matches!(AlexanderCocycle::new(AlexanderKind::One, fam, f, vec![0, 1, 2]), Err(Error::Axiom(_))));
}

#[test]
fn zero_lambda_gives_zero() {
    let fam = AlexanderFamily::unipotent(3, 1);
    let f = MultilinearForm::det(fam.module, Coefficients::cyclic(3)).unwrap();
    let th = AlexanderCocycle::new(AlexanderKind::One, fam, f, vec![0; 3]).unwrap();
    let n = th.mcb().size() as u32;
    assert!((0..n).all(|a| (0..n).all(|b| th.value(0, a, b) == 0)));
}

#[test]
fn equal_module_coordinates_give_zero() {
    for kind in [AlexanderKind::One, AlexanderKind::Two, AlexanderKind::TwoPrime] {
        let th = unipotent_cocycle(kind);
        let m = th.mcb();
        let points = th.xset().num_points() as u32;
        for y in 0..points {
            for x in 0..9 {
                for g1 in 0..3 {
                    for g2 in 0..3 {
                        let (a, b) = (m.join(x, g1) as u32, m.join(x, g2) as u32);
                        assert_eq!(th.value(y, a, b), 0);
                        assert_eq!(th.eval(y, &[&[a, b]]), 0);
                    }
                }
            }
        }
    }
}

#[test]
fn kind_parsing() {
    assert_eq!("1".parse::<AlexanderKind>().unwrap(), AlexanderKind::One);
    assert_eq!("2p".parse::<AlexanderKind>().unwrap(), AlexanderKind::TwoPrime);
    assert_eq!(AlexanderKind::TwoPrime.to_string().parse::<AlexanderKind>().unwrap(), AlexanderKind::TwoPrime);
    assert!("3".parse::<AlexanderKind>().is_err());
}

#[test]
fn zero_cochain_and_budget() {
    let th = unipotent_cocycle(AlexanderKind::One);
    let (m, ys) = (th.mcb(), th.xset());
    let c = Complex::new(&m, &ys).unwrap();
    let zero = TableCochain::zero(2, Coefficients::cyclic(3), m.size(), 1);
    assert!(verify_mcb_cocycle(&c, &zero, &exhaustive()).unwrap().verified());
    let tight = VerifyOptions { generator_cap: 10, samples: 0, ..Default::default() };
    assert!(matches!(verify_mcb_cocycle(&c, &zero, &tight), Err(Error::Budget(_))));
    let sampled = VerifyOptions { generator_cap: 10, samples: 5_000, ..Default::default() };
    let r = verify_mcb_cocycle(&c, &th, &sampled).unwrap();
    assert!(r.sampled && r.verified() && r.checked == 5_000);
}

#[test]
fn coefficient_arithmetic() {
    let z6 = Coefficients::cyclic(6);
    assert_eq!(z6.reduce(-2), 4);
    assert_eq!(z6.add(5, 4), 3);
    assert_eq!(z6.neg(2), 4);
    assert_eq!(z6.scale(-1, 3), 3);
    assert_eq!(z6.to_string(), "Z/6");
    assert_eq!(Coefficients::integers().neg(2), -2);
}

#[test]
fn table_cochain_tabulates_other_cochains() {
    let th = unipotent_cocycle(AlexanderKind::One);
    let n = th.mcb().size();
    let extra = vec![crate::chain::PrismGen::new(0, vec![vec![0, 1]])];
    let t = TableCochain::tabulate(&th, n, 1, extra);
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            assert_eq!(t.eval(0, &[&[a], &[b]]), th.eval(0, &[&[a], &[b]]));
        }
    }
    assert!(t.add(&t).unwrap().add(&t).unwrap().is_zero());
}


#[test]
fn lifts_over_alexander_biquandles_are_mcb_cocycles() {
    for (x, p) in [(FinBiquandle::alexander(3, 1, 2), 3), (FinBiquandle::alexander(4, 1, 3), 2)] {
        for ys in [XSetAction::trivial(x.size()), XSetAction::biquandle_under(&x)] {
            let t = x.type_with_xset(&ys).unwrap();
            for arity in [2, 3] {
                let (rows, cols) = conditions(&x, &ys, arity, Some(t));
                let basis = nullspace(&rows, cols, p);
                assert!(!basis.is_empty());
                let mut rng = ChaCha8Rng::seed_from_u64(5);
                let v = combination(&basis, p, &mut rng);
                let th = BQCocycle::new(x.clone(), ys.clone(), arity, Coefficients::cyclic(p as u64), v).unwrap();
                let lift = lift_cocycle(&th).unwrap();
                let c = Complex::new(&lift.mcb, &lift.xset).unwrap();
                let report = verify_mcb_cocycle(&c, &lift.cochain, &exhaustive()).unwrap();
                assert!(report.verified(), "{report}");
            }
        }
    }
}

#[test]
fn library_basis_matches_the_direct_conditions() {
    for (x, ys, p) in [
        (FinBiquandle::dihedral(3), XSetAction::biquandle_under(&FinBiquandle::dihedral(3)), 3),
        (FinBiquandle::alexander(4, 1, 3), XSetAction::trivial(4), 2),
    ] {
        let t = x.type_with_xset(&ys).unwrap();
        for arity in [2, 3] {
            let (rows, cols) = conditions(&x, &ys, arity, Some(t));
            let expected = nullspace(&rows, cols, p);
            let basis = liftable_cocycles(&x, &ys, arity, p as u64).unwrap();
            assert_eq!(basis.len(), expected.len());
            for th in &basis {
                assert_eq!(verify_bq_cocycle(th), None);
                let v: Vec<i64> = tuples(ys.num_points(), 1)
                    .into_iter()
                    .flat_map(|y| tuples(x.size(), arity).into_iter().map(move |xs| (y[0], xs)))
                    .map(|(y, xs)| th.value(y, &xs))
                    .collect();
                assert!(rows.iter().all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() % p == 0));
            }
        }
    }
    assert!(liftable_cocycles(&FinBiquandle::dihedral(3), &XSetAction::trivial(3), 2, 4).is_err());
}
