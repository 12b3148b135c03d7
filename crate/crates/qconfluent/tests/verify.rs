use std::collections::BTreeMap;

use proptest::prelude::*;
use qconfluent::equations::*;
use qconfluent::qalg::*;
use qconfluent::runner::{sample_until, trial_rng};
use qconfluent::solutions::*;
use qconfluent::verify::*;

fn id(text: &str) -> SolutionId {
    text.parse().unwrap()
}

fn draw(sid: &SolutionId, key: &str, t: u64, n: usize) -> (ParamSet, SeriesSolution) {
    sample_until(sid.family(), &mut trial_rng(13, key, t), |p| construct(sid, p, n)).unwrap()
}

#[test]
fn t31_ii_passes_with_zero_inner_components() {
    let sid = id("C12:T31-ii");
    let (p, sol) = draw(&sid, "t31", 0, 16);
    let r = verify_solution(&p, &sol, 6).unwrap();
    assert!(r.pass);
    assert!(r.components[..=10].iter().all(|c| *c == int(0)));
    assert!(r.first_nonzero_index.unwrap() > 10);
}

#[test]
fn constant_solution_has_zero_residual() {
    let p = ParamSet::unit(Family::C12);
    let sol = construct(&id("C12:T31-ii"), &p, 8).unwrap();
    let r = verify_solution(&p, &sol, 6).unwrap();
    assert!(r.pass && r.residual_zero);
}

#[test]
fn perturbed_coefficient_fails_inside_the_band() {
    let sid = id("C12:T31-ii");
    let (p, mut sol) = draw(&sid, "perturb", 0, 16);
    sol.coeffs[3] += int(1);
    let r = verify_solution(&p, &sol, 6).unwrap();
    assert!(!r.pass);
    assert!(r.first_nonzero_index.unwrap() <= 6);
}

#[test]
fn zero_window_rejected() {
    let p = ParamSet::unit(Family::C12);
    let sol = construct(&id("C12:T31-ii"), &p, 4).unwrap();
    assert!(verify_solution(&p, &sol, 0).is_err());
}

#[test]
fn report_json_shape() {
    let sid = id("B02:T41-i");
    let (p, sol) = draw(&sid, "json", 0, 16);
    let r = verify_solution(&p, &sol, 6).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "id",
            "N",
            "window",
            "pass",
            "first_nonzero_index",
            "components_nonzero",
            "overflow_degrees"
        ]
    );
    assert_eq!(v["N"], 16);
}

#[test]
fn overflow_support_by_direction() {
    for sid in verifiable_ids() {
        let (p, sol) = draw(&sid, "overflow", 0, 12);
        let r = verify_solution(&p, &sol, 6).unwrap();
        if sol.basis.direction() < 0 {
            assert!(
                r.overflow_degrees.iter().all(|d| [1, 2].contains(d)),
                "{sid}: {:?}",
                r.overflow_degrees
            );
        } else {
            assert!(r.overflow_degrees.is_empty(), "{sid}");
        }
    }
}

#[test]
fn recurrence_oracle_reproduces_closed_forms() {
    for sid in verifiable_ids() {
        let (p, sol) = sample_until(sid.family(), &mut trial_rng(13, "oracle", 0), |p| {
            let sol = construct(&sid, p, 12)?;
            recurrence_solve(p, &sol.prefactor, &sol.basis, 12).map(|r| (sol, r))
        })
        .map(|(p, (sol, r))| {
            assert!(r.radius() <= 6, "{sid}: radius {}", r.radius());
            assert_eq!(r.coeffs, sol.coeffs, "{sid}");
            (p, sol)
        })
        .unwrap();
        assert_eq!(sol.coeffs[0], int(1));
        assert_eq!(p.family, sid.family());
    }
}

#[test]
fn oracle_at_zero_is_normalized() {
    let p = ParamSet::unit(Family::C12);
    let basis = BasisDescriptor::poch_asc(p.lo1().unwrap() * &p.t1 / &p.s, p.q.clone());
    let r = recurrence_solve(&p, &p.lam, &basis, 0).unwrap();
    assert_eq!(r.coeffs, vec![int(1)]);
}

#[test]
fn resonant_power_series_needs_pinning() {
    // at x = 0 the exponents λ and λ+1 differ by one
    let mut rng = trial_rng(13, "res", 0);
    let p = random_params(Family::C12, &mut rng);
    let op = build_operator(&p).unwrap();
    let basis = BasisDescriptor::monomial_asc(p.q.clone());
    let free = recurrence_solve_op(&op, &p.q, &p.lam, &basis, 6, 6, &BTreeMap::new());
    assert!(free.is_err());
    let pinned = BTreeMap::from([(1usize, ratio(2, 3))]);
    let sol = recurrence_solve_op(&op, &p.q, &p.lam, &basis, 10, 6, &pinned).unwrap();
    assert_eq!(sol.coeffs[1], ratio(2, 3));
    let r = verify_series("power", &op, &p.q, &p.lam, &basis, &sol.coeffs, false, 6).unwrap();
    assert!(r.pass);
}

#[test]
fn displayed_four_term_recurrences_hold() {
    for (text, t) in [
        ("D2:P21-ii:12", 0),
        ("D2:P21-ii:12", 1),
        ("C12:T31-ii", 0),
        ("C12:T31-ii", 1),
    ] {
        let sid = id(text);
        let (p, sol) = draw(&sid, "rec4", t, 16);
        assert!(verify_four_term_recurrence(&p, &sol.coeffs).unwrap(), "{text}");
        let mut bad = sol.coeffs.clone();
        bad[5] = -bad[5].clone();
        assert!(!verify_four_term_recurrence(&p, &bad).unwrap(), "{text}");
    }
    let p = ParamSet::unit(Family::B02);
    assert!(verify_four_term_recurrence(&p, &[int(1)]).is_err());
}

#[test]
fn point_swap_symmetry() {
    for fam in [Family::B02, Family::B20] {
        let p = random_params(fam, &mut trial_rng(13, "sym", 0));
        assert!(verify_symmetry(&p).unwrap());
        // moving the points without their exponents changes the operator
        let mut half = p.clone();
        std::mem::swap(&mut half.t1, &mut half.t2);
        assert_ne!(build_operator(&half).unwrap(), build_operator(&p).unwrap());
    }
    assert!(verify_symmetry(&ParamSet::unit(Family::C12)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn scaling_preserves_the_verdict(seed in any::<u64>(), k in 0usize..33, num in 1i64..50, den in 1i64..50) {
        let sid = verifiable_ids()[k];
        let (p, mut sol) = sample_until(sid.family(), &mut trial_rng(seed, "lin", 0), |p| construct(&sid, p, 10)).unwrap();
        let base = verify_solution(&p, &sol, 6).unwrap();
        let c = ratio(num, den);
        sol.coeffs.iter_mut().for_each(|x| *x *= &c);
        let scaled = verify_solution(&p, &sol, 6).unwrap();
        prop_assert_eq!(base.pass, scaled.pass);
        prop_assert_eq!(base.components_nonzero, scaled.components_nonzero);
    }

    #[test]
    fn every_entry_passes(seed in any::<u64>(), k in 0usize..33) {
        let sid = verifiable_ids()[k];
        let (p, sol) = sample_until(sid.family(), &mut trial_rng(seed, "any", 0), |p| construct(&sid, p, 12)).unwrap();
        let r = verify_solution(&p, &sol, 6).unwrap();
        prop_assert!(r.pass, "{}: {:?}", sid, r.components_nonzero);
    }
}
