use proptest::prelude::*;
use qconfluent::equations::*;
use qconfluent::qalg::*;
use qconfluent::runner::{sample_until, trial_rng};
use qconfluent::solutions::*;
use qconfluent::verify::verify_solution;
use qconfluent::Error;

fn id(text: &str) -> SolutionId {
    text.parse().unwrap()
}

fn draw(id: &SolutionId, key: &str, t: u64) -> (ParamSet, SeriesSolution) {
    sample_until(id.family(), &mut trial_rng(11, key, t), |p| construct(id, p, 16)).unwrap()
}

#[test]
fn catalog_has_every_entry_once() {
    let ids = catalog_ids();
    assert_eq!(ids.len(), 37);
    let mut texts: Vec<String> = ids.iter().map(ToString::to_string).collect();
    texts.sort();
    texts.dedup();
    assert_eq!(texts.len(), 37);
    let listing = list_catalog();
    assert_eq!(listing.len(), 37);
    let gauge: Vec<&str> = listing
        .iter()
        .filter(|e| !e.residual_verifiable)
        .map(|e| e.id.as_str())
        .collect();
    assert_eq!(gauge, ["C12:P63-g2", "C21:P63-g3", "B02:P65-g2", "B20:P65-g3"]);
    let e = listing.iter().find(|e| e.id == "C12:T31-ii").unwrap();
    assert_eq!((e.prefactor, e.basis), ("lambda", "POCH_ASC"));
    assert!(listing
        .iter()
        .any(|e| e.id == "D2:T22-ii:12" && e.basis == "MIXED_DESC"));
    let e = listing.iter().find(|e| e.id == "B20:T53-ii").unwrap();
    assert_eq!((e.prefactor, e.basis), ("-alpha1", "MONOMIAL_DESC"));
    let aliased: Vec<&str> = listing
        .iter()
        .filter(|e| e.alias_of.is_some())
        .map(|e| e.id.as_str())
        .collect();
    assert_eq!(aliased, ["C12:T31-i", "B02:T41-i", "C21:T51-ii", "B20:T53-ii"]);
}

#[test]
fn t31_ii_first_coefficient() {
    let sid = id("C12:T31-ii");
    let (p, sol) = draw(&sid, "c1", 0);
    let one = int(1);
    let (a1, a2, l1) = (p.h1().unwrap(), p.h2().unwrap(), p.lo1().unwrap());
    let expected = &p.q * (&one - p.lam_al1())
        / ((&one - &p.q * a1 / l1) * (&one - &p.q * a2 * &p.t2 / (l1 * &p.t1)) * (&one - &p.q));
    assert_eq!(sol.coeffs[1], expected);
}

#[test]
fn t41_i_first_coefficient() {
    let sid = id("B02:T41-i");
    let (p, sol) = draw(&sid, "c1", 0);
    let la = p.lam_al1();
    let expected =
        (int(1) - &la) * (&p.s / &la) * (p.h1().unwrap() * &p.t1 + p.h2().unwrap() * &p.t2) / (int(1) - &p.q);
    assert_eq!(sol.coeffs[1], expected);
}

#[test]
fn termination_indices() {
    let sid = id("C12:T31-ii");
    let (p, _) = draw(&sid, "term", 0);
    let constant = with_lam_al1(&p, &int(1));
    let sol = construct(&sid, &constant, 16).unwrap();
    assert_eq!(sol.terminated_at, Some(0));
    assert!(sol.coeffs[1..].iter().all(|c| *c == int(0)));
    assert_eq!(terminating_degree(&sid, &constant, 16).unwrap(), Some(0));

    // λ+α₁ = −3: (q^{−3};q)ₙ vanishes from n = 4, so the last nonzero index is 3
    let cubic = with_lam_al1(&p, &p.q.pow(-3));
    assert_eq!(terminating_degree(&sid, &cubic, 16).unwrap(), Some(3));
    assert_eq!(construct(&sid, &cubic, 16).unwrap().terminated_at, Some(3));
    assert_eq!(terminating_degree(&sid, &p, 16).unwrap(), None);
}

#[test]
fn vanishing_denominator_is_named() {
    let sid = id("C12:T31-ii");
    let (mut p, _) = draw(&sid, "deg", 0);
    // q·A1/L1 = 1 kills (q^{h₁−l₁+1};q)ₙ at n = 1
    p.l1 = Some(&p.q * p.h1().unwrap());
    match construct(&sid, &p, 8) {
        Err(Error::Degenerate(msg)) => assert!(msg.contains("A1/L1"), "{msg}"),
        other => panic!("expected a degenerate-parameter error, got {other:?}"),
    }
}

#[test]
fn wrong_family_and_gauge_products_rejected() {
    let p = ParamSet::unit(Family::B02);
    assert!(matches!(construct(&id("C12:T31-ii"), &p, 4), Err(Error::Constraint(_))));
    let p = ParamSet::unit(Family::C12);
    assert!(matches!(
        construct(&id("C12:P63-g2"), &p, 4),
        Err(Error::NotResidualVerifiable(_))
    ));
}

#[test]
fn printed_t22_ii_prefactor_fails_everywhere() {
    for text in ["D2:T22-ii:12", "D2:T22-ii:21"] {
        let sid = id(text);
        for t in 0..8 {
            let (p, _) = draw(&sid, "t22", t);
            if &p.al1 * &p.al1 == int(1) {
                // x^{α₁} and x^{−α₁} coincide
                continue;
            }
            let printed = construct_as(&sid, &p, 12, Transcription::AsPrinted).unwrap();
            let r = verify_solution(&p, &printed, 6).unwrap();
            assert!(!r.pass, "{text} trial {t}");
            assert_eq!(r.first_nonzero_index, Some(0));
            let fixed = construct(&sid, &p, 12).unwrap();
            assert!(verify_solution(&p, &fixed, 6).unwrap().pass);
        }
    }
}

#[test]
fn swapped_alphas_give_solutions_of_the_same_equation() {
    for text in ["D2:P21-i", "D2:P21-ii:12", "D2:T22-i:21"] {
        let sid = id(text);
        let (p, _) = draw(&sid, "swap", 0);
        let swapped = p.swap_alphas().unwrap();
        assert_eq!(build_operator(&swapped).unwrap(), build_operator(&p).unwrap());
        let sol = construct(&sid, &swapped, 12).unwrap();
        assert!(verify_solution(&p, &sol, 6).unwrap().pass, "{text}");
    }
}

#[test]
fn confluence_of_formulas() {
    let pairs = confluence_pairs();
    assert_eq!(pairs.len(), 26);
    for pair in pairs {
        for t in 0..2 {
            let target = random_params(pair.child.family(), &mut trial_rng(5, &format!("{pair:?}"), t));
            let o = check_confluence(&pair, &target, 10).unwrap();
            assert!(o.passed(), "{pair:?}: {o:?}");
        }
    }
}

#[test]
fn p21_ii_with_vanishing_alpha2_is_t31_ii() {
    let pair = confluence_pairs()
        .into_iter()
        .find(|p| p.parent == id("D2:P21-ii:12") && p.child == id("C12:T31-ii"))
        .unwrap();
    let target = random_params(Family::C12, &mut trial_rng(5, "p21", 0));
    let o = check_confluence(&pair, &target, 16).unwrap();
    assert!(o.prefactor_ok && o.coeffs_ok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn leading_coefficient_is_one(seed in any::<u64>()) {
        for sid in verifiable_ids() {
            if let Ok((_, sol)) = sample_until(sid.family(), &mut trial_rng(seed, "c0", 0), |p| construct(&sid, p, 3)) {
                prop_assert_eq!(&sol.coeffs[0], &int(1), "{}", sid);
            }
        }
    }
}
