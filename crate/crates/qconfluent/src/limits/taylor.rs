use num_traits::One;
use serde::Serialize;

use super::continuum::LimitODE;
use crate::equations::{build_operator_unchecked, Family, Generator, ParamSet};
use crate::error::{Error, Result};
use crate::qalg::{format_rational, int, LaurentPoly, RatFunc, Rational, Scalar};

/// Exponents (each with 2e ∈ ℤ), t₁ for the singly confluent families and
/// the scale T (singly confluent) or B (biconfluent).
#[derive(Clone, Debug)]
pub struct TaylorSetup {
    pub family: Family,
    pub lam: Rational,
    pub al1: Rational,
    pub h1: Rational,
    pub h2: Rational,
    pub l1: Rational,
    pub l2: Rational,
    pub t1: Rational,
    pub scale: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaylorReport {
    pub family: String,
    /// leading ε-order of the expanded operator
    pub leading_order: String,
    /// coefficient of g^{(k)} at the leading order, k = 0, 1, ...
    pub derivative_coeffs: Vec<String>,
    pub scalar: Option<String>,
    pub matches: bool,
}

/// Expands each operator coefficient around ε = 0 through an exact rational
/// reparametrization (q = (1+δ)² for the singly confluent families; s and
/// ε^{1/2} rational in r for the biconfluent ones), applies
/// g(q^{±1}x) = Σ ((q^{±1}−1)x)^k g^{(k)}/k!, and compares the leading
/// order with the limiting ODE up to one scalar.
pub fn taylor_operator_check(setup: &TaylorSetup) -> Result<TaylorReport> {
    let var = RatFunc::var();
    let one = RatFunc::one();
    let two = RatFunc::from_int(2);
    let fam = setup.family;
    // s and ε^{1/2} (or ε itself for the singly confluent case)
    let (s, ode) = match fam {
        Family::C12 | Family::C21 => (
            one.clone() + var.clone(),
            LimitODE::kummer_x(&setup.scale, &setup.t1, &setup.lam, &setup.al1, &setup.h1, &setup.l1),
        ),
        Family::B02 => (
            (one.clone() + var.clone() * var.clone()) / (one.clone() - var.clone() * var.clone()),
            LimitODE::hermite_weber(&setup.scale, &setup.lam, &setup.al1),
        ),
        Family::B20 => (
            (one.clone() - var.clone() * var.clone()) / (one.clone() + var.clone() * var.clone()),
            LimitODE::hermite_weber(&setup.scale, &setup.lam, &setup.al1),
        ),
        Family::D2 => return Err(Error::NotRealizable("D2 has no continuum limit here".into())),
    };
    let q = s.clone() * s.clone();
    let eps = q.clone() - one.clone();
    let pw = |e: &Rational| -> Result<RatFunc> {
        let twice = e * int(2);
        if !twice.is_integer() {
            return Err(Error::NotRealizable(format!(
                "exponent {} is not a half-integer",
                format_rational(e)
            )));
        }
        Ok(s.pow_i(i64::try_from(twice.to_integer()).map_err(|_| Error::NotRealizable("exponent too large".into()))?))
    };
    let c = |r: &Rational| RatFunc::constant(r.clone());
    let (t1, t2) = match fam {
        Family::C12 => (c(&setup.t1), (c(&setup.scale) * eps.clone()).recip()),
        Family::C21 => (c(&setup.t1), -(c(&setup.scale) * eps.clone()).recip()),
        _ => {
            // t₁⁻¹ = B·η, t₂⁻¹ = −B·η with η² = ±ε
            let r2 = var.clone() * var.clone();
            let den = if fam == Family::B02 {
                one.clone() - r2
            } else {
                one.clone() + r2
            };
            let eta = two.clone() * var.clone() / den;
            let bt = c(&setup.scale) * eta;
            (bt.recip(), -bt.recip())
        }
    };
    let pick = |g: Generator, e: &Rational| -> Result<Option<RatFunc>> {
        if fam.uses(g) {
            pw(e).map(Some)
        } else {
            Ok(None)
        }
    };
    let p = ParamSet {
        family: fam,
        q: q.clone(),
        s: s.clone(),
        t1,
        t2,
        a1h: pick(Generator::A1, &setup.h1)?,
        a2h: pick(Generator::A2, &setup.h2)?,
        l1: pick(Generator::L1, &setup.l1)?,
        l2: pick(Generator::L2, &setup.l2)?,
        al1: pw(&setup.al1)?,
        al2: None,
        lam: pw(&setup.lam)?,
    };
    let op = build_operator_unchecked(&p)?;
    let dm = q.recip() - one.clone();
    let dp = eps.clone();
    let vq = dp.valuation().expect("q ≠ 1");
    let min_val = |poly: &LaurentPoly<RatFunc>| poly.terms().filter_map(|(_, c)| c.valuation()).min();
    let m0 = [min_val(&op.a), min_val(&op.c)]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(0);

    let expand = |kmax: usize| -> Vec<LaurentPoly<RatFunc>> {
        let mut out = Vec::with_capacity(kmax + 1);
        let mut fact = RatFunc::one();
        let (mut dmk, mut dpk) = (RatFunc::one(), RatFunc::one());
        for k in 0..=kmax {
            if k > 0 {
                fact = fact * RatFunc::from_int(k as i64);
                dmk = dmk * dm.clone();
                dpk = dpk * dp.clone();
            }
            let mut d = &op.a.scale(&(dmk.clone() / fact.clone())) + &op.c.scale(&(dpk.clone() / fact.clone()));
            if k == 0 {
                d = &d + &op.b;
            }
            out.push(d.shift(k as i64));
        }
        out
    };
    let leading = |ds: &[LaurentPoly<RatFunc>]| ds.iter().filter_map(min_val).min();

    let mut kmax = 4usize;
    let mut ds = expand(kmax);
    let mut v = leading(&ds).ok_or_else(|| Error::Degenerate("operator expands to zero".into()))?;
    // terms with k > kmax start at order ≥ m0 + (kmax+1)·vq
    while m0 + (kmax as i64 + 1) * vq <= v {
        kmax += 1;
        ds = expand(kmax);
        v = leading(&ds).expect("nonzero");
    }
    let lead: Vec<LaurentPoly> = ds
        .iter()
        .map(|d| {
            LaurentPoly::from_terms(
                d.terms()
                    .filter(|(_, c)| c.valuation() == Some(v))
                    .map(|(deg, c)| (deg, c.leading().expect("nonzero"))),
            )
        })
        .collect();

    let target = [&ode.p0, &ode.p1, &ode.p2];
    let scalar = match (lead[2].max_degree(), ode.p2.max_degree()) {
        (Some(d), Some(e)) if d == e => Some(lead[2].coeff(d) / ode.p2.coeff(e)),
        _ => None,
    };
    let matches = scalar.as_ref().is_some_and(|k| {
        lead.iter()
            .enumerate()
            .all(|(i, l)| if i < 3 { *l == target[i].scale(k) } else { l.is_zero() })
    });
    let order = Rational::new(v.into(), vq.into());
    Ok(TaylorReport {
        family: fam.to_string(),
        leading_order: format_rational(&order),
        derivative_coeffs: lead.iter().take(3).map(|l| l.to_string()).collect(),
        scalar: scalar.as_ref().map(format_rational),
        matches,
    })
}
