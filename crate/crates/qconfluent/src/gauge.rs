//! The gauge lemma (multiplying a solution by an infinite q-product) and
//! the correspondences it induces between the (1,2)/(2,1) and (0,2)/(2,0)
//! families.

use serde::Serialize;

use crate::equations::{build_operator, Family, ParamSet, ThreeTermOperator};
use crate::error::{Error, Result};
use crate::qalg::{euler_expand, int, inv_euler_expand, BasisDescriptor, BasisKind, BasisTable, LaurentPoly, Rational};
use crate::solutions::formulas::gauge_product_series;
use crate::solutions::{SeriesSolution, SolutionId, Transcription};
use crate::verify::{verify_series, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeDirection {
    /// u = (αqx;q)_∞·y
    Attach,
    /// u = y/(αx;q)_∞
    Detach,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFactor {
    pub alpha: Rational,
    pub direction: GaugeDirection,
}

impl GaugeFactor {
    pub fn new(alpha: Rational, direction: GaugeDirection) -> Result<Self> {
        if alpha == int(0) {
            return Err(Error::ZeroAlpha);
        }
        Ok(Self { alpha, direction })
    }

    pub fn attach(alpha: Rational) -> Result<Self> {
        Self::new(alpha, GaugeDirection::Attach)
    }

    pub fn detach(alpha: Rational) -> Result<Self> {
        Self::new(alpha, GaugeDirection::Detach)
    }

    /// The side of the operator the factor (1 − αx) is divided out of.
    pub fn side(&self) -> GaugeSide {
        match self.direction {
            GaugeDirection::Attach => GaugeSide::A,
            GaugeDirection::Detach => GaugeSide::C,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeSide {
    /// (A/(1−αx), B, (1−αqx)C): the equation of (αqx;q)_∞·y
    A,
    /// ((1−αx/q)A, B, C/(1−αx)): the equation of y/(αx;q)_∞
    C,
}

/// Operator satisfied by the gauged solution; (1 − αx) must divide the
/// coefficient on the named side.
pub fn gauge_equation(
    op: &ThreeTermOperator,
    q: &Rational,
    alpha: &Rational,
    side: GaugeSide,
) -> Result<ThreeTermOperator> {
    if *alpha == int(0) {
        return Err(Error::ZeroAlpha);
    }
    let factor = || format!("(1 - {}*x)", crate::qalg::format_rational(alpha));
    Ok(match side {
        GaugeSide::A => ThreeTermOperator {
            a: op
                .a
                .div_one_minus(alpha)
                .ok_or_else(|| Error::NotDivisible(format!("{} does not divide A", factor())))?,
            b: op.b.clone(),
            c: op.c.mul_one_minus(&(alpha * q)),
        },
        GaugeSide::C => ThreeTermOperator {
            a: op.a.mul_one_minus(&(alpha / q)),
            b: op.b.clone(),
            c: op
                .c
                .div_one_minus(alpha)
                .ok_or_else(|| Error::NotDivisible(format!("{} does not divide C", factor())))?,
        },
    })
}

pub fn gauge_equation_factor(op: &ThreeTermOperator, q: &Rational, gf: &GaugeFactor) -> Result<ThreeTermOperator> {
    gauge_equation(op, q, &gf.alpha, gf.side())
}

/// Multiplies the monomial expansion of an ascending solution by the
/// gauge factor's power series, truncated at degree N.
pub fn gauge_series(sol: &SeriesSolution, gf: &GaugeFactor, n: usize) -> Result<SeriesSolution> {
    if sol.basis.direction() < 0 {
        return Err(Error::DirectionMismatch);
    }
    if gf.alpha == int(0) {
        return Err(Error::ZeroAlpha);
    }
    let q = sol.basis.q.clone();
    let mono = match sol.basis.kind {
        BasisKind::MonomialAsc => {
            LaurentPoly::from_terms(sol.coeffs.iter().cloned().enumerate().map(|(k, c)| (k as i64, c)))
        }
        _ if sol.terminated_at.is_some() => BasisTable::new(sol.basis.clone(), sol.order())?.assemble(&sol.coeffs),
        _ => {
            return Err(Error::NotRealizable(format!(
                "{} has no finite monomial expansion; gauge it at the equation level",
                sol.id
            )))
        }
    };
    let factor = match gf.direction {
        GaugeDirection::Attach => euler_expand(&(&gf.alpha * &q), &q, n),
        GaugeDirection::Detach => inv_euler_expand(&gf.alpha, &q, n),
    };
    let prod = (&mono * &factor).filter_degrees(|d| d <= n as i64);
    Ok(SeriesSolution {
        id: sol.id,
        prefactor: sol.prefactor.clone(),
        basis: BasisDescriptor::monomial_asc(q),
        coeffs: (0..=n as i64).map(|d| prod.coeff(d)).collect(),
        terminated_at: None,
    })
}

/// (1,2) → (2,1): L̃₁ = L1, L̃₂ = A2, Ã₁ = A1, ã₁ = q·A1/(L1·Lam²·a1). The
/// map is an involution between the two parameter spaces.
pub fn c12_to_c21(p: &ParamSet) -> Result<ParamSet> {
    expect_family(p, Family::C12)?;
    let mut t = p.clone();
    t.family = Family::C21;
    t.l2 = p.a2h.clone();
    t.a2h = None;
    t.al1 = &p.q * p.h1()? / (p.lo1()? * &p.lam * &p.lam * &p.al1);
    Ok(t)
}

pub fn c21_to_c12(p: &ParamSet) -> Result<ParamSet> {
    expect_family(p, Family::C21)?;
    let mut t = p.clone();
    t.family = Family::C12;
    t.a2h = p.l2.clone();
    t.l2 = None;
    t.al1 = &p.q * p.h1()? / (p.lo1()? * &p.lam * &p.lam * &p.al1);
    Ok(t)
}

/// (0,2) → (2,0): L̃ᵢ = Aᵢ, ã₁ = q/(Lam²·a1).
pub fn b02_to_b20(p: &ParamSet) -> Result<ParamSet> {
    expect_family(p, Family::B02)?;
    let mut t = p.clone();
    t.family = Family::B20;
    t.l1 = p.a1h.clone();
    t.l2 = p.a2h.clone();
    t.a1h = None;
    t.a2h = None;
    t.al1 = &p.q / (&p.lam * &p.lam * &p.al1);
    Ok(t)
}

pub fn b20_to_b02(p: &ParamSet) -> Result<ParamSet> {
    expect_family(p, Family::B20)?;
    let mut t = p.clone();
    t.family = Family::B02;
    t.a1h = p.l1.clone();
    t.a2h = p.l2.clone();
    t.l1 = None;
    t.l2 = None;
    t.al1 = &p.q / (&p.lam * &p.lam * &p.al1);
    Ok(t)
}

fn expect_family(p: &ParamSet, f: Family) -> Result<()> {
    if p.family == f {
        Ok(())
    } else {
        Err(Error::Constraint(vec![format!(
            "expected a {f} parameter set, got {}",
            p.family
        )]))
    }
}

/// Applies A-side moves with the given α's and compares with `target` up
/// to the scalar fixed by the leading g(x/q) coefficients.
fn moved_matches(op: &ThreeTermOperator, q: &Rational, alphas: &[Rational], target: &ThreeTermOperator) -> bool {
    let mut cur = op.clone();
    for a in alphas {
        match gauge_equation(&cur, q, a, GaugeSide::A) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
    }
    cur.proportional_to(target).is_some()
}

/// (q^{−h₂+1/2}t₂⁻¹x;q)_∞ times a (1,2) solution solves the (2,1) equation
/// at the mapped parameters.
pub fn check_correspondence_c12_c21(p: &ParamSet) -> Result<bool> {
    let tilde = c12_to_c21(p)?;
    check_correspondence_with(p, &tilde)
}

/// Same check against an arbitrary (2,1) parameter set.
pub fn check_correspondence_with(p: &ParamSet, tilde: &ParamSet) -> Result<bool> {
    let op = build_operator(p)?;
    let alpha = (&p.s * p.h2()? * &p.t2).recip();
    Ok(moved_matches(
        &op,
        &p.q,
        &[alpha],
        &crate::equations::build_operator_unchecked(tilde)?,
    ))
}

/// Both factors (q^{−h_i+1/2}t_i⁻¹x;q)_∞ carry a (0,2) solution to the
/// (2,0) equation at the mapped parameters.
pub fn check_correspondence_b02_b20(p: &ParamSet) -> Result<bool> {
    check_correspondence_b02_b20_moves(p, 2)
}

/// As above with only the first `moves` factors applied.
pub fn check_correspondence_b02_b20_moves(p: &ParamSet, moves: usize) -> Result<bool> {
    let tilde = b02_to_b20(p)?;
    let op = build_operator(p)?;
    let alphas = [(&p.s * p.h1()? * &p.t1).recip(), (&p.s * p.h2()? * &p.t2).recip()];
    Ok(moved_matches(
        &op,
        &p.q,
        &alphas[..moves.min(2)],
        &build_operator(&tilde)?,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeProductOutcome {
    pub id: String,
    /// the partner operator, gauged by the entry's factors, is proportional
    /// to the entry's own operator
    pub equation_ok: bool,
    /// the series part solves the partner equation
    pub series: VerificationReport,
}

impl GaugeProductOutcome {
    pub fn passed(&self) -> bool {
        self.equation_ok && self.series.pass
    }
}

/// Validates a gauge-product entry ∏(βx;q)_∞^{±1}·x^μΣcₙx⁻ⁿ: its series
/// part must solve the partner family's equation, and the partner
/// operator gauged by the factors must reproduce the entry's operator.
pub fn check_gauge_product(
    id: &SolutionId,
    p: &ParamSet,
    n: usize,
    tr: Transcription,
    window: usize,
) -> Result<GaugeProductOutcome> {
    if !id.label.is_gauge_product() {
        return Err(Error::unknown("gauge product entry", id.to_string()));
    }
    if p.family != id.family() {
        return Err(Error::Constraint(vec![format!(
            "{id} needs a {} parameter set",
            id.family()
        )]));
    }
    crate::equations::validate(p)?;
    let partner = match p.family {
        Family::C12 => c12_to_c21(p)?,
        Family::C21 => c21_to_c12(p)?,
        Family::B02 => b02_to_b20(p)?,
        Family::B20 => b20_to_b02(p)?,
        Family::D2 => unreachable!("no D2 gauge products"),
    };
    let gp = gauge_product_series(id, p, n, tr)?;
    let partner_op = build_operator(&partner)?;
    let series = verify_series(
        &id.to_string(),
        &partner_op,
        &p.q,
        &gp.series.prefactor,
        &gp.series.basis,
        &gp.series.coeffs,
        false,
        window,
    )?;
    // g = ∏ factors · y with y a partner solution: (βx)_∞ = attach(β/q),
    // 1/(βx)_∞ = detach(β)
    let mut cur = partner_op;
    let mut equation_ok = true;
    for (beta, e) in &gp.factors {
        let step = if *e > 0 {
            gauge_equation(&cur, &p.q, &(beta / &p.q), GaugeSide::A)
        } else {
            gauge_equation(&cur, &p.q, beta, GaugeSide::C)
        };
        match step {
            Ok(next) => cur = next,
            Err(_) => {
                equation_ok = false;
                break;
            }
        }
    }
    equation_ok &= cur.proportional_to(&build_operator(p)?).is_some();
    Ok(GaugeProductOutcome {
        id: id.to_string(),
        equation_ok,
        series,
    })
}
