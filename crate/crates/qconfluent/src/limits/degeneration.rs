use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::equations::{build_operator, build_operator_unchecked, Family, ParamSet, ThreeTermOperator};
use crate::error::{Error, Result};
use crate::qalg::{int, RatFunc, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegenerationArrow {
    /// q^{α₂} → 0 with q^{α₂+l₂} fixed.
    D2ToC12,
    /// q^{−l₁} → 0.
    C12ToB02,
    /// q^{−α₂} → 0 with q^{h₂−α₂} fixed.
    D2ToC21,
    /// q^{−h₁} → 0.
    C21ToB20,
}

impl DegenerationArrow {
    pub const ALL: [DegenerationArrow; 4] = [
        DegenerationArrow::D2ToC12,
        DegenerationArrow::C12ToB02,
        DegenerationArrow::D2ToC21,
        DegenerationArrow::C21ToB20,
    ];

    pub fn source(self) -> Family {
        match self {
            DegenerationArrow::D2ToC12 | DegenerationArrow::D2ToC21 => Family::D2,
            DegenerationArrow::C12ToB02 => Family::C12,
            DegenerationArrow::C21ToB20 => Family::C21,
        }
    }

    pub fn target(self) -> Family {
        match self {
            DegenerationArrow::D2ToC12 => Family::C12,
            DegenerationArrow::C12ToB02 => Family::B02,
            DegenerationArrow::D2ToC21 => Family::C21,
            DegenerationArrow::C21ToB20 => Family::B20,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DegenerationArrow::D2ToC12 => "D2-C12",
            DegenerationArrow::C12ToB02 => "C12-B02",
            DegenerationArrow::D2ToC21 => "D2-C21",
            DegenerationArrow::C21ToB20 => "C21-B20",
        }
    }

    pub fn vanishing(self) -> &'static str {
        match self {
            DegenerationArrow::D2ToC12 => "a2",
            DegenerationArrow::C12ToB02 => "1/L1",
            DegenerationArrow::D2ToC21 => "1/a2",
            DegenerationArrow::C21ToB20 => "1/A1",
        }
    }

    /// Power of u multiplied in and scalar divided out so the u = 0
    /// operator is exactly the target family's.
    fn normalization<T: Scalar>(self, target: &ParamSet<T>) -> Result<(i64, T)> {
        let lam2 = target.lam.clone() * target.lam.clone();
        let tt = target.t1.clone() * target.t2.clone();
        Ok(match self {
            DegenerationArrow::D2ToC12 => (0, T::one()),
            DegenerationArrow::C12ToB02 => (0, target.h1()?.clone() * target.h2()?.clone() * tt / lam2),
            DegenerationArrow::D2ToC21 => (1, target.al1.clone()),
            DegenerationArrow::C21ToB20 => (0, target.lo1()?.clone() * target.lo2()?.clone() * lam2 * tt),
        })
    }
}

impl fmt::Display for DegenerationArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DegenerationArrow {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::unknown("arrow", s))
    }
}

/// Source-family parameters as functions of the vanishing generator u,
/// with the eliminated generator fixed by the arrow's combination rule.
pub fn source_params<T: Scalar>(arrow: DegenerationArrow, target: &ParamSet<T>, u: T) -> ParamSet<T> {
    let mut p = target.clone();
    p.family = arrow.source();
    let lam2 = target.lam.clone() * target.lam.clone();
    match arrow {
        DegenerationArrow::D2ToC12 => {
            // q^{α₂+l₂} = q·A1·A2/(L1·a1·Lam²) stays fixed
            let k = target.q.clone() * target.a1h.clone().unwrap() * target.a2h.clone().unwrap()
                / (target.l1.clone().unwrap() * target.al1.clone() * lam2);
            p.l2 = Some(k / u.clone());
            p.al2 = Some(u);
        }
        DegenerationArrow::C12ToB02 => {
            p.l1 = Some(u.recip());
        }
        DegenerationArrow::D2ToC21 => {
            // q^{h₂−α₂} = Lam²·L1·L2·a1/(q·A1) stays fixed
            let k = lam2 * target.l1.clone().unwrap() * target.l2.clone().unwrap() * target.al1.clone()
                / (target.q.clone() * target.a1h.clone().unwrap());
            p.a2h = Some(k / u.clone());
            p.al2 = Some(u.recip());
        }
        DegenerationArrow::C21ToB20 => {
            p.a1h = Some(u.recip());
        }
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationOutcome {
    pub arrow: String,
    pub rewrite_consistent: bool,
    pub polynomial_in_u: bool,
    pub limit_matches: bool,
}

impl DegenerationOutcome {
    pub fn passed(&self) -> bool {
        self.rewrite_consistent && self.polynomial_in_u && self.limit_matches
    }
}

pub fn degeneration_check(arrow: DegenerationArrow, target: &ParamSet, u0: &Rational) -> Result<DegenerationOutcome> {
    degeneration_check_with(arrow, target, u0, true)
}

/// The three exact checks; `normalize = false` skips the arrow's scalar
/// normalization (useful to see that it is needed).
pub fn degeneration_check_with(
    arrow: DegenerationArrow,
    target: &ParamSet,
    u0: &Rational,
    normalize: bool,
) -> Result<DegenerationOutcome> {
    if target.family != arrow.target() {
        return Err(Error::Constraint(vec![format!(
            "{arrow} needs a {} parameter set",
            arrow.target()
        )]));
    }
    crate::equations::validate(target)?;
    if *u0 == int(0) {
        return Err(Error::Constraint(vec!["u0 must be nonzero".into()]));
    }
    let tu = target.map(RatFunc::from_rational);
    let op_u = build_operator_unchecked(&source_params(arrow, &tu, RatFunc::var()))?;

    // (1) symbolic rewrite at u0 against a directly built source operator
    let direct = build_operator(&direct_source_params(arrow, target, u0))?;
    let at_u0: Option<ThreeTermOperator> = op_u.try_map(|c| c.eval(u0).ok_or(())).ok();
    let rewrite_consistent = at_u0.as_ref() == Some(&direct);

    // (2) polynomial dependence on u after normalization
    let normalized = if normalize {
        let (k, scalar) = arrow.normalization(&tu)?;
        op_u.scale(&(RatFunc::var().pow_i(k) / scalar))
    } else {
        op_u
    };
    let coeffs = [&normalized.a, &normalized.b, &normalized.c];
    let polynomial_in_u = coeffs.iter().all(|p| p.terms().all(|(_, c)| c.is_polynomial()));

    // (3) u = 0 equals the target operator
    let at_zero: Option<ThreeTermOperator> = normalized.try_map(|c| c.limit_at_zero().ok_or(())).ok();
    let limit_matches = at_zero.as_ref() == Some(&build_operator(target)?);
    Ok(DegenerationOutcome {
        arrow: arrow.name().to_string(),
        rewrite_consistent,
        polynomial_in_u,
        limit_matches,
    })
}

/// Source parameters at u = u0 derived through the source family's own
/// constraint rather than the fixed-combination rule.
fn direct_source_params(arrow: DegenerationArrow, target: &ParamSet, u0: &Rational) -> ParamSet {
    let mut p = target.clone();
    p.family = arrow.source();
    match arrow {
        DegenerationArrow::D2ToC12 => {
            p.al2 = Some(u0.clone());
            p.l2 = Some(crate::equations::d2_derived_l2(&p));
        }
        DegenerationArrow::C12ToB02 => p.l1 = Some(u0.recip()),
        DegenerationArrow::D2ToC21 => {
            let a2 = u0.recip();
            // Lam²·L1·L2·a1·a2 = q·A1·A2 solved for A2
            let a2h = &p.lam * &p.lam * p.l1.as_ref().unwrap() * p.l2.as_ref().unwrap() * &p.al1 * &a2
                / (&p.q * p.a1h.as_ref().unwrap());
            p.al2 = Some(a2);
            p.a2h = Some(a2h);
        }
        DegenerationArrow::C21ToB20 => p.a1h = Some(u0.recip()),
    }
    p
}
