//! Banded residual checks in the solution's own basis, the recurrence
//! oracle, and the displayed four-term recurrences.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::equations::{apply_operator, build_operator, Family, ParamSet, ThreeTermOperator};
use crate::error::{Error, Result};
use crate::qalg::{int, BasisDescriptor, BasisTable, LaurentPoly, Rational};
use crate::solutions::SeriesSolution;

pub const DEFAULT_WINDOW: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub window: usize,
    pub pass: bool,
    pub first_nonzero_index: Option<usize>,
    pub components_nonzero: Vec<usize>,
    pub overflow_degrees: Vec<i64>,
    /// Residual in basis components 0..=N+top.
    #[serde(skip)]
    pub components: Vec<Rational>,
    /// Raw residual terms outside the basis span.
    #[serde(skip)]
    pub overflow: LaurentPoly,
    /// Whether the whole residual polynomial vanished.
    #[serde(skip)]
    pub residual_zero: bool,
}

/// Descending bases only span nonpositive degrees, and the operator raises
/// degrees by up to its top degree, so the residual is shifted down by that
/// amount before projecting. This keeps the projection banded.
fn residual_shift(op: &ThreeTermOperator, basis: &BasisDescriptor) -> i64 {
    if basis.direction() < 0 {
        op.top_degree()
    } else {
        0
    }
}

/// Residual check of Σ cₙφₙ against an arbitrary operator.
#[allow(clippy::too_many_arguments)]
pub fn verify_series(
    id: &str,
    op: &ThreeTermOperator,
    q: &Rational,
    prefactor: &Rational,
    basis: &BasisDescriptor,
    coeffs: &[Rational],
    terminated: bool,
    window: usize,
) -> Result<VerificationReport> {
    let n = coeffs.len() - 1;
    let shift = residual_shift(op, basis);
    let top = n + op.top_degree().max(0) as usize;
    let table = BasisTable::new(basis.clone(), top)?;
    let s = table.assemble(coeffs);
    let r = apply_operator(op, q, prefactor, &s)?;
    let delta = basis.direction();
    let overflow = r.filter_degrees(|d| d * delta < 0);
    let pr = table.project(&r.shift(-shift), top)?;
    let zero = int(0);
    let nonzero: Vec<usize> = (0..pr.components.len()).filter(|&m| pr.components[m] != zero).collect();
    let inner_ok = nonzero.iter().all(|&m| m + window > n);
    let residual_zero = r.is_zero();
    Ok(VerificationReport {
        id: id.to_string(),
        order: n,
        window,
        pass: inner_ok && (!terminated || residual_zero),
        first_nonzero_index: nonzero.first().copied(),
        components_nonzero: nonzero,
        overflow_degrees: overflow.support(),
        components: pr.components,
        overflow,
        residual_zero,
    })
}

/// Checks a catalog series against its family's operator.
pub fn verify_solution(p: &ParamSet, sol: &SeriesSolution, window: usize) -> Result<VerificationReport> {
    if window == 0 {
        return Err(Error::Constraint(vec!["window must be at least 1".into()]));
    }
    let op = build_operator(p)?;
    verify_series(
        &sol.id.to_string(),
        &op,
        &p.q,
        &sol.prefactor,
        &sol.basis,
        &sol.coeffs,
        sol.terminated_at.is_some(),
        window,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceSolution {
    pub coeffs: Vec<Rational>,
    /// Measured band: column n maps into rows [n − below, n + above].
    pub below: usize,
    pub above: usize,
}

impl RecurrenceSolution {
    pub fn radius(&self) -> usize {
        self.below.max(self.above)
    }
}

/// Solves for the normalized formal solution x^μ Σ cₙφₙ from the banded
/// system of projected operator images; `pinned` supplies values for free
/// coefficients at resonant indices.
pub fn recurrence_solve_op(
    op: &ThreeTermOperator,
    q: &Rational,
    prefactor: &Rational,
    basis: &BasisDescriptor,
    n_max: usize,
    window: usize,
    pinned: &BTreeMap<usize, Rational>,
) -> Result<RecurrenceSolution> {
    let shift = residual_shift(op, basis);
    let top = n_max + op.top_degree().max(0) as usize;
    let table = BasisTable::new(basis.clone(), top)?;
    let zero = int(0);
    // columns[j] = projected image of φ_j
    let mut columns = Vec::with_capacity(n_max + 1);
    let (mut below, mut above) = (0i64, 0i64);
    for j in 0..=n_max {
        let img = apply_operator(op, q, prefactor, table.element(j))?;
        let pr = table.project(&img.shift(-shift), top)?;
        if !pr.overflow.is_zero() {
            return Err(Error::NotBanded(format!("image of element {j} leaves the basis span")));
        }
        let nz: Vec<usize> = (0..pr.components.len()).filter(|&m| pr.components[m] != zero).collect();
        if let (Some(&lo), Some(&hi)) = (nz.first(), nz.last()) {
            below = below.max(j as i64 - lo as i64);
            above = above.max(hi as i64 - j as i64);
        }
        columns.push(pr.components);
    }
    if below.max(above) > window as i64 {
        return Err(Error::NotBanded(format!(
            "band radius {} exceeds window {window}",
            below.max(above)
        )));
    }
    let entry = |row: usize, col: usize| -> &Rational { &columns[col][row] };
    let row_sum = |row: usize, coeffs: &[Rational]| -> Rational {
        coeffs
            .iter()
            .enumerate()
            .fold(int(0), |acc, (j, c)| acc + entry(row, j) * c)
    };

    let mut coeffs = vec![pinned.get(&0).cloned().unwrap_or_else(|| int(1))];
    // rows below the first solving row must already vanish
    for row in 0..(1 - below).max(0) as usize {
        if row_sum(row, &coeffs) != zero {
            return Err(Error::Inconsistent(row as i64));
        }
    }
    for k in 1..=n_max {
        let row = k as i64 - below;
        if row < 0 {
            return Err(Error::NotBanded(format!("no equation determines index {k}")));
        }
        let row = row as usize;
        let lead = entry(row, k).clone();
        let rest = row_sum(row, &coeffs);
        if lead == zero {
            match pinned.get(&k) {
                Some(v) if rest == zero => coeffs.push(v.clone()),
                Some(_) => return Err(Error::Inconsistent(row as i64)),
                None => return Err(Error::Resonant(k)),
            }
        } else {
            coeffs.push(-rest / lead);
        }
    }
    Ok(RecurrenceSolution {
        coeffs,
        below: below as usize,
        above: above as usize,
    })
}

pub fn recurrence_solve(
    p: &ParamSet,
    prefactor: &Rational,
    basis: &BasisDescriptor,
    n_max: usize,
) -> Result<RecurrenceSolution> {
    let op = build_operator(p)?;
    recurrence_solve_op(&op, &p.q, prefactor, basis, n_max, DEFAULT_WINDOW, &BTreeMap::new())
}

/// Displayed four-term recurrence for the x^λ series around
/// x = q^{l₁−1/2}t₁ (branch (1,2)); D2 carries extra (1 − q^{λ+α₂+m}) factors.
pub fn verify_four_term_recurrence(p: &ParamSet, coeffs: &[Rational]) -> Result<bool> {
    let q = &p.q;
    let big_q = p.lam_al1();
    let q2 = match p.family {
        Family::D2 => Some(&p.lam * p.alpha2()?),
        Family::C12 => None,
        f => {
            return Err(Error::Constraint(vec![format!(
                "four-term recurrence is stated for D2 and C12, not {f}"
            )]))
        }
    };
    let h1 = p.h1()? / p.lo1()?;
    let h2 = p.h2()? * &p.t2 / (p.lo1()? * &p.t1);
    let a = |n: i64| -> Rational {
        if n < 0 || n as usize >= coeffs.len() {
            int(0)
        } else {
            coeffs[n as usize].clone()
        }
    };
    let qp = |m: i64| -> Rational { crate::qalg::Scalar::pow_i(q, m) };
    let one = int(1);
    let f2 = |m: i64| -> Rational { q2.as_ref().map_or(int(1), |v| &one - v * qp(m)) };
    let den = |m: i64| -> Rational { (&one - &h1 * qp(m)) * (&one - &h2 * qp(m)) * (&one - qp(m)) };
    let num = |m: i64| -> Rational { (&one - &big_q * qp(m)) * f2(m) };
    let k = &one + q.recip();
    for n in -1..(coeffs.len() as i64 - 1) {
        let r = den(n + 1) * a(n + 1) - q * num(n) * a(n) - qp(3) * &k * den(n) * a(n)
            + qp(4) * &k * num(n - 1) * a(n - 1)
            + qp(5) * den(n - 1) * a(n - 1)
            - qp(6) * num(n - 2) * a(n - 2);
        if r != int(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The (0,2) operator is invariant under (t₁, q^{h₁}) ↔ (t₂, q^{h₂}); the
/// (2,0) operator under (t₁, q^{l₁}) ↔ (t₂, q^{l₂}).
pub fn verify_symmetry(p: &ParamSet) -> Result<bool> {
    match p.family {
        Family::B02 | Family::B20 => Ok(build_operator(p)? == build_operator(&p.swap_points())?),
        f => Err(Error::Constraint(vec![format!(
            "point-swap symmetry is stated for B02 and B20, not {f}"
        )])),
    }
}
