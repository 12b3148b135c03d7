use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qalg::{
    format_rational, int, ratio, rising_factorial, to_f64, BasisDescriptor, BasisTable, LaurentPoly, Rational,
};
use crate::solutions::formulas::{t31_ii_terms, t41_i_reduced_terms, t51_i_terms};

/// p₂(x)y'' + p₁(x)y' + p₀(x)y.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitODE {
    pub p2: LaurentPoly,
    pub p1: LaurentPoly,
    pub p0: LaurentPoly,
}

impl LimitODE {
    /// The q → 1 limit of the singly confluent equations, in g.
    pub fn kummer_x(
        big_t: &Rational,
        t1: &Rational,
        lam: &Rational,
        al1: &Rational,
        h1: &Rational,
        l1: &Rational,
    ) -> Self {
        let c = h1 - l1 + int(1);
        let x = LaurentPoly::monomial(1, int(1));
        let x_t1 = LaurentPoly::linear(-t1.clone(), int(1));
        let x2 = &x * &x;
        let p2 = &x2 * &x_t1;
        let inner = &(&(&x * &x_t1).scale(big_t) + &x.scale(&c)) - &x_t1.scale(&(lam * int(2)));
        let p1 = &x * &inner;
        let p0 = LaurentPoly::from_terms([
            (2, al1 * big_t),
            (1, lam * (t1 * big_t - h1 + l1 + lam)),
            (0, -(lam * (lam + int(1)) * t1)),
        ]);
        Self { p2, p1, p0 }
    }

    /// Kummer's equation in w = x − t₁ for f = x^λ g:
    /// w f'' + (T w + c) f' + a T f = 0 with c = h₁−l₁+1, a = λ+α₁.
    pub fn kummer_shifted(big_t: &Rational, c: &Rational, a: &Rational) -> Self {
        Self {
            p2: LaurentPoly::monomial(1, int(1)),
            p1: LaurentPoly::linear(c.clone(), big_t.clone()),
            p0: LaurentPoly::constant(a * big_t),
        }
    }

    /// The q → 1 limit of the biconfluent equations, in g.
    pub fn hermite_weber(b: &Rational, lam: &Rational, al1: &Rational) -> Self {
        let b2 = b * b;
        Self {
            p2: LaurentPoly::monomial(2, int(1)),
            p1: LaurentPoly::from_terms([(3, b2.clone()), (1, -(lam * int(2)))]),
            p0: LaurentPoly::from_terms([(2, al1 * &b2), (0, lam * (lam + int(1)))]),
        }
    }
}

/// x^{−μ}·(p₂y'' + p₁y' + p₀y) for y = x^μ·series, restricted to `keep`.
pub fn ode_residual(ode: &LimitODE, series: &LaurentPoly, mu: &Rational, keep: impl Fn(i64) -> bool) -> LaurentPoly {
    let d1 = series.derivative();
    let d2 = d1.derivative();
    // y'/x^μ = S' + μS/x, y''/x^μ = S'' + 2μS'/x + μ(μ−1)S/x²
    let y1 = &d1 + &series.shift(-1).scale(mu);
    let y2 = &(&d2 + &d1.shift(-1).scale(&(mu * int(2)))) + &series.shift(-2).scale(&(mu * (mu - int(1))));
    let r = &(&(&ode.p2 * &y2) + &(&ode.p1 * &y1)) + &(&ode.p0 * series);
    r.filter_degrees(keep)
}

/// Σ_{n≤K} (a)ₙ/((c)ₙ n!)·(−T)ⁿ wⁿ, i.e. ₁F₁(a; c; T(t₁−x)) in w = x − t₁.
pub fn kummer_one_f1(a: &Rational, c: &Rational, big_t: &Rational, k: usize) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    let mut fact = int(1);
    for n in 0..=k {
        if n > 0 {
            fact *= int(n as i64);
        }
        let den = rising_factorial(c, n) * &fact;
        if den.is_zero() {
            return Err(Error::Degenerate(format!("(c)_n vanishes at n={n}")));
        }
        out.add_term(n as i64, rising_factorial(a, n) * (-big_t).pow(n as i32) / den);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HermiteVariant {
    /// (λ+α₁)₂ₙ/(n!B²ⁿ)
    Printed,
    /// (λ+α₁)₂ₙ/(n!(2B²)ⁿ), the coefficients the recurrence actually forces
    Corrected,
}

fn hermite_coeff(a: &Rational, b: &Rational, n: usize, variant: HermiteVariant) -> Rational {
    let mut base = b * b;
    if variant == HermiteVariant::Corrected {
        base *= int(2);
    }
    let fact: Rational = (1..=n as i64).map(int).product();
    rising_factorial(a, 2 * n) / (fact * base.pow(n as i32))
}

/// Σ_{n≤K} bₙ x^{−2n}, to be read with the prefactor x^{−α₁}.
pub fn hermite_formal_series(a: &Rational, b: &Rational, k: usize, variant: HermiteVariant) -> LaurentPoly {
    LaurentPoly::from_terms((0..=k).map(|n| (-2 * n as i64, hermite_coeff(a, b, n, variant))))
}

/// Exponent data for the Kummer studies; the differences named in
/// `KummerSetup::realize` must be integers (l₁ a half-integer).
#[derive(Clone, Debug)]
pub struct KummerSetup {
    pub big_t: Rational,
    pub t1: Rational,
    pub lam: Rational,
    pub al1: Rational,
    pub h1: Rational,
    pub h2: Rational,
    pub l1: Rational,
    pub l2: Rational,
}

fn integral(r: &Rational, what: &str) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::NotRealizable(format!(
            "{what} = {} is not an integer",
            format_rational(r)
        )));
    }
    i64::try_from(r.to_integer()).map_err(|_| Error::NotRealizable(format!("{what} too large")))
}

impl KummerSetup {
    fn a(&self) -> Result<i64> {
        integral(&(&self.lam + &self.al1), "λ+α₁")
    }

    fn c(&self) -> Rational {
        &self.h1 - &self.l1 + int(1)
    }

    fn check_center(&self) -> Result<()> {
        integral(&(&self.l1 - ratio(1, 2)), "l₁−1/2").map(|_| ())
    }

    /// Index where both sides stop: the termination index when λ+α₁ ≤ 0.
    fn truncation(&self, k: usize) -> Result<usize> {
        let a = self.a()?;
        Ok(if a <= 0 { (-a) as usize } else { k + 4 })
    }

    fn target(&self, m: usize) -> Result<LaurentPoly> {
        // ₁F₁ in x: shift w = x − t₁ back
        let f = kummer_one_f1(&int(self.a()?), &self.c(), &self.big_t, m)?;
        let w = LaurentPoly::linear(-self.t1.clone(), int(1));
        let mut out = LaurentPoly::zero();
        let mut wn = LaurentPoly::one();
        for n in 0..=m as i64 {
            out = &out + &wn.scale(&f.coeff(n));
            wn = &wn * &w;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    #[serde(with = "crate::qalg::serde_rational")]
    pub eps: Rational,
    #[serde(with = "crate::qalg::serde_rational")]
    pub max_abs_diff: Rational,
    pub decimal: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// diff(εᵢ₊₁)/diff(εᵢ); None when both vanish
    pub ratios: Vec<Option<f64>>,
    pub decreasing: bool,
    /// every ratio within [1/20, 1/5] (or identically zero differences)
    pub gate: bool,
}

impl ConvergenceTable {
    fn from_rows(rows: Vec<ConvergenceRow>) -> Self {
        let (lo, hi) = (ratio(1, 20), ratio(1, 5));
        let mut ratios = Vec::new();
        let mut decreasing = true;
        let mut gate = true;
        for w in rows.windows(2) {
            let (d0, d1) = (&w[0].max_abs_diff, &w[1].max_abs_diff);
            if d0.is_zero() {
                ratios.push(None);
                if !d1.is_zero() {
                    decreasing = false;
                    gate = false;
                }
                continue;
            }
            let r = d1 / d0;
            ratios.push(Some(to_f64(&r)));
            decreasing &= d1 < d0;
            gate &= r >= lo && r <= hi;
        }
        Self {
            rows,
            ratios,
            decreasing,
            gate,
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["eps", "max_abs_diff", "max_abs_diff_decimal"])?;
        for r in &self.rows {
            w.write_record([
                format_rational(&r.eps),
                format_rational(&r.max_abs_diff),
                format!("{:e}", r.decimal),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
    }
}

fn max_diff(series: &LaurentPoly, target: &LaurentPoly, k: usize) -> Rational {
    (0..=k as i64)
        .map(|d| (series.coeff(d) - target.coeff(d)).abs())
        .max()
        .unwrap_or_else(|| int(0))
}

fn study(
    setup: &KummerSetup,
    eps: &[Rational],
    k: usize,
    coeffs: impl Fn(&Rational, usize) -> Result<Vec<Rational>> + Sync,
) -> Result<ConvergenceTable> {
    setup.a()?;
    setup.check_center()?;
    let m = setup.truncation(k)?;
    let target = setup.target(m)?;
    let row = |e: &Rational| -> Result<ConvergenceRow> {
        if !e.is_positive() {
            return Err(Error::NotRealizable("ε must be positive".into()));
        }
        let q = int(1) + e;
        let c = coeffs(&q, m)?;
        // centre q^{l₁−1/2}t₁
        let centre = q.pow(integral(&(&setup.l1 - ratio(1, 2)), "l₁−1/2")? as i32) * &setup.t1;
        let table = BasisTable::new(BasisDescriptor::poch_asc(centre, q), m)?;
        let series = table.assemble(&c);
        let d = max_diff(&series, &target, k);
        Ok(ConvergenceRow {
            eps: e.clone(),
            decimal: to_f64(&d),
            max_abs_diff: d,
        })
    };
    let rows = crate::runner::par_map(eps, row)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable::from_rows(rows))
}

/// Distance between the (1,2) singly confluent series around q^{l₁−1/2}t₁
/// at q = 1+ε, t₂ = 1/(Tε) and the ₁F₁ target, for each ε.
pub fn kummer_limit_study(setup: &KummerSetup, eps: &[Rational], k: usize) -> Result<ConvergenceTable> {
    kummer_limit_study_signed(setup, eps, k, 1)
}

/// As [`kummer_limit_study`] but with t₂ = sign/(Tε); sign = −1 is the
/// wrong arrow for this family.
pub fn kummer_limit_study_signed(
    setup: &KummerSetup,
    eps: &[Rational],
    k: usize,
    sign: i64,
) -> Result<ConvergenceTable> {
    let a = setup.a()?;
    let e1 = integral(&(&setup.h1 - &setup.l1), "h₁−l₁")?;
    let e2 = integral(&(&setup.h2 - &setup.l1), "h₂−l₁")?;
    study(setup, eps, k, |q, m| {
        let e = q - int(1);
        let t2 = int(sign) / (&setup.big_t * &e);
        let r1 = q.pow(e1 as i32);
        let r2 = q.pow(e2 as i32) * t2 / &setup.t1;
        t31_ii_terms(q, &q.pow(a as i32), &r1, &r2, m)
    })
}

/// The (2,1) variant: the series around q^{l₁−1/2}t₁ at q = 1+ε,
/// t₂ = −1/(Tε).
pub fn kummer_limit_study_c21(setup: &KummerSetup, eps: &[Rational], k: usize) -> Result<ConvergenceTable> {
    kummer_limit_study_c21_signed(setup, eps, k, -1)
}

pub fn kummer_limit_study_c21_signed(
    setup: &KummerSetup,
    eps: &[Rational],
    k: usize,
    sign: i64,
) -> Result<ConvergenceTable> {
    let a = setup.a()?;
    let eb = integral(&(&setup.h1 - &setup.l1), "h₁−l₁")?;
    let ez = integral(&(&setup.h1 - &setup.l2), "h₁−l₂")?;
    study(setup, eps, k, |q, m| {
        let e = q - int(1);
        let t2 = int(sign) / (&setup.big_t * &e);
        // z = q·A1·t1/(Q·L2·t2)
        let z = q.pow((1 + ez - a) as i32) * &setup.t1 / t2;
        t51_i_terms(q, &q.pow(a as i32), &z, &q.pow(eb as i32), m)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HermiteRow {
    pub m: u64,
    pub n: usize,
    #[serde(with = "crate::qalg::serde_rational")]
    pub coefficient: Rational,
    #[serde(with = "crate::qalg::serde_rational")]
    pub printed: Rational,
    #[serde(with = "crate::qalg::serde_rational")]
    pub corrected: Rational,
    pub coefficient_decimal: f64,
    pub diff_printed: f64,
    pub diff_corrected: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HermiteReport {
    pub rows: Vec<HermiteRow>,
    /// odd-index coefficients vanish identically (h₁ = h₂)
    pub odd_vanish: bool,
}

impl HermiteReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "m",
            "n",
            "coefficient",
            "printed",
            "corrected",
            "coefficient_decimal",
            "diff_printed",
            "diff_corrected",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.m.to_string(),
                r.n.to_string(),
                format_rational(&r.coefficient),
                format_rational(&r.printed),
                format_rational(&r.corrected),
                format!("{:e}", r.coefficient_decimal),
                format!("{:e}", r.diff_printed),
                format!("{:e}", r.diff_corrected),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
    }
}

/// Coefficients of x^{−2n} in the (0,2) series at ∞ for q = 1+1/m²,
/// t₁ = m/B, t₂ = −m/B, q^{h₁} = q^{h₂} = q^h, compared with both formal
/// series. Report only.
pub fn hermite_limit_report(b: &Rational, lam_al1: i64, h: i64, ms: &[u64], k: usize) -> Result<HermiteReport> {
    if b.is_zero() {
        return Err(Error::NotRealizable("B must be nonzero".into()));
    }
    let a = int(lam_al1);
    let per_m = |m: &u64| -> Result<(Vec<HermiteRow>, bool)> {
        if *m == 0 {
            return Err(Error::NotRealizable("m must be positive".into()));
        }
        let mm = int(*m as i64);
        let q = int(1) + (&mm * &mm).recip();
        let qh = q.pow(h as i32);
        let t1 = &mm / b;
        let reduced = t41_i_reduced_terms(&q, &q.pow(lam_al1 as i32), &(&qh * &t1), &(&qh * -&t1), 2 * k);
        let odd_vanish = reduced.iter().skip(1).step_by(2).all(Zero::is_zero);
        let rows = (0..=k)
            .map(|n| {
                // s^{2n} = qⁿ
                let c = q.pow(n as i32) * &reduced[2 * n];
                let printed = hermite_coeff(&a, b, n, HermiteVariant::Printed);
                let corrected = hermite_coeff(&a, b, n, HermiteVariant::Corrected);
                HermiteRow {
                    m: *m,
                    n,
                    coefficient_decimal: to_f64(&c),
                    diff_printed: to_f64(&(&c - &printed).abs()),
                    diff_corrected: to_f64(&(&c - &corrected).abs()),
                    coefficient: c,
                    printed,
                    corrected,
                }
            })
            .collect();
        Ok((rows, odd_vanish))
    };
    let mut rows = Vec::new();
    let mut odd_vanish = true;
    for r in crate::runner::par_map(ms, per_m) {
        let (rs, ov) = r?;
        rows.extend(rs);
        odd_vanish &= ov;
    }
    Ok(HermiteReport { rows, odd_vanish })
}
