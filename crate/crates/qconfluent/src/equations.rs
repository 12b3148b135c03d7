//! The five equation families as three-term operators
//! A(x)g(x/q) + B(x)g(x) + C(x)g(qx), built from multiplicative generators.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qalg::{format_rational, int, parse_rational, LaurentPoly, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Degree-two variant, both singular coefficients quadratic.
    D2,
    /// Type (1,2): the g(qx) coefficient drops to degree one.
    C12,
    /// Type (0,2): the g(qx) coefficient is constant.
    B02,
    /// Type (2,1): the g(x/q) coefficient drops to degree one.
    C21,
    /// Type (2,0): the g(x/q) coefficient is constant.
    B20,
}

pub const ALL_FAMILIES: [Family; 5] = [Family::D2, Family::C12, Family::B02, Family::C21, Family::B20];

/// Optional generators; q, s, t1, t2, a1 and Lam are always present.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    A1,
    A2,
    L1,
    L2,
    Al2,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::A1,
        Generator::A2,
        Generator::L1,
        Generator::L2,
        Generator::Al2,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Generator::A1 => "A1",
            Generator::A2 => "A2",
            Generator::L1 => "L1",
            Generator::L2 => "L2",
            Generator::Al2 => "a2",
        }
    }
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::D2 => "D2",
            Family::C12 => "C12",
            Family::B02 => "B02",
            Family::C21 => "C21",
            Family::B20 => "B20",
        }
    }

    pub fn uses(self, g: Generator) -> bool {
        use Generator::*;
        match self {
            Family::D2 => true,
            Family::C12 => matches!(g, A1 | A2 | L1),
            Family::B02 => matches!(g, A1 | A2),
            Family::C21 => matches!(g, A1 | L1 | L2),
            Family::B20 => matches!(g, L1 | L2),
        }
    }

    /// Expected (deg A, deg B, deg C).
    pub fn degrees(self) -> (i64, i64, i64) {
        match self {
            Family::D2 => (2, 2, 2),
            Family::C12 => (2, 2, 1),
            Family::B02 => (2, 2, 0),
            Family::C21 => (1, 2, 2),
            Family::B20 => (0, 2, 2),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::unknown("family", s))
    }
}

/// Exact values of q, q^{1/2}, t₁, t₂ and the q-powers q^{h_i}, q^{l_i},
/// q^{α_i}, q^λ of one equation instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<T: Scalar = Rational> {
    pub family: Family,
    pub q: T,
    pub s: T,
    pub t1: T,
    pub t2: T,
    pub a1h: Option<T>,
    pub a2h: Option<T>,
    pub l1: Option<T>,
    pub l2: Option<T>,
    pub al1: T,
    pub al2: Option<T>,
    pub lam: T,
}

fn need<T>(v: &Option<T>, g: Generator) -> Result<&T> {
    v.as_ref().ok_or(Error::MissingGenerator(g.key()))
}

impl<T: Scalar> ParamSet<T> {
    pub fn get(&self, g: Generator) -> Option<&T> {
        match g {
            Generator::A1 => self.a1h.as_ref(),
            Generator::A2 => self.a2h.as_ref(),
            Generator::L1 => self.l1.as_ref(),
            Generator::L2 => self.l2.as_ref(),
            Generator::Al2 => self.al2.as_ref(),
        }
    }

    pub fn h1(&self) -> Result<&T> {
        need(&self.a1h, Generator::A1)
    }
    pub fn h2(&self) -> Result<&T> {
        need(&self.a2h, Generator::A2)
    }
    pub fn lo1(&self) -> Result<&T> {
        need(&self.l1, Generator::L1)
    }
    pub fn lo2(&self) -> Result<&T> {
        need(&self.l2, Generator::L2)
    }
    pub fn alpha2(&self) -> Result<&T> {
        need(&self.al2, Generator::Al2)
    }

    /// q^{h_i}, by branch index 1 or 2.
    pub fn h(&self, i: u8) -> Result<&T> {
        if i == 1 {
            self.h1()
        } else {
            self.h2()
        }
    }

    /// q^{l_i}, by branch index 1 or 2.
    pub fn l(&self, i: u8) -> Result<&T> {
        if i == 1 {
            self.lo1()
        } else {
            self.lo2()
        }
    }

    pub fn t(&self, i: u8) -> &T {
        if i == 1 {
            &self.t1
        } else {
            &self.t2
        }
    }

    /// q^{λ+α₁}, the numerator parameter shared by every catalog series.
    pub fn lam_al1(&self) -> T {
        self.lam.clone() * self.al1.clone()
    }

    /// Exchange the labels 1 ↔ 2 of (t, q^h, q^l).
    pub fn swap_points(&self) -> Self {
        let mut p = self.clone();
        std::mem::swap(&mut p.t1, &mut p.t2);
        std::mem::swap(&mut p.a1h, &mut p.a2h);
        std::mem::swap(&mut p.l1, &mut p.l2);
        p
    }

    /// Exchange q^{α₁} ↔ q^{α₂} (degree-two family only).
    pub fn swap_alphas(&self) -> Result<Self> {
        let mut p = self.clone();
        let a2 = self.alpha2()?.clone();
        p.al2 = Some(std::mem::replace(&mut p.al1, a2));
        Ok(p)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ParamSet<U> {
        ParamSet {
            family: self.family,
            q: f(&self.q),
            s: f(&self.s),
            t1: f(&self.t1),
            t2: f(&self.t2),
            a1h: self.a1h.as_ref().map(&f),
            a2h: self.a2h.as_ref().map(&f),
            l1: self.l1.as_ref().map(&f),
            l2: self.l2.as_ref().map(&f),
            al1: f(&self.al1),
            al2: self.al2.as_ref().map(&f),
            lam: f(&self.lam),
        }
    }
}

/// Lists every violated invariant; empty means admissible.
pub fn check_constraints(p: &ParamSet) -> Vec<String> {
    let mut v = Vec::new();
    let fam = p.family;
    if &p.s * &p.s != p.q {
        v.push("s²≠q".to_string());
    }
    if p.q == int(0) || p.q == int(1) {
        v.push("q must differ from 0 and 1".to_string());
    }
    for (name, val) in [
        ("s", &p.s),
        ("t1", &p.t1),
        ("t2", &p.t2),
        ("a1", &p.al1),
        ("Lam", &p.lam),
    ] {
        if *val == int(0) {
            v.push(format!("generator {name} is zero"));
        }
    }
    for g in Generator::ALL {
        match (fam.uses(g), p.get(g)) {
            (true, None) => v.push(format!("missing generator {}", g.key())),
            (false, Some(_)) => v.push(format!("unused generator {} for {fam}", g.key())),
            (true, Some(x)) if *x == int(0) => v.push(format!("generator {} is zero", g.key())),
            _ => {}
        }
    }
    if fam == Family::D2 && v.is_empty() {
        let lhs = &p.lam * &p.lam * p.l1.as_ref().unwrap() * p.l2.as_ref().unwrap() * &p.al1 * p.al2.as_ref().unwrap();
        let rhs = &p.q * p.a1h.as_ref().unwrap() * p.a2h.as_ref().unwrap();
        if lhs != rhs {
            v.push("Lam²·L1·L2·a1·a2 ≠ q·A1·A2".to_string());
        }
    }
    v
}

pub fn validate(p: &ParamSet) -> Result<()> {
    let v = check_constraints(p);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Constraint(v))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTermOperator<T: Scalar = Rational> {
    /// Coefficient of g(x/q).
    pub a: LaurentPoly<T>,
    /// Coefficient of g(x).
    pub b: LaurentPoly<T>,
    /// Coefficient of g(qx).
    pub c: LaurentPoly<T>,
}

impl<T: Scalar> ThreeTermOperator<T> {
    pub fn scale(&self, k: &T) -> Self {
        Self {
            a: self.a.scale(k),
            b: self.b.scale(k),
            c: self.c.scale(k),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ThreeTermOperator<U> {
        ThreeTermOperator {
            a: self.a.map(&f),
            b: self.b.map(&f),
            c: self.c.map(&f),
        }
    }

    pub fn try_map<U: Scalar, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<ThreeTermOperator<U>, E> {
        Ok(ThreeTermOperator {
            a: self.a.try_map(&f)?,
            b: self.b.try_map(&f)?,
            c: self.c.try_map(&f)?,
        })
    }

    pub fn degrees(&self) -> (Option<i64>, Option<i64>, Option<i64>) {
        (self.a.max_degree(), self.b.max_degree(), self.c.max_degree())
    }

    /// Largest degree over the three coefficients.
    pub fn top_degree(&self) -> i64 {
        [self.a.max_degree(), self.b.max_degree(), self.c.max_degree()]
            .into_iter()
            .flatten()
            .max()
            .unwrap_or(0)
    }

    /// `Some(k)` with self = k·other, k fixed by the leading g(x/q) coefficients.
    pub fn proportional_to(&self, other: &Self) -> Option<T> {
        let top = other.a.max_degree()?;
        if self.a.max_degree() != Some(top) {
            return None;
        }
        let k = self.a.coeff(top) / other.a.coeff(top);
        if *self == other.scale(&k) {
            Some(k)
        } else {
            None
        }
    }
}

/// (x − r)
fn x_minus<T: Scalar>(r: T) -> LaurentPoly<T> {
    LaurentPoly::linear(-r, T::one())
}

/// (1 − k x)
fn one_minus<T: Scalar>(k: T) -> LaurentPoly<T> {
    LaurentPoly::linear(T::one(), -k)
}

fn quad<T: Scalar>(c2: T, c1: T, c0: T) -> LaurentPoly<T> {
    LaurentPoly::from_terms([(2, c2), (1, c1), (0, c0)])
}

/// Builds the operator after validating the parameter set.
pub fn build_operator(p: &ParamSet) -> Result<ThreeTermOperator> {
    validate(p)?;
    build_operator_unchecked(p)
}

/// Substitutes generators into the displayed coefficients; only presence of
/// the needed generators is checked, so this also runs over rational
/// functions of an auxiliary variable.
pub fn build_operator_unchecked<T: Scalar>(p: &ParamSet<T>) -> Result<ThreeTermOperator<T>> {
    let (q, s, t1, t2) = (p.q.clone(), p.s.clone(), p.t1.clone(), p.t2.clone());
    let (a1, lam) = (p.al1.clone(), p.lam.clone());
    let one = T::one;
    Ok(match p.family {
        Family::D2 => {
            let (h1, h2, l1, l2, a2) = (
                p.h1()?.clone(),
                p.h2()?.clone(),
                p.lo1()?.clone(),
                p.lo2()?.clone(),
                p.alpha2()?.clone(),
            );
            let a = &x_minus(h1.clone() * s.clone() * t1.clone()) * &x_minus(h2.clone() * s.clone() * t2.clone());
            let c = (&x_minus(l1.clone() * t1.clone() / s.clone()) * &x_minus(l2.clone() * t2.clone() / s.clone()))
                .scale(&(a1.clone() * a2.clone()));
            let pp = h1.clone() * h2.clone() * s.clone() / lam;
            let e = -(pp.clone() * ((one() / h2 + one() / l2) * t1.clone() + (one() / h1 + one() / l1) * t2.clone()));
            let b = -quad(a1 + a2, e, pp * (s.clone() + one() / s) * t1 * t2);
            ThreeTermOperator { a, b, c }
        }
        Family::C12 => {
            let (h1, h2, l1) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone());
            let a = &x_minus(h1.clone() * s.clone() * t1.clone()) * &x_minus(h2.clone() * s.clone() * t2.clone());
            let k = h1.clone() * h2.clone() * s.clone() / (l1.clone() * lam.clone() * lam.clone()) * t2.clone();
            let c = LaurentPoly::linear(k.clone() * l1.clone() * t1.clone() / s.clone(), -k);
            let mid = h1.clone() * h2.clone() * s / lam.clone()
                * (t1.clone() / h2.clone() + t2.clone() / h1.clone() + t2.clone() / l1);
            let b = -quad(a1, -mid, h1 * h2 / lam * (q + one()) * t1 * t2);
            ThreeTermOperator { a, b, c }
        }
        Family::B02 => {
            let (h1, h2) = (p.h1()?.clone(), p.h2()?.clone());
            let lam2 = lam.clone() * lam.clone();
            let a = (&one_minus(one() / (h1.clone() * s.clone() * t1.clone()))
                * &one_minus(one() / (h2.clone() * s.clone() * t2.clone())))
                .scale(&(q.clone() * lam2.clone()));
            let b = -quad(
                a1 * lam2 / (h1.clone() * h2.clone() * t1.clone() * t2.clone()),
                -(lam.clone() * s * (one() / (h1 * t1) + one() / (h2 * t2))),
                lam * (q + one()),
            );
            ThreeTermOperator {
                a,
                b,
                c: LaurentPoly::one(),
            }
        }
        Family::C21 => {
            let (h1, l1, l2) = (p.h1()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let c = &x_minus(l1.clone() * t1.clone() / s.clone()) * &x_minus(l2.clone() * t2.clone() / s.clone());
            let k = -(l1.clone() * l2.clone() * lam.clone() * lam.clone() / (h1.clone() * s.clone())) * t2.clone();
            let a = LaurentPoly::linear(-(k.clone() * h1.clone() * s.clone() * t1.clone()), k);
            let mid = l1.clone() * l2.clone() * lam.clone() / s
                * (t1.clone() / l2.clone() + (one() / h1 + one() / l1.clone()) * t2.clone());
            let b = -quad(one() / a1, -mid, l1 * l2 * lam * (one() + one() / q) * t1 * t2);
            ThreeTermOperator { a, b, c }
        }
        Family::B20 => {
            let (l1, l2) = (p.lo1()?.clone(), p.lo2()?.clone());
            let lam2 = lam.clone() * lam.clone();
            let c = (&one_minus(s.clone() / (l1.clone() * t1.clone()))
                * &one_minus(s.clone() / (l2.clone() * t2.clone())))
                .scale(&(one() / (q.clone() * lam2.clone())));
            let b = -quad(
                one() / (a1 * l1.clone() * l2.clone() * lam2 * t1.clone() * t2.clone()),
                -(one() / (lam.clone() * s) * (one() / (l1 * t1) + one() / (l2 * t2))),
                one() / lam * (one() + one() / q),
            );
            ThreeTermOperator {
                a: LaurentPoly::one(),
                b,
                c,
            }
        }
    })
}

/// R(x) with x^μ·R(x) the residual of g = x^μ S(x), P = q^μ.
pub fn apply_operator<T: Scalar>(
    op: &ThreeTermOperator<T>,
    q: &T,
    p: &T,
    s: &LaurentPoly<T>,
) -> Result<LaurentPoly<T>> {
    if p.is_zero() {
        return Err(Error::ZeroPrefactor);
    }
    let down = s.scale_arg(&q.recip()).scale(&p.recip());
    let up = s.scale_arg(q).scale(p);
    Ok(&(&(&op.a * &down) + &(&op.b * s)) + &(&op.c * &up))
}

/// Prefactor exponents μ used by catalog entries, with P = q^μ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Prefactor {
    /// μ = λ
    Lambda,
    /// μ = −α₁
    NegAlpha1,
    /// μ = +α₁
    PosAlpha1,
    /// μ = 2λ+α₁−h₁+l₁−1
    GaugeC,
    /// μ = 2λ+α₁−1
    GaugeB,
}

impl Prefactor {
    pub const ALL: [Prefactor; 5] = [
        Prefactor::Lambda,
        Prefactor::NegAlpha1,
        Prefactor::PosAlpha1,
        Prefactor::GaugeC,
        Prefactor::GaugeB,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Prefactor::Lambda => "lambda",
            Prefactor::NegAlpha1 => "-alpha1",
            Prefactor::PosAlpha1 => "+alpha1",
            Prefactor::GaugeC => "2lambda+alpha1-h1+l1-1",
            Prefactor::GaugeB => "2lambda+alpha1-1",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.id() == id)
            .ok_or_else(|| Error::unknown("prefactor", id))
    }

    /// Generator monomial equal to q^μ.
    pub fn scale<T: Scalar>(self, p: &ParamSet<T>) -> Result<T> {
        let lam2 = p.lam.clone() * p.lam.clone();
        Ok(match self {
            Prefactor::Lambda => p.lam.clone(),
            Prefactor::NegAlpha1 => p.al1.recip(),
            Prefactor::PosAlpha1 => p.al1.clone(),
            Prefactor::GaugeC => lam2 * p.al1.clone() * p.lo1()?.clone() / (p.h1()?.clone() * p.q.clone()),
            Prefactor::GaugeB => lam2 * p.al1.clone() / p.q.clone(),
        })
    }
}

/// Prefactors appearing in the family's catalog entries.
pub fn family_exponent_data(fam: Family) -> Vec<Prefactor> {
    match fam {
        Family::D2 => vec![Prefactor::Lambda, Prefactor::NegAlpha1, Prefactor::PosAlpha1],
        Family::C12 | Family::C21 => vec![Prefactor::Lambda, Prefactor::NegAlpha1, Prefactor::GaugeC],
        Family::B02 | Family::B20 => vec![Prefactor::Lambda, Prefactor::NegAlpha1, Prefactor::GaugeB],
    }
}

// ---------------------------------------------------------------- JSON

#[derive(Serialize, Deserialize)]
struct ParamJson {
    family: String,
    q: String,
    s: String,
    t1: String,
    t2: String,
    #[serde(rename = "A1", default, skip_serializing_if = "Option::is_none")]
    a1h: Option<String>,
    #[serde(rename = "A2", default, skip_serializing_if = "Option::is_none")]
    a2h: Option<String>,
    #[serde(rename = "L1", default, skip_serializing_if = "Option::is_none")]
    l1: Option<String>,
    #[serde(rename = "L2", default, skip_serializing_if = "Option::is_none")]
    l2: Option<String>,
    a1: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a2: Option<String>,
    #[serde(rename = "Lam")]
    lam: String,
}

impl ParamSet {
    pub fn to_json_value(&self) -> serde_json::Value {
        let o = |v: &Option<Rational>| v.as_ref().map(format_rational);
        serde_json::to_value(ParamJson {
            family: self.family.to_string(),
            q: format_rational(&self.q),
            s: format_rational(&self.s),
            t1: format_rational(&self.t1),
            t2: format_rational(&self.t2),
            a1h: o(&self.a1h),
            a2h: o(&self.a2h),
            l1: o(&self.l1),
            l2: o(&self.l2),
            a1: format_rational(&self.al1),
            a2: o(&self.al2),
            lam: format_rational(&self.lam),
        })
        .expect("plain strings serialize")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let j: ParamJson = serde_json::from_value(v)?;
        let o = |v: &Option<String>| v.as_deref().map(parse_rational).transpose();
        Ok(ParamSet {
            family: j.family.parse()?,
            q: parse_rational(&j.q)?,
            s: parse_rational(&j.s)?,
            t1: parse_rational(&j.t1)?,
            t2: parse_rational(&j.t2)?,
            a1h: o(&j.a1h)?,
            a2h: o(&j.a2h)?,
            l1: o(&j.l1)?,
            l2: o(&j.l2)?,
            al1: parse_rational(&j.a1)?,
            al2: o(&j.a2)?,
            lam: parse_rational(&j.lam)?,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(text)?)
    }

    /// The worked instance q = 1/4, s = 1/2 with every other generator 1.
    pub fn unit(family: Family) -> Self {
        let one = || int(1);
        let pick = |g: Generator| family.uses(g).then(one);
        let mut p = ParamSet {
            family,
            q: crate::qalg::ratio(1, 4),
            s: crate::qalg::ratio(1, 2),
            t1: one(),
            t2: one(),
            a1h: pick(Generator::A1),
            a2h: pick(Generator::A2),
            l1: pick(Generator::L1),
            l2: pick(Generator::L2),
            al1: one(),
            al2: pick(Generator::Al2),
            lam: one(),
        };
        if family == Family::D2 {
            p.l2 = Some(d2_derived_l2(&p));
        }
        p
    }
}

// ---------------------------------------------------------------- sampling

/// Uniform a/b with a, b ∈ [1, 64].
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    crate::qalg::ratio(rng.gen_range(1..=64), rng.gen_range(1..=64))
}

/// L2 = q·A1·A2/(L1·a1·a2·Lam²), the value forced by the degree-two constraint.
pub fn d2_derived_l2(p: &ParamSet) -> Rational {
    let (h1, h2, l1, a2) = (
        p.a1h.clone().unwrap(),
        p.a2h.clone().unwrap(),
        p.l1.clone().unwrap(),
        p.al2.clone().unwrap(),
    );
    &p.q * h1 * h2 / (l1 * &p.al1 * a2 * &p.lam * &p.lam)
}

/// Random admissible parameters: every free generator a/b with a, b ∈ [1, 64],
/// and s = a/b < 1 so that q = s² ∈ (0, 1).
pub fn random_params<R: Rng + ?Sized>(family: Family, rng: &mut R) -> ParamSet {
    let s = loop {
        let (a, b) = (rng.gen_range(1..=64), rng.gen_range(1..=64));
        if a < b {
            break crate::qalg::ratio(a, b);
        }
    };
    let mut draw = || random_rational(rng);
    let (t1, t2, al1, lam) = (draw(), draw(), draw(), draw());
    let mut opt = |g: Generator| family.uses(g).then(|| random_rational(rng));
    let (a1h, a2h, l1, l2, al2) = (
        opt(Generator::A1),
        opt(Generator::A2),
        opt(Generator::L1),
        opt(Generator::L2),
        opt(Generator::Al2),
    );
    let mut p = ParamSet {
        family,
        q: &s * &s,
        s,
        t1,
        t2,
        a1h,
        a2h,
        l1,
        l2,
        al1,
        al2,
        lam,
    };
    if family == Family::D2 {
        p.l2 = Some(d2_derived_l2(&p));
    }
    p
}

/// Forces q^{λ+α₁} = target by solving for a1 (re-deriving L2 for D2).
pub fn with_lam_al1(p: &ParamSet, target: &Rational) -> ParamSet {
    let mut out = p.clone();
    out.al1 = target / &p.lam;
    if out.family == Family::D2 {
        out.l2 = Some(d2_derived_l2(&out));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn c12_worked_example() {
        let op = build_operator(&ParamSet::unit(Family::C12)).unwrap();
        let half = ratio(1, 2);
        let a = &x_minus(half.clone()) * &x_minus(half.clone());
        assert_eq!(op.a, a);
        assert_eq!(op.c, LaurentPoly::linear(int(1), -half));
        assert_eq!(op.b, quad(int(-1), ratio(3, 2), ratio(-5, 4)));
        assert!((&(&op.a + &op.b) + &op.c).is_zero());
    }

    #[test]
    fn apply_examples() {
        let p = ParamSet::unit(Family::C12);
        let op = build_operator(&p).unwrap();
        let one = int(1);
        assert!(apply_operator(&op, &p.q, &one, &LaurentPoly::one()).unwrap().is_zero());
        let r = apply_operator(&op, &p.q, &one, &LaurentPoly::monomial(1, int(1))).unwrap();
        assert_eq!(r, LaurentPoly::from_terms([(3, int(3)), (2, ratio(-21, 8))]));
        assert!(apply_operator(&op, &p.q, &one, &LaurentPoly::zero()).unwrap().is_zero());
        assert!(apply_operator(&op, &p.q, &int(0), &LaurentPoly::one()).is_err());
    }

    #[test]
    fn constraint_violations_are_listed() {
        let mut p = ParamSet::unit(Family::C12);
        p.s = ratio(1, 3);
        assert!(check_constraints(&p).iter().any(|v| v == "s²≠q"));
        let mut p = ParamSet::unit(Family::C12);
        p.al2 = Some(int(1));
        assert!(check_constraints(&p).iter().any(|v| v.contains("unused generator a2")));
        assert!(check_constraints(&ParamSet::unit(Family::D2)).is_empty());
        let mut p = ParamSet::unit(Family::D2);
        p.l2 = Some(int(3));
        assert_eq!(check_constraints(&p).len(), 1);
    }

    #[test]
    fn prefactor_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_params(Family::C12, &mut rng);
        assert_eq!(Prefactor::Lambda.scale(&p).unwrap(), p.lam);
        assert_eq!(Prefactor::NegAlpha1.scale(&p).unwrap(), p.al1.recip());
        assert_eq!(Prefactor::GaugeB.scale(&p).unwrap(), &p.lam * &p.lam * &p.al1 / &p.q);
        assert!(Prefactor::from_id("mu").is_err());
        assert_eq!(Prefactor::from_id("lambda").unwrap(), Prefactor::Lambda);
    }

    #[test]
    fn json_roundtrip_and_schema() {
        let p = ParamSet::unit(Family::C12);
        let text = p.to_json();
        assert_eq!(
            text,
            r#"{"family":"C12","q":"1/4","s":"1/2","t1":"1","t2":"1","A1":"1","A2":"1","L1":"1","a1":"1","Lam":"1"}"#
        );
        assert_eq!(ParamSet::from_json(&text).unwrap(), p);
        assert!(ParamSet::from_json(&text.replace("1/4", "1/0")).is_err());
    }

    #[test]
    fn random_d2_satisfies_constraint() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_params(Family::D2, &mut rng);
            assert!(check_constraints(&p).is_empty());
        }
    }
}
