use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, LaurentPoly, Rational, Scalar};

/// Rational function num/den of an auxiliary variable u, with Laurent
/// polynomial numerator and denominator over the rationals.
///
/// Used to carry a vanishing generator symbolically so limits u → 0 are exact.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Long division of Laurent polynomials; `Some(q)` iff `a = q·b` exactly.
fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let (bmin, bmax) = (b.min_degree()?, b.max_degree()?);
    let lead = b.coeff(bmax);
    let mut rest = a.clone();
    let mut quot = LaurentPoly::zero();
    while let Some(top) = rest.max_degree() {
        let bottom = rest.min_degree().unwrap_or(top);
        // every remaining term must stay divisible: top − bottom ≥ bmax − bmin
        if top - bottom < bmax - bmin {
            return None;
        }
        let k = top - bmax;
        let c = rest.coeff(top) / lead.clone();
        for (d, v) in b.terms() {
            rest.add_term(d + k, -(v.clone() * c.clone()));
        }
        quot.add_term(k, c);
    }
    Some(quot)
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        let mut r = Self { num, den };
        r.normalize();
        r
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// The auxiliary variable u.
    pub fn var() -> Self {
        Self::from_poly(LaurentPoly::monomial(1, int(1)))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        if self.den.len() == 1 {
            let (d, c) = self.den.terms().next().map(|(d, c)| (d, c.clone())).unwrap();
            self.num = self.num.shift(-d).scale(&(int(1) / c));
            self.den = LaurentPoly::one();
            return;
        }
        if let Some(q) = exact_div(&self.num, &self.den) {
            self.num = q;
            self.den = LaurentPoly::one();
            return;
        }
        // pin the lowest denominator term to 1·u⁰
        let (d, c) = self.den.terms().next().map(|(d, c)| (d, c.clone())).unwrap();
        let inv = int(1) / c;
        self.num = self.num.shift(-d).scale(&inv);
        self.den = self.den.shift(-d).scale(&inv);
    }

    /// Order of vanishing at u = 0 (negative for a pole); `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        Some(self.num.min_degree()? - self.den.min_degree()?)
    }

    /// Leading coefficient of the expansion at u = 0.
    pub fn leading(&self) -> Option<Rational> {
        let n = self.num.min_degree()?;
        let d = self.den.min_degree()?;
        Some(self.num.coeff(n) / self.den.coeff(d))
    }

    /// Exact value at u = 0 when finite.
    pub fn limit_at_zero(&self) -> Option<Rational> {
        match self.valuation() {
            None => Some(int(0)),
            Some(v) if v > 0 => Some(int(0)),
            Some(0) => self.leading(),
            _ => None,
        }
    }

    pub fn eval(&self, u: &Rational) -> Option<Rational> {
        if u.is_zero() {
            return self.limit_at_zero();
        }
        let d = self.den.eval(u);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(u) / d)
        }
    }

    /// True when the function is a polynomial in u (no poles anywhere).
    pub fn is_polynomial(&self) -> bool {
        self.den == LaurentPoly::one() && self.num.min_degree().is_none_or(|d| d >= 0)
    }

    /// First `count` Taylor coefficients at u = 0 (requires no pole at 0).
    pub fn taylor(&self, count: usize) -> Option<Vec<Rational>> {
        let dmin = self.den.min_degree()?;
        if self.num.min_degree().is_some_and(|n| n < dmin) {
            return None;
        }
        let den = self.den.shift(-dmin);
        let num = self.num.shift(-dmin);
        let d0 = den.coeff(0);
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for k in 0..count as i64 {
            let mut v = num.coeff(k);
            for (j, dj) in den.terms().filter(|(j, _)| *j > 0 && *j <= k) {
                v -= dj.clone() * out[(k - j) as usize].clone();
            }
            out.push(v / d0.clone());
        }
        Some(out)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::constant(int(1))
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den);
        }
        if let Some(k) = exact_div(&rhs.den, &self.den) {
            return RatFunc::new(&(&self.num * &k) + &rhs.num, rhs.den);
        }
        if let Some(k) = exact_div(&self.den, &rhs.den) {
            return RatFunc::new(&self.num + &(&rhs.num * &k), self.den);
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        // cancel across before multiplying to keep degrees small
        let (mut n1, mut d1, mut n2, mut d2) = (self.num, self.den, rhs.num, rhs.den);
        if d2.len() > 1 {
            if let Some(k) = exact_div(&n1, &d2) {
                n1 = k;
                d2 = LaurentPoly::one();
            }
        }
        if d1.len() > 1 {
            if let Some(k) = exact_div(&n2, &d1) {
                n2 = k;
                d1 = LaurentPoly::one();
            }
        }
        RatFunc::new(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self * RatFunc {
            num: rhs.den,
            den: rhs.num,
        }
    }
}

impl Scalar for RatFunc {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num.to_string().replace('x', "u"))
        } else {
            write!(
                f,
                "({}) / ({})",
                self.num.to_string().replace('x', "u"),
                self.den.to_string().replace('x', "u")
            )
        }
    }
}
