use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{format_rational, Rational, Scalar};

/// Finite Laurent polynomial Σ cₖ xᵏ; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<T: Scalar = Rational> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Scalar> Default for LaurentPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(deg: i64, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(deg, c);
        p
    }

    /// `c0 + c1 x`, used to build factored coefficients.
    pub fn linear(c0: T, c1: T) -> Self {
        Self::from_terms([(0, c0), (1, c1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, deg: i64, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&deg) {
            Some(old) => {
                let v = old + c;
                if !v.is_zero() {
                    self.coeffs.insert(deg, v);
                }
            }
            None => {
                self.coeffs.insert(deg, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, deg: i64) -> T {
        self.coeffs.get(&deg).cloned().unwrap_or_else(T::zero)
    }

    pub fn get(&self, deg: i64) -> Option<&T> {
        self.coeffs.get(&deg)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &T)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms().map(|(d, v)| (d, v.clone() * c.clone())))
    }

    /// Multiplication by xᵏ.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// p(x) ↦ p(r·x).
    pub fn scale_arg(&self, r: &T) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (d, c.clone() * r.pow_i(d))))
    }

    pub fn eval(&self, x: &T) -> T {
        self.terms().fold(T::zero(), |acc, (d, c)| acc + c.clone() * x.pow_i(d))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(d, _)| *d != 0)
                .map(|(d, c)| (d - 1, c.clone() * T::from_int(d))),
        )
    }

    /// Keeps only the degrees accepted by `keep`.
    pub fn filter_degrees(&self, keep: impl Fn(i64) -> bool) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(d, _)| keep(**d))
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        LaurentPoly::from_terms(self.terms().map(|(d, c)| (d, f(c))))
    }

    pub fn try_map<U: Scalar, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<LaurentPoly<U>, E> {
        let mut out = LaurentPoly::zero();
        for (d, c) in self.terms() {
            out.add_term(d, f(c)?);
        }
        Ok(out)
    }

    /// Exact division by (1 − αx); `None` when the factor does not divide.
    pub fn div_one_minus(&self, alpha: &T) -> Option<Self> {
        if alpha.is_zero() {
            return Some(self.clone());
        }
        let (lo, hi) = match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(Self::zero()),
        };
        // q(x)(1 − αx) = p(x): q_k = p_k + α q_{k−1}, from the bottom up
        let mut out = Self::zero();
        let mut prev = T::zero();
        for d in lo..hi {
            let v = self.coeff(d) + alpha.clone() * prev;
            out.add_term(d, v.clone());
            prev = v;
        }
        let top = self.coeff(hi) + alpha.clone() * prev;
        if top.is_zero() {
            Some(out)
        } else {
            None
        }
    }

    /// Multiplication by (1 − αx).
    pub fn mul_one_minus(&self, alpha: &T) -> Self {
        self - &self.shift(1).scale(alpha)
    }
}

impl<'a, T: Scalar> Add<&'a LaurentPoly<T>> for &'a LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: &'a LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl<'a, T: Scalar> Sub<&'a LaurentPoly<T>> for &'a LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: &'a LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, -c.clone());
        }
        out
    }
}

impl<'a, T: Scalar> Mul<&'a LaurentPoly<T>> for &'a LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &'a LaurentPoly<T>) -> LaurentPoly<T> {
        let mut out = LaurentPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        self.map(|c| -c.clone())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr<LaurentPoly<T>> for LaurentPoly<T> {
            type Output = LaurentPoly<T>;
            fn $m(self, rhs: LaurentPoly<T>) -> LaurentPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Scalar> Neg for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        -&self
    }
}

impl fmt::Display for LaurentPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms().rev() {
            let mut s = format_rational(c);
            if !first {
                if let Some(rest) = s.strip_prefix('-') {
                    write!(f, " - ")?;
                    s = rest.to_string();
                } else {
                    write!(f, " + ")?;
                }
            }
            first = false;
            match d {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s}*x")?,
                _ => write!(f, "{s}*x^{d}")?,
            }
        }
        Ok(())
    }
}
