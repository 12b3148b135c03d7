use serde::{Deserialize, Serialize};

use super::{LaurentPoly, Rational, Scalar};
use crate::error::{Error, Result};

/// Series bases φₙ. Signs and geometric factors live in the coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BasisKind {
    /// x⁻ⁿ
    MonomialDesc,
    /// xⁿ
    MonomialAsc,
    /// (x/c;q)ₙ
    PochAsc,
    /// (c/x;q)ₙ
    PochDesc,
    /// (c/x;q)ₙ (x/d)ⁿ
    MixedAsc,
    /// (x/c;q)ₙ (d/x)ⁿ
    MixedDesc,
}

impl BasisKind {
    pub fn direction(self) -> i64 {
        match self {
            BasisKind::PochAsc | BasisKind::MixedAsc | BasisKind::MonomialAsc => 1,
            BasisKind::PochDesc | BasisKind::MixedDesc | BasisKind::MonomialDesc => -1,
        }
    }

    pub fn uses_center(self) -> bool {
        !matches!(self, BasisKind::MonomialAsc | BasisKind::MonomialDesc)
    }

    pub fn uses_scale(self) -> bool {
        matches!(self, BasisKind::MixedAsc | BasisKind::MixedDesc)
    }

    pub fn code(self) -> &'static str {
        match self {
            BasisKind::MonomialDesc => "MONOMIAL_DESC",
            BasisKind::MonomialAsc => "MONOMIAL_ASC",
            BasisKind::PochAsc => "POCH_ASC",
            BasisKind::PochDesc => "POCH_DESC",
            BasisKind::MixedAsc => "MIXED_ASC",
            BasisKind::MixedDesc => "MIXED_DESC",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisDescriptor<T: Scalar = Rational> {
    pub kind: BasisKind,
    /// Pochhammer center (ignored by monomial kinds).
    pub c: T,
    /// Monomial scale (mixed kinds only).
    pub d: T,
    pub q: T,
}

impl<T: Scalar> BasisDescriptor<T> {
    pub fn new(kind: BasisKind, c: T, d: T, q: T) -> Self {
        Self { kind, c, d, q }
    }

    pub fn monomial_desc(q: T) -> Self {
        Self::new(BasisKind::MonomialDesc, T::one(), T::one(), q)
    }

    pub fn monomial_asc(q: T) -> Self {
        Self::new(BasisKind::MonomialAsc, T::one(), T::one(), q)
    }

    pub fn poch_asc(c: T, q: T) -> Self {
        Self::new(BasisKind::PochAsc, c, T::one(), q)
    }

    pub fn poch_desc(c: T, q: T) -> Self {
        Self::new(BasisKind::PochDesc, c, T::one(), q)
    }

    pub fn mixed_asc(c: T, d: T, q: T) -> Self {
        Self::new(BasisKind::MixedAsc, c, d, q)
    }

    pub fn mixed_desc(c: T, d: T, q: T) -> Self {
        Self::new(BasisKind::MixedDesc, c, d, q)
    }

    pub fn direction(&self) -> i64 {
        self.kind.direction()
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind.uses_center() && self.c.is_zero() {
            return Err(Error::ZeroBasisParameter("center"));
        }
        if self.kind.uses_scale() && self.d.is_zero() {
            return Err(Error::ZeroBasisParameter("scale"));
        }
        Ok(())
    }

    /// φₙ₊₁ / φₙ as a Laurent polynomial.
    fn step(&self, n: usize) -> LaurentPoly<T> {
        let qn = self.q.pow_i(n as i64);
        let one = T::one();
        match self.kind {
            BasisKind::MonomialDesc => LaurentPoly::monomial(-1, one),
            BasisKind::MonomialAsc => LaurentPoly::monomial(1, one),
            BasisKind::PochAsc => LaurentPoly::linear(one, -(qn / self.c.clone())),
            BasisKind::PochDesc => LaurentPoly::from_terms([(0, one), (-1, -(self.c.clone() * qn))]),
            BasisKind::MixedAsc => {
                // (1 − c qⁿ/x)·x/d
                let inv_d = T::one() / self.d.clone();
                LaurentPoly::from_terms([(1, inv_d.clone()), (0, -(self.c.clone() * qn * inv_d))])
            }
            BasisKind::MixedDesc => {
                // (1 − qⁿx/c)·d/x
                LaurentPoly::from_terms([(-1, self.d.clone()), (0, -(self.d.clone() * qn / self.c.clone()))])
            }
        }
    }
}

/// φ₀..φ_M precomputed for repeated expansion and projection.
#[derive(Clone, Debug)]
pub struct BasisTable<T: Scalar = Rational> {
    pub desc: BasisDescriptor<T>,
    elements: Vec<LaurentPoly<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection<T: Scalar = Rational> {
    pub components: Vec<T>,
    pub overflow: LaurentPoly<T>,
}

impl<T: Scalar> BasisTable<T> {
    pub fn new(desc: BasisDescriptor<T>, max_index: usize) -> Result<Self> {
        desc.validate()?;
        let mut elements = Vec::with_capacity(max_index + 1);
        let mut cur = LaurentPoly::one();
        for n in 0..=max_index {
            elements.push(cur.clone());
            if n < max_index {
                cur = &cur * &desc.step(n);
            }
        }
        Ok(Self { desc, elements })
    }

    pub fn max_index(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn element(&self, n: usize) -> &LaurentPoly<T> {
        &self.elements[n]
    }

    pub fn extreme(&self, n: usize) -> T {
        self.elements[n].coeff(self.desc.direction() * n as i64)
    }

    /// Σ cₙ φₙ.
    pub fn assemble(&self, coeffs: &[T]) -> LaurentPoly<T> {
        let mut out = LaurentPoly::zero();
        for (c, phi) in coeffs.iter().zip(&self.elements) {
            if c.is_zero() {
                continue;
            }
            for (d, v) in phi.terms() {
                out.add_term(d, v.clone() * c.clone());
            }
        }
        out
    }

    /// Greedy top-down elimination on the extreme degree δ·m.
    pub fn project(&self, p: &LaurentPoly<T>, max_index: usize) -> Result<Projection<T>> {
        let m_top = max_index.min(self.max_index());
        let delta = self.desc.direction();
        let mut rest = p.clone();
        let mut components = vec![T::zero(); m_top + 1];
        for m in (0..=m_top).rev() {
            let v = match rest.get(delta * m as i64) {
                Some(v) => v.clone(),
                None => continue,
            };
            let ext = self.extreme(m);
            if ext.is_zero() {
                return Err(Error::BasisDegenerate(m));
            }
            let comp = v / ext;
            for (d, c) in self.elements[m].terms() {
                rest.add_term(d, -(c.clone() * comp.clone()));
            }
            components[m] = comp;
        }
        Ok(Projection {
            components,
            overflow: rest,
        })
    }
}

pub fn basis_expand<T: Scalar>(b: &BasisDescriptor<T>, n: usize) -> Result<LaurentPoly<T>> {
    Ok(BasisTable::new(b.clone(), n)?.elements.pop().expect("nonempty"))
}

pub fn basis_project<T: Scalar>(p: &LaurentPoly<T>, b: &BasisDescriptor<T>, max_index: usize) -> Result<Projection<T>> {
    BasisTable::new(b.clone(), max_index)?.project(p, max_index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::{int, ratio};

    #[test]
    fn poch_asc_example() {
        let b = BasisDescriptor::poch_asc(int(2), ratio(1, 2));
        let phi = basis_expand(&b, 2).unwrap();
        assert_eq!(
            phi,
            LaurentPoly::from_terms([(0, int(1)), (1, ratio(-3, 4)), (2, ratio(1, 8))])
        );
        assert_eq!(basis_expand(&b, 0).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn poch_desc_example() {
        let b = BasisDescriptor::poch_desc(int(3), ratio(1, 2));
        let phi = basis_expand(&b, 1).unwrap();
        assert_eq!(phi, LaurentPoly::from_terms([(0, int(1)), (-1, int(-3))]));
    }

    #[test]
    fn mixed_kinds_have_documented_extremes() {
        let (c, d, q) = (ratio(3, 2), ratio(5, 7), ratio(1, 3));
        let t = BasisTable::new(BasisDescriptor::mixed_asc(c.clone(), d.clone(), q.clone()), 4).unwrap();
        assert_eq!(t.extreme(3), d.pow_i(-3));
        assert_eq!(t.element(3).min_degree(), Some(0));
        let t = BasisTable::new(BasisDescriptor::mixed_desc(c, d.clone(), q), 4).unwrap();
        assert_eq!(t.extreme(3), d.pow_i(3));
        assert_eq!(t.element(3).max_degree(), Some(0));
    }

    #[test]
    fn projection_of_x_squared_in_poch_asc() {
        let (c, q) = (ratio(5, 3), ratio(2, 7));
        let b = BasisDescriptor::poch_asc(c.clone(), q.clone());
        let x2 = LaurentPoly::monomial(2, int(1));
        let pr = basis_project(&x2, &b, 4).unwrap();
        let qi = q.recip();
        let c2 = &c * &c;
        assert_eq!(pr.components[0], c2.clone());
        assert_eq!(pr.components[1], -(&c2 * (int(1) + &qi)));
        assert_eq!(pr.components[2], c2 * qi);
        assert!(pr.components[3..].iter().all(|v| v == &int(0)));
        assert!(pr.overflow.is_zero());
    }

    #[test]
    fn positive_degree_overflows_descending_basis() {
        let b = BasisDescriptor::poch_desc(int(2), ratio(1, 3));
        let pr = basis_project(&LaurentPoly::monomial(1, int(1)), &b, 5).unwrap();
        assert_eq!(pr.overflow.coeff(1), int(1));
    }

    #[test]
    fn zero_center_rejected() {
        assert!(BasisTable::new(BasisDescriptor::poch_asc(int(0), ratio(1, 2)), 2).is_err());
    }
}
