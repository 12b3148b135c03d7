use super::{LaurentPoly, Rational, Scalar};

/// (a;q)ₙ = ∏_{i<n} (1 − a qⁱ).
pub fn q_pochhammer<T: Scalar>(a: &T, q: &T, n: usize) -> T {
    let mut acc = T::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = acc * (T::one() - aq.clone());
        aq = aq * q.clone();
    }
    acc
}

/// (q;q)ₙ.
pub fn q_factorial<T: Scalar>(q: &T, n: usize) -> T {
    q_pochhammer(q, q, n)
}

/// (a)ₙ = a(a+1)…(a+n−1).
pub fn rising_factorial(a: &Rational, n: usize) -> Rational {
    (0..n).fold(super::int(1), |acc, i| acc * (a + super::int(i as i64)))
}

/// Degrees 0..=N of (αx;q)_∞, via fₖ = −α qᵏ⁻¹ fₖ₋₁/(1 − qᵏ).
pub fn euler_expand<T: Scalar>(alpha: &T, q: &T, n: usize) -> LaurentPoly<T> {
    let mut out = LaurentPoly::zero();
    let mut f = T::one();
    let mut qk = T::one(); // q^{k-1}
    out.add_term(0, f.clone());
    for k in 1..=n {
        let qnext = qk.clone() * q.clone();
        f = -(alpha.clone() * qk.clone() * f) / (T::one() - qnext.clone());
        out.add_term(k as i64, f.clone());
        qk = qnext;
    }
    out
}

/// Degrees 0..=N of 1/(αx;q)_∞, coefficient αᵏ/(q;q)ₖ.
pub fn inv_euler_expand<T: Scalar>(alpha: &T, q: &T, n: usize) -> LaurentPoly<T> {
    let mut out = LaurentPoly::zero();
    let mut f = T::one();
    let mut qk = T::one();
    out.add_term(0, f.clone());
    for k in 1..=n {
        qk = qk * q.clone();
        f = f * alpha.clone() / (T::one() - qk.clone());
        out.add_term(k as i64, f.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::{int, ratio};

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(&ratio(7, 3), &ratio(1, 2), 0), int(1));
        assert_eq!(q_pochhammer(&int(1), &ratio(1, 2), 3), int(0));
        assert_eq!(q_pochhammer(&ratio(1, 2), &ratio(1, 2), 2), ratio(3, 8));
    }

    #[test]
    fn rising_examples() {
        assert_eq!(rising_factorial(&int(5), 0), int(1));
        assert_eq!(rising_factorial(&int(1), 4), int(24));
        assert_eq!(rising_factorial(&int(-2), 3), int(0));
    }

    #[test]
    fn euler_examples() {
        let e = euler_expand(&int(1), &ratio(1, 2), 4);
        assert_eq!(e.coeff(0), int(1));
        assert_eq!(e.coeff(1), int(-2));
        assert_eq!(e.coeff(2), ratio(4, 3));
        let inv = inv_euler_expand(&int(1), &ratio(1, 2), 4);
        assert_eq!(inv.coeff(1), int(2));
    }

    #[test]
    fn euler_closed_form_agrees() {
        let (a, q) = (ratio(3, 5), ratio(2, 7));
        let e = euler_expand(&a, &q, 8);
        for k in 0..=8usize {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let expect = sign * q.pow_i((k * (k.max(1) - 1) / 2) as i64) * a.pow_i(k as i64) / q_factorial(&q, k);
            assert_eq!(e.coeff(k as i64), expect);
        }
    }

    #[test]
    fn reciprocal_identity() {
        let (a, q) = (ratio(-4, 3), ratio(1, 3));
        let prod = &euler_expand(&a, &q, 8) * &inv_euler_expand(&a, &q, 8);
        assert_eq!(prod.filter_degrees(|d| d <= 8), LaurentPoly::one());
    }
}
