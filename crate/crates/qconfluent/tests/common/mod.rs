#![allow(dead_code)]

use proptest::prelude::*;
use qconfluent::qalg::{ratio, Rational};

/// Nonzero rationals a/b with small numerator and denominator.
pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=40, any::<bool>()).prop_map(|(a, b, neg)| ratio(if neg { -a } else { a }, b))
}

/// q ∈ (0, 1).
pub fn unit_q() -> impl Strategy<Value = Rational> {
    (1i64..=30).prop_flat_map(|b| (1..b.max(2)).prop_map(move |a| ratio(a, b.max(2))))
}
