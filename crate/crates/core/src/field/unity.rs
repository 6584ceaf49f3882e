//! Exact multiplicative orders of algebraic numbers.

use num_traits::{One, Signed};

use super::number_field::Scalar;
use crate::error::{Error, Result};
use crate::order_result::{InfinityReason, OrderResult};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Orders `n` a root of unity of degree dividing `d` can have, ascending.
///
/// A primitive n-th root of unity has degree φ(n), and φ(n) ≥ √(n/2),
/// so n ≤ 2d².
pub fn candidate_orders(d: u64) -> Vec<u64> {
    (1..=(2 * d * d).max(2))
        .filter(|&n| d % euler_phi(n) == 0)
        .collect()
}

/// Least `n ≥ 1` with `aⁿ = 1`, or a certificate that no such `n` exists.
pub fn root_of_unity_order(a: &Scalar) -> Result<OrderResult> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("0 has no multiplicative order".into()));
    }
    let not_root = Ok(OrderResult::infinite(InfinityReason::NonRootOfUnity));
    if !a.norm().abs().is_one() {
        return not_root;
    }
    let d = a.field().degree() as u64;
    for n in candidate_orders(d) {
        if a.pow(n).is_one() {
            return Ok(OrderResult::exact(n));
        }
    }
    not_root
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldExt, NumberField, QPoly};

    #[test]
    fn phi_values() {
        let v: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(v, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn rational_orders() {
        let q = NumberField::rationals();
        assert_eq!(root_of_unity_order(&q.int(1)).unwrap(), OrderResult::exact(1));
        assert_eq!(root_of_unity_order(&q.int(-1)).unwrap(), OrderResult::exact(2));
        assert_eq!(
            root_of_unity_order(&q.int(2)).unwrap(),
            OrderResult::infinite(InfinityReason::NonRootOfUnity)
        );
        assert!(root_of_unity_order(&q.int(0)).is_err());
    }

    #[test]
    fn omega_has_order_three() {
        let k = NumberField::new("w", QPoly::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(root_of_unity_order(&k.generator()).unwrap(), OrderResult::exact(3));
        // -ω is a primitive sixth root of unity
        assert_eq!(root_of_unity_order(&-k.generator()).unwrap(), OrderResult::exact(6));
    }

    #[test]
    fn unit_norm_non_root() {
        // (3 + 4i)/5 has norm 1 but is not a root of unity
        let k = NumberField::new("i", QPoly::from_ints(&[1, 0, 1])).unwrap();
        let a = (k.int(3) + k.generator().scale(&crate::field::rat(4))).scale(&crate::field::rat_frac(1, 5));
        assert_eq!(a.norm(), crate::field::rat(1));
        assert_eq!(
            root_of_unity_order(&a).unwrap(),
            OrderResult::infinite(InfinityReason::NonRootOfUnity)
        );
    }
}
