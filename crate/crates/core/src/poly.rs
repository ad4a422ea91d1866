//! Dense univariate polynomial helpers, generic over the coefficient field
//! so the same code runs in f64 and in exact rational arithmetic.
//!
//! Coefficients are stored ascending: `c[j]` multiplies `x^j`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient field for the polynomial helpers.
pub trait Coeff:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_u64(v: u64) -> Self;
}

impl Coeff for f64 {
    fn from_u64(v: u64) -> Self {
        v as f64
    }
}

impl Coeff for BigRational {
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Monic polynomial with the given roots, coefficients ascending.
pub fn from_roots<T: Coeff>(roots: &[T]) -> Vec<T> {
    let mut c = vec![T::one()];
    for r in roots {
        // multiply by (x - r)
        let mut next = vec![T::zero(); c.len() + 1];
        for (j, cj) in c.iter().enumerate() {
            next[j + 1] = next[j + 1].clone() + cj.clone();
            next[j] = next[j].clone() - cj.clone() * r.clone();
        }
        c = next;
    }
    c
}

/// Horner evaluation.
pub fn eval<T: Coeff>(c: &[T], x: &T) -> T {
    let mut acc = T::zero();
    for cj in c.iter().rev() {
        acc = acc * x.clone() + cj.clone();
    }
    acc
}

/// First derivative, coefficients ascending.
pub fn derivative<T: Coeff>(c: &[T]) -> Vec<T> {
    if c.len() <= 1 {
        return vec![T::zero()];
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(j, cj)| cj.clone() * T::from_u64(j as u64))
        .collect()
}

/// Coefficients of `p(x0 + y)` in powers of `y`, by repeated synthetic
/// division. The recentering terminates exactly; no series truncation.
pub fn taylor_shift<T: Coeff>(c: &[T], x0: &T) -> Vec<T> {
    let mut out = c.to_vec();
    let n = out.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            out[j] = out[j].clone() + out[j + 1].clone() * x0.clone();
        }
    }
    out
}

/// Binomial coefficient as u128; callers stay far below overflow (n <= ~30).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(v: i64) -> BigRational {
        BigRational::from_i64(v).unwrap()
    }

    #[test]
    fn roots_round_trip() {
        let p = from_roots(&[1.0, 4.0, 7.0]);
        // (x-1)(x-4)(x-7) = x^3 - 12x^2 + 39x - 28
        assert_eq!(p, vec![-28.0, 39.0, -12.0, 1.0]);
        for r in [1.0, 4.0, 7.0] {
            assert_eq!(eval(&p, &r), 0.0, "root {r} must evaluate to zero");
        }
    }

    #[test]
    fn taylor_shift_matches_direct_evaluation() {
        let p = vec![2.0, -3.0, 0.5, 1.0, -0.25];
        let x0 = 1.375; // exactly representable
        let t = taylor_shift(&p, &x0);
        for y in [-0.5, 0.0, 0.25, 2.0] {
            let direct = eval(&p, &(x0 + y));
            let shifted = eval(&t, &y);
            assert!(
                (direct - shifted).abs() <= 1e-12 * (1.0 + direct.abs()),
                "shift mismatch at y={y}: {direct} vs {shifted}"
            );
        }
    }

    #[test]
    fn taylor_shift_exact_rational() {
        // p(x) = x^4 - 2x^2, recentred at x0 = 1: p(1+y) = -1 + 0y + 4y^2 + 4y^3 + y^4
        let p = vec![rat(0), rat(0), rat(-2), rat(0), rat(1)];
        let t = taylor_shift(&p, &rat(1));
        assert_eq!(t, vec![rat(-1), rat(0), rat(4), rat(4), rat(1)]);
    }

    #[test]
    fn derivative_basic() {
        let p = vec![5.0, 1.0, -3.0, 2.0];
        assert_eq!(derivative(&p), vec![1.0, -6.0, 6.0]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 0), 1);
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(3, 5), 0);
    }
}
