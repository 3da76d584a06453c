//! Exact rational coefficients.
//!
//! `num_rational::BigRational` already maintains the invariants we need
//! (lowest terms, positive denominator), so the coefficient field is a thin
//! layer of constructors and conversions over it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with denominator > 0.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat_i64(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Fraction `n/d` in lowest terms. Panics on `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_zero() -> Rat {
    BigRational::zero()
}

pub fn rat_one() -> Rat {
    BigRational::one()
}

/// Nearest binary-64 value (numerator and denominator converted with
/// magnitude-aware rounding, then divided).
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Continued-fraction rational approximation of a float.
///
/// Returns the first convergent within `tol` of `x`, which keeps the
/// bridge from floating perturbations back to the exact pipeline
/// deterministic and small.
pub fn rat_from_f64(x: f64, tol: f64) -> Rat {
    assert!(x.is_finite(), "cannot rationalize a non-finite float");
    let negative = x < 0.0;
    let x_abs = libm::fabs(x);

    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut p = BigInt::from(libm::floor(x_abs) as i64);
    let mut q = BigInt::one();
    let mut frac = x_abs - libm::floor(x_abs);

    for _ in 0..64 {
        let approx = BigRational::new(p.clone(), q.clone());
        let err = libm::fabs(rat_to_f64(&approx) - x_abs);
        if err <= tol {
            break;
        }
        if frac == 0.0 {
            break;
        }
        let inv = 1.0 / frac;
        let a = libm::floor(inv);
        frac = inv - a;
        let a = BigInt::from(a as i64);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }

    let out = BigRational::new(p, q);
    if negative {
        -out
    } else {
        out
    }
}

/// `|r|` as a rational.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
