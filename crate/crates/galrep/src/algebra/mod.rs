//! Exact arbitrary-precision integer and polynomial arithmetic.
//!
//! Everything downstream (number field certification, the Hunter search,
//! resolvents, torsion fields) is built on four primitives collected here:
//!
//! * [`IntPoly`] — dense univariate polynomials over `BigInt`, with
//!   subresultant resultants and discriminants;
//! * [`ModPoly`] — dense univariate polynomials over F_p (p < 2³¹), with
//!   complete seeded factorization (squarefree / distinct-degree /
//!   equal-degree);
//! * [`complex_roots`] — simultaneous (Aberth-style) root refinement in
//!   binary fixed-point arithmetic of configurable precision;
//! * [`integer_square_part`] — extraction of a perfect-square cofactor
//!   relative to a list of allowed squarefree primes.
//!
//! All operations are pure functions over immutable values and are safe to
//! call concurrently.

mod intpoly;
mod modpoly;
mod roots;

pub use intpoly::IntPoly;
pub use modpoly::{is_prime_u64, primes_below, set_default_factor_seed, ModPoly, DEFAULT_FACTOR_SEED};
pub use roots::{complex_roots, complex_roots_with_cap, ComplexApprox, Cpx, Fixed};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from the exact-arithmetic layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomial must be squarefree (gcd(f, f') is non-constant)")]
    SquarefreeRequired,
    #[error("root refinement did not converge at {0} bits")]
    PrecisionFailure(u32),
    #[error("cofactor {0} is not a perfect square")]
    NotSquare(BigInt),
}

/// serde adapter serializing big integers as decimal strings (never floats,
/// never digit arrays). Use with `#[serde(with = "bigint_string")]`.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|e| serde::de::Error::custom(format!("bad integer {s:?}: {e}")))
    }

    /// Optional-valued variant.
    pub mod opt {
        use num_bigint::BigInt;
        use serde::{Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref().map(|x| x.to_string()).serialize(s)
        }
    }
}

/// Exact Lagrange interpolation through integer points. Returns `None` when
/// the interpolating polynomial does not have integer coefficients.
pub fn interpolate_exact(points: &[(BigInt, BigInt)]) -> Option<IntPoly> {
    use num_rational::BigRational;
    let n = points.len();
    let mut acc = vec![BigRational::from_integer(BigInt::zero()); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut denom = BigInt::one();
        let mut basis = vec![BigInt::zero(); n];
        basis[0] = BigInt::one();
        let mut deg = 0usize;
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            denom *= xi - xj;
            // basis *= (x - xj)
            for k in (0..=deg).rev() {
                let t = basis[k].clone();
                basis[k + 1] += &t;
                basis[k] = -xj * t;
            }
            deg += 1;
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (k, b) in basis.iter().take(deg + 1).enumerate() {
            acc[k] += &scale * BigRational::from_integer(b.clone());
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(IntPoly::from_coeffs(coeffs))
}

/// Largest `v` with `p^v | n` (`u32::MAX` for n = 0).
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.abs();
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    v
}

/// Splits `n` as `square_free * square_root_part^2`, where `square_free` is
/// supported on `allowed_primes` (and the sign of `n`, if negative, which is
/// accepted only when `allow_negative` is set).
///
/// The valuation of `n` at each allowed prime is removed in full before the
/// remaining cofactor is integer-square-rooted; a non-square cofactor is an
/// error, signalling rejection of the candidate under test.
pub fn integer_square_part(
    n: &BigInt,
    allowed_primes: &[u64],
    allow_negative: bool,
) -> Result<(BigInt, BigInt), AlgebraError> {
    if n.is_zero() {
        return Err(AlgebraError::InvalidArgument("n must be nonzero".into()));
    }
    let mut square_free = BigInt::from(1);
    let mut rest = n.abs();
    if n.is_negative() {
        if !allow_negative {
            return Err(AlgebraError::NotSquare(n.clone()));
        }
        square_free = -square_free;
    }
    for &p in allowed_primes {
        let p = BigInt::from(p);
        let mut v = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            v += 1;
        }
        // the full valuation at each allowed prime goes to the first component
        if v > 0 {
            square_free *= p.pow(v);
        }
    }
    let root = rest.sqrt();
    if &root * &root != rest {
        return Err(AlgebraError::NotSquare(rest));
    }
    Ok((square_free, root))
}
