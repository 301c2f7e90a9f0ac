//! Degree-6 resolvent of a quintic with the same splitting field.
//!
//! The classical invariant fixed by an order-20 subgroup of S5 is
//!
//! ```text
//!   theta = sum_i x_i^2 (x_{i+1} x_{i-1} + x_{i+2} x_{i-2})   (indices mod 5)
//! ```
//!
//! whose stabilizer has index 6, so its orbit under S5 has six elements
//! theta_1..theta_6 and prod (X - theta_k) has integer coefficients. The six
//! orbit patterns are derived combinatorially (deduplicating the monomial
//! pattern over all 120 permutations); the values are evaluated from the
//! numeric roots and the product is expanded in fixed point, then rounded.
//! Rounding residuals above 1e-6 relative trigger a retry at doubled
//! precision; acceptance of the result is always at the level of
//! splitting-field consistency with a reference sextic, never coefficient
//! equality.

use crate::algebra::{complex_roots, AlgebraError, Cpx, Fixed, IntPoly};
use crate::numberfield::{frobenius_record, NfError};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ResolventError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("rounding residual too large at {0} bits (relative {1:.3e})")]
    PrecisionFailure(u32, f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    NumberField(#[from] NfError),
}

/// One orbit element of the invariant: a set of monomials (i, {j, k})
/// standing for x_i^2 x_j x_k.
type Pattern = BTreeSet<(usize, (usize, usize))>;

/// The six coset patterns, computed once by acting with all of S5 on the
/// base pattern and deduplicating.
fn coset_patterns() -> &'static Vec<Pattern> {
    static CELL: OnceLock<Vec<Pattern>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut base: Pattern = BTreeSet::new();
        for i in 0..5usize {
            base.insert((i, sorted_pair((i + 1) % 5, (i + 4) % 5)));
            base.insert((i, sorted_pair((i + 2) % 5, (i + 3) % 5)));
        }
        let mut seen: BTreeSet<Pattern> = BTreeSet::new();
        let mut perm = [0, 1, 2, 3, 4];
        permute_all(&mut perm, 0, &mut |p| {
            let image: Pattern = base
                .iter()
                .map(|&(i, (j, k))| (p[i], sorted_pair(p[j], p[k])))
                .collect();
            seen.insert(image);
        });
        let out: Vec<Pattern> = seen.into_iter().collect();
        assert_eq!(out.len(), 6, "invariant orbit must have six elements");
        out
    })
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn permute_all(perm: &mut [usize; 5], k: usize, f: &mut impl FnMut(&[usize; 5])) {
    if k == 5 {
        f(perm);
        return;
    }
    for i in k..5 {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Evaluates the six orbit values of the invariant at the given roots.
pub fn orbit_values(roots: &[Cpx]) -> Vec<Cpx> {
    assert_eq!(roots.len(), 5);
    let prec = roots[0].prec();
    coset_patterns()
        .iter()
        .map(|pat| {
            let mut acc = Cpx::zero(prec);
            for &(i, (j, k)) in pat {
                let term = roots[i].mul(&roots[i]).mul(&roots[j].mul(&roots[k]));
                acc = acc.add(&term);
            }
            acc
        })
        .collect()
}

/// Degree-6 resolvent of a monic squarefree quintic (irreducibility is the
/// caller's responsibility; the pipeline certifies it upstream).
pub fn sextic_resolvent(q: &IntPoly, precision_bits: u32) -> Result<IntPoly, ResolventError> {
    sextic_resolvent_with_residual(q, precision_bits).map(|(p, _)| p)
}

/// As [`sextic_resolvent`], also returning the worst relative rounding
/// residual of the accepted attempt.
pub fn sextic_resolvent_with_residual(
    q: &IntPoly,
    precision_bits: u32,
) -> Result<(IntPoly, f64), ResolventError> {
    if q.degree() != Some(5) || !q.is_monic() {
        return Err(ResolventError::Invalid("resolvent needs a monic quintic".into()));
    }
    if !q.is_squarefree() {
        return Err(ResolventError::Invalid("resolvent needs a squarefree quintic".into()));
    }
    let mut bits = precision_bits;
    let mut last_rel = f64::INFINITY;
    for _ in 0..4 {
        match resolvent_at_precision(q, bits) {
            Ok(out) => return Ok(out),
            Err(rel) => {
                last_rel = rel;
                bits *= 2;
            }
        }
    }
    Err(ResolventError::PrecisionFailure(bits / 2, last_rel))
}

/// One attempt; on failure returns the offending relative residual.
fn resolvent_at_precision(q: &IntPoly, bits: u32) -> Result<(IntPoly, f64), f64> {
    let roots = match complex_roots(q, bits) {
        Ok(r) => r,
        Err(_) => return Err(f64::INFINITY),
    };
    let prec = roots[0].value.prec();
    let zs: Vec<Cpx> = roots.into_iter().map(|r| r.value).collect();
    let thetas = orbit_values(&zs);
    // expand prod (X - theta_k)
    let mut coeffs: Vec<Cpx> = vec![Cpx::new(Fixed::from_i64(1, prec), Fixed::zero(prec))];
    for t in &thetas {
        let mut next = vec![Cpx::zero(prec); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(t));
        }
        coeffs = next;
    }
    // coeffs are ascending: constant first, X^6 coefficient last
    let mut out = Vec::with_capacity(7);
    let mut worst_rel: f64 = 0.0;
    for c in &coeffs {
        let rounded = c.re.round();
        let re_err = c.re.sub(&Fixed::from_bigint(&rounded, prec)).abs();
        let residual = re_err.add(&c.im.abs());
        let denom = rounded.magnitude().bits().max(1) as i64;
        // relative residual: |residual| / max(1, |rounded|), in exact bits
        let res_bits = if residual.is_zero() {
            i64::MIN
        } else {
            residual.mantissa.bits() as i64 - prec as i64
        };
        let rel_log2 = res_bits - (denom - 1);
        let rel = 2f64.powi(rel_log2.clamp(-1020, 1020) as i32);
        worst_rel = worst_rel.max(rel);
        out.push(rounded);
    }
    if worst_rel > 1e-6 {
        return Err(worst_rel);
    }
    Ok((IntPoly::from_coeffs(out), worst_rel))
}

/// Numeric value of the first symmetric function of the orbit (sum of the
/// six theta values) for cross-checking against its exact expression in the
/// quintic's coefficients.
pub fn orbit_sum(q: &IntPoly, precision_bits: u32) -> Result<(Cpx, BigInt), ResolventError> {
    if q.degree() != Some(5) || !q.is_monic() {
        return Err(ResolventError::Invalid("orbit sum needs a monic quintic".into()));
    }
    let roots = complex_roots(q, precision_bits)?;
    let zs: Vec<Cpx> = roots.into_iter().map(|r| r.value).collect();
    let prec = zs[0].prec();
    let mut sum = Cpx::zero(prec);
    for t in orbit_values(&zs) {
        sum = sum.add(&t);
    }
    // exact value: sum theta_k = 2 m_{(2,1,1)} = 2 (e1 e3 - 4 e4), with the
    // elementary symmetric functions read off the monic quintic
    let e1 = -q.coeff(4);
    let e3 = -q.coeff(2);
    let e4 = q.coeff(1);
    let exact = BigInt::from(2) * (&e1 * &e3 - BigInt::from(4) * &e4);
    Ok((sum, exact))
}

/// Verdict of the Frobenius-order comparison below a prime bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SplittingFieldVerdict {
    /// Orders differ at this prime: the splitting fields are different.
    CertainlyDifferent { l: u64, left_order: u64, right_order: u64 },
    /// Orders agree at every mutually usable prime below the bound.
    ConsistentUpToBound { primes_compared: usize },
}

/// Compares Frobenius orders of two monic polynomials at every mutually
/// usable prime below `prime_bound`.
pub fn same_splitting_field_heuristic(
    f: &IntPoly,
    g: &IntPoly,
    prime_bound: u64,
) -> Result<SplittingFieldVerdict, ResolventError> {
    let mut compared = 0usize;
    for l in crate::algebra::primes_below(prime_bound) {
        let (Ok(a), Ok(b)) = (frobenius_record(f, l), frobenius_record(g, l)) else {
            continue;
        };
        if a.order != b.order {
            return Ok(SplittingFieldVerdict::CertainlyDifferent {
                l,
                left_order: a.order,
                right_order: b.order,
            });
        }
        compared += 1;
    }
    Ok(SplittingFieldVerdict::ConsistentUpToBound { primes_compared: compared })
}
