//! Per-prime Frobenius data, the Dedekind criterion, discriminant
//! certification, and field fingerprints.
//!
//! For a monic irreducible f with squarefree reduction mod l, the cycle type
//! of Frobenius on the roots equals the multiset of factor degrees of f mod
//! l, and its order (in any faithful permutation action, hence in the Galois
//! group) is the lcm of that cycle type.
//!
//! Discriminant certification promotes a polynomial discriminant to a field
//! discriminant: disc(f) must equal target times a perfect square, and the
//! order Z[theta] must be maximal at every prime of the target (Dedekind).
//! When Dedekind fails at p — the index is divisible by p, which does happen
//! for published defining polynomials — a deterministic fallback searches
//! the finitely many elements alpha = r(theta)/p (r in F_p[x], deg < n) for
//! an algebraic integer whose degree-n minimal polynomial is p-maximal with
//! the target's valuation at p. Such an alpha generates the same field, so
//! its minimal polynomial certifies v_p(d_K) exactly.

use crate::algebra::{
    interpolate_exact, primes_below, valuation, AlgebraError, IntPoly, ModPoly,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NfError {
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("f mod {0} is not squarefree")]
    NotSquarefree(u64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Frobenius data at one prime: cycle type (sorted ascending, summing to
/// deg f) and its lcm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusRecord {
    pub l: u64,
    pub cycle_type: Vec<usize>,
    pub order: u64,
}

/// Cycle type and order of Frobenius at l from the factorization of f mod l.
pub fn frobenius_record(f: &IntPoly, l: u64) -> Result<FrobeniusRecord, NfError> {
    let deg = f
        .degree()
        .ok_or_else(|| NfError::Invalid("zero polynomial".into()))?;
    let fl = f.reduce_mod(l);
    if fl.degree() != Some(deg) {
        return Err(NfError::Invalid(format!("{l} divides the leading coefficient")));
    }
    if !fl.is_squarefree() {
        return Err(NfError::NotSquarefree(l));
    }
    let mut cycle_type: Vec<usize> = fl
        .factor()?
        .into_iter()
        .map(|(g, m)| {
            debug_assert_eq!(m, 1);
            g.degree().unwrap()
        })
        .collect();
    cycle_type.sort_unstable();
    let order = cycle_type.iter().fold(1u64, |acc, &d| acc.lcm(&(d as u64)));
    Ok(FrobeniusRecord { l, cycle_type, order })
}

/// Dedekind's criterion: is the order Z[x]/(f) maximal at p?
///
/// With f mod p = prod g_i^{e_i}, g = prod g_i (lifted), h a lift of
/// (f mod p)/g, and F = (g*h - f)/p, the order is p-maximal iff
/// gcd(F mod p, g mod p, h mod p) = 1.
pub fn dedekind_p_maximal(f: &IntPoly, p: u64) -> Result<bool, NfError> {
    if !f.is_monic() {
        return Err(NfError::Invalid("Dedekind criterion needs a monic polynomial".into()));
    }
    let fp = f.reduce_mod(p);
    let factors = fp.factor()?;
    let mut radical = ModPoly::one(p);
    for (g, _) in &factors {
        radical = radical.mul(g);
    }
    let hbar = fp.div_rem(&radical).0;
    let g_lift = lift_to_int(&radical);
    let h_lift = lift_to_int(&hbar);
    let gh = &g_lift * &h_lift;
    let diff = &gh - f;
    let pb = BigInt::from(p);
    let fcoeffs: Vec<BigInt> = diff
        .coeffs()
        .iter()
        .map(|c| {
            let (q, r) = c.div_rem(&pb);
            debug_assert!(r.is_zero(), "gh = f mod p must hold");
            q
        })
        .collect();
    let fbar = ModPoly::from_bigint_coeffs(p, &fcoeffs);
    let d = fbar.gcd(&radical).gcd(&hbar);
    Ok(d.degree() == Some(0) || (fbar.is_zero() && radical.gcd(&hbar).degree() == Some(0)))
}

fn lift_to_int(g: &ModPoly) -> IntPoly {
    IntPoly::from_coeffs(g.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Characteristic polynomial of r(theta)/denom acting on Q[x]/(f), computed
/// as Res_x(f(x), y - r(x)) by evaluation-interpolation and then rescaled.
/// Returns `None` when the element is not an algebraic integer.
pub fn element_charpoly(f: &IntPoly, r: &IntPoly, denom: u64) -> Option<IntPoly> {
    let n = f.degree()?;
    if !f.is_monic() || n == 0 {
        return None;
    }
    // P(y) = prod (y - r(theta_i)): evaluate at n+1 integer points
    let mut points = Vec::with_capacity(n + 1);
    for y0 in 0..=n as i64 {
        let g = &IntPoly::constant(BigInt::from(y0)) - r;
        let value = if g.is_zero() {
            BigInt::zero()
        } else if g.degree() == Some(0) {
            num_traits::pow::pow(g.coeff(0), n)
        } else {
            f.resultant(&g).ok()?
        };
        points.push((BigInt::from(y0), value));
    }
    let p_of_y = interpolate_exact(&points)?;
    if p_of_y.degree() != Some(n) {
        return None;
    }
    if denom == 1 {
        return Some(p_of_y);
    }
    // Q(y) = P(denom * y) / denom^n: coefficient k must lose denom^(n-k)
    let d = BigInt::from(denom);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let scale = num_traits::pow::pow(d.clone(), n - k);
        let (q, rem) = p_of_y.coeff(k).div_rem(&scale);
        if !rem.is_zero() {
            return None;
        }
        coeffs.push(q);
    }
    Some(IntPoly::from_coeffs(coeffs))
}

/// A fallback witness: an element r(theta)/p whose minimal polynomial
/// certifies the field discriminant valuation at p.
#[derive(Clone, Debug, Serialize)]
pub struct MaximalGeneratorWitness {
    pub p: u64,
    /// Numerator coefficients of the element, ascending powers of theta.
    pub numerator: Vec<u64>,
    pub minpoly: IntPoly,
}

/// Searches alpha = r(theta)/p over all r in F_p[x] of degree < n for an
/// algebraic integer whose degree-n minimal polynomial passes Dedekind at p
/// with v_p(disc) = target_valuation. Deterministic lexicographic scan.
pub fn p_maximal_generator(
    f: &IntPoly,
    p: u64,
    target_valuation: u32,
) -> Option<MaximalGeneratorWitness> {
    let n = f.degree()?;
    let mut coeffs = vec![0u64; n];
    loop {
        // increment little-endian counter over [0, p)^n, skipping all-zero
        let mut i = 0;
        while i < n {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
        // constants give degree-1 subfields, never degree-n generators
        if coeffs.iter().skip(1).all(|&c| c == 0) {
            continue;
        }
        let r = IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        let Some(mp) = element_charpoly(f, &r, p) else {
            continue;
        };
        if !mp.is_squarefree() {
            continue;
        }
        let Ok(disc) = mp.discriminant() else { continue };
        if valuation(&disc, p) != target_valuation {
            continue;
        }
        if dedekind_p_maximal(&mp, p) == Ok(true) {
            return Some(MaximalGeneratorWitness { p, numerator: coeffs, minpoly: mp });
        }
    }
}

/// Outcome of certifying a polynomial discriminant against a target field
/// discriminant; `ok` summarizes, the rest are the witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct DiscCertificate {
    pub ok: bool,
    #[serde(with = "crate::algebra::bigint_string")]
    pub poly_disc: BigInt,
    /// s with disc(f) = target * s^2, when the shape holds.
    #[serde(serialize_with = "crate::algebra::bigint_string::opt::serialize")]
    pub square_cofactor_root: Option<BigInt>,
    /// Raw Dedekind results per prime of the target.
    pub dedekind: BTreeMap<u64, bool>,
    /// Fallback witnesses for primes where Z[theta] itself is not maximal.
    pub fallback: BTreeMap<u64, MaximalGeneratorWitness>,
}

/// Certifies that the field defined by monic irreducible f has discriminant
/// exactly `target` (whose support must be `ram_primes`).
pub fn certify_discriminant(
    f: &IntPoly,
    target: &BigInt,
    ram_primes: &[u64],
) -> Result<DiscCertificate, NfError> {
    if !f.is_monic() {
        return Err(NfError::Invalid("certification needs a monic polynomial".into()));
    }
    // target must factor completely over ram_primes
    let mut t = target.clone();
    let mut target_vals: BTreeMap<u64, u32> = BTreeMap::new();
    for &p in ram_primes {
        let v = valuation(&t, p);
        target_vals.insert(p, v);
        t /= BigInt::from(p).pow(v);
    }
    if !t.is_one() {
        return Err(NfError::Invalid(format!(
            "target has a factor {t} outside the ramified primes"
        )));
    }
    let disc = f.discriminant()?;
    let mut cert = DiscCertificate {
        ok: false,
        poly_disc: disc.clone(),
        square_cofactor_root: None,
        dedekind: BTreeMap::new(),
        fallback: BTreeMap::new(),
    };
    if disc.is_zero() {
        return Ok(cert);
    }
    // shape: disc = target * square
    let (q, rem) = disc.div_rem(target);
    if !rem.is_zero() || q.is_negative() {
        return Ok(cert);
    }
    let root = q.sqrt();
    if &root * &root != q {
        return Ok(cert);
    }
    cert.square_cofactor_root = Some(root);
    // maximality at every prime of the target
    let mut all_certified = true;
    for (&p, &v) in &target_vals {
        let ded = dedekind_p_maximal(f, p)?;
        cert.dedekind.insert(p, ded);
        if ded {
            continue;
        }
        match p_maximal_generator(f, p, v) {
            Some(w) => {
                cert.fallback.insert(p, w);
            }
            None => all_certified = false,
        }
    }
    cert.ok = all_certified;
    Ok(cert)
}

/// If f = (x - a)^p mod p for some residue a, returns it.
pub fn total_ram_congruence(f: &IntPoly, p: u64) -> Option<u64> {
    let n = f.degree()?;
    assert!(f.is_monic() && n == 5, "total ramification check is for monic quintics");
    let fp = f.reduce_mod(p);
    for a in 0..p {
        // (x - a)^5 mod p
        let lin = ModPoly::new(p, vec![(p - a) % p, 1]);
        let mut pw = ModPoly::one(p);
        for _ in 0..5 {
            pw = pw.mul(&lin);
        }
        if pw == fp {
            return Some(a);
        }
    }
    None
}

/// Order-compatibility of an observed Frobenius order with a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCompat {
    /// observed is an element of the predicted pgl-order set.
    pub strong: bool,
    /// some n in the GL2 set has observed | n with n/observed dividing 4.
    pub weak: bool,
}

pub fn compatible_orders(observed: u64, sets: &crate::hecke::OrderSets) -> OrderCompat {
    let strong = u32::try_from(observed).map_or(false, |o| sets.pgl.contains(&o));
    let weak = sets.gl2.iter().any(|&n| {
        let n = n as u64;
        n % observed == 0 && matches!(n / observed, 1 | 2 | 4)
    });
    OrderCompat { strong, weak }
}

/// Heuristic field invariant: two polynomials with different fingerprints
/// define non-isomorphic fields; equal fingerprints mean "likely isomorphic"
/// only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub degree: usize,
    /// Polynomial discriminant with squares of small primes removed and a
    /// perfect-square cofactor collapsed. Isomorphism-stable only as a
    /// heuristic; see module docs.
    #[serde(with = "crate::algebra::bigint_string")]
    pub disc_kernel: BigInt,
    /// l -> sorted factor degrees, for the first 25 usable primes.
    pub patterns: BTreeMap<u64, Vec<usize>>,
}

/// Verdict of a fingerprint comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsomorphismVerdict {
    CertainlyDifferent,
    LikelyIsomorphic,
}

pub fn fingerprint(f: &IntPoly) -> Result<Fingerprint, NfError> {
    let degree = f
        .degree()
        .ok_or_else(|| NfError::Invalid("zero polynomial".into()))?;
    let disc = f.discriminant()?;
    let mut kernel = BigInt::one();
    if disc.is_negative() {
        kernel = -kernel;
    }
    let mut rest = disc.abs();
    for p in primes_below(1000) {
        let v = valuation(&rest, p);
        if v > 0 {
            rest /= BigInt::from(p).pow(v);
            if v % 2 == 1 {
                kernel *= BigInt::from(p);
            }
        }
    }
    let root = rest.sqrt();
    if &root * &root != rest {
        kernel *= &rest;
    }
    let mut patterns = BTreeMap::new();
    let mut l = 2u64;
    while patterns.len() < 25 {
        if crate::algebra::is_prime_u64(l) {
            if let Ok(rec) = frobenius_record(f, l) {
                patterns.insert(l, rec.cycle_type);
            }
        }
        l += 1;
    }
    Ok(Fingerprint { degree, disc_kernel: kernel, patterns })
}

pub fn compare_fingerprints(a: &Fingerprint, b: &Fingerprint) -> IsomorphismVerdict {
    if a == b {
        IsomorphismVerdict::LikelyIsomorphic
    } else {
        IsomorphismVerdict::CertainlyDifferent
    }
}

/// How irreducibility over Q was (or was not) established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IrredCertificate {
    /// Irreducible reduction at this prime.
    IrreducibleModPrime(u64),
    /// No single irreducible reduction below the bound, but the factor
    /// patterns at these primes admit no common proper subset sum, which
    /// forces irreducibility.
    ForcedByPatterns(Vec<u64>),
    /// Unproven; carries whether a rational (integer) root is excluded.
    Unproven { no_rational_root: bool },
}

impl IrredCertificate {
    pub fn is_proven(&self) -> bool {
        !matches!(self, IrredCertificate::Unproven { .. })
    }
}

/// Attempts to certify irreducibility of a monic polynomial: first by an
/// irreducible reduction at a prime < 500, then by intersecting the
/// subset-sum sets of factor patterns at up to 20 usable primes.
pub fn certify_irreducible(f: &IntPoly) -> Result<IrredCertificate, NfError> {
    let n = f
        .degree()
        .ok_or_else(|| NfError::Invalid("zero polynomial".into()))?;
    if !f.is_monic() {
        return Err(NfError::Invalid("irreducibility certification needs monic input".into()));
    }
    if n == 1 {
        return Ok(IrredCertificate::IrreducibleModPrime(2));
    }
    let mut patterns: Vec<(u64, Vec<usize>)> = Vec::new();
    for l in primes_below(500) {
        let Ok(rec) = frobenius_record(f, l) else { continue };
        if rec.cycle_type.len() == 1 {
            return Ok(IrredCertificate::IrreducibleModPrime(l));
        }
        patterns.push((l, rec.cycle_type));
        if patterns.len() >= 20 {
            break;
        }
    }
    // possible degrees of a factor, as a bitmask over 0..=n
    let mut possible: u64 = (1 << (n + 1)) - 1;
    for (_, ct) in &patterns {
        let mut sums: u64 = 1;
        for &d in ct {
            sums |= sums << d;
        }
        possible &= sums;
    }
    let proper = possible & !(1 | (1 << n));
    if proper == 0 && !patterns.is_empty() {
        return Ok(IrredCertificate::ForcedByPatterns(
            patterns.iter().map(|(l, _)| *l).collect(),
        ));
    }
    let no_rational_root = patterns.iter().any(|(_, ct)| !ct.contains(&1));
    Ok(IrredCertificate::Unproven { no_rational_root })
}

/// A monic irreducible polynomial with its discriminant data, irreducibility
/// certificate, and fingerprint.
#[derive(Clone, Debug, Serialize)]
pub struct FieldCandidate {
    pub poly: IntPoly,
    #[serde(with = "crate::algebra::bigint_string")]
    pub poly_disc: BigInt,
    #[serde(serialize_with = "crate::algebra::bigint_string::opt::serialize")]
    pub certified_field_disc: Option<BigInt>,
    pub irreducibility: IrredCertificate,
    pub fingerprint: Fingerprint,
}

impl FieldCandidate {
    pub fn analyze(poly: IntPoly) -> Result<Self, NfError> {
        let poly_disc = poly.discriminant()?;
        let irreducibility = certify_irreducible(&poly)?;
        let fingerprint = fingerprint(&poly)?;
        Ok(FieldCandidate {
            poly,
            poly_disc,
            certified_field_disc: None,
            irreducibility,
            fingerprint,
        })
    }

    /// Runs discriminant certification and records the field discriminant on
    /// success.
    pub fn certify(&mut self, target: &BigInt, ram_primes: &[u64]) -> Result<DiscCertificate, NfError> {
        let cert = certify_discriminant(&self.poly, target, ram_primes)?;
        if cert.ok {
            self.certified_field_disc = Some(target.clone());
        }
        Ok(cert)
    }
}

/// Squarefree kernel of a discriminant used by resolvent support checks:
/// the product of primes (below the trial bound) with odd exponent, signed.
pub fn odd_support_kernel(disc: &BigInt, trial_bound: u64) -> (BigInt, BigInt) {
    let mut kernel = BigInt::one();
    if disc.is_negative() {
        kernel = -kernel;
    }
    let mut rest = disc.abs();
    for p in primes_below(trial_bound) {
        let v = valuation(&rest, p);
        if v > 0 {
            rest /= BigInt::from(p).pow(v);
            if v % 2 == 1 {
                kernel *= BigInt::from(p);
            }
        }
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        rest = BigInt::one();
    }
    (kernel, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn g1() -> &'static IntPoly {
        static C: OnceLock<IntPoly> = OnceLock::new();
        C.get_or_init(|| IntPoly::from_i64(&[307744, -117360, 13040, 0, 0, 1]))
    }

    fn target() -> BigInt {
        BigInt::from(5).pow(5) * BigInt::from(163).pow(4)
    }

    #[test]
    fn frobenius_record_basics() {
        // x^2 + 1 splits mod 5
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let rec = frobenius_record(&f, 5).unwrap();
        assert_eq!(rec.cycle_type, vec![1, 1]);
        assert_eq!(rec.order, 1);
        // g1 mod 2 = x^5: not squarefree
        assert_eq!(frobenius_record(g1(), 2), Err(NfError::NotSquarefree(2)));
    }

    #[test]
    fn frobenius_order_translation_invariant() {
        let f = g1();
        for c in 1i64..=3 {
            let g = f.translate(&BigInt::from(c));
            for l in [3u64, 7, 13, 19] {
                let a = frobenius_record(f, l).unwrap();
                let b = frobenius_record(&g, l).unwrap();
                assert_eq!(a.order, b.order, "l = {l}, shift = {c}");
            }
        }
    }

    #[test]
    fn dedekind_simple_cases() {
        // separable mod 3: unramified, maximal
        assert!(dedekind_p_maximal(&IntPoly::from_i64(&[0, -1, 1]), 3).unwrap());
        // x^2 at 2: radical x shares the F-part, not maximal
        assert!(!dedekind_p_maximal(&IntPoly::from_i64(&[0, 0, 1]), 2).unwrap());
        // x^2 - 5 at 5: Eisenstein, maximal
        assert!(dedekind_p_maximal(&IntPoly::from_i64(&[-5, 0, 1]), 5).unwrap());
        // x^2 - 25 = (x-5)(x+5): index divisible by 5
        assert!(!dedekind_p_maximal(&IntPoly::from_i64(&[-25, 0, 1]), 5).unwrap());
    }

    #[test]
    fn dedekind_for_g1() {
        // v_5(disc g1) = 9: the equation order is NOT 5-maximal, and is
        // 163-maximal. (The field discriminant is still 5^5 163^4; see the
        // fallback test.)
        assert!(!dedekind_p_maximal(g1(), 5).unwrap());
        assert!(dedekind_p_maximal(g1(), 163).unwrap());
    }

    #[test]
    fn element_charpoly_of_shifted_generator() {
        // alpha = theta + 1 has charpoly f(x - 1)
        let f = IntPoly::from_i64(&[2, 0, 1]);
        let r = IntPoly::from_i64(&[1, 1]);
        let mp = element_charpoly(&f, &r, 1).unwrap();
        assert_eq!(mp, f.translate(&BigInt::from(-1)));
        // theta/2 is not integral for x^2 + 2
        assert!(element_charpoly(&f, &IntPoly::from_i64(&[0, 1]), 2).is_none());
    }

    #[test]
    fn certify_g1_via_fallback_witness() {
        let cert = certify_discriminant(g1(), &target(), &[5, 163]).unwrap();
        assert!(cert.ok, "{cert:?}");
        assert_eq!(cert.dedekind[&5], false);
        assert_eq!(cert.dedekind[&163], true);
        let w = &cert.fallback[&5];
        // witness minpoly defines the same field: degree 5, integral by
        // construction, 5-maximal, v_5(disc) = 5
        assert_eq!(w.minpoly.degree(), Some(5));
        assert!(dedekind_p_maximal(&w.minpoly, 5).unwrap());
        assert_eq!(valuation(&w.minpoly.discriminant().unwrap(), 5), 5);
    }

    #[test]
    fn certify_rejects_wrong_discriminant() {
        // disc(x^5 - 2) = 5^5 * 2^4: lacks 163
        let f = IntPoly::from_i64(&[-2, 0, 0, 0, 0, 1]);
        let cert = certify_discriminant(&f, &target(), &[5, 163]).unwrap();
        assert!(!cert.ok);
        assert!(cert.square_cofactor_root.is_none());
    }

    #[test]
    fn total_ram_congruence_values() {
        assert_eq!(total_ram_congruence(g1(), 5), Some(1));
        assert_eq!(total_ram_congruence(g1(), 163), Some(0));
        assert_eq!(total_ram_congruence(&IntPoly::from_i64(&[1, 1, 0, 0, 0, 1]), 5), None);
    }

    #[test]
    fn compat_orders_examples() {
        use crate::hecke::OrderSets;
        use std::collections::BTreeSet;
        let sets = OrderSets { gl2: BTreeSet::from([24]), pgl: BTreeSet::from([6]) };
        let c = compatible_orders(6, &sets);
        assert!(c.weak && c.strong);
        let sets = OrderSets { gl2: BTreeSet::from([4, 20]), pgl: BTreeSet::from([1, 5]) };
        let c = compatible_orders(8, &sets);
        assert!(!c.weak && !c.strong);
        let sets = OrderSets { gl2: BTreeSet::from([8]), pgl: BTreeSet::from([2]) };
        let c = compatible_orders(2, &sets);
        assert!(c.weak && c.strong);
    }

    #[test]
    fn fingerprint_translation_stable() {
        let f = g1();
        let a = fingerprint(f).unwrap();
        let b = fingerprint(&f.translate(&BigInt::one())).unwrap();
        assert_eq!(compare_fingerprints(&a, &b), IsomorphismVerdict::LikelyIsomorphic);
        let g2 = IntPoly::from_i64(&[254932, -104320, 10595, 0, 0, 1]);
        let c = fingerprint(&g2).unwrap();
        assert_eq!(compare_fingerprints(&a, &c), IsomorphismVerdict::CertainlyDifferent);
    }

    #[test]
    fn irreducibility_certification() {
        match certify_irreducible(g1()).unwrap() {
            IrredCertificate::IrreducibleModPrime(p) => assert_eq!(p, 19),
            other => panic!("expected a mod-p certificate, got {other:?}"),
        }
        // x^2 - 1 factors everywhere; stays unproven and admits a root
        match certify_irreducible(&IntPoly::from_i64(&[-1, 0, 1])).unwrap() {
            IrredCertificate::Unproven { no_rational_root } => assert!(!no_rational_root),
            other => panic!("unexpected {other:?}"),
        }
    }
}
