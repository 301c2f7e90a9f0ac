//! Certified high-precision complex root finding.
//!
//! Numbers are binary fixed point: a value is `mantissa * 2^-prec` with a
//! `BigInt` mantissa, so every operation is exact except an explicit final
//! shift. That keeps the iteration deterministic (no platform-dependent
//! rounding) and needs only the handful of operations the project uses:
//! +, -, *, /, sqrt, and rounding to the nearest integer.
//!
//! Roots are refined simultaneously with the Aberth–Ehrlich update from a
//! perturbed-circle initialization. On stall, the working precision doubles
//! up to a cap before reporting a precision failure; each accepted root
//! carries a residual bound |f(z)|.

use super::{AlgebraError, IntPoly};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Fixed-point real number: `mantissa * 2^-prec`.
#[derive(Clone, Debug)]
pub struct Fixed {
    pub prec: u32,
    pub mantissa: BigInt,
}

impl Fixed {
    pub fn zero(prec: u32) -> Self {
        Fixed { prec, mantissa: BigInt::zero() }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Fixed { prec, mantissa: v << prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Fixed::from_bigint(&BigInt::from(v), prec)
    }

    /// Exact conversion from f64 (mantissa and exponent are binary).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        if v == 0.0 {
            return Fixed::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e2) = if exp == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1 << 52), exp - 1075)
        };
        let shift = e2 + prec as i64;
        let m = BigInt::from(mant) * sign;
        let mantissa = match shift.cmp(&0) {
            Ordering::Less => m >> (-shift) as u32,
            _ => m << shift as u32,
        };
        Fixed { prec, mantissa }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn neg(&self) -> Fixed {
        Fixed { prec: self.prec, mantissa: -&self.mantissa }
    }

    pub fn add(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.prec, rhs.prec);
        Fixed { prec: self.prec, mantissa: &self.mantissa + &rhs.mantissa }
    }

    pub fn sub(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.prec, rhs.prec);
        Fixed { prec: self.prec, mantissa: &self.mantissa - &rhs.mantissa }
    }

    pub fn mul(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.prec, rhs.prec);
        Fixed {
            prec: self.prec,
            mantissa: shift_round(&(&self.mantissa * &rhs.mantissa), self.prec),
        }
    }

    pub fn div(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.prec, rhs.prec);
        assert!(!rhs.is_zero(), "fixed-point division by zero");
        Fixed {
            prec: self.prec,
            mantissa: (&self.mantissa << self.prec) / &rhs.mantissa,
        }
    }

    /// Floor square root of a nonnegative value.
    pub fn sqrt(&self) -> Fixed {
        assert!(!self.mantissa.is_negative(), "sqrt of negative fixed-point value");
        Fixed {
            prec: self.prec,
            mantissa: (&self.mantissa << self.prec).sqrt(),
        }
    }

    /// Nearest integer (half rounds up; `>>` on BigInt floors, so adding
    /// half works for both signs).
    pub fn round(&self) -> BigInt {
        let half = BigInt::from(1) << (self.prec - 1);
        (&self.mantissa + half) >> self.prec
    }

    pub fn abs(&self) -> Fixed {
        Fixed { prec: self.prec, mantissa: self.mantissa.abs() }
    }

    pub fn cmp_abs(&self, rhs: &Fixed) -> Ordering {
        self.mantissa.abs().cmp(&rhs.mantissa.abs())
    }

    pub fn to_f64(&self) -> f64 {
        // mantissa may exceed f64 range; scale via bit length first
        let bits = self.mantissa.bits() as i64;
        if bits <= 1000 {
            return self.mantissa.to_f64().unwrap_or(0.0) / 2f64.powi(self.prec as i32);
        }
        let drop = (bits - 500) as u32;
        let m = (&self.mantissa >> drop).to_f64().unwrap_or(0.0);
        m * 2f64.powi(drop as i32 - self.prec as i32)
    }

    fn with_prec(&self, prec: u32) -> Fixed {
        if prec >= self.prec {
            Fixed { prec, mantissa: &self.mantissa << (prec - self.prec) }
        } else {
            Fixed { prec, mantissa: shift_round(&self.mantissa, self.prec - prec) }
        }
    }
}

fn shift_round(m: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let half = BigInt::from(1) << (shift - 1);
    (m + half) >> shift
}

/// Fixed-point complex number.
#[derive(Clone, Debug)]
pub struct Cpx {
    pub re: Fixed,
    pub im: Fixed,
}

impl Cpx {
    pub fn zero(prec: u32) -> Self {
        Cpx { re: Fixed::zero(prec), im: Fixed::zero(prec) }
    }

    pub fn new(re: Fixed, im: Fixed) -> Self {
        debug_assert_eq!(re.prec, im.prec);
        Cpx { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cpx { re: Fixed::from_f64(re, prec), im: Fixed::from_f64(im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Cpx) -> Cpx {
        Cpx { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn sub(&self, rhs: &Cpx) -> Cpx {
        Cpx { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    pub fn mul(&self, rhs: &Cpx) -> Cpx {
        let ac = self.re.mul(&rhs.re);
        let bd = self.im.mul(&rhs.im);
        let ad = self.re.mul(&rhs.im);
        let bc = self.im.mul(&rhs.re);
        Cpx { re: ac.sub(&bd), im: ad.add(&bc) }
    }

    pub fn div(&self, rhs: &Cpx) -> Cpx {
        let denom = rhs.norm_sq();
        assert!(!denom.is_zero(), "complex division by zero");
        let ac = self.re.mul(&rhs.re);
        let bd = self.im.mul(&rhs.im);
        let bc = self.im.mul(&rhs.re);
        let ad = self.re.mul(&rhs.im);
        Cpx {
            re: ac.add(&bd).div(&denom),
            im: bc.sub(&ad).div(&denom),
        }
    }

    pub fn neg(&self) -> Cpx {
        Cpx { re: self.re.neg(), im: self.im.neg() }
    }

    /// |z|^2, exact up to the fixed-point truncation of the two squarings.
    pub fn norm_sq(&self) -> Fixed {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// |z| via a fixed-point square root.
    pub fn abs(&self) -> Fixed {
        self.norm_sq().sqrt()
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Cpx {
        let r = self.abs();
        let prec = self.prec();
        let two = Fixed::from_i64(2, prec);
        // sqrt((r + re)/2) + i sign(im) sqrt((r - re)/2)
        let mut a = r.add(&self.re).div(&two);
        let mut b = r.sub(&self.re).div(&two);
        if a.mantissa.is_negative() {
            a = Fixed::zero(prec);
        }
        if b.mantissa.is_negative() {
            b = Fixed::zero(prec);
        }
        let sa = a.sqrt();
        let sb = b.sqrt();
        let sb = if self.im.mantissa.is_negative() { sb.neg() } else { sb };
        Cpx { re: sa, im: sb }
    }

    fn with_prec(&self, prec: u32) -> Cpx {
        Cpx { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }
}

/// A complex root approximation plus a residual bound for the polynomial it
/// approximates a root of (`residual_bound >= |f(z)|` at the stored point).
#[derive(Clone, Debug)]
pub struct ComplexApprox {
    pub value: Cpx,
    pub precision_bits: u32,
    pub residual_bound: Fixed,
}

impl ComplexApprox {
    pub fn re_f64(&self) -> f64 {
        self.value.re.to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.value.im.to_f64()
    }
}

/// All complex roots of a squarefree integer polynomial at the requested
/// precision. Doubles the working precision internally up to four attempts.
pub fn complex_roots(f: &IntPoly, precision_bits: u32) -> Result<Vec<ComplexApprox>, AlgebraError> {
    complex_roots_with_cap(f, precision_bits, 4)
}

/// As [`complex_roots`], with an explicit cap on precision-doubling attempts.
pub fn complex_roots_with_cap(
    f: &IntPoly,
    precision_bits: u32,
    max_attempts: u32,
) -> Result<Vec<ComplexApprox>, AlgebraError> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(AlgebraError::InvalidArgument(
                "root finding needs degree >= 1".into(),
            ))
        }
    };
    if !f.is_squarefree() {
        return Err(AlgebraError::SquarefreeRequired);
    }
    let mut work = precision_bits + 64;
    let mut attempts = max_attempts.max(1);
    loop {
        match aberth(f, n, work, precision_bits) {
            Some(roots) => return Ok(roots),
            None => {
                attempts -= 1;
                if attempts == 0 {
                    return Err(AlgebraError::PrecisionFailure(precision_bits));
                }
                work *= 2;
            }
        }
    }
}

/// log2 of |v|, good to ~1e-9 relative, valid for any size.
fn log2_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 62 {
        return (v.abs().to_f64().unwrap()).log2();
    }
    let top = (v.abs() >> (bits - 62)).to_f64().unwrap();
    top.log2() + (bits - 62) as f64
}

fn aberth(f: &IntPoly, n: usize, work: u32, out_prec: u32) -> Option<Vec<ComplexApprox>> {
    let df = f.derivative();
    let coeffs: Vec<Cpx> = f
        .coeffs()
        .iter()
        .map(|c| Cpx::new(Fixed::from_bigint(c, work), Fixed::zero(work)))
        .collect();
    let dcoeffs: Vec<Cpx> = df
        .coeffs()
        .iter()
        .map(|c| Cpx::new(Fixed::from_bigint(c, work), Fixed::zero(work)))
        .collect();

    // Fujiwara-style radius: 2 * max_k (|a_{n-k}| / |a_n|)^(1/k), in log2 space.
    let lc_log = log2_big(f.leading_coeff().unwrap());
    let mut r_log: f64 = -1.0;
    for k in 1..=n {
        let c = f.coeff(n - k);
        if c.is_zero() {
            continue;
        }
        r_log = r_log.max((log2_big(&c) - lc_log) / k as f64);
    }
    let radius = 2.0 * 2f64.powf(r_log.max(0.0)).min(1e100);

    let mut z: Vec<Cpx> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.41;
            Cpx::from_f64(radius * angle.cos(), radius * angle.sin(), work)
        })
        .collect();

    let eval = |cs: &[Cpx], x: &Cpx| -> Cpx {
        let mut acc = Cpx::zero(work);
        for c in cs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    };

    // convergence threshold for the step size: |w| < 2^-(out_prec) * (1 + |z|)
    let step_tol_shift = out_prec;
    let max_sweeps = 60 + 12 * n;
    let mut converged = false;
    for _ in 0..max_sweeps {
        let mut max_rel_bits: i64 = i64::MIN;
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let pz = eval(&coeffs, &z[i]);
            let dz = eval(&dcoeffs, &z[i]);
            if dz.is_zero() {
                // perturb away from the critical point
                let bump = Cpx::from_f64(1e-3 * radius, 2e-3 * radius, work);
                next.push(z[i].add(&bump));
                max_rel_bits = 0;
                continue;
            }
            let newton = pz.div(&dz);
            let mut s = Cpx::zero(work);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let d = z[i].sub(&z[j]);
                if d.is_zero() {
                    continue;
                }
                s = s.add(&Cpx::new(Fixed::from_i64(1, work), Fixed::zero(work)).div(&d));
            }
            let denom = Cpx::new(Fixed::from_i64(1, work), Fixed::zero(work)).sub(&newton.mul(&s));
            let w = if denom.is_zero() { newton.clone() } else { newton.div(&denom) };
            // relative step size in bits: bits(|w|) - bits(1 + |z|)
            let w_bits = w.norm_sq().mantissa.bits() as i64;
            let z_bits = (z[i].norm_sq().mantissa.bits() as i64).max(work as i64);
            max_rel_bits = max_rel_bits.max((w_bits - z_bits) / 2);
            next.push(z[i].sub(&w));
        }
        z = next;
        if max_rel_bits < -(step_tol_shift as i64) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }

    // residual validation: |f(z_i)| <= scale * 2^-(out_prec/2)
    let scale_log = f
        .coeffs()
        .iter()
        .map(log2_big)
        .fold(0.0f64, f64::max);
    let mut out = Vec::with_capacity(n);
    for zi in &z {
        let res = eval(&coeffs, zi).abs();
        let res_log = if res.is_zero() {
            f64::NEG_INFINITY
        } else {
            log2_big(&res.mantissa) - work as f64
        };
        if res_log > scale_log - (out_prec as f64) / 2.0 {
            return None;
        }
        // double the measured residual as the certified bound
        let bound = Fixed { prec: work, mantissa: &res.mantissa * 2 + 1 };
        out.push(ComplexApprox {
            value: zi.with_prec(out_prec),
            precision_bits: out_prec,
            residual_bound: bound.with_prec(out_prec),
        });
    }
    // deterministic ordering: by real part, then imaginary part
    out.sort_by(|a, b| {
        (&a.value.re.mantissa, &a.value.im.mantissa).cmp(&(&b.value.re.mantissa, &b.value.im.mantissa))
    });
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_basics() {
        let a = Fixed::from_i64(3, 64);
        let b = Fixed::from_i64(4, 64);
        assert_eq!(a.mul(&b).round(), BigInt::from(12));
        assert_eq!(b.div(&a).mul(&a).round(), BigInt::from(4));
        let h = Fixed::from_f64(0.5, 64);
        assert_eq!(h.add(&h).round(), BigInt::from(1));
        assert_eq!(Fixed::from_i64(2, 64).sqrt().mul(&Fixed::from_i64(2, 64).sqrt()).round(), BigInt::from(2));
    }

    #[test]
    fn complex_sqrt_of_minus_one() {
        let z = Cpx::from_f64(-1.0, 0.0, 96);
        let s = z.sqrt();
        assert!(s.re.to_f64().abs() < 1e-20);
        assert!((s.im.to_f64() - 1.0).abs() < 1e-20);
    }

    #[test]
    fn roots_of_x2_plus_1() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let roots = complex_roots(&f, 128).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.re_f64().abs() < 1e-20);
            assert!((r.im_f64().abs() - 1.0).abs() < 1e-20);
        }
        // residual bound invariant
        for r in &roots {
            assert!(r.residual_bound.to_f64() < 1e-19);
        }
    }

    #[test]
    fn roots_of_x5_minus_1_sum_to_zero() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 1]);
        let roots = complex_roots(&f, 128).unwrap();
        assert_eq!(roots.len(), 5);
        let prec = roots[0].value.prec();
        let mut sum = Cpx::zero(prec);
        for r in &roots {
            sum = sum.add(&r.value);
        }
        assert!(sum.abs().to_f64() < 1e-15);
    }

    #[test]
    fn rejects_non_squarefree() {
        let f = IntPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert!(matches!(
            complex_roots(&f, 64),
            Err(AlgebraError::SquarefreeRequired)
        ));
    }
}
