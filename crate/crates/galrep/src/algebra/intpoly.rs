//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Coefficients are stored in ascending degree order (`coeffs[i]` is the
//! coefficient of x^i). The representation is canonical: the vector is empty
//! for the zero polynomial and otherwise ends in a nonzero coefficient.
//!
//! Resultants use the subresultant polynomial remainder sequence with the
//! convention `Res(f, g) = lc(f)^deg(g) * prod_{f(a)=0} g(a)`, and the
//! discriminant is `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`. Degrees in this
//! project never exceed 24, so no modular/CRT shortcut is needed.

use super::{AlgebraError, ModPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense integer polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// A constant polynomial (zero polynomial if `c == 0`).
    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from machine integers, ascending order.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial c * x^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Ascending coefficient slice (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map_or(false, |c| c.is_one())
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// f(x + c) by the Ruffini–Horner shift.
    pub fn translate(&self, c: &BigInt) -> IntPoly {
        if self.is_zero() || c.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut a = self.coeffs.clone();
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let add = c * &a[j + 1];
                a[j] += add;
            }
        }
        IntPoly::from_coeffs(a)
    }

    /// gcd of all coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content (sign of the leading coefficient is kept).
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Pseudo-remainder R with lc(g)^(deg f - deg g + 1) f = q g + R.
    pub fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        let dg = g.degree().expect("pseudo_rem by zero polynomial");
        let df = match self.degree() {
            Some(d) if d >= dg => d,
            _ => return self.clone(),
        };
        let lc_g = g.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        let mut steps_left = (df - dg + 1) as i64;
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lead = r.leading_coeff().unwrap().clone();
            let mut new = vec![BigInt::zero(); dr + 1];
            for (i, c) in r.coeffs.iter().enumerate() {
                new[i] = c * &lc_g;
            }
            for (i, c) in g.coeffs.iter().enumerate() {
                new[i + dr - dg] -= c * &lead;
            }
            r = IntPoly::from_coeffs(new);
            steps_left -= 1;
        }
        // pad with lc(g) factors if the degree dropped early, keeping the identity exact
        if steps_left > 0 {
            r = r.scale(&pow_big(&lc_g, steps_left as usize));
        }
        r
    }

    /// Exact division; panics if `g` does not divide `self`.
    pub fn div_exact(&self, g: &IntPoly) -> IntPoly {
        let (q, r) = self.div_rem(g);
        assert!(r.is_zero(), "div_exact: nonzero remainder");
        q
    }

    /// Division with remainder; every quotient step must divide exactly by
    /// lc(g) (always true for monic `g`, and for the exact divisions used here).
    pub fn div_rem(&self, g: &IntPoly) -> (IntPoly, IntPoly) {
        let dg = g.degree().expect("division by zero polynomial");
        let lc_g = g.leading_coeff().unwrap();
        let df = match self.degree() {
            Some(d) if d >= dg => d,
            _ => return (IntPoly::zero(), self.clone()),
        };
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); df - dg + 1];
        for k in (0..q.len()).rev() {
            let lead = r[k + dg].clone();
            if lead.is_zero() {
                continue;
            }
            let (qc, rem) = lead.div_rem(lc_g);
            assert!(rem.is_zero(), "div_rem: leading coefficient does not divide");
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[k + i] -= &qc * gc;
            }
            q[k] = qc;
        }
        (IntPoly::from_coeffs(q), IntPoly::from_coeffs(r))
    }

    /// Polynomial gcd over Z (primitive, positive leading coefficient),
    /// via the primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return positive_lc(other.primitive_part());
        }
        if other.is_zero() {
            return positive_lc(self.primitive_part());
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        positive_lc(a)
    }

    /// True when gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Reduction mod p (degree may drop when p divides the leading coefficient).
    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        ModPoly::from_bigint_coeffs(p, &self.coeffs)
    }

    /// Res(f, g) = lc(f)^deg(g) * prod over roots a of f of g(a), by the
    /// subresultant PRS.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt, AlgebraError> {
        let (df, dg) = match (self.degree(), other.degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(AlgebraError::InvalidArgument(
                    "resultant of a zero polynomial".into(),
                ))
            }
        };
        if df == 0 {
            return Ok(pow_big(&self.coeffs[0], dg));
        }
        if dg == 0 {
            return Ok(pow_big(&other.coeffs[0], df));
        }
        let mut sign_neg = false;
        let (mut a, mut b) = (self.clone(), other.clone());
        if df < dg {
            if (df * dg) % 2 == 1 {
                sign_neg = !sign_neg;
            }
            std::mem::swap(&mut a, &mut b);
        }
        // contents out front: Res(cA, B) = c^deg(B) Res(A, B)
        let ca = a.content();
        let cb = b.content();
        let mut t = pow_big(&ca, b.degree().unwrap()) * pow_big(&cb, a.degree().unwrap());
        a = a.primitive_part();
        b = b.primitive_part();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if da % 2 == 1 && db % 2 == 1 {
                sign_neg = !sign_neg;
            }
            let delta = da - db;
            let r = self_prem_signed(&a, &b, delta);
            a = b;
            let divisor = &g * pow_big(&h, delta);
            b = IntPoly::from_coeffs(
                r.coeffs
                    .iter()
                    .map(|c| {
                        let (q, rem) = c.div_rem(&divisor);
                        debug_assert!(rem.is_zero(), "subresultant division must be exact");
                        q
                    })
                    .collect(),
            );
            if b.is_zero() {
                return Ok(BigInt::zero());
            }
            g = a.leading_coeff().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                // h <- g^delta * h^(1-delta), an exact integer division for delta > 1
                let num = pow_big(&g, delta);
                if delta == 1 {
                    num
                } else {
                    &num / &pow_big(&h, delta - 1)
                }
            };
            if b.degree() == Some(0) {
                let da2 = a.degree().unwrap();
                // res = lc(b)^da2 / h^(da2 - 1)
                let num = pow_big(&b.coeffs[0], da2);
                let res = if da2 >= 1 {
                    &num / &pow_big(&h, da2 - 1)
                } else {
                    num
                };
                t *= res;
                return Ok(if sign_neg { -t } else { t });
            }
        }
    }

    /// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f); requires deg f >= 1.
    pub fn discriminant(&self) -> Result<BigInt, AlgebraError> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(AlgebraError::InvalidArgument(
                    "discriminant needs degree >= 1".into(),
                ))
            }
        };
        if n == 1 {
            return Ok(BigInt::one());
        }
        let res = self.resultant(&self.derivative())?;
        let lc = self.leading_coeff().unwrap();
        let (q, r) = res.div_rem(lc);
        debug_assert!(r.is_zero());
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
    }
}

/// Pseudo-remainder with the exact scale lc(b)^(delta+1), padding when the
/// degree drops early so the subresultant bookkeeping stays correct.
fn self_prem_signed(a: &IntPoly, b: &IntPoly, delta: usize) -> IntPoly {
    let lc_b = b.leading_coeff().unwrap().clone();
    let mut r = a.clone();
    let db = b.degree().unwrap();
    let mut steps_left = (delta + 1) as i64;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead = r.leading_coeff().unwrap().clone();
        let mut new = vec![BigInt::zero(); dr + 1];
        for (i, c) in r.coeffs().iter().enumerate() {
            new[i] = c * &lc_b;
        }
        for (i, c) in b.coeffs().iter().enumerate() {
            new[i + dr - db] -= c * &lead;
        }
        r = IntPoly::from_coeffs(new);
        steps_left -= 1;
    }
    if steps_left > 0 {
        r = r.scale(&pow_big(&lc_b, steps_left as usize));
    }
    r
}

fn pow_big(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow::pow(b.clone(), e)
}

fn positive_lc(p: IntPoly) -> IntPoly {
    match p.leading_coeff() {
        Some(c) if c.is_negative() => p.scale(&BigInt::from(-1)),
        _ => p,
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{}*x", a)?,
                _ if a.is_one() => write!(f, "x^{}", i)?,
                _ => write!(f, "{}*x^{}", a, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(&BigInt::from(-1))
    }
}

// Polynomials serialize as JSON arrays of decimal strings, constant term first.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in &strings {
            let v: BigInt = s
                .parse()
                .map_err(|e| serde::de::Error::custom(format!("bad integer {s:?}: {e}")))?;
            coeffs.push(v);
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64(cs)
    }

    #[test]
    fn resultant_of_quadratic_and_linear() {
        // Res(x^2 - 1, x - 2) = (1-2)(-1-2) = 3
        let f = p(&[-1, 0, 1]);
        let g = p(&[-2, 1]);
        assert_eq!(f.resultant(&g).unwrap(), BigInt::from(3));
    }

    #[test]
    fn resultant_of_two_linear() {
        // Res(x - a, x - b) = a - b
        for (a, b) in [(3i64, 7i64), (-4, 11), (0, -2), (5, 5)] {
            let f = p(&[-a, 1]);
            let g = p(&[-b, 1]);
            assert_eq!(f.resultant(&g).unwrap(), BigInt::from(a - b));
        }
    }

    #[test]
    fn resultant_rejects_zero() {
        assert!(p(&[1, 1]).resultant(&IntPoly::zero()).is_err());
    }

    #[test]
    fn resultant_swap_sign() {
        // Res(f,g) = (-1)^(deg f * deg g) Res(g,f)
        let f = p(&[1, 2, 0, 3]); // deg 3
        let g = p(&[4, -1, 2]); // deg 2
        let lhs = f.resultant(&g).unwrap();
        let rhs = g.resultant(&f).unwrap();
        assert_eq!(lhs, rhs); // 3*2 even
        let h = p(&[-2, 5]); // deg 1
        let lhs = f.resultant(&h).unwrap();
        let rhs = h.resultant(&f).unwrap();
        assert_eq!(lhs, -rhs); // 3*1 odd
    }

    #[test]
    fn discriminant_small_cases() {
        assert_eq!(p(&[1, 0, 1]).discriminant().unwrap(), BigInt::from(-4));
        for c in 1i64..=3 {
            assert_eq!(
                p(&[c, 0, 0, 1]).discriminant().unwrap(),
                BigInt::from(-27 * c * c)
            );
        }
        // disc(ax + b) = 1
        assert_eq!(p(&[7, 3]).discriminant().unwrap(), BigInt::one());
    }

    #[test]
    fn discriminant_of_non_monic() {
        // disc(ax^2 + bx + c) = b^2 - 4ac
        let f = p(&[5, -3, 2]);
        assert_eq!(f.discriminant().unwrap(), BigInt::from(9 - 4 * 2 * 5));
    }

    #[test]
    fn translate_matches_expansion() {
        // (x+1)^2 = x^2 + 2x + 1
        let f = p(&[0, 0, 1]).translate(&BigInt::one());
        assert_eq!(f, p(&[1, 2, 1]));
        // degree-5 shift then shift back
        let g = p(&[3, -1, 0, 7, 0, 2]);
        let back = g.translate(&BigInt::from(9)).translate(&BigInt::from(-9));
        assert_eq!(g, back);
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = p(&[-1, 0, 1]); // (x-1)(x+1)
        let g = p(&[-1, 1]); // x-1
        let sq = &f * &f;
        assert_eq!(sq.gcd(&sq.derivative()).degree(), Some(2));
        assert!(f.is_squarefree());
        assert!(!sq.is_squarefree());
        assert_eq!(f.gcd(&g), g);
    }

    #[test]
    fn div_rem_monic() {
        let f = p(&[2, 0, -3, 0, 1]);
        let g = p(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(&(&q * &g) + &r, f);
    }

    #[test]
    fn serde_decimal_strings() {
        let f = p(&[307744, -117360, 13040, 0, 0, 1]);
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"["307744","-117360","13040","0","0","1"]"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
