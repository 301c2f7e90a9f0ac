//! The conductor-163 elliptic curve computations: point counting, trace
//! tables, division polynomials, and the exact degree-24 torsion field
//! polynomial.
//!
//! The curve is kept in general Weierstrass form
//! y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 throughout, so point
//! counting works uniformly in characteristics 2 and 3, and the b-invariant
//! recurrences give the odd division polynomials as plain polynomials in x.
//!
//! The degree-24 polynomial prod (X - 5 y_i) over the 24 nonzero 5-torsion
//! points is computed exactly: R(Y) = Res_x(psi_5(x), Y^2 + a1 x Y + a3 Y -
//! (x^3 + a2 x^2 + a4 x + a6)) equals lc(psi_5)^3 * prod (Y - y_i) =
//! 5^3 prod (Y - y_i), and clearing denominators with f(X) = 5^21 R(X/5)
//! gives the monic integer polynomial. A fully numeric route (roots of
//! psi_5, quadratic formula per root, product expansion, rounding) exists as
//! an independent cross-check.

use crate::algebra::{complex_roots, interpolate_exact, valuation, AlgebraError, Cpx, Fixed, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EllipticError {
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("division polynomial only implemented for odd n, got {0}")]
    UnsupportedIndex(u64),
    #[error("invalid curve: discriminant is zero")]
    SingularCurve,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Integral Weierstrass model with derived b-invariants.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "[i64; 5]", into = "[i64; 5]")]
pub struct CurveQ {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub b2: i64,
    pub b4: i64,
    pub b6: i64,
    pub b8: i64,
    pub discriminant: BigInt,
}

impl CurveQ {
    pub fn new(a: [i64; 5]) -> Result<Self, EllipticError> {
        let [a1, a2, a3, a4, a6] = a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let (b2b, b4b, b6b, b8b) = (
            BigInt::from(b2),
            BigInt::from(b4),
            BigInt::from(b6),
            BigInt::from(b8),
        );
        let discriminant: BigInt =
            -&b2b * &b2b * &b8b - BigInt::from(8) * &b4b * &b4b * &b4b - BigInt::from(27) * &b6b * &b6b
                + BigInt::from(9) * &b2b * &b4b * &b6b;
        if discriminant.is_zero() {
            return Err(EllipticError::SingularCurve);
        }
        Ok(CurveQ { a1, a2, a3, a4, a6, b2, b4, b6, b8, discriminant })
    }

    pub fn a_invariants(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn has_good_reduction(&self, l: u64) -> bool {
        !(&self.discriminant % BigInt::from(l)).is_zero()
    }

    /// a_l = l + 1 - #E(F_l), by brute force over all affine points plus the
    /// point at infinity. No completing of squares, so small characteristics
    /// need no special cases.
    pub fn count_points(&self, l: u64) -> Result<i64, EllipticError> {
        if !self.has_good_reduction(l) {
            return Err(EllipticError::BadReduction(l));
        }
        let m = l as i128;
        let rm = |v: i128| -> i128 { v.rem_euclid(m) };
        let (a1, a2, a3, a4, a6) = (
            rm(self.a1 as i128),
            rm(self.a2 as i128),
            rm(self.a3 as i128),
            rm(self.a4 as i128),
            rm(self.a6 as i128),
        );
        let mut count: i64 = 1; // infinity
        for x in 0..m {
            let rhs = rm(rm(rm(x * x) * x) + rm(a2 * x * x) + rm(a4 * x) + a6);
            let a1x_a3 = rm(a1 * x + a3);
            for y in 0..m {
                if rm(y * y + a1x_a3 * y) == rhs {
                    count += 1;
                }
            }
        }
        let a = l as i64 + 1 - count;
        debug_assert!((a as i128) * (a as i128) <= 4 * l as i128, "Hasse bound");
        Ok(a)
    }

    /// Traces a_l for all good primes l < bound, computed per prime in
    /// parallel and merged in order.
    pub fn trace_table(&self, bound: u64) -> TraceTable {
        let entries: BTreeMap<u64, i64> = crate::algebra::primes_below(bound)
            .into_par_iter()
            .filter(|&l| self.has_good_reduction(l))
            .map(|l| (l, self.count_points(l).expect("good reduction checked")))
            .collect();
        TraceTable { entries }
    }

    /// psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    pub fn psi2_squared(&self) -> IntPoly {
        IntPoly::from_i64(&[self.b6, 2 * self.b4, self.b2, 4])
    }

    /// Odd-index division polynomial psi_n as a polynomial in x, of degree
    /// (n^2 - 1)/2 with leading coefficient n.
    pub fn division_polynomial(&self, n: u64) -> Result<IntPoly, EllipticError> {
        if n == 0 || n % 2 == 0 {
            return Err(EllipticError::UnsupportedIndex(n));
        }
        let w = self.w_table(n as usize);
        Ok(w[n as usize].clone())
    }

    /// W_n = psi_n for odd n and psi_n / psi_2 for even n; both are
    /// polynomials in x, and the recurrences close over W using psi_2^2 only.
    fn w_table(&self, n: usize) -> Vec<IntPoly> {
        let (b2, b4, b6, b8) = (self.b2, self.b4, self.b6, self.b8);
        let psi2sq = self.psi2_squared();
        let psi2sq_sq = &psi2sq * &psi2sq;
        let mut w: Vec<IntPoly> = Vec::with_capacity(n.max(5) + 1);
        w.push(IntPoly::zero());
        w.push(IntPoly::one());
        w.push(IntPoly::one());
        w.push(IntPoly::from_i64(&[b8, 3 * b6, 3 * b4, b2, 3]));
        w.push(IntPoly::from_i64(&[
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            10 * b8,
            10 * b6,
            5 * b4,
            b2,
            2,
        ]));
        for k in 5..=n.max(4) {
            let m = k / 2;
            let next = if k % 2 == 1 {
                // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
                let lhs = &w[m + 2] * &(&(&w[m] * &w[m]) * &w[m]);
                let rhs = &w[m - 1] * &(&(&w[m + 1] * &w[m + 1]) * &w[m + 1]);
                if m % 2 == 0 {
                    &(&lhs * &psi2sq_sq) - &rhs
                } else {
                    &lhs - &(&rhs * &psi2sq_sq)
                }
            } else {
                // psi_2 psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
                let lhs = &w[m + 2] * &(&w[m - 1] * &w[m - 1]);
                let rhs = &w[m - 2] * &(&w[m + 1] * &w[m + 1]);
                &w[m] * &(&lhs - &rhs)
            };
            w.push(next);
        }
        w
    }

    /// The defining relation of the curve evaluated at Y = y0: a cubic in x.
    fn curve_relation_at(&self, y0: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(vec![
            y0 * y0 + BigInt::from(self.a3) * y0 - BigInt::from(self.a6),
            BigInt::from(self.a1) * y0 - BigInt::from(self.a4),
            BigInt::from(-self.a2),
            BigInt::from(-1),
        ])
    }

    /// Exact degree-24 polynomial prod (X - 5 y_i) over the nonzero
    /// 5-torsion points, by resultant + interpolation + rescaling.
    pub fn torsion_field_polynomial(&self) -> Result<IntPoly, EllipticError> {
        let psi5 = self.division_polynomial(5)?;
        assert_eq!(psi5.degree(), Some(12));
        assert_eq!(psi5.leading_coeff(), Some(&BigInt::from(5)));
        // R(Y) = Res_x(psi5, curve relation) has degree 24 and lc 5^3
        let points: Vec<(BigInt, BigInt)> = (0..=24i64)
            .map(|y0| {
                let y0 = BigInt::from(y0);
                let rel = self.curve_relation_at(&y0);
                let r = psi5.resultant(&rel).expect("nonzero inputs");
                (y0, r)
            })
            .collect();
        let r_of_y = interpolate_exact(&points)
            .expect("resultant values interpolate to an integer polynomial");
        assert_eq!(r_of_y.degree(), Some(24), "resultant degeneracy");
        assert_eq!(r_of_y.leading_coeff(), Some(&BigInt::from(125)));
        // f(X) = 5^21 R(X/5): coefficient k picks up 5^(21-k)
        let five = BigInt::from(5);
        let mut coeffs = Vec::with_capacity(25);
        for k in 0..=24usize {
            let c = r_of_y.coeff(k);
            let scaled = if k <= 21 {
                c * five.pow(21 - k as u32)
            } else {
                let (q, r) = c.div_rem(&five.pow(k as u32 - 21));
                assert!(r.is_zero(), "scaling must clear denominators exactly");
                q
            };
            coeffs.push(scaled);
        }
        let f = IntPoly::from_coeffs(coeffs);
        assert!(f.is_monic() && f.degree() == Some(24));
        Ok(f)
    }

    /// Independent numeric route to the same polynomial: roots of psi_5 at
    /// high precision, both y values per x from the quadratic formula, and
    /// the rounded expansion of prod (X - 5y). Returns the polynomial and
    /// the worst absolute rounding residual.
    pub fn torsion_field_polynomial_numeric(
        &self,
        precision_bits: u32,
    ) -> Result<(IntPoly, f64), EllipticError> {
        let psi5 = self.division_polynomial(5)?;
        let roots = complex_roots(&psi5, precision_bits)?;
        let prec = roots[0].value.prec();
        let two = Fixed::from_i64(2, prec);
        let four = Cpx::new(Fixed::from_i64(4, prec), Fixed::zero(prec));
        let mut ys: Vec<Cpx> = Vec::with_capacity(24);
        for r in &roots {
            let x = &r.value;
            // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
            let a1x_a3 = scale_add(x, self.a1, self.a3, prec);
            let cubic = {
                let a2x = scale_add(x, self.a2, 0, prec);
                let x2 = x.mul(x);
                let t = x.mul(&x2.add(&a2x)); // x^3 + a2 x^2
                let a4x = scale_add(x, self.a4, self.a6, prec);
                t.add(&a4x)
            };
            let disc = a1x_a3.mul(&a1x_a3).add(&four.mul(&cubic));
            let sq = disc.sqrt();
            let minus_b = a1x_a3.neg();
            for s in [sq.clone(), sq.neg()] {
                let y = Cpx::new(
                    minus_b.re.add(&s.re).div(&two),
                    minus_b.im.add(&s.im).div(&two),
                );
                ys.push(y);
            }
        }
        // expand prod (X - 5y)
        let five = Cpx::new(Fixed::from_i64(5, prec), Fixed::zero(prec));
        let mut coeffs: Vec<Cpx> = vec![Cpx::new(Fixed::from_i64(1, prec), Fixed::zero(prec))];
        for y in &ys {
            let t = five.mul(y);
            let mut next = vec![Cpx::zero(prec); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(&t));
            }
            coeffs = next;
        }
        let mut out = Vec::with_capacity(25);
        let mut worst: f64 = 0.0;
        for c in &coeffs {
            let rounded = c.re.round();
            let err = c.re.sub(&Fixed::from_bigint(&rounded, prec)).abs().to_f64()
                + c.im.abs().to_f64();
            worst = worst.max(err);
            out.push(rounded);
        }
        Ok((IntPoly::from_coeffs(out), worst))
    }
}

fn scale_add(x: &Cpx, mul: i64, add: i64, prec: u32) -> Cpx {
    let m = Cpx::new(Fixed::from_i64(mul, prec), Fixed::zero(prec));
    let a = Cpx::new(Fixed::from_i64(add, prec), Fixed::zero(prec));
    x.mul(&m).add(&a)
}

impl TryFrom<[i64; 5]> for CurveQ {
    type Error = String;
    fn try_from(a: [i64; 5]) -> Result<Self, String> {
        CurveQ::new(a).map_err(|e| e.to_string())
    }
}

impl From<CurveQ> for [i64; 5] {
    fn from(c: CurveQ) -> [i64; 5] {
        c.a_invariants()
    }
}

/// Map l -> a_l with the Hasse bound holding for every entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceTable {
    pub entries: BTreeMap<u64, i64>,
}

/// Verification of the degree-24 polynomial by Frobenius cycle types.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionFieldReport {
    /// f mod 47 is irreducible: an element of order 24 exists.
    pub mod47_irreducible: bool,
    pub mod47_cycle_type: Option<Vec<usize>>,
    /// Cycle type mod 19 contains a part of size 20: an order-20 element.
    pub mod19_has_degree_20_part: bool,
    pub mod19_cycle_type: Option<Vec<usize>>,
    /// Factorization mod 2, recorded for information only (no claim).
    pub mod2_cycle_type: Option<Vec<usize>>,
    /// Orders 20 and 24 both occur, which forces the Galois group to be all
    /// of GL2(F5) (combined with the group facts report).
    pub conclusion_full_gl2: bool,
}

/// Checks the inertial-degree facts of the degree-24 polynomial.
pub fn verify_torsion_field(f: &IntPoly) -> TorsionFieldReport {
    let cycle = |l: u64| crate::numberfield::frobenius_record(f, l).ok().map(|r| r.cycle_type);
    let c47 = cycle(47);
    let c19 = cycle(19);
    let c2 = cycle(2);
    let mod47_irreducible = c47.as_deref() == Some(&[24]);
    let mod19_has_degree_20_part = c19.as_deref().map_or(false, |c| c.contains(&20));
    TorsionFieldReport {
        mod47_irreducible,
        mod47_cycle_type: c47,
        mod19_has_degree_20_part,
        mod19_cycle_type: c19,
        mod2_cycle_type: c2,
        conclusion_full_gl2: mod47_irreducible && mod19_has_degree_20_part,
    }
}

/// Valuation helper re-exported for report code.
pub fn disc_valuation(disc: &BigInt, p: u64) -> u32 {
    valuation(disc, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e163a() -> CurveQ {
        CurveQ::new([0, 0, 1, -2, 1]).unwrap()
    }

    #[test]
    fn curve_invariants() {
        let e = e163a();
        assert_eq!((e.b2, e.b4, e.b6, e.b8), (0, -4, 5, -4));
        assert_eq!(e.discriminant, BigInt::from(-163));
        assert!(e.has_good_reduction(5));
        assert!(!e.has_good_reduction(163));
    }

    #[test]
    fn point_counts_spot_values() {
        let e = e163a();
        assert_eq!(e.count_points(2).unwrap(), 0); // (1,0), (1,1), infinity
        assert_eq!(e.count_points(3).unwrap(), 0);
        assert_eq!(e.count_points(7).unwrap(), 2); // 6 points
        assert_eq!(e.count_points(163), Err(EllipticError::BadReduction(163)));
    }

    #[test]
    fn trace_table_hasse() {
        let e = e163a();
        let t = e.trace_table(50);
        assert_eq!(t.entries.len(), 15); // every prime below 50 is good (conductor 163)
        for (&l, &a) in &t.entries {
            assert!((a * a) as u64 <= 4 * l, "Hasse fails at {l}");
        }
        assert_eq!(t.entries[&2], 0);
        assert_eq!(t.entries[&47], 1);
    }

    #[test]
    fn division_polynomials() {
        let e = e163a();
        assert_eq!(e.psi2_squared(), IntPoly::from_i64(&[5, -8, 0, 4]));
        assert_eq!(
            e.division_polynomial(3).unwrap(),
            IntPoly::from_i64(&[-4, 15, -12, 0, 3])
        );
        let psi5 = e.division_polynomial(5).unwrap();
        assert_eq!(psi5.degree(), Some(12));
        assert_eq!(psi5.leading_coeff(), Some(&BigInt::from(5)));
        assert_eq!(e.division_polynomial(4), Err(EllipticError::UnsupportedIndex(4)));
        // psi_7 shape: degree (49-1)/2 = 24, leading coefficient 7
        let psi7 = e.division_polynomial(7).unwrap();
        assert_eq!(psi7.degree(), Some(24));
        assert_eq!(psi7.leading_coeff(), Some(&BigInt::from(7)));
    }

    #[test]
    fn psi5_vanishes_on_brute_force_5_torsion() {
        // for primes with 5 | #E(F_l), find a point of order 5 by scalar
        // multiplication and check psi_5(x) = 0 mod l
        let e = e163a();
        let psi5 = e.division_polynomial(5).unwrap();
        let mut tested = 0;
        for l in crate::algebra::primes_below(150) {
            if !e.has_good_reduction(l) {
                continue;
            }
            let group_order = l as i64 + 1 - e.count_points(l).unwrap();
            if group_order % 5 != 0 {
                continue;
            }
            if let Some(x) = five_torsion_x(&e, l, group_order as u64) {
                let v = psi5.reduce_mod(l).evaluate(x);
                assert_eq!(v, 0, "psi_5({x}) != 0 mod {l}");
                tested += 1;
            }
        }
        assert!(tested >= 3, "expected several usable primes, got {tested}");
    }

    /// Oracle: brute-force point arithmetic over F_l to exhibit a point of
    /// exact order 5, returning its x-coordinate.
    fn five_torsion_x(e: &CurveQ, l: u64, group_order: u64) -> Option<u64> {
        let m = l as i128;
        let rm = |v: i128| v.rem_euclid(m);
        type Pt = Option<(i128, i128)>;
        let (a1, a2, a3, a4, a6) = (
            e.a1 as i128,
            e.a2 as i128,
            e.a3 as i128,
            e.a4 as i128,
            e.a6 as i128,
        );
        let neg = |p: Pt| -> Pt { p.map(|(x, y)| (x, rm(-y - a1 * x - a3))) };
        let inv = |v: i128| -> i128 {
            let mut acc = 1i128;
            let mut b = rm(v);
            let mut ex = m - 2;
            while ex > 0 {
                if ex & 1 == 1 {
                    acc = rm(acc * b);
                }
                b = rm(b * b);
                ex >>= 1;
            }
            acc
        };
        let add = |p: Pt, q: Pt| -> Pt {
            let (x1, y1) = match p {
                None => return q,
                Some(v) => v,
            };
            let (x2, y2) = match q {
                None => return p,
                Some(v) => v,
            };
            if x1 == x2 && rm(y1 + y2 + a1 * x2 + a3) == 0 {
                return None;
            }
            let lam = if x1 == x2 {
                rm(rm(3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * inv(rm(2 * y1 + a1 * x1 + a3)))
            } else {
                rm(rm(y2 - y1) * inv(rm(x2 - x1)))
            };
            let nu = rm(y1 - lam * x1);
            let x3 = rm(lam * lam + a1 * lam - a2 - x1 - x2);
            let y3 = rm(-(lam + a1) * x3 - nu - a3);
            Some((x3, y3))
        };
        let scalar = |mut k: u64, p: Pt| -> Pt {
            let mut acc: Pt = None;
            let mut base = p;
            while k > 0 {
                if k & 1 == 1 {
                    acc = add(acc, base);
                }
                base = add(base, base);
                k >>= 1;
            }
            acc
        };
        let _ = neg;
        for x in 0..m {
            for y in 0..m {
                if rm(y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)) == 0 {
                    let p: Pt = Some((x, y));
                    let q = scalar(group_order / 5, p);
                    if let Some((qx, _)) = q {
                        if scalar(5, q).is_none() {
                            return Some(qx as u64);
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn torsion_polynomial_round_trips_numerically() {
        let e = e163a();
        let exact = e.torsion_field_polynomial().unwrap();
        assert_eq!(exact.degree(), Some(24));
        assert!(exact.is_monic());
        let (numeric, residual) = e.torsion_field_polynomial_numeric(300).unwrap();
        assert!(residual < 1e-8, "residual {residual}");
        assert_eq!(exact, numeric);
    }

    #[test]
    fn torsion_field_verification() {
        let e = e163a();
        let f = e.torsion_field_polynomial().unwrap();
        let report = verify_torsion_field(&f);
        assert!(report.mod47_irreducible);
        assert!(report.mod19_has_degree_20_part);
        assert!(report.conclusion_full_gl2);
    }

    #[test]
    fn singular_curve_rejected() {
        assert!(matches!(CurveQ::new([0, 0, 0, 0, 0]), Err(EllipticError::SingularCurve)));
    }
}
