//! Dense univariate polynomials over F_p for a prime p < 2^31.
//!
//! Factorization is the classical pipeline: squarefree decomposition (with
//! the char-p perfect-power case), distinct-degree factorization, and seeded
//! equal-degree splitting (Cantor–Zassenhaus for odd p, the trace map for
//! p = 2). Output ordering is deterministic: factors sorted by degree, then
//! lexicographically on ascending coefficients, so a factorization is
//! reproducible independently of the random splitting path.

use super::AlgebraError;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// Seed used for equal-degree splitting when the caller does not supply one;
/// recorded in pipeline metadata so runs are reproducible.
pub const DEFAULT_FACTOR_SEED: u64 = 163;

static FACTOR_SEED: std::sync::atomic::AtomicU64 =
    std::sync::atomic::AtomicU64::new(DEFAULT_FACTOR_SEED);

/// Overrides the process-wide default splitting seed (CLI startup only).
/// Factorizations are canonical regardless of the seed; this exists so runs
/// can be reproduced with the recorded value.
pub fn set_default_factor_seed(seed: u64) {
    FACTOR_SEED.store(seed, std::sync::atomic::Ordering::Relaxed);
}

pub(crate) fn default_factor_seed() -> u64 {
    FACTOR_SEED.load(std::sync::atomic::Ordering::Relaxed)
}

/// Polynomial over F_p, ascending coefficients, all residues reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!(p >= 2 && p < (1 << 31), "modulus must be a prime < 2^31");
        let mut q = ModPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        q.normalize();
        q
    }

    pub fn zero(p: u64) -> Self {
        ModPoly::new(p, vec![])
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    /// Reduces signed big-integer coefficients into [0, p).
    pub fn from_bigint_coeffs(p: u64, coeffs: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        let reduced = coeffs
            .iter()
            .map(|c| {
                let mut r = c % &pb;
                if r.is_negative() {
                    r += &pb;
                }
                u64::try_from(r).expect("residue fits u64")
            })
            .collect();
        ModPoly::new(p, reduced)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn invm(&self, a: u64) -> u64 {
        // extended Euclid; a != 0 mod p
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, (a % self.p) as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        ((t % self.p as i128 + self.p as i128) % self.p as i128) as u64
    }

    pub fn add(&self, rhs: &ModPoly) -> ModPoly {
        assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.addm(self.coeff(i), rhs.coeff(i));
        }
        ModPoly::new(self.p, out)
    }

    pub fn sub(&self, rhs: &ModPoly) -> ModPoly {
        assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.subm(self.coeff(i), rhs.coeff(i));
        }
        ModPoly::new(self.p, out)
    }

    pub fn mul(&self, rhs: &ModPoly) -> ModPoly {
        assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = self.addm(out[i + j], self.mulm(a, b));
            }
        }
        ModPoly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        ModPoly::new(self.p, self.coeffs.iter().map(|&a| self.mulm(a, c % self.p)).collect())
    }

    pub fn make_monic(&self) -> ModPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.invm(self.leading_coeff()))
    }

    pub fn div_rem(&self, rhs: &ModPoly) -> (ModPoly, ModPoly) {
        assert_eq!(self.p, rhs.p);
        let dg = rhs.degree().expect("division by zero polynomial");
        let df = match self.degree() {
            Some(d) if d >= dg => d,
            _ => return (ModPoly::zero(self.p), self.clone()),
        };
        let lc_inv = self.invm(rhs.leading_coeff());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; df - dg + 1];
        for k in (0..q.len()).rev() {
            let lead = r[k + dg];
            if lead == 0 {
                continue;
            }
            let qc = self.mulm(lead, lc_inv);
            q[k] = qc;
            for (i, &gc) in rhs.coeffs.iter().enumerate() {
                r[k + i] = self.subm(r[k + i], self.mulm(qc, gc));
            }
        }
        (ModPoly::new(self.p, q), ModPoly::new(self.p, r))
    }

    pub fn rem(&self, rhs: &ModPoly) -> ModPoly {
        self.div_rem(rhs).1
    }

    pub fn gcd(&self, rhs: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        ModPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulm(c, (i as u64) % self.p))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.addm(self.mulm(acc, x % self.p), c);
        }
        acc
    }

    /// self^e mod m, exponent e as u64.
    pub fn pow_mod(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// self^(p^k) mod m by k-fold p-power.
    pub fn frobenius_pow(&self, k: usize, m: &ModPoly) -> ModPoly {
        let mut acc = self.rem(m);
        for _ in 0..k {
            acc = acc.pow_mod(self.p, m);
        }
        acc
    }

    /// Resultant over F_p via the Euclidean remainder sequence, with the
    /// same convention as the integer version.
    pub fn resultant(&self, other: &ModPoly) -> Result<u64, AlgebraError> {
        if self.is_zero() || other.is_zero() {
            return Err(AlgebraError::InvalidArgument(
                "resultant of a zero polynomial".into(),
            ));
        }
        fn res(f: &ModPoly, g: &ModPoly) -> u64 {
            let p = f.modulus();
            let df = f.degree().unwrap();
            match g.degree() {
                Some(0) => {
                    let mut acc = 1u64;
                    for _ in 0..df {
                        acc = ((acc as u128 * g.coeff(0) as u128) % p as u128) as u64;
                    }
                    acc
                }
                _ => {
                    let dg = g.degree().unwrap();
                    let r = f.rem(g);
                    if r.is_zero() {
                        return 0;
                    }
                    let dr = r.degree().unwrap();
                    // Res(f, g) = (-1)^(df dg) lc(g)^(df - dr) Res(g, r)
                    let mut acc = res(g, &r);
                    let lc = g.leading_coeff();
                    for _ in 0..df - dr {
                        acc = ((acc as u128 * lc as u128) % p as u128) as u64;
                    }
                    if (df * dg) % 2 == 1 && acc != 0 {
                        acc = p - acc;
                    }
                    acc
                }
            }
        }
        if self.degree() == Some(0) {
            let mut acc = 1u64;
            for _ in 0..other.degree().unwrap() {
                acc = ((acc as u128 * self.coeff(0) as u128) % self.p as u128) as u64;
            }
            return Ok(acc);
        }
        Ok(res(self, other))
    }

    /// Discriminant over F_p: (-1)^(n(n-1)/2) Res(f, f') / lc(f), with f'
    /// taken at its formal degree n-1 (so reducing an integer polynomial
    /// whose leading coefficient stays a unit commutes with disc).
    pub fn discriminant(&self) -> Result<u64, AlgebraError> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(AlgebraError::InvalidArgument(
                    "discriminant needs degree >= 1".into(),
                ))
            }
        };
        if n == 1 {
            return Ok(1);
        }
        let df = self.derivative();
        if df.is_zero() {
            return Ok(0);
        }
        let res = self.resultant(&df)?;
        // formal-degree correction: Res_(n, n-1) = lc(f)^((n-1) - deg f') * Res
        let drop = (n - 1) - df.degree().unwrap();
        let mut d = self.mulm(res, self.invm(self.leading_coeff()));
        for _ in 0..drop {
            d = self.mulm(d, self.leading_coeff());
        }
        if (n * (n - 1) / 2) % 2 == 1 && d != 0 {
            d = self.p - d;
        }
        Ok(d)
    }

    /// True when the reduction is squarefree (gcd with derivative is constant).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// using `seed` for equal-degree splitting. The unit lc(f) is dropped;
    /// the product of factors^multiplicities equals the monic part of f.
    pub fn factor_seeded(&self, seed: u64) -> Result<Vec<(ModPoly, usize)>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::InvalidArgument(
                "cannot factor the zero polynomial".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(ModPoly, usize)> = Vec::new();
        for (sqf, mult) in self.make_monic().squarefree_decomposition() {
            for (d, prod) in sqf.distinct_degree() {
                for irr in prod.equal_degree(d, &mut rng) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
        });
        Ok(out)
    }

    /// Factorization with the process-default recorded seed.
    pub fn factor(&self) -> Result<Vec<(ModPoly, usize)>, AlgebraError> {
        self.factor_seeded(default_factor_seed())
    }

    /// True when f is irreducible over F_p.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            Some(1) => true,
            Some(d) if d >= 2 => {
                let f = self.make_monic();
                if !f.is_squarefree() {
                    return false;
                }
                // f irreducible iff x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1
                // for every prime q | d
                let x = ModPoly::x(self.p);
                if x.frobenius_pow(d, &f) != x.rem(&f) {
                    return false;
                }
                let mut m = d;
                let mut qs = Vec::new();
                let mut q = 2;
                while q * q <= m {
                    if m % q == 0 {
                        qs.push(q);
                        while m % q == 0 {
                            m /= q;
                        }
                    }
                    q += 1;
                }
                if m > 1 {
                    qs.push(m);
                }
                for q in qs {
                    let g = x.frobenius_pow(d / q, &f).sub(&x.rem(&f));
                    if f.gcd(&g).degree() != Some(0) {
                        return false;
                    }
                }
                true
            }
            _ => false,
        }
    }

    /// Squarefree decomposition in characteristic p: returns pairs
    /// (squarefree monic factor, multiplicity) with distinct multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(ModPoly, usize)> {
        let f = self.make_monic();
        let mut out = Vec::new();
        Self::sqf_rec(&f, 1, &mut out);
        out.retain(|(g, _)| g.degree().map_or(false, |d| d > 0));
        out
    }

    fn sqf_rec(f: &ModPoly, scale: usize, out: &mut Vec<(ModPoly, usize)>) {
        let p = f.p as usize;
        if f.degree() == Some(0) {
            return;
        }
        let df = f.derivative();
        if df.is_zero() {
            // f = g(x^p); recurse on g with multiplicities scaled by p
            let g = f.pth_root_of_pth_power();
            Self::sqf_rec(&g, scale * p, out);
            return;
        }
        let mut c = f.gcd(&df);
        let mut w = f.div_rem(&c).0;
        let mut i = 1usize;
        while w.degree() != Some(0) {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if fac.degree().map_or(false, |d| d > 0) {
                out.push((fac, i * scale));
            }
            w = y.clone();
            c = c.div_rem(&y).0;
            i += 1;
        }
        if c.degree() != Some(0) {
            // remaining part is a p-th power
            let g = c.pth_root_of_pth_power();
            Self::sqf_rec(&g, scale * p, out);
        }
    }

    /// For f with f' = 0 (so f = g(x^p)), returns g. In F_p, the coefficient
    /// map is a^(1/p) = a since the Frobenius is the identity on F_p.
    fn pth_root_of_pth_power(&self) -> ModPoly {
        let p = self.p as usize;
        let d = self.degree().unwrap_or(0);
        let mut coeffs = vec![0u64; d / p + 1];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            *slot = self.coeff(i * p);
        }
        ModPoly::new(self.p, coeffs)
    }

    /// Distinct-degree factorization of a squarefree monic f: list of
    /// (degree d, product of all irreducible factors of degree d).
    pub fn distinct_degree(&self) -> Vec<(usize, ModPoly)> {
        let mut f = self.make_monic();
        let x = ModPoly::x(self.p);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 0usize;
        while f.degree().map_or(false, |df| df >= 1) {
            d += 1;
            if f.degree().unwrap() < 2 * d {
                // what's left is irreducible
                out.push((f.degree().unwrap(), f.clone()));
                break;
            }
            h = h.pow_mod(self.p, &f);
            let g = f.gcd(&h.sub(&x.rem(&f)));
            if g.degree().map_or(false, |dg| dg > 0) {
                out.push((d, g.clone()));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        out
    }

    /// Equal-degree splitting of a monic squarefree product of degree-d
    /// irreducibles. Randomized (Cantor–Zassenhaus / trace map), driven by
    /// the supplied RNG for reproducibility.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let f = self.make_monic();
        let n = f.degree().unwrap_or(0);
        if n == 0 {
            return vec![];
        }
        if n == d {
            return vec![f];
        }
        let split = loop {
            let g = if self.p == 2 {
                // trace map: T(h) = h + h^2 + ... + h^(2^(d-1)) mod f
                let h = random_poly(self.p, n, rng).rem(&f);
                let mut t = h.clone();
                let mut hi = h;
                for _ in 1..d {
                    hi = hi.mul(&hi).rem(&f);
                    t = t.add(&hi);
                }
                f.gcd(&t)
            } else {
                // h^((p^d - 1)/2) - 1 splits the factors on average
                let h = random_poly(self.p, n, rng).rem(&f);
                if h.is_zero() {
                    continue;
                }
                let e = exp_half(self.p, d);
                let t = pow_mod_big(&h, &e, &f);
                f.gcd(&t.sub(&ModPoly::one(self.p)))
            };
            let dg = g.degree();
            if dg.map_or(false, |dg| dg > 0 && dg < n) {
                break g;
            }
        };
        let rest = f.div_rem(&split).0;
        let mut out = split.equal_degree(d, rng);
        out.extend(rest.equal_degree(d, rng));
        out
    }
}

/// (p^d - 1) / 2 as a big integer exponent.
fn exp_half(p: u64, d: usize) -> BigInt {
    (BigInt::from(p).pow(d as u32) - 1) / 2
}

fn pow_mod_big(base: &ModPoly, e: &BigInt, m: &ModPoly) -> ModPoly {
    let p = base.modulus();
    let mut acc = ModPoly::one(p);
    let mut b = base.rem(m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&b).rem(m);
        }
        if i + 1 < bits {
            b = b.mul(&b).rem(m);
        }
    }
    acc
}

fn random_poly(p: u64, max_deg: usize, rng: &mut ChaCha8Rng) -> ModPoly {
    let deg = rng.gen_range(1..=max_deg.max(1));
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    ModPoly::new(p, coeffs)
}

/// Deterministic Miller–Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Primes in ascending order starting from 2.
pub fn primes_below(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&n| is_prime_u64(n)).collect()
}
