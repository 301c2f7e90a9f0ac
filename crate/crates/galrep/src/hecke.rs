//! Hecke eigenvalue systems and their two-dimensional decomposition.
//!
//! A system assigns to each prime l (l != 5, l < 50 in the shipped data) the
//! pair (a(l,1), a(l,2)) in F5, with a(l,0) = a(l,3) = 1 implicit. The Hecke
//! polynomial at l is
//!
//! ```text
//!   1 - a(l,1) X + l a(l,2) X^2 - l^3 X^3   (mod 5).
//! ```
//!
//! A two-dimensional representation with trace b(l) and determinant l mod 5
//! produces two three-dimensional direct sums, with characteristic
//! polynomials
//!
//! ```text
//!   theta : 1 - (b(l) + l^2) X + (l + l^2 b(l)) X^2 - l^3 X^3
//!   theta': 1 - (l b(l) + 1) X + (l^3 + l b(l)) X^2 - l^3 X^3.
//! ```
//!
//! Six systems therefore pair up by an eigenvalue swap, each pair determines
//! one trace system b(l), and each trace value predicts the possible orders
//! of a Frobenius image in GL2(F5) through the exhaustive oracle in [`gl2`].
//!
//! Row labels printed in the source tables are treated as untrusted display
//! strings everywhere: all cross-table correspondences are computed.

use crate::gl2::{self, CharPoly2, F5};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeckeError {
    #[error("prime {0} is excluded (ramified or equal to the residue characteristic)")]
    ExcludedPrime(u64),
    #[error("no unique perfect matching of eigenvalue systems: {0}")]
    PairingFailure(String),
    #[error("eigenvalue identities fail for pair ({0}, {1}) at l = {2}")]
    InconsistentPair(String, String, u64),
}

/// One row pair of the eigenvalue table: l -> (a(l,1), a(l,2)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSystem {
    pub name: String,
    /// Keys are primes l != 5; values are (a(l,1), a(l,2)) in F5.
    pub entries: BTreeMap<u64, (F5, F5)>,
}

impl EigenSystem {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }
}

/// Degree-3 Hecke polynomial over F5, ascending coefficients, constant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeCubic(pub [F5; 4]);

/// Map l -> b(l) recovered from a system pair, plus where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSystem {
    pub entries: BTreeMap<u64, F5>,
    /// Names of the (theta-role, theta'-role) systems that produced it.
    pub provenance: (String, String),
}

/// Per-prime possible orders at the GL2 level and at the PGL2 = S5 level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderSets {
    pub gl2: BTreeSet<u32>,
    pub pgl: BTreeSet<u32>,
}

/// Map l -> order sets derived from a trace system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderPrediction {
    pub entries: BTreeMap<u64, OrderSets>,
    pub provenance: (String, String),
}

/// The Hecke polynomial 1 - a1 X + l a2 X^2 - l^3 X^3 mod 5.
pub fn hecke_polynomial(l: u64, a1: F5, a2: F5) -> Result<HeckeCubic, HeckeError> {
    if l == 5 {
        return Err(HeckeError::ExcludedPrime(l));
    }
    let lm = F5::new(l as i64);
    let l3 = lm.mul(lm).mul(lm);
    Ok(HeckeCubic([F5(1), a1.neg(), lm.mul(a2), l3.neg()]))
}

/// Characteristic polynomials of the two direct sums built from trace b at l.
pub fn theta_charpolys(b: F5, l: u64) -> Result<(HeckeCubic, HeckeCubic), HeckeError> {
    if l == 5 {
        return Err(HeckeError::ExcludedPrime(l));
    }
    let lm = F5::new(l as i64);
    let l2 = lm.mul(lm);
    let l3 = l2.mul(lm);
    let theta = HeckeCubic([
        F5(1),
        b.add(l2).neg(),
        lm.add(l2.mul(b)),
        l3.neg(),
    ]);
    let theta_prime = HeckeCubic([
        F5(1),
        lm.mul(b).add(F5(1)).neg(),
        l3.add(lm.mul(b)),
        l3.neg(),
    ]);
    Ok((theta, theta_prime))
}

/// Pairs up six eigenvalue systems by the eigenvalue swap
/// a_i(l,1) = a_j(l,2), a_i(l,2) = a_j(l,1) at every l, requiring a unique
/// perfect matching. Pairs are returned as index pairs (i < j).
pub fn pair_systems(systems: &[EigenSystem]) -> Result<Vec<(usize, usize)>, HeckeError> {
    let n = systems.len();
    if n == 0 || n % 2 != 0 {
        return Err(HeckeError::PairingFailure(format!(
            "need an even number of systems, got {n}"
        )));
    }
    let primes: BTreeSet<u64> = systems[0].primes().collect();
    for s in systems {
        if s.primes().collect::<BTreeSet<_>>() != primes {
            return Err(HeckeError::PairingFailure(format!(
                "system {} has a different prime list",
                s.name
            )));
        }
    }
    let compatible = |i: usize, j: usize| {
        systems[i].entries.iter().all(|(l, &(a1, a2))| {
            let (b1, b2) = systems[j].entries[l];
            a1 == b2 && a2 == b1
        })
    };
    let mut edges = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            edges[i][j] = compatible(i, j);
        }
    }
    // enumerate perfect matchings; demand exactly one
    let mut matchings: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut used = vec![false; n];
    let mut current = Vec::new();
    fn recurse(
        edges: &Vec<Vec<bool>>,
        used: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let n = used.len();
        let Some(i) = (0..n).find(|&i| !used[i]) else {
            out.push(current.clone());
            return;
        };
        used[i] = true;
        for j in i + 1..n {
            if !used[j] && edges[i][j] {
                used[j] = true;
                current.push((i, j));
                recurse(edges, used, current, out);
                current.pop();
                used[j] = false;
            }
        }
        used[i] = false;
    }
    recurse(&edges, &mut used, &mut current, &mut matchings);
    match matchings.len() {
        0 => Err(HeckeError::PairingFailure("no perfect matching".into())),
        1 => Ok(matchings.pop().unwrap()),
        k => Err(HeckeError::PairingFailure(format!(
            "ambiguous matching ({k} perfect matchings)"
        ))),
    }
}

/// Recovers b(l) = a_i(l,1) - l^2 from a paired system, verifying all four
/// identities at every l. The theta role is determined by trying both
/// orientations; failure of both is an inconsistent pair.
pub fn recover_trace(
    first: &EigenSystem,
    second: &EigenSystem,
) -> Result<TraceSystem, HeckeError> {
    match recover_oriented(first, second) {
        Ok(t) => Ok(t),
        Err(e1) => recover_oriented(second, first).map_err(|_| e1),
    }
}

fn recover_oriented(
    theta_sys: &EigenSystem,
    theta_prime_sys: &EigenSystem,
) -> Result<TraceSystem, HeckeError> {
    let mut entries = BTreeMap::new();
    for (&l, &(a1, a2)) in &theta_sys.entries {
        let lm = F5::new(l as i64);
        let l2 = lm.mul(lm);
        let b = a1.sub(l2);
        let (c1, c2) = theta_prime_sys.entries[&l];
        let ok = a2 == F5(1).add(lm.mul(b)) && c1 == lm.mul(b).add(F5(1)) && c2 == l2.add(b);
        if !ok {
            return Err(HeckeError::InconsistentPair(
                theta_sys.name.clone(),
                theta_prime_sys.name.clone(),
                l,
            ));
        }
        entries.insert(l, b);
    }
    Ok(TraceSystem {
        entries,
        provenance: (theta_sys.name.clone(), theta_prime_sys.name.clone()),
    })
}

/// Per-prime order sets from the exhaustive GL2(F5) oracle, with ambiguous
/// entries preserved as two-element sets.
pub fn predict_orders(t: &TraceSystem) -> OrderPrediction {
    let entries = t
        .entries
        .iter()
        .map(|(&l, &b)| {
            let d = F5::new(l as i64);
            let cp = CharPoly2::new(b, d).expect("l != 5 so det is nonzero");
            (
                l,
                OrderSets {
                    gl2: gl2::orders_for_charpoly(cp),
                    pgl: gl2::pgl_orders_for_charpoly(cp),
                },
            )
        })
        .collect();
    OrderPrediction {
        entries,
        provenance: t.provenance.clone(),
    }
}
