//! galrep: an exact computational number theory toolkit built around one
//! verification pipeline: decompose mod-5 Hecke eigenvalue systems at level
//! 163 into two-dimensional trace systems, predict Frobenius orders in
//! GL2(F5), certify the quintic fields of discriminant 5^5*163^4 found by a
//! targeted Hunter search, check degree-6 resolvents and degree-24 defining
//! polynomials by Frobenius cycle types, and reconstruct the 5-torsion field
//! polynomial of the conductor-163 elliptic curve exactly.
//!
//! Modules follow the mathematical layering:
//!
//! * [`algebra`] — big-integer polynomials, mod-p factorization, fixed-point
//!   complex root finding, square-part extraction;
//! * [`gl2`] — exact GL2(F5) / F25 / PGL2(F5) arithmetic and the
//!   characteristic-polynomial-to-order oracle;
//! * [`hecke`] — eigenvalue systems, Hecke polynomials, the direct-sum
//!   decomposition, trace recovery, and order prediction;
//! * [`numberfield`] — Frobenius records, the Dedekind criterion,
//!   discriminant certification, and field fingerprints;
//! * [`hunter`] — the targeted Hunter search (bounds, coefficient boxes,
//!   pruned enumeration, deterministic merge);
//! * [`resolvent`] — the degree-6 resolvent of a quintic and the
//!   splitting-field consistency check;
//! * [`elliptic`] — point counts, division polynomials, and the exact
//!   degree-24 torsion field polynomial;
//! * [`pipeline`] — asset loading, the end-to-end verification run, and
//!   deterministic report emission.
//!
//! Everything is exact integer or finite-field arithmetic except the root
//! finder, which certifies its residuals; all randomized steps take recorded
//! seeds, so a pipeline run is reproducible byte for byte.

pub mod algebra;
pub mod cli;
pub mod elliptic;
pub mod gl2;
pub mod hecke;
pub mod hunter;
pub mod numberfield;
pub mod pipeline;
pub mod resolvent;

pub use algebra::{IntPoly, ModPoly};
