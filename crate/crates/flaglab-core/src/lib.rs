//! Exact-arithmetic toolkit for the flag threefold `F = F(0,1,2)`, the
//! incidence variety of (point, line) pairs in the projective plane.
//!
//! The crate provides:
//!
//! * [`exact`] — rational scalars, dense matrices, subspaces and univariate
//!   polynomials, all over arbitrary-precision rationals;
//! * [`chow`] — the Chow ring `Z[h1,h2]/(h1²-h1h2+h2², h1³, h2³)` and
//!   Riemann–Roch Euler characteristics;
//! * [`graded`] — the bigraded coordinate ring of `F` modulo the flag quadric
//!   `x0y0+x1y1+x2y2`, closed-form line-bundle cohomology and Euler
//!   characteristics of resolutions;
//! * [`delpezzo`] — classification of the degree-six del Pezzo hyperplane
//!   sections of `F` from their 3×3 matrices;
//! * [`curves`] — multi-index combinatorics and numerology of the curves cut
//!   out by sections of twisted instanton bundles;
//! * [`monad`] — construction and interrogation of self-dual instanton
//!   monads, including splitting types on conics;
//! * [`moduli`] — dimension tables for the moduli spaces and a rigorous
//!   interval-arithmetic path witness.
//!
//! All computations are exact; no floating point is used anywhere.

pub mod chow;
pub mod curves;
pub mod delpezzo;
pub mod exact;
pub mod graded;
pub mod moduli;
pub mod monad;
