//! Exact enumeration of essential spanning surfaces of 2-bridge knots and
//! non-orientable-surface obstructions to cosmetic Dehn surgery.
//!
//! The pipeline: [`surfaces`] enumerates continued-fraction expansions and
//! their surfaces, [`invariants`] computes the classical filters, and
//! [`obstruction`] compares minimal genera of closed non-orientable surfaces
//! in two surgered manifolds, emitting certificates that [`check`] verifies
//! independently.

pub mod check;
pub mod cli;
pub mod invariants;
pub mod knot;
pub mod laurent;
pub mod obstruction;
pub mod slope;
pub mod surfaces;

pub use knot::TwoBridgeKnot;
pub use laurent::LaurentPolynomial;
pub use obstruction::{distinguish, Verdict, VerdictKind};
pub use slope::Slope;
pub use surfaces::{SurfaceDescriptor, SurfaceTable};
