//! Multiple conjugation biquandles (MCBs), their prismatic chain complex,
//! and the cocycle invariants of S¹-oriented handlebody-links they induce.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: finite biquandles, finite groups, parallel operations and
//!   G-families of biquandles (including the Alexander families).
//! * [`mcb`]: the [`Mcb`] trait, tabulated and family-associated MCBs,
//!   X-sets and exhaustive axiom verification.
//! * [`diagram`]: the combinatorial diagram model and its JSON format.
//! * [`coloring`]: enumeration of X- and X_Y-colorings.
//! * [`chain`]: prismatic chains, boundaries, the degenerate subcomplex and
//!   exact integer homology.
//! * [`cocycle`]: biquandle cocycles, their lifts, Alexander-family cocycles
//!   and cocycle verification.
//! * [`invariant`]: weights, the cycle `W(D;C)` and the invariants built on it.
//! * [`registry`]: stable names for the built-in algebras and cocycles.

pub mod algebra;
pub mod chain;
pub mod cocycle;
pub mod coloring;
pub mod diagram;
pub mod error;
pub mod invariant;
pub mod io;
pub mod mcb;
pub mod registry;
pub mod report;

pub use algebra::{FinBiquandle, FinGroup, GFamily, GroupHom};
pub use chain::{Chain, PrismGen};
pub use cocycle::{Cochain, Coefficients};
pub use coloring::{Coloring, SearchOptions};
pub use diagram::Diagram;
pub use error::{Error, Result};
pub use mcb::{AssocMcb, Mcb, TableMcb, XSetAction};
pub use report::AxiomReport;
