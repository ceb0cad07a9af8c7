//! Crystal combinatorics on level-l Fock spaces, computed on l-abaci.
//!
//! The affine sl_e crystal, the sl_infinity (Heisenberg) crystal, closed formulas for
//! charges in eZ^l, and classifiers for finite-dimensional simple modules of cyclotomic
//! rational Cherednik algebras.

pub mod abacus;
pub mod cherednik;
pub mod closedform;
pub mod error;
pub mod graph;
pub mod notation;
pub mod oracle;
pub mod partition;
pub mod render;
pub mod sle;
pub mod slinf;

pub use abacus::{
    bead_compare, beta_numbers, materialize, to_multipartition, translate_charge, AbacusWindow,
    Bead, ChargedMultipartition,
};
pub use error::{CrystalError, Result};
pub use partition::{Charge, Partition};
