//! Symbolic spectral sequences for C2 acting on Lubin-Tate theory at the prime 2.

pub mod analysis;
pub mod chart;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod gbt;
pub mod page;
pub mod picard;
pub mod json;
pub mod oracle;
pub mod presets;
pub mod verify;

pub use coefficients::{CoeffKind, CyclicModule, Multiplier, RingContext, VarSet};
pub use error::{Result, SsError};
pub use page::{CellKey, DifferentialRule, Monomial, Page, SpectralSequence, Summand, Window};
