//! Exact intersection theory on the Springer-resolution towers of
//! determinantal varieties, the (m, n, r, c) classification of their dual
//! linear sections, semiorthogonal bookkeeping, and finite-field spot
//! checks of the geometry.

pub mod bundle;
pub mod classify;
pub mod coeff;
pub mod error;
pub mod ffverify;
pub mod intstr;
pub mod invariants;
pub mod partition;
pub mod schubert;
pub mod sod;
pub mod tower;

pub use coeff::{Int, Rat};
pub use error::{CoreError, Result};
pub use classify::{FunctorDirection, SectionReport, SweepFilter};
pub use invariants::{DivisorClass, HPDParams};
pub use partition::Partition;
pub use schubert::{GrassRing, Schubert, SchubertElement};
pub use tower::{Side, Tower, TowerElement, TowerRing};
