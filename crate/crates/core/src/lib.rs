//! Phase estimation with an OPA and beam-splitter hybrid interferometer
//! followed by m-photon subtraction.
//!
//! Quantities are computed from Gaussian generating functions expanded as
//! truncated power series. The [`oracle`] module recomputes them by direct
//! evolution in a truncated Fock space.

pub mod detection;
pub mod error;
pub mod gaussian;
pub mod jet;
pub mod lossy;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod photon_number;
pub mod qfi;
pub mod series;

pub use error::{Error, Result};
pub use jet::{PhaseJet, Scalar};
pub use model::{ExponentForm, LossSymbol, Params, Scheme};
pub use series::{MultiIndex, TruncatedSeries, VariableId};
