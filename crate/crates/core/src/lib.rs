//! Information flow from a qubit into an environment of `N` qubits coupled
//! through imperfect controlled-not ("c-maybe") gates.
//!
//! The crate evaluates the symmetric mutual information, both Holevo-type
//! quantities, the two discords, concurrence and entanglement of formation in
//! closed form, together with redundancy and universality analyses and the
//! photon-scattering series. [`oracle`] rebuilds every marginal from the full
//! state vector for small `N` and serves as the independent check.

pub mod error;
pub mod kernels;
pub mod measures;
pub mod model;
pub mod oracle;
pub mod photon;
pub mod plateau;
pub mod roots;
pub mod sweep;

pub use error::{Error, Result};
pub use kernels::{Overlap, Probability};
pub use measures::{GoodDecoherenceMode, GoodDecoherencePolicy, MeasureKind};
pub use model::{CouplingParams, PairDensity, QubitDensity};
