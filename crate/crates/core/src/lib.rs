//! Quench dynamics and entanglement of the long-range Kitaev chain.
//!
//! The chain is solved in momentum space; real-space correlators of ground,
//! time-evolved and stationary states feed free-fermion entanglement measures,
//! whose logarithmic scaling gives effective central charges. An exact
//! Fock-space solver for small chains cross-checks the whole pipeline.

pub mod correlators;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scaling;

pub use correlators::{
    build_correlation_matrix, ground_correlators, stationary_correlators, time_correlators,
    CorrelationMatrix, CorrelatorSource, CorrelatorTable, QuenchModes, QuenchProtocol,
};
pub use entanglement::{
    logneg_upper_bound, mutual_information, tripartite_mutual_information, von_neumann_entropy,
    EntanglementReport, Geometry,
};
pub use error::{LrkError, Result};
pub use model::{ModelParams, PairingProfile};
pub use scaling::{fit_log_scaling, phase_scan, stationary_c_eff, Abscissa, Measure, ScalingFit};
