//! Time integration of the Galerkin system, the gated Picard iteration and
//! stopping-time detection.

pub mod config;
pub mod gate;
pub mod initial;
pub mod monitor;
pub mod nonlinear;
pub mod path;
pub mod picard;
pub mod step;

pub use config::{Scheme, SolverConfig};
pub use gate::TruncationGate;
pub use initial::InitialCondition;
pub use monitor::{detect_stop, stopping_time_of_samples, StoppingMonitor};
pub use nonlinear::{advective_term, nonlinear_term};
pub use path::{
    project_initial, simulate_path, simulate_path_with, RecordOptions, StopReason, TrajectoryRecord,
    TrajectoryRow,
};
pub use picard::{picard_solve, PicardSolution};
pub use step::{Gates, SolverState, Stepper};
