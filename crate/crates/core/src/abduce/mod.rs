//! The encode, decompose and reason pipeline.

mod pipeline;
mod system;

pub use pipeline::{
    abduce_single, abduce_sweep, check_derivable, encode, reason_candidate, scan_inconsistent, AbduceOptions, Exactness,
    AbductionReport, Candidate, Rejection, ScanReport, Status, Timings, DEFAULT_SWEEP_TIMEOUT, DEFAULT_TIMEOUT,
};
pub use system::AxiomSystem;
