//! Instance files, random generation, brute-force oracles, runs and reports.

pub mod corpus;
pub mod instance;
pub mod oracle;
pub mod random;
pub mod report;
pub mod rng;
pub mod run;

pub use instance::{parse_instance, InstanceError, InstanceSpec, Provenance};
pub use oracle::{brute_force_oracle, OracleError, OracleResult};
pub use random::{random_instance, GeneratorParams};
pub use report::RunReport;
pub use run::{run_analyze, run_corpus, run_koszul, run_search, run_specs, run_tor, Mode, RunError, RunOptions};
