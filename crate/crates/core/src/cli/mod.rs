//! Instance files, the built-in example families and the command
//! implementations behind the `logbound` binary.

mod commands;
mod families;
mod instance;

pub use commands::{
    cmd_bound, cmd_height, cmd_jordan, cmd_selftest, cmd_subspace_height, cmd_verify, parse_point, verify_exit_code, CommandOutput, InstanceSource,
    EXIT_OK, EXIT_USAGE, EXIT_VIOLATED,
};
pub use families::{family_generate, parse_k_range, Family};
pub use instance::{
    BlockSpec, FieldSpec, GroupSpec, Instance, InstanceSpec, KPointSpec, OptionsSpec, SubspaceSpecJson, DEFAULT_PRECISION,
    DEFAULT_SEARCH_BUDGET,
};
