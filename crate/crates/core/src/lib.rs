//! Fragmentations of groups acting on subshifts: eventually periodic points,
//! tail machines and table elements, orbital graphs, subshift models and growth.

pub mod error;
pub mod graphs;
pub mod growth;
pub mod machine;
pub mod manifest;
pub mod report;
pub mod sequence;
pub mod subshift;
pub mod suites;
pub mod systems;
pub mod table;

pub use error::{Error, Result};
pub use machine::{StateId, TailMachine, IDENTITY};
pub use manifest::RunManifest;
pub use report::Report;
pub use sequence::{level_set, splitting_code, Alphabet, Point, PrefixCode, Word};
pub use suites::{run_suite, Suite};
pub use systems::{golden_mean_system, grigorchuk_system, SystemConfig};
pub use table::{Cell, Order, TableElement};
