//! Engine for vocabulary design tasks.
//!
//! Students propose symbols with natural-language descriptions. Each
//! proposal is mapped onto an instructor-defined solution space
//! ([`matcher`]), graded on the C1 to C5 scale, and the mapped set is checked
//! against the task's Boolean conditions ([`checker`]). The remaining modules
//! provide the supporting tooling: task documents ([`spec`]), grammars and
//! generated datasets ([`grammar`], [`dataset`]), scorers and threshold
//! fitting ([`similarity`]), evaluation reports ([`report`]) and first-order
//! formula translation ([`fo`]).

pub mod checker;
pub mod condition;
pub mod dataset;
pub mod fo;
pub mod grammar;
pub mod matcher;
pub mod report;
pub mod similarity;
pub mod spec;
pub mod vocab;

pub use checker::{check_attempt, check_solution, evaluate_condition, Status, Verdict};
pub use matcher::{best_match, map_attempt, MatchError};
pub use spec::{load_task_spec, parse_task_spec, validate_spec, TaskSpec};
pub use vocab::{Attempt, Category, Mapping, MappingEntry, StudentSymbol, SymbolKind};
