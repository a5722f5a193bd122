//! Proof search, proof checking and semantic oracles for twist-style
//! sequent calculi of modal logic.
//!
//! The crate covers nine calculi over one formula language: local and
//! global twist calculi for S4 (`lTS4`, `gTS4`), a defective variant
//! (`lTS4*`), a classical-negation baseline (`GS4`), a propositional
//! fragment (`TCL`), calculi for K, KT and S5 (`gTK`, `gTKT`, `gTS5`) and
//! a hypersequent calculus for S5 (`HTS5`).

pub mod calculi;
pub mod cli;
pub mod corpus;
pub mod formula;
pub mod proof;
pub mod search;
pub mod semantics;
pub mod sequent;
mod syntax;

pub use calculi::{CalculusId, RuleId, RuleInstance, Violation};
pub use formula::{Formula, ParseError, RenderStyle};
pub use sequent::{Hypersequent, InitialKind, Judgment, Sequent, Side};
