//! Workbench for intuitionistic modal logics of well-founded and scattered
//! structures: formulas and their text syntax, birelational Kripke frames,
//! constructive fixed points of guarded formulas, the bimodal translation
//! with a decision procedure for the strong-Löb logic, finite Heyting
//! algebras with the coderivative, and Kripke-Joyal forcing on finite
//! presheaves.

pub mod bimodal;
pub mod error;
pub mod fixpoint;
pub mod heyting;
pub mod kripke;
pub mod parser;
pub mod poset;
pub mod presheaf;
pub mod syntax;
pub mod verdict;

pub use error::{Error, Result};
pub use syntax::{axiom, AxiomName, Formula, LogicName, ModalityTag};
