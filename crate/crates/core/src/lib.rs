//! Finite enriched-category engine.
//!
//! Categories, monoidal structures, module actions and enriched categories are
//! stored as explicit index tables. Every axiom is checked by table lookup and
//! every universal construction is found by exhaustive search under a budget.

pub mod actions;
pub mod canonical;
pub mod centers;
pub mod core_cat;
pub mod enriched_core;
pub mod enriched_monoidal;
pub mod monoidal_cat;
pub mod workbench;
