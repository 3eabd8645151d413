//! Minimal free resolutions of the powers `𝔪^a` of the maximal ideal of a
//! Koszul algebra, their Betti numbers and Poincaré series.

mod betti;
mod lmodule;
mod resolve;
mod series;

pub use betti::{
    betti_formula, betti_oracle, betti_quotient, poincare_coeffs, squarefree_identity_check, BettiEntry,
    BettiTable,
};
pub use lmodule::{augmentation, incoming_rank, l_differential, l_module, LModule, LModuleSummary};
pub use resolve::{
    resolve, AugmentationCheck, HomologyDefect, Resolution, ResolutionReport, ResolveOptions,
};
pub use series::{Series, SeriesPoly, SeriesTerm};
