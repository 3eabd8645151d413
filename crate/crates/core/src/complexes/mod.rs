//! Graded free modules and their strand matrices, the Priddy complex, the
//! double complex over the enveloping algebra, and Koszulness certificates.

mod chain;
mod enveloping;
mod module;
mod priddy;

pub use chain::{ChainComplex, HomologyWitness};
pub use enveloping::{EnvelopingDoubleComplex, SignRule};
pub use module::{FreeMap, GenLabel, GradedFreeModule};
pub use priddy::{
    certify, koszul_check, koszul_check_with, priddy_complex, priddy_complex_with, ActionConvention,
    KoszulCertificate, Verdict,
};
