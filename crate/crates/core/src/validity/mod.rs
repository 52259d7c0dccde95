//! Bounded validity: exhaustive enumeration of small models, counterexample
//! search, and the axiom and translation suites built on top of them.

pub mod enumerate;
pub mod gen;
pub mod search;
pub mod suite;

pub use enumerate::{enumerate_models, estimate, EnumerationBounds};
pub use search::{check_validity, check_validity_in, Verdict};
pub use suite::{axiom_suite, translation_suite, SuiteConfig, SuiteReport, TranslationCheck, TranslationConfig};
