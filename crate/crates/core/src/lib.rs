//! Vanishing conjugacy classes of finite permutation groups.
//!
//! The pipeline is: generators → [`PermGroup`] → [`ClassData`] →
//! [`CharacterTable`] (exact, Dixon–Schneider) → [`VanishingProfile`], with
//! the structural side ([`structure`], [`frobenius`]) feeding the theorem
//! harness in [`verifier`].

pub mod analysis;
pub mod catalog;
pub mod chartab;
pub mod classes;
pub mod config;
pub mod context;
pub mod cyclotomic;
pub mod error;
pub mod frobenius;
pub mod numbers;
pub mod perm;
pub mod permgrp;
pub mod structure;
pub mod vanishing;
pub mod verifier;

pub use chartab::{character_table, CharacterTable};
pub use classes::{conjugacy_classes, ClassData, ConjugacyClass, ElementTable};
pub use config::Config;
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use perm::{element_order, Permutation};
pub use permgrp::{coset_action, CosetAction, PermGroup};
pub use context::{GroupContext, Quotient};
pub use structure::{
    fitting_series, normal_subgroups, structure_report, FittingHeight, NormalSubgroup,
    NormalSubgroupLattice, SmallType, StructureReport,
};
pub use vanishing::{prime_graph, vanishing_profile, vanishing_prime_graph, PrimeGraph, VanishingProfile};
pub use frobenius::{frobenius_decomposition, FrobeniusDecomposition};
pub use catalog::NamedGroup;
pub use analysis::{analysis_report, Analysis, AnalysisReport};
pub use verifier::{run_corpus, Status, TheoremId, TheoremVerdict, VerificationReport};
