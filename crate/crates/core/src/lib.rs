//! Sturmian morphisms, amicable pairs and their ternarizations.
//!
//! A pair of Sturmian morphisms `phi ∝ psi` is *amicable* when the images of
//! `0`, of `01` vs `10`, and of `1` are pairwise the two binary projections of
//! a common factor of a 3iet word. The ternary morphism built from those
//! common factors (the *ternarization*) maps 3iet words to 3iet words.
//!
//! The crate provides exact constructions (standard morphisms, right
//! conjugates, ternarizations, exact quadratic arithmetic for interval
//! exchanges), closed-form counts, and brute-force sweeps that check the
//! closed forms against exhaustive enumeration.

pub mod amicability;
pub mod error;
pub mod iet;
pub mod intmat;
pub mod matrices;
pub mod morphism;
pub mod par;
pub mod quad;
pub mod verify;
pub mod words;

pub use amicability::{
    amicable_morphisms, amicable_words_b, check_3iet_preservation, is_ternarization, sigma, ternarize_morphisms,
    ternarize_words, AmicabilityWitness, AmicableCounts, AmicablePair, NotTernarization, PreservationConfig,
    PreservationReport, Projection,
};
pub use error::{Error, Result};
pub use iet::{coding_word_k, is_nondegenerate_params, three_iet_code, two_iet_code, ThreeIet, TwoIet};
pub use intmat::{IntMatrix2, IntMatrix3};
pub use matrices::{
    brute_force_pairs, classify_matrix3, conjecture_probe, count_formula_b, count_formula_total, e_condition,
    ternarization_matrix, ClassificationWitness, ProbeReport,
};
pub use morphism::{
    compose, enumerate_sturmian, is_sturmian_morphism, k_index, right_conjugate_step, standard_morphism, Morphism,
};
pub use par::Strategy;
pub use quad::QuadNumber;
pub use words::{factor_complexity, is_balanced, is_conjugate_word, parikh, Alphabet, FiniteWord, ParikhVector};
