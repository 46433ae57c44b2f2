//! Finitely presented groups, their integral group rings, and the finite
//! covers encoded by transitive permutation actions.

pub mod action;
pub mod group_ring;
pub mod presentation;
pub mod schreier;
pub mod word;

pub use action::{check_grading, transitive_actions, verify_grading, IntGrading, PermAction};
pub use group_ring::{fox_derivative, right_fox_derivative, GroupRingElement};
pub use presentation::{abelianization, free_product, Abelianization, GroupPresentation};
pub use schreier::{reidemeister_schreier, SchreierData};
pub use word::{free_reduce, Letter, Word};
