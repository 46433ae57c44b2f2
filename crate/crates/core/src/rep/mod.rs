//! Unitary representations with cyclotomic entries.

pub mod characters;
pub mod split;
pub mod unitary;

pub use characters::{torsion_characters, torsion_coordinates, AbelianCoords};
pub use split::{
    fixed_point_free_check, invariant_coinvariant_split, SplitData, DEFAULT_ELEMENT_CAP,
};
pub use unitary::{
    character_from_exponents, character_from_grading, check_rep, conj_transpose, evaluate_word,
    induce_from, induce_rep, permutation_rep, quaternion_rep, verify_rep, Provenance, RepFile,
    UnitaryRep,
};
