//! Higher Bruhat orders `B(n, k)`, checks for the hypotheses of the
//! suspension lemma, and exact reduced integer homology of order complexes.

pub mod bitmatrix;
pub mod bruhat;
pub mod error;
pub mod exec;
pub mod homology;
pub mod lemma;
pub mod poset;
pub mod subsets;

pub use bruhat::{
    admissible_permutation, buildup_sequence, compare_orders, dual_buildup_sequence,
    enumerate_bruhat, enumerate_bruhat_with, is_green, map_f, map_i, map_j, to_poset, BruhatOrder,
    BruhatOrderKind, EnumerationLimits, EnumerationMethod,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use homology::{
    reduced_homology, reduced_homology_with, smith_normal_form, HomologyReport, SimplicialComplex,
};
pub use lemma::{
    bruhat_instance, build_proof_maps, carrier_cone_check, check_conditions, DissectionInstance,
};
pub use poset::{order_complex, proper_part, FiniteBoundedPoset, FinitePoset};
pub use subsets::{ConsistentSet, GroundParams, KSubset, MemberBits};
