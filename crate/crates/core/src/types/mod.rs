//! Method-of-types combinatorics: exact types, canonical conditional types,
//! type classes, shells and their cardinalities.
//!
//! All cardinalities are big integers and all probabilities derived from them are
//! exact rationals. Enumerations run in lexicographic symbol order.

mod counting;
mod enumerate;
mod sequence;
mod type_vector;

pub use counting::{
    binomial, binomial_exponent_bound_check, counts_of, ln_big, multinomial, shell_membership_probability,
    shell_size, type_class_size,
};
pub use enumerate::{enumerate_cond_types, enumerate_shell, enumerate_type_class, enumerate_types, ConstrainedSequences};
pub use sequence::{all_sequences, sequence_count, Sequence};
pub use type_vector::{canonical_cond_type, empirical_mutual_info, empirical_type, CondType, TypeVector};
pub(crate) use enumerate::compositions;
pub(crate) use type_vector::{joint_counts, mutual_info_from_counts};
