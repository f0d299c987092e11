//! Exact arithmetic and decision procedures for λ-quiddities over cyclic
//! subgroups `<w>` of the complex numbers: tuples `(a_1, ..., a_n)` with
//! entries in `<w>` whose matrix word `M(a_n)...M(a_1)` is `±Id`, where
//! `M(a) = [[a, -1], [1, 0]]`.
//!
//! Entries are stored as integer coefficients over a [`Generator`] and
//! computed with exactly in `Z`, `Z[√d]` or `Z[X]`.

pub mod audit;
pub mod error;
pub mod even;
pub mod generator;
pub mod integer;
pub mod maps;
pub mod matrix;
pub mod quiddity;
pub mod record;
pub mod ring;
pub mod solve;
pub mod triangulation;

pub use error::{Error, Result};
pub use even::{
    is_evenly_reducible, phi1_link_check, search_evenly_irreducible, EvenMode, EvenSearchState,
    SearchOutcome,
};
pub use generator::{CoeffSign, GenKind, Generator, GeneratorDescriptor};
pub use integer::Integer;
pub use maps::{phi, phi_inverse, rescale_even, rescale_even_inverse, PhiImage};
pub use matrix::{Mat2, Sign};
pub use quiddity::{
    canonical_form, continuant, continuant_euler, dihedral_orbit, dihedral_representative,
    is_quiddity, matrix_from_continuants, product_matrix, quiddity_sign, reduce_unit, reduce_zero,
    sum_oplus, sum_oplus_elems, Quiddity,
};
pub use record::QuiddityRecord;
pub use ring::{Ring, RingElem};
pub use solve::{
    check_two_small_entries, classify_irreducibles, enumerate_quiddities, find_decomposition,
    is_irreducible, solve_tail2, Classification, ClassifySpec, Completion, Decomposition,
    DecompositionQuery, EnumSpec, Equivalence, Parity, SizeSummary, WorkLimit, DEFAULT_WORK_LIMIT,
    WORK_LIMIT_ENV,
};
pub use triangulation::{
    enumerate_triangulations, find_labeling, is_admissible, quiddity_of_labeling, Labeling,
    Triangulation, ZeroPolicy,
};
