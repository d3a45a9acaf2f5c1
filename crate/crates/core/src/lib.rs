//! Finite quasi relation algebras.
//!
//! The crate builds and checks small residuated structures: the axioms of
//! (distributive) quasi relation algebras, finite Sugihara chains, nested
//! sums `K[L]`, the relation algebras `Dq(E)` of up-sets of an equivalence
//! relation, verified embeddings into them, the construction that turns a
//! representation of `L` into one of `S₃[L]`, and an exhaustive search for
//! small models under constraints.
//!
//! Every algebra lives on the carrier `0..n`; names are display metadata.
//!
//! ```
//! use dqra::{check_axioms, nested_sum, sugihara_chain, fixtures};
//!
//! let s3 = sugihara_chain(3)?;
//! let sum = nested_sum(s3.algebra(), &fixtures::l1())?;
//! let report = check_axioms(&sum.algebra);
//! assert!(report.dqra.holds);
//! assert_eq!(sum.algebra.size(), 6);
//! # Ok::<(), dqra::Error>(())
//! ```
//!
//! The guide under `book/` walks through each part with runnable snippets.

pub mod algebra;
pub mod axioms;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod iso;
pub mod nested_rep;
pub mod nested_sum;
pub mod relation;
pub mod representation;
pub mod search;
pub mod sugihara;

pub use algebra::{lattice_ops, validate_algebra, AlgebraRecord, FiniteAlgebra, RawAlgebra};
pub use axioms::{
    check_axioms, dual_sum, find_forbidden_sublattice, is_totally_irreducible, residuals, residuals_from_negations,
    AxiomReport, ForbiddenSublattice, Operation, ResidualTables, SublatticeKind, Verdict,
};
pub use error::{ContextLaw, Error, Result};
pub use iso::{are_isomorphic, canonical_algebra, canonical_form, check_isomorphism, AlgebraMap, PreservationReport};
pub use nested_rep::{
    build_nested_context, build_psi, sn_nested_representation, sugihara_representation, NestedContext, PsiMap,
};
pub use nested_sum::{admissibility_report, conic_sum_check, nested_sum, NestedSum, Part};
pub use relation::{graph_identities_check, is_upset, upward_closure, BinRel, PointSet, RelationRecord};
pub use representation::{
    dq_algebra, dq_constants, dq_residuals, dq_unary, enumerate_upsets, find_embedding, full_dq, generate_subalgebra,
    validate_context, verify_embedding, ContextRecord, DqAlgebra, EmbeddingRecord, RelEmbedding, RepContext,
};
pub use search::{enumerate_models, Constraint, Model, ModelSet, SearchSpec};
pub use sugihara::{collapse_iso, sugihara_chain, SugiharaChain};

// The guide's snippets run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/sugihara.md")]
    mod sugihara {}
    #[doc = include_str!("../../../book/src/nested-sums.md")]
    mod nested_sums {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/nested-representations.md")]
    mod nested_representations {}
    #[doc = include_str!("../../../book/src/model-search.md")]
    mod model_search {}
}
