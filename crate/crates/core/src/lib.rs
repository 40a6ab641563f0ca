//! Operads of decorated cliques over unitary magmas.
//!
//! A clique of size `n` is a complete graph on `n + 1` vertices whose arcs
//! carry labels from a unitary magma; arcs labeled by the unit are treated
//! as missing. Gluing the base of one clique onto an edge of another (and
//! multiplying the two labels that meet) makes the linear spans of cliques
//! into a nonsymmetric operad, functorially in the magma. This crate
//! implements that construction in exact rational arithmetic together with
//! its quotient and suboperad families, the H- and K-bases, the
//! noncrossing suboperad with its dual-tree calculus and Hilbert series,
//! its quadratic presentation and Koszul dual, and an enumeration harness
//! that checks every computed dimension sequence against its expected
//! values.

pub mod bases;
pub mod clique;
pub mod enumeration;
pub mod families;
pub mod linalg;
pub mod magma;
pub mod noncrossing;
pub mod operad;
pub mod presentation;

pub use clique::{Boundary, Clique, CliqueError, CliqueJson, CliqueStats};
pub use enumeration::{
    dimension_table, enumerate_count, enumerate_stream, generating_span, in_generating_set,
    reconstruction_checks, registered_sequences, space_size, DimensionTable, EnumError,
    EnumGuard, SequenceEntry, SpanResult,
};
pub use families::{
    project, q_compose, verify_ideal, CompositionMode, FamilyError, FamilyKind, OperadFamily,
};
pub use magma::{Element, MagmaError, MagmaMorphism, MagmaProperties, UnitaryMagma};
pub use noncrossing::{
    count_dual_configurations, from_dual_tree, functional_equation_residual, nc_dim,
    nc_dual_hilbert, nc_generators, nc_hilbert, to_dual_tree, tree_compose, verify_bijection,
    DualNode, DualTree, NcError, Series, TreeJson,
};
pub use operad::{
    check_basic, check_cyclic, full_compose, lin_compose, map_functor, verify_operad_axioms,
    AxiomMode, BasisTag, CyclicLaw, Failure, LinComb, OperadError, Report,
};
pub use presentation::{
    build_r, build_r_perp, count_normal_forms, count_normal_forms_oriented, duality_pairing,
    verify_koszul_duality, verify_presentation, Orientation, PresentationError, RelationSpace,
    Shape, SyntaxTree2,
};
