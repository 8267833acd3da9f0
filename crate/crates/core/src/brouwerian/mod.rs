//! Distributive and Brouwerian meet-semilattices at finite scale: their
//! pointed generalized spaces, generalized morphisms, filter frames, and the
//! triangle tying the three together.
//!
//! Two collapses are specific to finite scale and are checked, not assumed.
//! A finite distributive meet-semilattice with top is a distributive lattice,
//! so optimal and prime filters coincide. Every element of a finite frame is
//! compact, so pseudoprime and prime elements coincide and the spectra carry
//! the discrete topology. Topologies are nevertheless generated from their
//! subbases and every condition on them is evaluated literally.

pub mod frame;
pub mod maps;
pub mod relation;
pub mod space;
pub mod topology;
pub mod triangle;

pub use frame::{
    arithmetic_primality, brwfrm_failure, f_of_hom, filter_frame, is_algebraic, is_arithmetic,
    is_brouwerian_frame, is_brwfrm_morphism, prime_elements, pseudopoints, pseudoprime_elements,
    right_adjoint, y_space, BrwFrmFailure, FilterFrame, YSpace,
};
pub use maps::{dms_p_failure, dual_map, is_dms_p, DmsPFailure, MapFailure, PointedMap};
pub use relation::{
    compose_raw, compose_star, dual_relation, GenRelation, RawComposition, RelationFailure,
};
pub use space::{
    filters, optimal_filters, pointed_spectrum, prime_filters_ms, view, PgpsFailure,
    PointedGenSpace, Spectrum,
};
pub use topology::FiniteTopology;
pub use triangle::{check_triangle_brw, va_frame};
