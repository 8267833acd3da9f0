//! Finite and symbolic computation of Priestley and Esakia dualities.
//!
//! The finite tier works over posets and lattices small enough to enumerate.
//! The symbolic tier ([`fan`], [`morphism`]) handles compactified fan spaces,
//! where tails of isolated points converge to designated limits.
//! [`brouwerian`] extends the finite tier to distributive meet-semilattices
//! and their pointed spectra.

pub mod brouwerian;
pub mod canon;
pub mod duality;
pub mod error;
pub mod fan;
pub mod format;
pub mod hom;
pub mod lattice;
pub mod morphism;
pub mod poset;
pub mod subset;

pub use error::{Error, Result};
pub use hom::AlgHom;
pub use lattice::{FinLattice, MeetSemilatticeView, SetLattice};
pub use poset::{FinPoset, PosetMap};
pub use subset::Subset;
