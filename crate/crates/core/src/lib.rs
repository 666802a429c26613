//! Construction and model checking of generalized pseudo effect algebras.
//!
//! The crate works with finite partial algebras given by tables
//! ([`algebra`]), the kite construction over a base algebra and a pair of
//! index bijections ([`kite`]), Riesz interpolation and decomposition
//! properties ([`riesz`]), ideals, congruences and subdirect irreducibility
//! ([`ideals`], [`connectivity`]), states ([`states`]) and the twisted
//! lexicographic groups that model some infinite kites ([`pogroups`]).

pub mod algebra;
pub mod connectivity;
pub mod ideals;
pub mod kite;
pub mod limits;
pub mod pogroups;
pub mod riesz;
pub mod states;

pub use algebra::{AlgebraError, Gpea, PartialTable, Pea};
pub use kite::{ExplicitKite, Kite, KiteElement, NatChain, Permutation, Sort};
pub use limits::Limits;
