//! Finite-category computation engine.
//!
//! The crate works with *finite* categories presented by explicit tables:
//! objects and morphisms are dense integer ids, composition is a total table
//! over composable pairs. On top of that it provides
//!
//! * exhaustive law checking for categories, functors, natural
//!   transformations, and monoidal structure ([`fincat`], [`functor`],
//!   [`monoidal`], [`laxmon`]),
//! * skeletal completion: transporting a monoidal structure along a weak
//!   equivalence onto the skeleton, together with machine checks of the
//!   universal property of precomposition ([`transport`]),
//! * presheaves, Yoneda embeddings, and Day convolution computed through
//!   explicit coend quotients, used to cross-validate the transported
//!   structure ([`presheaf`], [`day`]),
//! * a small text DSL and a versioned JSON format for category data
//!   ([`dsl`], [`json`]).
//!
//! Everything is deterministic: ties are broken by smallest id, and all
//! enumerations run in id order.

pub mod bounds;
pub mod day;
pub mod dsl;
pub mod fincat;
pub mod fixtures;
pub mod functor;
pub mod gen;
pub mod json;
pub mod laxmon;
pub mod monoidal;
pub mod presheaf;
pub mod report;
pub mod transport;

pub use bounds::{Bounds, WorkLimit};
pub use fincat::{FinCat, IsoWitness, MorId, ObjId, StructuralError};
pub use functor::{Functor, NatTrans, WeakEquivalence};
pub use laxmon::{LaxMonoidalFunctor, MonoidalNatTrans};
pub use monoidal::MonoidalCategory;
pub use report::{LawReport, Violation};
