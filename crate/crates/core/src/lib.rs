//! Permutation groups, finite fields and block designs.
//!
//! The crate is organised bottom-up: [`perm`] and [`permgrp`] provide the
//! group engine, [`galois`] and [`constructors`] build the projective linear
//! groups and friends, [`recognize`] names small groups, and [`designs`]
//! holds incidence structures together with the flag and fixed-point checks
//! run against them.

pub mod combin;
pub mod constructors;
pub mod designs;
pub mod galois;
pub mod par;
pub mod perm;
pub mod permgrp;
pub mod recognize;

pub use designs::{DesignError, DesignParams, IncidenceStructure};
pub use perm::{PermError, Permutation};
pub use permgrp::{GroupError, PermGroup};
pub use recognize::GroupShape;

