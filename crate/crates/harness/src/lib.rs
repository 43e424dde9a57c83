//! Verification harness: reproduces the group-theoretic and design-theoretic
//! claims about locally dihedral flag-transitive designs on concrete
//! instances, and reports each as a [`report::VerificationReport`].

pub mod actions;
pub mod bound;
pub mod intersection;
pub mod lemmas;
pub mod nonexist;
pub mod report;
pub mod search;
pub mod table1;
pub mod theorem1;
pub mod theorem2;
pub mod verify;
