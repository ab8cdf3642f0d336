//! Finite-group engine and exhaustive classification of smooth projective
//! surfaces with `p_g = q = 1` isogenous to a product of curves.
//!
//! The crate is organized in layers:
//!
//! * [`group`] -- dense multiplication tables, subgroup/quotient machinery,
//!   conjugacy, isomorphism testing, automorphism groups;
//! * [`perm`] and [`presentation`] -- the two ways groups enter: permutation
//!   generators (catalog entries) and finite presentations (coset
//!   enumeration);
//! * [`catalog`] -- the shipped library of small groups, identified by
//!   `(order, id)` following the conventional small-group numbering;
//! * [`signature`], [`vectors`] -- branch signatures with their arithmetic,
//!   and generating-vector searches with the freeness conditions;
//! * [`classify`] -- the classification drivers for the unmixed and mixed
//!   cases;
//! * [`moduli`] -- Hurwitz moves and orbit counting, giving the number of
//!   connected components of the moduli space for each classified family.

pub mod catalog;
pub mod classify;
pub mod error;
pub mod group;
pub mod moduli;
pub mod perm;
pub mod presentation;
pub mod signature;
pub mod vectors;
