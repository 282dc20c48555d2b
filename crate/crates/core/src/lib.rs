//! Verification and model search for mobi algebras, involutive medial
//! monoids and unitary rings with one half.

pub mod axioms;
pub mod exemplars;
pub mod model;
pub mod search;
pub mod transforms;
