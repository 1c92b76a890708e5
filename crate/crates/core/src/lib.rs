//! Exact engine for difference-differential linear systems with one parameter
//! derivation: order-filtered jet rings localized at `det(X)`, prolongation
//! ideals with consistency certificates, and the level-by-level construction of
//! compatible ideal chains.

pub mod expr;
pub mod polyring;
pub mod basefield;
pub mod groebner;
pub mod linsys;
pub mod jetring;
pub mod prolong;
pub mod cli;
