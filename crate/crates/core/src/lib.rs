//! Weighted locally gentle quivers, their weighted Cartan matrices, and the
//! combinatorics around their determinants.

pub mod algebra;
pub mod cartan;
pub mod catalog;
pub mod configurations;
pub mod koszul;
pub mod quiver;
