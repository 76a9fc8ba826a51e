//! Two circles meeting transversally on the 2-sphere: enumeration of all
//! configurations up to sphere homeomorphism, their region invariants,
//! curve-swap symmetry (which fixes the number of Morse flows on S³ each
//! configuration carries), and planar drawings.

pub mod arrangement;
pub mod canonical;
pub mod catalog;
pub mod cli;
pub mod generator;
pub mod oracle;
pub mod regions;
pub mod render;
