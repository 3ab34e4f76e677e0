//! Exact conjugacy-class counting for the finite groups attached to sharply
//! 2-transitive actions (Dickson near-field multiplicative groups, Frobenius
//! groups, exceptional linear complements), together with exact-arithmetic
//! certification of torus class-count lower bounds for groups of Lie type.
//!
//! The crate is organized around independent computation routes that must
//! agree: brute-force enumeration through [`grouplib`], Clifford-style
//! counting and a Möbius-inverted closed form in [`nearfield`], exhaustive
//! subgroup search in [`matgroups`], and rational-arithmetic inequality
//! scans in [`boundscan`].

pub mod boundscan;
pub mod grouplib;
pub mod matgroups;
pub mod nearfield;
pub mod numtheory;
pub mod zechfield;
