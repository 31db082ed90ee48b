//! Arrangements of spheres tangent to every member of a family, and the
//! spherical codes they correspond to.
//!
//! A family is first moved into canonical position by inversions and
//! similarities ([`canonicalize`]). The centers of admissible unit spheres
//! then form a round sphere ([`locus`]), and arrangements of the original
//! family match spherical codes on that sphere ([`correspondence`]).
//! [`steiner`] covers the closed, Steiner-type arrangements and [`soddy`]
//! the families of mutually tangent spheres.

pub mod canonicalize;
pub mod cli;
pub mod codes;
pub mod correspondence;
pub mod error;
pub mod inversive;
pub mod io;
pub mod linalg;
pub mod locus;
pub mod render;
pub mod soddy;
pub mod steiner;
