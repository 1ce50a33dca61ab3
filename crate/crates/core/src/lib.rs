//! Exact arithmetic and algebra for SO(3) quantum invariants of surgered
//! 3-manifolds built from cabled Hopf links.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclotomic`]: the rings `Z[ζ_N]` and `Z[ζ_N][1/p]` in the power basis,
//!   exact division, residues mod `p` and `(1-ζ_p)`-adic valuations.
//! * [`skein`]: the Kauffman skein of the solid torus in the `z` basis, the
//!   twist map, `Ω_p`, Hopf-link brackets and the normalisation constants.
//! * [`invariants`]: the satellite expansion of the cabled Hopf link and the
//!   resulting invariant, plus first homology of surgery presentations.
//! * [`congruence`]: residue tests of the form `n·κ^m mod p` and the
//!   orbit-collapse congruence for cyclic shifts of colourings.
//! * [`linkform`]: Wall-normal-form linking forms, Bockstein images and the
//!   simple-cover criteria.
//! * [`cli`]: the `so3cover` command-line driver.

pub mod cli;
pub mod congruence;
pub mod cyclotomic;
pub mod invariants;
pub mod linalg;
pub mod linkform;
pub mod skein;

pub use cyclotomic::{CycError, CycInt, CycNum, ResidueClass, Valuation};
