//! Exact-arithmetic computational algebra workbench.
//!
//! Everything here is desk-scale and deterministic: quaternion algebras over
//! the rationals and over odd finite fields (with a division/split classifier
//! that produces checkable evidence), relative Brauer groups of cyclic
//! finite-field extensions computed as norm cokernels, a computable model of
//! the procyclic fields `PC(q;p)` together with anti-closure reports, three
//! explicit extension-tower constructions over that model, and subgroup
//! lattices of small finite groups.
//!
//! All arithmetic is exact (arbitrary-precision rationals, residue
//! arithmetic); floating point appears only in [`brauer::complex_sqrt_residual`].

pub mod brauer;
pub mod descriptor;
pub mod error;
pub mod exactnum;
pub mod finfield;
pub mod grouplat;
pub mod lattice;
pub mod procyclic;
pub mod quaternion;

pub use descriptor::FieldDescriptor;
pub use error::{Error, Result};
pub use exactnum::{
    hilbert_symbol, legendre_symbol, squarefree_reduce, BigRational, Place, SquarefreePair,
};
pub use finfield::{FfElement, FiniteField, Poly};
pub use grouplat::{FiniteGroup, SubgroupLattice};
pub use lattice::{TowerLevel, TowerReport};
pub use procyclic::{AnticlosureReport, ProElement, ProcyclicField};
pub use quaternion::{ClassifyVerdict, QuaternionAlgebra, QuaternionElement, Scalar};

/// Default ambient-field size cap, in bits: fields larger than `2^24`
/// elements are rejected unless the caller raises the cap.
pub const DEFAULT_AMBIENT_BITS: u32 = 24;

/// Default seed for the few internally randomized searches (equal-degree
/// polynomial splitting). Changing the seed never changes any result, only
/// the internal search order.
pub const DEFAULT_SEED: u64 = 0x6272_6175_6572_7762;
