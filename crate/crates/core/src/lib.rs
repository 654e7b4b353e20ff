//! Exact computations around Lusztig's nonabelian Fourier transform and the
//! elliptic unipotent representations of `G2`.
//!
//! Everything is exact: values live in the universal cyclotomic field and
//! every matrix identity is checked with zero tolerance.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod fingroup;
pub mod fourier;
pub mod matrix;
pub mod padic;
pub mod pretty;
pub mod unipotent;
pub mod weyl;

pub use cyclotomic::{sqrt_positive_rational, Cyclotomic, Rational};
pub use error::{Error, Result};
pub use fingroup::{character_table, CharacterTable, ClassFunction, FiniteGroup, Subgroup};
pub use fourier::{fourier_matrix, fourier_pairing, m_set, MPair, MSet};
pub use matrix::CycMatrix;
pub use padic::{verify_diagram, DiagramReport, TypeCPartition};
pub use unipotent::{UniChar, UnipotentSpace};
pub use weyl::ReflectionRep;
