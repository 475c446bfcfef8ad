//! Exact-arithmetic toolkit for saturation of finite vector sets and for
//! normality of maximal-torus orbit closures in simple SL(n)-modules.
//!
//! The crate is organized in four layers:
//!
//! * [`lattice`] — membership of a rational vector in the lattice, cone and
//!   semigroup spanned by a finite generator set, plus the saturation test
//!   itself, all with machine-checkable combination certificates;
//! * [`weights`] — quasi-basis encoding of SL(n) torus characters, dominance
//!   order, weight-system generation and the Shift move;
//! * [`enss`] — construction and independent verification of explicit
//!   non-saturated-subset certificates for every highest weight outside the
//!   positive list;
//! * [`classify`] — the top-level decision procedure and the exhaustive
//!   desk-scale audit of the positive list.

pub mod error;
pub mod rat;

pub mod intmat;
pub mod qvec;
pub mod simplex;

pub mod lattice;
pub mod weights;

pub mod classify;
pub mod enss;

pub use error::{ForgeError, LatticeError, ParseError, WeightError};
pub use qvec::{Combination, CombinationKind, GeneratorSet, QVector};
