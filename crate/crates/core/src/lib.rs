//! Exact computations with hyperplane arrangements in projective space and
//! their logarithmic bundles, presented as Steiner tensors.
//!
//! Everything is computed over the rationals. The main entry points are
//! [`arrangement::Arrangement`], [`steiner::SteinerTensor`], the
//! line-restriction routines in [`restriction`], the monoidal complex in
//! [`monoidal`], and the classifier in [`quadrics`].

pub mod arrangement;
pub mod error;
pub mod exact;
pub mod io;
pub mod monoidal;
pub mod proj;
pub mod quadrics;
pub mod restriction;
pub mod rng;
pub mod steiner;

pub use error::{Error, Result};
