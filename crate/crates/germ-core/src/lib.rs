//! Exact symbolic computation of invariants of polynomial map germs from the
//! plane to 3-space: double point curves, their branch structure, transversal
//! slices, Milnor numbers of the associated source curves, and Whitney
//! equisingularity verdicts for one-parameter unfoldings.

pub mod error;
pub mod groebner;
pub mod localalg;
pub mod polycore;
pub mod puiseux;

pub use error::{Error, Result};
