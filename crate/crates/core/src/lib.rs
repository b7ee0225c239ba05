//! Dimer models on the torus, their quivers with potential and mutations, perfect
//! matching polygons, divisor class groups of the associated toric rings, and exchange
//! graphs of splitting maximal modifying generators.
//!
//! ```
//! use dimer_mm::corpus::Corpus;
//! use dimer_mm::matching::enumerate_matchings;
//!
//! let corpus = Corpus::embedded();
//! let d = corpus.dimer("4a-1").unwrap();
//! assert_eq!(enumerate_matchings(&d).len(), 8);
//! ```

pub mod classgroup;
pub mod cli;
pub mod consistency;
pub mod corpus;
pub mod dimer;
pub mod error;
pub mod exchange;
pub mod generators;
pub mod io;
pub mod iso;
pub mod lp;
pub mod matching;
pub mod mutation;
pub mod quiver;
pub mod snf;
pub mod verify;

pub use classgroup::{ClassGroup, DivisorClass, ToricCone};
pub use dimer::{dimer_from_qp, Color, DimerModel};
pub use error::{Error, Result};
pub use quiver::{Potential, Qp};
