//! Second Sombor index (SO2) and other vertex-degree-based invariants of
//! graphs, with exact rational arithmetic, exhaustive tree enumeration,
//! the extremal molecular-tree families, and octane QSPR fits.
//!
//! ```
//! use sombor::{chem_io::parse_alkane_smiles, indices::so2, rational::Rational};
//!
//! let octane = parse_alkane_smiles("CCCCCCCC").unwrap();
//! assert_eq!(so2(&octane).exact, Some(Rational::new(6, 5)));
//! ```

pub mod chem_io;
pub mod cli;
pub mod enumeration;
pub mod extremal;
pub mod graph;
pub mod indices;
pub mod qspr;
pub mod rational;

pub use graph::{EdgeTypeProfile, Graph};
pub use rational::Rational;
