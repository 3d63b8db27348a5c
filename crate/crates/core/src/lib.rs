//! Combinatorics of virtual links given by signed Gauss codes.
//!
//! - [`gauss`]: parsing, reduction, switching, connected sum, canonical form
//! - [`surface`]: ribbon surface, face tracing, genus
//! - [`prime`]: subcode enumeration and the classical-alternating witness test
//! - [`families`]: polygonal links, Kishino appends, 1-virtual links
//! - [`bounds`]: volume windows and crossing/genus inequalities
//! - [`complement`]: ideal triangulations of thickened-surface complements
//! - [`tables`]: the bundled table of knots through four crossings
//! - [`cli`]: the command-line front end

pub mod gauss;
pub mod surface;
pub mod prime;
pub mod families;
pub mod bounds;
pub mod complement;
pub mod tables;
pub mod cli;

pub use gauss::{Gap, GaussCode, GaussError, Passage, Sign, Symbol};
pub use surface::{CellComplex, SurfaceError};
