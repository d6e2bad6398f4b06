//! Exact-arithmetic tools for extending a resolution differential by a
//! degree-zero perturbation into a three-term nilpotent operator, with the
//! Lie, BRST and BV instances built on top.

mod error;
pub mod brst;
pub mod bv;
pub mod complexes;
pub mod exactla;
pub mod fuzz;
pub mod io;
pub mod lie;
pub mod report;
pub mod shlie;
pub mod superalg;

pub use complexes::{ChainExtension, GradedMap, GradedSpace, HomotopyData};
pub use error::{Error, Result};
pub use exactla::{Rat, RatMatrix};
pub use report::{Check, Report};
