//! Laplacian simplices of connected graphs: exact linear algebra over the
//! integers, the simplex `T_G`, its h*-vector and structural properties.

pub mod analysis;
pub mod config;
pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod par;
pub mod simplex;

mod bigjson;

pub use config::Config;
pub use error::{Error, Result};
