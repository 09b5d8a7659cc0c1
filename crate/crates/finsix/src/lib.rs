pub mod adjunction;
pub mod category;
pub mod corr;
pub mod error;
pub mod field;
pub mod group;
pub mod hecke;
pub mod io;
pub mod kernel;
pub mod groupoid;
pub mod matrix;
pub mod sheaf;
pub mod simplicial;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
