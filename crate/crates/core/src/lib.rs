pub mod error;
pub mod differentials;
pub mod families;
pub mod ideal;
pub mod analysis;
pub mod curve;
pub mod lattice;
pub mod linalg;
pub mod logforms;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod selftest;
pub mod series;
pub mod window;

pub use error::{Error, Result};
pub use poly::Poly;
pub use series::{LaurentSeries, Prec, Q};
