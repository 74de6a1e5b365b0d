pub mod cli;
pub mod convolution;
pub mod crisp;
pub mod error;
pub mod fuzzy;
pub mod model;
pub mod rational;
pub mod relational;
