pub mod error;
pub mod hermitian;
pub mod rng;
pub mod scalar;
pub mod symmetry;
pub mod region;
pub mod classifier;
pub mod oracle;
pub mod cli;
