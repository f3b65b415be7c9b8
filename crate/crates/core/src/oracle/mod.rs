//! Independent checks of the closed-form regions.

pub mod block;
pub mod duality;
pub mod falsifier;
pub mod frame;
pub mod report;
pub mod suites;
pub mod tomiyama;
pub mod witness;

pub use block::*;
pub use duality::*;
pub use falsifier::*;
pub use frame::*;
pub use report::*;
pub use suites::*;
pub use tomiyama::*;
pub use witness::*;
