#![cfg_attr(not(any(feature = "std", test)), no_std)]
extern crate alloc;

pub mod error;
pub mod linalg;
pub mod monoid;
pub mod num;
pub mod polyhedral;
pub mod recovery;
pub mod rootsys;
pub mod spherical;

pub use error::{Error, Result};
