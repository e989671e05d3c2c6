//! Exact computation with Tambara functors on finite groups.

pub mod burnside;
pub mod error;
pub mod fixed_point;
pub mod formats;
pub mod group;
pub mod ideals;
pub mod gset;
pub mod lattice;
pub mod level_ideal;
pub mod ring;
pub mod sample;
pub mod spectrum;
pub mod tambara;
pub mod verify;

pub use error::{Error, Result};
