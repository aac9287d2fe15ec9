//! On-disk formats: `QUM1` unitaries, `QLS1` sample batches, CSV exports and
//! `key=value` sidecars.

pub mod csv;
pub mod kv;
pub mod qls;
pub mod qum;

pub use kv::KeyValues;
pub use qls::{Payload, QlsBatch};
