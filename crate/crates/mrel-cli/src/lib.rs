//! Library half of the `mrel` binary: the model text format.

pub mod model;
