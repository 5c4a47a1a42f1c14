//! Exact computation of extremal bounds for triangle-free regular graphs.

pub mod exactmath;
pub mod graphcore;
pub mod flagcalc;
pub mod regweights;
pub mod bounds;
pub mod search;
pub mod cli;
