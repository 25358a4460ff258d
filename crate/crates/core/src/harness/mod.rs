//! Configuration, random data, and the experiments run by the command line.

pub mod config;
pub mod embedding;
pub mod random;
pub mod report;
pub mod roundtrip;
pub mod stability;
pub mod survey;
