//! Command-line front end and scenario suite runner for the cizero
//! engine.
//!
//! The library side holds the JSON input formats (rings, matrices,
//! scenarios), the assertion dispatcher, the report structures, and the
//! concurrent suite runner; the `cizero` binary is a thin argv wrapper
//! around them. Reports are deterministic: the same inputs and seeds
//! produce byte-identical JSON.

pub mod cli;
pub mod ops;
pub mod report;
pub mod spec;
pub mod suite;
