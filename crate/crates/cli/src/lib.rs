//! Verification scenarios, report rendering and the closure cache behind
//! the `k3m20` command.

#![allow(clippy::type_complexity)]

pub mod cache;
pub mod data;
pub mod report;
pub mod scenarios;
