//! Scenario harness: configuration, runners, reports, and the
//! acceptance suite behind the `hyproj` binary.

pub mod config;
pub mod report;
pub mod scenarios;
pub mod verify;
