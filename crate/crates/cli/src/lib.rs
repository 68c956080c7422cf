//! File formats, reports and the command implementations behind the
//! `lvknot` binary.

pub mod app;
pub mod ftable;
pub mod report;
