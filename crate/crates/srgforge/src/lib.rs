//! File formats, fixtures, the parallel search pipeline and reports.

pub mod fixture;
pub mod graph6;
pub mod omfile;
pub mod pipeline;
pub mod report;
pub mod subgroup;
