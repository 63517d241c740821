//! Profile tables on disk and as summary plots.

pub mod csv;
pub mod svg;
