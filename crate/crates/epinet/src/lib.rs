//! Batch front end for `epinet-core`: edge-list and attribute files, parallel
//! profiling, profile CSVs, SVG summary plots, the scaling benchmark, and the
//! `epinet` command line.

pub mod bench;
pub mod cli;
mod error;
pub mod formats;
pub mod parallel;
pub mod report;

pub use epinet_core as core;

pub use error::{Error, Result};
pub use formats::{load_attributes, load_edge_list, write_edge_list, AttributeWarning};
pub use parallel::profile_all_parallel;
pub use report::csv::{read_profile_csv, write_profile_csv};
pub use report::svg::{render_multi_panel, render_sullivan_plot, PlotSpec, SortKey};

/// Environment variable capping the per-worker distance cache (entries).
pub const CACHE_ENTRIES_ENV: &str = "EPINET_CACHE_ENTRIES";
