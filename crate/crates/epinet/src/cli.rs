//! The `epinet` command line.
//!
//! Exit codes: 0 on success, 1 for invalid arguments or input, 2 for I/O
//! failures. Diagnostics go to stderr; data goes to `--out` or stdout.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use epinet_core::{iteratively_prune, Crowd, Direction, DistanceCache, ObserverParams, PruneConfig, TestimonialGraph};

use crate::bench::{run_scaling_benchmark, write_timings_csv, BenchOptions, BenchPlan};
use crate::error::{Error, Result};
use crate::formats::{load_attributes, load_edge_list, write_edge_list};
use crate::parallel::profile_all_parallel;
use crate::report::csv::{read_profile_csv, write_profile_csv};
use crate::report::svg::{render_multi_panel, PlotSpec, SortKey};
use crate::CACHE_ENTRIES_ENV;

#[derive(Debug, Parser)]
#[command(name = "epinet", version, about = "Profile the epistemic position of every node in a testimonial network")]
pub struct Cli {
    /// Repeat for more progress output on stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    /// Directed graph; sources are in-neighbours.
    In,
    /// Directed graph; sources are out-neighbours.
    Out,
    /// Undirected graph; sources are neighbours.
    Undirected,
}

impl DirectionArg {
    fn directed(self) -> bool {
        self != DirectionArg::Undirected
    }

    fn direction(self) -> Direction {
        match self {
            DirectionArg::In => Direction::Predecessors,
            DirectionArg::Out => Direction::Successors,
            DirectionArg::Undirected => Direction::Neighbors,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SortArg {
    Pi,
    S,
    D,
    Node,
}

#[derive(Debug, clap::Args)]
pub struct GraphInput {
    /// Edge list: `u v` or `u v w` per line, `#` comments.
    pub edges: PathBuf,
    /// Attribute file: `node,a;b` or `node a` per line.
    #[arg(long)]
    pub attrs: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = DirectionArg::In)]
    pub direction: DirectionArg,
    /// Ignore a third (weight) column.
    #[arg(long)]
    pub unweighted: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute S, D, pi and h for every node and write a profile CSV.
    Profile {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = ObserverParams::DEFAULT_M_MAX)]
        m_max: usize,
        #[arg(long, default_value_t = ObserverParams::DEFAULT_K_MAX)]
        k_max: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the summary plot to this SVG file.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        title: Option<String>,
    },
    /// Iteratively prune a graph and write the surviving edge list.
    Prune {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = PruneConfig::default().degree_threshold)]
        degree_threshold: usize,
        /// Drop edges lighter than this (strictly below).
        #[arg(long)]
        weight_threshold: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one or more profile CSVs as a multi-panel SVG.
    Plot {
        #[arg(required = true)]
        profiles: Vec<PathBuf>,
        /// Comma-separated panel titles; defaults to file stems.
        #[arg(long, value_delimiter = ',')]
        titles: Vec<String>,
        #[arg(long, value_enum, default_value_t = SortArg::Pi)]
        sort: SortArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time S over all nodes of seeded random digraphs.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        nodes: Vec<usize>,
        #[arg(long = "p", value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Per-cell time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Run cells concurrently.
        #[arg(long)]
        parallel_cells: bool,
        #[arg(long, default_value_t = ObserverParams::DEFAULT_M_MAX)]
        m_max: usize,
        #[arg(long, default_value_t = ObserverParams::DEFAULT_K_MAX)]
        k_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))),
        None => Ok(io::stdout().lock().write_all(bytes)?),
    }
}

fn read_graph(input: &GraphInput) -> Result<TestimonialGraph> {
    let started = Instant::now();
    let mut graph = load_edge_list(open(&input.edges)?, input.direction.directed(), !input.unweighted)?;
    if let Some(path) = &input.attrs {
        for w in load_attributes(&mut graph, open(path)?)? {
            log::warn!("{}:{}: unknown node {}", path.display(), w.line, w.node);
        }
    }
    log::info!(
        "loaded {} nodes, {} edges in {:.2}s",
        graph.node_count(),
        graph.edge_count(),
        started.elapsed().as_secs_f64()
    );
    Ok(graph)
}

fn cache_capacity() -> Result<usize> {
    match std::env::var(CACHE_ENTRIES_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{CACHE_ENTRIES_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DistanceCache::DEFAULT_CAPACITY),
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Profile { input, m_max, k_max, workers, out, plot, title } => {
            let graph = read_graph(&input)?;
            let params = ObserverParams::new(m_max, k_max, input.direction.direction())?;
            let crowd = Crowd::with_cache_capacity(Arc::new(graph), params, cache_capacity()?);
            let mut table = profile_all_parallel(&crowd, None, workers)?;
            table.meta.graph_name = stem(&input.edges);
            emit(out.as_deref(), write_profile_csv(&table)?.as_bytes())?;
            if let Some(path) = plot {
                let title = title.unwrap_or_else(|| table.meta.graph_name.clone());
                let svg = render_multi_panel(&[(title.as_str(), &table)], &PlotSpec::default())?;
                emit(Some(&path), svg.as_bytes())?;
            }
            Ok(())
        }
        Command::Prune { input, degree_threshold, weight_threshold, out } => {
            if let Some(w) = weight_threshold {
                if !(w >= 0.0 && w.is_finite()) {
                    return Err(Error::invalid(format!("weight threshold must be finite and non-negative, got {w}")));
                }
            }
            let graph = read_graph(&input)?;
            let pruned = iteratively_prune(&graph, &PruneConfig { degree_threshold, weight_threshold });
            if pruned.node_count() == 0 {
                log::warn!("pruning removed every node");
            }
            log::info!("kept {} nodes, {} edges", pruned.node_count(), pruned.edge_count());
            let mut buf = Vec::new();
            write_edge_list(&pruned, &mut buf)?;
            emit(out.as_deref(), &buf)
        }
        Command::Plot { profiles, titles, sort, out } => {
            if !titles.is_empty() && titles.len() != profiles.len() {
                return Err(Error::invalid(format!("{} titles given for {} profiles", titles.len(), profiles.len())));
            }
            let mut tables = Vec::new();
            for path in &profiles {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
                tables.push(read_profile_csv(&text)?);
            }
            let names: Vec<String> =
                if titles.is_empty() { profiles.iter().map(|p| stem(p)).collect() } else { titles };
            let panels: Vec<(&str, &_)> = names.iter().map(String::as_str).zip(&tables).collect();
            let sort = match sort {
                SortArg::Pi => SortKey::Pi,
                SortArg::S => SortKey::S,
                SortArg::D => SortKey::D,
                SortArg::Node => SortKey::Node,
            };
            let svg = render_multi_panel(&panels, &PlotSpec { sort, ..PlotSpec::default() })?;
            emit(out.as_deref(), svg.as_bytes())
        }
        Command::Bench { nodes, p, seed, reps, workers, budget, parallel_cells, m_max, k_max, out } => {
            let plan = BenchPlan::new(nodes, p, seed, reps)?;
            let cell_budget = match budget {
                Some(b) if !(b >= 0.0 && b.is_finite()) => {
                    return Err(Error::invalid(format!("budget must be a non-negative number of seconds, got {b}")))
                }
                Some(b) => Some(Duration::from_secs_f64(b)),
                None => None,
            };
            if workers == 0 {
                return Err(Error::invalid("worker count must be at least 1"));
            }
            let opts = BenchOptions { workers, cell_budget, parallel_cells, m_max, k_max };
            let rows = run_scaling_benchmark(&plan, &opts)?;
            let mut buf = Vec::new();
            write_timings_csv(&rows, &mut buf)?;
            emit(out.as_deref(), &buf)
        }
    }
}
