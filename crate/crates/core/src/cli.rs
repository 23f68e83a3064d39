//! `madfc` command line.
//!
//! Exit codes: 0 on success, 1 on data or domain errors, 2 on usage errors.
//! Numeric results go to stdout; warnings and errors go to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::ingest::{
    box_groups_to_csv, first_header_cell, group_summaries_to_csv, parse_box_groups, parse_de_table,
    parse_expression_matrix, parse_group_summaries, parse_heatmap_table, FcColumnMode, IngestError,
    ParseOptions,
};
use crate::render::{
    render_box, render_box_matrix, render_errorbar, render_heatmap, render_ma, render_violin,
    render_volcano, ChartKind, ChartSpec, RenderError, SvgDocument,
};
use crate::simulate::{
    simulate_box_groups, simulate_interval_dataset, simulate_violin_dataset, SimError,
    DEFAULT_INTERVAL_GROUPS, DEFAULT_VIOLIN_GROUPS, DEFAULT_VIOLIN_SAMPLES, DEFAULT_VIOLIN_SIGMA,
};
use crate::ticks::{generate_ticks_with, LabelFormat, TickError, DEFAULT_DIGITS};
use crate::transform::{
    mad_forward, scale_forward, scale_inverse, FoldChange, ScaleKind, TransformError,
    DYNAMIC_RANGE_LIMIT,
};

#[derive(Debug, Parser)]
#[command(
    name = "madfc",
    version,
    about = "Mirrored axis distortion of fold change: transforms, ticks and SVG charts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coordinate of a fold change under a scale
    Transform {
        /// Fold change (> 0)
        #[arg(long, allow_negative_numbers = true)]
        value: f64,
        /// Axis scale
        #[arg(long, value_enum, default_value_t = ScaleArg::Madfc)]
        scale: ScaleArg,
    },
    /// Print the fold change at a coordinate under a scale
    Inverse {
        /// Coordinate in the scale's transformed space
        #[arg(long, allow_negative_numbers = true)]
        value: f64,
        /// Axis scale
        #[arg(long, value_enum, default_value_t = ScaleArg::Madfc)]
        scale: ScaleArg,
    },
    /// Print a tab-separated tick table (position, label) for a fold-change range
    Ticks {
        /// Smallest fold change on the axis
        #[arg(long)]
        min: f64,
        /// Largest fold change on the axis
        #[arg(long)]
        max: f64,
        /// Axis scale
        #[arg(long, value_enum, default_value_t = ScaleArg::Madfc)]
        scale: ScaleArg,
        /// Label format for fold changes below 1
        #[arg(long, value_enum, default_value_t = FormatArg::Fraction)]
        format: FormatArg,
        /// Maximum number of ticks (>= 3)
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(3..))]
        count: u32,
        /// Significant digits for decimal labels
        #[arg(long, default_value_t = DEFAULT_DIGITS as u32, value_parser = clap::value_parser!(u32).range(1..=15))]
        digits: u32,
    },
    /// Render a chart from a CSV file to SVG
    Plot(PlotArgs),
    /// Write a synthetic dataset to CSV
    Simulate(SimulateArgs),
}

#[derive(Debug, clap::Args)]
pub struct PlotArgs {
    /// Chart type
    #[arg(value_enum)]
    pub kind: PlotKind,
    /// Input CSV (DE table for volcano/ma, group summaries for errorbar,
    /// expression matrix or five-number table for box, expression matrix for
    /// violin, heatmap table for heatmap)
    #[arg(long)]
    pub input: PathBuf,
    /// Output SVG path
    #[arg(long)]
    pub out: PathBuf,
    /// Axis scale
    #[arg(long, value_enum, default_value_t = ScaleArg::Madfc)]
    pub scale: ScaleArg,
    /// Label format for fold changes below 1
    #[arg(long, value_enum, default_value_t = FormatArg::Fraction)]
    pub format: FormatArg,
    /// Significant digits for decimal labels
    #[arg(long, default_value_t = DEFAULT_DIGITS as u32, value_parser = clap::value_parser!(u32).range(1..=15))]
    pub digits: u32,
    /// Chart width in pixels (>= 100)
    #[arg(long, default_value_t = 800, value_parser = clap::value_parser!(u32).range(100..))]
    pub width: u32,
    /// Chart height in pixels (>= 100)
    #[arg(long, default_value_t = 600, value_parser = clap::value_parser!(u32).range(100..))]
    pub height: u32,
    /// Chart title
    #[arg(long, default_value = "")]
    pub title: String,
    /// Field delimiter (single ASCII character)
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: u8,
    /// Fold-change column of DE tables
    #[arg(long = "fc-column", value_enum, default_value_t = FcColumnArg::Fc)]
    pub fc_column: FcColumnArg,
}

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    /// Dataset: fig4a (intervals), fig5a (box summaries), fig6a (violin samples)
    #[arg(value_enum)]
    pub dataset: SimKind,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,
    /// Number of groups (fig4a, fig6a)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub groups: Option<u32>,
    /// Samples per group (fig6a)
    #[arg(long)]
    pub samples: Option<usize>,
    /// Standard deviation in fold-change units (fig6a)
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Log2,
    Linear,
    Madfc,
}

impl From<ScaleArg> for ScaleKind {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::Log2 => ScaleKind::Log2,
            ScaleArg::Linear => ScaleKind::Linear,
            ScaleArg::Madfc => ScaleKind::MadFc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Decimal,
    Fraction,
    Exponent,
}

impl From<FormatArg> for LabelFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Decimal => LabelFormat::Decimal,
            FormatArg::Fraction => LabelFormat::Fraction,
            FormatArg::Exponent => LabelFormat::Exponent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FcColumnArg {
    Fc,
    Log2fc,
}

impl From<FcColumnArg> for FcColumnMode {
    fn from(f: FcColumnArg) -> Self {
        match f {
            FcColumnArg::Fc => FcColumnMode::Fc,
            FcColumnArg::Log2fc => FcColumnMode::Log2Fc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Volcano,
    Ma,
    Errorbar,
    Box,
    Violin,
    Heatmap,
}

impl From<PlotKind> for ChartKind {
    fn from(k: PlotKind) -> Self {
        match k {
            PlotKind::Volcano => ChartKind::Volcano,
            PlotKind::Ma => ChartKind::Ma,
            PlotKind::Errorbar => ChartKind::ErrorBar,
            PlotKind::Box => ChartKind::Box,
            PlotKind::Violin => ChartKind::Violin,
            PlotKind::Heatmap => ChartKind::Heatmap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimKind {
    Fig4a,
    Fig5a,
    Fig6a,
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    let s = if s == "\\t" || s == "tab" { "\t" } else { s };
    match s.as_bytes() {
        [b] if b.is_ascii() => Ok(*b),
        _ => Err(format!(
            "delimiter must be a single ASCII character, got '{s}'"
        )),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read '{path}': {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write '{path}': {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Ingest { path: PathBuf, source: IngestError },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Ticks(#[from] TickError),
    #[error(transparent)]
    Simulate(#[from] SimError),
    #[error(transparent)]
    Csv(#[from] IngestError),
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut impl Write, err: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Transform { value, scale } => {
            let x = FoldChange::new(value)?;
            let _ = writeln!(out, "{}", scale_forward(scale.into(), x));
        }
        Command::Inverse { value, scale } => {
            let x = scale_inverse(scale.into(), value)?;
            let _ = writeln!(out, "{x}");
        }
        Command::Ticks {
            min,
            max,
            scale,
            format,
            count,
            digits,
        } => {
            let ticks = generate_ticks_with(
                scale.into(),
                FoldChange::new(min)?,
                FoldChange::new(max)?,
                count as usize,
                format.into(),
                digits as usize,
            )?;
            let _ = writeln!(out, "position\tlabel");
            for (pos, label) in ticks.iter() {
                let _ = writeln!(out, "{pos}\t{label}");
            }
        }
        Command::Plot(args) => plot(&args, err)?,
        Command::Simulate(args) => simulate(&args)?,
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Warning text when any fold change lies more than [`DYNAMIC_RANGE_LIMIT`]
/// MAD units from no change, `None` otherwise.
pub fn dynamic_range_warning(values: impl IntoIterator<Item = FoldChange>) -> Option<String> {
    let worst = values
        .into_iter()
        .map(|x| (x, mad_forward(x).get().abs()))
        .fold(None, |acc: Option<(FoldChange, f64)>, (x, m)| match acc {
            Some((_, best)) if best >= m => acc,
            _ => Some((x, m)),
        })?;
    (worst.1 > DYNAMIC_RANGE_LIMIT).then(|| {
        format!(
            "fold change {} is {} units from no change on a MAD-FC axis (limit {DYNAMIC_RANGE_LIMIT}); \
             values this far out compress the rest of the chart, consider a log2 scale",
            worst.0, worst.1
        )
    })
}

fn plot(args: &PlotArgs, err: &mut impl Write) -> Result<(), CliError> {
    let bytes = read_input(&args.input)?;
    let ingest = |source: IngestError| CliError::Ingest {
        path: args.input.clone(),
        source,
    };
    let spec = ChartSpec {
        kind: args.kind.into(),
        scale: args.scale.into(),
        label_format: args.format.into(),
        digits: args.digits as usize,
        width_px: args.width,
        height_px: args.height,
        title: args.title.clone(),
    };
    let d = args.delimiter;

    let (doc, fold_changes): (SvgDocument, Vec<FoldChange>) = match args.kind {
        PlotKind::Volcano | PlotKind::Ma => {
            let options = ParseOptions {
                delimiter: d,
                fc_mode: args.fc_column.into(),
            };
            let mut table = parse_de_table(&bytes, &options).map_err(ingest)?;
            table.source = args.input.display().to_string();
            let doc = if args.kind == PlotKind::Volcano {
                render_volcano(&table, &spec)?
            } else {
                render_ma(&table, &spec)?
            };
            (doc, table.fold_changes().collect())
        }
        PlotKind::Errorbar => {
            let groups = parse_group_summaries(&bytes, d).map_err(ingest)?;
            let fcs = groups.iter().flat_map(|g| [g.lower_fc, g.point_fc, g.upper_fc]).collect();
            (render_errorbar(&groups, &spec)?, fcs)
        }
        PlotKind::Box => match first_header_cell(&bytes, d).as_deref() {
            Some("gene") => {
                let matrix = parse_expression_matrix(&bytes, d).map_err(ingest)?;
                let fcs = matrix.fold_changes().filter_map(|v| FoldChange::new(v).ok()).collect();
                (render_box_matrix(&matrix, &spec)?, fcs)
            }
            Some("group") => {
                let groups = parse_box_groups(&bytes, d).map_err(ingest)?;
                let fcs = groups.iter().flat_map(|g| g.summary.as_array()).collect();
                (render_box(&groups, &spec)?, fcs)
            }
            _ => {
                return Err(CliError::Input {
                    path: args.input.clone(),
                    message: "box input must start with a 'gene' (expression matrix) or 'group' (five-number) header"
                        .to_string(),
                })
            }
        },
        PlotKind::Violin => {
            let matrix = parse_expression_matrix(&bytes, d).map_err(ingest)?;
            let fcs = matrix.fold_changes().filter_map(|v| FoldChange::new(v).ok()).collect();
            (render_violin(&matrix, &spec)?, fcs)
        }
        PlotKind::Heatmap => {
            let table = parse_heatmap_table(&bytes, d).map_err(ingest)?;
            let fcs = table.fold_changes().collect();
            (render_heatmap(&table, &spec)?, fcs)
        }
    };

    if let Some(w) = dynamic_range_warning(fold_changes) {
        let _ = writeln!(err, "warning: {w}");
    }
    for w in &doc.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    write_output(&args.out, doc.as_bytes())
}

fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let csv = match args.dataset {
        SimKind::Fig4a => {
            let groups = args.groups.map_or(DEFAULT_INTERVAL_GROUPS, |g| g as usize);
            group_summaries_to_csv(&simulate_interval_dataset(groups, args.seed)?)?
        }
        SimKind::Fig5a => box_groups_to_csv(&simulate_box_groups(args.seed))?,
        SimKind::Fig6a => simulate_violin_dataset(
            args.groups.map_or(DEFAULT_VIOLIN_GROUPS, |g| g as usize),
            args.samples.unwrap_or(DEFAULT_VIOLIN_SAMPLES),
            args.sigma.unwrap_or(DEFAULT_VIOLIN_SIGMA),
            args.seed,
        )?
        .to_csv()?,
    };
    write_output(&args.out, csv.as_bytes())
}
