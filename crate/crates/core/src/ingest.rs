//! Delimited-text readers and writers for the tables the charts consume.
//!
//! | table               | header                                   |
//! |---------------------|------------------------------------------|
//! | DE table            | `id,fc,pvalue,basemean` (or `id,log2fc,…`) |
//! | expression matrix   | `gene,group,s1,…,sN`                     |
//! | heatmap             | `row,<col 1>,…,<col M>`                  |
//! | group summaries     | `group,fc,lower,upper,interval`          |
//! | five-number summary | `group,min,q1,median,q3,max`             |
//!
//! Headers must match exactly. Parsers reject bad cells instead of coercing
//! or dropping them; errors carry 1-based line and column numbers, with the
//! header on line 1.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::stats::{BoxGroup, FiveNumberSummary, GroupSummary, SampleSet};
use crate::transform::FoldChange;

pub const DE_HEADER_FC: [&str; 4] = ["id", "fc", "pvalue", "basemean"];
pub const DE_HEADER_LOG2FC: [&str; 4] = ["id", "log2fc", "pvalue", "basemean"];
pub const GROUP_SUMMARY_HEADER: [&str; 5] = ["group", "fc", "lower", "upper", "interval"];
pub const FIVE_NUMBER_HEADER: [&str; 6] = ["group", "min", "q1", "median", "q3", "max"];

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("line 1: expected header '{expected}', found '{found}'")]
    Header { expected: String, found: String },
    #[error("line {line}, column {column} ({name}): {message}")]
    Cell {
        line: u64,
        column: usize,
        name: String,
        message: String,
    },
    #[error("line {line}: expected {expected} columns, found {found}")]
    RowLength {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate key '{key}'")]
    Duplicate { line: u64, key: String },
    #[error("table has no data rows")]
    Empty,
    #[error("csv write failed: {0}")]
    Write(String),
}

/// Which fold-change column a DE table carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FcColumnMode {
    /// Raw fold change (`fc`).
    #[default]
    Fc,
    /// Base-2 log fold change (`log2fc`), exponentiated on read.
    Log2Fc,
}

impl FcColumnMode {
    pub fn header(self) -> [&'static str; 4] {
        match self {
            FcColumnMode::Fc => DE_HEADER_FC,
            FcColumnMode::Log2Fc => DE_HEADER_LOG2FC,
        }
    }
}

impl fmt::Display for FcColumnMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FcColumnMode::Fc => "fc",
            FcColumnMode::Log2Fc => "log2fc",
        })
    }
}

impl FromStr for FcColumnMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fc" => Ok(FcColumnMode::Fc),
            "log2fc" => Ok(FcColumnMode::Log2Fc),
            other => Err(format!(
                "unknown fold-change column mode '{other}' (expected fc or log2fc)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub delimiter: u8,
    pub fc_mode: FcColumnMode,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            delimiter: b',',
            fc_mode: FcColumnMode::Fc,
        }
    }
}

/// One row of a differential-expression table.
#[derive(Debug, Clone, PartialEq)]
pub struct DERecord {
    pub id: String,
    pub fc: FoldChange,
    /// In `(0, 1]` when built through [`DERecord::new`].
    pub p_value: f64,
    /// Normalized mean count, `>= 0`.
    pub base_mean: f64,
}

impl DERecord {
    pub fn new(
        id: impl Into<String>,
        fc: FoldChange,
        p_value: f64,
        base_mean: f64,
    ) -> Result<Self, String> {
        if !(p_value > 0.0 && p_value <= 1.0) {
            return Err(format!("p-value must be in (0, 1], got {p_value}"));
        }
        if !(base_mean >= 0.0 && base_mean.is_finite()) {
            return Err(format!(
                "base mean must be finite and >= 0, got {base_mean}"
            ));
        }
        Ok(DERecord {
            id: id.into(),
            fc,
            p_value,
            base_mean,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DETable {
    pub records: Vec<DERecord>,
    pub source: String,
}

impl DETable {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn fold_changes(&self) -> impl Iterator<Item = FoldChange> + '_ {
        self.records.iter().map(|r| r.fc)
    }

    /// Canonical CSV: comma-delimited, `fc` column, shortest decimals, LF.
    pub fn to_csv(&self) -> Result<String, IngestError> {
        write_rows(
            &DE_HEADER_FC,
            self.records.iter().map(|r| {
                vec![
                    r.id.clone(),
                    r.fc.to_string(),
                    r.p_value.to_string(),
                    r.base_mean.to_string(),
                ]
            }),
        )
    }
}

/// One (gene, group) cell of an expression matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpressionEntry {
    pub gene: String,
    pub group: String,
    pub samples: SampleSet,
}

/// Fold-change samples per (gene, group), in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpressionMatrix {
    pub entries: Vec<ExpressionEntry>,
}

impl ExpressionMatrix {
    pub fn gene_labels(&self) -> Vec<&str> {
        unique_in_order(self.entries.iter().map(|e| e.gene.as_str()))
    }

    pub fn group_labels(&self) -> Vec<&str> {
        unique_in_order(self.entries.iter().map(|e| e.group.as_str()))
    }

    pub fn get(&self, gene: &str, group: &str) -> Option<&SampleSet> {
        self.entries
            .iter()
            .find(|e| e.gene == gene && e.group == group)
            .map(|e| &e.samples)
    }

    /// Display label for each entry: the group alone when the matrix has a
    /// single gene, `gene:group` otherwise.
    pub fn entry_labels(&self) -> Vec<String> {
        let single_gene = self.gene_labels().len() <= 1;
        self.entries
            .iter()
            .map(|e| {
                if single_gene {
                    e.group.clone()
                } else {
                    format!("{}:{}", e.gene, e.group)
                }
            })
            .collect()
    }

    pub fn fold_changes(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries
            .iter()
            .flat_map(|e| e.samples.values().iter().copied())
    }

    pub fn to_csv(&self) -> Result<String, IngestError> {
        let width = self.entries.first().map_or(0, |e| e.samples.len());
        let mut header = vec!["gene".to_string(), "group".to_string()];
        header.extend((1..=width).map(|i| format!("s{i}")));
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        write_rows(
            &header,
            self.entries.iter().map(|e| {
                let mut row = vec![e.gene.clone(), e.group.clone()];
                row.extend(e.samples.values().iter().map(f64::to_string));
                row
            }),
        )
    }
}

fn unique_in_order<'a>(items: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    let mut seen = HashSet::new();
    items.filter(|s| seen.insert(*s)).collect()
}

/// Rectangular grid of fold changes with row and column labels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeatmapTable {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    /// Row-major, `cells[row][column]`.
    pub cells: Vec<Vec<FoldChange>>,
}

impl HeatmapTable {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() || self.column_labels.is_empty()
    }

    pub fn fold_changes(&self) -> impl Iterator<Item = FoldChange> + '_ {
        self.cells.iter().flatten().copied()
    }

    pub fn to_csv(&self) -> Result<String, IngestError> {
        let mut header = vec!["row"];
        header.extend(self.column_labels.iter().map(String::as_str));
        write_rows(
            &header,
            self.row_labels.iter().zip(&self.cells).map(|(label, row)| {
                let mut out = vec![label.clone()];
                out.extend(row.iter().map(FoldChange::to_string));
                out
            }),
        )
    }
}

pub fn group_summaries_to_csv(groups: &[GroupSummary]) -> Result<String, IngestError> {
    write_rows(
        &GROUP_SUMMARY_HEADER,
        groups.iter().map(|g| {
            vec![
                g.label.clone(),
                g.point_fc.to_string(),
                g.lower_fc.to_string(),
                g.upper_fc.to_string(),
                g.interval_kind.clone(),
            ]
        }),
    )
}

pub fn box_groups_to_csv(groups: &[BoxGroup]) -> Result<String, IngestError> {
    write_rows(
        &FIVE_NUMBER_HEADER,
        groups.iter().map(|g| {
            let mut row = vec![g.label.clone()];
            row.extend(g.summary.as_array().iter().map(FoldChange::to_string));
            row
        }),
    )
}

fn write_rows<I>(header: &[&str], rows: I) -> Result<String, IngestError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let werr = |e: csv::Error| IngestError::Write(e.to_string());
    writer.write_record(header).map_err(werr)?;
    for row in rows {
        writer.write_record(&row).map_err(werr)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| IngestError::Write(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| IngestError::Write(e.to_string()))
}

/// Row-oriented reader shared by every table schema.
struct Rows {
    header: Vec<String>,
    rows: Vec<(u64, Vec<String>)>,
}

fn read_rows(bytes: &[u8], delimiter: u8) -> Result<Rows, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);
    let mut records = reader.records();
    let to_err = |e: csv::Error| IngestError::Csv {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };
    let header = match records.next() {
        Some(rec) => rec.map_err(to_err)?.iter().map(str::to_string).collect(),
        None => return Err(IngestError::Empty),
    };
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(to_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        rows.push((line, rec.iter().map(str::to_string).collect()));
    }
    if rows.is_empty() {
        return Err(IngestError::Empty);
    }
    Ok(Rows { header, rows })
}

fn check_header(found: &[String], expected: &[&str]) -> Result<(), IngestError> {
    if found.len() != expected.len() || found.iter().zip(expected).any(|(f, e)| f != e) {
        return Err(IngestError::Header {
            expected: expected.join(","),
            found: found.join(","),
        });
    }
    Ok(())
}

fn check_len(line: u64, row: &[String], expected: usize) -> Result<(), IngestError> {
    if row.len() != expected {
        return Err(IngestError::RowLength {
            line,
            expected,
            found: row.len(),
        });
    }
    Ok(())
}

struct CellCtx<'a> {
    line: u64,
    header: &'a [String],
}

impl CellCtx<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> IngestError {
        IngestError::Cell {
            line: self.line,
            column: column + 1,
            name: self.header.get(column).cloned().unwrap_or_default(),
            message: message.into(),
        }
    }

    fn text<'r>(&self, row: &'r [String], column: usize) -> Result<&'r str, IngestError> {
        let cell = row[column].as_str();
        if cell.is_empty() {
            return Err(self.err(column, "empty cell"));
        }
        Ok(cell)
    }

    fn number(&self, row: &[String], column: usize) -> Result<f64, IngestError> {
        let cell = self.text(row, column)?;
        match cell.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(self.err(column, format!("'{cell}' is not a finite number"))),
        }
    }

    fn fold_change(&self, row: &[String], column: usize) -> Result<FoldChange, IngestError> {
        let v = self.number(row, column)?;
        FoldChange::new(v)
            .map_err(|_| self.err(column, format!("fold change must be > 0, got {v}")))
    }
}

/// Parse a differential-expression table.
pub fn parse_de_table(bytes: &[u8], options: &ParseOptions) -> Result<DETable, IngestError> {
    let table = read_rows(bytes, options.delimiter)?;
    check_header(&table.header, &options.fc_mode.header())?;
    let mut seen = HashSet::new();
    let mut records = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        check_len(*line, row, 4)?;
        let ctx = CellCtx {
            line: *line,
            header: &table.header,
        };
        let id = ctx.text(row, 0)?.to_string();
        let fc = match options.fc_mode {
            FcColumnMode::Fc => ctx.fold_change(row, 1)?,
            FcColumnMode::Log2Fc => {
                let l = ctx.number(row, 1)?;
                FoldChange::new(l.exp2())
                    .map_err(|_| ctx.err(1, format!("log2 fold change {l} is out of range")))?
            }
        };
        let p = ctx.number(row, 2)?;
        if !(p > 0.0 && p <= 1.0) {
            return Err(ctx.err(2, format!("p-value must be in (0, 1], got {p}")));
        }
        let base_mean = ctx.number(row, 3)?;
        if base_mean < 0.0 {
            return Err(ctx.err(3, format!("base mean must be >= 0, got {base_mean}")));
        }
        if !seen.insert(id.clone()) {
            return Err(IngestError::Duplicate {
                line: *line,
                key: id,
            });
        }
        records.push(DERecord {
            id,
            fc,
            p_value: p,
            base_mean,
        });
    }
    Ok(DETable {
        records,
        source: String::new(),
    })
}

/// Parse an expression matrix (`gene,group,s1..sN`).
pub fn parse_expression_matrix(
    bytes: &[u8],
    delimiter: u8,
) -> Result<ExpressionMatrix, IngestError> {
    let table = read_rows(bytes, delimiter)?;
    let width = table.header.len();
    let mut expected = vec!["gene".to_string(), "group".to_string()];
    expected.extend((1..=width.saturating_sub(2).max(1)).map(|i| format!("s{i}")));
    let expected: Vec<&str> = expected.iter().map(String::as_str).collect();
    check_header(&table.header, &expected)?;

    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        check_len(*line, row, width)?;
        let ctx = CellCtx {
            line: *line,
            header: &table.header,
        };
        let gene = ctx.text(row, 0)?.to_string();
        let group = ctx.text(row, 1)?.to_string();
        let values = (2..width)
            .map(|c| ctx.fold_change(row, c).map(FoldChange::get))
            .collect::<Result<Vec<_>, _>>()?;
        if !seen.insert((gene.clone(), group.clone())) {
            return Err(IngestError::Duplicate {
                line: *line,
                key: format!("{gene}:{group}"),
            });
        }
        let label = format!("{gene}:{group}");
        let samples = SampleSet::new(label, values).map_err(|e| ctx.err(2, e.to_string()))?;
        entries.push(ExpressionEntry {
            gene,
            group,
            samples,
        });
    }
    Ok(ExpressionMatrix { entries })
}

/// Parse a heatmap table (`row,<col labels…>`).
pub fn parse_heatmap_table(bytes: &[u8], delimiter: u8) -> Result<HeatmapTable, IngestError> {
    let table = read_rows(bytes, delimiter)?;
    let width = table.header.len();
    if table.header.first().map(String::as_str) != Some("row") || width < 2 {
        return Err(IngestError::Header {
            expected: "row,<column labels>".to_string(),
            found: table.header.join(","),
        });
    }
    if let Some(c) = table.header.iter().position(String::is_empty) {
        return Err(IngestError::Cell {
            line: 1,
            column: c + 1,
            name: String::new(),
            message: "empty column label".to_string(),
        });
    }
    let mut seen = HashSet::new();
    let mut row_labels = Vec::new();
    let mut cells = Vec::new();
    for (line, row) in &table.rows {
        check_len(*line, row, width)?;
        let ctx = CellCtx {
            line: *line,
            header: &table.header,
        };
        let label = ctx.text(row, 0)?.to_string();
        if !seen.insert(label.clone()) {
            return Err(IngestError::Duplicate {
                line: *line,
                key: label,
            });
        }
        let values = (1..width)
            .map(|c| ctx.fold_change(row, c))
            .collect::<Result<Vec<_>, _>>()?;
        row_labels.push(label);
        cells.push(values);
    }
    Ok(HeatmapTable {
        row_labels,
        column_labels: table.header[1..].to_vec(),
        cells,
    })
}

/// Parse point estimates with intervals (`group,fc,lower,upper,interval`).
pub fn parse_group_summaries(
    bytes: &[u8],
    delimiter: u8,
) -> Result<Vec<GroupSummary>, IngestError> {
    let table = read_rows(bytes, delimiter)?;
    check_header(&table.header, &GROUP_SUMMARY_HEADER)?;
    let mut out = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        check_len(*line, row, GROUP_SUMMARY_HEADER.len())?;
        let ctx = CellCtx {
            line: *line,
            header: &table.header,
        };
        let label = ctx.text(row, 0)?;
        let point = ctx.fold_change(row, 1)?;
        let lower = ctx.fold_change(row, 2)?;
        let upper = ctx.fold_change(row, 3)?;
        let summary = GroupSummary::new(label, point, lower, upper, row[4].clone())
            .map_err(|e| ctx.err(1, e.to_string()))?;
        out.push(summary);
    }
    Ok(out)
}

/// Parse precomputed box summaries (`group,min,q1,median,q3,max`).
pub fn parse_box_groups(bytes: &[u8], delimiter: u8) -> Result<Vec<BoxGroup>, IngestError> {
    let table = read_rows(bytes, delimiter)?;
    check_header(&table.header, &FIVE_NUMBER_HEADER)?;
    let mut out = Vec::with_capacity(table.rows.len());
    for (line, row) in &table.rows {
        check_len(*line, row, FIVE_NUMBER_HEADER.len())?;
        let ctx = CellCtx {
            line: *line,
            header: &table.header,
        };
        let label = ctx.text(row, 0)?.to_string();
        let summary = FiveNumberSummary {
            min: ctx.fold_change(row, 1)?,
            q1: ctx.fold_change(row, 2)?,
            median: ctx.fold_change(row, 3)?,
            q3: ctx.fold_change(row, 4)?,
            max: ctx.fold_change(row, 5)?,
        };
        if !summary.is_ordered() {
            return Err(ctx.err(1, "need min <= q1 <= median <= q3 <= max"));
        }
        out.push(BoxGroup { label, summary });
    }
    Ok(out)
}

/// First header cell of a delimited file, used to tell schemas apart.
pub fn first_header_cell(bytes: &[u8], delimiter: u8) -> Option<String> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);
    reader
        .records()
        .next()
        .and_then(Result::ok)
        .and_then(|r| r.get(0).map(str::to_string))
}
