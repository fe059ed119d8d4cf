//! Text output of count sequences: b-files, the four count tables and
//! duration curves. CSV output uses commas, no quoting and LF line endings.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::counts::{self, CountFamily, CountsError, SeqKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SequenceIoError {
    #[error("at least one row is required")]
    Empty,
    #[error("unknown table {0:?}; expected 2, 3, 4 or 5")]
    UnknownTable(String),
    #[error(transparent)]
    Counts(#[from] CountsError),
}

/// The four count tables: per-disk (2, 4) and total (3, 5) moves of the
/// non-optimal (2, 3) and optimal (4, 5) families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    T2,
    T3,
    T4,
    T5,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T2, TableId::T3, TableId::T4, TableId::T5];

    pub fn kind(self) -> SeqKind {
        match self {
            TableId::T2 | TableId::T4 => SeqKind::PerDisk,
            TableId::T3 | TableId::T5 => SeqKind::Total,
        }
    }

    /// Column families in printed order.
    pub fn families(self) -> Vec<CountFamily> {
        let mut cols = vec![CountFamily::F1000];
        match self {
            TableId::T2 | TableId::T3 => cols.extend(CountFamily::NON_OPTIMAL),
            TableId::T4 | TableId::T5 => cols.extend(&CountFamily::OPTIMAL[1..]),
        }
        cols
    }

    /// Name of the index column.
    pub fn index_label(self) -> &'static str {
        match self.kind() {
            SeqKind::PerDisk => "k",
            SeqKind::Total => "N",
        }
    }
}

impl FromStr for TableId {
    type Err = SequenceIoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().trim_start_matches(['t', 'T']) {
            "2" => Ok(TableId::T2),
            "3" => Ok(TableId::T3),
            "4" => Ok(TableId::T4),
            "5" => Ok(TableId::T5),
            _ => Err(SequenceIoError::UnknownTable(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableSpec {
    pub table_id: TableId,
    pub max_index: u32,
}

impl TableSpec {
    pub fn new(table_id: TableId) -> Self {
        TableSpec {
            table_id,
            max_index: 20,
        }
    }
}

fn value(family: CountFamily, kind: SeqKind, index: u32) -> Result<counts::BigCount, CountsError> {
    match kind {
        SeqKind::Total => counts::total_moves(family, index),
        SeqKind::PerDisk => counts::disk_moves(family, index),
    }
}

/// `n a(n)` lines for `n = offset .. offset + max_index − 1`.
pub fn emit_bfile(
    family: CountFamily,
    kind: SeqKind,
    max_index: u32,
    offset: u32,
) -> Result<String, SequenceIoError> {
    if max_index == 0 {
        return Err(SequenceIoError::Empty);
    }
    let mut out = String::new();
    for n in offset..offset + max_index {
        writeln!(out, "{n} {}", value(family, kind, n)?).expect("writing to a String");
    }
    Ok(out)
}

/// Nine decimals with trailing zeros dropped, so an exact 1 prints as `1`.
pub fn format_ratio(x: f64) -> String {
    let s = format!("{x:.9}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn format_limit(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The table as CSV: a header, one row per index, then a `T(max)` row of
/// ratios to the colored family and a `T_limit` row of exact limits.
pub fn emit_table(spec: TableSpec) -> Result<String, SequenceIoError> {
    if spec.max_index == 0 {
        return Err(SequenceIoError::Empty);
    }
    let id = spec.table_id;
    let families = id.families();
    let kind = id.kind();
    let mut out = String::new();

    let header: Vec<&str> = families.iter().map(|f| f.designation()).collect();
    out.push_str(&format!("{},{}\n", id.index_label(), header.join(",")));

    for n in 1..=spec.max_index {
        let cells = families
            .iter()
            .map(|&f| value(f, kind, n).map(|v| v.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        out.push_str(&format!("{n},{}\n", cells.join(",")));
    }

    let ratios = families
        .iter()
        .map(|&f| {
            let r = match kind {
                SeqKind::Total => counts::duration(f, spec.max_index),
                SeqKind::PerDisk => counts::disk_duration(f, spec.max_index),
            };
            r.map(format_ratio)
        })
        .collect::<Result<Vec<_>, _>>()?;
    out.push_str(&format!("T({}),{}\n", spec.max_index, ratios.join(",")));

    let limits: Vec<String> = families
        .iter()
        .map(|f| format_limit(&f.duration_limit()))
        .collect();
    out.push_str(&format!("T_limit,{}\n", limits.join(",")));
    Ok(out)
}

/// Durations of the five optimal families for `n = 1..=max_n`.
pub fn emit_duration_curve(max_n: u32) -> Result<String, SequenceIoError> {
    if max_n == 0 {
        return Err(SequenceIoError::Empty);
    }
    let mut out = String::from("n");
    for f in CountFamily::OPTIMAL {
        out.push_str(&format!(",T{}", f.code()));
    }
    out.push('\n');
    for n in 1..=max_n {
        out.push_str(&n.to_string());
        for f in CountFamily::OPTIMAL {
            out.push_str(&format!(",{:.9}", counts::duration(f, n)?));
        }
        out.push('\n');
    }
    Ok(out)
}
