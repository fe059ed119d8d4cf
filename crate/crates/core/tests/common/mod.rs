//! Fixture loading shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use mtoh::model::CountVector;
use mtoh::{AlgorithmId, BigCount, CountFamily};

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn rows(name: &str) -> Vec<Vec<String>> {
    fixture(name)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|c| c.trim().to_string()).collect())
        .collect()
}

/// A printed count table: column families and `(index, values)` rows.
pub struct CountTable {
    pub families: Vec<CountFamily>,
    pub rows: Vec<(u32, Vec<BigCount>)>,
}

/// `table` is 2, 3, 4 or 5.
pub fn count_table(table: u32) -> CountTable {
    let all = rows(&format!("table{table}.csv"));
    let families = all[0][1..]
        .iter()
        .map(|h| h.parse().expect("designation"))
        .collect();
    let rows = all[1..]
        .iter()
        .map(|r| {
            let values = r[1..].iter().map(|v| v.parse().expect("count")).collect();
            (r[0].parse().expect("index"), values)
        })
        .collect();
    CountTable { families, rows }
}

/// Printed three-disk traces by algorithm.
pub fn traces() -> BTreeMap<AlgorithmId, Vec<CountVector>> {
    rows("traces.csv")
        .into_iter()
        .map(|r| {
            let alg = r[0].parse().expect("algorithm name");
            let trace = r[1..].iter().map(|c| c.parse().expect("triple")).collect();
            (alg, trace)
        })
        .collect()
}

/// Printed rows of the seven-disk route table: route names and
/// `(step, triple per route)`.
pub fn routes7() -> (Vec<String>, Vec<(usize, Vec<CountVector>)>) {
    let all = rows("routes7.csv");
    let names = all[0][1..].to_vec();
    let body = all[1..]
        .iter()
        .map(|r| {
            let cells = r[1..].iter().map(|c| c.parse().expect("triple")).collect();
            (r[0].parse().expect("step"), cells)
        })
        .collect();
    (names, body)
}

/// One printed `T(20)` ratio.
pub struct PrintedRatio {
    pub table: u32,
    pub family: CountFamily,
    pub value: f64,
    pub text: String,
}

pub fn printed_t20() -> Vec<PrintedRatio> {
    rows("t20.csv")
        .into_iter()
        .skip(1)
        .map(|r| PrintedRatio {
            table: r[0].parse().expect("table"),
            family: r[1].parse().expect("designation"),
            value: r[2].parse().expect("ratio"),
            text: r[2].clone(),
        })
        .collect()
}
