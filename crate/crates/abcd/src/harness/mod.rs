//! Experiment runner: a spec file names an experiment, base parameters, an
//! optional one-parameter sweep and a seed list; the result is one CSV table
//! with a row per measurement followed by mean and standard deviation rows.

mod measure;
mod spec;

use std::io::Write;
use std::path::Path;

use abcd_core::AbcdParams;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use measure::{columns, measure, Record};
pub use spec::{parse_spec, load_spec, Experiment, ExperimentSpec, Sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Data,
    Mean,
    Std,
}

impl RowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RowKind::Data => "data",
            RowKind::Mean => "mean",
            RowKind::Std => "std",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub kind: RowKind,
    /// `None` on summary rows.
    pub seed: Option<u64>,
    pub params: AbcdParams,
    pub keys: Vec<String>,
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub experiment: Experiment,
    pub key_columns: &'static [&'static str],
    pub value_columns: &'static [&'static str],
    pub rows: Vec<Row>,
}

const PARAM_COLUMNS: [&str; 9] = ["n", "gamma", "delta", "zeta", "beta", "s", "tau", "xi", "variant"];

impl Table {
    fn value_index(&self, column: &str) -> Option<usize> {
        self.value_columns.iter().position(|&c| c == column)
    }

    /// Values of `column` over rows of `kind` accepted by `filter`.
    pub fn column(&self, column: &str, kind: RowKind, filter: impl Fn(&Row) -> bool) -> Vec<f64> {
        let Some(i) = self.value_index(column) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .filter(|r| r.kind == kind && filter(r))
            .filter_map(|r| r.values[i])
            .collect()
    }

    pub fn header(&self) -> Vec<&str> {
        let mut h = vec!["row", "seed"];
        h.extend(PARAM_COLUMNS);
        h.extend(self.key_columns);
        h.extend(self.value_columns);
        h
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            let p = &row.params;
            let mut rec = vec![
                row.kind.as_str().to_string(),
                row.seed.map_or_else(String::new, |s| s.to_string()),
                p.n.to_string(),
                p.gamma.to_string(),
                p.delta.to_string(),
                p.zeta.to_string(),
                p.beta.to_string(),
                p.s.to_string(),
                p.tau.to_string(),
                p.xi.to_string(),
                p.variant.as_str().to_string(),
            ];
            rec.extend(row.keys.iter().cloned());
            rec.extend(row.values.iter().map(|v| v.map_or_else(String::new, |x| x.to_string())));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("csv output", e))?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

fn summarize(point: &AbcdParams, data: &[Row], width: usize) -> Vec<Row> {
    let mut groups: Vec<(Vec<String>, Vec<Vec<f64>>)> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for row in data {
        let slot = *index.entry(row.keys.clone()).or_insert_with(|| {
            groups.push((row.keys.clone(), vec![Vec::new(); width]));
            groups.len() - 1
        });
        for (acc, v) in groups[slot].1.iter_mut().zip(&row.values) {
            acc.extend(v);
        }
    }
    let mut out = Vec::with_capacity(2 * groups.len());
    for (keys, samples) in groups {
        let stats: Vec<(Option<f64>, Option<f64>)> = samples.iter().map(|s| mean_std(s)).collect();
        for (kind, pick) in [(RowKind::Mean, 0), (RowKind::Std, 1)] {
            out.push(Row {
                kind,
                seed: None,
                params: *point,
                keys: keys.clone(),
                values: stats.iter().map(|&(m, s)| if pick == 0 { m } else { s }).collect(),
            });
        }
    }
    out
}

/// Mean and sample standard deviation (zero for a single sample).
fn mean_std(xs: &[f64]) -> (Option<f64>, Option<f64>) {
    if xs.is_empty() {
        return (None, None);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (Some(mean), Some(var.sqrt()))
}

/// Runs every (sweep point, seed) pair on the rayon pool and assembles the
/// table in sweep then seed order.
pub fn run(spec: &ExperimentSpec) -> Result<Table> {
    let points = spec.points()?;
    let jobs: Vec<(usize, u64)> =
        (0..points.len()).flat_map(|i| spec.seeds.iter().map(move |&s| (i, s))).collect();
    let results: Vec<Vec<Record>> = jobs
        .par_iter()
        .map(|&(i, seed)| measure(spec.experiment, &points[i], seed, spec))
        .collect::<Result<_>>()?;

    let (key_columns, value_columns) = columns(spec.experiment);
    let mut data: Vec<Vec<Row>> = vec![Vec::new(); points.len()];
    for (&(i, seed), records) in jobs.iter().zip(results) {
        data[i].extend(records.into_iter().map(|r| Row {
            kind: RowKind::Data,
            seed: Some(seed),
            params: points[i],
            keys: r.keys,
            values: r.values,
        }));
    }
    let mut rows: Vec<Row> = data.iter().flatten().cloned().collect();
    for (point, point_rows) in points.iter().zip(&data) {
        rows.extend(summarize(point, point_rows, value_columns.len()));
    }
    Ok(Table { experiment: spec.experiment, key_columns, value_columns, rows })
}
