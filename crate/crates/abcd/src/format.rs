//! Tab-separated graph files. Node and community ids are 1-based.
//!
//! * edges: `u<TAB>v` with `u <= v`, one line per edge copy, loops as `u<TAB>u`
//! * communities: `node<TAB>community`, one line per node
//! * weight split: `node<TAB>community_degree<TAB>background_degree`

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use abcd_core::weights::WeightSplit;
use abcd_core::{MultiGraph, Partition};

use crate::error::{Error, Result};

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

/// Yields `(line number, fields)` for non-blank lines.
fn records<'a, R: BufRead + 'a>(
    reader: R,
    origin: &'a str,
    width: usize,
) -> impl Iterator<Item = Result<(usize, Vec<usize>)>> + 'a {
    reader.lines().enumerate().filter_map(move |(i, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(Error::io(origin, e))),
        };
        if line.trim().is_empty() {
            return None;
        }
        let fields: std::result::Result<Vec<usize>, _> =
            line.split('\t').map(|f| f.trim().parse::<usize>()).collect();
        Some(match fields {
            Ok(f) if f.len() == width && f[0] >= 1 => Ok((i + 1, f)),
            _ => Err(Error::parse(origin, i + 1, format!("expected {width} positive tab-separated integers"))),
        })
    })
}

pub fn write_edges<W: Write>(out: &mut W, g: &MultiGraph) -> std::io::Result<()> {
    for &(u, v) in g.edges() {
        writeln!(out, "{}\t{}", u + 1, v + 1)?;
    }
    Ok(())
}

/// Reads an edge list. With `n = None` the node count is the largest id seen.
pub fn read_edges<R: BufRead>(reader: R, n: Option<usize>, origin: &str) -> Result<MultiGraph> {
    let mut edges = Vec::new();
    let mut max_id = 0;
    for rec in records(reader, origin, 2) {
        let (line, f) = rec?;
        if f[1] == 0 {
            return Err(Error::parse(origin, line, "node ids start at 1"));
        }
        if let Some(n) = n {
            if f[0] > n || f[1] > n {
                return Err(Error::parse(origin, line, format!("node id above {n}")));
            }
        }
        max_id = max_id.max(f[0]).max(f[1]);
        edges.push((f[0] - 1, f[1] - 1));
    }
    Ok(MultiGraph::from_edges(n.unwrap_or(max_id), edges)?)
}

pub fn write_partition<W: Write>(out: &mut W, p: &Partition) -> std::io::Result<()> {
    for (v, &c) in p.labels().iter().enumerate() {
        writeln!(out, "{}\t{}", v + 1, c + 1)?;
    }
    Ok(())
}

/// Reads a community file; every node `1..=n` must appear exactly once.
pub fn read_partition<R: BufRead>(reader: R, origin: &str) -> Result<Partition> {
    let mut labels: Vec<Option<usize>> = Vec::new();
    for rec in records(reader, origin, 2) {
        let (line, f) = rec?;
        if f[1] == 0 {
            return Err(Error::parse(origin, line, "community ids start at 1"));
        }
        let v = f[0] - 1;
        if v >= labels.len() {
            labels.resize(v + 1, None);
        }
        if labels[v].replace(f[1] - 1).is_some() {
            return Err(Error::parse(origin, line, format!("node {} listed twice", f[0])));
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| Error::parse(origin, 0, format!("node {} missing", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_labels(labels))
}

pub fn write_split<W: Write>(out: &mut W, split: &WeightSplit) -> std::io::Result<()> {
    for (v, (y, z)) in split.y.iter().zip(&split.z).enumerate() {
        writeln!(out, "{}\t{}\t{}", v + 1, y, z)?;
    }
    Ok(())
}

/// Reads a weight split. Leaders are not stored, so `leader_of` is empty.
pub fn read_split<R: BufRead>(reader: R, origin: &str) -> Result<WeightSplit> {
    let mut rows: Vec<Option<(usize, usize)>> = Vec::new();
    for rec in records(reader, origin, 3) {
        let (line, f) = rec?;
        let v = f[0] - 1;
        if v >= rows.len() {
            rows.resize(v + 1, None);
        }
        if rows[v].replace((f[1], f[2])).is_some() {
            return Err(Error::parse(origin, line, format!("node {} listed twice", f[0])));
        }
    }
    let mut split = WeightSplit { y: Vec::new(), z: Vec::new(), leader_of: Vec::new() };
    for (v, row) in rows.into_iter().enumerate() {
        let (y, z) = row.ok_or_else(|| Error::parse(origin, 0, format!("node {} missing", v + 1)))?;
        split.y.push(y);
        split.z.push(z);
    }
    Ok(split)
}

pub fn save<T: ?Sized>(
    path: &Path,
    value: &T,
    write: impl FnOnce(&mut BufWriter<File>, &T) -> std::io::Result<()>,
) -> Result<()> {
    let mut out = create(path)?;
    write(&mut out, value).and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
}

pub fn load_edges(path: &Path, n: Option<usize>) -> Result<MultiGraph> {
    read_edges(open(path)?, n, &path.display().to_string())
}

pub fn load_partition(path: &Path) -> Result<Partition> {
    read_partition(open(path)?, &path.display().to_string())
}

pub fn load_split(path: &Path) -> Result<WeightSplit> {
    read_split(open(path)?, &path.display().to_string())
}

/// Writes the edge and community files of a graph.
pub fn write_graph(g: &MultiGraph, p: &Partition, edges: &Path, communities: &Path) -> Result<()> {
    save(edges, g, write_edges)?;
    save(communities, p, write_partition)
}

/// Reads a graph whose node count is fixed by its community file.
pub fn read_graph(edges: &Path, communities: &Path) -> Result<(MultiGraph, Partition)> {
    let p = load_partition(communities)?;
    let g = load_edges(edges, Some(p.node_count()))?;
    Ok((g, p))
}
