//! Undirected graphs in compressed sparse row form.
//!
//! Graphs are immutable after construction. The loader accepts KONECT-style
//! edge lists ('%' or '#' comment lines, extra columns ignored) as well as
//! plain two-column lists, collapses duplicate edges, drops self-loops and
//! never materializes isolated nodes. Internal indices follow first
//! appearance in the kept edge stream; original labels are retained.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::BufRead;
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

static PARALLEL_SPMV: AtomicBool = AtomicBool::new(false);

/// Enable row-partitioned parallel spmv. Each row is still reduced
/// sequentially, so results are bit-identical to the sequential path.
pub fn set_parallel_spmv(enabled: bool) {
    PARALLEL_SPMV.store(enabled, Ordering::Relaxed);
}

const PARALLEL_SPMV_MIN_ROWS: usize = 4096;

/// What the loader saw and what it discarded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadSummary {
    /// Distinct labels encountered in the input, including ones later dropped.
    pub nodes_read: usize,
    /// Data lines parsed as edges (comments and blanks excluded).
    pub edges_read: usize,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
    /// Labels that appeared only in dropped lines and never became nodes.
    pub isolated_dropped: usize,
}

/// Immutable symmetric sparse adjacency structure with stable node ordering.
#[derive(Debug, Clone)]
pub struct Graph {
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    fingerprint: String,
}

impl Graph {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.col_indices.len() / 2
    }

    /// Neighbors of node `i`, sorted ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.col_indices[self.row_offsets[i]..self.row_offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row_offsets[i + 1] - self.row_offsets[i]
    }

    /// Per-node degrees; equals A × 1.
    pub fn degrees(&self) -> Vec<u64> {
        (0..self.node_count()).map(|i| self.degree(i) as u64).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Original label of internal index `i`.
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// SHA-256 over the canonical structure (offsets, indices, labels).
    /// Binds score vectors and cache entries to this exact graph.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    /// y = A·x, the exact 0/1 adjacency action.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.node_count() {
            return Err(Error::DimensionMismatch {
                expected: self.node_count(),
                actual: x.len(),
            });
        }
        let mut y = vec![0.0; x.len()];
        self.spmv_into(x, &mut y);
        Ok(y)
    }

    /// y = A·x without allocation. Panics on length mismatch; use [`Self::spmv`]
    /// for the checked variant. Each row is a sequential reduction, so the
    /// parallel path produces bit-identical output.
    pub fn spmv_into(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.node_count());
        assert_eq!(y.len(), self.node_count());
        let row_sum = |i: usize| -> f64 {
            let mut acc = 0.0;
            for &j in &self.col_indices[self.row_offsets[i]..self.row_offsets[i + 1]] {
                acc += x[j];
            }
            acc
        };
        if PARALLEL_SPMV.load(Ordering::Relaxed) && self.node_count() >= PARALLEL_SPMV_MIN_ROWS {
            y.par_iter_mut().enumerate().for_each(|(i, out)| *out = row_sum(i));
        } else {
            for (i, out) in y.iter_mut().enumerate() {
                *out = row_sum(i);
            }
        }
    }

    /// BFS reachability from node 0.
    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut visited = 1;
        while let Some(i) = queue.pop_front() {
            for &j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    visited += 1;
                    queue.push_back(j);
                }
            }
        }
        visited == n
    }

    /// Load from a reader of whitespace-separated label pairs. Lines starting
    /// with '%' or '#' are comments; columns beyond the first two (KONECT
    /// weight/timestamp) are ignored.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Graph, LoadSummary)> {
        let mut labels: Vec<String> = Vec::new();
        let mut label_index: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut dropped_labels: HashSet<String> = HashSet::new();
        let mut summary = LoadSummary::default();

        let intern = |label: &str, labels: &mut Vec<String>, index: &mut HashMap<String, usize>| {
            if let Some(&i) = index.get(label) {
                i
            } else {
                let i = labels.len();
                labels.push(label.to_string());
                index.insert(label.to_string(), i);
                i
            }
        };

        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let u = tokens.next().expect("non-empty line has a first token");
            let Some(v) = tokens.next() else {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected a node pair, found single token {u:?}"),
                });
            };
            summary.edges_read += 1;
            if u == v {
                summary.self_loops_dropped += 1;
                dropped_labels.insert(u.to_string());
                continue;
            }
            let iu = intern(u, &mut labels, &mut label_index);
            let iv = intern(v, &mut labels, &mut label_index);
            edges.push((iu.min(iv), iu.max(iv)));
        }

        summary.isolated_dropped = dropped_labels
            .iter()
            .filter(|l| !label_index.contains_key(l.as_str()))
            .count();
        summary.nodes_read = labels.len() + summary.isolated_dropped;

        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        summary.duplicates_collapsed = before - edges.len();

        let graph = Self::from_clean_edges(labels, label_index, &edges)?;
        Ok((graph, summary))
    }

    pub fn load_path<P: AsRef<Path>>(path: P) -> Result<(Graph, LoadSummary)> {
        let file = std::fs::File::open(path)?;
        Self::load_edge_list(std::io::BufReader::new(file))
    }

    /// Build from index pairs; labels are the decimal indices. Applies the
    /// same cleaning as the loader (self-loops dropped, duplicates collapsed,
    /// untouched indices never materialize). Internal order follows first
    /// appearance.
    pub fn from_index_edges(pairs: &[(usize, usize)]) -> Result<(Graph, LoadSummary)> {
        let mut labels: Vec<String> = Vec::new();
        let mut label_index: HashMap<String, usize> = HashMap::new();
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        let mut summary = LoadSummary {
            edges_read: pairs.len(),
            ..LoadSummary::default()
        };
        let mut dropped: HashSet<usize> = HashSet::new();
        for &(a, b) in pairs {
            if a == b {
                summary.self_loops_dropped += 1;
                dropped.insert(a);
                continue;
            }
            let mut intern = |orig: usize| -> usize {
                *remap.entry(orig).or_insert_with(|| {
                    let i = labels.len();
                    let label = orig.to_string();
                    labels.push(label.clone());
                    label_index.insert(label, i);
                    i
                })
            };
            let ia = intern(a);
            let ib = intern(b);
            edges.push((ia.min(ib), ia.max(ib)));
        }
        summary.isolated_dropped = dropped.iter().filter(|i| !remap.contains_key(i)).count();
        summary.nodes_read = labels.len() + summary.isolated_dropped;
        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        summary.duplicates_collapsed = before - edges.len();
        let graph = Self::from_clean_edges(labels, label_index, &edges)?;
        Ok((graph, summary))
    }

    /// CSR assembly from deduplicated, loop-free, normalized (min,max) pairs.
    fn from_clean_edges(
        labels: Vec<String>,
        label_index: HashMap<String, usize>,
        edges: &[(usize, usize)],
    ) -> Result<Graph> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(a, b) in edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut row_offsets = vec![0usize; n + 1];
        for i in 0..n {
            row_offsets[i + 1] = row_offsets[i] + degree[i];
        }
        let mut cursor = row_offsets.clone();
        let mut col_indices = vec![0usize; 2 * edges.len()];
        for &(a, b) in edges {
            col_indices[cursor[a]] = b;
            cursor[a] += 1;
            col_indices[cursor[b]] = a;
            cursor[b] += 1;
        }
        for i in 0..n {
            col_indices[row_offsets[i]..row_offsets[i + 1]].sort_unstable();
        }
        let fingerprint = compute_fingerprint(&row_offsets, &col_indices, &labels);
        Ok(Graph {
            row_offsets,
            col_indices,
            labels,
            label_index,
            fingerprint,
        })
    }

    /// Canonical edge-list form: one "u v" line per edge with u < v under the
    /// original labels, lines sorted lexicographically. Reloading the output
    /// and exporting again reproduces it byte for byte.
    pub fn canonical_edge_list(&self) -> String {
        let mut lines: Vec<(&str, &str)> = Vec::with_capacity(self.edge_count());
        for i in 0..self.node_count() {
            for &j in self.neighbors(i) {
                if j > i {
                    let (a, b) = (self.label(i), self.label(j));
                    lines.push(if a < b { (a, b) } else { (b, a) });
                }
            }
        }
        lines.sort_unstable();
        let mut out = String::new();
        for (a, b) in lines {
            out.push_str(a);
            out.push(' ');
            out.push_str(b);
            out.push('\n');
        }
        out
    }

    /// id_map export: CSV "internal_index,original_label".
    pub fn id_map_csv(&self) -> String {
        let mut out = String::from("internal_index,original_label\n");
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i, csv_escape(label)));
        }
        out
    }
}

/// Quote a CSV field if it contains a delimiter, quote or newline.
pub(crate) fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn compute_fingerprint(row_offsets: &[usize], col_indices: &[usize], labels: &[String]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"walkgain-graph-v1");
    hasher.update((labels.len() as u64).to_le_bytes());
    hasher.update((col_indices.len() as u64).to_le_bytes());
    for &off in row_offsets {
        hasher.update((off as u64).to_le_bytes());
    }
    for &c in col_indices {
        hasher.update((c as u64).to_le_bytes());
    }
    for label in labels {
        hasher.update(label.as_bytes());
        hasher.update([0u8]);
    }
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}
