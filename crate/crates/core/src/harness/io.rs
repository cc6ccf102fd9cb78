use std::fmt::Write as _;
use std::path::Path;

use super::HarnessError;
use crate::multigraph::{GraphError, Multigraph, Vertex};

/// Reads the `u v m` edge-list format. Blank lines and lines starting with
/// `#` are skipped; an optional `n <count>` line fixes the vertex count,
/// which otherwise is one more than the largest vertex mentioned.
pub fn parse_edge_list(text: &str) -> Result<Multigraph, HarnessError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut pairs: Vec<(Vertex, Vertex, usize)> = Vec::new();
    let mut lines_of: Vec<usize> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| HarnessError::Parse { line, message };
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields[0] == "n" {
            if fields.len() != 2 {
                return Err(err("expected `n <vertex_count>`".into()));
            }
            if declared.is_some() {
                return Err(err("vertex count declared twice".into()));
            }
            let n = fields[1].parse().map_err(|_| err(format!("bad vertex count `{}`", fields[1])))?;
            declared = Some((n, line));
            continue;
        }
        if fields.len() != 3 {
            return Err(err(format!("expected `u v m`, found {} fields", fields.len())));
        }
        let mut nums = [0usize; 3];
        for (slot, f) in nums.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| err(format!("`{f}` is not a nonnegative integer")))?;
        }
        let [u, v, m] = nums;
        if u == v {
            return Err(err(GraphError::Loop(u).to_string()));
        }
        if m == 0 {
            return Err(err(GraphError::ZeroMultiplicity { u, v }.to_string()));
        }
        pairs.push((u, v, m));
        lines_of.push(line);
    }
    let n = match declared {
        Some((n, header)) => {
            if let Some(k) = pairs.iter().position(|&(u, v, _)| u.max(v) >= n) {
                let (u, v, _) = pairs[k];
                return Err(HarnessError::Parse {
                    line: lines_of[k],
                    message: GraphError::InvalidVertex { vertex: u.max(v), count: n }.to_string()
                        + &format!(" (declared on line {header})"),
                });
            }
            n
        }
        None => pairs.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0),
    };
    Ok(Multigraph::with_vertices(n, &pairs)?)
}

/// Writes `n <count>` and one `u v m` line per pair.
pub fn serialize(g: &Multigraph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v, m) in g.pair_list() {
        writeln!(out, "{u} {v} {m}").unwrap();
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<Multigraph, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
}

pub fn write_edge_list(path: &Path, g: &Multigraph) -> Result<(), HarnessError> {
    std::fs::write(path, serialize(g)).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}
