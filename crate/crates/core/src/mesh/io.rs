//! Plain-text mesh format.
//!
//! ```text
//! # optional comments
//! GD NN NC
//! x y [z]        (NN lines)
//! v0 v1 v2 [v3]  (NC lines, zero-based)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{Mesh, Point};
use crate::error::{FemError, Result};

pub fn read_mesh(path: impl AsRef<Path>) -> Result<Mesh> {
    parse_mesh(&std::fs::read_to_string(path)?)
}

pub fn write_mesh(mesh: &Mesh, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_mesh(mesh))?;
    Ok(())
}

fn format_mesh(mesh: &Mesh) -> String {
    let gd = mesh.dim();
    let mut s = format!("{} {} {}\n", gd, mesh.num_nodes(), mesh.num_cells());
    for p in mesh.nodes() {
        let coords: Vec<String> = (0..gd).map(|i| format!("{:?}", p[i])).collect();
        let _ = writeln!(s, "{}", coords.join(" "));
    }
    for c in mesh.cells() {
        let ids: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", ids.join(" "));
    }
    s
}

/// Parse the text format; errors carry 1-based line numbers.
pub fn parse_mesh(text: &str) -> Result<Mesh> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let perr = |line: usize, msg: String| FemError::Parse { line, msg };

    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header".into()))?;
    let h: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| perr(hl, format!("bad header: {e}")))?;
    if h.len() != 3 {
        return Err(perr(hl, "header must be `GD NN NC`".into()));
    }
    let (gd, nn, nc) = (h[0], h[1], h[2]);
    if gd != 2 && gd != 3 {
        return Err(perr(hl, format!("unsupported dimension {gd}")));
    }

    let mut nodes = Vec::with_capacity(nn);
    for _ in 0..nn {
        let (ln, l) = lines.next().ok_or_else(|| perr(0, "unexpected end of file in nodes".into()))?;
        let v: Vec<f64> = l
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| perr(ln, format!("bad coordinate: {e}")))?;
        if v.len() != gd {
            return Err(perr(ln, format!("expected {gd} coordinates, found {}", v.len())));
        }
        nodes.push(Point::new(v[0], v[1], if gd == 3 { v[2] } else { 0.0 }));
    }

    let mut cells = Vec::with_capacity(nc * (gd + 1));
    for _ in 0..nc {
        let (ln, l) = lines.next().ok_or_else(|| perr(0, "unexpected end of file in cells".into()))?;
        let v: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| perr(ln, format!("bad vertex id: {e}")))?;
        if v.len() != gd + 1 {
            return Err(perr(ln, format!("expected {} vertex ids, found {}", gd + 1, v.len())));
        }
        for (i, &x) in v.iter().enumerate() {
            if x >= nn {
                return Err(perr(ln, format!("vertex id {x} out of range")));
            }
            if v[..i].contains(&x) {
                return Err(perr(ln, format!("repeated vertex {x} in cell")));
            }
        }
        cells.extend(v);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing content after cells".into()));
    }
    Mesh::new(gd, nodes, cells)
}
