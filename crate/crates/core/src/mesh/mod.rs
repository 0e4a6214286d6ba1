//! Conforming simplicial meshes in 2D and 3D.
//!
//! Coordinates are stored as [`Point`] (`Vector3`) for both dimensions; 2D
//! meshes keep `z = 0` so that cross products give the scalar rotation in
//! their third component.

mod geometry;
mod io;
mod structured;
mod topology;

pub use geometry::{
    cell_geometry, edge_tangent, face_normal, normal_in_face, tangent_basis, CellGeometry,
};
pub use io::{parse_mesh, read_mesh, write_mesh};
pub use structured::structured_cube;
pub use topology::{Entity, EntityKind, Topology};

use nalgebra::Vector3;

use crate::error::{FemError, Result};

pub type Point = Vector3<f64>;

/// Node coordinates and cell connectivity.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    dim: usize,
    nodes: Vec<Point>,
    cells: Vec<usize>,
}

impl Mesh {
    /// Validates vertex ids, distinctness, and cell measure.
    pub fn new(dim: usize, nodes: Vec<Point>, cells: Vec<usize>) -> Result<Mesh> {
        if dim != 2 && dim != 3 {
            return Err(FemError::UnsupportedDimension(dim));
        }
        let nv = dim + 1;
        if !cells.len().is_multiple_of(nv) {
            return Err(FemError::Structure(format!(
                "cell array length {} is not a multiple of {nv}",
                cells.len()
            )));
        }
        let mesh = Mesh { dim, nodes, cells };
        for c in 0..mesh.num_cells() {
            let cell = mesh.cell(c);
            for (i, &v) in cell.iter().enumerate() {
                if v >= mesh.nodes.len() {
                    return Err(FemError::Structure(format!(
                        "cell {c} references node {v}, mesh has {}",
                        mesh.nodes.len()
                    )));
                }
                if cell[..i].contains(&v) {
                    return Err(FemError::Structure(format!("cell {c} repeats vertex {v}")));
                }
            }
            geometry::check_nondegenerate(&mesh, c)?;
        }
        Ok(mesh)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len() / (self.dim + 1)
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Point {
        &self.nodes[i]
    }

    pub fn cell(&self, c: usize) -> &[usize] {
        let nv = self.dim + 1;
        &self.cells[c * nv..(c + 1) * nv]
    }

    pub fn cells(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.dim + 1)
    }

    pub fn cell_array(&self) -> &[usize] {
        &self.cells
    }

    /// Largest edge length over all cells.
    pub fn max_diameter(&self) -> f64 {
        self.cells()
            .map(|c| geometry::diameter(self, c))
            .fold(0.0, f64::max)
    }
}
