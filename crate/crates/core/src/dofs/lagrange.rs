use super::{cell_points, interior_offset, DofBlock, DofMap, SpaceKind};
use crate::error::{invalid, Result};
use crate::lattice::{binomial, SimplicialLattice};
use crate::mesh::{Entity, EntityKind, Mesh, Point, Topology};

/// Scalar Lagrange interpolation points: vertices, then edge-, face- and
/// cell-interior blocks.
#[derive(Clone, Debug)]
pub struct LagrangePointMap {
    degree: usize,
    ldof: usize,
    gdof: usize,
    cell2ipoint: Vec<usize>,
    points: Vec<Point>,
    entity: Vec<Entity>,
    boundary: Vec<bool>,
    blocks: Vec<super::DofBlock>,
}

impl LagrangePointMap {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ldof(&self) -> usize {
        self.ldof
    }

    pub fn gdof(&self) -> usize {
        self.gdof
    }

    pub fn cell_points(&self, c: usize) -> &[usize] {
        &self.cell2ipoint[c * self.ldof..(c + 1) * self.ldof]
    }

    pub fn cell2ipoint(&self) -> &[usize] {
        &self.cell2ipoint
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Entity whose relative interior holds each point.
    pub fn point_entity(&self) -> &[Entity] {
        &self.entity
    }

    pub fn boundary_mask(&self) -> &[bool] {
        &self.boundary
    }

    pub fn blocks(&self) -> &[DofBlock] {
        &self.blocks
    }
}

pub fn build_cell2ipoint(mesh: &Mesh, topo: &Topology, k: usize) -> Result<LagrangePointMap> {
    if k == 0 {
        return invalid("Lagrange points need k >= 1");
    }
    let dim = mesh.dim();
    let lattice = SimplicialLattice::enumerate(dim, k);
    let ldof = lattice.len();
    // interior points per entity of dimension ℓ: C(k−1, ℓ)
    let per = |l: usize| binomial(k - 1, l);
    let counts = [
        mesh.num_nodes(),
        topo.num_edges() * per(1),
        if dim == 3 { topo.num_faces() * per(2) } else { 0 },
        mesh.num_cells() * per(dim),
    ];
    let names = ["vertex", "edge", "face", "cell"];
    let mut blocks = Vec::new();
    let mut base = [0usize; 4];
    let mut off = 0;
    for i in 0..4 {
        base[i] = off;
        if i != 2 || dim == 3 {
            blocks.push(DofBlock { name: names[i].into(), offset: off, len: counts[i] });
        }
        off += counts[i];
    }
    let gdof = off;

    let mut cell2ipoint = vec![0usize; mesh.num_cells() * ldof];
    let mut points = vec![Point::zeros(); gdof];
    let mut entity = vec![Entity::new(EntityKind::Vertex, 0); gdof];
    for c in 0..mesh.num_cells() {
        for (j, cp) in cell_points(mesh, topo, &lattice, c)?.into_iter().enumerate() {
            let e = cp.entity;
            let g = match e.kind {
                EntityKind::Vertex => e.id,
                EntityKind::Edge => base[1] + e.id * per(1) + interior_offset(&cp.m)?,
                EntityKind::Face => base[2] + e.id * per(2) + interior_offset(&cp.m)?,
                EntityKind::Cell => base[3] + e.id * per(dim) + interior_offset(&cp.m)?,
            };
            cell2ipoint[c * ldof + j] = g;
            points[g] = cp.x;
            entity[g] = e;
        }
    }
    let boundary = entity.iter().map(|&e| topo.is_boundary(e)).collect();
    Ok(LagrangePointMap { degree: k, ldof, gdof, cell2ipoint, points, entity, boundary, blocks })
}

/// Continuous vector Lagrange space, component-major: global DoF
/// `d · NP + point` carries direction `x̂_d`.
pub fn build_lagrange_dofmap(mesh: &Mesh, topo: &Topology, k: usize) -> Result<DofMap> {
    let pm = build_cell2ipoint(mesh, topo, k)?;
    let dim = mesh.dim();
    let np = pm.gdof;
    let ldof = dim * pm.ldof;
    let nc = mesh.num_cells();
    let axis = |d: usize| {
        let mut p = Point::zeros();
        p[d] = 1.0;
        p
    };
    let mut cell2dof = Vec::with_capacity(nc * ldof);
    let mut cell_duals = Vec::with_capacity(nc * ldof);
    for c in 0..nc {
        for &ip in pm.cell_points(c) {
            for d in 0..dim {
                cell2dof.push(d * np + ip);
                cell_duals.push(axis(d));
            }
        }
    }
    let mut dof2vector = Vec::with_capacity(dim * np);
    let mut dof2point = Vec::with_capacity(dim * np);
    let mut boundary = Vec::with_capacity(dim * np);
    let mut blocks = Vec::new();
    for d in 0..dim {
        blocks.push(DofBlock { name: format!("component-{d}"), offset: d * np, len: np });
        dof2vector.extend(std::iter::repeat_n(axis(d), np));
        dof2point.extend_from_slice(&pm.points);
        boundary.extend_from_slice(&pm.boundary);
    }
    Ok(DofMap {
        kind: SpaceKind::Lagrange,
        dim,
        degree: k,
        ldof,
        gdof: dim * np,
        cell2dof,
        cell_duals,
        dof2vector,
        dof2point,
        boundary,
        blocks,
    })
}
