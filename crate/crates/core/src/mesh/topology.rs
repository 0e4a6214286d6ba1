use std::collections::HashMap;

use smallvec::SmallVec;

use super::Mesh;
use crate::error::{FemError, Result};
use crate::lattice::SubSimplexTables;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Vertex,
    Edge,
    Face,
    Cell,
}

/// A global mesh entity. In 2D the top-dimensional entity is a `Cell`, so
/// `Face` only occurs in 3D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entity {
    pub kind: EntityKind,
    pub id: usize,
}

impl Entity {
    pub fn new(kind: EntityKind, id: usize) -> Self {
        Entity { kind, id }
    }
}

const NONE: usize = usize::MAX;

/// Derived edges, faces and incidence arrays.
#[derive(Clone, Debug)]
pub struct Topology {
    dim: usize,
    tables: SubSimplexTables,
    cells: Vec<usize>,
    edges: Vec<[usize; 2]>,
    faces: Vec<[usize; 3]>,
    cell2edge: Vec<usize>,
    cell2face: Vec<usize>,
    /// Per facet: `(cell, local facet index)` for up to two cells.
    facet2cell: Vec<[(usize, usize); 2]>,
    boundary_vertex: Vec<bool>,
    boundary_edge: Vec<bool>,
    boundary_face: Vec<bool>,
}

impl Topology {
    /// Deduplicate edges and faces by sorted vertex tuple. Entities are numbered
    /// in lexicographic order of those tuples.
    pub fn build(mesh: &Mesh) -> Result<Topology> {
        let dim = mesh.dim();
        let tables = SubSimplexTables::new(dim)?;
        let nc = mesh.num_cells();

        let mut edges: Vec<[usize; 2]> = Vec::with_capacity(nc * tables.edges.len());
        for c in mesh.cells() {
            for e in &tables.edges {
                let (a, b) = (c[e[0]], c[e[1]]);
                edges.push(if a < b { [a, b] } else { [b, a] });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let edge_id: HashMap<[usize; 2], usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut cell2edge = Vec::with_capacity(nc * tables.edges.len());
        for c in mesh.cells() {
            for e in &tables.edges {
                let (a, b) = (c[e[0]], c[e[1]]);
                cell2edge.push(edge_id[&if a < b { [a, b] } else { [b, a] }]);
            }
        }

        let mut faces: Vec<[usize; 3]> = Vec::new();
        let mut cell2face = Vec::new();
        if dim == 3 {
            let sorted = |c: &[usize], f: &[usize]| {
                let mut t = [c[f[0]], c[f[1]], c[f[2]]];
                t.sort_unstable();
                t
            };
            for c in mesh.cells() {
                for f in &tables.facets {
                    faces.push(sorted(c, f));
                }
            }
            faces.sort_unstable();
            faces.dedup();
            let face_id: HashMap<[usize; 3], usize> =
                faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            cell2face.reserve(nc * 4);
            for c in mesh.cells() {
                for f in &tables.facets {
                    cell2face.push(face_id[&sorted(c, f)]);
                }
            }
        }

        let mut topo = Topology {
            dim,
            tables,
            cells: mesh.cell_array().to_vec(),
            edges,
            faces,
            cell2edge,
            cell2face,
            facet2cell: Vec::new(),
            boundary_vertex: vec![false; mesh.num_nodes()],
            boundary_edge: Vec::new(),
            boundary_face: Vec::new(),
        };

        let mut facet2cell = vec![[(NONE, 0), (NONE, 0)]; topo.num_facets()];
        for c in 0..nc {
            for (i, f) in topo.cell_facets(c).into_iter().enumerate() {
                let slot = &mut facet2cell[f];
                if slot[0].0 == NONE {
                    slot[0] = (c, i);
                } else if slot[1].0 == NONE {
                    slot[1] = (c, i);
                } else {
                    return Err(FemError::Structure(format!(
                        "facet {:?} is shared by more than two cells",
                        topo.facet_vertices(f)
                    )));
                }
            }
        }
        topo.facet2cell = facet2cell;

        topo.boundary_edge = vec![false; topo.edges.len()];
        topo.boundary_face = vec![false; topo.faces.len()];
        let edge_id: HashMap<[usize; 2], usize> =
            topo.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        for f in 0..topo.num_facets() {
            if !topo.is_boundary_facet(f) {
                continue;
            }
            let v = topo.facet_vertices(f);
            for &x in &v {
                topo.boundary_vertex[x] = true;
            }
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    topo.boundary_edge[edge_id[&[v[i], v[j]]]] = true;
                }
            }
            if dim == 3 {
                topo.boundary_face[f] = true;
            }
        }
        Ok(topo)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tables(&self) -> &SubSimplexTables {
        &self.tables
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len() / (self.dim + 1)
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_facets(&self) -> usize {
        if self.dim == 2 {
            self.edges.len()
        } else {
            self.faces.len()
        }
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn face(&self, f: usize) -> [usize; 3] {
        self.faces[f]
    }

    /// Global edge ids of cell `c`, in local edge order.
    pub fn cell_edges(&self, c: usize) -> &[usize] {
        let ne = self.tables.edges.len();
        &self.cell2edge[c * ne..(c + 1) * ne]
    }

    /// Global face ids of a 3D cell, face `i` opposite local vertex `i`.
    pub fn cell_faces(&self, c: usize) -> &[usize] {
        &self.cell2face[c * 4..c * 4 + 4]
    }

    /// Global facet ids, facet `i` opposite local vertex `i`.
    pub fn cell_facets(&self, c: usize) -> SmallVec<[usize; 4]> {
        if self.dim == 3 {
            SmallVec::from_slice(self.cell_faces(c))
        } else {
            let e = self.cell_edges(c);
            // local edges (0,1),(0,2),(1,2): opposite vertices 2,1,0
            SmallVec::from_slice(&[e[2], e[1], e[0]])
        }
    }

    /// Sorted global vertices of a facet.
    pub fn facet_vertices(&self, f: usize) -> SmallVec<[usize; 3]> {
        if self.dim == 2 {
            SmallVec::from_slice(&self.edges[f])
        } else {
            SmallVec::from_slice(&self.faces[f])
        }
    }

    /// Adjacent `(cell, local facet index)` pairs.
    pub fn facet_cells(&self, f: usize) -> SmallVec<[(usize, usize); 2]> {
        self.facet2cell[f].iter().copied().filter(|x| x.0 != NONE).collect()
    }

    pub fn is_boundary_facet(&self, f: usize) -> bool {
        self.facet2cell[f][1].0 == NONE
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.boundary_edge[e]
    }

    pub fn is_boundary_face(&self, f: usize) -> bool {
        self.boundary_face[f]
    }

    pub fn facet_kind(&self) -> EntityKind {
        if self.dim == 2 {
            EntityKind::Edge
        } else {
            EntityKind::Face
        }
    }

    pub fn is_boundary(&self, e: Entity) -> bool {
        match e.kind {
            EntityKind::Vertex => self.boundary_vertex[e.id],
            EntityKind::Edge => self.boundary_edge[e.id],
            EntityKind::Face => self.boundary_face[e.id],
            EntityKind::Cell => false,
        }
    }

    /// Global entity spanned by the sorted local vertices `f` of cell `c`.
    pub fn local_entity(&self, c: usize, f: &[usize]) -> Entity {
        let cell = &self.cells[c * (self.dim + 1)..(c + 1) * (self.dim + 1)];
        match f.len() {
            1 => Entity::new(EntityKind::Vertex, cell[f[0]]),
            n if n == self.dim + 1 => Entity::new(EntityKind::Cell, c),
            2 => {
                let i = self.tables.edge_index(f[0], f[1]).expect("local edge");
                Entity::new(EntityKind::Edge, self.cell_edges(c)[i])
            }
            _ => {
                let opp = (0..4).find(|i| !f.contains(i)).expect("local face");
                Entity::new(EntityKind::Face, self.cell_faces(c)[opp])
            }
        }
    }

    /// Sorted global vertices of an entity (cells keep their own order).
    pub fn entity_vertices(&self, e: Entity) -> SmallVec<[usize; 4]> {
        match e.kind {
            EntityKind::Vertex => SmallVec::from_slice(&[e.id]),
            EntityKind::Edge => SmallVec::from_slice(&self.edges[e.id]),
            EntityKind::Face => SmallVec::from_slice(&self.faces[e.id]),
            EntityKind::Cell => SmallVec::from_slice(
                &self.cells[e.id * (self.dim + 1)..(e.id + 1) * (self.dim + 1)],
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::structured_cube;

    #[test]
    fn kuhn_unit_cube_counts() {
        let m = structured_cube(1, 3).unwrap();
        let t = Topology::build(&m).unwrap();
        assert_eq!((m.num_nodes(), m.num_cells(), t.num_edges(), t.num_faces()), (8, 6, 19, 18));
        for c in 0..m.num_cells() {
            for (j, f) in t.cell_faces(c).iter().enumerate() {
                let mut want: Vec<usize> = t.tables().facets[j].iter().map(|&i| m.cell(c)[i]).collect();
                want.sort_unstable();
                assert_eq!(t.face(*f).to_vec(), want);
            }
        }
    }

    #[test]
    fn single_cells() {
        let m = structured_cube(1, 2).unwrap();
        let t = Topology::build(&m).unwrap();
        assert_eq!(t.num_edges(), 5);
        assert_eq!((0..t.num_facets()).filter(|&f| t.is_boundary_facet(f)).count(), 4);
    }

    #[test]
    fn interior_faces_shared_by_two() {
        let m = structured_cube(2, 3).unwrap();
        let t = Topology::build(&m).unwrap();
        let nb = (0..t.num_facets()).filter(|&f| t.is_boundary_facet(f)).count();
        // 6 sides × 2N² triangles
        assert_eq!(nb, 6 * 2 * 4);
        for f in 0..t.num_facets() {
            let n = t.facet_cells(f).len();
            assert_eq!(n, if t.is_boundary_facet(f) { 1 } else { 2 });
        }
    }
}
