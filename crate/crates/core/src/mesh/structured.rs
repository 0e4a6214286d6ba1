use super::{Mesh, Point};
use crate::error::{FemError, Result};

const AXIS_PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Unit square (`2N²` triangles) or unit cube (`6N³` Kuhn tetrahedra), all
/// cells positively oriented.
pub fn structured_cube(n: usize, dim: usize) -> Result<Mesh> {
    if n == 0 {
        return Err(FemError::InvalidArgument("structured mesh needs N >= 1".into()));
    }
    let h = 1.0 / n as f64;
    let s = n + 1;
    match dim {
        2 => {
            let mut nodes = Vec::with_capacity(s * s);
            for j in 0..s {
                for i in 0..s {
                    nodes.push(Point::new(i as f64 * h, j as f64 * h, 0.0));
                }
            }
            let id = |i: usize, j: usize| i + s * j;
            let mut cells = Vec::with_capacity(6 * n * n);
            for j in 0..n {
                for i in 0..n {
                    cells.extend([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
                    cells.extend([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
                }
            }
            Mesh::new(2, nodes, cells)
        }
        3 => {
            let mut nodes = Vec::with_capacity(s * s * s);
            for k in 0..s {
                for j in 0..s {
                    for i in 0..s {
                        nodes.push(Point::new(i as f64 * h, j as f64 * h, k as f64 * h));
                    }
                }
            }
            let id = |p: [usize; 3]| p[0] + s * (p[1] + s * p[2]);
            let mut cells = Vec::with_capacity(24 * n * n * n);
            for k in 0..n {
                for j in 0..n {
                    for i in 0..n {
                        for perm in AXIS_PERMUTATIONS {
                            let mut p = [i, j, k];
                            let mut tet = [id(p), 0, 0, 0];
                            for (step, &axis) in perm.iter().enumerate() {
                                p[axis] += 1;
                                tet[step + 1] = id(p);
                            }
                            let x0 = nodes[tet[0]];
                            let det = (nodes[tet[1]] - x0)
                                .dot(&(nodes[tet[2]] - x0).cross(&(nodes[tet[3]] - x0)));
                            if det < 0.0 {
                                tet.swap(2, 3);
                            }
                            cells.extend(tet);
                        }
                    }
                }
            }
            Mesh::new(3, nodes, cells)
        }
        d => Err(FemError::UnsupportedDimension(d)),
    }
}
