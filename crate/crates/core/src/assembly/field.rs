use super::{map_point, par_cells, tab_at, DgSpace};
use crate::basis::{eval_lagrange, grad_lagrange};
use crate::dofs::DofMap;
use crate::error::{invalid, Result};
use crate::lattice::SimplicialLattice;
use crate::mesh::{cell_geometry, Mesh, Point};
use crate::quadrature::QuadratureRule;

/// Coefficients over a [`DofMap`], evaluated cell by cell.
#[derive(Clone, Debug)]
pub struct DiscreteField<'a> {
    space: &'a DofMap,
    coeffs: &'a [f64],
    lattice: SimplicialLattice,
}

impl<'a> DiscreteField<'a> {
    pub fn new(space: &'a DofMap, coeffs: &'a [f64]) -> Result<Self> {
        if coeffs.len() != space.gdof() {
            return invalid(format!("{} coefficients for {} DoFs", coeffs.len(), space.gdof()));
        }
        let lattice = SimplicialLattice::enumerate(space.dim(), space.degree());
        Ok(DiscreteField { space, coeffs, lattice })
    }

    /// `Σ_j u_{cell2dof[c,j]} φ_{p(j)}(λ) ê_j`
    pub fn value(&self, c: usize, lambda: &[f64]) -> Point {
        let s = self.space;
        let k = s.degree();
        let dofs = s.cell_dofs(c);
        let duals = s.cell_duals(c);
        let mut v = Point::zeros();
        for (p, alpha) in self.lattice.iter().enumerate() {
            let phi = eval_lagrange(alpha, k, lambda);
            for d in 0..s.dim() {
                let j = p * s.dim() + d;
                v += duals[j] * (phi * self.coeffs[dofs[j]]);
            }
        }
        v
    }

    fn derivative(&self, mesh: &Mesh, c: usize, lambda: &[f64], op: impl Fn(&Point, &Point) -> Point) -> Result<Point> {
        let s = self.space;
        let g = cell_geometry(mesh, c)?;
        let dofs = s.cell_dofs(c);
        let duals = s.cell_duals(c);
        let mut v = Point::zeros();
        for (p, alpha) in self.lattice.iter().enumerate() {
            let grad = grad_lagrange(alpha, s.degree(), lambda, &g.grad_lambda);
            for d in 0..s.dim() {
                let j = p * s.dim() + d;
                v += op(&grad, &duals[j]) * self.coeffs[dofs[j]];
            }
        }
        Ok(v)
    }

    /// Curl; in 2D the scalar rotation sits in the `z` component.
    pub fn curl(&self, mesh: &Mesh, c: usize, lambda: &[f64]) -> Result<Point> {
        self.derivative(mesh, c, lambda, |g, e| g.cross(e))
    }

    pub fn div(&self, mesh: &Mesh, c: usize, lambda: &[f64]) -> Result<f64> {
        Ok(self.derivative(mesh, c, lambda, |g, e| Point::new(g.dot(e), 0.0, 0.0))?.x)
    }
}

enum Which {
    Value,
    Curl,
    Div,
}

fn vector_error(
    mesh: &Mesh,
    space: &DofMap,
    coeffs: &[f64],
    which: Which,
    exact: impl Fn(&Point) -> Point + Sync,
    quad: &QuadratureRule,
) -> Result<f64> {
    if coeffs.len() != space.gdof() {
        return invalid("coefficient vector length differs from gdof");
    }
    let dim = space.dim();
    let tab = tab_at(space.degree(), dim, quad);
    let parts = par_cells(mesh.num_cells(), |c, out| {
        let g = cell_geometry(mesh, c)?;
        let dofs = space.cell_dofs(c);
        let duals = space.cell_duals(c);
        let mut e2 = 0.0;
        for (q, (l, w)) in quad.iter().enumerate() {
            let mut uh = Point::zeros();
            for a in 0..space.ldof() {
                let u = coeffs[dofs[a]];
                if u == 0.0 {
                    continue;
                }
                let p = a / dim;
                uh += match which {
                    Which::Value => duals[a] * tab.value(p, q),
                    Which::Curl => tab.gradient(p, q, &g.grad_lambda).cross(&duals[a]),
                    Which::Div => Point::new(tab.gradient(p, q, &g.grad_lambda).dot(&duals[a]), 0.0, 0.0),
                } * u;
            }
            e2 += w * (uh - exact(&map_point(mesh, c, l))).norm_squared();
        }
        out.push(e2 * g.measure);
        Ok(())
    })?;
    Ok(parts.iter().sum::<f64>().sqrt())
}

/// `‖u − u_h‖_0`
pub fn l2_error(
    mesh: &Mesh,
    space: &DofMap,
    coeffs: &[f64],
    exact: impl Fn(&Point) -> Point + Sync,
    quad: &QuadratureRule,
) -> Result<f64> {
    vector_error(mesh, space, coeffs, Which::Value, exact, quad)
}

/// `‖curl u − curl u_h‖_0`; in 2D pass the rotation as the `z` component.
pub fn curl_error(
    mesh: &Mesh,
    space: &DofMap,
    coeffs: &[f64],
    exact_curl: impl Fn(&Point) -> Point + Sync,
    quad: &QuadratureRule,
) -> Result<f64> {
    vector_error(mesh, space, coeffs, Which::Curl, exact_curl, quad)
}

/// `‖div u − div u_h‖_0`
pub fn div_error(
    mesh: &Mesh,
    space: &DofMap,
    coeffs: &[f64],
    exact_div: impl Fn(&Point) -> f64 + Sync,
    quad: &QuadratureRule,
) -> Result<f64> {
    vector_error(mesh, space, coeffs, Which::Div, |x| Point::new(exact_div(x), 0.0, 0.0), quad)
}

/// `‖p − p_h‖_0` for a discontinuous scalar field.
pub fn scalar_l2_error(
    mesh: &Mesh,
    space: &DgSpace,
    coeffs: &[f64],
    exact: impl Fn(&Point) -> f64 + Sync,
    quad: &QuadratureRule,
) -> Result<f64> {
    if coeffs.len() != space.gdof() {
        return invalid("coefficient vector length differs from gdof");
    }
    let tab = tab_at(space.degree, space.dim, quad);
    let pl = space.ldof();
    let parts = par_cells(mesh.num_cells(), |c, out| {
        let g = cell_geometry(mesh, c)?;
        let mut e2 = 0.0;
        for (q, (l, w)) in quad.iter().enumerate() {
            let ph: f64 = (0..pl).map(|r| coeffs[c * pl + r] * tab.value(r, q)).sum();
            e2 += w * (ph - exact(&map_point(mesh, c, l))).powi(2);
        }
        out.push(e2 * g.measure);
        Ok(())
    })?;
    Ok(parts.iter().sum::<f64>().sqrt())
}
