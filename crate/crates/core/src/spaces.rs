//! Global degree-of-freedom layout for the six discrete fields and
//! initial-state construction.
//!
//! The unknown vector stacks the blocks (u, uhat, p, phat, C, Chat)
//! followed by one scalar slot for the pressure-mean Lagrange multiplier.
//! Velocity traces on boundary facets are constrained to zero and never
//! enter the solved unknowns: uhat carries degrees of freedom on interior
//! facets only. The conformation tensor stores the symmetric upper
//! triangle (xx, xy, yy) both on cells and facets.

use crate::basis::{triangle_dim, BasisError, CellBasis};
use crate::mesh::Mesh;
use crate::quadrature::triangle_rule;
use crate::tensor::{Mat2, SymTensor, Vec2};

/// Index map for the coupled system of one time step.
#[derive(Clone, Debug)]
pub struct DofLayout {
    pub degree: usize,
    /// dim P_k on a cell.
    pub cell_dim: usize,
    /// dim P_{k-1} on a cell (pressure).
    pub p_dim: usize,
    /// dim P_k on a facet.
    pub facet_dim: usize,
    pub n_cells: usize,
    pub n_facets: usize,
    pub n_interior_facets: usize,
    pub u_offset: usize,
    pub uhat_offset: usize,
    pub p_offset: usize,
    pub phat_offset: usize,
    pub c_offset: usize,
    pub chat_offset: usize,
    /// Total system dimension including the multiplier slot.
    pub total: usize,
    /// facet id -> contiguous slot among interior facets (None on boundary).
    interior_slot: Vec<Option<usize>>,
}

impl DofLayout {
    pub fn u_len(&self) -> usize {
        2 * self.n_cells * self.cell_dim
    }

    pub fn uhat_len(&self) -> usize {
        2 * self.n_interior_facets * self.facet_dim
    }

    pub fn p_len(&self) -> usize {
        self.n_cells * self.p_dim
    }

    pub fn phat_len(&self) -> usize {
        self.n_facets * self.facet_dim
    }

    pub fn c_len(&self) -> usize {
        3 * self.n_cells * self.cell_dim
    }

    pub fn chat_len(&self) -> usize {
        3 * self.n_facets * self.facet_dim
    }

    pub fn u_dof(&self, cell: usize, comp: usize, node: usize) -> usize {
        self.u_offset + (cell * 2 + comp) * self.cell_dim + node
    }

    /// None on boundary facets: those traces are eliminated by the
    /// homogeneous Dirichlet condition.
    pub fn uhat_dof(&self, facet: usize, comp: usize, node: usize) -> Option<usize> {
        self.interior_slot[facet]
            .map(|slot| self.uhat_offset + (slot * 2 + comp) * self.facet_dim + node)
    }

    pub fn p_dof(&self, cell: usize, node: usize) -> usize {
        self.p_offset + cell * self.p_dim + node
    }

    pub fn phat_dof(&self, facet: usize, node: usize) -> usize {
        self.phat_offset + facet * self.facet_dim + node
    }

    pub fn c_dof(&self, cell: usize, comp: usize, node: usize) -> usize {
        self.c_offset + (cell * 3 + comp) * self.cell_dim + node
    }

    pub fn chat_dof(&self, facet: usize, comp: usize, node: usize) -> usize {
        self.chat_offset + (facet * 3 + comp) * self.facet_dim + node
    }

    pub fn multiplier_dof(&self) -> usize {
        self.total - 1
    }

    pub fn is_interior_facet(&self, facet: usize) -> bool {
        self.interior_slot[facet].is_some()
    }

    /// Velocity value from tabulated cell basis values `phi`.
    pub fn velocity_at(&self, coeffs: &[f64], cell: usize, phi: &[f64]) -> Vec2 {
        let mut u = Vec2::ZERO;
        for m in 0..self.cell_dim {
            u.x += coeffs[self.u_dof(cell, 0, m)] * phi[m];
            u.y += coeffs[self.u_dof(cell, 1, m)] * phi[m];
        }
        u
    }

    /// Velocity gradient from physical basis gradients.
    pub fn velocity_grad_at(&self, coeffs: &[f64], cell: usize, grads: &[Vec2]) -> Mat2 {
        let mut g = Mat2::ZERO;
        for m in 0..self.cell_dim {
            let cx = coeffs[self.u_dof(cell, 0, m)];
            let cy = coeffs[self.u_dof(cell, 1, m)];
            g.m[0][0] += cx * grads[m].x;
            g.m[0][1] += cx * grads[m].y;
            g.m[1][0] += cy * grads[m].x;
            g.m[1][1] += cy * grads[m].y;
        }
        g
    }

    pub fn conformation_at(&self, coeffs: &[f64], cell: usize, phi: &[f64]) -> SymTensor {
        let mut c = SymTensor::ZERO;
        for m in 0..self.cell_dim {
            c.xx += coeffs[self.c_dof(cell, 0, m)] * phi[m];
            c.xy += coeffs[self.c_dof(cell, 1, m)] * phi[m];
            c.yy += coeffs[self.c_dof(cell, 2, m)] * phi[m];
        }
        c
    }

    /// Componentwise spatial gradients (d/dx, d/dy) of the conformation.
    pub fn conformation_grad_at(
        &self,
        coeffs: &[f64],
        cell: usize,
        grads: &[Vec2],
    ) -> [SymTensor; 2] {
        let mut gx = SymTensor::ZERO;
        let mut gy = SymTensor::ZERO;
        for m in 0..self.cell_dim {
            let cxx = coeffs[self.c_dof(cell, 0, m)];
            let cxy = coeffs[self.c_dof(cell, 1, m)];
            let cyy = coeffs[self.c_dof(cell, 2, m)];
            gx.xx += cxx * grads[m].x;
            gx.xy += cxy * grads[m].x;
            gx.yy += cyy * grads[m].x;
            gy.xx += cxx * grads[m].y;
            gy.xy += cxy * grads[m].y;
            gy.yy += cyy * grads[m].y;
        }
        [gx, gy]
    }

    pub fn pressure_at(&self, coeffs: &[f64], cell: usize, phi_p: &[f64]) -> f64 {
        (0..self.p_dim)
            .map(|m| coeffs[self.p_dof(cell, m)] * phi_p[m])
            .sum()
    }

    /// Velocity trace value; zero on boundary facets by the constraint.
    pub fn uhat_at(&self, coeffs: &[f64], facet: usize, psi: &[f64]) -> Vec2 {
        let mut u = Vec2::ZERO;
        if self.interior_slot[facet].is_some() {
            for m in 0..self.facet_dim {
                u.x += coeffs[self.uhat_dof(facet, 0, m).unwrap()] * psi[m];
                u.y += coeffs[self.uhat_dof(facet, 1, m).unwrap()] * psi[m];
            }
        }
        u
    }

    pub fn chat_at(&self, coeffs: &[f64], facet: usize, psi: &[f64]) -> SymTensor {
        let mut c = SymTensor::ZERO;
        for m in 0..self.facet_dim {
            c.xx += coeffs[self.chat_dof(facet, 0, m)] * psi[m];
            c.xy += coeffs[self.chat_dof(facet, 1, m)] * psi[m];
            c.yy += coeffs[self.chat_dof(facet, 2, m)] * psi[m];
        }
        c
    }

    pub fn phat_at(&self, coeffs: &[f64], facet: usize, psi: &[f64]) -> f64 {
        (0..self.facet_dim)
            .map(|m| coeffs[self.phat_dof(facet, m)] * psi[m])
            .sum()
    }
}

/// Build the index map for polynomial degree `k >= 1`.
pub fn build_layout(mesh: &Mesh, degree: usize) -> Result<DofLayout, BasisError> {
    if degree == 0 || degree > 2 {
        return Err(BasisError::UnsupportedDegree(degree));
    }
    let n_cells = mesh.n_cells();
    let n_facets = mesh.n_facets();
    let mut interior_slot = vec![None; n_facets];
    let mut next = 0;
    for (i, f) in mesh.facets.iter().enumerate() {
        if f.is_interior() {
            interior_slot[i] = Some(next);
            next += 1;
        }
    }
    let n_interior_facets = next;

    let cell_dim = triangle_dim(degree);
    let p_dim = triangle_dim(degree - 1);
    let facet_dim = degree + 1;

    let u_offset = 0;
    let uhat_offset = u_offset + 2 * n_cells * cell_dim;
    let p_offset = uhat_offset + 2 * n_interior_facets * facet_dim;
    let phat_offset = p_offset + n_cells * p_dim;
    let c_offset = phat_offset + n_facets * facet_dim;
    let chat_offset = c_offset + 3 * n_cells * cell_dim;
    let total = chat_offset + 3 * n_facets * facet_dim + 1;

    Ok(DofLayout {
        degree,
        cell_dim,
        p_dim,
        facet_dim,
        n_cells,
        n_facets,
        n_interior_facets,
        u_offset,
        uhat_offset,
        p_offset,
        phat_offset,
        c_offset,
        chat_offset,
        total,
        interior_slot,
    })
}

/// Coefficients of all six fields at one time level.
#[derive(Clone, Debug)]
pub struct State {
    pub time: f64,
    pub coeffs: Vec<f64>,
}

impl State {
    pub fn zeros(layout: &DofLayout, time: f64) -> Self {
        Self {
            time,
            coeffs: vec![0.0; layout.total],
        }
    }
}

/// Cellwise L2 projection of the initial velocity and conformation into the
/// broken spaces; trace, pressure and multiplier blocks start at zero.
pub fn project_initial(
    mesh: &Mesh,
    layout: &DofLayout,
    initial_velocity: impl Fn(Vec2) -> Vec2,
    initial_conformation: impl Fn(Vec2) -> SymTensor,
) -> State {
    let basis = CellBasis::new(layout.degree).expect("layout degree is validated at build");
    let rule = triangle_rule(2 * layout.degree + 6).expect("projection rule within table");
    let table = basis.tabulate(&rule.points);
    let dim = layout.cell_dim;

    let mut state = State::zeros(layout, 0.0);
    let mut mass = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = nalgebra::DMatrix::<f64>::zeros(dim, 5);

    for cell in 0..mesh.n_cells() {
        let geom = mesh.cell_geometry(cell);
        mass.fill(0.0);
        rhs.fill(0.0);
        for (q, w) in rule.weights.iter().enumerate() {
            let scale = w * geom.det.abs();
            let phi = &table.values[q];
            let x = geom.map(rule.points[q]);
            let u0 = initial_velocity(x);
            let c0 = initial_conformation(x);
            let data = [u0.x, u0.y, c0.xx, c0.xy, c0.yy];
            for i in 0..dim {
                for j in 0..dim {
                    mass[(i, j)] += scale * phi[i] * phi[j];
                }
                for (k, d) in data.iter().enumerate() {
                    rhs[(i, k)] += scale * phi[i] * d;
                }
            }
        }
        let lu = mass.clone().lu();
        let sol = lu
            .solve(&rhs)
            .expect("local mass matrix is nonsingular for a valid basis");
        for m in 0..dim {
            state.coeffs[layout.u_dof(cell, 0, m)] = sol[(m, 0)];
            state.coeffs[layout.u_dof(cell, 1, m)] = sol[(m, 1)];
            state.coeffs[layout.c_dof(cell, 0, m)] = sol[(m, 2)];
            state.coeffs[layout.c_dof(cell, 1, m)] = sol[(m, 3)];
            state.coeffs[layout.c_dof(cell, 2, m)] = sol[(m, 4)];
        }
    }
    state
}
