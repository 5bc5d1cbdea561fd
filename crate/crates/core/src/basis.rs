//! Nodal Lagrange bases on the reference triangle and the reference
//! segment [0,1].
//!
//! Cell bases are defined on the triangle with vertices (0,0), (1,0), (0,1).
//! The P2 nodes are the vertices followed by the edge midpoints opposite
//! the usual numbering: (0.5,0), (0.5,0.5), (0,0.5). Facet bases place
//! their nodes at the endpoints (and the midpoint for degree 2).

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasisError {
    #[error("polynomial degree {0} is not supported (cell bases cover degrees 0-2)")]
    UnsupportedDegree(usize),
}

/// Number of basis functions of P_k on a triangle.
pub fn triangle_dim(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// Scalar Lagrange basis of degree 0, 1 or 2 on the reference triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellBasis {
    pub degree: usize,
    pub dim: usize,
}

/// Basis values and reference gradients tabulated at a set of points.
#[derive(Clone, Debug)]
pub struct CellTable {
    /// values[q][m] = phi_m at point q
    pub values: Vec<Vec<f64>>,
    /// grads[q][m] = reference gradient of phi_m at point q
    pub grads: Vec<Vec<[f64; 2]>>,
}

impl CellBasis {
    pub fn new(degree: usize) -> Result<Self, BasisError> {
        if degree > 2 {
            return Err(BasisError::UnsupportedDegree(degree));
        }
        Ok(Self {
            degree,
            dim: triangle_dim(degree),
        })
    }

    /// Values of all basis functions at one reference point.
    pub fn eval(&self, x: f64, y: f64) -> Vec<f64> {
        let l0 = 1.0 - x - y;
        match self.degree {
            0 => vec![1.0],
            1 => vec![l0, x, y],
            2 => vec![
                l0 * (2.0 * l0 - 1.0),
                x * (2.0 * x - 1.0),
                y * (2.0 * y - 1.0),
                4.0 * l0 * x,
                4.0 * x * y,
                4.0 * y * l0,
            ],
            _ => unreachable!(),
        }
    }

    /// Reference gradients of all basis functions at one point.
    pub fn eval_grad(&self, x: f64, y: f64) -> Vec<[f64; 2]> {
        let l0 = 1.0 - x - y;
        match self.degree {
            0 => vec![[0.0, 0.0]],
            1 => vec![[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]],
            2 => vec![
                [1.0 - 4.0 * l0, 1.0 - 4.0 * l0],
                [4.0 * x - 1.0, 0.0],
                [0.0, 4.0 * y - 1.0],
                [4.0 * (l0 - x), -4.0 * x],
                [4.0 * y, 4.0 * x],
                [-4.0 * y, 4.0 * (l0 - y)],
            ],
            _ => unreachable!(),
        }
    }

    /// Tabulate values and gradients at a list of reference points.
    pub fn tabulate(&self, points: &[[f64; 2]]) -> CellTable {
        CellTable {
            values: points.iter().map(|p| self.eval(p[0], p[1])).collect(),
            grads: points.iter().map(|p| self.eval_grad(p[0], p[1])).collect(),
        }
    }

    /// Interpolation nodes in basis order.
    pub fn nodes(&self) -> Vec<[f64; 2]> {
        match self.degree {
            0 => vec![[1.0 / 3.0, 1.0 / 3.0]],
            1 => vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            2 => vec![
                [0.0, 0.0],
                [1.0, 0.0],
                [0.0, 1.0],
                [0.5, 0.0],
                [0.5, 0.5],
                [0.0, 0.5],
            ],
            _ => unreachable!(),
        }
    }
}

/// Scalar Lagrange basis of degree 1 or 2 on the reference segment [0,1].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetBasis {
    pub degree: usize,
    pub dim: usize,
}

impl FacetBasis {
    pub fn new(degree: usize) -> Result<Self, BasisError> {
        if degree == 0 || degree > 2 {
            return Err(BasisError::UnsupportedDegree(degree));
        }
        Ok(Self {
            degree,
            dim: degree + 1,
        })
    }

    pub fn eval(&self, s: f64) -> Vec<f64> {
        match self.degree {
            1 => vec![1.0 - s, s],
            2 => vec![
                (1.0 - s) * (1.0 - 2.0 * s),
                s * (2.0 * s - 1.0),
                4.0 * s * (1.0 - s),
            ],
            _ => unreachable!(),
        }
    }

    /// values[q][m] = phi_m at point q
    pub fn tabulate(&self, points: &[f64]) -> Vec<Vec<f64>> {
        points.iter().map(|&s| self.eval(s)).collect()
    }

    pub fn nodes(&self) -> Vec<f64> {
        match self.degree {
            1 => vec![0.0, 1.0],
            2 => vec![0.0, 1.0, 0.5],
            _ => unreachable!(),
        }
    }
}
