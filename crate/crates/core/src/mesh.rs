//! Structured triangulation of an axis-aligned rectangle with full facet
//! topology.
//!
//! Every grid square is split along its lower-left to upper-right diagonal,
//! so the triangulation is deterministic across runs and platforms. Facet
//! normals are stored once, outward with respect to the "plus" owner (the
//! first cell that registered the facet); the minus owner flips the sign
//! locally.

use crate::tensor::{Mat2, Vec2};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeshError {
    #[error("subdivision counts must be at least 1, got nx={0}, ny={1}")]
    InvalidSubdivisions(usize, usize),
    #[error("rectangle bounds are degenerate: [{x0}, {x1}] x [{y0}, {y1}]")]
    DegenerateBounds { x0: f64, x1: f64, y0: f64, y1: f64 },
}

/// Axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn unit_square() -> Self {
        Self::new(0.0, 0.0, 1.0, 1.0)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn perimeter(&self) -> f64 {
        2.0 * (self.width() + self.height())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetKind {
    Interior,
    Boundary,
}

/// A cell seen from one of its edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetOwner {
    pub cell: usize,
    pub local_edge: usize,
}

#[derive(Clone, Debug)]
pub struct Facet {
    /// Vertex indices in the facet's own orientation (plus-owner edge order).
    pub vertices: [usize; 2],
    pub midpoint: Vec2,
    /// Unit normal, outward for the plus owner.
    pub normal: Vec2,
    pub length: f64,
    pub kind: FacetKind,
    pub plus: FacetOwner,
    pub minus: Option<FacetOwner>,
}

impl Facet {
    pub fn is_boundary(&self) -> bool {
        self.kind == FacetKind::Boundary
    }

    pub fn is_interior(&self) -> bool {
        self.kind == FacetKind::Interior
    }
}

/// Facet as seen from one owner cell: `sign` is +1 when the stored normal
/// is outward for that cell, -1 otherwise.
#[derive(Clone, Copy, Debug)]
pub struct CellFacet {
    pub facet: usize,
    pub sign: f64,
}

/// Affine geometry of one triangle: x(xi) = v0 + J xi with the reference
/// vertices (0,0), (1,0), (0,1) mapping to the stored vertices in order.
#[derive(Clone, Copy, Debug)]
pub struct CellGeometry {
    pub vertices: [Vec2; 3],
    pub area: f64,
    /// Longest edge length.
    pub h_k: f64,
    pub jac: Mat2,
    pub inv_jac: Mat2,
    pub det: f64,
}

impl CellGeometry {
    pub fn map(&self, xi: [f64; 2]) -> Vec2 {
        self.vertices[0] + self.jac.apply(Vec2::new(xi[0], xi[1]))
    }

    pub fn unmap(&self, x: Vec2) -> [f64; 2] {
        let d = x - self.vertices[0];
        let xi = self.inv_jac.apply(d);
        [xi.x, xi.y]
    }

    /// Push a reference gradient to a physical gradient: J^{-T} g.
    pub fn push_gradient(&self, g: [f64; 2]) -> Vec2 {
        Vec2::new(
            self.inv_jac.m[0][0] * g[0] + self.inv_jac.m[1][0] * g[1],
            self.inv_jac.m[0][1] * g[0] + self.inv_jac.m[1][1] * g[1],
        )
    }
}

/// Structured triangulation of a rectangle.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub vertices: Vec<Vec2>,
    /// Counter-clockwise vertex triples.
    pub cells: Vec<[usize; 3]>,
    pub facets: Vec<Facet>,
    /// Per cell, indexed by local edge (0: v0-v1, 1: v1-v2, 2: v2-v0).
    pub cell_facets: Vec<[CellFacet; 3]>,
    pub bounds: Rect,
    pub nx: usize,
    pub ny: usize,
}

impl Mesh {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn n_interior_facets(&self) -> usize {
        self.facets.iter().filter(|f| f.is_interior()).count()
    }

    pub fn cell_geometry(&self, cell: usize) -> CellGeometry {
        let [a, b, c] = self.cells[cell];
        let v = [self.vertices[a], self.vertices[b], self.vertices[c]];
        let e1 = v[1] - v[0];
        let e2 = v[2] - v[0];
        let det = e1.x * e2.y - e1.y * e2.x;
        let jac = Mat2::new(e1.x, e2.x, e1.y, e2.y);
        let inv_jac = Mat2::new(e2.y / det, -e2.x / det, -e1.y / det, e1.x / det);
        let h_k = (v[1] - v[0])
            .norm()
            .max((v[2] - v[1]).norm())
            .max((v[0] - v[2]).norm());
        CellGeometry {
            vertices: v,
            area: 0.5 * det.abs(),
            h_k,
            jac,
            inv_jac,
            det,
        }
    }

    /// Maximum cell diameter.
    pub fn h_max(&self) -> f64 {
        (0..self.n_cells())
            .map(|c| self.cell_geometry(c).h_k)
            .fold(0.0, f64::max)
    }

    pub fn h_min(&self) -> f64 {
        (0..self.n_cells())
            .map(|c| self.cell_geometry(c).h_k)
            .fold(f64::INFINITY, f64::min)
    }

    /// Physical point on a facet at parameter s in [0,1], measured along
    /// the facet's own orientation.
    pub fn facet_point(&self, facet: usize, s: f64) -> Vec2 {
        let f = &self.facets[facet];
        let a = self.vertices[f.vertices[0]];
        let b = self.vertices[f.vertices[1]];
        a + (b - a) * s
    }

    /// Outward unit normal of `cell` on its local edge.
    pub fn outward_normal(&self, cell: usize, local_edge: usize) -> Vec2 {
        let cf = self.cell_facets[cell][local_edge];
        self.facets[cf.facet].normal * cf.sign
    }
}

/// Build the structured triangulation: nx * ny squares, each split along
/// the lower-left to upper-right diagonal.
pub fn build_structured_mesh(nx: usize, ny: usize, bounds: Rect) -> Result<Mesh, MeshError> {
    if nx < 1 || ny < 1 {
        return Err(MeshError::InvalidSubdivisions(nx, ny));
    }
    if !(bounds.width() > 0.0) || !(bounds.height() > 0.0) {
        return Err(MeshError::DegenerateBounds {
            x0: bounds.x0,
            x1: bounds.x1,
            y0: bounds.y0,
            y1: bounds.y1,
        });
    }

    let dx = bounds.width() / nx as f64;
    let dy = bounds.height() / ny as f64;
    let vid = |i: usize, j: usize| j * (nx + 1) + i;

    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            vertices.push(Vec2::new(
                bounds.x0 + i as f64 * dx,
                bounds.y0 + j as f64 * dy,
            ));
        }
    }

    let mut cells = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let ll = vid(i, j);
            let lr = vid(i + 1, j);
            let ur = vid(i + 1, j + 1);
            let ul = vid(i, j + 1);
            cells.push([ll, lr, ur]); // lower-right triangle
            cells.push([ll, ur, ul]); // upper-left triangle
        }
    }

    // Facets keyed by their sorted vertex pair; the first visiting cell
    // becomes the plus owner and fixes the stored orientation.
    let mut facet_of_pair = std::collections::HashMap::new();
    let mut facets: Vec<Facet> = Vec::new();
    let mut cell_facets = vec![
        [CellFacet {
            facet: usize::MAX,
            sign: 0.0
        }; 3];
        cells.len()
    ];

    for (cell, verts) in cells.iter().enumerate() {
        for edge in 0..3 {
            let a = verts[edge];
            let b = verts[(edge + 1) % 3];
            let key = (a.min(b), a.max(b));
            match facet_of_pair.get(&key) {
                None => {
                    let pa = vertices[a];
                    let pb = vertices[b];
                    let t = pb - pa;
                    let length = t.norm();
                    // right-hand normal of the CCW edge direction: outward
                    let normal = Vec2::new(t.y / length, -t.x / length);
                    let id = facets.len();
                    facets.push(Facet {
                        vertices: [a, b],
                        midpoint: (pa + pb) * 0.5,
                        normal,
                        length,
                        kind: FacetKind::Boundary,
                        plus: FacetOwner {
                            cell,
                            local_edge: edge,
                        },
                        minus: None,
                    });
                    facet_of_pair.insert(key, id);
                    cell_facets[cell][edge] = CellFacet {
                        facet: id,
                        sign: 1.0,
                    };
                }
                Some(&id) => {
                    let f = &mut facets[id];
                    f.kind = FacetKind::Interior;
                    f.minus = Some(FacetOwner {
                        cell,
                        local_edge: edge,
                    });
                    cell_facets[cell][edge] = CellFacet {
                        facet: id,
                        sign: -1.0,
                    };
                }
            }
        }
    }

    Ok(Mesh {
        vertices,
        cells,
        facets,
        cell_facets,
        bounds,
        nx,
        ny,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_mesh_counts_satisfy_euler_formula() {
        let mesh = build_structured_mesh(1, 1, Rect::unit_square()).unwrap();
        assert_eq!(mesh.n_cells(), 2);
        assert_eq!(mesh.n_vertices(), 4);
        assert_eq!(mesh.n_facets(), 5);
        assert_eq!(mesh.n_interior_facets(), 1);
        let euler = mesh.n_vertices() as i64 - mesh.n_facets() as i64 + mesh.n_cells() as i64;
        assert_eq!(euler, 1);

        let mesh = build_structured_mesh(2, 2, Rect::unit_square()).unwrap();
        assert_eq!(mesh.n_cells(), 8);
        assert_eq!(mesh.n_vertices(), 9);
        assert_eq!(mesh.n_facets(), 16);
        assert_eq!(mesh.n_interior_facets(), 8);
        assert_eq!(
            mesh.n_vertices() as i64 - mesh.n_facets() as i64 + mesh.n_cells() as i64,
            1
        );
    }

    #[test]
    fn mesh_32_diameter() {
        let mesh = build_structured_mesh(32, 32, Rect::unit_square()).unwrap();
        assert_eq!(mesh.n_cells(), 2048);
        let expected = (2.0f64).sqrt() / 32.0;
        assert!((mesh.h_max() - expected).abs() < 1e-15);
        // quasi-uniformity witness: all cells congruent
        assert!((mesh.h_max() / mesh.h_min() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn areas_sum_to_rectangle_area() {
        let bounds = Rect::new(-1.0, 2.0, 3.0, 5.0);
        let mesh = build_structured_mesh(4, 3, bounds).unwrap();
        let total: f64 = (0..mesh.n_cells())
            .map(|c| mesh.cell_geometry(c).area)
            .sum();
        assert!((total - bounds.area()).abs() <= 1e-12 * bounds.area());
        for c in 0..mesh.n_cells() {
            assert!(mesh.cell_geometry(c).area > 0.0);
        }
    }

    #[test]
    fn boundary_length_is_perimeter() {
        let bounds = Rect::new(0.0, 0.0, 2.0, 1.0);
        let mesh = build_structured_mesh(5, 4, bounds).unwrap();
        let total: f64 = mesh
            .facets
            .iter()
            .filter(|f| f.is_boundary())
            .map(|f| f.length)
            .sum();
        assert!((total - bounds.perimeter()).abs() <= 1e-12 * bounds.perimeter());
    }

    #[test]
    fn facet_ownership_and_normals() {
        let mesh = build_structured_mesh(3, 2, Rect::unit_square()).unwrap();
        for f in &mesh.facets {
            assert!((f.normal.norm() - 1.0).abs() < 1e-14);
            match f.kind {
                FacetKind::Interior => assert!(f.minus.is_some()),
                FacetKind::Boundary => assert!(f.minus.is_none()),
            }
        }
        // closed polygon: outward normals integrate to zero over each cell
        for c in 0..mesh.n_cells() {
            let mut sum = Vec2::ZERO;
            for e in 0..3 {
                let cf = mesh.cell_facets[c][e];
                let f = &mesh.facets[cf.facet];
                sum += f.normal * (cf.sign * f.length);
            }
            assert!(sum.norm() < 1e-13);
        }
        // plus/minus signs are opposite on interior facets
        for (c, cfs) in mesh.cell_facets.iter().enumerate() {
            for (e, cf) in cfs.iter().enumerate() {
                let f = &mesh.facets[cf.facet];
                if f.plus.cell == c && f.plus.local_edge == e {
                    assert_eq!(cf.sign, 1.0);
                } else {
                    assert_eq!(cf.sign, -1.0);
                }
            }
        }
    }

    #[test]
    fn stored_normal_is_outward_for_plus_owner() {
        let mesh = build_structured_mesh(2, 2, Rect::unit_square()).unwrap();
        for f in &mesh.facets {
            let geom = mesh.cell_geometry(f.plus.cell);
            let centroid = (geom.vertices[0] + geom.vertices[1] + geom.vertices[2]) * (1.0 / 3.0);
            // normal points away from the plus cell's centroid
            assert!(f.normal.dot(f.midpoint - centroid) > 0.0);
        }
    }

    #[test]
    fn affine_map_hits_stored_vertices() {
        let mesh = build_structured_mesh(2, 2, Rect::unit_square()).unwrap();
        let reference = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        for c in 0..mesh.n_cells() {
            let geom = mesh.cell_geometry(c);
            assert!((geom.area - 1.0 / 8.0).abs() < 1e-15);
            for (i, r) in reference.iter().enumerate() {
                let x = geom.map(*r);
                assert!((x - geom.vertices[i]).norm() < 1e-15);
                let xi = geom.unmap(geom.vertices[i]);
                assert!((xi[0] - r[0]).abs() < 1e-14 && (xi[1] - r[1]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn reference_shaped_cell_geometry() {
        // legs of length 1: area 1/2, h_K = sqrt(2)
        let mesh = build_structured_mesh(1, 1, Rect::new(0.0, 0.0, 1.0, 1.0)).unwrap();
        let geom = mesh.cell_geometry(0);
        assert!((geom.area - 0.5).abs() < 1e-15);
        assert!((geom.h_k - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pushed_gradient_reproduces_affine_functions() {
        let mesh = build_structured_mesh(3, 2, Rect::new(0.0, 0.0, 2.0, 1.0)).unwrap();
        let basis = crate::basis::CellBasis::new(1).unwrap();
        let (a, b, c) = (0.7, -1.3, 2.4);
        let f = |p: Vec2| a + b * p.x + c * p.y;
        for cell in 0..mesh.n_cells() {
            let geom = mesh.cell_geometry(cell);
            // nodal coefficients of the affine function
            let coeffs: Vec<f64> = geom.vertices.iter().map(|v| f(*v)).collect();
            let grads = basis.eval_grad(0.3, 0.3);
            let mut g = Vec2::ZERO;
            for m in 0..3 {
                g += geom.push_gradient(grads[m]) * coeffs[m];
            }
            assert!((g.x - b).abs() < 1e-13 && (g.y - c).abs() < 1e-13);
        }
    }

    #[test]
    fn invalid_arguments_rejected() {
        assert!(matches!(
            build_structured_mesh(0, 1, Rect::unit_square()),
            Err(MeshError::InvalidSubdivisions(0, 1))
        ));
        assert!(build_structured_mesh(1, 1, Rect::new(0.0, 0.0, 0.0, 1.0)).is_err());
    }
}
