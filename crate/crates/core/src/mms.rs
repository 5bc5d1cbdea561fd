//! Closed-form exact solutions with synthesized forcing for verification
//! runs, plus the rotating-force robustness problem.
//!
//! The convergence-study fields derive from a stream function, so the exact
//! velocity is pointwise divergence free, vanishes on the boundary of the
//! unit square, and the conformation tensor has exact homogeneous Neumann
//! data there. The forcing terms are the residuals of the model equations
//! evaluated with hand-coded analytic derivatives; a finite-difference
//! oracle in the test suite guards the transcription.

use crate::tensor::{Mat2, SymTensor, Vec2};
use std::f64::consts::PI;

/// External body forces for the momentum and conformation equations.
pub trait Forcing: Sync {
    fn momentum(&self, x: Vec2, t: f64) -> Vec2;

    /// Extra conformation forcing; the physical model has none.
    fn conformation(&self, _x: Vec2, _t: f64) -> SymTensor {
        SymTensor::ZERO
    }
}

/// No external forces.
pub struct ZeroForcing;

impl Forcing for ZeroForcing {
    fn momentum(&self, _x: Vec2, _t: f64) -> Vec2 {
        Vec2::ZERO
    }
}

/// sin^2(pi s) together with its first three derivatives.
#[derive(Clone, Copy)]
struct Bump {
    v: f64,
    d1: f64,
    d2: f64,
    d3: f64,
}

fn bump(s: f64) -> Bump {
    Bump {
        v: (PI * s).sin().powi(2),
        d1: PI * (2.0 * PI * s).sin(),
        d2: 2.0 * PI * PI * (2.0 * PI * s).cos(),
        d3: -4.0 * PI * PI * PI * (2.0 * PI * s).sin(),
    }
}

/// Stream function phi = sqrt(3)/(2 pi) sin^2(pi x) sin^2(pi y)
/// sin(pi (x + y + t)) and its partial derivatives.
#[derive(Clone, Copy, Default)]
struct Phi {
    x: f64,
    y: f64,
    t: f64,
    xx: f64,
    xy: f64,
    yy: f64,
    xt: f64,
    yt: f64,
    xxx: f64,
    xxy: f64,
    xyy: f64,
    yyy: f64,
    v: f64,
}

const PHI_AMPLITUDE: f64 = 0.866025403784438646763723170753; // sqrt(3)/2
const C12_FACTOR: f64 = 1.813799364234217850594078258659; // pi/sqrt(3)

fn phi_partials(p: Vec2, t: f64) -> Phi {
    let a = PHI_AMPLITUDE / PI; // sqrt(3)/(2 pi)
    let ax = bump(p.x);
    let ay = bump(p.y);
    let w = PI * (p.x + p.y + t);
    let s = w.sin();
    let c = w.cos();
    let (p1, p2, p3) = (PI, PI * PI, PI * PI * PI);
    Phi {
        v: a * ax.v * ay.v * s,
        x: a * (ax.d1 * ay.v * s + ax.v * ay.v * p1 * c),
        y: a * (ax.v * ay.d1 * s + ax.v * ay.v * p1 * c),
        t: a * ax.v * ay.v * p1 * c,
        xx: a * (ax.d2 * ay.v * s + 2.0 * ax.d1 * ay.v * p1 * c - ax.v * ay.v * p2 * s),
        yy: a * (ax.v * ay.d2 * s + 2.0 * ax.v * ay.d1 * p1 * c - ax.v * ay.v * p2 * s),
        xy: a * (ax.d1 * ay.d1 * s + (ax.d1 * ay.v + ax.v * ay.d1) * p1 * c - ax.v * ay.v * p2 * s),
        xt: a * (ax.d1 * ay.v * p1 * c - ax.v * ay.v * p2 * s),
        yt: a * (ax.v * ay.d1 * p1 * c - ax.v * ay.v * p2 * s),
        xxx: a
            * (ax.d3 * ay.v * s + 3.0 * ax.d2 * ay.v * p1 * c
                - 3.0 * ax.d1 * ay.v * p2 * s
                - ax.v * ay.v * p3 * c),
        yyy: a
            * (ax.v * ay.d3 * s + 3.0 * ax.v * ay.d2 * p1 * c
                - 3.0 * ax.v * ay.d1 * p2 * s
                - ax.v * ay.v * p3 * c),
        xxy: a
            * (ax.d2 * ay.d1 * s + ax.d2 * ay.v * p1 * c + 2.0 * ax.d1 * ay.d1 * p1 * c
                - 2.0 * ax.d1 * ay.v * p2 * s
                - ax.v * ay.d1 * p2 * s
                - ax.v * ay.v * p3 * c),
        xyy: a
            * (ax.d1 * ay.d2 * s + ax.v * ay.d2 * p1 * c + 2.0 * ax.d1 * ay.d1 * p1 * c
                - 2.0 * ax.v * ay.d1 * p2 * s
                - ax.d1 * ay.v * p2 * s
                - ax.v * ay.v * p3 * c),
    }
}

/// Manufactured verification case on the unit square.
#[derive(Clone, Copy, Debug)]
pub struct MmsCase {
    pub nu: f64,
    pub epsilon: f64,
}

impl MmsCase {
    pub fn new(nu: f64, epsilon: f64) -> Self {
        Self { nu, epsilon }
    }

    pub fn velocity(&self, x: Vec2, t: f64) -> Vec2 {
        let phi = phi_partials(x, t);
        Vec2::new(-phi.y, phi.x)
    }

    pub fn velocity_time_derivative(&self, x: Vec2, t: f64) -> Vec2 {
        let phi = phi_partials(x, t);
        Vec2::new(-phi.yt, phi.xt)
    }

    pub fn velocity_gradient(&self, x: Vec2, t: f64) -> Mat2 {
        let phi = phi_partials(x, t);
        Mat2::new(-phi.xy, -phi.yy, phi.xx, phi.xy)
    }

    pub fn velocity_laplacian(&self, x: Vec2, t: f64) -> Vec2 {
        let phi = phi_partials(x, t);
        Vec2::new(-(phi.xxy + phi.yyy), phi.xxx + phi.xyy)
    }

    pub fn pressure(&self, x: Vec2, t: f64) -> f64 {
        (PI * (x.x + 2.0 * x.y + t)).sin()
    }

    pub fn pressure_gradient(&self, x: Vec2, t: f64) -> Vec2 {
        let c = (PI * (x.x + 2.0 * x.y + t)).cos();
        Vec2::new(PI * c, 2.0 * PI * c)
    }

    pub fn conformation(&self, x: Vec2, t: f64) -> SymTensor {
        let ax = bump(x.x);
        let ay = bump(x.y);
        let phi = phi_partials(x, t);
        SymTensor::new(
            0.5 * ax.v * ay.v * (PI * (x.x + t)).sin() + 1.0,
            C12_FACTOR * phi.v,
            0.5 * ax.v * ay.v * (PI * (x.y + t)).sin() + 1.0,
        )
    }

    pub fn conformation_time_derivative(&self, x: Vec2, t: f64) -> SymTensor {
        let ax = bump(x.x);
        let ay = bump(x.y);
        let phi = phi_partials(x, t);
        SymTensor::new(
            0.5 * ax.v * ay.v * PI * (PI * (x.x + t)).cos(),
            C12_FACTOR * phi.t,
            0.5 * ax.v * ay.v * PI * (PI * (x.y + t)).cos(),
        )
    }

    /// Componentwise spatial gradients (d/dx, d/dy).
    pub fn conformation_gradient(&self, x: Vec2, t: f64) -> [SymTensor; 2] {
        let ax = bump(x.x);
        let ay = bump(x.y);
        let phi = phi_partials(x, t);
        let (p, q) = ((PI * (x.x + t)).sin(), (PI * (x.x + t)).cos());
        let (r, w) = ((PI * (x.y + t)).sin(), (PI * (x.y + t)).cos());
        let gx = SymTensor::new(
            0.5 * (ax.d1 * ay.v * p + ax.v * ay.v * PI * q),
            C12_FACTOR * phi.x,
            0.5 * ax.d1 * ay.v * r,
        );
        let gy = SymTensor::new(
            0.5 * ax.v * ay.d1 * p,
            C12_FACTOR * phi.y,
            0.5 * (ax.v * ay.d1 * r + ax.v * ay.v * PI * w),
        );
        [gx, gy]
    }

    pub fn conformation_laplacian(&self, x: Vec2, t: f64) -> SymTensor {
        let ax = bump(x.x);
        let ay = bump(x.y);
        let phi = phi_partials(x, t);
        let (p, q) = ((PI * (x.x + t)).sin(), (PI * (x.x + t)).cos());
        let (r, w) = ((PI * (x.y + t)).sin(), (PI * (x.y + t)).cos());
        let c11 = 0.5 * (ax.d2 * ay.v * p + 2.0 * ax.d1 * ay.v * PI * q - ax.v * ay.v * PI * PI * p)
            + 0.5 * ax.v * ay.d2 * p;
        let c22 = 0.5 * ax.d2 * ay.v * r
            + 0.5 * (ax.v * ay.d2 * r + 2.0 * ax.v * ay.d1 * PI * w - ax.v * ay.v * PI * PI * r);
        SymTensor::new(c11, C12_FACTOR * (phi.xx + phi.yy), c22)
    }

    /// Momentum residual of the exact fields: the force that makes them
    /// solve the forced momentum equation.
    pub fn forcing_momentum(&self, x: Vec2, t: f64) -> Vec2 {
        let u = self.velocity(x, t);
        let ut = self.velocity_time_derivative(x, t);
        let grad_u = self.velocity_gradient(x, t);
        let lap_u = self.velocity_laplacian(x, t);
        let grad_p = self.pressure_gradient(x, t);
        let c = self.conformation(x, t);
        let [cx, cy] = self.conformation_gradient(x, t);
        let tr = c.trace();
        let tr_x = cx.trace();
        let tr_y = cy.trace();
        // div[(tr C) C] row by row
        let div_stress = Vec2::new(
            tr_x * c.xx + tr * cx.xx + tr_y * c.xy + tr * cy.xy,
            tr_x * c.xy + tr * cx.xy + tr_y * c.yy + tr * cy.yy,
        );
        ut + grad_u.apply(u) - lap_u * self.nu + grad_p - div_stress
    }

    /// Conformation residual of the exact fields.
    pub fn forcing_conformation(&self, x: Vec2, t: f64) -> SymTensor {
        let u = self.velocity(x, t);
        let grad_u = self.velocity_gradient(x, t);
        let c = self.conformation(x, t);
        let ct = self.conformation_time_derivative(x, t);
        let [cx, cy] = self.conformation_gradient(x, t);
        let lap_c = self.conformation_laplacian(x, t);
        let advect = cx * u.x + cy * u.y;
        let stretch = c.stretch_by(grad_u);
        let tr = c.trace();
        ct + advect - lap_c * self.epsilon - stretch - SymTensor::scaled_identity(tr)
            + c * (tr * tr)
    }
}

impl Forcing for MmsCase {
    fn momentum(&self, x: Vec2, t: f64) -> Vec2 {
        self.forcing_momentum(x, t)
    }

    fn conformation(&self, x: Vec2, t: f64) -> SymTensor {
        self.forcing_conformation(x, t)
    }
}

/// Rotating-force robustness problem: small conformation diffusion, a
/// steady rigid-rotation body force and constant isotropic initial stress.
pub struct RotatingForce;

impl RotatingForce {
    /// Initial velocity from the stream function
    /// psi = -200 (x (1-x) y (1-y))^2.
    pub fn initial_velocity(x: Vec2) -> Vec2 {
        let g = |s: f64| s * (1.0 - s);
        let dg = |s: f64| 1.0 - 2.0 * s;
        let (gx, gy) = (g(x.x), g(x.y));
        Vec2::new(
            400.0 * gx * gx * gy * dg(x.y),
            -400.0 * gx * dg(x.x) * gy * gy,
        )
    }

    pub fn initial_conformation(_x: Vec2) -> SymTensor {
        SymTensor::scaled_identity(0.5f64.sqrt())
    }
}

impl Forcing for RotatingForce {
    fn momentum(&self, x: Vec2, _t: f64) -> Vec2 {
        Vec2::new(-70.0 * (x.y - 0.5), 70.0 * (x.x - 0.5))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conformation_point_values() {
        let case = MmsCase::new(1.0, 1.0);
        let c = case.conformation(Vec2::new(0.5, 0.5), 0.0);
        assert!((c.xx - 1.5).abs() < 1e-15);
        assert!(c.xy.abs() < 1e-14);
        assert!((c.yy - 1.5).abs() < 1e-15);
    }

    #[test]
    fn velocity_vanishes_on_boundary() {
        let case = MmsCase::new(1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s: f64 = rng.random();
            let t: f64 = rng.random();
            for x in [
                Vec2::new(s, 0.0),
                Vec2::new(s, 1.0),
                Vec2::new(0.0, s),
                Vec2::new(1.0, s),
            ] {
                assert!(case.velocity(x, t).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn velocity_is_divergence_free() {
        let case = MmsCase::new(1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x = Vec2::new(rng.random(), rng.random());
            let t: f64 = rng.random();
            let div = case.velocity_gradient(x, t).trace();
            assert!(div.abs() < 1e-12, "div u = {div} at {x:?} t={t}");
        }
    }

    #[test]
    fn neumann_data_vanishes_on_boundary() {
        let case = MmsCase::new(1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let s: f64 = rng.random();
            let t: f64 = rng.random();
            // normal derivative on each side of the square
            let [gx_l, _] = case.conformation_gradient(Vec2::new(0.0, s), t);
            let [gx_r, _] = case.conformation_gradient(Vec2::new(1.0, s), t);
            let [_, gy_b] = case.conformation_gradient(Vec2::new(s, 0.0), t);
            let [_, gy_t] = case.conformation_gradient(Vec2::new(s, 1.0), t);
            for g in [gx_l, gx_r, gy_b, gy_t] {
                assert!(g.frobenius(g).sqrt() < 1e-13);
            }
        }
    }

    #[test]
    fn forcing_is_linear_in_epsilon() {
        let with = MmsCase::new(1.0, 1.0);
        let without = MmsCase::new(1.0, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let x = Vec2::new(rng.random(), rng.random());
            let t: f64 = rng.random();
            let diff = with.forcing_conformation(x, t) - without.forcing_conformation(x, t);
            let expected = with.conformation_laplacian(x, t) * (-1.0);
            let err = diff - expected;
            assert!(err.frobenius(err).sqrt() < 1e-12);
        }
    }

    #[test]
    fn rotating_force_fields() {
        let f = RotatingForce.momentum(Vec2::new(0.25, 0.75), 3.0);
        assert!((f.x - -70.0 * 0.25).abs() < 1e-13);
        assert!((f.y - 70.0 * -0.25).abs() < 1e-13);
        let big_f = RotatingForce.conformation(Vec2::new(0.3, 0.4), 0.1);
        assert_eq!(big_f, SymTensor::ZERO);

        // initial velocity matches the stream function by finite differences
        let psi = |x: Vec2| -200.0 * (x.x * (1.0 - x.x) * x.y * (1.0 - x.y)).powi(2);
        let h = 1e-6;
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let x = Vec2::new(rng.random(), rng.random());
            let u = RotatingForce::initial_velocity(x);
            let dpsi_dy = (psi(Vec2::new(x.x, x.y + h)) - psi(Vec2::new(x.x, x.y - h))) / (2.0 * h);
            let dpsi_dx = (psi(Vec2::new(x.x + h, x.y)) - psi(Vec2::new(x.x - h, x.y))) / (2.0 * h);
            assert!((u.x + dpsi_dy).abs() < 1e-6);
            assert!((u.y - dpsi_dx).abs() < 1e-6);
        }
        // initial velocity vanishes on the boundary
        assert!(RotatingForce::initial_velocity(Vec2::new(0.0, 0.3)).norm() < 1e-14);
        assert!(RotatingForce::initial_velocity(Vec2::new(0.7, 1.0)).norm() < 1e-14);
        let c0 = RotatingForce::initial_conformation(Vec2::ZERO);
        assert!((c0.xx - 0.5f64.sqrt()).abs() < 1e-15 && c0.xy == 0.0);
        assert!((c0.det() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hand_coded_derivatives_match_finite_differences() {
        let case = MmsCase::new(1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let h = 1e-5;
        for _ in 0..50 {
            let x = Vec2::new(rng.random(), rng.random());
            let t: f64 = rng.random();
            // velocity gradient columns
            let up = case.velocity(Vec2::new(x.x + h, x.y), t);
            let um = case.velocity(Vec2::new(x.x - h, x.y), t);
            let vp = case.velocity(Vec2::new(x.x, x.y + h), t);
            let vm = case.velocity(Vec2::new(x.x, x.y - h), t);
            let g = case.velocity_gradient(x, t);
            assert!((g.m[0][0] - (up.x - um.x) / (2.0 * h)).abs() < 1e-7);
            assert!((g.m[1][0] - (up.y - um.y) / (2.0 * h)).abs() < 1e-7);
            assert!((g.m[0][1] - (vp.x - vm.x) / (2.0 * h)).abs() < 1e-7);
            assert!((g.m[1][1] - (vp.y - vm.y) / (2.0 * h)).abs() < 1e-7);
            // time derivatives
            let ut = case.velocity_time_derivative(x, t);
            let utp = case.velocity(x, t + h);
            let utm = case.velocity(x, t - h);
            assert!((ut.x - (utp.x - utm.x) / (2.0 * h)).abs() < 1e-7);
            let ct = case.conformation_time_derivative(x, t);
            let ctp = case.conformation(x, t + h);
            let ctm = case.conformation(x, t - h);
            let fd = (ctp - ctm) * (0.5 / h);
            let err = ct - fd;
            assert!(err.frobenius(err).sqrt() < 1e-7);
        }
    }
}
