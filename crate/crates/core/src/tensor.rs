//! Small fixed-size algebra for 2-D vectors and symmetric 2x2 tensors.
//!
//! The conformation tensor is symmetric and stored as three scalars
//! (xx, xy, yy). Frobenius contractions therefore count the off-diagonal
//! component twice, matching the full 2x2 inner product A:B.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// 2-D vector.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

/// General (not necessarily symmetric) 2x2 matrix, used for velocity
/// gradients. Entry `m[i][j]` is row i, column j.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2 { m: [[0.0; 2]; 2] };

    pub fn new(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn trace(self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Matrix-vector product.
    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }
}

/// Symmetric 2x2 tensor stored as the upper triangle (xx, xy, yy).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SymTensor {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl SymTensor {
    pub const ZERO: SymTensor = SymTensor {
        xx: 0.0,
        xy: 0.0,
        yy: 0.0,
    };

    pub const IDENTITY: SymTensor = SymTensor {
        xx: 1.0,
        xy: 0.0,
        yy: 1.0,
    };

    pub fn new(xx: f64, xy: f64, yy: f64) -> Self {
        Self { xx, xy, yy }
    }

    pub fn scaled_identity(s: f64) -> Self {
        Self::new(s, 0.0, s)
    }

    pub fn trace(self) -> f64 {
        self.xx + self.yy
    }

    pub fn det(self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    /// Frobenius inner product of the expanded 2x2 tensors; the stored
    /// off-diagonal component contributes twice.
    pub fn frobenius(self, other: SymTensor) -> f64 {
        self.xx * other.xx + 2.0 * self.xy * other.xy + self.yy * other.yy
    }

    /// Tensor-vector product C n.
    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(self.xx * v.x + self.xy * v.y, self.xy * v.x + self.yy * v.y)
    }

    /// Symmetric part of the product G C + C G^T for a velocity gradient G.
    pub fn stretch_by(self, g: Mat2) -> SymTensor {
        let c = self;
        SymTensor::new(
            2.0 * (g.m[0][0] * c.xx + g.m[0][1] * c.xy),
            g.m[0][0] * c.xy + g.m[0][1] * c.yy + g.m[1][0] * c.xx + g.m[1][1] * c.xy,
            2.0 * (g.m[1][0] * c.xy + g.m[1][1] * c.yy),
        )
    }

    /// Component by flat index in storage order (xx, xy, yy).
    pub fn component(self, i: usize) -> f64 {
        match i {
            0 => self.xx,
            1 => self.xy,
            2 => self.yy,
            _ => panic!("symmetric tensor component index out of range: {i}"),
        }
    }
}

impl Add for SymTensor {
    type Output = SymTensor;
    fn add(self, rhs: SymTensor) -> SymTensor {
        SymTensor::new(self.xx + rhs.xx, self.xy + rhs.xy, self.yy + rhs.yy)
    }
}

impl Sub for SymTensor {
    type Output = SymTensor;
    fn sub(self, rhs: SymTensor) -> SymTensor {
        SymTensor::new(self.xx - rhs.xx, self.xy - rhs.xy, self.yy - rhs.yy)
    }
}

impl Mul<f64> for SymTensor {
    type Output = SymTensor;
    fn mul(self, s: f64) -> SymTensor {
        SymTensor::new(self.xx * s, self.xy * s, self.yy * s)
    }
}

impl AddAssign for SymTensor {
    fn add_assign(&mut self, rhs: SymTensor) {
        self.xx += rhs.xx;
        self.xy += rhs.xy;
        self.yy += rhs.yy;
    }
}

/// Frobenius weight of the stored component `i`: the off-diagonal slot
/// represents two entries of the expanded tensor.
pub fn sym_component_weight(i: usize) -> f64 {
    if i == 1 {
        2.0
    } else {
        1.0
    }
}
