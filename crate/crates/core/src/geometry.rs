//! Spin axes, Bloch vectors and the planar parameterisation of pure states.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::{Error, Result};

/// Tolerance on the norm of a vector that is meant to be unit length.
pub const UNIT_TOL: f64 = 1e-12;

/// Angles within this distance of 0 or π are treated as (anti)parallel.
pub const PARALLEL_TOL: f64 = 1e-9;

/// Plain real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self * rhs.x, self * rhs.y, self * rhs.z)
    }
}

/// A direction on the unit sphere: a measured spin axis or an eigenvector
/// direction of `n·σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 3]")]
pub struct UnitVector3(Vec3);

impl From<UnitVector3> for [f64; 3] {
    fn from(u: UnitVector3) -> Self {
        [u.0.x, u.0.y, u.0.z]
    }
}

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVector3 = UnitVector3(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVector3 = UnitVector3(Vec3::new(0.0, 0.0, 1.0));

    /// Accepts components whose norm is within [`UNIT_TOL`] of one and
    /// renormalises them.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnitLength { norm });
        }
        Ok(UnitVector3((1.0 / norm) * v))
    }

    /// Scales any non-zero finite vector to unit length.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(UnitVector3((1.0 / norm) * v))
    }

    /// Unit vector at polar angle `theta` from +z and azimuth `phi` from +x.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        UnitVector3(Vec3::new(st * cp, st * sp, ct))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn dot(self, other: UnitVector3) -> f64 {
        self.0.dot(other.0)
    }

    /// Some unit vector orthogonal to `self`.
    pub fn any_orthogonal(self) -> UnitVector3 {
        let v = self.0;
        // Cross with the basis axis least aligned with v.
        let helper = if v.x.abs() <= v.y.abs() && v.x.abs() <= v.z.abs() {
            Vec3::new(1.0, 0.0, 0.0)
        } else if v.y.abs() <= v.z.abs() {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        UnitVector3::normalize(v.cross(helper)).expect("cross with least-aligned axis is non-zero")
    }
}

impl Neg for UnitVector3 {
    type Output = UnitVector3;
    fn neg(self) -> UnitVector3 {
        UnitVector3(-self.0)
    }
}

/// Angle in `[0, π]` between two unit vectors.
pub fn angle_between(a: UnitVector3, b: UnitVector3) -> f64 {
    a.dot(b).clamp(-1.0, 1.0).acos()
}

/// Canonical frame for a pair of spin axes at angle `eta`:
/// `a = (0, 0, 1)`, `b = (sin η, 0, cos η)`.
pub fn canonical_axes(eta: f64) -> (UnitVector3, UnitVector3) {
    let (s, c) = eta.sin_cos();
    (UnitVector3::Z, UnitVector3(Vec3::new(s, 0.0, c)))
}

/// Qubit state `ρ = ½(1 + c·σ)` stored as its Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochState {
    c: Vec3,
}

impl BlochState {
    pub fn new(c: Vec3) -> Result<Self> {
        let len = c.norm();
        if !len.is_finite() || len > 1.0 + UNIT_TOL {
            return Err(Error::NotAState(len));
        }
        Ok(Self { c })
    }

    pub fn pure(direction: UnitVector3) -> Self {
        Self { c: direction.vec() }
    }

    pub fn maximally_mixed() -> Self {
        Self { c: Vec3::ZERO }
    }

    pub fn bloch(&self) -> Vec3 {
        self.c
    }

    pub fn is_pure(&self) -> bool {
        (self.c.norm() - 1.0).abs() <= 1e-9
    }

    /// Expectation value of `n·σ`.
    pub fn expectation(&self, n: UnitVector3) -> f64 {
        self.c.dot(n.vec())
    }

    /// The state with Bloch vector `-c`.
    pub fn flipped(&self) -> Self {
        Self { c: -self.c }
    }
}

/// Orthonormal basis `(a, e)` of the plane spanned by two spin axes, with `e`
/// pointing from `a` toward `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarFrame {
    pub a: UnitVector3,
    pub e: UnitVector3,
    pub normal: UnitVector3,
}

impl PlanarFrame {
    /// Fails if `a` and `b` are (anti)parallel.
    pub fn new(a: UnitVector3, b: UnitVector3) -> Result<Self> {
        let eta = angle_between(a, b);
        if eta < PARALLEL_TOL || PI - eta < PARALLEL_TOL {
            return Err(Error::DegeneratePlane);
        }
        let e = UnitVector3::normalize(b.vec() - a.dot(b) * a.vec())?;
        let normal = UnitVector3::normalize(a.vec().cross(e.vec()))?;
        Ok(Self { a, e, normal })
    }

    /// Like [`PlanarFrame::new`], but picks an arbitrary plane containing `a`
    /// when the axes are (anti)parallel.
    pub fn new_or_any(a: UnitVector3, b: UnitVector3) -> Self {
        Self::new(a, b).unwrap_or_else(|_| {
            let e = a.any_orthogonal();
            let normal = UnitVector3::normalize(a.vec().cross(e.vec()))
                .expect("orthogonal unit vectors have unit cross product");
            Self { a, e, normal }
        })
    }

    /// Pure state at angle `theta` from `a`, rotating toward `b`.
    pub fn state(&self, theta: f64) -> BlochState {
        let (s, c) = theta.sin_cos();
        BlochState {
            c: c * self.a.vec() + s * self.e.vec(),
        }
    }
}

/// Pure state in the `a`–`b` plane at angle `theta` from `a`, rotated toward `b`.
pub fn planar_state(theta: f64, a: UnitVector3, b: UnitVector3) -> Result<BlochState> {
    Ok(PlanarFrame::new(a, b)?.state(theta))
}
