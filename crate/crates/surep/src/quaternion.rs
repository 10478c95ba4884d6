use std::f64::consts::PI;
use std::ops::{Mul, Neg};

use rand::Rng;
use serde::{Deserialize, Serialize};

/// A unit quaternion `w + x·i + y·j + z·k`, an element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", from = "[f64; 4]")]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for UnitQuaternion {
    fn from([w, x, y, z]: [f64; 4]) -> Self {
        UnitQuaternion::new(w, x, y, z)
    }
}

impl From<UnitQuaternion> for [f64; 4] {
    fn from(q: UnitQuaternion) -> Self {
        q.to_array()
    }
}

impl UnitQuaternion {
    pub const ONE: UnitQuaternion = UnitQuaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: UnitQuaternion = UnitQuaternion { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: UnitQuaternion = UnitQuaternion { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: UnitQuaternion = UnitQuaternion { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(w, x, y, z)`; the zero vector maps to 1.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Self::ONE;
        }
        UnitQuaternion { w: w / n, x: x / n, y: y / n, z: z / n }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn vector_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// `cos θ + sin θ · axis` for a unit `axis`.
    pub fn from_axis_angle(axis: [f64; 3], theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        UnitQuaternion::new(c, s * axis[0], s * axis[1], s * axis[2])
    }

    /// `e^{iθ}`.
    pub fn exp_i(theta: f64) -> Self {
        Self::from_axis_angle([1.0, 0.0, 0.0], theta)
    }

    /// Exponential of the pure quaternion `v`.
    pub fn exp(v: [f64; 3]) -> Self {
        let t = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if t < 1e-300 {
            return Self::ONE;
        }
        let s = t.sin() / t;
        UnitQuaternion::new(t.cos(), s * v[0], s * v[1], s * v[2])
    }

    pub fn inverse(self) -> Self {
        UnitQuaternion { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// Product without renormalization.
    pub fn mul_raw(self, o: Self) -> Self {
        UnitQuaternion {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
    }

    pub fn normalized(self) -> Self {
        Self::new(self.w, self.x, self.y, self.z)
    }

    /// Euclidean distance in `R⁴`.
    pub fn dist(self, o: Self) -> f64 {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `‖q − 1‖`.
    pub fn dist_to_one(self) -> f64 {
        self.dist(Self::ONE)
    }

    /// Rotation angle `θ ∈ [0, π]` with `q = cos θ + sin θ · n`.
    pub fn angle(self) -> f64 {
        self.vector_norm().atan2(self.w)
    }

    pub fn trace(self) -> f64 {
        2.0 * self.w
    }

    /// `self · o · self⁻¹`.
    pub fn conjugate(self, o: Self) -> Self {
        (self * o) * self.inverse()
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(self, o: Self) -> Self {
        self * o * self.inverse() * o.inverse()
    }

    /// Uniform on `S³` (Shoemake's subgroup algorithm).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen::<f64>() * 2.0 * PI;
        let u3: f64 = rng.gen::<f64>() * 2.0 * PI;
        let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
        UnitQuaternion::new(a * u2.sin(), a * u2.cos(), b * u3.sin(), b * u3.cos())
    }

    /// A unit quaternion `r` with `r · (v as pure quaternion) · r⁻¹` pointing along `to`.
    pub fn rotation_between(from: [f64; 3], to: [f64; 3]) -> Self {
        let nf = norm3(from);
        let nt = norm3(to);
        if nf == 0.0 || nt == 0.0 {
            return Self::ONE;
        }
        let f = [from[0] / nf, from[1] / nf, from[2] / nf];
        let t = [to[0] / nt, to[1] / nt, to[2] / nt];
        let d = dot3(f, t);
        if d < -1.0 + 1e-12 {
            // half turn about any axis orthogonal to f
            let helper = if f[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let c = cross3(f, helper);
            let n = norm3(c);
            return UnitQuaternion::new(0.0, c[0] / n, c[1] / n, c[2] / n);
        }
        // rotation by angle φ about f×t is cos(φ/2) + sin(φ/2)·axis
        let c = cross3(f, t);
        UnitQuaternion::new(1.0 + d, c[0], c[1], c[2])
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;
    fn mul(self, o: Self) -> Self {
        self.mul_raw(o).normalized()
    }
}

impl Neg for UnitQuaternion {
    type Output = UnitQuaternion;
    fn neg(self) -> Self {
        UnitQuaternion { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
