//! Placement of regular polygons in the Poincaré disk (hyperbolic pairs) or
//! the Euclidean plane (flat pairs). Coordinates are for rendering and
//! cross-checks only; the combinatorics never read them.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{Curvature, SchlafliPair};

/// Rigid motion of the model space: Möbius isometry of the disk, or a
/// Euclidean rotation plus translation.
#[derive(Clone, Copy, Debug)]
pub enum Motion {
    /// `z ↦ mobius(a, rot · mobius(-c, z))`
    Disk { c: Complex64, rot: Complex64, a: Complex64 },
    /// `z ↦ rot · (z - c) + a`
    Plane { c: Complex64, rot: Complex64, a: Complex64 },
}

/// The disk automorphism sending 0 to `a`.
pub fn mobius(a: Complex64, z: Complex64) -> Complex64 {
    (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z)
}

impl Motion {
    /// The unique orientation-preserving motion mapping `c0 ↦ a` and `c1 ↦ b`,
    /// assuming `d(c0, c1) = d(a, b)`.
    pub fn mapping(curv: Curvature, c0: Complex64, c1: Complex64, a: Complex64, b: Complex64) -> Motion {
        match curv {
            Curvature::Hyperbolic => {
                let u_src = mobius(-c0, c1);
                let u_dst = mobius(-a, b);
                let rot = u_dst / u_src;
                let rot = rot / rot.norm();
                Motion::Disk { c: c0, rot, a }
            }
            Curvature::Flat => {
                let rot = (b - a) / (c1 - c0);
                let rot = rot / rot.norm();
                Motion::Plane { c: c0, rot, a }
            }
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        match *self {
            Motion::Disk { c, rot, a } => mobius(a, rot * mobius(-c, z)),
            Motion::Plane { c, rot, a } => rot * (z - c) + a,
        }
    }
}

/// Vertices of the canonical central polygon, counterclockwise.
pub fn central_polygon(pq: SchlafliPair) -> Vec<Complex64> {
    let p = pq.p as f64;
    let r = circumradius(pq);
    (0..pq.p)
        .map(|j| Complex64::from_polar(r, 2.0 * PI * j as f64 / p))
        .collect()
}

/// Circumradius of a tile: Euclidean radius in the disk model for hyperbolic
/// pairs (`cosh R = cot(π/p) cot(π/q)`, `r = tanh(R/2)`), unit edge otherwise.
pub fn circumradius(pq: SchlafliPair) -> f64 {
    let p = pq.p as f64;
    let q = pq.q as f64;
    match pq.curvature() {
        Curvature::Hyperbolic => {
            let cosh_r = 1.0 / ((PI / p).tan() * (PI / q).tan());
            (cosh_r.acosh() / 2.0).tanh()
        }
        Curvature::Flat => 0.5 / (PI / p).sin(),
    }
}

/// Hyperbolic distance between two disk points.
pub fn disk_distance(a: Complex64, b: Complex64) -> f64 {
    let num = 2.0 * (a - b).norm_sqr();
    let den = (1.0 - a.norm_sqr()) * (1.0 - b.norm_sqr());
    (1.0 + num / den).acosh()
}

/// Reflection of `z` across the hyperbolic geodesic through `a` and `b`.
pub fn reflect(a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
    let u = mobius(-a, b);
    let phase = u / u.norm();
    let w = mobius(-a, z) / phase;
    mobius(a, w.conj() * phase)
}
