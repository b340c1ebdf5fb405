use num_bigint::BigInt;
use num_traits::Zero;

use super::point::{cross, det3, sign};
use super::{GeomError, HLine, HPoint};

/// Orientation of an ordered point triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_sign(s: i8) -> Self {
        match s {
            0 => Orientation::Collinear,
            s if s > 0 => Orientation::CounterClockwise,
            _ => Orientation::Clockwise,
        }
    }
}

/// Sign of the homogeneous determinant with rows `p, q, r`.
///
/// Finite points use their `w > 0` representatives, so the sign is the usual
/// counter-clockwise test. Points at infinity keep their canonical
/// representative.
pub fn orient(p: &HPoint, q: &HPoint, r: &HPoint) -> Orientation {
    Orientation::from_sign(sign(&det3(&p.oriented(), &q.oriented(), &r.oriented())))
}

pub fn collinear(p: &HPoint, q: &HPoint, r: &HPoint) -> bool {
    det3(p.coords(), q.coords(), r.coords()).is_zero()
}

pub fn line_through(p: &HPoint, q: &HPoint) -> Result<HLine, GeomError> {
    HLine::from_raw(cross(p.coords(), q.coords())).ok_or(GeomError::IdenticalPoints)
}

pub fn meet(l1: &HLine, l2: &HLine) -> Result<HPoint, GeomError> {
    HPoint::from_raw(cross(l1.coeffs(), l2.coeffs())).ok_or(GeomError::IdenticalLines)
}

pub fn concurrent(l1: &HLine, l2: &HLine, l3: &HLine) -> bool {
    det3(l1.coeffs(), l2.coeffs(), l3.coeffs()).is_zero()
}

pub fn incident(p: &HPoint, l: &HLine) -> bool {
    l.contains(p)
}

/// The point at infinity of the line `pq`.
pub fn direction_of(p: &HPoint, q: &HPoint) -> Result<HPoint, GeomError> {
    if !p.is_finite() || !q.is_finite() {
        return Err(GeomError::NotFinite);
    }
    let (p, q) = (p.coords(), q.coords());
    let dx: BigInt = &q[0] * &p[2] - &p[0] * &q[2];
    let dy: BigInt = &q[1] * &p[2] - &p[1] * &q[2];
    HPoint::from_raw([dx, dy, BigInt::zero()]).ok_or(GeomError::IdenticalPoints)
}
