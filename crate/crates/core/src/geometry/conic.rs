use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::point::{canonicalize, clear_denominators};
use super::{GeomError, HPoint, Rat};
use crate::linalg;

/// `q_xx X² + q_xy XY + q_yy Y² + q_xw XW + q_yw YW + q_ww W²` with canonical
/// coprime integer coefficients in that order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conic([BigInt; 6]);

impl Conic {
    pub fn from_integers(c: [BigInt; 6]) -> Result<Self, GeomError> {
        let mut c = c;
        canonicalize(&mut c).ok_or(GeomError::ZeroVector)?;
        Ok(Conic(c))
    }

    pub fn from_coeffs(c: &[Rat; 6]) -> Result<Self, GeomError> {
        let ints = clear_denominators(c);
        let mut it = ints.into_iter();
        Self::from_integers(core::array::from_fn(|_| it.next().unwrap()))
    }

    /// `X² + Y² − W²`.
    pub fn unit_circle() -> Self {
        let i = |n: i64| BigInt::from(n);
        Conic([i(1), i(0), i(1), i(0), i(0), i(-1)])
    }

    pub fn coeffs(&self) -> &[BigInt; 6] {
        &self.0
    }

    /// Twice the symmetric matrix, so that all entries are integers.
    pub fn matrix2(&self) -> [[BigInt; 3]; 3] {
        let [xx, xy, yy, xw, yw, ww] = &self.0;
        [
            [xx * 2, xy.clone(), xw.clone()],
            [xy.clone(), yy * 2, yw.clone()],
            [xw.clone(), yw.clone(), ww * 2],
        ]
    }

    pub(crate) fn from_matrix2(s: &[[BigInt; 3]; 3]) -> Self {
        Self::from_integers([
            s[0][0].clone(),
            &s[0][1] + &s[1][0],
            s[1][1].clone(),
            &s[0][2] + &s[2][0],
            &s[1][2] + &s[2][1],
            s[2][2].clone(),
        ])
        .expect("transport of a nonzero conic by a nonsingular map")
    }

    pub fn eval(&self, p: &HPoint) -> BigInt {
        let [x, y, w] = p.coords();
        let [xx, xy, yy, xw, yw, ww] = &self.0;
        xx * x * x + xy * x * y + yy * y * y + xw * x * w + yw * y * w + ww * w * w
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn rank(&self) -> u8 {
        let rows: Vec<Vec<Rat>> = self
            .matrix2()
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        linalg::rank(&rows, 3) as u8
    }
}

impl fmt::Debug for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.0;
        write!(f, "Conic({}, {}, {}, {}, {}, {})", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

pub fn on_conic(c: &Conic, p: &HPoint) -> bool {
    c.contains(p)
}

pub fn conic_rank(c: &Conic) -> u8 {
    c.rank()
}

/// A conic through five points, with a flag telling whether it is the only
/// one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicFit {
    pub conic: Conic,
    pub unique: bool,
}

fn monomials(p: &HPoint) -> Vec<Rat> {
    let [x, y, w] = p.coords();
    [x * x, x * y, y * y, x * w, y * w, w * w].into_iter().map(Rat::from_integer).collect()
}

/// Exact nullspace of the 5×6 incidence matrix. When the nullspace has
/// dimension above one, its first basis vector is returned and the fit is
/// flagged non-unique.
pub fn conic_through_five(pts: &[HPoint; 5]) -> Result<ConicFit, GeomError> {
    for i in 0..5 {
        for j in 0..i {
            if pts[i] == pts[j] {
                return Err(GeomError::IdenticalPoints);
            }
        }
    }
    let rows: Vec<Vec<Rat>> = pts.iter().map(monomials).collect();
    let ns = linalg::nullspace(&rows, 6);
    let v: [Rat; 6] = core::array::from_fn(|i| ns[0][i].clone());
    Ok(ConicFit { conic: Conic::from_coeffs(&v)?, unique: ns.len() == 1 })
}
