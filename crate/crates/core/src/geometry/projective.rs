use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::point::{canonicalize, clear_denominators, dot};
use super::{meet, Conic, GeomError, HLine, HPoint, Rat};
use crate::linalg;

type Mat = [[BigInt; 3]; 3];

/// A nonsingular projective transformation, stored as a canonical integer
/// matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMap(Mat);

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    core::array::from_fn(|i| {
        core::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum::<BigInt>())
    })
}

fn transpose(a: &Mat) -> Mat {
    core::array::from_fn(|i| core::array::from_fn(|j| a[j][i].clone()))
}

fn adjugate(a: &Mat) -> Mat {
    let m = |r: usize, c: usize| -> BigInt {
        let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
        &a[rs[0]][cs[0]] * &a[rs[1]][cs[1]] - &a[rs[0]][cs[1]] * &a[rs[1]][cs[0]]
    };
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let v = m(j, i);
            if (i + j) % 2 == 0 {
                v
            } else {
                -v
            }
        })
    })
}

fn mat_vec(a: &Mat, v: &[BigInt; 3]) -> [BigInt; 3] {
    core::array::from_fn(|i| dot(&a[i], v))
}

pub(crate) fn det(a: &Mat) -> BigInt {
    super::point::det3(&a[0], &a[1], &a[2])
}

impl ProjMap {
    pub fn identity() -> Self {
        ProjMap(core::array::from_fn(|i| {
            core::array::from_fn(|j| BigInt::from(u8::from(i == j)))
        }))
    }

    fn from_mat(m: Mat) -> Result<Self, GeomError> {
        if det(&m).is_zero() {
            return Err(GeomError::SingularMap);
        }
        let mut flat: Vec<BigInt> = m.iter().flatten().cloned().collect();
        canonicalize(&mut flat).ok_or(GeomError::SingularMap)?;
        let mut it = flat.into_iter();
        Ok(ProjMap(core::array::from_fn(|_| core::array::from_fn(|_| it.next().unwrap()))))
    }

    pub fn from_rows(rows: &[[Rat; 3]; 3]) -> Result<Self, GeomError> {
        let flat: Vec<Rat> = rows.iter().flatten().cloned().collect();
        let ints = clear_denominators(&flat);
        let mut it = ints.into_iter();
        Self::from_mat(core::array::from_fn(|_| core::array::from_fn(|_| it.next().unwrap())))
    }

    /// The affine map `(x, y) ↦ (m00 x + m01 y + m02, m10 x + m11 y + m12)`.
    pub fn affine(m: [[Rat; 3]; 2]) -> Result<Self, GeomError> {
        let z = Rat::zero();
        let one = Rat::from_integer(1.into());
        Self::from_rows(&[m[0].clone(), m[1].clone(), [z.clone(), z, one]])
    }

    pub fn matrix(&self) -> &Mat {
        &self.0
    }

    pub fn determinant(&self) -> BigInt {
        det(&self.0)
    }

    pub fn is_affine(&self) -> bool {
        self.0[2][0].is_zero() && self.0[2][1].is_zero()
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        HPoint::from_raw(mat_vec(&self.0, p.coords())).expect("nonsingular map")
    }

    /// Image of a line: `l' ∝ adj(M)ᵀ l`.
    pub fn apply_line(&self, l: &HLine) -> HLine {
        let adj_t = transpose(&adjugate(&self.0));
        HLine::from_raw(mat_vec(&adj_t, l.coeffs())).expect("nonsingular map")
    }

    /// Conic whose zero set is the image of `c`'s zero set.
    pub fn apply_conic(&self, c: &Conic) -> Conic {
        let adj = adjugate(&self.0);
        let s = c.matrix2();
        Conic::from_matrix2(&mat_mul(&transpose(&adj), &mat_mul(&s, &adj)))
    }

    /// Pulls a conic back: the result contains `p` iff `c` contains `M p`.
    pub fn pull_back_conic(&self, c: &Conic) -> Conic {
        let s = c.matrix2();
        Conic::from_matrix2(&mat_mul(&transpose(&self.0), &mat_mul(&s, &self.0)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        ProjMap::from_mat(mat_mul(&self.0, &other.0)).expect("product of nonsingular maps")
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap::from_mat(adjugate(&self.0)).expect("nonsingular map")
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{} {} {}] [{} {} {}] [{} {} {}]]",
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]
        )
    }
}

/// Two distinct points on a line.
pub(crate) fn two_points_on(l: &HLine) -> (HPoint, HPoint) {
    let mut pts: Vec<HPoint> = Vec::with_capacity(3);
    for axis in [HLine::y_axis(), HLine::x_axis(), HLine::at_infinity()] {
        if let Ok(p) = meet(l, &axis) {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    let mut it = pts.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

fn general_position(p: &[HPoint; 3], l: &HLine) -> bool {
    !super::collinear(&p[0], &p[1], &p[2]) && p.iter().all(|x| !l.contains(x))
}

/// The projective map sending `src[i]` to `targets[i]` and `src_line` onto
/// `target_line`, found as the one-dimensional nullspace of the incidence
/// constraints.
pub fn proj_map_normalizing(
    src: &[HPoint; 3],
    targets: &[HPoint; 3],
    src_line: &HLine,
    target_line: &HLine,
) -> Result<ProjMap, GeomError> {
    if !general_position(src, src_line) || !general_position(targets, target_line) {
        return Err(GeomError::DegenerateConfiguration);
    }
    let r = |x: &BigInt| Rat::from_integer(x.clone());
    // Unknown m[i][j] lives at column 3i + j.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (s, t) in src.iter().zip(targets) {
        let (s, t) = (s.coords(), t.coords());
        // (M s) × t = 0, component by component.
        for (i, j) in [(1, 2), (2, 0), (0, 1)] {
            let mut row = alloc::vec![Rat::zero(); 9];
            for c in 0..3 {
                row[3 * i + c] += r(&s[c]) * r(&t[j]);
                row[3 * j + c] -= r(&s[c]) * r(&t[i]);
            }
            rows.push(row);
        }
    }
    let (p, q) = two_points_on(src_line);
    let tl = target_line.coeffs();
    for pt in [p, q] {
        let pc = pt.coords();
        let mut row = alloc::vec![Rat::zero(); 9];
        for i in 0..3 {
            for c in 0..3 {
                row[3 * i + c] += r(&tl[i]) * r(&pc[c]);
            }
        }
        rows.push(row);
    }
    let ns = linalg::nullspace(&rows, 9);
    if ns.len() != 1 {
        return Err(GeomError::NoUniqueMap(ns.len()));
    }
    let v = &ns[0];
    ProjMap::from_rows(&core::array::from_fn(|i| core::array::from_fn(|j| v[3 * i + j].clone())))
}
