use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::geometry::{Conic, GeomError, Rat};

/// Maximum total degree.
pub const MAX_DEGREE: usize = 3;
const D: usize = MAX_DEGREE + 1;

/// Exact bivariate polynomial in `(x, y)` of total degree at most 3, stored
/// densely: `coeff(i, j)` multiplies `x^i y^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurvePoly {
    c: [[Rat; D]; D],
}

impl CurvePoly {
    pub fn zero() -> Self {
        CurvePoly { c: core::array::from_fn(|_| core::array::from_fn(|_| Rat::zero())) }
    }

    pub fn constant(v: Rat) -> Self {
        let mut p = Self::zero();
        p.c[0][0] = v;
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    /// `v·x^i y^j`; panics above degree 3.
    pub fn monomial(i: usize, j: usize, v: Rat) -> Self {
        assert!(i + j <= MAX_DEGREE, "degree {} exceeds {}", i + j, MAX_DEGREE);
        let mut p = Self::zero();
        p.c[i][j] = v;
        p
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rat {
        &self.c[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Zero::is_zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    /// Nonzero terms `(i, j, coefficient)` in `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        (0..D).flat_map(move |i| (0..D - i).map(move |j| (i, j, &self.c[i][j]))).filter(|t| !t.2.is_zero())
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (i, j, v) in self.terms() {
            acc += v * pow(x, i) * pow(y, j);
        }
        acc
    }

    /// Coefficient of `x^i` as a polynomial in `y`, low degree first.
    pub fn x_coefficient(&self, i: usize) -> [Rat; D] {
        core::array::from_fn(|j| self.c[i][j].clone())
    }

    /// `self / y` when `y` divides `self`.
    pub fn div_y(&self) -> Option<CurvePoly> {
        if (0..D).any(|i| !self.c[i][0].is_zero()) {
            return None;
        }
        let mut q = Self::zero();
        for i in 0..D {
            for j in 1..D - i {
                q.c[i][j - 1] = self.c[i][j].clone();
            }
        }
        Some(q)
    }

    /// The conic `Σ c_ij x^i y^j w^(2−i−j)` of a polynomial of degree ≤ 2.
    pub fn to_conic(&self) -> Result<Conic, GeomError> {
        assert!(self.degree().unwrap_or(0) <= 2, "not a quadratic");
        let c = &self.c;
        Conic::from_coeffs(&[
            c[2][0].clone(),
            c[1][1].clone(),
            c[0][2].clone(),
            c[1][0].clone(),
            c[0][1].clone(),
            c[0][0].clone(),
        ])
    }

    /// Divides every coefficient by the leading one in `(i, j)` order.
    pub fn monic(&self) -> CurvePoly {
        let Some((_, _, lead)) = self.terms().last() else { return self.clone() };
        let lead = lead.clone();
        let mut p = self.clone();
        for v in p.c.iter_mut().flatten() {
            *v = &*v / &lead;
        }
        p
    }
}

fn pow(b: &Rat, e: usize) -> Rat {
    let mut r = Rat::one();
    for _ in 0..e {
        r *= b;
    }
    r
}

impl Add for &CurvePoly {
    type Output = CurvePoly;
    fn add(self, o: &CurvePoly) -> CurvePoly {
        let mut p = self.clone();
        for i in 0..D {
            for j in 0..D {
                p.c[i][j] += &o.c[i][j];
            }
        }
        p
    }
}

impl Sub for &CurvePoly {
    type Output = CurvePoly;
    fn sub(self, o: &CurvePoly) -> CurvePoly {
        self + &(-o)
    }
}

impl Neg for &CurvePoly {
    type Output = CurvePoly;
    fn neg(self) -> CurvePoly {
        let mut p = self.clone();
        for v in p.c.iter_mut().flatten() {
            *v = -v.clone();
        }
        p
    }
}

impl Mul for &CurvePoly {
    type Output = CurvePoly;
    /// Panics if the product exceeds degree 3.
    fn mul(self, o: &CurvePoly) -> CurvePoly {
        let mut p = CurvePoly::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in o.terms() {
                assert!(i + j + k + l <= MAX_DEGREE, "product exceeds degree {MAX_DEGREE}");
                p.c[i + k][j + l] += a * b;
            }
        }
        p
    }
}

impl Mul<&Rat> for &CurvePoly {
    type Output = CurvePoly;
    fn mul(self, r: &Rat) -> CurvePoly {
        let mut p = self.clone();
        for v in p.c.iter_mut().flatten() {
            *v *= r;
        }
        p
    }
}

impl fmt::Debug for CurvePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CurvePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, v) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({v})")?;
            if i > 0 {
                write!(f, "*x^{i}")?;
            }
            if j > 0 {
                write!(f, "*y^{j}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
