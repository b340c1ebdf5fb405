use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GeomError, Rat};

/// Clears denominators of a rational vector.
pub(crate) fn clear_denominators(v: &[Rat]) -> alloc::vec::Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    v.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

/// Divides out the gcd and makes the first nonzero entry positive.
/// Returns `None` for the zero vector.
pub(crate) fn canonicalize(v: &mut [BigInt]) -> Option<()> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let neg = v.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if neg {
            *x = -&*x;
        }
    }
    Some(())
}

fn canonical3(v: [BigInt; 3]) -> Option<[BigInt; 3]> {
    let mut v = v;
    canonicalize(&mut v)?;
    Some(v)
}

fn rat3(x: &Rat, y: &Rat, w: &Rat) -> [BigInt; 3] {
    let v = clear_denominators(&[x.clone(), y.clone(), w.clone()]);
    let mut it = v.into_iter();
    [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
}

/// A point of the projective plane in canonical homogeneous coordinates.
///
/// Ordering is lexicographic on the canonical integer coordinates, which
/// gives deterministic iteration in ordered collections.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HPoint([BigInt; 3]);

impl HPoint {
    pub fn from_integers(x: BigInt, y: BigInt, w: BigInt) -> Result<Self, GeomError> {
        canonical3([x, y, w]).map(HPoint).ok_or(GeomError::ZeroVector)
    }

    pub fn from_homogeneous(x: &Rat, y: &Rat, w: &Rat) -> Result<Self, GeomError> {
        canonical3(rat3(x, y, w)).map(HPoint).ok_or(GeomError::ZeroVector)
    }

    /// The finite point `(x, y)`.
    pub fn new(x: Rat, y: Rat) -> Self {
        Self::from_homogeneous(&x, &y, &Rat::one()).expect("w = 1 is nonzero")
    }

    /// The finite point with integer coordinates `(x, y)`.
    pub fn int(x: i64, y: i64) -> Self {
        Self::from_integers(x.into(), y.into(), BigInt::one()).expect("w = 1 is nonzero")
    }

    /// The point at infinity in direction `(dx, dy)`.
    pub fn direction(dx: &Rat, dy: &Rat) -> Result<Self, GeomError> {
        Self::from_homogeneous(dx, dy, &Rat::zero())
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        !self.0[2].is_zero()
    }

    pub fn x(&self) -> Option<Rat> {
        self.is_finite().then(|| Rat::new(self.0[0].clone(), self.0[2].clone()))
    }

    pub fn y(&self) -> Option<Rat> {
        self.is_finite().then(|| Rat::new(self.0[1].clone(), self.0[2].clone()))
    }

    pub fn to_affine(&self) -> Option<(Rat, Rat)> {
        Some((self.x()?, self.y()?))
    }

    /// Representative with `w >= 0`; finite points get `w > 0`, which makes
    /// determinant signs meaningful as orientations.
    pub(crate) fn oriented(&self) -> [BigInt; 3] {
        if self.0[2].is_negative() {
            [-&self.0[0], -&self.0[1], -&self.0[2]]
        } else {
            self.0.clone()
        }
    }

    pub fn to_f64(&self) -> Option<(f64, f64)> {
        let (x, y) = self.to_affine()?;
        Some((rat_to_f64(&x), rat_to_f64(&y)))
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_affine() {
            Some((x, y)) => write!(f, "({x}, {y})"),
            None => write!(f, "[{}:{}:0]", self.0[0], self.0[1]),
        }
    }
}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A line `aX + bY + cW = 0` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HLine([BigInt; 3]);

impl HLine {
    pub fn from_integers(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, GeomError> {
        canonical3([a, b, c]).map(HLine).ok_or(GeomError::ZeroVector)
    }

    pub fn from_coeffs(a: &Rat, b: &Rat, c: &Rat) -> Result<Self, GeomError> {
        canonical3(rat3(a, b, c)).map(HLine).ok_or(GeomError::ZeroVector)
    }

    pub fn x_axis() -> Self {
        HLine([BigInt::zero(), BigInt::one(), BigInt::zero()])
    }

    pub fn y_axis() -> Self {
        HLine([BigInt::one(), BigInt::zero(), BigInt::zero()])
    }

    pub fn at_infinity() -> Self {
        HLine([BigInt::zero(), BigInt::zero(), BigInt::one()])
    }

    /// The horizontal line `y = c`.
    pub fn horizontal(c: &Rat) -> Self {
        Self::from_coeffs(&Rat::zero(), &Rat::one(), &-c).expect("b = 1")
    }

    pub fn coeffs(&self) -> &[BigInt; 3] {
        &self.0
    }

    /// `a·x + b·y + c·w` on the point's canonical coordinates.
    pub fn eval(&self, p: &HPoint) -> BigInt {
        dot(&self.0, p.coords())
    }

    /// Sign of the line's form at a point, using the `w >= 0` representative.
    pub(crate) fn side(&self, p: &HPoint) -> i8 {
        sign(&dot(&self.0, &p.oriented()))
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub(crate) fn from_raw(v: [BigInt; 3]) -> Option<Self> {
        canonical3(v).map(HLine)
    }
}

impl HPoint {
    pub(crate) fn from_raw(v: [BigInt; 3]) -> Option<Self> {
        canonical3(v).map(HPoint)
    }
}

impl fmt::Debug for HLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}:{}:{}>", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for HLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub(crate) fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) fn det3(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    dot(a, &cross(b, c))
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
