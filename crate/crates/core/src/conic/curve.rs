use num_traits::{One, Zero};

use crate::geometry::{int, rat, Conic, HPoint, Rat};

use super::poly::CurvePoly;
use super::ConicError;

/// The two normalizations: where the base A-triple is sent, with the
/// carrier line of C sent to the x-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Base triple ↦ (0,1), (0,2), (1,1).
    T1,
    /// Base triple ↦ (0,½), (0,1), (1,1).
    T2,
}

impl Mode {
    /// Target points, in the order paired with the feet `u`, `t`, `s`.
    pub fn base(self) -> [HPoint; 3] {
        match self {
            Mode::T1 => [HPoint::int(0, 1), HPoint::int(0, 2), HPoint::int(1, 1)],
            Mode::T2 => [HPoint::new(int(0), rat(1, 2)), HPoint::int(0, 1), HPoint::int(1, 1)],
        }
    }

    /// Ordinates at which some foot is undefined.
    pub fn forbidden_ordinates(self) -> [Rat; 2] {
        match self {
            Mode::T1 => [int(1), int(2)],
            Mode::T2 => [int(1), rat(1, 2)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::T1 => "t1",
            Mode::T2 => "t2",
        }
    }

    /// Each foot as `(numerator, denominator)`, both affine in `x, y`:
    /// the x-axis meet of the line from `(x, y)` to the matching base point.
    fn foot_parts(self) -> [(CurvePoly, CurvePoly); 3] {
        let x = CurvePoly::x();
        let y = CurvePoly::y();
        let one = CurvePoly::constant(Rat::one());
        let two = CurvePoly::constant(int(2));
        let one_minus_y = &one - &y;
        match self {
            Mode::T1 => [
                (x.clone(), one_minus_y.clone()),
                (&x * &int(2), &two - &y),
                (&x - &y, one_minus_y),
            ],
            Mode::T2 => [
                (x.clone(), &one - &(&y * &int(2))),
                (x.clone(), one_minus_y.clone()),
                (&x - &y, one_minus_y),
            ],
        }
    }
}

/// The feet `(u, t, s)` on the x-axis of the lines joining `(x, y)` to the
/// three base points of `mode`.
pub fn feet_on_axis(x: &Rat, y: &Rat, mode: Mode) -> Result<(Rat, Rat, Rat), ConicError> {
    if mode.forbidden_ordinates().contains(y) {
        return Err(ConicError::ForbiddenOrdinate(y.clone()));
    }
    let [u, t, s] = mode.foot_parts().map(|(n, d)| n.eval(x, y) / d.eval(x, y));
    Ok((u, t, s))
}

fn affine_triple(triple: &[HPoint; 3]) -> Result<[(Rat, Rat); 3], ConicError> {
    let mut out: [(Rat, Rat); 3] = Default::default();
    for (k, p) in triple.iter().enumerate() {
        let (a, b) = p.to_affine().ok_or(ConicError::NotFinite)?;
        if b.is_zero() {
            return Err(ConicError::PointOnAxis(k));
        }
        out[k] = (a, b);
    }
    Ok(out)
}

fn det3(m: &[[CurvePoly; 3]; 3]) -> CurvePoly {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// The concurrency determinant of the lines from `(a_k, b_k)` to the feet
/// of `(x, y)`, with denominators cleared: row `k` is
/// `(d_k b_k, d_k a_k − n_k, b_k n_k)` for foot `n_k / d_k`.
pub fn curve_determinant(triple: &[HPoint; 3], mode: Mode) -> Result<CurvePoly, ConicError> {
    let pts = affine_triple(triple)?;
    let parts = mode.foot_parts();
    let rows: [[CurvePoly; 3]; 3] = core::array::from_fn(|k| {
        let (a, b) = &pts[k];
        let (n, d) = &parts[k];
        [&d.clone() * b, &(d * a) - n, n * b]
    });
    Ok(det3(&rows))
}

/// Divides out the x-axis factor `y`, leaving the quadratic.
pub fn axis_quotient(p: &CurvePoly) -> Result<CurvePoly, ConicError> {
    if p.is_zero() {
        return Err(ConicError::ZeroPolynomial);
    }
    p.div_y().ok_or(ConicError::NotDivisible)
}

/// The conic left after factoring the x-axis out of a curve determinant.
pub fn factor_out_axis(p: &CurvePoly) -> Result<Conic, ConicError> {
    axis_quotient(p)?.to_conic().map_err(ConicError::Geometry)
}

/// The identities making a triple similar to the base triple relative to
/// the x-axis; `ratio` is `c` with `(a₁, b₁) = c·(a₂, b₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateWitness {
    pub mode: Mode,
    pub ratio: Rat,
    pub triple: [(Rat, Rat); 3],
}

/// T1: `(a₁,b₁) = c(a₂,b₂)`, `b₁ = b₃`, `a₃ = a₁ − 2c + 2`.
/// T2: `a₁b₂ = a₂b₁`, `b₂ = b₃`, `a₃ = a₂ + b₂/b₁ − 1`.
pub fn degenerate_witness(triple: &[HPoint; 3], mode: Mode) -> Option<DegenerateWitness> {
    let pts = affine_triple(triple).ok()?;
    let [(a1, b1), (a2, b2), (a3, b3)] = &pts;
    if a1 * b2 != a2 * b1 {
        return None;
    }
    let c = b1 / b2;
    let two = int(2);
    let holds = match mode {
        Mode::T1 => b1 == b3 && *a3 == a1 - &c * &two + &two,
        Mode::T2 => b2 == b3 && *a3 == a2 + b2 / b1 - Rat::one(),
    };
    holds.then(|| DegenerateWitness { mode, ratio: c, triple: pts.clone() })
}
