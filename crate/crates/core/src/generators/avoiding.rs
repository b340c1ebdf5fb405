use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::approx::{count_directions_approx, regular_ngon, ApproxPoint, DEFAULT_TOLERANCE};
use crate::geometry::{int, line_through, meet, rat, HLine, HPoint};
use crate::triples::{mutually_avoiding, LabeledSets};

use super::GenError;

fn distinct_ints(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (lo..hi).collect();
    pool.shuffle(rng);
    pool.truncate(n);
    pool.sort();
    pool
}

/// Two thin parabolic arcs `x = y²/K` and `x = sep + y²/K` (`|y| ≤ h`,
/// `K = 100h`) and C where random A–B lines cross `x = 2·sep`. Every line
/// through two points of one cluster is nearly vertical and stays far from
/// the other two.
pub fn gen_mutually_avoiding(n: usize, seed: u64) -> Result<LabeledSets, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 5 * n as i64;
    let k = 100 * h;
    for widen in 0..5 {
        let sep = 20 * h << widen;
        let arc = |ys: Vec<i64>, x0: i64| ys.into_iter().map(|y| HPoint::new(int(x0) + rat(y * y, k), int(y))).collect::<Vec<_>>();
        let a = arc(distinct_ints(&mut rng, n, -h, h + 1), 0);
        let b = arc(distinct_ints(&mut rng, n, -h, h + 1), sep);
        let far = HLine::from_coeffs(&int(1), &int(0), &int(-2 * sep)).expect("vertical line");
        let mut c = BTreeSet::new();
        let mut tries = 0;
        while c.len() < n && tries < 50 * n * n + 100 {
            tries += 1;
            let (p, q) = (&a[rng.gen_range(0..n)], &b[rng.gen_range(0..n)]);
            let l = line_through(p, q).expect("disjoint clusters");
            if let Ok(x) = meet(&l, &far) {
                c.insert(x);
            }
        }
        if c.len() < n {
            continue;
        }
        let mut c: Vec<HPoint> = c.into_iter().collect();
        c.sort_by_key(|p| p.y());
        let sets = LabeledSets::new(a, b, c, false).map_err(|_| GenError::Verification("avoiding sets"))?;
        if mutually_avoiding(&sets).holds {
            return Ok(sets);
        }
    }
    Err(GenError::ConstructionFailed("could not certify mutual avoidance"))
}

/// A and C random `n`-subsets of `{0..3n}` on `y = 2` and `y = 0`, B a
/// random `n`-subset of `{0, ½, .., 3n − ½}` on `y = 1`. Dense: each b sees
/// about a third of A reflected into C.
pub fn gen_parallel_lines(n: usize, seed: u64) -> Result<LabeledSets, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = 3 * n as i64;
    let on = |xs: Vec<i64>, den: i64, y: i64| xs.into_iter().map(|x| HPoint::new(rat(x, den), int(y))).collect::<Vec<_>>();
    let a = on(distinct_ints(&mut rng, n, 0, width), 1, 2);
    let c = on(distinct_ints(&mut rng, n, 0, width), 1, 0);
    let b = on(distinct_ints(&mut rng, n, 0, 2 * width), 2, 1);
    LabeledSets::new(a, b, c, false).map_err(|_| GenError::Verification("parallel sets"))
}

/// Vertices of the regular `n`-gon in floating point; checked to determine
/// exactly `n` directions at the default tolerance.
pub fn gen_ngon(n: usize) -> Result<Vec<ApproxPoint>, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter("n >= 3"));
    }
    let pts = regular_ngon(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if count_directions_approx(&pts, &pairs, DEFAULT_TOLERANCE) != n {
        return Err(GenError::Verification("direction count differs from n"));
    }
    Ok(pts)
}

