use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::geometry::{HPoint, Rat};
use crate::search::{BlockOrientation, KSystem};
use crate::triples::{build_triples, LabeledSets, TripleSystem};

use super::GenError;

#[derive(Clone, Debug)]
pub struct KSystemInstance {
    pub sets: LabeledSets,
    pub triples: TripleSystem,
    pub expected: KSystem,
}

/// `s_i = i · max(10, 2k) · d`.
pub fn default_offsets(k: usize, d: &Rat) -> Vec<Rat> {
    let step = Rat::from_integer((10.max(2 * k) as i64).into()) * d;
    (0..k).map(|i| Rat::from_integer((i as i64).into()) * &step).collect()
}

/// A-blocks `s_i + ℓd` on `y = 2`, C-blocks `t_j + md` on `y = 0`
/// (`ℓ, m = 1..k`) and centres `((s_i + t_j + (k+1)d) / 2, 1)`: the
/// reflection through a centre sends `s_i + ℓd` to `t_j + (k+1−ℓ)d`.
/// Coinciding centres are merged; B is sorted by abscissa.
pub fn gen_ksystem(k: usize, d: &Rat, s: &[Rat], t: &[Rat]) -> Result<KSystemInstance, GenError> {
    if k == 0 {
        return Err(GenError::InvalidParameter("k >= 1"));
    }
    if !d.is_positive() {
        return Err(GenError::InvalidParameter("spacing d must be positive"));
    }
    if s.len() != k || t.len() != k {
        return Err(GenError::InvalidParameter("need k offsets per side"));
    }
    let min_gap = Rat::from_integer(((k - 1) as i64).into()) * d;
    for w in s.windows(2).chain(t.windows(2)) {
        if w[1] <= w[0] {
            return Err(GenError::InvalidParameter("offsets must be increasing"));
        }
        if &w[1] - &w[0] <= min_gap {
            return Err(GenError::OverlappingBlocks);
        }
    }
    let two = Rat::from_integer(2.into());
    let step = |o: &Rat, l: usize| o + Rat::from_integer((l as i64).into()) * d;
    let on = |offsets: &[Rat], y: &Rat| -> Vec<HPoint> {
        offsets.iter().flat_map(|o| (1..=k).map(|l| HPoint::new(step(o, l), y.clone()))).collect()
    };
    let a = on(s, &two);
    let c = on(t, &Rat::zero());

    let centre = |i: usize, j: usize| (&s[i] + &t[j] + Rat::from_integer(((k + 1) as i64).into()) * d) / &two;
    let mut xs: BTreeMap<Rat, usize> = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            xs.insert(centre(i, j), 0);
        }
    }
    for (n, v) in xs.values_mut().enumerate() {
        *v = n;
    }
    let one = Rat::from_integer(1.into());
    let b: Vec<HPoint> = xs.keys().map(|x| HPoint::new(x.clone(), one.clone())).collect();
    let centers: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| xs[&centre(i, j)]).collect()).collect();

    let sets = LabeledSets::new(a, b, c, false).map_err(|_| GenError::Verification("k-system sets"))?;
    let expected = KSystem {
        k,
        a_blocks: (0..k).map(|i| (i * k..(i + 1) * k).collect()).collect(),
        c_blocks: (0..k).map(|j| (j * k..(j + 1) * k).collect()).collect(),
        centers,
        orientation: BlockOrientation::Ascending,
    };
    let triples = build_triples(&sets);
    if expected.verify(&triples).is_err() {
        return Err(GenError::Verification("planted k-system edge not collinear"));
    }
    Ok(KSystemInstance { sets, triples, expected })
}
