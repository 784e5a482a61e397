use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::snf::{smith_invariants, IntMatrix};
use crate::error::{OracleError, PolyError};
use crate::partition::{normalize_set, Partition};
use crate::poly::{checked_pow, valuation};
use crate::polygon::{LatticePolygon, ValuationProfile};
use crate::Rational;

/// How the off-diagonal block was explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Every `X` modulo `l^N`.
    FullSweep,
    /// Every `X` with `X_ij` reduced modulo `l^{min(a_i, b_j)}`. Row and
    /// column operations with the diagonal blocks change `X_ij` by multiples
    /// of `l^{a_i}` and `l^{b_j}`, so this covers every class.
    ReducedSweep,
    /// Uniform random `X` modulo `l^N` from a seeded generator.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CokernelReport {
    /// Observed Smith invariants of `[[A, X], [0, B]]`, descending lexicographic.
    pub cokernels: Vec<Partition>,
    /// True for exhaustive strategies.
    pub complete: bool,
    pub strategy: Strategy,
    /// Number of matrices evaluated.
    pub evaluated: u64,
}

/// Smith invariants of `[[diag(l^a), X], [0, diag(l^b)]]` over `X`.
///
/// Uses the full sweep when it fits in `budget`, then the reduced sweep,
/// and otherwise `budget` seeded samples.
pub fn matrix_cokernel_oracle(a: &Partition, b: &Partition, l: u64, prec: u32, budget: u64, seed: u64) -> Result<CokernelReport, OracleError> {
    if a.is_empty() || b.is_empty() {
        return Err(OracleError::EmptyBlock);
    }
    let need = a.sum() + b.sum() + 1;
    if prec < need {
        return Err(OracleError::PrecisionTooSmall { got: prec, need });
    }
    let modulus = checked_pow(l, prec).ok_or(PolyError::Overflow)?;
    let (s, t) = (a.len(), b.len());
    let cells: Vec<(usize, usize)> = (0..s).flat_map(|i| (0..t).map(move |j| (i, j))).collect();
    let diag: Vec<i128> = a.parts().iter().chain(b.parts()).map(|&e| checked_pow(l, e).ok_or(PolyError::Overflow)).collect::<Result<_, _>>()?;
    let base = IntMatrix::diagonal(&diag);

    let full_count = (modulus as u128).checked_pow(cells.len() as u32);
    let reduced_moduli: Vec<i128> =
        cells.iter().map(|&(i, j)| checked_pow(l, a.part(i).min(b.part(j))).ok_or(PolyError::Overflow)).collect::<Result<_, _>>()?;
    let reduced_count = reduced_moduli.iter().try_fold(1u128, |acc, &m| acc.checked_mul(m as u128));

    let mut seen = BTreeSet::new();
    let mut evaluated = 0u64;
    let mut eval = |x: &[i128]| -> Result<(), OracleError> {
        let mut m = base.clone();
        for (&(i, j), &v) in cells.iter().zip(x) {
            m.set(i, s + j, v);
        }
        seen.insert(smith_invariants(&m, l, Some(modulus))?);
        evaluated += 1;
        Ok(())
    };
    let strategy = if full_count.is_some_and(|c| c <= budget as u128) {
        sweep(&vec![modulus; cells.len()], &mut eval)?;
        Strategy::FullSweep
    } else if reduced_count.is_some_and(|c| c <= budget as u128) {
        sweep(&reduced_moduli, &mut eval)?;
        Strategy::ReducedSweep
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let x: Vec<i128> = cells.iter().map(|_| rng.random_range(0..modulus)).collect();
            eval(&x)?;
        }
        Strategy::Sampled
    };
    Ok(CokernelReport { cokernels: normalize_set(seen.into_iter().collect()), complete: strategy != Strategy::Sampled, strategy, evaluated })
}

/// Calls `f` on every vector with `0 <= x_k < moduli[k]`.
fn sweep(moduli: &[i128], f: &mut impl FnMut(&[i128]) -> Result<(), OracleError>) -> Result<(), OracleError> {
    let mut x = vec![0i128; moduli.len()];
    loop {
        f(&x)?;
        let mut k = 0;
        loop {
            if k == x.len() {
                return Ok(());
            }
            x[k] += 1;
            if x[k] < moduli[k] {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

/// Root valuations (descending) of `t^2 - tr t + det` read from residues
/// modulo `l^N`, or `None` when `det ≡ 0`. A trace `≡ 0` is dropped from
/// the point set: its valuation is at least `N`, above the chord.
fn quadratic_profile(tr: i128, det: i128, l: u64) -> Option<Vec<Rational>> {
    let vd = valuation(det, l)?;
    let mut pts = vec![(0u32, Rational::from_integer(0))];
    if let Some(vt) = valuation(tr, l) {
        pts.push((1, Rational::from_integer(vt as i64)));
    }
    pts.push((2, Rational::from_integer(vd as i64)));
    Some(ValuationProfile::from_polygon(&LatticePolygon::lower_hull(&pts)).vals().to_vec())
}

/// For every `2 x 2` matrix over `Z/l^N` with nonzero determinant, groups
/// the cokernel Smith invariants by the root valuations of the
/// characteristic polynomial.
pub fn operator_census(l: u64, prec: u32) -> Result<BTreeMap<Vec<Rational>, Vec<Partition>>, OracleError> {
    let modulus = checked_pow(l, prec).ok_or(PolyError::Overflow)?;
    if (modulus as u128).checked_pow(4).is_none_or(|c| c > 1 << 24) {
        return Err(PolyError::Overflow.into());
    }
    let mut census: BTreeMap<Vec<Rational>, BTreeSet<Partition>> = BTreeMap::new();
    let mut x = [0i128; 4];
    let moduli = [modulus; 4];
    sweep(&moduli, &mut |e| {
        x.copy_from_slice(e);
        let tr = (x[0] + x[3]).rem_euclid(modulus);
        let det = (x[0] * x[3] - x[1] * x[2]).rem_euclid(modulus);
        if let Some(profile) = quadratic_profile(tr, det, l) {
            let m = IntMatrix::new(vec![vec![x[0], x[1]], vec![x[2], x[3]]])?;
            census.entry(profile).or_default().insert(smith_invariants(&m, l, Some(modulus))?);
        }
        Ok(())
    })?;
    Ok(census.into_iter().map(|(k, v)| (k, normalize_set(v.into_iter().collect()))).collect())
}

/// Cokernels of all `d x d` operators modulo `l^N` whose characteristic
/// polynomial has the requested root valuations. Only `d = 2` is supported.
pub fn operator_group_oracle(target: &ValuationProfile<Rational>, l: u64, prec: u32, d: usize) -> Result<Vec<Partition>, OracleError> {
    if d != 2 || target.len() != 2 {
        return Err(OracleError::UnsupportedDimension(if d != 2 { d } else { target.len() }));
    }
    let total = target.total();
    let need = total.ceil().to_integer() as u32 + 1;
    if prec < need {
        return Err(OracleError::PrecisionTooSmall { got: prec, need });
    }
    let census = operator_census(l, prec)?;
    Ok(census.get(target.vals()).cloned().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn prof(v: &[i64]) -> ValuationProfile<Rational> {
        ValuationProfile::new(v.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    #[test]
    fn cokernel_examples() {
        let r = matrix_cokernel_oracle(&p(&[1]), &p(&[1]), 2, 3, 1000, 0).unwrap();
        assert_eq!(r.cokernels, vec![p(&[2, 0]), p(&[1, 1])]);
        assert!(r.complete);
        assert_eq!(r.strategy, Strategy::FullSweep);
        assert_eq!(r.evaluated, 8);

        let r = matrix_cokernel_oracle(&p(&[1]), &p(&[0]), 2, 2, 1000, 0).unwrap();
        assert_eq!(r.cokernels, vec![p(&[1, 0])]);

        let r = matrix_cokernel_oracle(&p(&[2, 1]), &p(&[1, 1]), 3, 6, 100, 0).unwrap();
        assert_eq!(r.strategy, Strategy::ReducedSweep);
        assert!(r.complete);

        let r = matrix_cokernel_oracle(&p(&[3, 3]), &p(&[3, 3]), 3, 13, 50, 7).unwrap();
        assert_eq!(r.strategy, Strategy::Sampled);
        assert!(!r.complete);
        assert_eq!(r.evaluated, 50);
        let again = matrix_cokernel_oracle(&p(&[3, 3]), &p(&[3, 3]), 3, 13, 50, 7).unwrap();
        assert_eq!(r, again);

        assert!(matches!(matrix_cokernel_oracle(&p(&[1]), &p(&[1]), 2, 2, 10, 0), Err(OracleError::PrecisionTooSmall { got: 2, need: 3 })));
    }

    #[test]
    fn operator_examples() {
        assert_eq!(operator_group_oracle(&prof(&[1, 2]), 2, 4, 2).unwrap(), vec![p(&[3, 0]), p(&[2, 1])]);
        assert_eq!(operator_group_oracle(&prof(&[0, 3]), 2, 4, 2).unwrap(), vec![p(&[3, 0])]);
        assert_eq!(operator_group_oracle(&prof(&[0, 0]), 2, 4, 2).unwrap(), vec![p(&[0, 0])]);
        assert!(operator_group_oracle(&prof(&[0, 0, 0]), 2, 4, 3).is_err());
    }
}
