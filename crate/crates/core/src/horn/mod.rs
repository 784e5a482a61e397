//! Horn triples.
//!
//! `U^n_p` is the set of triples `(I, J, K)` of `p`-subsets of `{1..n}` with
//! `ΣI + ΣJ = ΣK + p(p+1)/2`. `T^n_p` keeps the members of `U^n_p` whose
//! index sequences satisfy, for every `(F, G, H) ∈ T^p_r` with `r < p`,
//!
//! ```text
//! Σ_{f∈F} i_f + Σ_{g∈G} j_g ≤ Σ_{h∈H} k_h + r(r+1)/2.
//! ```
//!
//! Each member gives the inequality `Σ_I a + Σ_J b ≥ Σ_K c` on eigenvalue
//! (or Smith-invariant) tuples.

mod cache;
mod form;
mod reduce;
mod table;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::HornError;
use crate::partition::Partition;

pub use cache::{HornCache, CACHE_ENV};
pub use form::{Inequality, Layout, LinearForm, Relation};
pub(crate) use reduce::distinct_forms;
pub use reduce::{full_list, reduce_full, reduce_system, redundant_members, Reduction, REDUCE_LIMIT};
pub use table::{HornTable, DEFAULT_LIMIT};

/// Strictly increasing subset of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet {
    elems: Vec<usize>,
    n: usize,
}

impl IndexSet {
    pub fn new(elems: Vec<usize>, n: usize) -> Result<Self, HornError> {
        let ok = elems.iter().all(|&e| (1..=n).contains(&e)) && elems.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(HornError::BadIndexSet { elems, n });
        }
        Ok(Self { elems, n })
    }

    /// `{1..p}` inside `{1..n}`.
    pub fn initial(p: usize, n: usize) -> Self {
        Self { elems: (1..=p).collect(), n }
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.elems.iter().sum()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn complement(&self) -> Self {
        Self { elems: (1..=self.n).filter(|x| !self.contains(*x)).collect(), n: self.n }
    }

    /// `i_f` for `f ∈ F`, one-based.
    fn pick_sum(&self, positions: &[usize]) -> usize {
        positions.iter().map(|&f| self.elems[f - 1]).sum()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Three index sets of equal size `p` in `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HornTriple {
    pub i: IndexSet,
    pub j: IndexSet,
    pub k: IndexSet,
}

impl HornTriple {
    /// Validates equal cardinalities, a common ambient size and the trace condition.
    pub fn new(i: IndexSet, j: IndexSet, k: IndexSet) -> Result<Self, HornError> {
        if i.len() != j.len() || j.len() != k.len() || i.n != j.n || j.n != k.n {
            return Err(HornError::CardinalityMismatch);
        }
        let t = Self { i, j, k };
        if !t.satisfies_trace() {
            return Err(HornError::TraceCondition);
        }
        Ok(t)
    }

    pub fn from_vecs(n: usize, i: Vec<usize>, j: Vec<usize>, k: Vec<usize>) -> Result<Self, HornError> {
        Self::new(IndexSet::new(i, n)?, IndexSet::new(j, n)?, IndexSet::new(k, n)?)
    }

    pub fn p(&self) -> usize {
        self.i.len()
    }

    pub fn n(&self) -> usize {
        self.i.n
    }

    pub fn satisfies_trace(&self) -> bool {
        let p = self.p();
        self.i.sum() + self.j.sum() == self.k.sum() + p * (p + 1) / 2
    }

    /// The Horn condition contributed by `(F, G, H) ∈ T^p_r`.
    fn passes(&self, test: &HornTriple) -> bool {
        let r = test.p();
        self.i.pick_sum(test.i.elems()) + self.j.pick_sum(test.j.elems()) <= self.k.pick_sum(test.k.elems()) + r * (r + 1) / 2
    }

    /// `(I^c, J^c, K^c)` carrying the reversed sense.
    pub fn complement(&self) -> Result<SensedTriple, HornError> {
        if self.p() == self.n() {
            return Err(HornError::EmptyComplement);
        }
        Ok(SensedTriple { triple: HornTriple { i: self.i.complement(), j: self.j.complement(), k: self.k.complement() }, relation: Relation::Le })
    }

    fn key(&self) -> (usize, &[usize], &[usize], &[usize]) {
        (self.p(), self.i.elems(), self.j.elems(), self.k.elems())
    }
}

impl PartialOrd for HornTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(p, I, J, K)`.
impl Ord for HornTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key()).then(self.n().cmp(&other.n()))
    }
}

impl fmt::Display for HornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

/// A triple together with the direction of its inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensedTriple {
    pub triple: HornTriple,
    pub relation: Relation,
}

impl SensedTriple {
    /// Complementing twice returns the original triple and sense.
    pub fn complement(&self) -> Result<SensedTriple, HornError> {
        let mut c = self.triple.complement()?;
        c.relation = self.relation.reversed();
        Ok(c)
    }

    /// Evaluates `Σ_I a + Σ_J b (≥ or ≤) Σ_K c`.
    pub fn holds(&self, a: &Partition, b: &Partition, c: &Partition) -> Result<bool, HornError> {
        let (lhs, rhs) = sides(&self.triple, a, b, c)?;
        Ok(match self.relation {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
        })
    }
}

/// Which side of the full index set a tilde triple keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StMode {
    /// `I ∖ M_s` and `J ∖ M_t` are initial segments above `s` and `t`.
    Tilde,
    /// Tilde, and additionally `#(I ∩ M_s) + #(J ∩ M_t) = p`.
    Strict,
}

impl StMode {
    pub fn admits(self, triple: &HornTriple, s: usize, t: usize) -> bool {
        let (ti, tail_i) = split_at(&triple.i, s);
        let (tj, tail_j) = split_at(&triple.j, t);
        let tilde = is_initial_above(tail_i, s) && is_initial_above(tail_j, t);
        match self {
            StMode::Tilde => tilde,
            StMode::Strict => tilde && ti.len() + tj.len() == triple.p(),
        }
    }
}

fn split_at(set: &IndexSet, bound: usize) -> (&[usize], &[usize]) {
    let cut = set.elems.partition_point(|&x| x <= bound);
    set.elems.split_at(cut)
}

fn is_initial_above(tail: &[usize], bound: usize) -> bool {
    tail.iter().enumerate().all(|(pos, &x)| x == bound + pos + 1)
}

/// `λ(I) = (i_p - p, ..., i_1 - 1)`.
pub fn lambda_of(set: &IndexSet) -> Partition {
    let parts: Vec<u32> = set.elems.iter().enumerate().rev().map(|(pos, &x)| (x - pos - 1) as u32).collect();
    Partition::new(parts).expect("strictly increasing sets give decreasing lambda")
}

/// `Σ_I a + Σ_J b` and `Σ_K c` with every tuple read at length `n`.
fn sides(triple: &HornTriple, a: &Partition, b: &Partition, c: &Partition) -> Result<(u64, u64), HornError> {
    let n = triple.n();
    for x in [a, b, c] {
        if x.len() != n {
            return Err(HornError::LengthMismatch { got: x.len(), n });
        }
    }
    let sum = |set: &IndexSet, v: &Partition| set.elems.iter().map(|&i| v.part(i - 1) as u64).sum::<u64>();
    Ok((sum(&triple.i, a) + sum(&triple.j, b), sum(&triple.k, c)))
}

/// `Σ_I a + Σ_J b ≥ Σ_K c` for tuples of length `n`.
pub fn eval_inequality(triple: &HornTriple, a: &Partition, b: &Partition, c: &Partition) -> Result<bool, HornError> {
    let (lhs, rhs) = sides(triple, a, b, c)?;
    Ok(lhs >= rhs)
}

/// All `p`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=n + 1 - left {
            cur.push(x);
            rec(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(1, n, p, &mut Vec::with_capacity(p), &mut out);
    }
    out
}

/// `U^n_p` in canonical order.
pub fn enumerate_u(n: usize, p: usize) -> Result<Vec<HornTriple>, HornError> {
    if p == 0 || p > n {
        return Err(HornError::BadCardinality { n, p });
    }
    let subs = subsets(n, p);
    let max_sum = (n - p + 1..=n).sum::<usize>();
    let mut by_sum: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); max_sum + 1];
    for s in &subs {
        by_sum[s.iter().sum::<usize>()].push(s);
    }
    let shift = p * (p + 1) / 2;
    let mut out = Vec::new();
    for i in &subs {
        let si: usize = i.iter().sum();
        for j in &subs {
            let target = si + j.iter().sum::<usize>();
            if target < shift || target - shift > max_sum {
                continue;
            }
            for k in &by_sum[target - shift] {
                out.push(HornTriple { i: IndexSet { elems: i.clone(), n }, j: IndexSet { elems: j.clone(), n }, k: IndexSet { elems: (*k).clone(), n } });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Keeps the members of `candidates` that pass every test triple.
pub(crate) fn filter_by(candidates: Vec<HornTriple>, tests: &[HornTriple]) -> Vec<HornTriple> {
    candidates.into_iter().filter(|t| tests.iter().all(|x| t.passes(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize], n: usize) -> IndexSet {
        IndexSet::new(v.to_vec(), n).unwrap()
    }

    fn triple(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> HornTriple {
        HornTriple::from_vecs(n, i.to_vec(), j.to_vec(), k.to_vec()).unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn u_examples() {
        let u41 = enumerate_u(4, 1).unwrap();
        assert_eq!(u41.len(), 10);
        assert!(u41.iter().all(|t| t.k.elems()[0] == t.i.elems()[0] + t.j.elems()[0] - 1));
        assert_eq!(enumerate_u(2, 2).unwrap(), vec![triple(2, &[1, 2], &[1, 2], &[1, 2])]);
        assert!(enumerate_u(4, 2).unwrap().contains(&triple(4, &[2, 4], &[1, 3], &[3, 4])));
        assert!(enumerate_u(3, 4).is_err());
        assert!(enumerate_u(3, 0).is_err());
    }

    #[test]
    fn u_is_sorted_and_unique() {
        let u = enumerate_u(5, 2).unwrap();
        assert!(u.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn triple_validation() {
        assert!(HornTriple::from_vecs(4, vec![1], vec![1], vec![2]).is_err());
        assert!(HornTriple::from_vecs(4, vec![1, 2], vec![1], vec![1]).is_err());
        assert!(IndexSet::new(vec![2, 2], 4).is_err());
        assert!(IndexSet::new(vec![5], 4).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_of(&IndexSet::initial(3, 5)), part(&[0, 0, 0]));
        assert_eq!(lambda_of(&set(&[2, 4], 5)), part(&[2, 1]));
        assert_eq!(lambda_of(&set(&[1, 3, 6], 6)), part(&[3, 1, 0]));
    }

    #[test]
    fn eval_examples() {
        let (a, b, c) = (part(&[2, 1]), part(&[1, 1]), part(&[3, 2]));
        assert!(eval_inequality(&triple(2, &[1], &[1], &[1]), &a, &b, &c).unwrap());
        assert!(eval_inequality(&triple(2, &[1], &[2], &[2]), &a, &b, &c).unwrap());
        let (a, b, c) = (part(&[2, 1, 0]), part(&[1, 1, 0]), part(&[3, 2, 0]));
        assert!(eval_inequality(&triple(3, &[2], &[2], &[3]), &a, &b, &c).unwrap());
        assert!(eval_inequality(&triple(3, &[2], &[2], &[3]), &part(&[2, 1]), &b, &c).is_err());
    }

    #[test]
    fn complement_examples() {
        let t = triple(2, &[1], &[1], &[1]);
        let c = t.complement().unwrap();
        assert_eq!((c.triple.i.elems(), c.triple.j.elems(), c.triple.k.elems()), (&[2][..], &[2][..], &[2][..]));
        assert_eq!(c.relation, Relation::Le);
        let back = c.complement().unwrap();
        assert_eq!(back.triple, t);
        assert_eq!(back.relation, Relation::Ge);
        assert!(triple(2, &[1, 2], &[1, 2], &[1, 2]).complement().is_err());
    }

    #[test]
    fn complement_sense_holds_under_trace() {
        // a_1 + b_1 >= c_1 on n = 2 becomes a_2 + b_2 <= c_2.
        let t = triple(2, &[1], &[1], &[1]);
        let c = t.complement().unwrap();
        let (a, b, cc) = (part(&[2, 1]), part(&[1, 0]), part(&[3, 1]));
        assert!(eval_inequality(&t, &a, &b, &cc).unwrap());
        assert!(c.holds(&a, &b, &cc).unwrap());
    }

    #[test]
    fn st_modes() {
        let t = triple(6, &[2], &[3], &[4]);
        assert!(StMode::Strict.admits(&t, 4, 2));
        let t = triple(6, &[1, 5], &[1, 3], &[1, 6]);
        assert!(StMode::Strict.admits(&t, 4, 2));
        let t = triple(6, &[1], &[1], &[1]);
        assert!(StMode::Tilde.admits(&t, 4, 2));
        assert!(!StMode::Strict.admits(&t, 4, 2));
        let t = triple(6, &[6], &[1], &[6]);
        assert!(!StMode::Tilde.admits(&t, 4, 2));
    }
}
