//! Admissible `l`-primary groups of rational points per isogeny class.
//!
//! For `l != p` the group is the cokernel of `1 - F` on the `l`-adic Tate
//! module, so every candidate exponent tuple `c` sums to `v_l(f(1))`. The
//! separable case is decided by polygon dominance alone. Repeated factors
//! are handled by splitting the module into a direct sum (two equal
//! quadratic blocks, or a scalar block `1 ± √q`) and asking which `c` can be
//! the Smith invariants of a block triangular extension of the pieces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{ClassifyError, WeilError};
use crate::partition::{normalize_set, Partition};
use crate::poly::{exact_sqrt, prime_factors, valuation, IntPoly};
use crate::smith::SmithEngine;
use crate::weil::{group_order, root_valuations, shape_of, Dispatch, Sign, WeilPolynomial};
use crate::Rational;

/// `Z/l^{c_1} + ... + Z/l^{c_d}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroupType {
    pub l: u64,
    pub exps: Partition,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.exps.parts().iter().filter(|&&c| c > 0).map(|c| format!("Z/{}^{c}", self.l)).collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Exponents of the two summands of a direct-sum decomposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WitnessPair {
    pub a: Partition,
    pub b: Partition,
}

impl WitnessPair {
    /// Group of the direct sum itself.
    pub fn direct_sum(&self) -> Partition {
        self.a.merge(&self.b)
    }
}

/// Direction of the comparison between a summand and the root valuations.
///
/// `Majorizing` keeps tuples whose top-`k` sums dominate those of the
/// valuations (Newton polygon above Hodge polygon). `Reversed` keeps the
/// opposite comparison; it exists so tests can show that it disagrees with
/// brute-force operator censuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Majorizing,
    Reversed,
}

/// Valuations of the roots of `P(1 - t)`, i.e. of `1 - α` over roots `α` of `P`.
pub fn shifted_valuations(poly: &IntPoly, l: u64) -> Result<Vec<Rational>, ClassifyError> {
    let shifted = poly.one_minus_t()?;
    Ok(root_valuations(&shifted, l)?.vals().to_vec())
}

fn order_valuation(poly: &IntPoly, l: u64) -> Result<u32, ClassifyError> {
    let v = poly.eval(1)?;
    valuation(v, l).ok_or(ClassifyError::Weil(WeilError::DegenerateOrder))
}

fn reversed_majorizes(c: &Partition, m: &[Rational]) -> bool {
    let mut sorted = m.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let mut lhs = Rational::from_integer(0);
    let mut rhs = Rational::from_integer(0);
    for (x, v) in c.parts().iter().zip(sorted) {
        lhs += Rational::from_integer(*x as i64);
        rhs += v;
        if lhs > rhs {
            return false;
        }
    }
    lhs == rhs
}

/// Exponent tuples of length `deg P` admissible for a separable `P`.
pub fn admissible(poly: &IntPoly, l: u64, orientation: Orientation) -> Result<Vec<Partition>, ClassifyError> {
    if !poly.is_squarefree() {
        return Err(ClassifyError::NotSeparable);
    }
    let m = shifted_valuations(poly, l)?;
    let total = order_valuation(poly, l)?;
    let keep = |c: &Partition| match orientation {
        Orientation::Majorizing => c.majorizes(&m),
        Orientation::Reversed => reversed_majorizes(c, &m),
    };
    Ok(Partition::all_with_sum(total, poly.degree(), total).into_iter().filter(keep).collect())
}

/// Groups for a separable Weil polynomial: every `c` with `Σc = v_l(f(1))`
/// whose Hodge polygon lies under the Newton polygon of `f(1 - t)`.
pub fn groups_separable(f: &IntPoly, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    admissible(f, l, Orientation::Majorizing)
}

fn require_degree(poly: &IntPoly, d: usize, what: &str) -> Result<(), ClassifyError> {
    if poly.degree() != d {
        return Err(ClassifyError::Shape(format!("{what} must have degree {d}, got {}", poly.degree())));
    }
    Ok(())
}

/// Admissible pairs for a separable quadratic.
pub fn admissible_pairs(quadratic: &IntPoly, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    require_degree(quadratic, 2, "factor")?;
    groups_separable(quadratic, l)
}

/// Sorted merges of `count` members of `items`, chosen with repetition.
fn merges_with_repetition(items: &[Partition], count: usize) -> Vec<Partition> {
    fn rec(items: &[Partition], start: usize, left: usize, acc: &mut Vec<u32>, out: &mut BTreeSet<Partition>) {
        if left == 0 {
            out.insert(Partition::from_unsorted(acc.clone()));
            return;
        }
        for i in start..items.len() {
            let len = acc.len();
            acc.extend_from_slice(items[i].parts());
            rec(items, i, left - 1, acc, out);
            acc.truncate(len);
        }
    }
    let mut out = BTreeSet::new();
    rec(items, 0, count, &mut Vec::new(), &mut out);
    normalize_set(out.into_iter().collect())
}

fn p_square_with(p: &IntPoly, l: u64, orientation: Orientation) -> Result<Vec<Partition>, ClassifyError> {
    require_degree(p, 2, "P")?;
    let pairs = admissible(p, l, orientation)?;
    Ok(merges_with_repetition(&pairs, 2))
}

/// Groups for `P^2` with `P` a separable quadratic: the module splits into
/// two copies of the `P`-part, so the group is a merge of two admissible pairs.
pub fn groups_p_square(p: &IntPoly, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    p_square_with(p, l, Orientation::Majorizing)
}

/// Groups for `P^r Q^s` with `Q` a linear factor dividing `P`: `r` admissible
/// pairs for `P` merged with `s` copies of `v_l(Q(1))`.
pub fn groups_cyclic_index(p: &IntPoly, q: &IntPoly, r: usize, s: usize, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    require_degree(p, 2, "P")?;
    require_degree(q, 1, "Q")?;
    if p.div_exact(q).is_none() {
        return Err(ClassifyError::Shape("Q does not divide P".into()));
    }
    let v = order_valuation(q, l)?;
    let tail = Partition::constant(v, s);
    if r == 0 {
        return Ok(vec![tail]);
    }
    let pairs = admissible_pairs(p, l)?;
    Ok(normalize_set(merges_with_repetition(&pairs, r).iter().map(|x| x.merge(&tail)).collect()))
}

/// `v_l(1 ± √q)`.
pub fn scalar_valuation(sign: Sign, q: u64, l: u64) -> Result<u32, ClassifyError> {
    let root = exact_sqrt(q).ok_or(ClassifyError::QNotSquare(q))?;
    valuation(sign.one_minus_root(root), l).ok_or(ClassifyError::Weil(WeilError::DegenerateOrder))
}

/// The only group for `(t ± √q)^s`: `1 - F` is the scalar `1 ± √q`.
pub fn groups_scalar(sign: Sign, q: u64, s: usize, l: u64) -> Result<Partition, ClassifyError> {
    Ok(Partition::constant(scalar_valuation(sign, q, l)?, s))
}

fn require_coprime(parts: &[&IntPoly]) -> Result<(), ClassifyError> {
    let prod = parts.iter().try_fold(IntPoly::monomial(0), |acc, p| acc.mul(p))?;
    if !prod.is_squarefree() {
        return Err(ClassifyError::NotSeparable);
    }
    Ok(())
}

fn require_not_root(p: &IntPoly, sign: Sign, q: u64) -> Result<u64, ClassifyError> {
    let root = exact_sqrt(q).ok_or(ClassifyError::QNotSquare(q))?;
    let lin = sign.factor(root);
    if p.div_exact(&lin).is_some() {
        return Err(ClassifyError::Shape(format!("t {} √q divides the separable part", if sign == Sign::Plus { "+" } else { "-" })));
    }
    Ok(root)
}

/// Witness pairs for the three repeated-factor sextic shapes.
///
/// - `Case1 { p, q }`, `f = P^2 Q`: `a` ranges over the `P^2` groups, `b` over
///   the admissible pairs of `Q`.
/// - `Case2 { p, sign }`, `f = P (t ± √q)^2`: `a` ranges over the admissible
///   quadruples of `P`, `b = (v, v)` with `v = v_l(1 ± √q)`.
/// - `Case3 { q, sign }`, `f = Q^2 (t ± √q)^2`: `a` over the `Q^2` groups, `b = (v, v)`.
pub fn witnesses(dispatch: &Dispatch, q: u64, l: u64) -> Result<Vec<WitnessPair>, ClassifyError> {
    witnesses_with(dispatch, q, l, Orientation::Majorizing)
}

/// As [`witnesses`], with the summand comparison reversed when asked.
pub fn witnesses_with(dispatch: &Dispatch, q: u64, l: u64, orientation: Orientation) -> Result<Vec<WitnessPair>, ClassifyError> {
    let (a_set, b_set) = match dispatch {
        Dispatch::Case1 { p, q: qq } => {
            require_degree(qq, 2, "Q")?;
            require_coprime(&[p, qq])?;
            (p_square_with(p, l, orientation)?, admissible(qq, l, orientation)?)
        }
        Dispatch::Case2 { p, sign } => {
            require_degree(p, 4, "P")?;
            require_not_root(p, *sign, q)?;
            let v = scalar_valuation(*sign, q, l)?;
            (admissible(p, l, orientation)?, vec![Partition::constant(v, 2)])
        }
        Dispatch::Case3 { q: qq, sign } => {
            require_not_root(qq, *sign, q)?;
            let v = scalar_valuation(*sign, q, l)?;
            (p_square_with(qq, l, orientation)?, vec![Partition::constant(v, 2)])
        }
        other => return Err(ClassifyError::Shape(format!("no witness pairs for {other:?}"))),
    };
    let mut out = Vec::with_capacity(a_set.len() * b_set.len());
    for a in &a_set {
        for b in &b_set {
            out.push(WitnessPair { a: a.clone(), b: b.clone() });
        }
    }
    Ok(out)
}

/// Union over witness pairs of every feasible Smith-invariant tuple.
pub fn groups_from_witnesses(engine: &SmithEngine, pairs: &[WitnessPair]) -> Result<Vec<Partition>, ClassifyError> {
    let mut out = BTreeSet::new();
    for w in pairs {
        out.extend(engine.enumerate_cokernels(&w.a, &w.b)?);
    }
    Ok(normalize_set(out.into_iter().collect()))
}

/// `f = P^2 Q` with `P`, `Q` coprime separable quadratics.
pub fn groups_case1(engine: &SmithEngine, p: &IntPoly, q: &IntPoly, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    let d = Dispatch::Case1 { p: p.clone(), q: q.clone() };
    groups_from_witnesses(engine, &witnesses(&d, 0, l)?)
}

/// `f = P (t ± √q)^2` with `P` a separable quartic.
pub fn groups_case2(engine: &SmithEngine, p: &IntPoly, sign: Sign, q: u64, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    let d = Dispatch::Case2 { p: p.clone(), sign };
    groups_from_witnesses(engine, &witnesses(&d, q, l)?)
}

/// `f = Q^2 (t ± √q)^2` with `Q` a separable quadratic.
pub fn groups_case3(engine: &SmithEngine, qpoly: &IntPoly, sign: Sign, q: u64, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    let d = Dispatch::Case3 { q: qpoly.clone(), sign };
    groups_from_witnesses(engine, &witnesses(&d, q, l)?)
}

/// Admissible groups of one isogeny class, keyed by prime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub q: u64,
    /// `f(1)`, the number of rational points.
    pub order: i128,
    pub dispatch: Dispatch,
    pub groups: BTreeMap<u64, Vec<Partition>>,
    /// Set when the characteristic `p` divides `f(1)`. Its entry is what the
    /// `l != p` machinery produces formally; the Tate module has smaller rank
    /// at `p`, so that entry is not backed by the same argument.
    pub formal_characteristic: Option<u64>,
}

impl Classification {
    pub fn group_types(&self) -> impl Iterator<Item = GroupType> + '_ {
        self.groups.iter().flat_map(|(&l, cs)| cs.iter().map(move |c| GroupType { l, exps: c.clone() }))
    }
}

/// Groups for one prime `l`, dispatched on the factorization shape.
pub fn classify_at(engine: &SmithEngine, f: &WeilPolynomial, dispatch: &Dispatch, l: u64) -> Result<Vec<Partition>, ClassifyError> {
    let q = f.q();
    match dispatch {
        Dispatch::Separable { f } => groups_separable(f, l),
        Dispatch::PSquare { p } => groups_p_square(p, l),
        Dispatch::Case1 { p, q: qq } => groups_case1(engine, p, qq, l),
        Dispatch::Case2 { p, sign } => groups_case2(engine, p, *sign, q, l),
        Dispatch::Case3 { q: qq, sign } => groups_case3(engine, qq, *sign, q, l),
        Dispatch::Scalar { sign, s } => Ok(vec![groups_scalar(*sign, q, *s, l)?]),
        Dispatch::CyclicIndex { r, sign, s } => {
            let root = exact_sqrt(q).ok_or(ClassifyError::QNotSquare(q))?;
            let p = IntPoly::from_ascending(vec![-(q as i128), 0, 1]);
            groups_cyclic_index(&p, &sign.factor(root), *r, *s, l)
        }
    }
}

/// Every prime `l | f(1)` with its admissible groups; `p` is flagged.
pub fn classify_all(engine: &SmithEngine, f: &WeilPolynomial) -> Result<Classification, ClassifyError> {
    let order = group_order(f)?;
    let dispatch = shape_of(f)?;
    let mut groups = BTreeMap::new();
    let mut formal_characteristic = None;
    for l in prime_factors(order.unsigned_abs()) {
        if l == f.p() {
            formal_characteristic = Some(l);
        }
        groups.insert(l, classify_at(engine, f, &dispatch, l)?);
    }
    Ok(Classification { q: f.q(), order, dispatch, groups, formal_characteristic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::parse_and_validate;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn poly(desc: &[i64]) -> IntPoly {
        IntPoly::from_descending(desc)
    }

    #[test]
    fn separable_examples() {
        assert_eq!(groups_separable(&poly(&[1, -1, 2]), 2).unwrap(), vec![p(&[1, 0])]);
        assert_eq!(groups_separable(&poly(&[1, -1, 2]), 3).unwrap(), vec![p(&[0, 0])]);
        assert_eq!(groups_separable(&poly(&[1, 0, -3]).mul(&poly(&[1, 0, -3])).unwrap(), 2), Err(ClassifyError::NotSeparable));
    }

    #[test]
    fn p_square_examples() {
        // 1 - α for α = ±√3 gives 1 ∓ √3, each of 2-adic valuation 1/2.
        assert_eq!(groups_p_square(&poly(&[1, 0, -3]), 2).unwrap(), vec![p(&[1, 1, 0, 0])]);
        // t^2 - t + 2 at l = 2: valuations (1, 0).
        assert_eq!(groups_p_square(&poly(&[1, -1, 2]), 2).unwrap(), vec![p(&[1, 1, 0, 0])]);
        // t^2 - 9 at l = 2: 1 - 3 = -2 and 1 + 3 = 4, valuations (2, 1).
        assert_eq!(groups_p_square(&poly(&[1, 0, -9]), 2).unwrap(), vec![p(&[3, 3, 0, 0]), p(&[3, 2, 1, 0]), p(&[2, 2, 1, 1])]);
    }

    #[test]
    fn cyclic_index_examples() {
        // q = 16, l = 3: 1 - 4 = -3 and 1 + 4 = 5, so P has valuations (1, 0).
        let pp = poly(&[1, 0, -16]);
        let qq = Sign::Minus.factor(4);
        assert_eq!(groups_cyclic_index(&pp, &qq, 2, 2, 3).unwrap(), vec![p(&[1, 1, 1, 1, 0, 0])]);
        assert_eq!(groups_cyclic_index(&pp, &qq, 2, 0, 3).unwrap(), groups_p_square(&pp, 3).unwrap());
        assert_eq!(groups_cyclic_index(&pp, &qq, 0, 3, 3).unwrap(), vec![p(&[1, 1, 1])]);
        assert!(groups_cyclic_index(&pp, &Sign::Minus.factor(3), 1, 1, 3).is_err());
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(groups_scalar(Sign::Plus, 9, 6, 2).unwrap(), p(&[2, 2, 2, 2, 2, 2]));
        assert_eq!(groups_scalar(Sign::Minus, 4, 2, 3).unwrap(), p(&[0, 0]));
        assert_eq!(groups_scalar(Sign::Plus, 4, 2, 2).unwrap(), p(&[0, 0]));
        assert_eq!(groups_scalar(Sign::Plus, 8, 2, 2), Err(ClassifyError::QNotSquare(8)));
    }

    #[test]
    fn end_to_end_sextic() {
        let engine = SmithEngine::default();
        let f = poly(&[1, -1, 2]).pow(2).unwrap().mul(&poly(&[1, 2, 2])).unwrap();
        let coeffs: Vec<i64> = f.descending().iter().map(|&x| x as i64).collect();
        let w = parse_and_validate(&coeffs, 2).unwrap();
        let cls = classify_all(&engine, &w).unwrap();
        assert_eq!(cls.order, 20);
        let want: BTreeMap<u64, Vec<Partition>> = [(2, vec![p(&[1, 1, 0, 0, 0, 0])]), (5, vec![p(&[1, 0, 0, 0, 0, 0])])].into_iter().collect();
        assert_eq!(cls.groups, want);
        assert_eq!(cls.formal_characteristic, Some(2));
    }

    #[test]
    fn case_examples() {
        let engine = SmithEngine::default();
        // Q = t^2 + 3t + 9, q = 9, l = 2: Q(1) = 13, and 1 + 3 = 4 gives b = 2.
        assert_eq!(groups_case3(&engine, &poly(&[1, 3, 9]), Sign::Plus, 9, 2).unwrap(), vec![p(&[2, 2, 0, 0, 0, 0])]);
        // A quartic with f(1) odd at l = 2 and b = 2.
        let quartic = poly(&[1, 3, 9]).mul(&poly(&[1, 1, 9])).unwrap();
        assert_eq!(groups_case2(&engine, &quartic, Sign::Plus, 9, 2).unwrap(), vec![p(&[2, 2, 0, 0, 0, 0])]);
        assert!(groups_case2(&engine, &quartic, Sign::Plus, 8, 2).is_err());
    }

    #[test]
    fn characteristic_prime_is_flagged() {
        let engine = SmithEngine::default();
        // t^2 - 3t + 3 over q = 3: f(1) = 1, nothing to classify.
        let w = parse_and_validate(&[1, -3, 3], 3).unwrap();
        assert!(classify_all(&engine, &w).unwrap().groups.is_empty());
        // t^2 + 2 over q = 2: f(1) = 3.
        let w = parse_and_validate(&[1, 0, 2], 2).unwrap();
        let cls = classify_all(&engine, &w).unwrap();
        assert_eq!(cls.groups.get(&3), Some(&vec![p(&[1, 0])]));
        // t^2 + 2t + 2 over q = 2: f(1) = 5.
        let w = parse_and_validate(&[1, -2, 2], 2).unwrap();
        assert_eq!(classify_all(&engine, &w).unwrap().order, 1);
        let w = parse_and_validate(&[1, 1, 2], 2).unwrap();
        let cls = classify_all(&engine, &w).unwrap();
        assert_eq!(cls.formal_characteristic, Some(2));
        assert_eq!(cls.groups.keys().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn group_type_display() {
        let g = GroupType { l: 2, exps: p(&[2, 1, 0]) };
        assert_eq!(g.to_string(), "Z/2^2 + Z/2^1");
        assert_eq!(GroupType { l: 3, exps: p(&[0]) }.to_string(), "0");
    }
}
