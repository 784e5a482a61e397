//! Exact phase-one simplex and the cone implication test built on it.
//!
//! A homogeneous inequality `g >= 0` follows from `h_j >= 0` and `e_k = 0`
//! exactly when `g = Σ y_j h_j + Σ μ_k e_k` with every `y_j >= 0` (Farkas).
//! Deciding that is a feasibility problem `A x = g, x >= 0`, which the
//! simplex below solves with Bland's rule. The scalar type must be exact.

use num_rational::BigRational;
use serde::Serialize;

use crate::horn::LinearForm;
use crate::scalar::Scalar;

/// Feasibility solver for `A x = b, x >= 0` over an exact ordered field.
#[derive(Clone, Debug)]
pub struct Simplex<S> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    cols: usize,
}

impl<S: Scalar> Simplex<S> {
    /// `columns[j]` is column `j` of `A`; every column has length `b.len()`.
    pub fn from_columns(columns: &[Vec<S>], b: &[S]) -> Self {
        let m = b.len();
        let rows = (0..m).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        Self { rows, rhs: b.to_vec(), cols: columns.len() }
    }

    /// A nonnegative solution, or `None` if the system is infeasible.
    pub fn solve(self) -> Option<Vec<S>> {
        let m = self.rhs.len();
        let n = self.cols;
        let width = n + m;
        // Tableau rows: [A | I | b] with rows flipped so that b >= 0.
        let mut tab: Vec<Vec<S>> = Vec::with_capacity(m);
        for (i, (mut row, b)) in self.rows.into_iter().zip(self.rhs).enumerate() {
            let flip = b < S::zero();
            if flip {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            row.extend((0..m).map(|k| if k == i { S::one() } else { S::zero() }));
            row.push(if flip { -b } else { b });
            tab.push(row);
        }
        let mut basis: Vec<usize> = (n..n + m).collect();
        // Reduced costs of the phase-one objective (sum of artificials).
        let mut cost: Vec<S> = vec![S::zero(); width + 1];
        for row in &tab {
            for j in 0..n {
                cost[j] = cost[j].clone() - row[j].clone();
            }
            cost[width] = cost[width].clone() - row[width].clone();
        }
        loop {
            let Some(enter) = (0..n).find(|&j| cost[j] < S::zero()) else { break };
            let mut leave: Option<(usize, S)> = None;
            for (i, row) in tab.iter().enumerate() {
                if row[enter] > S::zero() {
                    let ratio = row[width].clone() / row[enter].clone();
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            // The phase-one objective is bounded below by zero, so some row always qualifies.
            let (r, _) = leave.expect("phase-one objective is bounded");
            pivot(&mut tab, &mut cost, r, enter);
            basis[r] = enter;
        }
        if !cost[width].is_zero() {
            return None;
        }
        let mut x = vec![S::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = tab[i][width].clone();
            }
        }
        Some(x)
    }
}

fn pivot<S: Scalar>(tab: &mut [Vec<S>], cost: &mut [S], r: usize, c: usize) {
    let inv = S::one() / tab[r][c].clone();
    tab[r].iter_mut().for_each(|x| *x = x.clone() * inv.clone());
    let prow = tab[r].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    let eliminate = |row: &mut Vec<S>| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for &j in &nz {
            row[j] = row[j].clone() - f.clone() * prow[j].clone();
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    let mut cost_row = cost.to_vec();
    eliminate(&mut cost_row);
    cost.clone_from_slice(&cost_row);
}

/// Multipliers expressing a target form through the constraints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate<S> {
    /// Nonnegative weights on the inequalities.
    pub ineq_weights: Vec<S>,
    /// Free weights on the equalities.
    pub eq_weights: Vec<S>,
}

/// Decides whether `target >= 0` follows from `ineqs >= 0` and `eqs = 0`.
pub fn cone_implies<S: Scalar>(target: &[S], ineqs: &[Vec<S>], eqs: &[Vec<S>]) -> Option<Certificate<S>> {
    let mut columns: Vec<Vec<S>> = ineqs.to_vec();
    for e in eqs {
        columns.push(e.clone());
        columns.push(e.iter().map(|x| -x.clone()).collect());
    }
    let x = Simplex::from_columns(&columns, target).solve()?;
    let h = ineqs.len();
    let eq_weights = (0..eqs.len()).map(|k| x[h + 2 * k].clone() - x[h + 2 * k + 1].clone()).collect();
    Some(Certificate { ineq_weights: x[..h].to_vec(), eq_weights })
}

/// Fraction-free phase-one simplex on integer data.
///
/// Every tableau entry is a minor of the initial integer matrix divided by
/// nothing, so entries stay integral and, for `0, ±1` data, bounded by the
/// Hadamard bound. Arithmetic is checked; `Err(())` signals overflow.
fn integer_phase_one(columns: &[Vec<i64>], b: &[i64]) -> Result<Option<Vec<BigRational>>, ()> {
    let m = b.len();
    let n = columns.len();
    let width = n + m;
    let mut tab: Vec<Vec<i128>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let sign: i128 = if b[i] < 0 { -1 } else { 1 };
        let mut row: Vec<i128> = columns.iter().map(|c| sign * c[i] as i128).collect();
        row.extend((0..m).map(|k| i128::from(k == i)));
        row.push(sign * b[i] as i128);
        tab.push(row);
    }
    // Objective row: minus the sum of the constraint rows, zero on artificials.
    let mut obj = vec![0i128; width + 1];
    for row in &tab {
        for j in (0..n).chain(std::iter::once(width)) {
            obj[j] = obj[j].checked_sub(row[j]).ok_or(())?;
        }
    }
    tab.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut denom: i128 = 1;
    loop {
        let Some(enter) = (0..n).find(|&j| tab[m][j] < 0) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if tab[i][enter] <= 0 {
                continue;
            }
            leave = Some(match leave {
                None => i,
                Some(l) => {
                    // Compare rhs_i / t_i with rhs_l / t_l; both denominators are positive.
                    let lhs = tab[i][width].checked_mul(tab[l][enter]).ok_or(())?;
                    let rhs = tab[l][width].checked_mul(tab[i][enter]).ok_or(())?;
                    if lhs < rhs || (lhs == rhs && basis[i] < basis[l]) {
                        i
                    } else {
                        l
                    }
                }
            });
        }
        let r = leave.expect("phase-one objective is bounded");
        let pv = tab[r][enter];
        let prow = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[enter];
            for j in 0..=width {
                let v = pv.checked_mul(row[j]).ok_or(())?;
                let w = if f == 0 { 0 } else { f.checked_mul(prow[j]).ok_or(())? };
                row[j] = v.checked_sub(w).ok_or(())? / denom;
            }
        }
        denom = pv;
        basis[r] = enter;
    }
    if tab[m][width] != 0 {
        return Ok(None);
    }
    let d = num_bigint::BigInt::from(denom);
    let mut x = vec![BigRational::from_int(0); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = BigRational::new(num_bigint::BigInt::from(tab[i][width]), d.clone());
        }
    }
    Ok(Some(x))
}

fn lift(f: &LinearForm) -> Vec<BigRational> {
    f.coeffs.iter().map(|&c| BigRational::from_int(c)).collect()
}

/// [`cone_implies`] on integer forms.
///
/// Runs the fraction-free integer simplex and falls back to `BigRational`
/// pivoting if an intermediate value overflows.
pub fn form_implied(target: &LinearForm, ineqs: &[LinearForm], eqs: &[LinearForm]) -> Option<Certificate<BigRational>> {
    let mut columns: Vec<Vec<i64>> = ineqs.iter().map(|f| f.coeffs.clone()).collect();
    for e in eqs {
        columns.push(e.coeffs.clone());
        columns.push(e.neg().coeffs);
    }
    match integer_phase_one(&columns, &target.coeffs) {
        Ok(solution) => {
            let x = solution?;
            let h = ineqs.len();
            let eq_weights = (0..eqs.len()).map(|k| x[h + 2 * k].clone() - x[h + 2 * k + 1].clone()).collect();
            Some(Certificate { ineq_weights: x[..h].to_vec(), eq_weights })
        }
        Err(()) => {
            let ineqs: Vec<_> = ineqs.iter().map(lift).collect();
            let eqs: Vec<_> = eqs.iter().map(lift).collect();
            cone_implies(&lift(target), &ineqs, &eqs)
        }
    }
}

/// Checks `target = Σ y_j h_j + Σ μ_k e_k` with `y >= 0`.
pub fn check_certificate<S: Scalar>(target: &[S], ineqs: &[Vec<S>], eqs: &[Vec<S>], cert: &Certificate<S>) -> bool {
    if cert.ineq_weights.iter().any(|y| *y < S::zero()) {
        return false;
    }
    (0..target.len()).all(|i| {
        let mut acc = S::zero();
        for (y, h) in cert.ineq_weights.iter().zip(ineqs) {
            acc = acc + y.clone() * h[i].clone();
        }
        for (mu, e) in cert.eq_weights.iter().zip(eqs) {
            acc = acc + mu.clone() * e[i].clone();
        }
        acc == target[i]
    })
}
