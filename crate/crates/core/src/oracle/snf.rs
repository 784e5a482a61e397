use serde::{Deserialize, Serialize};

use crate::error::{OracleError, PolyError};
use crate::partition::Partition;
use crate::poly::{checked_pow, determinant, mod_inverse, valuation};

/// Largest working modulus; keeps products of residues inside `i128`.
const MAX_MODULUS: i128 = 1 << 62;

/// Dense rectangular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: Vec<Vec<i128>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i128>>) -> Result<Self, OracleError> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(OracleError::NotSquare { rows: rows.len(), cols });
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(entries: &[i128]) -> Self {
        let n = entries.len();
        Self { rows: (0..n).map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect()).collect() }
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.rows[i][j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, OracleError> {
        if self.ncols() != other.nrows() {
            return Err(OracleError::NotSquare { rows: other.nrows(), cols: self.ncols() });
        }
        let mut out = vec![vec![0i128; other.ncols()]; self.nrows()];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc: i128 = 0;
                for k in 0..self.ncols() {
                    let prod = self.rows[i][k].checked_mul(other.rows[k][j]).ok_or(PolyError::Overflow)?;
                    acc = acc.checked_add(prod).ok_or(PolyError::Overflow)?;
                }
                *cell = acc;
            }
        }
        Ok(IntMatrix { rows: out })
    }
}

/// Exponents `e` with `coker(m) ⊗ Z_l ≅ ⊕ Z/l^e`, sorted descending.
///
/// Elimination runs modulo `modulus` (a power of `l`). Without a modulus,
/// the exact determinant fixes `l^{v_l(det) + 1}`, which is enough because
/// every invariant divides the determinant.
pub fn smith_invariants(m: &IntMatrix, l: u64, modulus: Option<i128>) -> Result<Partition, OracleError> {
    if m.nrows() != m.ncols() {
        return Err(OracleError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if !crate::poly::is_prime(l) {
        return Err(PolyError::NotPrime(l).into());
    }
    let modulus = match modulus {
        Some(q) => {
            if q <= 1 || valuation_power(q, l).is_none() {
                return Err(OracleError::BadModulus { modulus: q, l });
            }
            q
        }
        None => {
            let det = determinant(m.rows());
            if det == num_bigint::BigInt::from(0) {
                return Err(OracleError::Singular);
            }
            let mut v = 0u32;
            let lb = num_bigint::BigInt::from(l);
            let mut d = det;
            while (&d % &lb) == num_bigint::BigInt::from(0) {
                d /= &lb;
                v += 1;
            }
            checked_pow(l, v + 1).ok_or(PolyError::Overflow)?
        }
    };
    if modulus > MAX_MODULUS {
        return Err(PolyError::Overflow.into());
    }
    local_elimination(m, l, modulus)
}

/// `Some(N)` when `q = l^N`.
fn valuation_power(q: i128, l: u64) -> Option<u32> {
    let v = valuation(q, l)?;
    (checked_pow(l, v)? == q).then_some(v)
}

fn local_elimination(m: &IntMatrix, l: u64, modulus: i128) -> Result<Partition, OracleError> {
    let n = m.nrows();
    let li = l as i128;
    let mut a: Vec<Vec<i128>> = m.rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(modulus)).collect()).collect();
    let mut exps = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if let Some(v) = valuation(x, l) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((e, pi, pj)) = best else {
            return Err(OracleError::PrecisionExhausted { modulus });
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let le = li.pow(e);
        let unit_inv = mod_inverse(a[k][k] / le, modulus).expect("unit part is invertible");
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = (a[i][k] / le) * unit_inv % modulus;
            for j in k..n {
                a[i][j] = (a[i][j] - f * a[k][j] % modulus).rem_euclid(modulus);
            }
        }
        for j in k + 1..n {
            if a[k][j] == 0 {
                continue;
            }
            let f = (a[k][j] / le) * unit_inv % modulus;
            for row in a.iter_mut().skip(k) {
                row[j] = (row[j] - f * row[k] % modulus).rem_euclid(modulus);
            }
        }
        exps.push(e);
    }
    Ok(Partition::from_unsorted(exps))
}
