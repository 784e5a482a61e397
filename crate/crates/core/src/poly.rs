//! Dense integer polynomials and the small amount of elementary number
//! theory the rest of the crate needs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PolyError;

/// Integer polynomial, coefficients stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    /// Builds from ascending coefficients, trimming leading zeros.
    pub fn from_ascending(mut coeffs: Vec<i128>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Self { coeffs }
    }

    /// Builds from coefficients listed highest degree first.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        Self::from_ascending(coeffs.iter().rev().map(|&c| c as i128).collect())
    }

    /// Parses the text form `"1,-1,2"` (highest degree first).
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        Ok(Self::from_descending(&parse_coefficients(text)?))
    }

    pub fn monomial(deg: usize) -> Self {
        let mut c = vec![0; deg + 1];
        c[deg] = 1;
        Self { coeffs: c }
    }

    /// `t - root`.
    pub fn linear(root: i128) -> Self {
        Self { coeffs: vec![-root, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i128 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Coefficient of `t^i`.
    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn ascending(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<i128> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn eval(&self, x: i128) -> Result<i128, PolyError> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x).and_then(|v| v.checked_add(c)).ok_or(PolyError::Overflow)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly, PolyError> {
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(PolyError::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(PolyError::Overflow)?;
            }
        }
        Ok(Self::from_ascending(out))
    }

    pub fn pow(&self, e: usize) -> Result<IntPoly, PolyError> {
        let mut acc = IntPoly::monomial(0);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact quotient by a monic divisor, or `None` if it does not divide.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if !divisor.is_monic() || divisor.degree() > self.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let mut quot = vec![0i128; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd];
            quot[k] = lead;
            if lead != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].checked_sub(lead.checked_mul(d)?)?;
                }
            }
        }
        if rem[..dd].iter().all(|&c| c == 0) {
            Some(Self::from_ascending(quot))
        } else {
            None
        }
    }

    /// Monic normalization of `P(1 - t)`, i.e. `(-1)^d P(1 - t)`.
    ///
    /// When `P` is the characteristic polynomial of an operator `F`, this is
    /// the characteristic polynomial of `1 - F`.
    pub fn one_minus_t(&self) -> Result<IntPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Zero);
        }
        if !self.is_monic() {
            return Err(PolyError::NotMonic(self.leading()));
        }
        let base = IntPoly::from_ascending(vec![1, -1]);
        let mut acc = IntPoly::from_ascending(vec![0]);
        let mut power = IntPoly::monomial(0);
        for &c in &self.coeffs {
            let scaled: Option<Vec<i128>> = power.coeffs.iter().map(|&x| x.checked_mul(c)).collect();
            let term = IntPoly::from_ascending(scaled.ok_or(PolyError::Overflow)?);
            acc = acc.add(&term)?;
            power = power.mul(&base)?;
        }
        if self.degree() % 2 == 1 {
            acc = IntPoly::from_ascending(acc.coeffs.iter().map(|&x| -x).collect());
        }
        Ok(acc)
    }

    pub fn add(&self, other: &IntPoly) -> Result<IntPoly, PolyError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).checked_add(other.coeff(i)).ok_or(PolyError::Overflow)?);
        }
        Ok(Self::from_ascending(out))
    }

    pub fn derivative(&self) -> IntPoly {
        if self.degree() == 0 {
            return IntPoly::from_ascending(vec![0]);
        }
        Self::from_ascending(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i128).collect())
    }

    /// True iff `gcd(P, P') = 1` over the rationals.
    pub fn is_squarefree(&self) -> bool {
        if self.degree() == 0 {
            return true;
        }
        rational_gcd_degree(&self.to_big(), &self.derivative().to_big()) == 0
    }

    fn to_big(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn rational_rem(x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let mut r = x.to_vec();
    let dy = y.len() - 1;
    while r.len() > dy && !is_zero_poly(&r) {
        let shift = r.len() - 1 - dy;
        let f = r.last().unwrap().clone() / y[dy].clone();
        for (j, yc) in y.iter().enumerate() {
            r[shift + j] = r[shift + j].clone() - f.clone() * yc.clone();
        }
        r.pop();
        trim(&mut r);
    }
    if r.is_empty() {
        r.push(BigRational::zero());
    }
    r
}

/// Degree of the gcd of two rational polynomials (ascending coefficients).
fn rational_gcd_degree(a: &[BigRational], b: &[BigRational]) -> usize {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let r = rational_rem(&x, &y);
        x = y;
        y = r;
    }
    x.len() - 1
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && !(self.degree() == 0) {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                _ if a == 1 => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Parses a comma-separated list of integers.
pub fn parse_coefficients(text: &str) -> Result<Vec<i64>, PolyError> {
    let out: Result<Vec<i64>, _> = text.split(',').map(|s| s.trim().parse::<i64>()).collect();
    match out {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(PolyError::Parse(text.to_string())),
    }
}

/// `l`-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(x: i128, l: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let l = l as i128;
    let mut x = x.abs();
    let mut v = 0;
    while x % l == 0 {
        x /= l;
        v += 1;
    }
    Some(v)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// `(p, r)` with `q = p^r`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_factors(q as u128);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut r = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        r += 1;
    }
    Some((p, r))
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// `base^exp` as `i128`, if it fits.
pub fn checked_pow(base: u64, exp: u32) -> Option<i128> {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as i128)?;
    }
    Some(acc)
}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

/// Exact integer determinant by fraction-free elimination.
pub fn determinant(rows: &[Vec<i128>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    m[n - 1][n - 1].clone() * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_minus_t_examples() {
        let p = IntPoly::from_descending(&[1, -1, 2]);
        assert_eq!(p.one_minus_t().unwrap(), p);
        let t2 = IntPoly::monomial(2);
        assert_eq!(t2.one_minus_t().unwrap(), IntPoly::from_descending(&[1, -2, 1]));
        let cubic = IntPoly::from_descending(&[1, 0, 0, 0]);
        // (-1)^3 (1-t)^3 = t^3 - 3t^2 + 3t - 1
        assert_eq!(cubic.one_minus_t().unwrap(), IntPoly::from_descending(&[1, -3, 3, -1]));
        assert!(IntPoly::from_descending(&[2, 1]).one_minus_t().is_err());
    }

    #[test]
    fn exact_division() {
        let f = IntPoly::from_descending(&[1, -1, 2]).mul(&IntPoly::from_descending(&[1, 2, 2])).unwrap();
        assert_eq!(f.div_exact(&IntPoly::from_descending(&[1, 2, 2])).unwrap(), IntPoly::from_descending(&[1, -1, 2]));
        assert!(f.div_exact(&IntPoly::from_descending(&[1, 1, 2])).is_none());
    }

    #[test]
    fn squarefree_detection() {
        let p = IntPoly::from_descending(&[1, -1, 2]);
        assert!(p.is_squarefree());
        assert!(!p.mul(&p).unwrap().is_squarefree());
        assert!(!IntPoly::linear(2).pow(3).unwrap().is_squarefree());
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(valuation(8, 2), Some(3));
        assert_eq!(valuation(-12, 3), Some(1));
        assert_eq!(valuation(0, 5), None);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_factors(20), vec![2, 5]);
        assert_eq!(exact_sqrt(9), Some(3));
        assert_eq!(exact_sqrt(8), None);
        assert_eq!(mod_inverse(3, 16), Some(11));
        assert_eq!(determinant(&[vec![2, 1], vec![0, 2]]), BigInt::from(4));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
    }

    #[test]
    fn display_and_parse() {
        let p = IntPoly::parse("1, -1, 2").unwrap();
        assert_eq!(p.to_string(), "t^2 - t + 2");
        assert!(IntPoly::parse("1,x").is_err());
    }
}
