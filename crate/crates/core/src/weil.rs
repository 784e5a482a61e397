//! Weil polynomials of degree at most six: validation, factorization and
//! dispatch to the matching classification.
//!
//! Factorization is a bounded search that relies on the root modulus. An
//! integer root must be `±√q`. A quadratic factor `t^2 + a t + b` has
//! `|a| <= 2√q` and `b = ±q` (the product of its roots), with `b = -q` only
//! for `t^2 - q`. There are no irreducible cubic factors, since a real cubic
//! has a real root `±√q`, which is already a root of `t^2 - q`. Whatever is
//! left after removing linear and quadratic factors is irreducible.

use std::fmt;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{PolyError, WeilError};
use crate::poly::{checked_pow, exact_sqrt, isqrt, prime_power, IntPoly};
use crate::polygon::{newton_polygon, ValuationProfile};
use crate::Rational;

/// Relative tolerance for the numeric root-modulus check.
pub const MODULUS_TOLERANCE: f64 = 1e-9;

/// Which linear factor `t ± √q` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// `t + √q`; `1 - F` acts on its part as `1 + √q`.
    Plus,
    /// `t - √q`; `1 - F` acts as `1 - √q`.
    Minus,
}

impl Sign {
    /// `t + √q` or `t - √q`.
    pub fn factor(self, sqrt_q: u64) -> IntPoly {
        match self {
            Sign::Plus => IntPoly::linear(-(sqrt_q as i128)),
            Sign::Minus => IntPoly::linear(sqrt_q as i128),
        }
    }

    /// `1 ± √q`, the eigenvalue of `1 - F` on this part.
    pub fn one_minus_root(self, sqrt_q: u64) -> i128 {
        match self {
            Sign::Plus => 1 + sqrt_q as i128,
            Sign::Minus => 1 - sqrt_q as i128,
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "plus" | "+" => Some(Sign::Plus),
            "minus" | "-" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// A validated Weil polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeilPolynomial {
    poly: IntPoly,
    q: u64,
    p: u64,
    r: u32,
    factors: Vec<Factor>,
}

impl WeilPolynomial {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The characteristic `p` with `q = p^r`.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Dimension `g`, half the degree.
    pub fn g(&self) -> usize {
        self.poly.degree() / 2
    }

    pub fn sqrt_q(&self) -> Option<u64> {
        exact_sqrt(self.q)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }
}

/// An irreducible monic factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub poly: IntPoly,
    pub mult: usize,
}

/// Factorization patterns with a known classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeTag {
    /// Squarefree.
    Separable,
    /// `P^2`, `deg P = 2`, in dimension two.
    PSquareG2,
    /// `P^2 Q`, `deg P = deg Q = 2`, `PQ` separable.
    P2Q,
    /// `P (t ± √q)^2`, `deg P = 4`, `P (t ± √q)` separable.
    PRealSq,
    /// `Q^2 (t ± √q)^2`, `deg Q = 2`, `Q (t ± √q)` separable.
    Q2RealSq,
    /// `(t ± √q)^s`.
    ScalarPower,
    /// `(t - √q)^{e_1} (t + √q)^{e_2}`, both signs present, not squarefree.
    CyclicIndexPRQS,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactoredShape {
    pub factors: Vec<Factor>,
    pub tag: ShapeTag,
    /// Human-readable pattern, e.g. `"P^2 Q"`.
    pub pattern: String,
}

/// Which classification to run, with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Dispatch {
    Separable {
        f: IntPoly,
    },
    PSquare {
        p: IntPoly,
    },
    Case1 {
        p: IntPoly,
        q: IntPoly,
    },
    Case2 {
        p: IntPoly,
        sign: Sign,
    },
    Case3 {
        q: IntPoly,
        sign: Sign,
    },
    Scalar {
        sign: Sign,
        s: usize,
    },
    /// `f(1 - t) = P^r Q^s` with `P = (t - 1 + √q)(t - 1 - √q)` and `Q`
    /// the factor coming from `t ± √q` (`sign`).
    CyclicIndex {
        r: usize,
        sign: Sign,
        s: usize,
    },
}

/// Parses `"1,-1,2"` and validates it for the given `q`.
pub fn parse_and_validate(coeffs: &[i64], q: u64) -> Result<WeilPolynomial, WeilError> {
    let poly = IntPoly::from_descending(coeffs);
    validate(poly, q)
}

/// Validates a monic polynomial of degree `2g`, `1 <= g <= 3`.
pub fn validate(poly: IntPoly, q: u64) -> Result<WeilPolynomial, WeilError> {
    let (p, r) = prime_power(q).ok_or(WeilError::QNotPrimePower(q))?;
    if poly.is_zero() {
        return Err(PolyError::Zero.into());
    }
    if !poly.is_monic() {
        return Err(WeilError::NotMonic);
    }
    let d = poly.degree();
    if d == 0 || d % 2 == 1 || d > 6 {
        return Err(WeilError::BadDegree(d));
    }
    let g = d / 2;
    for i in 0..g {
        let scale = checked_pow(q, (g - i) as u32).ok_or(PolyError::Overflow)?;
        let expected = scale.checked_mul(poly.coeff(d - i)).ok_or(PolyError::Overflow)?;
        if poly.coeff(i) != expected {
            return Err(WeilError::SymmetryViolated { index: i, expected, found: poly.coeff(i) });
        }
    }
    let factors = factor_poly(&poly, q)?;
    for f in &factors {
        check_root_modulus(&f.poly, q)?;
    }
    Ok(WeilPolynomial { poly, q, p, r, factors })
}

fn factor_poly(poly: &IntPoly, q: u64) -> Result<Vec<Factor>, WeilError> {
    let mut candidates: Vec<IntPoly> = Vec::new();
    if let Some(s) = exact_sqrt(q) {
        candidates.push(Sign::Minus.factor(s));
        candidates.push(Sign::Plus.factor(s));
    }
    let bound = isqrt(4 * q) as i128;
    let qi = q as i128;
    for a in -bound..=bound {
        // `a^2 = 4q` gives `(t ± √q)^2`, which the linear candidates already cover.
        if a * a < 4 * qi {
            candidates.push(IntPoly::from_ascending(vec![qi, a, 1]));
        }
    }
    if exact_sqrt(q).is_none() {
        candidates.push(IntPoly::from_ascending(vec![-qi, 0, 1]));
    }
    let mut rest = poly.clone();
    let mut out = Vec::new();
    for c in candidates {
        let mut mult = 0;
        while rest.degree() >= c.degree() {
            match rest.div_exact(&c) {
                Some(quot) => {
                    rest = quot;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            out.push(Factor { poly: c, mult });
        }
    }
    if rest.degree() > 0 {
        out.push(Factor { poly: rest, mult: 1 });
    }
    out.sort_by(|x, y| (x.poly.degree(), &x.poly).cmp(&(y.poly.degree(), &y.poly)));
    Ok(out)
}

/// Every root of the (squarefree) factor has modulus `√q` within tolerance.
fn check_root_modulus(f: &IntPoly, q: u64) -> Result<(), WeilError> {
    let expected = (q as f64).sqrt();
    if f.degree() == 1 {
        let root = -f.coeff(0);
        if root * root != q as i128 {
            let m = (root as f64).abs();
            return Err(WeilError::RootModulus { re: root as f64, im: 0.0, modulus: m, expected });
        }
        return Ok(());
    }
    for z in numeric_roots(f) {
        let m = z.norm();
        if (m - expected).abs() > MODULUS_TOLERANCE * expected {
            return Err(WeilError::RootModulus { re: z.re, im: z.im, modulus: m, expected });
        }
    }
    Ok(())
}

/// Companion-matrix eigenvalues refined by a few Newton steps.
fn numeric_roots(f: &IntPoly) -> Vec<Complex<f64>> {
    let d = f.degree();
    let c: Vec<f64> = f.ascending().iter().map(|&x| x as f64).collect();
    let companion = DMatrix::<f64>::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -c[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eval = |z: Complex<f64>| {
        let mut v = Complex::new(0.0, 0.0);
        let mut dv = Complex::new(0.0, 0.0);
        for &k in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + Complex::new(k, 0.0);
        }
        (v, dv)
    };
    companion
        .complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..8 {
                let (v, dv) = eval(z);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = v / dv;
                z -= step;
                if step.norm() <= 1e-15 * z.norm().max(1.0) {
                    break;
                }
            }
            z
        })
        .collect()
}

/// The factorization with its shape tag.
pub fn factor_weil(f: &WeilPolynomial) -> FactoredShape {
    let (tag, pattern) = classify_shape(f);
    FactoredShape { factors: f.factors.clone(), tag, pattern }
}

fn linear_sign(poly: &IntPoly) -> Option<Sign> {
    if poly.degree() != 1 {
        return None;
    }
    Some(if poly.coeff(0) > 0 { Sign::Plus } else { Sign::Minus })
}

fn pattern_of(factors: &[Factor]) -> String {
    factors
        .iter()
        .map(|f| {
            let name = match linear_sign(&f.poly) {
                Some(Sign::Plus) => "(t+√q)".to_string(),
                Some(Sign::Minus) => "(t-√q)".to_string(),
                None => format!("[deg {}]", f.poly.degree()),
            };
            if f.mult > 1 {
                format!("{name}^{}", f.mult)
            } else {
                name
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn classify_shape(f: &WeilPolynomial) -> (ShapeTag, String) {
    let fs = &f.factors;
    let pattern = pattern_of(fs);
    let g = f.g();
    if fs.iter().all(|x| x.mult == 1) {
        return (ShapeTag::Separable, pattern);
    }
    if fs.iter().all(|x| x.poly.degree() == 1) {
        if fs.len() == 1 {
            return (ShapeTag::ScalarPower, pattern);
        }
        if g == 2 && fs.iter().all(|x| x.mult == 2) {
            return (ShapeTag::PSquareG2, pattern);
        }
        return (ShapeTag::CyclicIndexPRQS, pattern);
    }
    if fs.iter().any(|x| x.mult > 2) {
        return (ShapeTag::Unsupported, pattern);
    }
    let sq_deg: usize = fs.iter().filter(|x| x.mult == 2).map(|x| x.poly.degree()).sum();
    let single_deg: usize = fs.iter().filter(|x| x.mult == 1).map(|x| x.poly.degree()).sum();
    let sq_linear = fs.iter().filter(|x| x.mult == 2 && x.poly.degree() == 1).count();
    let tag = match (g, sq_deg, single_deg, sq_linear) {
        (2, 2, 0, 0) => ShapeTag::PSquareG2,
        (3, 2, 2, 0) | (3, 2, 2, 2) => ShapeTag::P2Q,
        (3, 1, 4, 1) => ShapeTag::PRealSq,
        (3, 3, 0, 1) => ShapeTag::Q2RealSq,
        _ => ShapeTag::Unsupported,
    };
    (tag, pattern)
}

fn product(factors: &[&Factor]) -> IntPoly {
    factors.iter().fold(IntPoly::monomial(0), |acc, f| acc.mul(&f.poly.pow(f.mult).expect("factor powers fit")).expect("products of factors fit"))
}

/// Names the classification that applies to `f` and its parameters.
pub fn shape_of(f: &WeilPolynomial) -> Result<Dispatch, WeilError> {
    let shape = factor_weil(f);
    let fs = &shape.factors;
    let squared = |pred: &dyn Fn(&Factor) -> bool| fs.iter().filter(|x| x.mult == 2 && pred(x)).collect::<Vec<_>>();
    let singles: Vec<&Factor> = fs.iter().filter(|x| x.mult == 1).collect();
    let unsupported = || WeilError::UnsupportedShape(shape.pattern.clone());
    match shape.tag {
        ShapeTag::Separable => Ok(Dispatch::Separable { f: f.poly.clone() }),
        ShapeTag::PSquareG2 => {
            let base: Vec<Factor> = fs.iter().map(|x| Factor { poly: x.poly.clone(), mult: 1 }).collect();
            Ok(Dispatch::PSquare { p: product(&base.iter().collect::<Vec<_>>()) })
        }
        ShapeTag::P2Q => {
            let base: Vec<Factor> = squared(&|_| true).iter().map(|x| Factor { poly: x.poly.clone(), mult: 1 }).collect();
            Ok(Dispatch::Case1 { p: product(&base.iter().collect::<Vec<_>>()), q: product(&singles) })
        }
        ShapeTag::PRealSq => {
            let lin = squared(&|x| x.poly.degree() == 1);
            let sign = linear_sign(&lin[0].poly).ok_or_else(unsupported)?;
            Ok(Dispatch::Case2 { p: product(&singles), sign })
        }
        ShapeTag::Q2RealSq => {
            let lin = squared(&|x| x.poly.degree() == 1);
            let quad = squared(&|x| x.poly.degree() == 2);
            let sign = linear_sign(&lin[0].poly).ok_or_else(unsupported)?;
            Ok(Dispatch::Case3 { q: quad[0].poly.clone(), sign })
        }
        ShapeTag::ScalarPower => {
            let sign = linear_sign(&fs[0].poly).ok_or_else(unsupported)?;
            Ok(Dispatch::Scalar { sign, s: fs[0].mult })
        }
        ShapeTag::CyclicIndexPRQS => {
            let mult = |s: Sign| fs.iter().find(|x| linear_sign(&x.poly) == Some(s)).map(|x| x.mult).unwrap_or(0);
            let (em, ep) = (mult(Sign::Minus), mult(Sign::Plus));
            let sign = if ep > em { Sign::Plus } else { Sign::Minus };
            Ok(Dispatch::CyclicIndex { r: em.min(ep), sign, s: em.abs_diff(ep) })
        }
        ShapeTag::Unsupported => Err(unsupported()),
    }
}

/// Root valuations of a monic polynomial with nonzero constant term, descending.
pub fn root_valuations(poly: &IntPoly, l: u64) -> Result<ValuationProfile<Rational>, WeilError> {
    let np = newton_polygon::<Rational>(poly, l).map_err(|e| match e {
        crate::error::PolygonError::Poly(p) => WeilError::Poly(p),
        other => WeilError::UnsupportedShape(other.to_string()),
    })?;
    Ok(ValuationProfile::from_polygon(&np))
}

/// `f(1)`, the number of rational points; zero is rejected.
pub fn group_order(f: &WeilPolynomial) -> Result<i128, WeilError> {
    let v = f.poly.eval(1)?;
    if v == 0 {
        return Err(WeilError::DegenerateOrder);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_descending(c)
    }

    fn sextic_p2q() -> IntPoly {
        let p = poly(&[1, -1, 2]);
        p.mul(&p).unwrap().mul(&poly(&[1, 2, 2])).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn validation_examples() {
        assert!(parse_and_validate(&[1, -1, 2], 2).is_ok());
        assert!(matches!(parse_and_validate(&[1, -3, 2], 2), Err(WeilError::SymmetryViolated { .. } | WeilError::RootModulus { .. })));
        assert!(validate(sextic_p2q(), 2).is_ok());
        assert!(matches!(parse_and_validate(&[2, -1, 2], 2), Err(WeilError::NotMonic)));
        assert!(matches!(parse_and_validate(&[1, -1, 2, 1], 2), Err(WeilError::BadDegree(3))));
        assert!(matches!(parse_and_validate(&[1, -1, 2], 6), Err(WeilError::QNotPrimePower(6))));
        assert!(matches!(parse_and_validate(&[1, 0, 0, 1, 4], 2), Err(WeilError::SymmetryViolated { .. })));
    }

    #[test]
    fn root_modulus_is_checked_when_symmetry_holds() {
        // t^2 - 5t + 4 = (t-1)(t-4) is symmetric for q = 4 but has roots 1 and 4.
        assert!(matches!(parse_and_validate(&[1, -5, 4], 4), Err(WeilError::RootModulus { .. })));
        // t^4 + 5 t^2 + 4 = (t^2 + 1)(t^2 + 4), symmetric for q = 2, roots of modulus 1 and 2.
        assert!(matches!(parse_and_validate(&[1, 0, 5, 0, 4], 2), Err(WeilError::RootModulus { .. })));
    }

    #[test]
    fn factor_examples() {
        let f = validate(sextic_p2q(), 2).unwrap();
        let shape = factor_weil(&f);
        assert_eq!(shape.tag, ShapeTag::P2Q);
        assert_eq!(shape_of(&f).unwrap(), Dispatch::Case1 { p: poly(&[1, -1, 2]), q: poly(&[1, 2, 2]) });

        let q = poly(&[1, 3, 9]);
        let f = q.pow(2).unwrap().mul(&poly(&[1, 3]).pow(2).unwrap()).unwrap();
        let f = validate(f, 9).unwrap();
        assert_eq!(factor_weil(&f).tag, ShapeTag::Q2RealSq);
        assert_eq!(shape_of(&f).unwrap(), Dispatch::Case3 { q, sign: Sign::Plus });

        let f = validate(poly(&[1, -2]).pow(6).unwrap(), 4).unwrap();
        assert_eq!(factor_weil(&f).tag, ShapeTag::ScalarPower);
        assert_eq!(shape_of(&f).unwrap(), Dispatch::Scalar { sign: Sign::Minus, s: 6 });
    }

    #[test]
    fn factorization_multiplies_back() {
        for (c, q) in [
            (sextic_p2q(), 2u64),
            (poly(&[1, -2]).pow(2).unwrap().mul(&poly(&[1, 2]).pow(4).unwrap()).unwrap(), 4),
            (poly(&[1, 0, -3]).pow(2).unwrap().mul(&poly(&[1, 1, 3])).unwrap(), 3),
        ] {
            let f = validate(c.clone(), q).unwrap();
            let back = f.factors().iter().fold(IntPoly::monomial(0), |acc, x| acc.mul(&x.poly.pow(x.mult).unwrap()).unwrap());
            assert_eq!(back, c);
        }
    }

    #[test]
    fn shape_edge_cases() {
        let cube = validate(poly(&[1, -1, 2]).pow(3).unwrap(), 2).unwrap();
        assert_eq!(factor_weil(&cube).tag, ShapeTag::Unsupported);
        assert!(matches!(shape_of(&cube), Err(WeilError::UnsupportedShape(_))));

        let sq = validate(poly(&[1, -1, 2]).pow(2).unwrap(), 2).unwrap();
        assert_eq!(shape_of(&sq).unwrap(), Dispatch::PSquare { p: poly(&[1, -1, 2]) });

        let mixed = validate(poly(&[1, -2]).pow(4).unwrap().mul(&poly(&[1, 2]).pow(2).unwrap()).unwrap(), 4).unwrap();
        assert_eq!(shape_of(&mixed).unwrap(), Dispatch::CyclicIndex { r: 2, sign: Sign::Minus, s: 2 });

        let real = validate(poly(&[1, -2]).pow(2).unwrap().mul(&poly(&[1, 1, 4]).mul(&poly(&[1, -3, 4])).unwrap()).unwrap(), 4).unwrap();
        assert_eq!(shape_of(&real).unwrap(), Dispatch::Case2 { p: poly(&[1, 1, 4]).mul(&poly(&[1, -3, 4])).unwrap(), sign: Sign::Minus });
    }

    #[test]
    fn valuations_and_order() {
        let f = parse_and_validate(&[1, -1, 2], 2).unwrap();
        let shifted = f.poly().one_minus_t().unwrap();
        assert_eq!(shifted, poly(&[1, -1, 2]));
        assert_eq!(root_valuations(&shifted, 2).unwrap().vals(), &[r(1, 1), r(0, 1)]);
        assert_eq!(root_valuations(&poly(&[1, -4, 5]), 2).unwrap().vals(), &[r(0, 1), r(0, 1)]);
        assert_eq!(root_valuations(&poly(&[1, -3, 6]), 3).unwrap().vals(), &[r(1, 2), r(1, 2)]);
        assert_eq!(group_order(&f).unwrap(), 2);
        assert_eq!(group_order(&validate(sextic_p2q(), 2).unwrap()).unwrap(), 20);
        assert_eq!(group_order(&validate(poly(&[1, -2]).pow(6).unwrap(), 4).unwrap()).unwrap(), 1);
    }
}
