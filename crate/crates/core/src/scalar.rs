//! Scalar abstraction for the polygon and linear-programming code.
//!
//! Everything that compares slopes or pivots a tableau is written against
//! [`Scalar`], so the same code runs over `Ratio<i64>`, `BigRational`, or
//! `f64` (the latter only where values are dyadic and comparisons are exact).

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

pub trait Scalar: Num + Signed + Clone + PartialOrd + FromPrimitive + Debug + Display {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer embeds into every scalar type")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + FromPrimitive + Debug + Display {}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    fn half<S: Scalar>() -> S {
        S::ratio(1, 2)
    }

    #[test]
    fn ratio_is_exact_for_each_backend() {
        assert_eq!(half::<Ratio<i64>>() * Ratio::from_integer(2), Ratio::from_integer(1));
        assert_eq!(half::<BigRational>() + half::<BigRational>(), BigRational::from_int(1));
        assert_eq!(half::<f64>(), 0.5);
    }
}
