use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Scalar usable as a threshold or cut point compared against integer cells.
///
/// Implemented for `f32`, `f64` and `Ratio<i64>`; the rational form keeps
/// half-integer cut points such as 75.5 exact.
pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn from_cell(value: i64) -> Self {
        Self::from_i64(value).expect("integer cell representable in scalar type")
    }

    /// Midpoint of two integer cells, exact whenever the type allows it.
    fn between(lo: i64, hi: i64) -> Self {
        let two = Self::one() + Self::one();
        (Self::from_cell(lo) + Self::from_cell(hi)) / two
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64_exact(value: f64) -> Option<Self>;
}

impl Scalar for f64 {
    fn from_f64_exact(value: f64) -> Option<Self> {
        Some(value)
    }
}

impl Scalar for f32 {
    fn from_f64_exact(value: f64) -> Option<Self> {
        let narrowed = value as f32;
        (<f64 as From<f32>>::from(narrowed) == value).then_some(narrowed)
    }
}

impl Scalar for Ratio<i64> {
    fn from_f64_exact(value: f64) -> Option<Self> {
        if !value.is_finite() {
            return None;
        }
        let (mut numer, mut denom) = (value, 1i64);
        while numer.fract() != 0.0 {
            numer *= 2.0;
            denom = denom.checked_mul(2)?;
        }
        if numer.abs() >= 9.2e18 {
            return None;
        }
        Some(Ratio::new(numer as i64, denom))
    }
}
