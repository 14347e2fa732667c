use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point scalar used by every numeric routine: f32 or f64.
pub trait Scalar:
    Float
    + FromPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an f64 literal; exact for f64, rounded for f32.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Largest absolute difference between two equally long vectors.
pub(crate) fn max_abs_diff<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).abs())
        .fold(T::zero(), T::max)
}

/// Divides every entry by the maximum entry; leaves the vector unchanged when
/// the maximum is not positive.
pub(crate) fn max_normalize<T: Scalar>(v: &mut [T]) {
    let max = v.iter().copied().fold(T::zero(), T::max);
    if max > T::zero() {
        for x in v.iter_mut() {
            *x = *x / max;
        }
    }
}

/// Linear rescale onto [0, 1]; a constant vector is left untouched.
pub(crate) fn rescale_unit<T: Scalar>(v: &mut [T]) {
    let (lo, hi) = v
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), x| {
            (lo.min(*x), hi.max(*x))
        });
    if v.is_empty() || !(hi > lo) {
        return;
    }
    let span = hi - lo;
    for x in v.iter_mut() {
        *x = (*x - lo) / span;
    }
}

/// In-place softmax with max subtraction.
pub(crate) fn softmax<T: Scalar>(scores: &mut [T]) {
    let max = scores.iter().copied().fold(T::neg_infinity(), T::max);
    let mut total = T::zero();
    for s in scores.iter_mut() {
        *s = (*s - max).exp();
        total = total + *s;
    }
    for s in scores.iter_mut() {
        *s = *s / total;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescale_constant_is_noop() {
        let mut v = vec![0.3_f64, 0.3, 0.3];
        rescale_unit(&mut v);
        assert_eq!(v, vec![0.3, 0.3, 0.3]);
    }

    #[test]
    fn rescale_spans_unit_interval() {
        let mut v = vec![2.0_f32, 4.0, 3.0];
        rescale_unit(&mut v);
        assert_eq!(v, vec![0.0, 1.0, 0.5]);
    }

    #[test]
    fn softmax_sums_to_one() {
        let mut v = vec![1000.0_f64, 999.0, -5.0];
        softmax(&mut v);
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(v[0] > v[1] && v[1] > v[2]);
    }
}
