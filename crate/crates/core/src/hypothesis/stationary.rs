use crate::error::{Error, Result};
use crate::num::Scalar;

/// Dense square matrix, row-major. Entry (i, j) is the transition weight
/// from state j to state i, so stochastic matrices have unit column sums.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            entries: vec![T::zero(); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Contract("matrix rows must all have length n".into()));
        }
        Ok(SquareMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.entries[i * self.n + j] = x;
    }

    pub fn column_sum(&self, j: usize) -> T {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    /// Scales every column to sum to one. Zero columns are left as is.
    pub fn normalize_columns(&mut self) {
        for j in 0..self.n {
            let total = self.column_sum(j);
            if total > T::zero() {
                for i in 0..self.n {
                    let x = self.get(i, j);
                    self.set(i, j, x / total);
                }
            }
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                self.entries[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| *a * *b)
                    .sum()
            })
            .collect()
    }
}

const MAX_POWER_STEPS: usize = 100_000;

/// Stationary vector of a strictly positive column-stochastic matrix by
/// power iteration from the uniform vector. Stops once the L1 change
/// between successive iterates falls below `tolerance`.
pub fn stationary_distribution<T: Scalar>(
    matrix: &SquareMatrix<T>,
    tolerance: T,
) -> Result<Vec<T>> {
    let n = matrix.dim();
    if n == 0 {
        return Err(Error::Contract("empty matrix".into()));
    }
    let slack = T::lit(1e-12).max(T::epsilon() * T::count(16 * n));
    for j in 0..n {
        let sum = matrix.column_sum(j);
        if (sum - T::one()).abs() > slack {
            return Err(Error::Contract(format!("column {j} sums to {sum}, not 1")));
        }
        if let Some(i) = (0..n).find(|&i| !(matrix.get(i, j) > T::zero())) {
            return Err(Error::Contract(format!("entry ({i}, {j}) is not positive")));
        }
    }
    let mut pi = vec![T::one() / T::count(n); n];
    for _ in 0..MAX_POWER_STEPS {
        let mut next = matrix.mul_vec(&pi);
        let total: T = next.iter().copied().sum();
        next.iter_mut().for_each(|x| *x = *x / total);
        let change: T = next.iter().zip(&pi).map(|(a, b)| (*a - *b).abs()).sum();
        pi = next;
        if change < tolerance {
            break;
        }
    }
    Ok(pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_two_state() {
        let m = SquareMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let pi = stationary_distribution(&m, 1e-10).unwrap();
        assert_eq!(pi, vec![0.5, 0.5]);
    }

    #[test]
    fn skewed_two_state() {
        let m = SquareMatrix::from_rows(&[vec![0.9_f64, 0.3], vec![0.1, 0.7]]).unwrap();
        let pi = stationary_distribution(&m, 1e-12).unwrap();
        assert!((pi[0] - 0.75).abs() < 1e-10);
        assert!((pi[1] - 0.25).abs() < 1e-10);
    }

    #[test]
    fn single_state() {
        let m = SquareMatrix::from_rows(&[vec![1.0_f32]]).unwrap();
        assert_eq!(stationary_distribution(&m, 1e-6).unwrap(), vec![1.0]);
    }

    #[test]
    fn f32_skewed() {
        let m = SquareMatrix::from_rows(&[vec![0.9_f32, 0.3], vec![0.1, 0.7]]).unwrap();
        let pi = stationary_distribution(&m, 1e-6).unwrap();
        assert!((pi[0] - 0.75).abs() < 1e-5);
    }

    #[test]
    fn rejects_non_stochastic() {
        let m = SquareMatrix::from_rows(&[vec![0.9, 0.3], vec![0.2, 0.7]]).unwrap();
        assert!(matches!(
            stationary_distribution(&m, 1e-10),
            Err(Error::Contract(_))
        ));
        let m = SquareMatrix::from_rows(&[vec![1.0, 0.3], vec![0.0, 0.7]]).unwrap();
        assert!(matches!(
            stationary_distribution(&m, 1e-10),
            Err(Error::Contract(_))
        ));
    }
}
