//! Exact linear algebra over the rationals: row reduction, rank, kernels.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// A dense matrix as a list of rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = Rational::one() / &a[r][c];
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            Matrix {
                rows: self.rows,
                cols: self.cols,
                data: a,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Ax = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.data[i][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        self.data
            .iter()
            .map(|row| row.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }
}

/// Rank of the span of a list of vectors of length `len`.
pub fn span_rank(vectors: &[Vec<Rational>], len: usize) -> usize {
    Matrix::from_rows(vectors.to_vec(), len).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn det(m: &[Vec<Rational>]) -> Rational {
        // Laplace expansion; fine for the tiny matrices used here
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        crate::sign::combinations(n, k)
    }

    /// The largest k with a nonzero k×k minor.
    fn rank_by_minors(m: &Matrix) -> usize {
        for k in (1..=m.rows.min(m.cols)).rev() {
            for rs in subsets(m.rows, k) {
                for cs in subsets(m.cols, k) {
                    let sub: Vec<Vec<Rational>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, c), r)
                .prop_map(move |rows| Matrix::from_rows(rows.into_iter().map(|row| row.into_iter().map(rat).collect()).collect(), c))
        })
    }

    #[test]
    fn small_examples() {
        let m = Matrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]], 2);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]), vec![rat(0), rat(0)]);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
        assert_eq!(Matrix::zeros(3, 2).kernel().len(), 2);
    }

    proptest! {
        #[test]
        fn rank_matches_minors(m in matrix_strategy()) {
            prop_assert_eq!(m.rank(), rank_by_minors(&m));
        }

        #[test]
        fn kernel_is_annihilated_and_complementary(m in matrix_strategy()) {
            let k = m.kernel();
            prop_assert_eq!(k.len() + m.rank(), m.cols);
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(span_rank(&k, m.cols), k.len());
        }
    }
}
