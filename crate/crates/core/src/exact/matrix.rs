use std::ops::{Div, Index, IndexMut, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::InvalidArgument(format!(
                "ragged matrix: row of length {} among rows of length {c}",
                bad.len()
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Deletes row and column `k`.
    pub fn minor(&self, k: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != k) {
            for j in (0..self.cols).filter(|&j| j != k) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Faddeev–LeVerrier recursion. Returns the coefficients `c_0..c_n` of
/// `det(xI - M)`, low degree first. Over the integers every division by `k`
/// is exact.
fn faddeev_leverrier<T>(m: &Matrix<T>) -> Result<Vec<T>>
where
    T: Clone + Zero + One + FromPrimitive + Div<Output = T> + Sub<Output = T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
{
    m.require_square()?;
    let n = m.rows;
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    // mk = M_k; M_1 = I, M_{k+1} = A M_k + c_{n-k} I, c_{n-k} = -tr(A M_k)/k.
    let mut mk: Matrix<T> = Matrix::zeros(n, n);
    for i in 0..n {
        mk[(i, i)] = T::one();
    }
    for k in 1..=n {
        let am = mat_mul(m, &mk);
        let trace = (0..n).fold(T::zero(), |acc, i| &acc + &am[(i, i)]);
        let kk = T::from_usize(k).expect("small integer");
        let c = T::zero() - trace / kk;
        coeffs[n - k] = c.clone();
        if k < n {
            mk = am;
            for i in 0..n {
                mk[(i, i)] = &mk[(i, i)] + &c;
            }
        }
    }
    Ok(coeffs)
}

fn mat_mul<T>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
{
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let v = &out[(i, j)] + &(aik * &b[(k, j)]);
                out[(i, j)] = v;
            }
        }
    }
    out
}

/// Exact characteristic polynomial `det(xI - M)` of an integer matrix.
pub fn char_poly_exact(m: &IntMatrix) -> Result<IntPoly> {
    Ok(IntPoly::new(faddeev_leverrier(m)?))
}

/// Characteristic polynomial of a rational matrix, scaled to a primitive
/// integer polynomial with the same roots.
pub fn char_poly_rational(m: &RatMatrix) -> Result<IntPoly> {
    Ok(IntPoly::from_rational(&faddeev_leverrier(m)?))
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * a[(n - 1, n - 1)].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};
    use proptest::prelude::*;

    fn reduced_laplacian(g: &crate::graph::Graph) -> IntMatrix {
        IntMatrix::from_i64(&g.laplacian_int()).unwrap().minor(0)
    }

    #[test]
    fn swap_matrix_char_poly() {
        let m = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(char_poly_exact(&m).unwrap(), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn non_square_rejected() {
        let m = IntMatrix::from_i64(&[vec![0, 1, 2], vec![1, 0, 3]]).unwrap();
        assert!(matches!(char_poly_exact(&m), Err(Error::NotSquare { .. })));
        assert!(matches!(det_exact(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn matrix_tree_small_cases() {
        assert_eq!(
            det_exact(&reduced_laplacian(&complete_graph(4))).unwrap(),
            BigInt::from(16)
        );
        assert_eq!(
            det_exact(&reduced_laplacian(&path_graph(6))).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            det_exact(&reduced_laplacian(&cycle_graph(5).unwrap())).unwrap(),
            BigInt::from(5)
        );
    }

    #[test]
    fn det_needs_pivoting() {
        let m = IntMatrix::from_i64(&[vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 1]]).unwrap();
        // Cofactor expansion along the second row: -3 * (2*1 - 1*1) = -3.
        assert_eq!(det_exact(&m).unwrap(), BigInt::from(-3));
    }

    /// Leibniz-formula determinant, independent of Bareiss.
    fn det_permutations(m: &[Vec<i64>]) -> BigInt {
        fn rec(m: &[Vec<i64>], row: usize, used: &mut [bool], sign: i64, acc: BigInt) -> BigInt {
            if row == m.len() {
                return acc * sign;
            }
            let mut total = BigInt::zero();
            for c in 0..m.len() {
                if used[c] {
                    continue;
                }
                // each already-chosen larger column forms one inversion with c
                let inversions = used[c + 1..].iter().filter(|&&u| u).count();
                let s = if inversions % 2 == 0 { sign } else { -sign };
                used[c] = true;
                total += rec(m, row + 1, used, s, &acc * BigInt::from(m[row][c]));
                used[c] = false;
            }
            total
        }
        rec(m, 0, &mut vec![false; m.len()], 1, BigInt::one())
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=6)
            .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))
    }

    proptest! {
        #[test]
        fn char_poly_consistent_with_determinant(rows in small_matrix(), x in -4i64..=4) {
            let n = rows.len();
            let m = IntMatrix::from_i64(&rows).unwrap();
            let cp = char_poly_exact(&m).unwrap();
            prop_assert_eq!(cp.degree(), Some(n));
            let det = det_exact(&m).unwrap();
            prop_assert_eq!(det_permutations(&rows), det.clone());
            let sign = if n % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(cp.coeff(0), det * sign);
            // p(x) = det(xI - M)
            let shifted: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { x - rows[i][j] } else { -rows[i][j] }).collect())
                .collect();
            prop_assert_eq!(cp.eval_int(&BigInt::from(x)), det_permutations(&shifted));
        }
    }
}
