//! Exact linear algebra over fields.

use num_traits::ToPrimitive;

use super::cyclo::CycloNumber;
use super::matrix::Matrix;
use super::rational::Rational;
use super::ring::Field;

/// Exact rank by fraction-free (Bareiss) elimination.
///
/// Pivots are chosen column by column, taking the first nonzero entry at or
/// below the current row. Every division is exact: the quotient is a minor
/// of the input.
pub fn matrix_rank<T: Field>(a: &Matrix<T>) -> usize {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return 0;
    }
    let mut w = a.clone();
    let mut rank = 0;
    let mut prev_inv: Option<T> = None;
    for c in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !w[(i, c)].is_zero()) else {
            continue;
        };
        w.swap_rows(rank, p);
        let pivot = w[(rank, c)].clone();
        for i in rank + 1..m {
            let lead = w[(i, c)].clone();
            for j in c + 1..n {
                let mut v = pivot.mul(&w[(i, j)]);
                if !lead.is_zero() {
                    v = v.sub(&lead.mul(&w[(rank, j)]));
                }
                if let Some(inv) = &prev_inv {
                    if !v.is_zero() {
                        v = v.mul(inv);
                    }
                }
                w[(i, j)] = v;
            }
            w[(i, c)] = T::zero();
        }
        prev_inv = pivot.inv();
        rank += 1;
    }
    rank
}

/// Rank of a cyclotomic matrix. Matrices with rational entries are ranked
/// over Q, and integer matrices with small entries by checked i128 Bareiss
/// elimination, falling back to the general path on overflow. All routes
/// are exact.
pub fn rank_cyclo(a: &Matrix<CycloNumber>) -> usize {
    let rational: Option<Vec<Rational>> =
        a.entries().iter().map(CycloNumber::to_rational).collect();
    let Some(q) = rational else {
        return matrix_rank(a);
    };
    let small: Option<Vec<i128>> = q
        .iter()
        .map(|x| {
            if x.is_integer() {
                x.numer().to_i128()
            } else {
                None
            }
        })
        .collect();
    if let Some(v) = small {
        if let Some(r) = bareiss_i128(a.rows(), a.cols(), v) {
            return r;
        }
    }
    matrix_rank(&Matrix::from_vec(a.rows(), a.cols(), q).expect("shape"))
}

/// Bareiss rank with checked arithmetic; `None` on overflow.
fn bareiss_i128(m: usize, n: usize, mut w: Vec<i128>) -> Option<usize> {
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| w[i * n + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..n {
                w.swap(rank * n + j, p * n + j);
            }
        }
        let pivot = w[rank * n + c];
        for i in rank + 1..m {
            let lead = w[i * n + c];
            for j in c + 1..n {
                let v = pivot
                    .checked_mul(w[i * n + j])?
                    .checked_sub(lead.checked_mul(w[rank * n + j])?)?;
                w[i * n + j] = v / prev;
            }
            w[i * n + c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref<T: Field>(a: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let (m, n) = a.shape();
    let mut w = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !w[(i, c)].is_zero()) else {
            continue;
        };
        w.swap_rows(r, p);
        let inv = w[(r, c)].inv().expect("nonzero pivot");
        w.scale_row(r, &inv);
        for i in 0..m {
            if i != r && !w[(i, c)].is_zero() {
                let f = w[(i, c)].neg();
                w.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (w, pivots)
}

/// Columns form a basis of the right null space `{x : A x = 0}`.
pub fn nullspace<T: Field>(a: &Matrix<T>) -> Matrix<T> {
    let n = a.cols();
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = T::one();
        for (row, &pc) in pivots.iter().enumerate() {
            basis[(pc, k)] = r[(row, f)].neg();
        }
    }
    basis
}

/// A basis of the column space, chosen among the columns of `a`.
pub fn column_basis<T: Field>(a: &Matrix<T>) -> Matrix<T> {
    let (_, pivots) = rref(a);
    a.select_columns(&pivots)
}

/// Solves `A X = B`; free variables are set to zero. `None` if the system
/// is inconsistent.
pub fn solve<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.cols();
    let aug = a.hcat(b).ok()?;
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(pc, j)] = r[(row, n + j)].clone();
        }
    }
    Some(x)
}

pub fn inverse<T: Field>(a: &Matrix<T>) -> Option<Matrix<T>> {
    if a.rows() != a.cols() {
        return None;
    }
    let n = a.rows();
    if matrix_rank(a) != n {
        return None;
    }
    solve(a, &Matrix::identity(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyclo::CycloNumber;
    use crate::exactnum::rational::{rat, Rational};
    use crate::exactnum::ring::Ring;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|v| rat(*v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(matrix_rank(&Matrix::<Rational>::zeros(0, 0)), 0);
        assert_eq!(matrix_rank(&Matrix::<Rational>::zeros(0, 4)), 0);
        assert_eq!(matrix_rank(&Matrix::<Rational>::zeros(3, 0)), 0);
        assert_eq!(matrix_rank(&Matrix::<Rational>::identity(2)), 2);
        let z = CycloNumber::zeta(3);
        let z2 = CycloNumber::zeta_pow(3, 2);
        let m = Matrix::from_rows(vec![
            vec![z, CycloNumber::one()],
            vec![CycloNumber::one(), z2],
        ])
        .unwrap();
        assert_eq!(matrix_rank(&m), 1);
        assert_eq!(matrix_rank(&q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(matrix_rank(&q(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])), 3);
    }

    #[test]
    fn nullspace_and_inverse() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        let b = q(&[&[2, 1], &[1, 1]]);
        let bi = inverse(&b).unwrap();
        assert_eq!(b.mul(&bi).unwrap(), Matrix::identity(2));
        assert!(inverse(&q(&[&[1, 1], &[1, 1]])).is_none());
        let cb = column_basis(&a);
        assert_eq!(cb.cols(), 1);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = q(&[&[1, 0], &[0, 0]]);
        assert!(solve(&a, &q(&[&[1], &[1]])).is_none());
        let x = solve(&a, &q(&[&[3], &[0]])).unwrap();
        assert_eq!(x, q(&[&[3], &[0]]));
    }
}
