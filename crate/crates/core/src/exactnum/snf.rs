//! Smith normal form over Euclidean domains (Z and Q[t, 1/t]).

use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::matrix::Matrix;
use super::ring::EuclideanDomain;

/// `u * a * v == d` with `u`, `v` invertible over the ring, `d` diagonal with
/// normalized entries in divisibility order. `v_inv` is the inverse of `v`.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: EuclideanDomain> Snf<T> {
    pub fn diagonal(&self) -> Vec<T> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

struct SnfCalc<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: EuclideanDomain> SnfCalc<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
    }

    /// col[dst] += col[src] * c
    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &c.neg());
    }

    fn pivot_key(&self, i: usize, j: usize) -> (T::Norm, usize, usize) {
        (self.a[(i, j)].norm(), i, j)
    }

    fn move_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn run(&mut self) {
        let (m, n) = self.a.shape();
        for t in 0..m.min(n) {
            let best = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !self.a[(i, j)].is_zero())
                .min_by_key(|&(i, j)| self.pivot_key(i, j));
            let Some(pos) = best else { break };
            self.move_to(t, pos);
            self.reduce_at(t);
        }
        for i in 0..m.min(n) {
            let unit = self.a[(i, i)].normalizing_unit();
            if !unit.is_one() {
                self.a.scale_row(i, &unit);
                self.u.scale_row(i, &unit);
            }
        }
    }

    fn reduce_at(&mut self, t: usize) {
        let (m, n) = self.a.shape();
        loop {
            let mut leftover = false;
            for i in t + 1..m {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = self.a[(i, t)].div_rem(&self.a[(t, t)]);
                self.add_row(i, t, &q.neg());
                leftover |= !r.is_zero();
            }
            for j in t + 1..n {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = self.a[(t, j)].div_rem(&self.a[(t, t)]);
                self.add_col(j, t, &q.neg());
                leftover |= !r.is_zero();
            }
            if leftover {
                let next = (t + 1..m)
                    .map(|i| (i, t))
                    .chain((t + 1..n).map(|j| (t, j)))
                    .filter(|&(i, j)| !self.a[(i, j)].is_zero())
                    .min_by_key(|&(i, j)| self.pivot_key(i, j))
                    .expect("a nonzero remainder exists");
                self.move_to(t, next);
                continue;
            }
            let pivot = self.a[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !pivot.divides(&self.a[(i, j)])));
            match offender {
                Some(i) => self.add_row(t, i, &T::one()),
                None => return,
            }
        }
    }
}

/// Smith normal form with deterministic pivoting: the smallest-norm entry,
/// ties broken by (row, column).
pub fn smith_normal_form<T: EuclideanDomain>(a: &Matrix<T>) -> Snf<T> {
    let (m, n) = a.shape();
    let mut calc = SnfCalc {
        a: a.clone(),
        u: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    calc.run();
    Snf {
        u: calc.u,
        d: calc.a,
        v: calc.v,
        v_inv: calc.v_inv,
    }
}

pub fn smith_normal_form_int(a: &Matrix<BigInt>) -> Snf<BigInt> {
    smith_normal_form(a)
}

/// Smith normal form over Q[t, 1/t]. Rows are first multiplied by powers
/// of t so that every entry lies in Q[t]; diagonal entries come out monic
/// with nonzero constant term (units become 1).
pub fn smith_normal_form_poly(a: &Matrix<LaurentPoly>) -> Snf<LaurentPoly> {
    let (m, n) = a.shape();
    let mut cleared = a.clone();
    let mut pre = Matrix::<LaurentPoly>::identity(m);
    for i in 0..m {
        let low = (0..n)
            .filter_map(|j| a[(i, j)].valuation())
            .min()
            .unwrap_or(0);
        if low != 0 {
            let unit = LaurentPoly::t_pow(-low);
            cleared.scale_row(i, &unit);
            pre[(i, i)] = unit;
        }
    }
    let mut snf = smith_normal_form(&cleared);
    snf.u = snf.u.mul(&pre).expect("square pre-multiplier");
    snf
}

/// Columns form a free basis of `{x : A x = 0}` over Q[t, 1/t].
pub fn kernel_basis_poly(a: &Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
    let snf = smith_normal_form_poly(a);
    let r = snf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_columns(&cols)
}

pub fn int_matrix(rows: &[Vec<i64>]) -> Matrix<BigInt> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|v| BigInt::from(*v)).collect())
            .collect(),
    )
    .expect("rectangular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ring::EuclideanDomain;
    use crate::exactnum::Ring;

    fn check_int(a: &Matrix<BigInt>) -> Snf<BigInt> {
        let s = smith_normal_form_int(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), Matrix::identity(a.cols()));
        s
    }

    #[test]
    fn int_examples() {
        let s = check_int(&int_matrix(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = check_int(&int_matrix(&[vec![0]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(0)]);
        let s = check_int(&int_matrix(&[vec![1, 2], vec![3, 4]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
        let s = check_int(&int_matrix(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, -4, -16],
        ]));
        assert_eq!(
            s.diagonal(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn degenerate_shapes() {
        let s = smith_normal_form_int(&Matrix::zeros(0, 3));
        assert_eq!(s.rank(), 0);
        assert_eq!(s.v.shape(), (3, 3));
        let s = smith_normal_form_int(&Matrix::zeros(2, 0));
        assert_eq!(s.u.shape(), (2, 2));
    }

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(c)
    }

    fn check_poly(a: &Matrix<LaurentPoly>) -> Snf<LaurentPoly> {
        let s = smith_normal_form_poly(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), Matrix::identity(a.cols()));
        s
    }

    #[test]
    fn poly_examples() {
        let tm1 = lp(&[-1, 1]);
        let a = Matrix::from_rows(vec![
            vec![tm1.clone(), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), tm1.clone()],
        ])
        .unwrap();
        assert_eq!(check_poly(&a).diagonal(), vec![tm1.clone(), tm1.clone()]);

        let a = Matrix::from_rows(vec![vec![lp(&[0, 2])]]).unwrap();
        assert_eq!(check_poly(&a).diagonal(), vec![LaurentPoly::one()]);

        let a = Matrix::from_rows(vec![
            vec![tm1.clone(), LaurentPoly::one()],
            vec![LaurentPoly::zero(), tm1.clone()],
        ])
        .unwrap();
        assert_eq!(
            check_poly(&a).diagonal(),
            vec![LaurentPoly::one(), tm1.mul(&tm1)]
        );
    }

    #[test]
    fn poly_with_negative_powers() {
        let a = Matrix::from_rows(vec![
            vec![lp(&[1, 1]).shift(-3), lp(&[0, 1])],
            vec![lp(&[2]), lp(&[-1, 1]).shift(-1)],
        ])
        .unwrap();
        let s = check_poly(&a);
        for (i, d) in s.diagonal().iter().enumerate() {
            assert!(d.is_zero() || d.valuation() == Some(0), "entry {i}: {d}");
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis_poly(&Matrix::identity(2));
        assert_eq!(k.shape(), (2, 0));
        let k = kernel_basis_poly(&Matrix::zeros(1, 3));
        assert_eq!(k.shape(), (3, 3));
        let a = Matrix::from_rows(vec![vec![lp(&[-1, 1]), lp(&[1, -1])]]).unwrap();
        let k = kernel_basis_poly(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).unwrap().is_zero());
        // proportional to (1, 1)
        assert_eq!(k[(0, 0)], k[(1, 0)]);
        assert!(k[(0, 0)].is_unit());
    }
}
