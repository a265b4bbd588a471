use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// Result of a Smith normal form computation: `u * m * v == d` with `u` and
/// `v` unimodular and `d` diagonal with `d[i] | d[i + 1]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn pivot_search(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn clear_column(&mut self, t: usize) {
        for i in t + 1..self.a.rows() {
            while !self.a[(i, t)].is_zero() {
                let q = &self.a[(i, t)] / &self.a[(t, t)];
                self.row_add(i, t, &-q);
                if !self.a[(i, t)].is_zero() {
                    self.row_swap(i, t);
                }
            }
        }
    }

    fn clear_row(&mut self, t: usize) {
        for j in t + 1..self.a.cols() {
            while !self.a[(t, j)].is_zero() {
                let q = &self.a[(t, j)] / &self.a[(t, t)];
                self.col_add(j, t, &-q);
                if !self.a[(t, j)].is_zero() {
                    self.col_swap(j, t);
                }
            }
        }
    }

    fn column_clear(&self, t: usize) -> bool {
        (t + 1..self.a.rows()).all(|i| self.a[(i, t)].is_zero())
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !(&self.a[(i, j)] % p).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form with both transforms and their inverses.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
        v_inv: IntegerMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.pivot_search(t) else {
            break;
        };
        r.row_swap(t, pi);
        r.col_swap(t, pj);
        loop {
            r.clear_column(t);
            r.clear_row(t);
            if !r.column_clear(t) {
                continue;
            }
            match r.non_divisible_row(t) {
                Some(i) => r.row_add(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.row_negate(t);
        }
        t += 1;
    }
    SmithForm {
        d: r.a,
        u: r.u,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank: t,
    }
}
