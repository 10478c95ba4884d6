use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::IntMatrix;

/// `d = u · m · v` with `d` diagonal, `d_i | d_{i+1}`, all `d_i ≥ 0`, and
/// `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_0, …, d_{min(rows, cols) − 1}`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());
    for t in 0..n {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, t) else {
                return SmithForm { d: a, u, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..a.rows() {
                let q = a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_row(i, t, &-q.clone());
                    u.add_row(i, t, &-q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..a.cols() {
                let q = a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_col(j, t, &-q.clone());
                    v.add_col(j, t, &-q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..a.rows()).find(|&i| (t + 1..a.cols()).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d: a, u, v }
}
