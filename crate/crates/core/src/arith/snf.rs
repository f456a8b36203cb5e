use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | … | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form by repeated smallest-pivot elimination.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = a[(t, t)].clone();
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    a.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    a.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
            }
            let dirty = (t + 1..rows).any(|i| !a[(i, t)].is_zero()) || (t + 1..cols).any(|j| !a[(t, j)].is_zero());
            if dirty {
                let (pi, pj) = smallest_entry(&a, t).expect("nonzero entry exists");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Pivot must divide the rest of the block; otherwise pull the
            // offending row into the pivot row and re-reduce.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithDecomposition { u, d: a, v, rank: t }
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => a[(i, j)].abs() < a[(bi, bj)].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= s.rank {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(diag.iter().all(|d| d.is_positive()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let s = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(1, 1));
        assert_eq!(s.d, IntMatrix::zeros(1, 1));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let s = check(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = check(&IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(s.rank, 1);
        let s = check(&IntMatrix::from_i64(&[&[3, 1], &[1, 3], &[0, 0]]));
        assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::from(8)]);
    }
}
