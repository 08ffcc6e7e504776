//! Smith normal form and column-echelon reduction over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::AbelianError;

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal with
/// `d₁ | d₂ | …`, all non-negative, zeros trailing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Full reduction state. `u_inv` is kept alongside `u` so that cokernel
/// generators can be read off without inverting.
pub(crate) struct SmithData {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithData {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form with transforms.
///
/// Pivoting picks the nonzero entry of least absolute value in the remaining
/// block, ties broken by lowest `(row, col)`, so equal inputs give equal `U`, `V`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let d = smith_reduce(a, true);
    SmithDecomposition {
        u: d.u,
        s: d.s,
        v: d.v,
    }
}

/// Nonzero diagonal of the Smith form, skipping the transform bookkeeping.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    smith_reduce(a, false).diagonal()
}

fn min_abs_entry(
    a: &IntMatrix,
    rows: impl Iterator<Item = usize> + Clone,
    cols: impl Iterator<Item = usize> + Clone,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.abs() < a[(bi, bj)].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

pub(crate) fn smith_reduce(a: &IntMatrix, transforms: bool) -> SmithData {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let (mut u, mut u_inv, mut v) = if transforms {
        (
            IntMatrix::identity(m),
            IntMatrix::identity(m),
            IntMatrix::identity(n),
        )
    } else {
        (
            IntMatrix::zeros(0, 0),
            IntMatrix::zeros(0, 0),
            IntMatrix::zeros(0, 0),
        )
    };

    // Row operation `row[dst] += f * row[src]` applied to S and U, with the
    // inverse column operation on U⁻¹.
    let row_op = |s: &mut IntMatrix,
                  u: &mut IntMatrix,
                  u_inv: &mut IntMatrix,
                  dst: usize,
                  src: usize,
                  f: &BigInt,
                  from: usize| {
        s.add_row_multiple(dst, src, f, from);
        if transforms {
            u.add_row_multiple(dst, src, f, 0);
            u_inv.add_col_multiple(src, dst, &-f, 0);
        }
    };
    let col_op =
        |s: &mut IntMatrix, v: &mut IntMatrix, dst: usize, src: usize, f: &BigInt, from: usize| {
            s.add_col_multiple(dst, src, f, from);
            if transforms {
                v.add_col_multiple(dst, src, f, 0);
            }
        };

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, t..m, t..n) else {
            break;
        };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        if transforms {
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = &s[(i, t)] / &s[(t, t)];
                row_op(&mut s, &mut u, &mut u_inv, i, t, &-q, t);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = &s[(t, j)] / &s[(t, t)];
                col_op(&mut s, &mut v, j, t, &-q, t);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot appeared in row or column t.
                let (bi, bj) = min_abs_entry(&s, t..m, t..t + 1)
                    .into_iter()
                    .chain(min_abs_entry(&s, t..t + 1, t..n))
                    .min_by(|x, y| s[*x].abs().cmp(&s[*y].abs()).then(x.cmp(y)))
                    .expect("pivot row/column is nonzero");
                s.swap_rows(t, bi);
                s.swap_cols(t, bj);
                if transforms {
                    u.swap_rows(t, bi);
                    u_inv.swap_cols(t, bi);
                    v.swap_cols(t, bj);
                }
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let p = s[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => row_op(&mut s, &mut u, &mut u_inv, t, i, &BigInt::one(), t),
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            if transforms {
                u.negate_row(t);
                u_inv.negate_col(t);
            }
        }
        t += 1;
    }
    SmithData {
        s,
        u,
        u_inv,
        v,
        rank: t,
    }
}

/// Column-echelon form `A · V = H` with `V` unimodular. The first `rank`
/// columns of `H` are independent; the remaining columns are zero, so the
/// matching columns of `V` are a ℤ-basis of the kernel.
pub(crate) struct ColumnEchelon {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

pub(crate) fn column_echelon(a: &IntMatrix, track_v: bool) -> ColumnEchelon {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut v = if track_v {
        IntMatrix::identity(n)
    } else {
        IntMatrix::zeros(0, 0)
    };
    let mut pc = 0;
    for i in 0..m {
        if pc == n {
            break;
        }
        while let Some((_, j)) = min_abs_entry(&h, i..i + 1, pc..n) {
            h.swap_cols(pc, j);
            if track_v {
                v.swap_cols(pc, j);
            }
            let mut done = true;
            for j in pc + 1..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = &h[(i, j)] / &h[(i, pc)];
                let f = -q;
                // Columns ≥ pc vanish in rows < i, so only rows ≥ i need updating.
                h.add_col_multiple(j, pc, &f, i);
                if track_v {
                    v.add_col_multiple(j, pc, &f, 0);
                }
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                pc += 1;
                break;
            }
        }
    }
    ColumnEchelon { h, v, rank: pc }
}

/// Solves `B · X = C` exactly for `B` with independent columns.
pub fn solve_exact(b: &IntMatrix, c: &IntMatrix) -> Result<IntMatrix, AbelianError> {
    assert_eq!(b.rows(), c.rows(), "solve_exact: row mismatch");
    let d = smith_reduce(b, true);
    solve_with(&d, b.cols(), c)
}

pub(crate) fn solve_with(
    d: &SmithData,
    unknowns: usize,
    c: &IntMatrix,
) -> Result<IntMatrix, AbelianError> {
    if d.rank < unknowns {
        return Err(AbelianError::DependentBasis);
    }
    let w = d.u.mul(c);
    let mut y = IntMatrix::zeros(unknowns, c.cols());
    for j in 0..c.cols() {
        for i in 0..w.rows() {
            let x = &w[(i, j)];
            if i < d.rank {
                let (q, r) = x.div_rem(&d.s[(i, i)]);
                if !r.is_zero() {
                    return Err(AbelianError::Containment { column: j });
                }
                y[(i, j)] = q;
            } else if !x.is_zero() {
                return Err(AbelianError::Containment { column: j });
            }
        }
    }
    Ok(d.v.mul(&y))
}
