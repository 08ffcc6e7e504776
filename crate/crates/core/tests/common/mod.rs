#![allow(dead_code)]

//! Oracles that share no code with the cohomology engine: a small `i128`
//! Smith diagonal and a generic normalized bar complex in any degree.

use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::Rng;
use tate_tori::group::DEFAULT_ORDER_CAP;
use tate_tori::{FiniteGroup, GLattice, IntMatrix};

pub fn group(gens: &[&str]) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::from_cycle_strings(gens, DEFAULT_ORDER_CAP).unwrap())
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    if n == 1 {
        return group(&["()"]);
    }
    let cycle = format!(
        "({})",
        (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    );
    group(&[cycle.as_str()])
}

pub fn klein() -> Arc<FiniteGroup> {
    group(&["(1 2)", "(3 4)"])
}

pub fn s3() -> Arc<FiniteGroup> {
    group(&["(1 2 3)", "(1 2)"])
}

/// Nonzero Smith diagonal of an integer matrix, by naive elimination.
pub fn smith_diagonal_i128(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut changed = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x = x.checked_sub(q.checked_mul(*y).unwrap()).unwrap();
                    }
                }
                if a[i][t] != 0 {
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = row[j].checked_sub(q.checked_mul(row[t]).unwrap()).unwrap();
                    }
                }
                if a[t][j] != 0 {
                    changed = true;
                }
            }
            if !changed {
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        let (top, rest) = a.split_at_mut(i);
                        for (x, y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                            *x += *y;
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                let mut best = (t, t);
                for i in t..rows {
                    for j in t..cols {
                        if a[i][j] != 0
                            && (a[best.0][best.1] == 0 || a[i][j].abs() < a[best.0][best.1].abs())
                        {
                            best = (i, j);
                        }
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn action_i128(m: &GLattice) -> Vec<Vec<Vec<i128>>> {
    m.actions()
        .iter()
        .map(|a| {
            (0..a.rows())
                .map(|i| a.row(i).iter().map(|x| x.to_i128().unwrap()).collect())
                .collect()
        })
        .collect()
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..n).map(move |g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

/// Coboundary `C^k → C^{k+1}` of normalized bar cochains with values in `m`,
/// for `k ≥ 0`, as a dense matrix (rows indexed by `(k+1)`-tuples × rank).
pub fn bar_coboundary(m: &GLattice, k: usize) -> Vec<Vec<i128>> {
    let g = m.group();
    let n = g.order();
    let r = m.rank();
    let rho = action_i128(m);
    let src = tuples(n, k);
    let dst = tuples(n, k + 1);
    let src_index = |t: &[usize]| -> Option<usize> {
        if t.contains(&0) {
            return None;
        }
        Some(t.iter().fold(0, |acc, &x| acc * (n - 1) + (x - 1)))
    };
    let mut a = vec![vec![0i128; src.len() * r]; dst.len() * r];
    for (row_t, t) in dst.iter().enumerate() {
        // ρ(g1) f(g2..)
        if let Some(c) = src_index(&t[1..]) {
            for i in 0..r {
                for j in 0..r {
                    a[row_t * r + i][c * r + j] += rho[t[0]][i][j];
                }
            }
        }
        for pos in 0..k {
            let mut s: Vec<usize> = t[..pos].to_vec();
            s.push(g.mul(t[pos], t[pos + 1]));
            s.extend_from_slice(&t[pos + 2..]);
            if let Some(c) = src_index(&s) {
                let sign = if pos % 2 == 1 { 1 } else { -1 };
                for i in 0..r {
                    a[row_t * r + i][c * r + i] += sign;
                }
            }
        }
        if let Some(c) = src_index(&t[..k]) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            for i in 0..r {
                a[row_t * r + i][c * r + i] += sign;
            }
        }
    }
    a
}

/// `H^k(G, M)` for `k ≥ 1` as `(free rank, nontrivial invariant factors)`.
pub fn bar_cohomology(m: &GLattice, k: usize) -> (usize, Vec<i128>) {
    assert!(k >= 1);
    let before = smith_diagonal_i128(bar_coboundary(m, k - 1));
    let after = smith_diagonal_i128(bar_coboundary(m, k));
    let n = m.group().order();
    let dim = (n - 1).pow(k as u32) * m.rank();
    let free = dim - before.len() - after.len();
    (free, before.into_iter().filter(|&d| d != 1).collect())
}

pub fn bar_cohomology_order(m: &GLattice, k: usize) -> i128 {
    let (free, factors) = bar_cohomology(m, k);
    assert_eq!(free, 0, "cohomology of a finite group is torsion");
    factors.iter().product()
}

/// |G / [G, G]| by closing the set of commutators under multiplication.
pub fn abelianization_order(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0];
    for a in 0..n {
        for b in 0..n {
            let c = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
            if !inside[c] {
                inside[c] = true;
                members.push(c);
            }
        }
    }
    let mut i = 0;
    while i < members.len() {
        for j in 0..members.len() {
            let p = g.mul(members[i], members[j]);
            if !inside[p] {
                inside[p] = true;
                members.push(p);
            }
        }
        i += 1;
    }
    n / members.len()
}

fn mat(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

/// Integral matrices of finite order dividing `n`, used as blocks.
fn blocks(n: usize) -> Vec<IntMatrix> {
    let mut out = vec![mat(&[vec![1]])];
    if n.is_multiple_of(2) {
        out.push(mat(&[vec![-1]]));
        out.push(mat(&[vec![0, 1], vec![1, 0]]));
        out.push(mat(&[vec![1, 1], vec![0, -1]]));
    }
    if n.is_multiple_of(3) {
        out.push(mat(&[vec![0, -1], vec![1, -1]]));
        out.push(mat(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]));
    }
    if n.is_multiple_of(4) {
        out.push(mat(&[vec![0, -1], vec![1, 0]]));
        out.push(mat(&[vec![0, 0, -1], vec![1, 0, -1], vec![0, 1, -1]]));
    }
    if n.is_multiple_of(6) {
        out.push(mat(&[vec![0, -1], vec![1, 1]]));
        out.push(mat(&[vec![0, 0, -1], vec![1, 0, 0], vec![0, 1, 0]]));
    }
    out
}

fn random_unimodular<R: Rng>(rng: &mut R, r: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(r);
    let mut q = IntMatrix::identity(r);
    if r < 2 {
        return (p, q);
    }
    for _ in 0..rng.gen_range(0..4) {
        let i = rng.gen_range(0..r);
        let j = (i + rng.gen_range(1..r)) % r;
        let c: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(r);
        e[(i, j)] = c.into();
        let mut e_inv = IntMatrix::identity(r);
        e_inv[(i, j)] = (-c).into();
        p = e.mul(&p);
        q = q.mul(&e_inv);
    }
    (p, q)
}

/// A random generator matrix of order dividing `n` and rank in `1..=max_rank`,
/// built from blocks and conjugated by a random unimodular matrix.
pub fn random_cyclic_action<R: Rng>(rng: &mut R, n: usize, max_rank: usize) -> IntMatrix {
    let pool = blocks(n);
    let target = rng.gen_range(1..=max_rank);
    let mut acc: Option<IntMatrix> = None;
    loop {
        let have = acc.as_ref().map_or(0, IntMatrix::rows);
        if have == target {
            break;
        }
        let fitting: Vec<&IntMatrix> = pool.iter().filter(|b| have + b.rows() <= target).collect();
        let b = fitting[rng.gen_range(0..fitting.len())].clone();
        acc = Some(match acc {
            None => b,
            Some(a) => a.block_diag(&b),
        });
    }
    let a = acc.unwrap();
    let (p, q) = random_unimodular(rng, a.rows());
    p.mul(&a).mul(&q)
}

pub fn random_cyclic_lattice<R: Rng>(
    rng: &mut R,
    g: &Arc<FiniteGroup>,
    max_rank: usize,
) -> GLattice {
    let a = random_cyclic_action(rng, g.order(), max_rank);
    GLattice::from_generator_matrices(g, &[a]).unwrap()
}
