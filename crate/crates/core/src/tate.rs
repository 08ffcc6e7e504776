//! Tate cohomology `Ĥ^i(G, M)` for `i ∈ {−1, 0, 1, 2}`.
//!
//! Degrees −1 and 0 always use the norm recipes. Degrees 1 and 2 use
//! normalized bar cochains, except for cyclic `G` where 2-periodicity lets
//! them be read off the norm recipes; explicit bar representatives are
//! produced from those on demand.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::abelian::{
    kernel_basis, subquotient_presentation, AbMorphism, AbelianError, FinAbGroup, IntMatrix,
    Presentation,
};
use crate::group::Subgroup;
use crate::lattice::{restrict_lattice, GLattice};

/// Largest normalized degree-2 bar system, `(n−1)²·r` unknowns, solved without `force`.
pub const BAR_GUARDRAIL: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TateError {
    #[error("cohomology has free rank {0}; the lattice action is broken upstream")]
    InfiniteCohomology(usize),
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("degree {0} is outside the supported window -1..=2")]
    BadDegree(i32),
    #[error(
        "bar-resolution system has {unknowns} unknowns (limit {limit}); pass --force to proceed"
    )]
    Guardrail { unknowns: usize, limit: usize },
    #[error("restriction operates on degrees 1 and 2 only")]
    RestrictionDegree,
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusOne,
    Zero,
    One,
    Two,
}

impl Degree {
    pub const ALL: [Degree; 4] = [Degree::MinusOne, Degree::Zero, Degree::One, Degree::Two];

    pub fn as_i32(self) -> i32 {
        match self {
            Degree::MinusOne => -1,
            Degree::Zero => 0,
            Degree::One => 1,
            Degree::Two => 2,
        }
    }
}

impl TryFrom<i32> for Degree {
    type Error = TateError;

    fn try_from(i: i32) -> Result<Self, TateError> {
        match i {
            -1 => Ok(Degree::MinusOne),
            0 => Ok(Degree::Zero),
            1 => Ok(Degree::One),
            2 => Ok(Degree::Two),
            other => Err(TateError::BadDegree(other)),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i32())
    }
}

/// Where the columns of [`CohomologyGroup::cocycle_reps`] live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CochainShape {
    /// Vectors of `M` itself.
    Lattice { rank: usize },
    /// Normalized cochains on `(G∖{1})^arity`, coordinates ordered by
    /// (element tuple lexicographically, lattice coordinate).
    Bar {
        arity: usize,
        group_order: usize,
        rank: usize,
    },
}

impl CochainShape {
    pub fn len(&self) -> usize {
        match *self {
            CochainShape::Lattice { rank } => rank,
            CochainShape::Bar {
                arity,
                group_order,
                rank,
            } => (group_order - 1).pow(arity as u32) * rank,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `M^G / N·M` or `ker N / I_G·M`.
    Norm,
    /// Normalized bar cochains.
    Bar,
    /// Cyclic group, degree 1 or 2 read off degree −1 or 0.
    CyclicPeriodicity { generator: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TateOptions {
    pub fast_path: bool,
    pub force: bool,
}

impl Default for TateOptions {
    fn default() -> Self {
        Self {
            fast_path: true,
            force: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: Degree,
    lattice: GLattice,
    method: Method,
    presentation: Presentation,
    cochain_shape: CochainShape,
}

impl CohomologyGroup {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn structure(&self) -> &FinAbGroup {
        self.presentation.group()
    }

    pub fn order(&self) -> BigInt {
        self.structure()
            .order()
            .expect("Tate cohomology of a lattice is finite")
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn lattice(&self) -> &GLattice {
        &self.lattice
    }

    pub fn cochain_shape(&self) -> CochainShape {
        self.cochain_shape
    }

    /// One column per presentation generator.
    pub fn cocycle_reps(&self) -> &IntMatrix {
        self.structure()
            .generator_lift()
            .expect("cohomology groups carry lifts")
    }

    /// Representatives as normalized bar cocycles (degrees 1 and 2 only).
    pub fn bar_representatives(&self) -> Result<IntMatrix, TateError> {
        let arity = match self.degree {
            Degree::One => 1,
            Degree::Two => 2,
            _ => return Err(TateError::RestrictionDegree),
        };
        match self.method {
            Method::Bar => Ok(self.cocycle_reps().clone()),
            Method::CyclicPeriodicity { generator } => {
                let reps = self.cocycle_reps();
                let len = bar_len(&self.lattice, arity);
                let cols: Vec<Vec<BigInt>> = reps
                    .columns()
                    .map(|m| match arity {
                        1 => cyclic_lattice_to_bar1(&self.lattice, generator, &m),
                        _ => cyclic_lattice_to_bar2(&self.lattice, generator, &m),
                    })
                    .collect();
                Ok(IntMatrix::from_columns(len, &cols))
            }
            Method::Norm => unreachable!("degrees 1 and 2 never use the norm method"),
        }
    }

    /// Reduced generator coordinates of the class of a normalized bar cocycle.
    pub fn coordinates_of_bar_cocycle(&self, c: &[BigInt]) -> Result<Vec<BigInt>, TateError> {
        match (self.method, self.degree) {
            (Method::Bar, _) => Ok(self.presentation.coordinates(c)?),
            (Method::CyclicPeriodicity { generator }, Degree::One) => {
                let m = cyclic_bar1_to_lattice(&self.lattice, generator, c);
                Ok(self.presentation.coordinates(&m)?)
            }
            (Method::CyclicPeriodicity { generator }, Degree::Two) => {
                let m = cyclic_bar2_to_lattice(&self.lattice, generator, c);
                Ok(self.presentation.coordinates(&m)?)
            }
            _ => Err(TateError::RestrictionDegree),
        }
    }
}

pub fn tate_group(m: &GLattice, degree: Degree) -> Result<CohomologyGroup, TateError> {
    tate_group_with(m, degree, &TateOptions::default())
}

pub fn tate_group_with(
    m: &GLattice,
    degree: Degree,
    opts: &TateOptions,
) -> Result<CohomologyGroup, TateError> {
    let r = m.rank();
    let cyclic = if opts.fast_path {
        m.group().cyclic_generator()
    } else {
        None
    };
    let (presentation, method, shape) = match degree {
        Degree::MinusOne => (
            norm_kernel_mod_augmentation(m)?,
            Method::Norm,
            CochainShape::Lattice { rank: r },
        ),
        Degree::Zero => (
            fixed_mod_norms(m)?,
            Method::Norm,
            CochainShape::Lattice { rank: r },
        ),
        Degree::One | Degree::Two if cyclic.is_some() => {
            let generator = cyclic.unwrap_or_default();
            let p = if degree == Degree::One {
                norm_kernel_mod_augmentation(m)?
            } else {
                fixed_mod_norms(m)?
            };
            (
                p,
                Method::CyclicPeriodicity { generator },
                CochainShape::Lattice { rank: r },
            )
        }
        Degree::One => (bar_degree_one(m)?, Method::Bar, bar_shape(m, 1)),
        Degree::Two => {
            let unknowns = bar_len(m, 2);
            if unknowns > BAR_GUARDRAIL && !opts.force {
                return Err(TateError::Guardrail {
                    unknowns,
                    limit: BAR_GUARDRAIL,
                });
            }
            (bar_degree_two(m)?, Method::Bar, bar_shape(m, 2))
        }
    };
    let free = presentation.group().free_rank();
    if free > 0 {
        return Err(TateError::InfiniteCohomology(free));
    }
    Ok(CohomologyGroup {
        degree,
        lattice: m.clone(),
        method,
        presentation,
        cochain_shape: shape,
    })
}

fn bar_shape(m: &GLattice, arity: usize) -> CochainShape {
    CochainShape::Bar {
        arity,
        group_order: m.group().order(),
        rank: m.rank(),
    }
}

fn bar_len(m: &GLattice, arity: usize) -> usize {
    bar_shape(m, arity).len()
}

/// `ρ(g) − I` for each generator, stacked vertically.
fn augmentation_stack(m: &GLattice) -> IntMatrix {
    let r = m.rank();
    let id = IntMatrix::identity(r);
    m.group()
        .generator_indices()
        .iter()
        .fold(IntMatrix::zeros(0, r), |acc, &g| {
            acc.vstack(&m.action(g).sub(&id))
        })
}

/// `M^G / N·M`.
fn fixed_mod_norms(m: &GLattice) -> Result<Presentation, TateError> {
    let fixed = kernel_basis(&augmentation_stack(m));
    Ok(subquotient_presentation(&fixed, &m.norm_matrix())?)
}

/// `ker N / I_G·M`, with `I_G·M` spanned by `(ρ(s) − I)e_j` over generators `s`.
fn norm_kernel_mod_augmentation(m: &GLattice) -> Result<Presentation, TateError> {
    let r = m.rank();
    let ker = kernel_basis(&m.norm_matrix());
    let id = IntMatrix::identity(r);
    let aug = m
        .group()
        .generator_indices()
        .iter()
        .fold(IntMatrix::zeros(r, 0), |acc, &g| {
            acc.hstack(&m.action(g).sub(&id))
        });
    Ok(subquotient_presentation(&ker, &aug)?)
}

fn add_block(mat: &mut IntMatrix, row0: usize, col0: usize, block: &IntMatrix, sign: i64) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let x = &block[(i, j)];
            if !x.is_zero() {
                mat[(row0 + i, col0 + j)] += x * sign;
            }
        }
    }
}

fn add_identity(mat: &mut IntMatrix, row0: usize, col0: usize, r: usize, sign: i64) {
    for i in 0..r {
        mat[(row0 + i, col0 + i)] += sign;
    }
}

/// Matrix of `c ↦ (g,h) ↦ c(gh) − c(g) − ρ(g)c(h)` on normalized 1-cochains.
pub(crate) fn bar_cocycle_matrix_1(m: &GLattice) -> IntMatrix {
    let g = m.group();
    let n = g.order();
    let r = m.rank();
    let at = |x: usize| (x - 1) * r;
    let mut d = IntMatrix::zeros((n - 1) * (n - 1) * r, (n - 1) * r);
    let mut row = 0;
    for a in 1..n {
        for b in 1..n {
            let ab = g.mul(a, b);
            if ab != 0 {
                add_identity(&mut d, row, at(ab), r, 1);
            }
            add_identity(&mut d, row, at(a), r, -1);
            add_block(&mut d, row, at(b), m.action(a), -1);
            row += r;
        }
    }
    d
}

/// Coboundaries `g ↦ (ρ(g) − I)e_j`, one column per basis vector.
pub(crate) fn bar_coboundaries_1(m: &GLattice) -> IntMatrix {
    let n = m.group().order();
    let r = m.rank();
    let id = IntMatrix::identity(r);
    let mut b = IntMatrix::zeros((n - 1) * r, r);
    for a in 1..n {
        add_block(&mut b, (a - 1) * r, 0, &m.action(a).sub(&id), 1);
    }
    b
}

/// Matrix of the normalized 2-cocycle condition
/// `ρ(g)c(h,k) − c(gh,k) + c(g,hk) − c(g,h)` over all triples of non-identity elements.
pub(crate) fn bar_cocycle_matrix_2(m: &GLattice) -> IntMatrix {
    let g = m.group();
    let n = g.order();
    let r = m.rank();
    let at = |x: usize, y: usize| ((x - 1) * (n - 1) + (y - 1)) * r;
    let mut d = IntMatrix::zeros((n - 1).pow(3) * r, (n - 1).pow(2) * r);
    let mut row = 0;
    for a in 1..n {
        for b in 1..n {
            let ab = g.mul(a, b);
            for c in 1..n {
                let bc = g.mul(b, c);
                add_block(&mut d, row, at(b, c), m.action(a), 1);
                if ab != 0 {
                    add_identity(&mut d, row, at(ab, c), r, -1);
                }
                if bc != 0 {
                    add_identity(&mut d, row, at(a, bc), r, 1);
                }
                add_identity(&mut d, row, at(a, b), r, -1);
                row += r;
            }
        }
    }
    d
}

/// `δf(g,h) = ρ(g)f(h) − f(gh) + f(g)` for each basis 1-cochain `f`.
pub(crate) fn bar_coboundaries_2(m: &GLattice) -> IntMatrix {
    let g = m.group();
    let n = g.order();
    let r = m.rank();
    let at = |x: usize, y: usize| ((x - 1) * (n - 1) + (y - 1)) * r;
    let col = |x: usize| (x - 1) * r;
    let mut b = IntMatrix::zeros((n - 1).pow(2) * r, (n - 1) * r);
    for a in 1..n {
        for bb in 1..n {
            let row = at(a, bb);
            add_block(&mut b, row, col(bb), m.action(a), 1);
            let ab = g.mul(a, bb);
            if ab != 0 {
                add_identity(&mut b, row, col(ab), r, -1);
            }
            add_identity(&mut b, row, col(a), r, 1);
        }
    }
    b
}

fn bar_degree_one(m: &GLattice) -> Result<Presentation, TateError> {
    let z = kernel_basis(&bar_cocycle_matrix_1(m));
    Ok(subquotient_presentation(&z, &bar_coboundaries_1(m))?)
}

fn bar_degree_two(m: &GLattice) -> Result<Presentation, TateError> {
    let z = kernel_basis(&bar_cocycle_matrix_2(m));
    Ok(subquotient_presentation(&z, &bar_coboundaries_2(m))?)
}

fn powers(m: &GLattice, generator: usize) -> Vec<usize> {
    let g = m.group();
    let mut p = vec![0usize];
    for _ in 1..g.order() {
        p.push(g.mul(generator, *p.last().expect("nonempty")));
    }
    p
}

fn slice(c: &[BigInt], start: usize, r: usize) -> Vec<BigInt> {
    c[start..start + r].to_vec()
}

fn add_into(acc: &mut [BigInt], v: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// `m ∈ ker N` ↦ the 1-cocycle `σ^k ↦ (1 + σ + … + σ^{k−1})m`.
fn cyclic_lattice_to_bar1(m: &GLattice, generator: usize, v: &[BigInt]) -> Vec<BigInt> {
    let r = m.rank();
    let pw = powers(m, generator);
    let n = pw.len();
    let sigma = m.action(generator);
    let mut out = vec![BigInt::zero(); (n - 1) * r];
    let mut partial = vec![BigInt::zero(); r];
    let mut term = v.to_vec();
    for &x in pw.iter().skip(1) {
        add_into(&mut partial, &term);
        term = sigma.mul_vec(&term);
        out[(x - 1) * r..x * r].clone_from_slice(&partial);
    }
    out
}

/// `m ∈ M^G` ↦ the carry cocycle `(σ^a, σ^b) ↦ m` if `a + b ≥ n`, else 0.
fn cyclic_lattice_to_bar2(m: &GLattice, generator: usize, v: &[BigInt]) -> Vec<BigInt> {
    let r = m.rank();
    let pw = powers(m, generator);
    let n = pw.len();
    let mut out = vec![BigInt::zero(); (n - 1) * (n - 1) * r];
    for a in 1..n {
        for b in 1..n {
            if a + b >= n {
                let at = ((pw[a] - 1) * (n - 1) + (pw[b] - 1)) * r;
                out[at..at + r].clone_from_slice(v);
            }
        }
    }
    out
}

/// 1-cocycle ↦ `c(σ) ∈ ker N`.
fn cyclic_bar1_to_lattice(m: &GLattice, generator: usize, c: &[BigInt]) -> Vec<BigInt> {
    let r = m.rank();
    if m.group().order() == 1 {
        return vec![BigInt::zero(); r];
    }
    slice(c, (generator - 1) * r, r)
}

/// 2-cocycle ↦ `Σ_k c(σ^k, σ) ∈ M^G`.
fn cyclic_bar2_to_lattice(m: &GLattice, generator: usize, c: &[BigInt]) -> Vec<BigInt> {
    let r = m.rank();
    let pw = powers(m, generator);
    let n = pw.len();
    let mut acc = vec![BigInt::zero(); r];
    if n == 1 {
        return acc;
    }
    for &x in pw.iter().skip(1) {
        let at = ((x - 1) * (n - 1) + (generator - 1)) * r;
        add_into(&mut acc, &slice(c, at, r));
    }
    acc
}

/// Whether `v` satisfies the cocycle condition for its degree and shape.
pub fn is_cocycle(m: &GLattice, degree: Degree, shape: CochainShape, v: &[BigInt]) -> bool {
    if v.len() != shape.len() {
        return false;
    }
    match (shape, degree) {
        (CochainShape::Lattice { .. }, Degree::Zero | Degree::Two) => {
            (0..m.group().order()).all(|g| m.action(g).mul_vec(v) == v)
        }
        (CochainShape::Lattice { .. }, Degree::MinusOne | Degree::One) => {
            m.norm_matrix().mul_vec(v).iter().all(Zero::is_zero)
        }
        (CochainShape::Bar { arity: 1, .. }, Degree::One) => {
            bar_cocycle_matrix_1(m).mul_vec(v).iter().all(Zero::is_zero)
        }
        (CochainShape::Bar { arity: 2, .. }, Degree::Two) => {
            bar_cocycle_matrix_2(m).mul_vec(v).iter().all(Zero::is_zero)
        }
        _ => false,
    }
}

/// Restriction `Ĥ^i(G, M) → Ĥ^i(H, M|_H)` between already-computed groups.
pub fn restriction_between(
    source: &CohomologyGroup,
    target: &CohomologyGroup,
    h: &Subgroup,
) -> Result<AbMorphism, TateError> {
    let degree = source.degree;
    if !matches!(degree, Degree::One | Degree::Two) || target.degree != degree {
        return Err(TateError::RestrictionDegree);
    }
    let m = &source.lattice;
    let n = m.group().order();
    let r = m.rank();
    let elems = h.elements();
    let reps = source.bar_representatives()?;
    let mut cols = Vec::with_capacity(reps.cols());
    for c in reps.columns() {
        let restricted: Vec<BigInt> = if degree == Degree::One {
            elems[1..]
                .iter()
                .flat_map(|&x| slice(&c, (x - 1) * r, r))
                .collect()
        } else {
            let mut v = Vec::with_capacity((elems.len() - 1).pow(2) * r);
            for &x in &elems[1..] {
                for &y in &elems[1..] {
                    v.extend(slice(&c, ((x - 1) * (n - 1) + (y - 1)) * r, r));
                }
            }
            v
        };
        cols.push(target.coordinates_of_bar_cocycle(&restricted)?);
    }
    let matrix = IntMatrix::from_columns(target.structure().num_generators(), &cols);
    Ok(AbMorphism::new(
        source.structure().clone(),
        target.structure().clone(),
        matrix,
    )?)
}

pub fn restriction_morphism(
    m: &GLattice,
    h: &Subgroup,
    degree: Degree,
) -> Result<AbMorphism, TateError> {
    restriction_morphism_with(m, h, degree, &TateOptions::default())
}

pub fn restriction_morphism_with(
    m: &GLattice,
    h: &Subgroup,
    degree: Degree,
    opts: &TateOptions,
) -> Result<AbMorphism, TateError> {
    if !matches!(degree, Degree::One | Degree::Two) {
        return Err(TateError::RestrictionDegree);
    }
    let source = tate_group_with(m, degree, opts)?;
    let target = tate_group_with(&restrict_lattice(m, h), degree, opts)?;
    restriction_between(&source, &target, h)
}

/// `|Ĥ⁰(G, M)| / |Ĥ⁻¹(G, M)|` for cyclic `G`.
pub fn herbrand_quotient(m: &GLattice) -> Result<BigRational, TateError> {
    if !m.group().is_cyclic() {
        return Err(TateError::NotCyclic);
    }
    let h0 = tate_group(m, Degree::Zero)?.order();
    let hm1 = tate_group(m, Degree::MinusOne)?.order();
    Ok(BigRational::new(h0, hm1))
}

/// `|Ĥ^i|` as a convenience for order bookkeeping.
pub fn tate_order(m: &GLattice, degree: Degree, opts: &TateOptions) -> Result<BigInt, TateError> {
    Ok(tate_group_with(m, degree, opts)?.order())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_traits::One;

    use super::*;
    use crate::group::{cyclic_subgroups, FiniteGroup, DEFAULT_ORDER_CAP};

    fn group(gens: &[&str]) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_cycle_strings(gens, DEFAULT_ORDER_CAP).unwrap())
    }

    fn factors(c: &CohomologyGroup) -> Vec<i64> {
        c.structure()
            .invariant_factors()
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect()
    }

    const BAR: TateOptions = TateOptions {
        fast_path: false,
        force: false,
    };

    #[test]
    fn cyclic_split_degree_zero() {
        for n in 2..=6 {
            let cyc = format!(
                "({})",
                (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
            );
            let g = group(&[cyc.as_str()]);
            let c = tate_group(&GLattice::split(&g, 1), Degree::Zero).unwrap();
            assert_eq!(factors(&c), vec![n as i64]);
        }
    }

    #[test]
    fn sign_module() {
        let g = group(&["(1 2)"]);
        let m = GLattice::norm_one(&g).unwrap();
        for opts in [TateOptions::default(), BAR] {
            assert_eq!(
                factors(&tate_group_with(&m, Degree::One, &opts).unwrap()),
                vec![2]
            );
            assert!(tate_group_with(&m, Degree::Two, &opts)
                .unwrap()
                .structure()
                .is_trivial());
        }
        assert_eq!(
            herbrand_quotient(&m).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn klein_norm_one_degree_two() {
        let g = group(&["(1 2)", "(3 4)"]);
        let m = GLattice::norm_one(&g).unwrap();
        let h2 = tate_group(&m, Degree::Two).unwrap();
        assert_eq!(factors(&h2), vec![2]);
        assert_eq!(h2.method(), Method::Bar);
        for h in cyclic_subgroups(&g).iter().filter(|h| h.order() == 2) {
            assert!(restriction_morphism(&m, h, Degree::Two).unwrap().is_zero());
        }
    }

    #[test]
    fn reps_are_cocycles() {
        let g = group(&["(1 2 3 4)"]);
        let m = GLattice::norm_one(&g)
            .unwrap()
            .direct_sum(&GLattice::split(&g, 1))
            .unwrap();
        for opts in [TateOptions::default(), BAR] {
            for d in Degree::ALL {
                let c = tate_group_with(&m, d, &opts).unwrap();
                for v in c.cocycle_reps().columns() {
                    assert!(is_cocycle(&m, d, c.cochain_shape(), &v));
                }
                if matches!(d, Degree::One | Degree::Two) {
                    let arity = if d == Degree::One { 1 } else { 2 };
                    let shape = CochainShape::Bar {
                        arity,
                        group_order: 4,
                        rank: m.rank(),
                    };
                    for v in c.bar_representatives().unwrap().columns() {
                        assert!(is_cocycle(&m, d, shape, &v));
                    }
                }
            }
        }
    }

    #[test]
    fn fast_path_round_trips_bar_reps() {
        let g = group(&["(1 2 3 4 5 6)"]);
        let m = GLattice::split(&g, 1);
        for d in [Degree::One, Degree::Two] {
            let c = tate_group(&m, d).unwrap();
            let reps = c.bar_representatives().unwrap();
            for (j, v) in reps.columns().enumerate() {
                let coords = c.coordinates_of_bar_cocycle(&v).unwrap();
                let mut e = vec![BigInt::zero(); coords.len()];
                e[j] = BigInt::one();
                assert_eq!(coords, e);
            }
        }
    }

    #[test]
    fn restriction_to_whole_and_trivial() {
        let g = group(&["(1 2 3)", "(1 2)"]);
        let m = GLattice::split(&g, 1);
        let id = restriction_morphism(&m, &Subgroup::whole(&g), Degree::Two).unwrap();
        assert_eq!(id.matrix(), &IntMatrix::identity(1));
        let zero = restriction_morphism(&m, &Subgroup::trivial(&g), Degree::Two).unwrap();
        assert!(zero.target().is_trivial());
    }

    #[test]
    fn guardrail_and_degree_errors() {
        assert_eq!(Degree::try_from(3).unwrap_err(), TateError::BadDegree(3));
        let g = group(&["(1 2 3 4 5 6 7 8)", "(9 10)"]);
        let m = GLattice::split(&g, 100);
        let e = tate_group_with(&m, Degree::Two, &BAR).unwrap_err();
        assert!(matches!(e, TateError::Guardrail { .. }));
        let c2 = group(&["(1 2 3)", "(1 2)"]);
        assert_eq!(
            herbrand_quotient(&GLattice::split(&c2, 1)).unwrap_err(),
            TateError::NotCyclic
        );
    }
}
