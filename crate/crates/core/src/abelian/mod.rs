//! Exact integer linear algebra and finitely presented abelian groups.
//!
//! Every cohomology group in this crate is produced as a subquotient
//! `span(B) / span(C)` of a free ℤ-module and brought into invariant-factor
//! form through [`smith_normal_form`].

mod matrix;
mod smith;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::IntMatrix;
pub use smith::{smith_diagonal, smith_normal_form, solve_exact, SmithDecomposition};

use smith::{column_echelon, smith_reduce, solve_with, SmithData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("column {column} of the sublattice is not contained in the ambient lattice")]
    Containment { column: usize },
    #[error("basis columns are not linearly independent")]
    DependentBasis,
    #[error("morphism does not map source relations into target relations (source generator {generator})")]
    IllDefined { generator: usize },
    #[error("matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
}

/// A finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/d_k ⊕ ℤ^free_rank`
/// with `2 ≤ d₁ | d₂ | … | d_k`.
///
/// Generators are ordered torsion first (in invariant-factor order), then free.
/// `generator_lift`, when present, holds one column per generator giving its
/// coordinates in whatever ambient lattice the group was cut out of.
/// Equality compares the isomorphism type only.
#[derive(Clone)]
pub struct FinAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    generator_lift: Option<IntMatrix>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            invariant_factors: Vec::new(),
            generator_lift: None,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
            generator_lift: None,
        }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_orders(&[n.into()])
    }

    /// `⊕ ℤ/nᵢ` for arbitrary orders (0 meaning ℤ), normalized to invariant factors.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let free = orders.iter().filter(|n| n.is_zero()).count();
        let finite: Vec<BigInt> = orders.iter().filter(|n| !n.is_zero()).cloned().collect();
        let factors = smith_diagonal(&IntMatrix::diagonal(&finite))
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Self {
            free_rank: free,
            invariant_factors: factors,
            generator_lift: None,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn generator_lift(&self) -> Option<&IntMatrix> {
        self.generator_lift.as_ref()
    }

    pub fn with_lift(mut self, lift: IntMatrix) -> Self {
        assert_eq!(
            lift.cols(),
            self.num_generators(),
            "one lift column per generator"
        );
        self.generator_lift = Some(lift);
        self
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Order of generator `i`; zero for a free generator.
    pub fn generator_order(&self, i: usize) -> BigInt {
        self.invariant_factors
            .get(i)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Diagonal relation matrix, one column per generator (zero for free ones).
    pub fn relation_matrix(&self) -> IntMatrix {
        let orders: Vec<BigInt> = (0..self.num_generators())
            .map(|i| self.generator_order(i))
            .collect();
        IntMatrix::diagonal(&orders)
    }

    /// Reduces a coordinate vector into canonical range `[0, dᵢ)` on torsion generators.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .enumerate()
            .map(|(i, x)| match self.invariant_factors.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        let mut g = Self::from_orders(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    /// All elements as reduced coordinate vectors. Only for small finite groups.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for e in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut v = e.clone();
                    v.push(k.clone());
                    next.push(v);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

impl Eq for FinAbGroup {}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// A subquotient `span(B) / span(C)` together with the data needed to
/// express any element of `span(B)` in the group's generators.
#[derive(Clone, Debug)]
pub struct Presentation {
    group: FinAbGroup,
    basis: IntMatrix,
    basis_smith: std::sync::Arc<SmithData>,
    projection: IntMatrix,
}

impl fmt::Debug for SmithData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmithData(rank {})", self.rank)
    }
}

impl Presentation {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn into_group(self) -> FinAbGroup {
        self.group
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Generator coordinates (reduced) of an ambient vector lying in `span(B)`.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        let col = IntMatrix::from_columns(v.len(), &[v.to_vec()]);
        let y = solve_with(&self.basis_smith, self.basis.cols(), &col)?;
        let c = self.projection.mul(&y).column(0);
        Ok(self.group.reduce(&c))
    }
}

/// Builds the presentation of `span(B) / span(C)`; `B` must have independent columns.
pub fn subquotient_presentation(
    b: &IntMatrix,
    c: &IntMatrix,
) -> Result<Presentation, AbelianError> {
    let bs = smith_reduce(b, true);
    let x = solve_with(&bs, b.cols(), c)?;
    let q = quotient_of_free(&x);
    let lift = b.mul(&q.lift);
    Ok(Presentation {
        group: q.group.with_lift(lift),
        basis: b.clone(),
        basis_smith: std::sync::Arc::new(bs),
        projection: q.projection,
    })
}

struct FreeQuotient {
    group: FinAbGroup,
    lift: IntMatrix,
    projection: IntMatrix,
}

/// `ℤ^k / span(X)` with generator lifts (columns) and the projection (rows)
/// from ℤ^k onto generator coordinates.
fn quotient_of_free(x: &IntMatrix) -> FreeQuotient {
    let k = x.rows();
    let d = smith_reduce(x, true);
    let mut factors = Vec::new();
    let mut keep = Vec::new();
    for i in 0..d.rank {
        let di = &d.s[(i, i)];
        if !di.is_one() {
            factors.push(di.clone());
            keep.push(i);
        }
    }
    keep.extend(d.rank..k);
    let lift = d.u_inv.select_columns(keep.iter().copied());
    let projection = d.u.select_rows(keep.iter().copied());
    FreeQuotient {
        group: FinAbGroup {
            free_rank: k - d.rank,
            invariant_factors: factors,
            generator_lift: None,
        },
        lift,
        projection,
    }
}

/// A ℤ-basis (as columns) of `{x : A·x = 0}`. The span is saturated.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let e = column_echelon(a, true);
    e.v.select_columns(e.rank..a.cols())
}

/// Independent columns spanning the same lattice as the columns of `A`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let e = column_echelon(a, false);
    e.h.select_columns(0..e.rank)
}

/// `ℤ^rows / span(columns of A)` in invariant-factor form; generator lifts
/// are in ℤ^rows coordinates.
pub fn cokernel_group(a: &IntMatrix) -> FinAbGroup {
    let q = quotient_of_free(a);
    let lift = q.lift;
    q.group.with_lift(lift)
}

/// `span(B) / span(C)`; errors with [`AbelianError::Containment`] if some
/// column of `C` lies outside `span(B)`.
pub fn subquotient_group(b: &IntMatrix, c: &IntMatrix) -> Result<FinAbGroup, AbelianError> {
    subquotient_presentation(b, c).map(Presentation::into_group)
}

/// A homomorphism between groups in invariant-factor form, given on
/// presentation generators (`target.num_generators() × source.num_generators()`).
#[derive(Clone, Debug)]
pub struct AbMorphism {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

impl AbMorphism {
    /// Checks that every source relation maps into the target relations and
    /// reduces entries on torsion target rows.
    pub fn new(
        source: FinAbGroup,
        target: FinAbGroup,
        matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        let (rows, cols) = (target.num_generators(), source.num_generators());
        if matrix.rows() != rows || matrix.cols() != cols {
            return Err(AbelianError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: rows,
                expected_cols: cols,
            });
        }
        let mut m = matrix;
        for j in 0..cols {
            let dj = source.generator_order(j);
            for i in 0..rows {
                let ei = target.generator_order(i);
                let image = &m[(i, j)] * &dj;
                let ok = if ei.is_zero() {
                    image.is_zero()
                } else {
                    image.is_multiple_of(&ei)
                };
                if !ok {
                    return Err(AbelianError::IllDefined { generator: j });
                }
                if !ei.is_zero() {
                    m[(i, j)] = m[(i, j)].mod_floor(&ei);
                }
            }
        }
        Ok(Self {
            source,
            target,
            matrix: m,
        })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let n = g.num_generators();
        Self::new(g.clone(), g.clone(), IntMatrix::identity(n)).expect("identity is well defined")
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Image of a source element given in generator coordinates.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// Precomposition with the inclusion of a subgroup whose generators have
    /// the given lifts in source coordinates.
    pub fn restrict_to(&self, sub: &FinAbGroup) -> Result<Self, AbelianError> {
        let lift = sub
            .generator_lift()
            .expect("subgroup needs generator lifts");
        Self::new(sub.clone(), self.target.clone(), self.matrix.mul(lift))
    }
}

#[derive(Clone, Debug)]
pub struct MorphismAnalysis {
    /// Lifts are in source-generator coordinates.
    pub kernel: FinAbGroup,
    /// Lifts are in target-generator coordinates.
    pub image: FinAbGroup,
    /// Lifts are in target-generator coordinates.
    pub cokernel: FinAbGroup,
}

/// Kernel, image and cokernel, computed on free covers with the target
/// relations stacked next to the morphism matrix.
pub fn morphism_analysis(f: &AbMorphism) -> MorphismAnalysis {
    let a = f.source.num_generators();
    let src_rel = f.source.relation_matrix();
    let tgt_rel = f.target.relation_matrix();
    let stacked = f.matrix.hstack(&tgt_rel);

    let k = kernel_basis(&stacked);
    let preimage = image_basis(&k.select_rows(0..a));
    let kernel =
        subquotient_group(&preimage, &src_rel).expect("source relations lie in the preimage");

    let img = image_basis(&stacked);
    let image = subquotient_group(&img, &tgt_rel).expect("target relations lie in the image cover");

    let cokernel = cokernel_group(&stacked);
    MorphismAnalysis {
        kernel,
        image,
        cokernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k.cols(), 1);
        let c = k.column(0);
        assert!(c == big(&[1, -1]) || c == big(&[-1, 1]));

        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[vec![2]])).cols(), 0);

        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(k.cols(), 1);
        let c = k.column(0);
        assert!(c == big(&[2, -1]) || c == big(&[-2, 1]));
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel_group(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g.invariant_factors(), &big(&[6])[..]);
        assert_eq!(g.free_rank(), 0);
        assert!(cokernel_group(&IntMatrix::identity(4)).is_trivial());
        let g = cokernel_group(&IntMatrix::zeros(2, 0));
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.order(), None);
    }

    #[test]
    fn subquotient_examples() {
        let g = subquotient_group(
            &IntMatrix::identity(2),
            &IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]),
        )
        .unwrap();
        assert_eq!(g.invariant_factors(), &big(&[2, 2])[..]);
        let g = subquotient_group(
            &IntMatrix::from_rows(&[vec![2], vec![0]]),
            &IntMatrix::from_rows(&[vec![4], vec![0]]),
        )
        .unwrap();
        assert_eq!(g.invariant_factors(), &big(&[2])[..]);
        let g = subquotient_group(&IntMatrix::identity(1), &IntMatrix::zeros(1, 0)).unwrap();
        assert_eq!(g.free_rank(), 1);
    }

    #[test]
    fn subquotient_rejects_escape() {
        let e = subquotient_group(
            &IntMatrix::from_rows(&[vec![2], vec![0]]),
            &IntMatrix::from_rows(&[vec![1], vec![0]]),
        );
        assert!(matches!(e, Err(AbelianError::Containment { column: 0 })));
        let e = subquotient_group(
            &IntMatrix::from_rows(&[vec![1, 2]]),
            &IntMatrix::zeros(1, 0),
        );
        assert_eq!(e.unwrap_err(), AbelianError::DependentBasis);
    }

    #[test]
    fn presentation_coordinates_track_lifts() {
        let p = subquotient_presentation(
            &IntMatrix::identity(2),
            &IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]),
        )
        .unwrap();
        let lift = p.group().generator_lift().unwrap().clone();
        for j in 0..lift.cols() {
            let mut expect = vec![BigInt::zero(); lift.cols()];
            expect[j] = BigInt::one();
            assert_eq!(p.coordinates(&lift.column(j)).unwrap(), expect);
        }
    }

    #[test]
    fn morphism_examples() {
        let z4 = FinAbGroup::cyclic(4);
        let id = morphism_analysis(&AbMorphism::identity(&z4));
        assert!(id.kernel.is_trivial() && id.cokernel.is_trivial());
        assert_eq!(id.image, z4);

        let z2 = FinAbGroup::cyclic(2);
        let zero = AbMorphism::new(z2.clone(), z2.clone(), IntMatrix::zeros(1, 1)).unwrap();
        let r = morphism_analysis(&zero);
        assert_eq!(r.kernel, z2);
        assert_eq!(r.cokernel, z2);
        assert!(r.image.is_trivial());

        let dbl =
            AbMorphism::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let r = morphism_analysis(&dbl);
        assert_eq!(r.kernel, z2);
        assert_eq!(r.image, z2);
        assert_eq!(r.cokernel, z2);
    }

    #[test]
    fn ill_defined_morphism_rejected() {
        let e = AbMorphism::new(
            FinAbGroup::cyclic(2),
            FinAbGroup::cyclic(3),
            IntMatrix::from_rows(&[vec![1]]),
        );
        assert!(matches!(e, Err(AbelianError::IllDefined { generator: 0 })));
        let e = AbMorphism::new(
            FinAbGroup::cyclic(2),
            FinAbGroup::free(1),
            IntMatrix::from_rows(&[vec![1]]),
        );
        assert!(e.is_err());
    }

    #[test]
    fn display() {
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        assert_eq!(
            FinAbGroup::from_orders(&big(&[2, 3, 0])).to_string(),
            "Z/6 x Z"
        );
    }
}
