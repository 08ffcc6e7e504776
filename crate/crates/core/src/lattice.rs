//! ℤ[G]-lattices and the constructors for character lattices of tori.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::abelian::{smith_diagonal, IntMatrix};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("quotient lattice has torsion")]
    TorsionQuotient,
    #[error("bad torus spec: {0}")]
    BadSpec(String),
    #[error("action is not a group homomorphism into GL_n(Z): {0:?}")]
    InvalidAction(Vec<Violation>),
}

/// A failed lattice invariant, named by the offending element(s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape { element: usize },
    IdentityNotTrivial,
    NotInvertible { element: usize },
    Product { g: usize, h: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { element } => write!(f, "rho({element}) has the wrong shape"),
            Violation::IdentityNotTrivial => write!(f, "rho(identity) is not the identity"),
            Violation::NotInvertible { element } => {
                write!(f, "rho({element}) is not invertible over Z")
            }
            Violation::Product { g, h } => write!(f, "rho({g})rho({h}) != rho({g}*{h})"),
        }
    }
}

/// Expression tree for a torus, in terms of its character lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusSpec {
    /// `𝔾_m^d`: ℤ^d with trivial action.
    Split(usize),
    /// Weil restriction of `𝔾_m`: the regular module ℤ[G].
    WeilRestriction,
    /// Norm-one torus: ℤ[G] / (Σ e_g).
    NormOne,
    /// ℤ[G/H] for a named subgroup H.
    Permutation(String),
    Dual(Box<TorusSpec>),
    Sum(Box<TorusSpec>, Box<TorusSpec>),
    /// Action matrices for the group's generators, in generator order.
    Explicit(Vec<IntMatrix>),
}

impl TorusSpec {
    /// Subgroup labels referenced anywhere in the tree.
    pub fn labels(&self) -> Vec<&str> {
        match self {
            TorusSpec::Permutation(l) => vec![l.as_str()],
            TorusSpec::Dual(e) => e.labels(),
            TorusSpec::Sum(a, b) => {
                let mut v = a.labels();
                v.extend(b.labels());
                v
            }
            _ => Vec::new(),
        }
    }
}

/// A ℤ-free module of finite rank with a G-action, stored as one matrix per element.
#[derive(Clone)]
pub struct GLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl fmt::Debug for GLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GLattice(rank {} over {:?})", self.rank, self.group)
    }
}

impl GLattice {
    /// Validating constructor from a full action table.
    pub fn new(
        group: Arc<FiniteGroup>,
        rank: usize,
        action: Vec<IntMatrix>,
    ) -> Result<Self, LatticeError> {
        let m = Self::from_action_unchecked(group, rank, action);
        let v = validate_lattice(&m);
        if v.is_empty() {
            Ok(m)
        } else {
            Err(LatticeError::InvalidAction(v))
        }
    }

    /// Skips validation; use [`validate_lattice`] to inspect the result.
    pub fn from_action_unchecked(
        group: Arc<FiniteGroup>,
        rank: usize,
        action: Vec<IntMatrix>,
    ) -> Self {
        Self {
            group,
            rank,
            action,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn split(group: &Arc<FiniteGroup>, d: usize) -> Self {
        let action = vec![IntMatrix::identity(d); group.order()];
        Self::from_action_unchecked(Arc::clone(group), d, action)
    }

    /// ℤ[G] with `ρ(g) e_h = e_{gh}`.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|g| {
                let mut m = IntMatrix::zeros(n, n);
                for h in 0..n {
                    m[(group.mul(g, h), h)] = BigInt::one();
                }
                m
            })
            .collect();
        Self::from_action_unchecked(Arc::clone(group), n, action)
    }

    /// ℤ[G/H] on left cosets ordered by smallest element.
    pub fn permutation(group: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Self, LatticeError> {
        if !Arc::ptr_eq(h.parent(), group) {
            return Err(LatticeError::BadSpec(
                "subgroup belongs to a different group".into(),
            ));
        }
        let cosets = h.left_cosets();
        let mut coset_of = vec![0usize; group.order()];
        for (c, members) in cosets.iter().enumerate() {
            for &x in members {
                coset_of[x] = c;
            }
        }
        let k = cosets.len();
        let action = (0..group.order())
            .map(|g| {
                let mut m = IntMatrix::zeros(k, k);
                for (c, members) in cosets.iter().enumerate() {
                    m[(coset_of[group.mul(g, members[0])], c)] = BigInt::one();
                }
                m
            })
            .collect();
        Ok(Self::from_action_unchecked(Arc::clone(group), k, action))
    }

    /// ℤ[G]/(N) on the basis `{ē_g : g ≠ 1}`, with `ē_1 = −Σ_{g≠1} ē_g`.
    pub fn norm_one(group: &Arc<FiniteGroup>) -> Result<Self, LatticeError> {
        let n = group.order();
        // The quotient by a vector is torsion-free iff its content is 1.
        let norm = IntMatrix::from_rows(&vec![vec![1i64]; n]);
        if smith_diagonal(&norm).iter().any(|d| !d.is_one()) {
            return Err(LatticeError::TorsionQuotient);
        }
        let r = n - 1;
        let action = (0..n)
            .map(|g| {
                let mut m = IntMatrix::zeros(r, r);
                for h in 1..n {
                    let gh = group.mul(g, h);
                    if gh == 0 {
                        for i in 0..r {
                            m[(i, h - 1)] = BigInt::from(-1);
                        }
                    } else {
                        m[(gh - 1, h - 1)] = BigInt::one();
                    }
                }
                m
            })
            .collect();
        Ok(Self::from_action_unchecked(Arc::clone(group), r, action))
    }

    /// Completes generator matrices to a full action by word evaluation, then validates.
    pub fn from_generator_matrices(
        group: &Arc<FiniteGroup>,
        mats: &[IntMatrix],
    ) -> Result<Self, LatticeError> {
        let gens = group.generator_indices();
        if mats.len() != gens.len() {
            return Err(LatticeError::BadSpec(format!(
                "explicit action needs {} matrices (one per generator), got {}",
                gens.len(),
                mats.len()
            )));
        }
        let r = mats.first().map_or(0, IntMatrix::rows);
        if mats.iter().any(|m| m.rows() != r || m.cols() != r) {
            return Err(LatticeError::BadSpec(
                "explicit matrices must be square of equal size".into(),
            ));
        }
        if mats.iter().any(|m| !m.is_unimodular()) {
            return Err(LatticeError::BadSpec(
                "explicit matrices must have determinant ±1".into(),
            ));
        }
        let mut action = vec![IntMatrix::identity(r); group.order()];
        for x in group.bfs_order().into_iter().skip(1) {
            let (k, parent) = group
                .word_step(x)
                .expect("non-identity element has a parent");
            action[x] = mats[k].mul(&action[parent]);
        }
        Self::new(Arc::clone(group), r, action)
    }

    /// `ρ*(g) = ρ(g⁻¹)ᵀ`.
    pub fn dual(&self) -> Self {
        let action = (0..self.group.order())
            .map(|g| self.action[self.group.inverse(g)].transpose())
            .collect();
        Self::from_action_unchecked(Arc::clone(&self.group), self.rank, action)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, LatticeError> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(LatticeError::BadSpec(
                "summands over different groups".into(),
            ));
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Self::from_action_unchecked(
            Arc::clone(&self.group),
            self.rank + other.rank,
            action,
        ))
    }

    /// Conjugates the action by a unimodular change of basis: `ρ'(g) = P ρ(g) P⁻¹`.
    pub fn conjugate(&self, p: &IntMatrix, p_inv: &IntMatrix) -> Self {
        assert!(p.mul(p_inv).is_identity(), "p_inv must invert p");
        let action = self.action.iter().map(|a| p.mul(a).mul(p_inv)).collect();
        Self::from_action_unchecked(Arc::clone(&self.group), self.rank, action)
    }

    /// `Σ_g ρ(g)`.
    pub fn norm_matrix(&self) -> IntMatrix {
        self.action
            .iter()
            .fold(IntMatrix::zeros(self.rank, self.rank), |acc, a| acc.add(a))
    }

    /// Whether every `ρ(g)` is a permutation matrix.
    pub fn is_permutation_lattice(&self) -> bool {
        self.action.iter().all(|m| {
            (0..m.cols()).all(|j| {
                let col = m.column(j);
                col.iter().filter(|x| x.is_one()).count() == 1
                    && col.iter().all(|x| x.is_one() || x.is_zero())
            })
        })
    }
}

/// Subgroups addressable by label from a [`TorusSpec`].
pub type SubgroupTable = BTreeMap<String, Subgroup>;

pub fn build_torus_lattice(
    group: &Arc<FiniteGroup>,
    spec: &TorusSpec,
    subgroups: &SubgroupTable,
) -> Result<GLattice, LatticeError> {
    let m = match spec {
        TorusSpec::Split(d) => GLattice::split(group, *d),
        TorusSpec::WeilRestriction => GLattice::regular(group),
        TorusSpec::NormOne => GLattice::norm_one(group)?,
        TorusSpec::Permutation(label) => {
            let h = subgroups
                .get(label)
                .ok_or_else(|| LatticeError::BadSpec(format!("unknown subgroup {label}")))?;
            GLattice::permutation(group, h)?
        }
        TorusSpec::Dual(e) => build_torus_lattice(group, e, subgroups)?.dual(),
        TorusSpec::Sum(a, b) => build_torus_lattice(group, a, subgroups)?
            .direct_sum(&build_torus_lattice(group, b, subgroups)?)?,
        TorusSpec::Explicit(mats) => GLattice::from_generator_matrices(group, mats)?,
    };
    debug_assert!(validate_lattice(&m).is_empty());
    Ok(m)
}

/// Every failed lattice invariant; empty iff the action is a homomorphism G → GL_r(ℤ).
pub fn validate_lattice(m: &GLattice) -> Vec<Violation> {
    let g = &m.group;
    let n = g.order();
    let mut out = Vec::new();
    if m.action.len() != n {
        return (m.action.len()..n)
            .map(|element| Violation::Shape { element })
            .collect();
    }
    for (element, a) in m.action.iter().enumerate() {
        if a.rows() != m.rank || a.cols() != m.rank {
            out.push(Violation::Shape { element });
        }
    }
    if !out.is_empty() {
        return out;
    }
    if !m.action[0].is_identity() {
        out.push(Violation::IdentityNotTrivial);
    }
    for (element, a) in m.action.iter().enumerate() {
        if !a.determinant().abs().is_one() {
            out.push(Violation::NotInvertible { element });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if m.action[a].mul(&m.action[b]) != m.action[g.mul(a, b)] {
                out.push(Violation::Product { g: a, h: b });
            }
        }
    }
    out
}

/// Restriction to `H`, re-indexed so element `k` of the result is `H.elements()[k]`.
pub fn restrict_lattice(m: &GLattice, h: &Subgroup) -> GLattice {
    assert!(
        Arc::ptr_eq(h.parent(), &m.group),
        "subgroup of a different group"
    );
    let group = Arc::new(h.to_group());
    let action = h.elements().iter().map(|&a| m.action[a].clone()).collect();
    GLattice::from_action_unchecked(group, m.rank, action)
}
