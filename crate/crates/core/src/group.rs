//! Finite groups generated by permutations, stored as full multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::{cokernel_group, FinAbGroup, IntMatrix};

pub const DEFAULT_ORDER_CAP: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("bad permutation {text:?}: {reason}")]
    BadPermutation { text: String, reason: String },
    #[error("group closure exceeded the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("multiplication table violates the group axioms: {0}")]
    NotAGroup(String),
    #[error("element index {0} out of range")]
    BadIndex(usize),
}

/// A permutation of `{0, …, degree-1}`, written 1-based in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(GroupError::BadPermutation {
                    text: format!("{images:?}"),
                    reason: "not a bijection".into(),
                });
            }
            seen[x] = true;
        }
        Ok(Self(images))
    }

    /// Parses whitespace-separated cycles of positive integers, e.g. `"(1 2)(3 4)"`.
    /// `"()"` and the empty string denote the identity.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let bad = |reason: &str| GroupError::BadPermutation {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(after) = rest.strip_prefix('(') else {
                return Err(bad("expected '('"));
            };
            let Some(close) = after.find(')') else {
                return Err(bad("unbalanced parenthesis"));
            };
            let body = &after[..close];
            let mut cycle = Vec::new();
            for tok in body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let p: u32 = tok.parse().map_err(|_| bad("non-integer point"))?;
                if p == 0 {
                    return Err(bad("points are 1-based"));
                }
                cycle.push(p - 1);
            }
            cycles.push(cycle);
            rest = after[close + 1..].trim_start();
        }
        let degree = cycles
            .iter()
            .flatten()
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(0);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in &cycles {
            for &p in cycle {
                if used[p as usize] {
                    return Err(bad("point repeated across cycles"));
                }
                used[p as usize] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0.get(x).map_or(x, |&y| y as usize)
    }

    /// Extends to a larger domain by fixing the new points.
    pub fn padded(&self, degree: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree.max(self.0.len()) as u32);
        Self(v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let d = self.degree().max(other.degree());
        Self((0..d).map(|x| self.image(other.image(x)) as u32).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.image(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite group given by its multiplication table. Element 0 is the identity.
///
/// Elements are permutations numbered in BFS order from the generators, so
/// every derived quantity is deterministic.
#[derive(Clone)]
pub struct FiniteGroup {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<usize>,
    inverse: Vec<usize>,
    generator_indices: Vec<usize>,
    /// For each non-identity element `x`: `(generator position, parent)` with
    /// `x = gen · parent`.
    word_tree: Vec<Option<(usize, usize)>>,
}

impl FiniteGroup {
    pub fn from_permutations(
        generators: &[Permutation],
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        let degree = generators
            .iter()
            .map(Permutation::degree)
            .max()
            .unwrap_or(0);
        let gens: Vec<Permutation> = generators.iter().map(|g| g.padded(degree)).collect();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index = HashMap::from([(elements[0].clone(), 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for g in &gens {
                let next = g.compose(&elements[cur]);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() == order_cap {
                    return Err(GroupError::OrderCapExceeded { cap: order_cap });
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
        let generator_indices: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        Self::from_elements(elements, generator_indices)
    }

    /// Parses cycle-notation generators and closes them.
    pub fn from_cycle_strings<S: AsRef<str>>(
        generators: &[S],
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_permutations(&gens, order_cap)
    }

    /// `elements[0]` must be the identity and the list closed under composition.
    fn from_elements(
        elements: Vec<Permutation>,
        generator_indices: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        let degree = elements.iter().map(Permutation::degree).max().unwrap_or(0);
        let elements: Vec<Permutation> = elements.iter().map(|p| p.padded(degree)).collect();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        if index.len() != n || !elements[0].is_identity() {
            return Err(GroupError::NotAGroup(
                "duplicate elements or identity not first".into(),
            ));
        }
        let mut mul = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = elements[a].compose(&elements[b]);
                mul[a * n + b] = *index.get(&p).ok_or_else(|| {
                    GroupError::NotAGroup(format!("product of {a} and {b} not in the set"))
                })?;
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| mul[a * n + b] == 0)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut word_tree = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (k, &g) in generator_indices.iter().enumerate() {
                let next = mul[g * n + cur];
                if !seen[next] {
                    seen[next] = true;
                    word_tree[next] = Some((k, cur));
                    queue.push_back(next);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GroupError::NotAGroup("generators do not generate".into()));
        }
        Ok(Self {
            elements,
            index,
            mul,
            inverse,
            generator_indices,
            word_tree,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element(&self, a: usize) -> &Permutation {
        &self.elements[a]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        let degree = self.elements[0].degree();
        if p.degree() > degree && !(degree..p.degree()).all(|x| p.image(x) == x) {
            return None;
        }
        let mut q = p.padded(degree);
        q.0.truncate(degree);
        self.index.get(&q).copied()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn generators(&self) -> Vec<&Permutation> {
        self.generator_indices
            .iter()
            .map(|&g| &self.elements[g])
            .collect()
    }

    /// Spanning-tree edge `(generator position, parent)` with `x = gen · parent`.
    pub fn word_step(&self, x: usize) -> Option<(usize, usize)> {
        self.word_tree[x]
    }

    /// Indices in BFS order; parents precede children.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = vec![0usize];
        let mut i = 0;
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        while i < order.len() {
            let cur = order[i];
            for &g in &self.generator_indices {
                let next = self.mul(g, cur);
                if !seen[next] {
                    seen[next] = true;
                    order.push(next);
                }
            }
            i += 1;
        }
        order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(a, acc))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Lowest-index element of maximal order, when that order is `|G|`.
    pub fn cyclic_generator(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&a| self.element_order(a) == n)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    pub fn description(&self) -> String {
        let gens: Vec<String> = self.generators().iter().map(|p| p.to_string()).collect();
        format!("<{}> of order {}", gens.join(", "), self.order())
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({})", self.description())
    }
}

/// A subgroup as a sorted list of parent indices (always containing 0).
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn whole(g: &Arc<FiniteGroup>) -> Self {
        Self {
            parent: Arc::clone(g),
            elements: (0..g.order()).collect(),
        }
    }

    pub fn trivial(g: &Arc<FiniteGroup>) -> Self {
        Self {
            parent: Arc::clone(g),
            elements: vec![0],
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements
            .iter()
            .any(|&a| self.parent.element_order(a) == self.order())
    }

    /// Position of a parent element in the re-indexed subgroup.
    pub fn position(&self, a: usize) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    /// The subgroup as a group in its own right; element `k` is `elements[k]`.
    pub fn to_group(&self) -> FiniteGroup {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = vec![0usize];
        for &a in &self.elements {
            if !span.contains(&a) {
                gens.push(a);
                span = closure(&self.parent, &gens);
            }
        }
        let perms = self
            .elements
            .iter()
            .map(|&a| self.parent.element(a).clone())
            .collect();
        let gen_pos = gens
            .iter()
            .map(|&a| self.position(a).expect("generator in subgroup"))
            .collect();
        FiniteGroup::from_elements(perms, gen_pos).expect("a subgroup of a valid group is a group")
    }

    /// Left cosets `gH`, each sorted, ordered by smallest element.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let g = &self.parent;
        let mut assigned = vec![false; g.order()];
        let mut cosets = Vec::new();
        for a in 0..g.order() {
            if assigned[a] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| g.mul(a, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                assigned[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

fn closure(g: &FiniteGroup, seeds: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut list = vec![0usize];
    let mut i = 0;
    while i < list.len() {
        let cur = list[i];
        for &s in seeds {
            let next = g.mul(s, cur);
            if !inside[next] {
                inside[next] = true;
                list.push(next);
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// Smallest subgroup containing the given elements.
pub fn subgroup_closure(g: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Subgroup, GroupError> {
    if let Some(&bad) = elements.iter().find(|&&a| a >= g.order()) {
        return Err(GroupError::BadIndex(bad));
    }
    Ok(Subgroup {
        parent: Arc::clone(g),
        elements: closure(g, elements),
    })
}

/// Every distinct `⟨g⟩`, sorted by `(order, elements)`.
pub fn cyclic_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut sets: Vec<Vec<usize>> = (0..g.order()).map(|a| closure(g, &[a])).collect();
    sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    sets.dedup();
    sets.into_iter()
        .map(|elements| Subgroup {
            parent: Arc::clone(g),
            elements,
        })
        .collect()
}

pub fn commutator_subgroup(g: &Arc<FiniteGroup>) -> Subgroup {
    let n = g.order();
    let mut comms: Vec<usize> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
            comms.push(c);
        }
    }
    comms.sort_unstable();
    comms.dedup();
    Subgroup {
        parent: Arc::clone(g),
        elements: closure(g, &comms),
    }
}

/// `G / [G, G]` in invariant-factor form.
///
/// The quotient is walked breadth-first as exponent vectors in the images of
/// the generators; every non-tree edge of that Cayley graph contributes one
/// relation, and these generate the full relation lattice.
pub fn abelianization(g: &Arc<FiniteGroup>) -> FinAbGroup {
    let derived = commutator_subgroup(g);
    let cosets = derived.left_cosets();
    let mut coset_of = vec![0usize; g.order()];
    for (c, members) in cosets.iter().enumerate() {
        for &x in members {
            coset_of[x] = c;
        }
    }
    let gens = g.generator_indices();
    let k = gens.len();
    let mut vec_of: Vec<Option<Vec<i64>>> = vec![None; cosets.len()];
    vec_of[coset_of[0]] = Some(vec![0; k]);
    let mut queue = VecDeque::from([coset_of[0]]);
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    while let Some(c) = queue.pop_front() {
        let rep = cosets[c][0];
        let v = vec_of[c].clone().expect("visited");
        for (i, &s) in gens.iter().enumerate() {
            let d = coset_of[g.mul(s, rep)];
            let mut w = v.clone();
            w[i] += 1;
            match &vec_of[d] {
                None => {
                    vec_of[d] = Some(w);
                    queue.push_back(d);
                }
                Some(existing) => {
                    let rel: Vec<BigInt> = w
                        .iter()
                        .zip(existing)
                        .map(|(a, b)| BigInt::from(a - b))
                        .collect();
                    if rel.iter().any(|x| x != &BigInt::from(0)) {
                        relations.push(rel);
                    }
                }
            }
        }
    }
    let mut g_ab = cokernel_group(&IntMatrix::from_columns(k, &relations));
    g_ab = FinAbGroup::from_orders(g_ab.invariant_factors());
    g_ab
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[&str]) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_cycle_strings(gens, DEFAULT_ORDER_CAP).unwrap())
    }

    #[test]
    fn parse_and_print() {
        let p = Permutation::parse("(1 2)(3 4)").unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::parse("()").unwrap().to_string(), "()");
        assert_eq!(
            Permutation::parse(" (1 3 2) ").unwrap().to_string(),
            "(1 3 2)"
        );
        assert!(Permutation::parse("(1 1)").is_err());
        assert!(Permutation::parse("(0 1)").is_err());
        assert!(Permutation::parse("(1 2").is_err());
        assert!(Permutation::parse("1 2").is_err());
    }

    #[test]
    fn closure_examples() {
        let v4 = group(&["(1 2)", "(3 4)"]);
        assert_eq!(v4.order(), 4);
        assert!((1..4).all(|a| v4.element_order(a) == 2));
        assert_eq!(group(&["(1 2 3)", "(1 2)"]).order(), 6);
        let c4 = group(&["(1 2 3 4)"]);
        assert_eq!(c4.order(), 4);
        assert!(c4.is_cyclic());
        assert!(!v4.is_cyclic());
        assert_eq!(group(&[] as &[&str]).order(), 1);
    }

    #[test]
    fn order_cap() {
        let e = FiniteGroup::from_cycle_strings(&["(1 2 3 4 5)", "(1 2)"], 64);
        assert_eq!(e.unwrap_err(), GroupError::OrderCapExceeded { cap: 64 });
    }

    #[test]
    fn subgroup_closure_examples() {
        let v4 = group(&["(1 2)", "(3 4)"]);
        assert_eq!(subgroup_closure(&v4, &[]).unwrap().elements(), &[0]);
        assert_eq!(subgroup_closure(&v4, &[1]).unwrap().elements(), &[0, 1]);
        assert_eq!(subgroup_closure(&v4, &[1, 2]).unwrap().order(), 4);
        assert!(subgroup_closure(&v4, &[9]).is_err());
    }

    #[test]
    fn cyclic_subgroup_counts() {
        let v4 = group(&["(1 2)", "(3 4)"]);
        let orders: Vec<usize> = cyclic_subgroups(&v4).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2]);
        let c4 = group(&["(1 2 3 4)"]);
        let orders: Vec<usize> = cyclic_subgroups(&c4).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        let s3 = group(&["(1 2 3)", "(1 2)"]);
        let orders: Vec<usize> = cyclic_subgroups(&s3).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3]);
    }

    #[test]
    fn abelianization_examples() {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let s3 = group(&["(1 2 3)", "(1 2)"]);
        assert_eq!(abelianization(&s3).invariant_factors(), &big(&[2])[..]);
        let v4 = group(&["(1 2)", "(3 4)"]);
        assert_eq!(abelianization(&v4).invariant_factors(), &big(&[2, 2])[..]);
        let c6 = group(&["(1 2 3 4 5 6)"]);
        assert_eq!(abelianization(&c6).invariant_factors(), &big(&[6])[..]);
        assert!(abelianization(&group(&[] as &[&str])).is_trivial());
        let d4 = group(&["(1 2 3 4)", "(1 3)"]);
        assert_eq!(abelianization(&d4).invariant_factors(), &big(&[2, 2])[..]);
    }

    #[test]
    fn subgroup_reindexing() {
        let s3 = group(&["(1 2 3)", "(1 2)"]);
        let a3 = cyclic_subgroups(&s3).pop().unwrap();
        let h = a3.to_group();
        assert_eq!(h.order(), 3);
        assert!(h.is_cyclic());
        assert_eq!(a3.left_cosets().len(), 2);
    }

    #[test]
    fn word_tree_reconstructs_elements() {
        let s3 = group(&["(1 2 3)", "(1 2)"]);
        for x in 1..s3.order() {
            let (k, parent) = s3.word_step(x).unwrap();
            assert_eq!(s3.mul(s3.generator_indices()[k], parent), x);
        }
    }
}
