//! The family abstraction the verifier drives: a simplicial object whose
//! levels can be enumerated or sampled and whose structure maps can be
//! evaluated on elements, plus the matrix-backed variant for abelian
//! constructions where identities are checked as exact matrix equations.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::finab::{AbElement, AbHom, FinAbGroup};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("level {level} has {order} elements, beyond the cap {cap}; use a sampled strategy")]
    EnumerationCap { level: usize, order: u128, cap: u128 },
    #[error("family '{family}' has no {structure} structure")]
    MissingStructure { family: String, structure: String },
}

/// One generator map of the simplicial/cyclic/symmetric structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
    Cyclic,
    Transposition(usize),
}

impl Op {
    /// Level after applying this op at level q.
    pub fn next_level(&self, q: usize) -> usize {
        match self {
            Op::Face(_) => q - 1,
            Op::Degeneracy(_) => q + 1,
            Op::Cyclic | Op::Transposition(_) => q,
        }
    }
}

/// Level reached after applying a path (first op applied first).
pub fn path_end_level(start: usize, path: &[Op]) -> usize {
    path.iter().fold(start, |q, op| op.next_level(q))
}

/// A simplicial object evaluated on elements.
pub trait SimplicialFamily {
    type Elem: Clone + std::fmt::Debug;

    fn family_name(&self) -> String;

    /// Number of elements at level q, when finite and computable.
    fn level_order(&self, q: usize) -> u128;

    fn enumerate_level(&self, q: usize) -> Vec<Self::Elem>;

    fn sample(&self, q: usize, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn face(&self, q: usize, i: usize, x: &Self::Elem) -> Self::Elem;

    fn degeneracy(&self, q: usize, i: usize, x: &Self::Elem) -> Self::Elem;

    fn cyclic(&self, _q: usize, _x: &Self::Elem) -> Self::Elem {
        panic!("family '{}' has no cyclic structure", self.family_name());
    }

    fn transposition(&self, _q: usize, _i: usize, _x: &Self::Elem) -> Self::Elem {
        panic!("family '{}' has no symmetric structure", self.family_name());
    }

    fn elem_eq(&self, q: usize, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn describe(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    /// Position of an element in `enumerate_level` order, where defined.
    fn index_of(&self, _q: usize, _x: &Self::Elem) -> Option<usize> {
        None
    }

    fn apply_op(&self, q: usize, op: Op, x: &Self::Elem) -> Self::Elem {
        match op {
            Op::Face(i) => self.face(q, i, x),
            Op::Degeneracy(i) => self.degeneracy(q, i, x),
            Op::Cyclic => self.cyclic(q, x),
            Op::Transposition(i) => self.transposition(q, i, x),
        }
    }

    fn apply_path(&self, start: usize, path: &[Op], x: &Self::Elem) -> Self::Elem {
        let mut q = start;
        let mut cur = x.clone();
        for &op in path {
            cur = self.apply_op(q, op, &cur);
            q = op.next_level(q);
        }
        cur
    }
}

/// A simplicial family whose levels are groups, enough for the
/// brute-force homotopy oracle.
pub trait GroupFamily: SimplicialFamily {
    fn identity_elem(&self, q: usize) -> Self::Elem;
    fn mul_elem(&self, q: usize, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv_elem(&self, q: usize, a: &Self::Elem) -> Self::Elem;
}

/// A simplicial family of finite abelian groups whose structure maps are
/// integer matrices; identities become exact matrix equations.
pub trait MatrixSimplicialFamily {
    fn family_name(&self) -> String;

    fn level_group(&self, q: usize) -> FinAbGroup;

    fn face_hom(&self, q: usize, i: usize) -> AbHom;

    fn degeneracy_hom(&self, q: usize, i: usize) -> AbHom;

    fn cyclic_hom(&self, _q: usize) -> AbHom {
        panic!("family '{}' has no cyclic structure", self.family_name());
    }

    fn hom_for(&self, q: usize, op: Op) -> AbHom {
        match op {
            Op::Face(i) => self.face_hom(q, i),
            Op::Degeneracy(i) => self.degeneracy_hom(q, i),
            Op::Cyclic => self.cyclic_hom(q),
            Op::Transposition(_) => {
                panic!("matrix families carry no symmetric structure")
            }
        }
    }

    /// The composite homomorphism of a path (first op applied first).
    fn path_hom(&self, start: usize, path: &[Op]) -> AbHom {
        let mut q = start;
        let mut acc = AbHom::identity(self.level_group(start));
        for &op in path {
            let h = self.hom_for(q, op);
            acc = h.compose(&acc).expect("path levels line up");
            q = op.next_level(q);
        }
        acc
    }
}

/// Evaluate a matrix-backed family on elements, for oracles and for
/// cohomology enumeration.
pub struct MatrixElements<'a, F: MatrixSimplicialFamily>(pub &'a F);

impl<F: MatrixSimplicialFamily> SimplicialFamily for MatrixElements<'_, F> {
    type Elem = AbElement;

    fn family_name(&self) -> String {
        self.0.family_name()
    }

    fn level_order(&self, q: usize) -> u128 {
        self.0.level_group(q).order()
    }

    fn enumerate_level(&self, q: usize) -> Vec<AbElement> {
        crate::finab::enumerate_elements(&self.0.level_group(q), u128::MAX)
            .expect("no cap on direct enumeration")
    }

    fn sample(&self, q: usize, rng: &mut ChaCha8Rng) -> AbElement {
        use rand::Rng;
        let group = self.0.level_group(q);
        AbElement::new(
            group
                .moduli()
                .iter()
                .map(|&m| rng.random_range(0..m))
                .collect(),
        )
    }

    fn face(&self, q: usize, i: usize, x: &AbElement) -> AbElement {
        self.0.face_hom(q, i).apply(x)
    }

    fn degeneracy(&self, q: usize, i: usize, x: &AbElement) -> AbElement {
        self.0.degeneracy_hom(q, i).apply(x)
    }

    fn cyclic(&self, q: usize, x: &AbElement) -> AbElement {
        self.0.cyclic_hom(q).apply(x)
    }

    fn elem_eq(&self, _q: usize, a: &AbElement, b: &AbElement) -> bool {
        a == b
    }

    fn index_of(&self, q: usize, x: &AbElement) -> Option<usize> {
        Some(self.0.level_group(q).index_of(x))
    }
}

impl<F: MatrixSimplicialFamily> GroupFamily for MatrixElements<'_, F> {
    fn identity_elem(&self, q: usize) -> AbElement {
        self.0.level_group(q).zero()
    }

    fn mul_elem(&self, q: usize, a: &AbElement, b: &AbElement) -> AbElement {
        self.0.level_group(q).add(a, b)
    }

    fn inv_elem(&self, q: usize, a: &AbElement) -> AbElement {
        self.0.level_group(q).neg(a)
    }
}

/// How relation instances are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    /// Every element of every base level, refusing levels above the cap.
    Exhaustive { cap: u128 },
    /// Seeded random elements per relation instance.
    Sampled { samples: usize, seed: u64 },
    /// Exact equality of composed integer matrices, element-free.
    MatrixExact,
}

/// One falsified relation instance with enough data to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub relation: String,
    pub level: usize,
    pub indices: Vec<usize>,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub family: String,
    pub q_max: usize,
    pub strategy: Strategy,
    pub relations_checked: u64,
    pub evaluations: u64,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
