//! The Moore complex of a matrix-backed simplicial abelian group, its
//! homology (the homotopy groups), the unnormalized chain complex used as
//! an independent oracle, and a brute-force element-level homotopy
//! computation for group families that need no abelian structure.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use thiserror::Error;

use crate::family::{GroupFamily, MatrixSimplicialFamily};
use crate::finab::{
    hom_kernel, AbChainComplex, AbHom, FinAbError, FinAbGroup, KernelData,
};
use crate::snf::IntMat;

#[derive(Debug, Error)]
pub enum MooreError {
    #[error("internal consistency: face image escapes the Moore subgroup at level {level}")]
    Containment { level: usize },
    #[error(transparent)]
    FinAb(#[from] FinAbError),
    #[error("level {level} has {order} elements, beyond the cap {cap}")]
    Cap { level: usize, order: u128, cap: u128 },
}

/// The Moore complex: level q is the intersection of the kernels of the
/// first q faces, with the last face as differential.
pub struct MooreComplex {
    kernels: Vec<KernelData>,
    complex: AbChainComplex,
}

impl MooreComplex {
    /// Moore level q as an abstract group (not canonicalized).
    pub fn level(&self, q: usize) -> &FinAbGroup {
        &self.complex.levels()[q]
    }

    pub fn levels(&self) -> &[FinAbGroup] {
        self.complex.levels()
    }

    /// Restricted differential from Moore level q+1 to Moore level q.
    pub fn differential(&self, q: usize) -> &AbHom {
        self.complex.differential(q)
    }

    /// Inclusion of Moore level q into the full level q.
    pub fn inclusion(&self, q: usize) -> &AbHom {
        self.kernels[q].inclusion()
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn homology(&self, q: usize) -> Result<FinAbGroup, FinAbError> {
        self.complex.homology(q)
    }
}

/// The map whose kernel is Moore level q: the faces 0..q-1 stacked into
/// a single homomorphism to (level q-1)^q.
fn stacked_faces<F: MatrixSimplicialFamily>(family: &F, q: usize) -> AbHom {
    let source = family.level_group(q);
    if q == 0 {
        return AbHom::zero_hom(source, FinAbGroup::trivial());
    }
    let below = family.level_group(q - 1);
    let mut target = FinAbGroup::trivial();
    let mut matrix = IntMat::zeros(0, source.rank());
    for i in 0..q {
        target = target.direct_sum(&below);
        matrix = matrix.vstack(family.face_hom(q, i).matrix());
    }
    AbHom::new(source, target, matrix).expect("stacked faces are well-defined")
}

/// Build the Moore complex of a family up to level q_top inclusive.
pub fn moore_complex<F: MatrixSimplicialFamily>(
    family: &F,
    q_top: usize,
) -> Result<MooreComplex, MooreError> {
    let kernels: Vec<KernelData> = (0..=q_top)
        .map(|q| hom_kernel(&stacked_faces(family, q)))
        .collect();
    let levels: Vec<FinAbGroup> = kernels.iter().map(|k| k.group().clone()).collect();
    let mut differentials = Vec::with_capacity(q_top);
    for q in 0..q_top {
        // restrict the last face of level q+1 to the Moore subgroup and
        // express its image in the coordinates of Moore level q
        let ambient = family
            .face_hom(q + 1, q + 1)
            .compose(kernels[q + 1].inclusion())
            .expect("levels line up");
        let reduced = ambient.reduced_matrix();
        let mut columns = Vec::with_capacity(reduced.cols());
        for j in 0..reduced.cols() {
            let col: Vec<BigInt> = reduced.column(j);
            let coords = kernels[q]
                .coords_of(&col)
                .map_err(|_| MooreError::Containment { level: q + 1 })?;
            columns.push(coords);
        }
        let matrix = IntMat::from_fn(levels[q].rank(), columns.len(), |i, j| {
            BigInt::from(columns[j].coords[i])
        });
        let d = AbHom::new(levels[q + 1].clone(), levels[q].clone(), matrix)
            .expect("restricted face is well-defined");
        differentials.push(d);
    }
    let complex = AbChainComplex::new(levels, differentials)?;
    Ok(MooreComplex { kernels, complex })
}

/// Homotopy groups pi_0..pi_q_max in canonical invariant-factor form,
/// computed as the homology of the Moore complex.
pub fn homotopy_groups<F: MatrixSimplicialFamily>(
    family: &F,
    q_max: usize,
) -> Result<Vec<FinAbGroup>, MooreError> {
    let moore = moore_complex(family, q_max + 1)?;
    (0..=q_max)
        .map(|q| moore.homology(q).map_err(MooreError::from))
        .collect()
}

/// The unnormalized chain complex: full levels with the alternating face
/// sum as differential. Its homology agrees with the Moore homology and
/// serves as an independent oracle.
pub fn unnormalized_chain_complex<F: MatrixSimplicialFamily>(
    family: &F,
    q_top: usize,
) -> Result<AbChainComplex, FinAbError> {
    let levels: Vec<FinAbGroup> = (0..=q_top).map(|q| family.level_group(q)).collect();
    let mut differentials = Vec::with_capacity(q_top);
    for q in 0..q_top {
        let mut d = AbHom::zero_hom(levels[q + 1].clone(), levels[q].clone());
        for i in 0..=q + 1 {
            let face = family.face_hom(q + 1, i);
            d = if i % 2 == 0 {
                d.add(&face)
            } else {
                d.add(&face.negate())
            };
        }
        differentials.push(d);
    }
    AbChainComplex::new(levels, differentials)
}

/// Finite group up to isomorphism-relevant invariants: order plus the
/// multiset of element orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescription {
    pub order: u128,
    pub element_orders: BTreeMap<u64, u128>,
}

impl GroupDescription {
    pub fn of_abelian(g: &FinAbGroup, cap: u128) -> Result<Self, FinAbError> {
        Ok(GroupDescription {
            order: g.order(),
            element_orders: g.element_order_histogram(cap)?,
        })
    }
}

/// Compute pi_q of a simplicial group by raw enumeration: cycles are the
/// elements killed by every face, boundaries are last-face images of the
/// Moore subgroup one level up, and the quotient is described by its
/// order and element-order histogram.
pub fn brute_force_homotopy<F>(
    family: &F,
    q: usize,
    cap: u128,
) -> Result<GroupDescription, MooreError>
where
    F: GroupFamily,
    F::Elem: Ord,
{
    for level in [q, q + 1] {
        let order = family.level_order(level);
        if order > cap {
            return Err(MooreError::Cap { level, order, cap });
        }
    }
    let in_moore = |level: usize, x: &F::Elem| -> bool {
        let e = family.identity_elem(level.saturating_sub(1));
        (0..level).all(|i| family.elem_eq(level - 1, &family.face(level, i, x), &e))
    };
    // cycles at level q: Moore elements also killed by the last face
    let cycles: Vec<F::Elem> = family
        .enumerate_level(q)
        .into_iter()
        .filter(|x| {
            in_moore(q, x)
                && (q == 0
                    || family.elem_eq(
                        q - 1,
                        &family.face(q, q, x),
                        &family.identity_elem(q - 1),
                    ))
        })
        .collect();
    // boundaries: last-face images of Moore elements one level up
    let boundaries: BTreeSet<F::Elem> = family
        .enumerate_level(q + 1)
        .into_iter()
        .filter(|y| in_moore(q + 1, y))
        .map(|y| family.face(q + 1, q + 1, &y))
        .collect();

    let mut assigned: BTreeSet<F::Elem> = BTreeSet::new();
    let mut element_orders: BTreeMap<u64, u128> = BTreeMap::new();
    let mut cosets = 0u128;
    for x in &cycles {
        if assigned.contains(x) {
            continue;
        }
        cosets += 1;
        for b in &boundaries {
            assigned.insert(family.mul_elem(q, x, b));
        }
        // order of the coset of x in the quotient
        let mut power = x.clone();
        let mut n = 1u64;
        while !boundaries.contains(&power) {
            power = family.mul_elem(q, &power, x);
            n += 1;
        }
        *element_orders.entry(n).or_insert(0) += 1;
    }
    Ok(GroupDescription {
        order: cosets,
        element_orders,
    })
}
