//! Cohomology by applying Map(_, B) to a simplicial family: cochain
//! levels are B-valued functions on the enumerated level sets, the
//! differential is the alternating face sum, and cohomology is computed
//! either by exact Smith normal form or (over coefficients of exponent
//! two) by bit-packed F2 rank counting.

use serde::Serialize;
use thiserror::Error;

use crate::em::{block_matrix, Kan, Kg1};
use crate::family::{MatrixElements, SimplicialFamily};
use crate::finab::{homology_at, AbHom, FinAbError, FinAbGroup};
use crate::tablegroup::TableGroup;

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("level {level} has {order} elements, beyond the cap {cap}")]
    Cap { level: usize, order: u128, cap: u128 },
    #[error("family does not index its elements; cochains need an enumeration")]
    NoIndex,
    #[error("F2 path requires every coefficient modulus to be 2, got {0}")]
    NotF2(String),
    #[error(transparent)]
    FinAb(#[from] FinAbError),
}

/// Signed incidence entries of the differential out of cochain level q:
/// for each element x of level q+1 (row), the faces of x (columns) with
/// alternating signs, summed over coinciding faces.
fn delta_entries<F: SimplicialFamily>(family: &F, q: usize) -> Result<Vec<Vec<i64>>, CohomologyError> {
    let targets = family.enumerate_level(q + 1);
    let source_count = family.level_order(q) as usize;
    let mut rows = vec![vec![0i64; source_count]; targets.len()];
    for (t, x) in targets.iter().enumerate() {
        for i in 0..=q + 1 {
            let y = family.face(q + 1, i, x);
            let c = family.index_of(q, &y).ok_or(CohomologyError::NoIndex)?;
            rows[t][c] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(rows)
}

/// Functions from the level sets of a simplicial family to B, with the
/// alternating-sum differential. deltas[q] maps C^q to C^{q+1}.
pub struct CochainComplex {
    levels: Vec<FinAbGroup>,
    deltas: Vec<AbHom>,
    dims: Vec<u128>,
}

impl CochainComplex {
    pub fn level(&self, q: usize) -> &FinAbGroup {
        &self.levels[q]
    }

    pub fn delta(&self, q: usize) -> &AbHom {
        &self.deltas[q]
    }

    /// Enumeration sizes |K_q| underlying each cochain level.
    pub fn dims(&self) -> &[u128] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// H^n = ker(delta^n) / im(delta^{n-1}), in canonical form.
    pub fn cohomology(&self, n: usize) -> Result<FinAbGroup, FinAbError> {
        let d_out = if n < self.deltas.len() {
            self.deltas[n].clone()
        } else {
            AbHom::zero_hom(self.levels[n].clone(), FinAbGroup::trivial())
        };
        let d_in = if n == 0 {
            AbHom::zero_hom(FinAbGroup::trivial(), self.levels[0].clone())
        } else {
            self.deltas[n - 1].clone()
        };
        homology_at(&d_in, &d_out)
    }
}

/// Build the cochain complex of a family up to level q_top, refusing any
/// level whose enumeration exceeds the cap.
pub fn cochain_complex<F: SimplicialFamily>(
    family: &F,
    b: &FinAbGroup,
    q_top: usize,
    cap: u128,
) -> Result<CochainComplex, CohomologyError> {
    let mut dims = Vec::with_capacity(q_top + 1);
    for q in 0..=q_top {
        let order = family.level_order(q);
        if order > cap {
            return Err(CohomologyError::Cap {
                level: q,
                order,
                cap,
            });
        }
        dims.push(order);
    }
    let rank = b.rank();
    let levels: Vec<FinAbGroup> = dims.iter().map(|&n| b.power(n as usize)).collect();
    let mut deltas = Vec::with_capacity(q_top);
    for q in 0..q_top {
        let entries = delta_entries(family, q)?;
        let matrix = block_matrix(dims[q + 1] as usize, dims[q] as usize, rank, |t| {
            entries[t]
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(c, &e)| (c, e))
                .collect()
        });
        deltas.push(
            AbHom::new(levels[q].clone(), levels[q + 1].clone(), matrix)
                .expect("incidence blocks are well-defined"),
        );
    }
    // delta o delta = 0, hard assertion
    for q in 0..deltas.len().saturating_sub(1) {
        let composite = deltas[q + 1].compose(&deltas[q]).expect("levels line up");
        assert!(
            composite.is_zero_hom(),
            "delta composed with delta is non-zero at level {q}"
        );
    }
    Ok(CochainComplex {
        levels,
        deltas,
        dims,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyResult {
    pub groups: Vec<FinAbGroup>,
    pub dims: Vec<u128>,
    pub elapsed_ms: u64,
}

fn cohomology_of_family<F: SimplicialFamily>(
    family: &F,
    b: &FinAbGroup,
    n_max: usize,
    cap: u128,
) -> Result<CohomologyResult, CohomologyError> {
    let start = std::time::Instant::now();
    let complex = cochain_complex(family, b, n_max + 1, cap)?;
    let groups = (0..=n_max)
        .map(|n| complex.cohomology(n).map(|g| g.canonical_form()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CohomologyResult {
        groups,
        dims: complex.dims()[..=n_max].to_vec(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Group cohomology H^n(G, B) with trivial action, as the cohomology of
/// the cochains on K(G,1).
pub fn group_cohomology(
    g: &TableGroup,
    b: &FinAbGroup,
    n_max: usize,
    cap: u128,
) -> Result<CohomologyResult, CohomologyError> {
    cohomology_of_family(&Kg1::new(g.clone()), b, n_max, cap)
}

/// Secondary cohomology of the construction on two-simplices.
pub fn secondary_cohomology(
    a: &FinAbGroup,
    b: &FinAbGroup,
    n_max: usize,
    cap: u128,
) -> Result<CohomologyResult, CohomologyError> {
    let family = Kan::new(a.clone(), 2);
    cohomology_of_family(&MatrixElements(&family), b, n_max, cap)
}

/// A dense matrix over F2 with bit-packed rows.
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: Vec<Vec<u64>>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let w = cols.div_ceil(64);
        F2Matrix {
            rows,
            cols,
            words: vec![vec![0u64; w]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % 64);
        if bit {
            self.words[r][c / 64] |= mask;
        } else {
            self.words[r][c / 64] &= !mask;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.words[r][c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank by in-place Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.words.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let (word, mask) = (c / 64, 1u64 << (c % 64));
            let Some(pivot) = (rank..self.rows).find(|&r| m[r][word] & mask != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let pivot_row = m[rank].clone();
            for r in 0..self.rows {
                if r != rank && m[r][word] & mask != 0 {
                    for (aw, sw) in m[r].iter_mut().zip(&pivot_row) {
                        *aw ^= sw;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// F2 cohomology dimensions of a family: dim H^n over F2 for n <= n_max,
/// via bit-packed ranks of the incidence matrices reduced mod 2.
pub fn cohomology_dims_f2<F: SimplicialFamily>(
    family: &F,
    n_max: usize,
    cap: u128,
) -> Result<Vec<usize>, CohomologyError> {
    let mut dims = Vec::with_capacity(n_max + 2);
    for q in 0..=n_max + 1 {
        let order = family.level_order(q);
        if order > cap {
            return Err(CohomologyError::Cap {
                level: q,
                order,
                cap,
            });
        }
        dims.push(order as usize);
    }
    let mut ranks = Vec::with_capacity(n_max + 1);
    for q in 0..=n_max {
        let entries = delta_entries(family, q)?;
        let mut m = F2Matrix::zeros(dims[q + 1], dims[q]);
        for (t, row) in entries.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e.rem_euclid(2) == 1 {
                    m.set(t, c, true);
                }
            }
        }
        ranks.push(m.rank());
    }
    Ok((0..=n_max)
        .map(|n| dims[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect())
}

/// Secondary cohomology over exponent-two coefficients by the F2 rank
/// path; the groups are elementary abelian by construction.
pub fn secondary_cohomology_f2(
    a: &FinAbGroup,
    b: &FinAbGroup,
    n_max: usize,
    cap: u128,
) -> Result<CohomologyResult, CohomologyError> {
    if b.moduli().iter().any(|&m| m != 2) {
        return Err(CohomologyError::NotF2(b.to_string()));
    }
    let start = std::time::Instant::now();
    let family = Kan::new(a.clone(), 2);
    let elements = MatrixElements(&family);
    let dims_f2 = cohomology_dims_f2(&elements, n_max, cap)?;
    let r = b.rank();
    let groups = dims_f2
        .iter()
        .map(|&d| FinAbGroup::new(vec![2; d * r]).expect("elementary abelian"))
        .collect();
    let dims = (0..=n_max).map(|q| elements.level_order(q)).collect();
    Ok(CohomologyResult {
        groups,
        dims,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finab::group_from_spec;

    fn z(m: u64) -> FinAbGroup {
        FinAbGroup::cyclic(m).unwrap()
    }

    #[test]
    fn cochain_ranks_follow_level_sizes() {
        let family = Kg1::new(TableGroup::cyclic(2));
        let complex = cochain_complex(&family, &z(2), 5, 1 << 12).unwrap();
        for q in 0..=5usize {
            assert_eq!(complex.level(q).rank(), 1 << q);
        }
    }

    #[test]
    fn h0_is_the_coefficients() {
        let b = group_from_spec("Z/2 x Z/4").unwrap();
        for g in [TableGroup::cyclic(3), TableGroup::s3()] {
            let res = group_cohomology(&g, &b, 1, 1 << 12).unwrap();
            assert!(res.groups[0].is_isomorphic(&b));
        }
    }

    #[test]
    fn z2_cohomology_is_z2_in_every_degree() {
        let res = group_cohomology(&TableGroup::cyclic(2), &z(2), 5, 1 << 12).unwrap();
        for (n, g) in res.groups.iter().enumerate() {
            assert!(g.is_isomorphic(&z(2)), "H^{n} = {g}");
        }
    }

    #[test]
    fn coprime_orders_kill_higher_degrees() {
        let res = group_cohomology(&TableGroup::cyclic(3), &z(2), 3, 1 << 12).unwrap();
        assert!(res.groups[0].is_isomorphic(&z(2)));
        for g in &res.groups[1..] {
            assert!(g.is_trivial());
        }
    }

    #[test]
    fn h1_is_homs_into_coefficients() {
        // H^1(Z/4, Z/2) = Hom(Z/4, Z/2) = Z/2 with trivial action
        let res = group_cohomology(&TableGroup::cyclic(4), &z(2), 1, 1 << 12).unwrap();
        assert!(res.groups[1].is_isomorphic(&z(2)));
    }

    #[test]
    fn cyclic_group_integral_pattern() {
        // H^n(Z/3, Z/3) = Z/3 in every degree (trivial action)
        let res = group_cohomology(&TableGroup::cyclic(3), &z(3), 3, 1 << 12).unwrap();
        for g in &res.groups {
            assert!(g.is_isomorphic(&z(3)));
        }
    }

    #[test]
    fn secondary_small_degrees() {
        let res = secondary_cohomology(&z(2), &z(2), 2, 1 << 12).unwrap();
        assert!(res.groups[0].is_isomorphic(&z(2))); // constants
        assert!(res.groups[1].is_trivial()); // K_1 is a point
        assert_eq!(res.dims[..3], [1, 1, 2]);
    }

    #[test]
    fn secondary_dual_paths_agree() {
        let snf = secondary_cohomology(&z(2), &z(2), 4, 1 << 12).unwrap();
        let f2 = secondary_cohomology_f2(&z(2), &z(2), 4, 1 << 12).unwrap();
        for n in 0..=4 {
            assert!(
                snf.groups[n].is_isomorphic(&f2.groups[n]),
                "n={n}: {} vs {}",
                snf.groups[n],
                f2.groups[n]
            );
        }
    }

    #[test]
    fn f2_rank_basics() {
        let mut m = F2Matrix::zeros(3, 3);
        m.set(0, 0, true);
        m.set(1, 1, true);
        m.set(2, 0, true);
        m.set(2, 1, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(F2Matrix::zeros(5, 7).rank(), 0);
    }

    #[test]
    fn cap_refusal_names_the_level() {
        let family = Kg1::new(TableGroup::s3());
        match cochain_complex(&family, &z(2), 4, 100) {
            Err(CohomologyError::Cap { level, order, .. }) => {
                assert_eq!(level, 3);
                assert_eq!(order, 216);
            }
            other => panic!("expected cap refusal, got {:?}", other.is_ok()),
        }
    }
}
