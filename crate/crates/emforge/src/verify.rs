//! The identity verifier: relation instance generators for the
//! simplicial, cyclic (Loday), and symmetric (Coxeter) relation families,
//! and engines that check them element-wise or as exact matrix equations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::family::{
    path_end_level, Failure, MatrixSimplicialFamily, Op, SimplicialFamily, Strategy,
    VerificationReport, VerifyError,
};

/// A single relation instance: two paths out of a base level that must
/// agree as maps.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: &'static str,
    pub level: usize,
    pub indices: Vec<usize>,
    pub lhs: Vec<Op>,
    pub rhs: Vec<Op>,
}

impl Relation {
    fn new(name: &'static str, level: usize, indices: Vec<usize>, lhs: Vec<Op>, rhs: Vec<Op>) -> Self {
        debug_assert_eq!(
            path_end_level(level, &lhs),
            path_end_level(level, &rhs),
            "paths of {name} must end at the same level"
        );
        Relation {
            name,
            level,
            indices,
            lhs,
            rhs,
        }
    }
}

use Op::{Cyclic, Degeneracy as S, Face as F, Transposition as T};

/// The five simplicial identity families, indexed by base level q <= q_max.
/// Degeneracy-side instances reach levels q+1 and q+2.
pub fn simplicial_relations(q_max: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for q in 0..=q_max {
        // faces out of level q exist for q >= 1, indices 0..=q
        if q >= 2 {
            for j in 0..=q {
                for i in 0..j {
                    out.push(Relation::new(
                        "face_face",
                        q,
                        vec![i, j],
                        vec![F(j), F(i)],
                        vec![F(i), F(j - 1)],
                    ));
                }
            }
        }
        for j in 0..=q {
            for i in 0..=j {
                out.push(Relation::new(
                    "degeneracy_degeneracy",
                    q,
                    vec![i, j],
                    vec![S(j), S(i)],
                    vec![S(i), S(j + 1)],
                ));
            }
        }
        for j in 0..=q {
            for i in 0..j {
                out.push(Relation::new(
                    "face_degeneracy_lt",
                    q,
                    vec![i, j],
                    vec![S(j), F(i)],
                    vec![F(i), S(j - 1)],
                ));
            }
        }
        for j in 0..=q {
            out.push(Relation::new(
                "face_degeneracy_id",
                q,
                vec![j, j],
                vec![S(j), F(j)],
                vec![],
            ));
            out.push(Relation::new(
                "face_degeneracy_id",
                q,
                vec![j + 1, j],
                vec![S(j), F(j + 1)],
                vec![],
            ));
        }
        for j in 0..q {
            for i in j + 2..=q + 1 {
                out.push(Relation::new(
                    "face_degeneracy_gt",
                    q,
                    vec![i, j],
                    vec![S(j), F(i)],
                    vec![F(i - 1), S(j)],
                ));
            }
        }
    }
    out
}

/// The cyclic-category relations on top of the simplicial ones, per base
/// level q <= q_max, including tau_q^{q+1} = id.
pub fn cyclic_relations(q_max: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for q in 0..=q_max {
        if q >= 1 {
            for i in 1..=q {
                out.push(Relation::new(
                    "face_cyclic",
                    q,
                    vec![i],
                    vec![Cyclic, F(i)],
                    vec![F(i - 1), Cyclic],
                ));
            }
            out.push(Relation::new(
                "face0_cyclic",
                q,
                vec![0],
                vec![Cyclic, F(0)],
                vec![F(q)],
            ));
        }
        for i in 1..=q {
            out.push(Relation::new(
                "degeneracy_cyclic",
                q,
                vec![i],
                vec![Cyclic, S(i)],
                vec![S(i - 1), Cyclic],
            ));
        }
        out.push(Relation::new(
            "degeneracy0_cyclic",
            q,
            vec![0],
            vec![Cyclic, S(0)],
            vec![S(q), Cyclic, Cyclic],
        ));
        out.push(Relation::new(
            "cyclic_order",
            q,
            vec![],
            vec![Cyclic; q + 1],
            vec![],
        ));
    }
    out
}

/// Coxeter relations for the transposition action, plus (optionally) the
/// check that the full cycle built from transpositions equals tau.
pub fn symmetric_relations(q_max: usize, cycle_vs_tau: bool) -> Vec<Relation> {
    let mut out = Vec::new();
    for q in 0..=q_max {
        for i in 1..=q {
            out.push(Relation::new(
                "transposition_involution",
                q,
                vec![i],
                vec![T(i), T(i)],
                vec![],
            ));
        }
        for i in 1..=q {
            for j in i + 2..=q {
                out.push(Relation::new(
                    "transposition_commute",
                    q,
                    vec![i, j],
                    vec![T(i), T(j)],
                    vec![T(j), T(i)],
                ));
            }
        }
        for i in 1..q {
            out.push(Relation::new(
                "transposition_braid",
                q,
                vec![i],
                vec![T(i), T(i + 1), T(i)],
                vec![T(i + 1), T(i), T(i + 1)],
            ));
        }
        if cycle_vs_tau && q >= 1 {
            // the cycle (1,2,...,q+1) as a product of adjacent
            // transpositions, rightmost factor applied first
            let cycle: Vec<Op> = (1..=q).rev().map(T).collect();
            out.push(Relation::new("cycle_equals_cyclic", q, vec![], cycle, vec![Cyclic]));
        }
    }
    out
}

/// Check relation instances by evaluating both paths on elements of the
/// base level: every element under the exhaustive strategy, seeded
/// samples otherwise.
pub fn verify_elementwise<Fam: SimplicialFamily>(
    suite: &str,
    family: &Fam,
    relations: &[Relation],
    q_max: usize,
    strategy: Strategy,
) -> Result<VerificationReport, VerifyError> {
    let mut failures = Vec::new();
    let mut evaluations = 0u64;
    let mut rng = match strategy {
        Strategy::Sampled { seed, .. } => ChaCha8Rng::seed_from_u64(seed),
        _ => ChaCha8Rng::seed_from_u64(0),
    };
    for rel in relations {
        let elements: Vec<Fam::Elem> = match strategy {
            Strategy::Exhaustive { cap } => {
                let order = family.level_order(rel.level);
                if order > cap {
                    return Err(VerifyError::EnumerationCap {
                        level: rel.level,
                        order,
                        cap,
                    });
                }
                family.enumerate_level(rel.level)
            }
            Strategy::Sampled { samples, .. } => (0..samples)
                .map(|_| family.sample(rel.level, &mut rng))
                .collect(),
            Strategy::MatrixExact => {
                panic!("matrix strategy requires a matrix-backed family")
            }
        };
        for x in &elements {
            evaluations += 1;
            let lhs = family.apply_path(rel.level, &rel.lhs, x);
            let rhs = family.apply_path(rel.level, &rel.rhs, x);
            let end = path_end_level(rel.level, &rel.lhs);
            if !family.elem_eq(end, &lhs, &rhs) {
                failures.push(Failure {
                    relation: rel.name.to_string(),
                    level: rel.level,
                    indices: rel.indices.clone(),
                    witness: family.describe(x),
                    lhs: family.describe(&lhs),
                    rhs: family.describe(&rhs),
                });
                break; // one witness per relation instance
            }
        }
    }
    Ok(VerificationReport {
        suite: suite.to_string(),
        family: family.family_name(),
        q_max,
        strategy,
        relations_checked: relations.len() as u64,
        evaluations,
        failures,
    })
}

/// Check relation instances as exact equalities of composed integer
/// matrices (modulo the level moduli).
pub fn verify_matrix<Fam: MatrixSimplicialFamily>(
    suite: &str,
    family: &Fam,
    relations: &[Relation],
    q_max: usize,
) -> VerificationReport {
    let mut failures = Vec::new();
    let mut evaluations = 0u64;
    for rel in relations {
        evaluations += 1;
        let lhs = family.path_hom(rel.level, &rel.lhs);
        let rhs = family.path_hom(rel.level, &rel.rhs);
        if !lhs.eq_hom(&rhs) {
            failures.push(Failure {
                relation: rel.name.to_string(),
                level: rel.level,
                indices: rel.indices.clone(),
                witness: "matrix comparison".to_string(),
                lhs: format!("{:?}", lhs.reduced_matrix()),
                rhs: format!("{:?}", rhs.reduced_matrix()),
            });
        }
    }
    VerificationReport {
        suite: suite.to_string(),
        family: family.family_name(),
        q_max,
        strategy: Strategy::MatrixExact,
        relations_checked: relations.len() as u64,
        evaluations,
        failures,
    }
}
