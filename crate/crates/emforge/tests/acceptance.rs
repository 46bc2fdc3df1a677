//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Oracles here are coded independently of the library
//! paths they check.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use emforge::cohomology::{group_cohomology, secondary_cohomology, secondary_cohomology_f2};
use emforge::cyclicmod::{linearization_algebra, linearization_map, CmFamily, SkFamily};
use emforge::em::{
    crosscheck_specializations, kan_degeneracy_matrix, kan_face_matrix, Kan, Kg1, Kg1Matrix,
    MutatedFamily, Mutation,
};
use emforge::family::{
    MatrixElements, MatrixSimplicialFamily, SimplicialFamily, Strategy,
};
use emforge::finab::{
    enumerate_elements, group_from_spec, homology_at, AbHom, FinAbGroup,
};
use emforge::hopf::{group_algebra_table, TensorVector};
use emforge::moore::{brute_force_homotopy, homotopy_groups, moore_complex, GroupDescription};
use emforge::snf::IntMat;
use emforge::tablegroup::TableGroup;
use emforge::verify::{
    cyclic_relations, simplicial_relations, symmetric_relations, verify_elementwise,
    verify_matrix,
};

fn report(criterion: usize, what: &str, ok: bool) {
    println!(
        "criterion {criterion} ({what}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {what}");
}

fn coefficient_groups() -> Vec<FinAbGroup> {
    ["Z/2", "Z/3", "Z/4", "Z/2 x Z/2"]
        .iter()
        .map(|s| group_from_spec(s).unwrap())
        .collect()
}

#[test]
fn criterion_01_homotopy_concentration() {
    let mut ok = true;
    for a in coefficient_groups() {
        for n in 1..=3usize {
            let pi = homotopy_groups(&Kan::new(a.clone(), n), 6).unwrap();
            for (q, group) in pi.iter().enumerate().take(6) {
                let expected_a = q == n;
                if expected_a && !group.is_isomorphic(&a) {
                    ok = false;
                }
                if !expected_a && !group.canonical_form().is_trivial() {
                    ok = false;
                }
            }
        }
    }
    report(1, "homotopy groups concentrated in degree n", ok);
}

#[test]
fn criterion_02_moore_levels_in_degree_two() {
    let mut ok = true;
    for a in coefficient_groups() {
        let moore = moore_complex(&Kan::new(a.clone(), 2), 6).unwrap();
        for q in 0..=5usize {
            let level = moore.level(q);
            if q == 2 {
                ok &= level.is_isomorphic(&a);
            } else {
                ok &= level.canonical_form().is_trivial();
            }
        }
    }
    report(2, "Moore subgroup trivial except in degree 2", ok);
}

#[test]
fn criterion_03_simplicial_identities_and_mutation_kill() {
    let q_max = 6usize;
    let rels = simplicial_relations(q_max);
    let mut ok = true;
    let mut families: Vec<(FinAbGroup, usize)> = Vec::new();
    for a in coefficient_groups() {
        for n in 1..=4usize {
            families.push((a.clone(), n));
        }
    }
    for (a, n) in &families {
        let fam = Kan::new(a.clone(), *n);
        ok &= verify_matrix("simplicial", &fam, &rels, q_max).passed();
    }
    // mutation harness: corrupt one matrix entry and demand a failure
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut killed = 0usize;
    for m in 0..50usize {
        let (a, n) = &families[m % families.len()];
        let fam = Kan::new(a.clone(), *n);
        let on_face = rng.random_range(0..2) == 0;
        // levels where source and target ranks are both positive
        let q = if on_face {
            rng.random_range(*n + 1..q_max)
        } else {
            rng.random_range(*n..q_max)
        };
        let i = rng.random_range(0..=q);
        let hom = if on_face {
            fam.face_hom(q, i)
        } else {
            fam.degeneracy_hom(q, i)
        };
        let row = rng.random_range(0..hom.matrix().rows());
        let col = rng.random_range(0..hom.matrix().cols());
        let mutant = MutatedFamily::new(&fam, Mutation { on_face, q, i, row, col });
        if !verify_matrix("simplicial", &mutant, &rels, q_max).passed() {
            killed += 1;
        }
    }
    ok &= killed == 50;
    report(3, "simplicial identities pass; 50/50 mutations killed", ok);
}

#[test]
fn criterion_04_cyclic_relation_suite() {
    let mut ok = true;
    for g in [TableGroup::cyclic(4), TableGroup::s3()] {
        let fam = Kg1::new(g);
        let report = verify_elementwise(
            "cyclic",
            &fam,
            &cyclic_relations(3),
            3,
            Strategy::Exhaustive { cap: 1 << 12 },
        )
        .unwrap();
        ok &= report.passed();
    }
    for spec in ["Z/2", "Z/3", "Z/6"] {
        let fam = Kan::new(group_from_spec(spec).unwrap(), 2);
        ok &= verify_matrix("cyclic", &fam, &cyclic_relations(5), 5).passed();
    }
    report(4, "cyclic suite for K(G,1) and K(A,2)", ok);
}

#[test]
fn criterion_05_specializations_match_tables() {
    let mut ok = true;
    for a in coefficient_groups() {
        ok &= crosscheck_specializations(&a, 6).passed();
        // degree-1 specialization further out
        let kg1 = Kg1Matrix::new(a.clone());
        for q in 0..=8usize {
            for i in 0..=q {
                if q >= 1 {
                    ok &= kan_face_matrix(&a, 1, q, i).eq_hom(&kg1.face_hom(q, i));
                }
                ok &= kan_degeneracy_matrix(&a, 1, q, i).eq_hom(&kg1.degeneracy_hom(q, i));
            }
        }
    }
    report(5, "general formulas equal piecewise tables", ok);
}

#[test]
fn criterion_06_tensor_construction_is_cyclic() {
    let mut ok = true;
    for spec in ["k[Z/2]", "k[Z/3]"] {
        let fam = SkFamily::new(emforge::hopf::algebra_from_spec(spec).unwrap()).unwrap();
        let mut rels = simplicial_relations(4);
        rels.extend(cyclic_relations(4));
        ok &= verify_elementwise(
            "simplicial+cyclic",
            &fam,
            &rels,
            4,
            Strategy::Exhaustive { cap: 1 << 12 },
        )
        .unwrap()
        .passed();
        ok &= verify_elementwise(
            "simplicial+cyclic",
            &fam,
            &rels,
            4,
            Strategy::Sampled { samples: 200, seed: 11 },
        )
        .unwrap()
        .passed();
    }
    report(6, "tensor construction passes simplicial + cyclic suites", ok);
}

#[test]
fn criterion_07_linearization_commutes() {
    let mut ok = true;
    for spec in ["Z/2", "Z/3"] {
        let a = group_from_spec(spec).unwrap();
        let kan = Kan::new(a.clone(), 2);
        let sk = SkFamily::new(linearization_algebra(&a)).unwrap();
        for q in 0..=4usize {
            for x in enumerate_elements(&kan.level_group(q), 1 << 12).unwrap() {
                let lin = linearization_map(&a, q, &x);
                for i in 0..=q {
                    if q >= 1 {
                        ok &= sk.face(q, i, &lin)
                            == linearization_map(&a, q - 1, &kan.face_hom(q, i).apply(&x));
                    }
                    ok &= sk.degeneracy(q, i, &lin)
                        == linearization_map(&a, q + 1, &kan.degeneracy_hom(q, i).apply(&x));
                }
                ok &= sk.cyclic(q, &lin)
                    == linearization_map(&a, q, &kan.cyclic_hom(q).apply(&x));
            }
        }
    }
    // the cyclic module over a group algebra restricts to the
    // group-valued construction on basis tensors, including for a
    // non-commutative group
    let g = TableGroup::s3();
    let cm = CmFamily::epsilon_one(group_algebra_table(&g)).unwrap();
    let kg1 = Kg1::new(g);
    for q in 0..=4usize {
        for x in kg1.enumerate_level(q) {
            let t = TensorVector::basis(x.iter().map(|&l| l as u32).collect());
            let lift = |word: &[usize]| {
                TensorVector::basis(word.iter().map(|&l| l as u32).collect())
            };
            for i in 0..=q {
                if q >= 1 {
                    ok &= cm.face(q, i, &t) == lift(&kg1.face(q, i, &x));
                }
                ok &= cm.degeneracy(q, i, &t) == lift(&kg1.degeneracy(q, i, &x));
            }
            ok &= cm.cyclic(q, &t) == lift(&kg1.cyclic(q, &x));
        }
    }
    report(7, "linearization squares commute", ok);
}

#[test]
fn criterion_08_symmetric_action() {
    let mut ok = true;
    for spec in ["k[Z/2]", "k[Z/3]"] {
        let fam =
            CmFamily::epsilon_one(emforge::hopf::algebra_from_spec(spec).unwrap()).unwrap();
        ok &= verify_elementwise(
            "symmetric",
            &fam,
            &symmetric_relations(4, true),
            4,
            Strategy::Sampled { samples: 200, seed: 23 },
        )
        .unwrap()
        .passed();
    }
    report(8, "Coxeter relations and cycle-equals-tau", ok);
}

/// Inhomogeneous bar-complex group cohomology with trivial action, coded
/// directly from the classical coboundary formula, independent of the
/// simplicial machinery.
fn bar_cohomology(g: &TableGroup, b: &FinAbGroup, n_max: usize) -> Vec<FinAbGroup> {
    let ord = g.order();
    let rank = b.rank();
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..ord).map(move |x| {
                        let mut t2 = t.clone();
                        t2.push(x);
                        t2
                    })
                })
                .collect();
        }
        out
    };
    let tuple_index = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * ord + x);
    let delta = |n: usize| -> AbHom {
        let source = b.power(ord.pow(n as u32));
        let target = b.power(ord.pow(n as u32 + 1));
        let mut entries = vec![vec![0i64; ord.pow(n as u32)]; ord.pow(n as u32 + 1)];
        for t in tuples(n + 1) {
            let row = tuple_index(&t);
            // drop the first entry
            entries[row][tuple_index(&t[1..])] += 1;
            // merge adjacent entries
            for i in 1..=n {
                let mut s = t.clone();
                let merged = g.mul(s[i - 1], s[i]);
                s.remove(i);
                s[i - 1] = merged;
                entries[row][tuple_index(&s)] += if i % 2 == 0 { 1 } else { -1 };
            }
            // drop the last entry
            entries[row][tuple_index(&t[..n])] += if (n + 1) % 2 == 0 { 1 } else { -1 };
        }
        let matrix = IntMat::from_fn(rank * ord.pow(n as u32 + 1), rank * ord.pow(n as u32), |r, c| {
            if r % rank == c % rank {
                BigInt::from(entries[r / rank][c / rank])
            } else {
                BigInt::from(0)
            }
        });
        AbHom::new(source, target, matrix).expect("bar coboundary is well defined")
    };
    let deltas: Vec<AbHom> = (0..=n_max).map(delta).collect();
    (0..=n_max)
        .map(|n| {
            let d_in = if n == 0 {
                AbHom::zero_hom(FinAbGroup::trivial(), b.power(1))
            } else {
                deltas[n - 1].clone()
            };
            homology_at(&d_in, &deltas[n])
                .expect("bar complex is a complex")
                .canonical_form()
        })
        .collect()
}

#[test]
fn criterion_09_cohomology_against_oracles() {
    let z2t = TableGroup::cyclic(2);
    let z2 = group_from_spec("Z/2").unwrap();
    let mut ok = true;
    let lib = group_cohomology(&z2t, &z2, 5, 1 << 20).unwrap();
    let oracle = bar_cohomology(&z2t, &z2, 5);
    for n in 0..=5usize {
        ok &= lib.groups[n].is_isomorphic(&oracle[n]);
        ok &= oracle[n].is_isomorphic(&z2);
    }
    let secondary = secondary_cohomology(&z2, &z2, 4, 1 << 20).unwrap();
    let f2_result = secondary_cohomology_f2(&z2, &z2, 4, 1 << 20).unwrap();
    for n in 0..=4usize {
        let canon = secondary.groups[n].canonical_form();
        ok &= canon.moduli().iter().all(|&m| m == 2);
        ok &= canon.is_isomorphic(&f2_result.groups[n]);
    }
    report(9, "cohomology agrees with bar and F2 oracles", ok);
}

#[test]
fn criterion_10_brute_force_oracle_agreement() {
    let cap = 1u128 << 12;
    let mut ok = true;
    let mut instances = 0usize;
    for a in coefficient_groups() {
        for n in 1..=3usize {
            let fam = Kan::new(a.clone(), n);
            let pi = homotopy_groups(&fam, 6).unwrap();
            let elements = MatrixElements(&fam);
            for (q, expected) in pi.iter().enumerate().take(7) {
                if fam.level_group(q).order() > cap || fam.level_group(q + 1).order() > cap {
                    continue;
                }
                instances += 1;
                let brute = brute_force_homotopy(&elements, q, cap).unwrap();
                let described = GroupDescription::of_abelian(expected, cap).unwrap();
                ok &= brute == described;
            }
        }
    }
    ok &= instances > 0;
    report(10, "Moore homology equals brute-force enumeration", ok);
}
