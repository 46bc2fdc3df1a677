//! The tensor-module families over a Hopf algebra: the cyclic module
//! H^(delta,sigma) with its symmetric action in the (counit, unit) case,
//! the cyclic module on two-simplex colorings, and the linearization
//! comparison with the group-valued construction.
//!
//! Every structure map is expressed as a "plan": each source leg is
//! comultiplied into a fixed number of Sweedler copies, and each copy is
//! routed to an output leg (plainly or under the antipode, products taken
//! in display order), to the counit, or to the modular character.

use rand_chacha::ChaCha8Rng;

use crate::family::SimplicialFamily;
use crate::finab::{AbElement, FinAbGroup};
use crate::hopf::{
    enumerate_basis_tuples, group_algebra, sample_tensor, sv_singleton, HopfAlgebra, HopfError,
    ModularPair, Scalar, SparseVec, TensorVector,
};
use crate::simplex::rank_tuple;
use crate::simplex::SimplexTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dest {
    /// Multiply into output leg t.
    Plain(usize),
    /// Multiply into the antipode factor of output leg t.
    Anti(usize),
    /// Consume through the counit.
    Counit,
    /// Consume through the modular character.
    Character,
}

/// One structure map: Sweedler routing per source leg plus an optional
/// constant label (sigma) multiplied first into an output leg.
struct MapPlan {
    target_degree: usize,
    splits: Vec<Vec<Dest>>,
    prefactor: Vec<Option<u32>>,
}

impl MapPlan {
    fn new(source_degree: usize, target_degree: usize) -> Self {
        MapPlan {
            target_degree,
            splits: (0..source_degree).map(|_| Vec::new()).collect(),
            prefactor: vec![None; target_degree],
        }
    }

    /// Identity routing for every source leg not yet assigned, shifted
    /// by the given map of source position to target position.
    fn default_plain(mut self, route: impl Fn(usize) -> usize) -> Self {
        for (i, s) in self.splits.iter_mut().enumerate() {
            if s.is_empty() {
                s.push(Dest::Plain(route(i)));
            }
        }
        self
    }
}

fn apply_plan(
    h: &HopfAlgebra,
    delta: &[Scalar],
    plan: &MapPlan,
    x: &TensorVector,
) -> TensorVector {
    use num_traits::{One, Zero};
    assert_eq!(x.degree(), plan.splits.len());
    let mut out = TensorVector::zero(plan.target_degree);
    for (tuple, coeff) in x.terms() {
        let expansions: Vec<Vec<(Vec<u32>, Scalar)>> = tuple
            .iter()
            .zip(&plan.splits)
            .map(|(&label, dests)| h.iterated_comult_label(label, dests.len().max(1)))
            .collect();
        let mut choice = vec![0usize; expansions.len()];
        loop {
            let mut scalar = coeff.clone();
            let mut plains: Vec<Vec<u32>> = vec![Vec::new(); plan.target_degree];
            let mut antis: Vec<Vec<u32>> = vec![Vec::new(); plan.target_degree];
            for (i, dests) in plan.splits.iter().enumerate() {
                let (legs, c) = &expansions[i][choice[i]];
                scalar *= c;
                for (&copy, dest) in legs.iter().zip(dests) {
                    match *dest {
                        Dest::Plain(t) => plains[t].push(copy),
                        Dest::Anti(t) => antis[t].push(copy),
                        Dest::Counit => scalar *= h.counit_label(copy),
                        Dest::Character => scalar *= &delta[copy as usize],
                    }
                }
            }
            if !scalar.is_zero() {
                let legs: Vec<SparseVec> = (0..plan.target_degree)
                    .map(|t| {
                        let mut v = match plan.prefactor[t] {
                            Some(label) => sv_singleton(label),
                            None => h.unit().clone(),
                        };
                        for &l in &plains[t] {
                            v = h.mul_vec(&v, &sv_singleton(l));
                        }
                        if !antis[t].is_empty() {
                            let mut a = h.unit().clone();
                            for &l in &antis[t] {
                                a = h.mul_vec(&a, &sv_singleton(l));
                            }
                            v = h.mul_vec(&v, &h.antipode_vec(&a));
                        }
                        v
                    })
                    .collect();
                distribute(&legs, scalar, &mut out);
            }
            // advance the mixed-radix choice vector
            let mut pos = choice.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < expansions[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
        // degree-0 sources still contribute one term per input term
        let _ = Scalar::one();
    }
    out
}

/// Expand a tensor product of sparse leg vectors into basis terms.
fn distribute(legs: &[SparseVec], coeff: Scalar, out: &mut TensorVector) {
    fn rec(
        legs: &[SparseVec],
        pos: usize,
        tuple: &mut Vec<u32>,
        coeff: &Scalar,
        out: &mut TensorVector,
    ) {
        if pos == legs.len() {
            out.insert(tuple.clone(), coeff.clone());
            return;
        }
        for (&l, c) in &legs[pos] {
            tuple.push(l);
            rec(legs, pos + 1, tuple, &(coeff * c), out);
            tuple.pop();
        }
    }
    rec(legs, 0, &mut Vec::new(), &coeff, out);
}

/// The cyclic module H^(delta,sigma): level q is the q-fold tensor power
/// of H, with the symmetric action available in the (counit, unit) case
/// over a cocommutative algebra.
pub struct CmFamily {
    h: HopfAlgebra,
    pair: ModularPair,
    symmetric: bool,
}

impl CmFamily {
    pub fn new(h: HopfAlgebra, pair: ModularPair) -> Self {
        let symmetric = h.is_cocommutative();
        CmFamily { h, pair, symmetric }
    }

    /// The (counit, unit) instance; requires cocommutativity so the
    /// modular-pair condition holds.
    pub fn epsilon_one(h: HopfAlgebra) -> Result<Self, HopfError> {
        if !h.is_cocommutative() {
            return Err(HopfError::NotCocommutative);
        }
        let pair = ModularPair::counit_unit(&h)?;
        Ok(CmFamily::new(h, pair))
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        &self.h
    }

    fn face_plan(&self, q: usize, i: usize) -> MapPlan {
        assert!(q >= 1 && i <= q);
        let mut plan = MapPlan::new(q, q - 1);
        if i == 0 {
            plan.splits[0].push(Dest::Counit);
            plan.default_plain(|j| j - 1)
        } else if i == q {
            plan.splits[q - 1].push(Dest::Character);
            plan.default_plain(|j| j)
        } else {
            plan.splits[i - 1].push(Dest::Plain(i - 1));
            plan.splits[i].push(Dest::Plain(i - 1));
            plan.default_plain(|j| if j < i { j } else { j - 1 })
        }
    }

    fn degeneracy_plan(&self, q: usize, i: usize) -> MapPlan {
        assert!(i <= q);
        MapPlan::new(q, q + 1).default_plain(|j| if j < i { j } else { j + 1 })
    }

    fn cyclic_plan(&self, q: usize) -> MapPlan {
        let mut plan = MapPlan::new(q, q);
        if q == 0 {
            return plan;
        }
        for j in 0..q - 1 {
            plan.splits[j] = vec![Dest::Anti(0), Dest::Plain(j + 1)];
        }
        plan.splits[q - 1] = vec![Dest::Anti(0), Dest::Character];
        plan.prefactor[0] = Some(self.pair.sigma);
        plan
    }

    fn transposition_plan(&self, q: usize, i: usize) -> MapPlan {
        assert!(self.symmetric, "symmetric action needs cocommutativity");
        assert!((1..=q).contains(&i));
        let mut plan = MapPlan::new(q, q);
        let s = i - 1;
        plan.splits[s] = match (i == 1, i == q) {
            (true, true) => vec![Dest::Anti(0)],
            (true, false) => vec![Dest::Anti(0), Dest::Plain(1)],
            (false, true) => vec![Dest::Plain(s - 1), Dest::Anti(s)],
            (false, false) => vec![Dest::Plain(s - 1), Dest::Anti(s), Dest::Plain(s + 1)],
        };
        plan.default_plain(|j| j)
    }
}

impl SimplicialFamily for CmFamily {
    type Elem = TensorVector;

    fn family_name(&self) -> String {
        format!("H^(delta,sigma) over {}", self.h.name())
    }

    fn level_order(&self, q: usize) -> u128 {
        (self.h.dim() as u128).pow(q as u32)
    }

    fn enumerate_level(&self, q: usize) -> Vec<TensorVector> {
        enumerate_basis_tuples(self.h.dim(), q)
            .into_iter()
            .map(TensorVector::basis)
            .collect()
    }

    fn sample(&self, q: usize, rng: &mut ChaCha8Rng) -> TensorVector {
        sample_tensor(&self.h, q, rng)
    }

    fn face(&self, q: usize, i: usize, x: &TensorVector) -> TensorVector {
        apply_plan(&self.h, &self.pair.delta, &self.face_plan(q, i), x)
    }

    fn degeneracy(&self, q: usize, i: usize, x: &TensorVector) -> TensorVector {
        apply_plan(&self.h, &self.pair.delta, &self.degeneracy_plan(q, i), x)
    }

    fn cyclic(&self, q: usize, x: &TensorVector) -> TensorVector {
        apply_plan(&self.h, &self.pair.delta, &self.cyclic_plan(q), x)
    }

    fn transposition(&self, q: usize, i: usize, x: &TensorVector) -> TensorVector {
        apply_plan(&self.h, &self.pair.delta, &self.transposition_plan(q, i), x)
    }

    fn elem_eq(&self, _q: usize, a: &TensorVector, b: &TensorVector) -> bool {
        a == b
    }
}

/// Tensor leg index of the pair (u,v) in the column-block layout: block
/// v lists h_{0,v}..h_{v-1,v}.
pub fn block_leg(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

/// The cyclic module on two-simplex colorings: level q is the tensor
/// power of H over the pairs 0 <= u < v <= q-1 in block order.
pub struct SkFamily {
    h: HopfAlgebra,
}

impl SkFamily {
    pub fn new(h: HopfAlgebra) -> Result<Self, HopfError> {
        if !h.is_commutative() {
            return Err(HopfError::NotCommutative);
        }
        Ok(SkFamily { h })
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        &self.h
    }

    pub fn degree(q: usize) -> usize {
        q * (q.saturating_sub(1)) / 2
    }

    fn face_plan(&self, q: usize, k: usize) -> MapPlan {
        assert!(q >= 1 && k <= q);
        let mut plan = MapPlan::new(Self::degree(q), Self::degree(q - 1));
        for v in 1..q {
            for u in 0..v {
                let s = block_leg(u, v);
                plan.splits[s] = if k == 0 {
                    if u == 0 {
                        vec![Dest::Counit]
                    } else {
                        vec![Dest::Plain(block_leg(u - 1, v - 1))]
                    }
                } else if k == q {
                    if v == q - 1 {
                        vec![Dest::Counit]
                    } else {
                        vec![Dest::Plain(block_leg(u, v))]
                    }
                } else if v <= k - 1 {
                    vec![Dest::Plain(block_leg(u, v))]
                } else if v == k {
                    if u == k - 1 {
                        // comultiplied into the antipode slots of the
                        // merged block; zero targets means the counit
                        if k == 1 {
                            vec![Dest::Counit]
                        } else {
                            (0..k - 1).map(|uu| Dest::Anti(block_leg(uu, k - 1))).collect()
                        }
                    } else {
                        vec![Dest::Plain(block_leg(u, k - 1))]
                    }
                } else if u == k {
                    vec![Dest::Counit]
                } else if u < k {
                    vec![Dest::Plain(block_leg(u, v - 1))]
                } else {
                    vec![Dest::Plain(block_leg(u - 1, v - 1))]
                };
            }
        }
        plan
    }

    fn degeneracy_plan(&self, q: usize, k: usize) -> MapPlan {
        assert!(k <= q);
        let mut plan = MapPlan::new(Self::degree(q), Self::degree(q + 1));
        for v in 1..q {
            for u in 0..v {
                let s = block_leg(u, v);
                plan.splits[s] = if u < k {
                    let vv = if v < k { v } else { v + 1 };
                    vec![Dest::Plain(block_leg(u, vv))]
                } else if u == k {
                    vec![
                        Dest::Plain(block_leg(k, v + 1)),
                        Dest::Plain(block_leg(k + 1, v + 1)),
                    ]
                } else {
                    vec![Dest::Plain(block_leg(u + 1, v + 1))]
                };
            }
        }
        plan
    }

    fn cyclic_plan(&self, q: usize) -> MapPlan {
        let d = Self::degree(q);
        let mut plan = MapPlan::new(d, d);
        for w in 1..q {
            for u in 0..w {
                let s = block_leg(u, w);
                plan.splits[s] = if u == 0 {
                    if w == q - 1 {
                        vec![Dest::Plain(block_leg(0, 1))]
                    } else {
                        vec![
                            Dest::Plain(block_leg(0, 1)),
                            Dest::Plain(block_leg(1, w + 1)),
                        ]
                    }
                } else if w == q - 1 {
                    vec![
                        Dest::Anti(block_leg(0, u)),
                        Dest::Plain(block_leg(0, u + 1)),
                    ]
                } else {
                    vec![
                        Dest::Anti(block_leg(0, u)),
                        Dest::Plain(block_leg(0, u + 1)),
                        Dest::Plain(block_leg(u + 1, w + 1)),
                    ]
                };
            }
        }
        plan
    }
}

impl SimplicialFamily for SkFamily {
    type Elem = TensorVector;

    fn family_name(&self) -> String {
        format!("2K({})", self.h.name())
    }

    fn level_order(&self, q: usize) -> u128 {
        (self.h.dim() as u128).pow(Self::degree(q) as u32)
    }

    fn enumerate_level(&self, q: usize) -> Vec<TensorVector> {
        enumerate_basis_tuples(self.h.dim(), Self::degree(q))
            .into_iter()
            .map(TensorVector::basis)
            .collect()
    }

    fn sample(&self, q: usize, rng: &mut ChaCha8Rng) -> TensorVector {
        sample_tensor(&self.h, Self::degree(q), rng)
    }

    fn face(&self, q: usize, i: usize, x: &TensorVector) -> TensorVector {
        apply_plan(&self.h, &[], &self.face_plan(q, i), x)
    }

    fn degeneracy(&self, q: usize, i: usize, x: &TensorVector) -> TensorVector {
        apply_plan(&self.h, &[], &self.degeneracy_plan(q, i), x)
    }

    fn cyclic(&self, q: usize, x: &TensorVector) -> TensorVector {
        apply_plan(&self.h, &[], &self.cyclic_plan(q), x)
    }

    fn elem_eq(&self, _q: usize, a: &TensorVector, b: &TensorVector) -> bool {
        a == b
    }
}

/// Send a level-q element of the two-simplex construction over A to the
/// basis tensor over k[A] whose (u,v) leg is the label of the (u,v)
/// coordinate; legs in block order, coordinates in lexicographic order.
pub fn linearization_map(a: &FinAbGroup, q: usize, x: &AbElement) -> TensorVector {
    let rank = a.rank();
    let mut tuple = vec![0u32; SkFamily::degree(q)];
    for v in 1..q {
        for u in 0..v {
            let lex = rank_tuple(
                &SimplexTuple::new(vec![u, v], q).expect("valid pair"),
                q,
                2,
            )
            .expect("valid pair");
            let component = AbElement::new(x.coords[lex * rank..(lex + 1) * rank].to_vec());
            tuple[block_leg(u, v)] = a.index_of(&component) as u32;
        }
    }
    TensorVector::basis(tuple)
}

/// The group algebra over which `linearization_map` lands.
pub fn linearization_algebra(a: &FinAbGroup) -> HopfAlgebra {
    group_algebra(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::Kan;
    use crate::em::Kg1;
    use crate::family::{MatrixSimplicialFamily, Strategy};
    use crate::hopf::group_algebra_table;
    use crate::tablegroup::TableGroup;
    use crate::verify::{cyclic_relations, simplicial_relations, symmetric_relations, verify_elementwise};

    fn zalg(m: u64) -> HopfAlgebra {
        group_algebra(&FinAbGroup::cyclic(m).unwrap())
    }

    #[test]
    fn cm_face_and_cyclic_on_grouplikes_match_kg1() {
        let g = TableGroup::s3();
        let cm = CmFamily::epsilon_one(group_algebra_table(&g)).unwrap();
        let kg1 = Kg1::new(g.clone());
        for q in 0..=4usize {
            for x in kg1.enumerate_level(q) {
                let t = TensorVector::basis(x.iter().map(|&l| l as u32).collect());
                for i in 0..=q {
                    if q >= 1 {
                        let expected: Vec<u32> =
                            kg1.face(q, i, &x).iter().map(|&l| l as u32).collect();
                        assert_eq!(cm.face(q, i, &t), TensorVector::basis(expected));
                    }
                    let expected: Vec<u32> =
                        kg1.degeneracy(q, i, &x).iter().map(|&l| l as u32).collect();
                    assert_eq!(cm.degeneracy(q, i, &t), TensorVector::basis(expected));
                }
                let expected: Vec<u32> = kg1.cyclic(q, &x).iter().map(|&l| l as u32).collect();
                assert_eq!(cm.cyclic(q, &t), TensorVector::basis(expected));
            }
        }
    }

    #[test]
    fn cm_cyclic_suite_passes_sampled() {
        let cm = CmFamily::epsilon_one(zalg(3)).unwrap();
        let rels = cyclic_relations(3);
        let report = verify_elementwise(
            "cyclic",
            &cm,
            &rels,
            3,
            Strategy::Sampled {
                samples: 20,
                seed: 5,
            },
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
    }

    #[test]
    fn cm_symmetric_suite_passes_sampled() {
        for m in [2u64, 3] {
            let cm = CmFamily::epsilon_one(zalg(m)).unwrap();
            let rels = symmetric_relations(3, true);
            let report = verify_elementwise(
                "symmetric",
                &cm,
                &rels,
                3,
                Strategy::Sampled {
                    samples: 20,
                    seed: 9,
                },
            )
            .unwrap();
            assert!(report.passed(), "k[Z/{m}]: {:?}", report.failures.first());
        }
    }

    #[test]
    fn cm_symmetric_works_for_s3_algebra() {
        let cm = CmFamily::epsilon_one(group_algebra_table(&TableGroup::s3())).unwrap();
        let rels = symmetric_relations(2, true);
        let report = verify_elementwise(
            "symmetric",
            &cm,
            &rels,
            2,
            Strategy::Sampled {
                samples: 12,
                seed: 3,
            },
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
    }

    #[test]
    fn sk_face_example_at_q3() {
        // group-likes at q=3, k=2: the merged display collapses to the
        // single color g01 g02 g12^{-1}
        let a = FinAbGroup::cyclic(5).unwrap();
        let sk = SkFamily::new(group_algebra(&a)).unwrap();
        let g = |c: u64| c as u32;
        let x = TensorVector::basis(vec![g(1), g(2), g(4)]); // g01=1, g02=2, g12=4
        let out = sk.face(3, 2, &x);
        // 1 + 2 - 4 = -1 = 4 mod 5
        assert_eq!(out, TensorVector::basis(vec![g(4)]));
        // q=2: every face is the counit scalar
        let y = TensorVector::basis(vec![g(3)]);
        for i in 0..=2 {
            assert_eq!(sk.face(2, i, &y).as_scalar(), Scalar::from_integer(1.into()));
        }
    }

    #[test]
    fn sk_simplicial_and_cyclic_pass_on_basis_q3() {
        for m in [2u64, 3] {
            let sk = SkFamily::new(zalg(m)).unwrap();
            let mut rels = simplicial_relations(3);
            rels.extend(cyclic_relations(3));
            let report = verify_elementwise(
                "simplicial+cyclic",
                &sk,
                &rels,
                3,
                Strategy::Exhaustive { cap: 1 << 12 },
            )
            .unwrap();
            assert!(report.passed(), "k[Z/{m}]: {:?}", report.failures.first());
        }
    }

    #[test]
    fn sk_passes_on_sampled_rational_tensors() {
        let sk = SkFamily::new(zalg(2)).unwrap();
        let mut rels = simplicial_relations(4);
        rels.extend(cyclic_relations(4));
        let report = verify_elementwise(
            "simplicial+cyclic",
            &sk,
            &rels,
            4,
            Strategy::Sampled {
                samples: 10,
                seed: 42,
            },
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
    }

    #[test]
    fn sk_rejects_noncommutative_algebras() {
        assert!(matches!(
            SkFamily::new(group_algebra_table(&TableGroup::s3())),
            Err(HopfError::NotCommutative)
        ));
    }

    #[test]
    fn linearization_commutes_with_every_map() {
        for m in [2u64, 3] {
            let a = FinAbGroup::cyclic(m).unwrap();
            let kan = Kan::new(a.clone(), 2);
            let sk = SkFamily::new(linearization_algebra(&a)).unwrap();
            for q in 0..=4usize {
                let group = kan.level_group(q);
                for x in crate::finab::enumerate_elements(&group, 1 << 12).unwrap() {
                    let lin = linearization_map(&a, q, &x);
                    for i in 0..=q {
                        if q >= 1 {
                            let via_group = linearization_map(
                                &a,
                                q - 1,
                                &kan.face_hom(q, i).apply(&x),
                            );
                            assert_eq!(sk.face(q, i, &lin), via_group, "face q={q} i={i}");
                        }
                        let via_group =
                            linearization_map(&a, q + 1, &kan.degeneracy_hom(q, i).apply(&x));
                        assert_eq!(sk.degeneracy(q, i, &lin), via_group, "degen q={q} i={i}");
                    }
                    let via_group = linearization_map(&a, q, &kan.cyclic_hom(q).apply(&x));
                    assert_eq!(sk.cyclic(q, &lin), via_group, "tau q={q}");
                }
            }
        }
    }

    #[test]
    fn sk_tau2_is_identity_and_tau_order() {
        let sk = SkFamily::new(zalg(3)).unwrap();
        let x = TensorVector::basis(vec![2]);
        assert_eq!(sk.cyclic(2, &x), x);
        // tau_3^4 = id on a rational combination
        let mut y = TensorVector::basis(vec![1, 2, 0]).add(&TensorVector::basis(vec![0, 1, 2]).scale(&crate::hopf::scalar(-2)));
        let start = y.clone();
        for _ in 0..4 {
            y = sk.cyclic(3, &y);
        }
        assert_eq!(y, start);
    }
}
