//! Exact arithmetic for finite abelian groups: invariant-factor groups,
//! integer-matrix homomorphisms, kernels, homology, and brute-force
//! element enumeration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::snf::{smith_normal_form_with, IntMat, Track};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FinAbError {
    #[error("modulus {0} is smaller than 2")]
    BadModulus(u64),
    #[error("parse error at token '{0}'")]
    Parse(String),
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("homomorphism not well-defined: column {col} has order violation in row {row}")]
    IllDefined { row: usize, col: usize },
    #[error("domain/codomain mismatch")]
    DomainMismatch,
    #[error("composition is non-zero on generator {generator}: image {image:?}")]
    NonzeroComposition { generator: usize, image: Vec<u64> },
    #[error("element {0:?} does not lie in the kernel subgroup")]
    NotInKernel(Vec<u64>),
}

/// A finite abelian group presented as a direct sum of cyclic groups
/// Z/m_1 + ... + Z/m_r. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FinAbGroup {
    moduli: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self, FinAbError> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(FinAbError::BadModulus(m));
        }
        Ok(FinAbGroup { moduli })
    }

    pub fn trivial() -> Self {
        FinAbGroup { moduli: Vec::new() }
    }

    pub fn cyclic(m: u64) -> Result<Self, FinAbError> {
        FinAbGroup::new(vec![m])
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().fold(1u128, |acc, &m| acc * m as u128)
    }

    /// Direct sum with `other`, concatenating moduli.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        FinAbGroup { moduli }
    }

    /// `copies` direct summands of `self`.
    pub fn power(&self, copies: usize) -> FinAbGroup {
        let mut moduli = Vec::with_capacity(self.moduli.len() * copies);
        for _ in 0..copies {
            moduli.extend_from_slice(&self.moduli);
        }
        FinAbGroup { moduli }
    }

    /// Invariant-factor form: moduli m_1 | m_2 | ... with unit factors
    /// dropped. Computed by Smith normal form of the diagonal relation
    /// matrix.
    pub fn canonical_form(&self) -> FinAbGroup {
        if self.moduli.is_empty() {
            return FinAbGroup::trivial();
        }
        let diag: Vec<BigInt> = self.moduli.iter().map(|&m| BigInt::from(m)).collect();
        let snf = smith_normal_form_with(&IntMat::diagonal(&diag), Track::none());
        let moduli: Vec<u64> = (0..self.moduli.len())
            .map(|k| snf.diag(k).to_u64().expect("invariant factor fits u64"))
            .filter(|&d| d > 1)
            .collect();
        FinAbGroup { moduli }
    }

    /// Isomorphism test via canonical forms.
    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn zero(&self) -> AbElement {
        AbElement {
            coords: vec![0; self.moduli.len()],
        }
    }

    pub fn reduce(&self, coords: &[BigInt]) -> AbElement {
        assert_eq!(coords.len(), self.moduli.len());
        AbElement {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(c, &m)| {
                    let m_big = BigInt::from(m);
                    c.mod_floor(&m_big).to_u64().expect("reduced residue")
                })
                .collect(),
        }
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        }
    }

    pub fn scalar_mul(&self, k: u64, a: &AbElement) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| ((x as u128 * k as u128) % m as u128) as u64)
                .collect(),
        }
    }

    pub fn element_order(&self, a: &AbElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| m / x.gcd(&m))
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    /// Multiset of element orders, the brute-force isomorphism invariant.
    pub fn element_order_histogram(&self, cap: u128) -> Result<BTreeMap<u64, u128>, FinAbError> {
        let mut hist = BTreeMap::new();
        for el in enumerate_elements(self, cap)? {
            *hist.entry(self.element_order(&el)).or_insert(0) += 1;
        }
        Ok(hist)
    }

    /// Position of an element in the [`enumerate_elements`] order
    /// (mixed-radix, first coordinate most significant).
    pub fn index_of(&self, a: &AbElement) -> usize {
        let mut idx: u128 = 0;
        for (&c, &m) in a.coords.iter().zip(&self.moduli) {
            idx = idx * m as u128 + c as u128;
        }
        idx as usize
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// An element of a [`FinAbGroup`], as reduced residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbElement {
    pub coords: Vec<u64>,
}

impl AbElement {
    pub fn new(coords: Vec<u64>) -> Self {
        AbElement { coords }
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.coords.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// A homomorphism of finite abelian groups given by an integer matrix
/// acting on coordinates (target-rank x source-rank).
#[derive(Debug, Clone)]
pub struct AbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMat,
}

impl AbHom {
    /// Construct with the well-definedness check: for each source
    /// generator of order m, m times its image column must vanish in the
    /// target.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMat) -> Result<Self, FinAbError> {
        assert_eq!(matrix.rows(), target.rank());
        assert_eq!(matrix.cols(), source.rank());
        for col in 0..matrix.cols() {
            let m = BigInt::from(source.moduli()[col]);
            for row in 0..matrix.rows() {
                let n = BigInt::from(target.moduli()[row]);
                if !((matrix.get(row, col) * &m) % &n).is_zero() {
                    return Err(FinAbError::IllDefined { row, col });
                }
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    /// Construct without the well-definedness check (mutation harnesses
    /// need to build deliberately broken maps).
    pub fn new_unchecked(source: FinAbGroup, target: FinAbGroup, matrix: IntMat) -> Self {
        assert_eq!(matrix.rows(), target.rank());
        assert_eq!(matrix.cols(), source.rank());
        AbHom {
            source,
            target,
            matrix,
        }
    }

    pub fn zero_hom(source: FinAbGroup, target: FinAbGroup) -> Self {
        let matrix = IntMat::zeros(target.rank(), source.rank());
        AbHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: FinAbGroup) -> Self {
        let matrix = IntMat::identity(group.rank());
        AbHom {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn apply(&self, a: &AbElement) -> AbElement {
        let image = self.matrix.apply(&a.to_bigint());
        self.target.reduce(&image)
    }

    /// self after other: (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &AbHom) -> Result<AbHom, FinAbError> {
        if self.source.moduli() != other.target.moduli() {
            return Err(FinAbError::DomainMismatch);
        }
        Ok(AbHom {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        assert_eq!(self.source.moduli(), other.source.moduli());
        assert_eq!(self.target.moduli(), other.target.moduli());
        let matrix = IntMat::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            self.matrix.get(i, j) + other.matrix.get(i, j)
        });
        AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        }
    }

    pub fn negate(&self) -> AbHom {
        let matrix = IntMat::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            -self.matrix.get(i, j)
        });
        AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        }
    }

    /// Entries reduced into [0, modulus) per target row.
    pub fn reduced_matrix(&self) -> IntMat {
        IntMat::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            let m = BigInt::from(self.target.moduli()[i]);
            self.matrix.get(i, j).mod_floor(&m)
        })
    }

    /// Equality as a homomorphism: entry-wise equality modulo the target
    /// moduli.
    pub fn eq_hom(&self, other: &AbHom) -> bool {
        self.source.moduli() == other.source.moduli()
            && self.target.moduli() == other.target.moduli()
            && self.reduced_matrix() == other.reduced_matrix()
    }

    pub fn is_zero_hom(&self) -> bool {
        self.reduced_matrix().is_zero()
    }

    /// First source generator whose image is non-zero, with the image.
    pub fn nonzero_witness(&self) -> Option<(usize, Vec<u64>)> {
        let reduced = self.reduced_matrix();
        (0..reduced.cols()).find_map(|j| {
            let col = reduced.column(j);
            if col.iter().any(|x| !x.is_zero()) {
                Some((
                    j,
                    col.iter().map(|x| x.to_u64().expect("reduced")).collect(),
                ))
            } else {
                None
            }
        })
    }
}

/// A kernel subgroup K of a finite abelian group, with enough data to
/// express ambient elements in K-coordinates: the kernel-lattice basis is
/// G = V diag(e) and K = Z^r / C Z^r with U_C C V_C = D'.
#[derive(Debug, Clone)]
pub struct KernelData {
    group: FinAbGroup,
    incl: AbHom,
    ambient: FinAbGroup,
    vinv: IntMat,
    scale: Vec<BigInt>,
    uc: IntMat,
    dprime: Vec<BigInt>,
    kept: Vec<usize>,
}

impl KernelData {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn inclusion(&self) -> &AbHom {
        &self.incl
    }

    /// Express an ambient integer vector in the coordinates of K.
    /// Fails when the vector is not in the kernel subgroup.
    pub fn coords_of(&self, ambient: &[BigInt]) -> Result<AbElement, FinAbError> {
        let y = self.vinv.apply(ambient);
        let mut scaled = Vec::with_capacity(y.len());
        for (yi, ei) in y.iter().zip(&self.scale) {
            let (q, r) = yi.div_rem(ei);
            if !r.is_zero() {
                let witness = self
                    .ambient
                    .reduce(ambient)
                    .coords;
                return Err(FinAbError::NotInKernel(witness));
            }
            scaled.push(q);
        }
        let z = self.uc.apply(&scaled);
        let coords = self
            .kept
            .iter()
            .map(|&k| {
                z[k].mod_floor(&self.dprime[k])
                    .to_u64()
                    .expect("reduced residue")
            })
            .collect();
        Ok(AbElement { coords })
    }
}

/// Kernel of a homomorphism, as an abstract group with an injective
/// inclusion into the source. The kernel condition is lifted to a single
/// integer system by scaling rows to a common modulus and running SNF.
pub fn hom_kernel(f: &AbHom) -> KernelData {
    let source = f.source().clone();
    let r = source.rank();
    let lcm_target: BigInt = f
        .target()
        .moduli()
        .iter()
        .fold(BigInt::one(), |acc, &m| acc.lcm(&BigInt::from(m)));

    // scale row j by L/n_j so the condition becomes M' x = 0 mod L
    let scaled = IntMat::from_fn(f.matrix().rows(), r, |i, j| {
        let n = BigInt::from(f.target().moduli()[i]);
        f.matrix().get(i, j) * (&lcm_target / n)
    });
    let snf = smith_normal_form_with(&scaled, Track::right_only());
    let v = snf.v.clone().expect("tracked");
    let vinv = snf.vinv.clone().expect("tracked");

    // kernel lattice basis G = V diag(e), e_i = L / gcd(d_i, L)
    let scale: Vec<BigInt> = (0..r)
        .map(|i| &lcm_target / snf.diag(i).gcd(&lcm_target))
        .collect();
    let g = IntMat::from_fn(r, r, |i, j| v.get(i, j) * &scale[j]);

    // relations: C = G^{-1} diag(source moduli)
    let relations = IntMat::from_fn(r, r, |i, j| {
        let m = BigInt::from(source.moduli()[j]);
        let num = vinv.get(i, j) * m;
        let (q, rem) = num.div_rem(&scale[i]);
        debug_assert!(rem.is_zero(), "ambient relations lie in the kernel lattice");
        q
    });
    let csnf = smith_normal_form_with(&relations, Track::all());
    let uc = csnf.u.clone().expect("tracked");
    let ucinv = csnf.uinv.clone().expect("tracked");
    let dprime: Vec<BigInt> = (0..r).map(|k| csnf.diag(k)).collect();
    let kept: Vec<usize> = (0..r).filter(|&k| dprime[k] > BigInt::one()).collect();
    let moduli: Vec<u64> = kept
        .iter()
        .map(|&k| dprime[k].to_u64().expect("invariant factor fits u64"))
        .collect();
    let group = FinAbGroup::new(moduli).expect("invariant factors >= 2");

    // inclusion generators: columns of G * U_C^{-1} at the kept indices
    let gens = g.mul(&ucinv);
    let incl_matrix = IntMat::from_fn(r, kept.len(), |i, j| {
        let m = BigInt::from(source.moduli()[i]);
        gens.get(i, kept[j]).mod_floor(&m)
    });
    let incl = AbHom::new(group.clone(), source.clone(), incl_matrix)
        .expect("kernel inclusion is well-defined");

    KernelData {
        group,
        incl,
        ambient: source,
        vinv,
        scale,
        uc,
        dprime,
        kept,
    }
}

/// Homology ker(d_out)/im(d_in) at the middle group, in canonical
/// invariant-factor form. Rejects inputs whose composition is non-zero.
pub fn homology_at(d_in: &AbHom, d_out: &AbHom) -> Result<FinAbGroup, FinAbError> {
    if d_in.target().moduli() != d_out.source().moduli() {
        return Err(FinAbError::DomainMismatch);
    }
    let composite = d_out.compose(d_in)?;
    if let Some((generator, image)) = composite.nonzero_witness() {
        return Err(FinAbError::NonzeroComposition { generator, image });
    }

    let middle = d_out.source().clone();
    let r = middle.rank();
    let kernel = hom_kernel(d_out);

    // image generators plus the ambient relations, in kernel-lattice
    // coordinates: X = G^{-1} [d_in | diag(m)]
    let relations = IntMat::diagonal(
        &middle
            .moduli()
            .iter()
            .map(|&m| BigInt::from(m))
            .collect::<Vec<_>>(),
    );
    let w = d_in.matrix().hstack(&relations);
    let y = kernel.vinv.mul(&w);
    let x = IntMat::from_fn(r, w.cols(), |i, j| {
        let (q, rem) = y.get(i, j).div_rem(&kernel.scale[i]);
        debug_assert!(rem.is_zero(), "image lands in the kernel lattice");
        q
    });
    let snf = smith_normal_form_with(&x, Track::none());
    let moduli: Vec<u64> = (0..r)
        .map(|k| snf.diag(k).to_u64().expect("invariant factor fits u64"))
        .filter(|&d| d > 1)
        .collect();
    FinAbGroup::new(moduli)
}

/// Parse a group spec: `term ("x" term)*` with term = `Z/<int>=2>` or `1`.
pub fn group_from_spec(spec: &str) -> Result<FinAbGroup, FinAbError> {
    let mut moduli = Vec::new();
    for raw in spec.split('x') {
        let term = raw.trim();
        if term == "1" {
            continue;
        }
        let Some(rest) = term.strip_prefix("Z/") else {
            return Err(FinAbError::Parse(term.to_string()));
        };
        let m: u64 = rest.parse().map_err(|_| FinAbError::Parse(term.to_string()))?;
        if m < 2 {
            return Err(FinAbError::Parse(term.to_string()));
        }
        moduli.push(m);
    }
    FinAbGroup::new(moduli)
}

/// All elements of G in lexicographic coordinate order, starting at zero.
pub fn enumerate_elements(g: &FinAbGroup, cap: u128) -> Result<Vec<AbElement>, FinAbError> {
    let order = g.order();
    if order > cap {
        return Err(FinAbError::CapExceeded { order, cap });
    }
    let mut out = Vec::with_capacity(order as usize);
    let mut current = vec![0u64; g.rank()];
    loop {
        out.push(AbElement {
            coords: current.clone(),
        });
        // increment, last coordinate fastest
        let mut pos = g.rank();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < g.moduli()[pos] {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// A chain complex of finite abelian groups; differentials[q] maps
/// levels[q+1] -> levels[q]. Composition-zero is checked on construction.
#[derive(Debug, Clone)]
pub struct AbChainComplex {
    levels: Vec<FinAbGroup>,
    differentials: Vec<AbHom>,
}

impl AbChainComplex {
    pub fn new(levels: Vec<FinAbGroup>, differentials: Vec<AbHom>) -> Result<Self, FinAbError> {
        assert_eq!(differentials.len() + 1, levels.len());
        for (q, d) in differentials.iter().enumerate() {
            assert_eq!(d.source().moduli(), levels[q + 1].moduli());
            assert_eq!(d.target().moduli(), levels[q].moduli());
        }
        for q in 0..differentials.len().saturating_sub(1) {
            let composite = differentials[q].compose(&differentials[q + 1])?;
            if let Some((generator, image)) = composite.nonzero_witness() {
                return Err(FinAbError::NonzeroComposition { generator, image });
            }
        }
        Ok(AbChainComplex {
            levels,
            differentials,
        })
    }

    pub fn levels(&self) -> &[FinAbGroup] {
        &self.levels
    }

    pub fn differential(&self, q: usize) -> &AbHom {
        &self.differentials[q]
    }

    /// Number of levels carried.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Homology at level q: ker(d: C_q -> C_{q-1}) / im(d: C_{q+1} -> C_q).
    /// Out-of-range differentials are taken to be zero maps.
    pub fn homology(&self, q: usize) -> Result<FinAbGroup, FinAbError> {
        let d_out = if q == 0 {
            AbHom::zero_hom(self.levels[0].clone(), FinAbGroup::trivial())
        } else {
            self.differentials[q - 1].clone()
        };
        let d_in = if q < self.differentials.len() {
            self.differentials[q].clone()
        } else {
            AbHom::zero_hom(FinAbGroup::trivial(), self.levels[q].clone())
        };
        homology_at(&d_in, &d_out)
    }
}
