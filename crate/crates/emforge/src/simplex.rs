//! Combinatorics of the simplicial category: coface/codegeneracy maps on
//! points and on strictly increasing index tuples, lexicographic ranking,
//! and the symbolic classification of how faces and degeneracies act on a
//! coordinate index.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("tuple {entries:?} is not strictly increasing")]
    NotIncreasing { entries: Vec<usize> },
    #[error("tuple {entries:?} exceeds ambient bound {ambient}")]
    OutOfAmbient { entries: Vec<usize>, ambient: usize },
    #[error("index {index} out of range [0, {max}]")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rank {rank} out of range for C({q},{n})")]
    RankOutOfRange { rank: usize, q: usize, n: usize },
}

/// Coface map d^i on points of the simplicial category.
pub fn coface_point(i: usize, u: usize) -> usize {
    if u < i {
        u
    } else {
        u + 1
    }
}

/// Codegeneracy map s^i on points.
pub fn codegeneracy_point(i: usize, u: usize) -> usize {
    if u <= i {
        u
    } else {
        u - 1
    }
}

/// A strictly increasing tuple of coordinate indices inside an ambient
/// level: entries u_1 < ... < u_n with u_n <= ambient - 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexTuple {
    entries: Vec<usize>,
    ambient: usize,
}

impl SimplexTuple {
    pub fn new(entries: Vec<usize>, ambient: usize) -> Result<Self, SimplexError> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SimplexError::NotIncreasing { entries });
        }
        if let Some(&last) = entries.last() {
            if last >= ambient {
                return Err(SimplexError::OutOfAmbient { entries, ambient });
            }
        }
        Ok(SimplexTuple { entries, ambient })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Binomial coefficient C(n, k) as usize; saturates only far beyond the
/// scales this library touches.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Lexicographic rank of a strictly increasing n-tuple in {0,...,q-1}
/// (the combinatorial number system, 0-based).
pub fn rank_tuple(t: &SimplexTuple, q: usize, n: usize) -> Result<usize, SimplexError> {
    if t.len() != n {
        return Err(SimplexError::NotIncreasing {
            entries: t.entries.clone(),
        });
    }
    if t.ambient != q || t.entries.last().is_some_and(|&u| u >= q) {
        return Err(SimplexError::OutOfAmbient {
            entries: t.entries.clone(),
            ambient: q,
        });
    }
    let mut rank = 0;
    let mut prev: isize = -1;
    for (j, &u) in t.entries.iter().enumerate() {
        // count tuples that agree up to position j and have a smaller entry here
        for x in (prev + 1) as usize..u {
            rank += binomial(q - 1 - x, n - 1 - j);
        }
        prev = u as isize;
    }
    Ok(rank)
}

/// Inverse of [`rank_tuple`].
pub fn unrank_tuple(rank: usize, q: usize, n: usize) -> Result<SimplexTuple, SimplexError> {
    if rank >= binomial(q, n) {
        return Err(SimplexError::RankOutOfRange { rank, q, n });
    }
    let mut entries = Vec::with_capacity(n);
    let mut rank = rank;
    let mut x = 0;
    for j in 0..n {
        loop {
            let count = binomial(q - 1 - x, n - 1 - j);
            if rank < count {
                entries.push(x);
                x += 1;
                break;
            }
            rank -= count;
            x += 1;
        }
    }
    SimplexTuple::new(entries, q)
}

/// Enumerate all strictly increasing n-tuples in {0,...,q-1} in lex order.
pub fn all_tuples(q: usize, n: usize) -> Vec<SimplexTuple> {
    (0..binomial(q, n))
        .map(|r| unrank_tuple(r, q, n).expect("rank in range"))
        .collect()
}

/// How a face map acts on one target coordinate, read in pullback form:
/// either the coordinate is a single shifted source coordinate, or (in the
/// u_n = i-1 branch) a signed product of n+1 source coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceAction {
    Shifted(SimplexTuple),
    Merged(Vec<(SimplexTuple, i64)>),
}

/// How a degeneracy acts on one target coordinate: trivial (the identity
/// element) or a single shifted source coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegeneracyAction {
    Trivial,
    Shifted(SimplexTuple),
}

/// Classify the action of the i-th face of level q on the target
/// coordinate `t` (a tuple in ambient q-1).
pub fn face_branch(i: usize, t: &SimplexTuple, q: usize) -> Result<FaceAction, SimplexError> {
    if q == 0 || i > q {
        return Err(SimplexError::IndexOutOfRange { index: i, max: q });
    }
    if t.ambient() != q - 1 {
        return Err(SimplexError::OutOfAmbient {
            entries: t.entries().to_vec(),
            ambient: q - 1,
        });
    }
    let n = t.len();
    let last = *t.entries().last().expect("coordinate tuples are non-empty");
    if i == 0 || last + 1 != i {
        let shifted: Vec<usize> = t.entries().iter().map(|&u| coface_point(i, u)).collect();
        return Ok(FaceAction::Shifted(SimplexTuple::new(shifted, q)?));
    }
    // u_n = i - 1: the target coordinate merges n+1 source coordinates.
    // i <= q-1 here since u_n <= q-2, so the appended index stays in range.
    debug_assert!(i <= q - 1);
    let mut terms = Vec::with_capacity(n + 1);
    terms.push((SimplexTuple::new(t.entries().to_vec(), q)?, 1));
    for j in 1..=n {
        let mut entries = t.entries().to_vec();
        entries.remove(n - j);
        entries.push(i);
        let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
        terms.push((SimplexTuple::new(entries, q)?, sign));
    }
    Ok(FaceAction::Merged(terms))
}

/// Classify the action of the i-th degeneracy of level q on the target
/// coordinate `t` (a tuple in ambient q+1).
pub fn degeneracy_branch(
    i: usize,
    t: &SimplexTuple,
    q: usize,
) -> Result<DegeneracyAction, SimplexError> {
    if i > q {
        return Err(SimplexError::IndexOutOfRange { index: i, max: q });
    }
    if t.ambient() != q + 1 {
        return Err(SimplexError::OutOfAmbient {
            entries: t.entries().to_vec(),
            ambient: q + 1,
        });
    }
    let last = *t.entries().last().expect("coordinate tuples are non-empty");
    if last == i {
        return Ok(DegeneracyAction::Trivial);
    }
    let shifted: Vec<usize> = t
        .entries()
        .iter()
        .map(|&u| codegeneracy_point(i, u))
        .collect();
    if shifted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(DegeneracyAction::Trivial);
    }
    Ok(DegeneracyAction::Shifted(SimplexTuple::new(shifted, q)?))
}
