//! Dense arbitrary-precision integer matrices and Smith normal form.
//!
//! The SNF here is the workhorse for kernels, quotients, and homology of
//! finite abelian groups: D = U*M*V with U, V unimodular and a
//! divisibility chain d_1 | d_2 | ... on the non-negative diagonal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        IntMat::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        IntMat::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: &BigInt) {
        let idx = i * self.cols + j;
        self.data[idx] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.add_assign_at(i, j, &prod);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        IntMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        IntMat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
    }
}

/// Smith normal form data: d = u * m * v. The transforms and their exact
/// integer inverses are tracked only when requested.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMat,
    pub u: Option<IntMat>,
    pub uinv: Option<IntMat>,
    pub v: Option<IntMat>,
    pub vinv: Option<IntMat>,
}

impl Snf {
    /// Diagonal entry k, or zero beyond the stored diagonal.
    pub fn diag(&self, k: usize) -> BigInt {
        if k < self.d.rows().min(self.d.cols()) {
            self.d.get(k, k).clone()
        } else {
            BigInt::zero()
        }
    }

    pub fn rank(&self) -> usize {
        (0..self.d.rows().min(self.d.cols()))
            .take_while(|&k| !self.d.get(k, k).is_zero())
            .count()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Track {
    pub u: bool,
    pub uinv: bool,
    pub v: bool,
    pub vinv: bool,
}

impl Track {
    pub fn all() -> Self {
        Track {
            u: true,
            uinv: true,
            v: true,
            vinv: true,
        }
    }

    pub fn right_only() -> Self {
        Track {
            u: false,
            uinv: false,
            v: true,
            vinv: true,
        }
    }

    pub fn none() -> Self {
        Track::default()
    }
}

struct SnfWork {
    m: IntMat,
    u: Option<IntMat>,
    uinv: Option<IntMat>,
    v: Option<IntMat>,
    vinv: Option<IntMat>,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols {
            self.m.data.swap(a * self.m.cols + j, b * self.m.cols + j);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols {
                u.data.swap(a * u.cols + j, b * u.cols + j);
            }
        }
        if let Some(ui) = &mut self.uinv {
            for i in 0..ui.rows {
                ui.data.swap(i * ui.cols + a, i * ui.cols + b);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows {
            self.m.data.swap(i * self.m.cols + a, i * self.m.cols + b);
        }
        if let Some(v) = &mut self.v {
            for i in 0..v.rows {
                v.data.swap(i * v.cols + a, i * v.cols + b);
            }
        }
        if let Some(vi) = &mut self.vinv {
            for j in 0..vi.cols {
                vi.data.swap(a * vi.cols + j, b * vi.cols + j);
            }
        }
    }

    /// row a += k * row b
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.m.cols {
            let t = k * self.m.get(b, j);
            self.m.add_assign_at(a, j, &t);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols {
                let t = k * u.get(b, j);
                u.add_assign_at(a, j, &t);
            }
        }
        if let Some(ui) = &mut self.uinv {
            // inverse op on columns: col b -= k * col a
            for i in 0..ui.rows {
                let t = k * ui.get(i, a);
                let idx = i * ui.cols + b;
                ui.data[idx] -= t;
            }
        }
    }

    /// col a += k * col b
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.m.rows {
            let t = k * self.m.get(i, b);
            self.m.add_assign_at(i, a, &t);
        }
        if let Some(v) = &mut self.v {
            for i in 0..v.rows {
                let t = k * v.get(i, b);
                v.add_assign_at(i, a, &t);
            }
        }
        if let Some(vi) = &mut self.vinv {
            // inverse op on rows: row b -= k * row a
            for j in 0..vi.cols {
                let t = k * vi.get(a, j);
                let idx = b * vi.cols + j;
                vi.data[idx] -= t;
            }
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.m.cols {
            let idx = a * self.m.cols + j;
            let neg = -self.m.data[idx].clone();
            self.m.data[idx] = neg;
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols {
                let idx = a * u.cols + j;
                let neg = -u.data[idx].clone();
                u.data[idx] = neg;
            }
        }
        if let Some(ui) = &mut self.uinv {
            for i in 0..ui.rows {
                let idx = i * ui.cols + a;
                let neg = -ui.data[idx].clone();
                ui.data[idx] = neg;
            }
        }
    }
}

/// Smith normal form with full transform tracking.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    smith_normal_form_with(m, Track::all())
}

/// Smith normal form, tracking only the requested transforms. Pivots are
/// chosen by least absolute value to limit entry growth.
pub fn smith_normal_form_with(m: &IntMat, track: Track) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = SnfWork {
        m: m.clone(),
        u: track.u.then(|| IntMat::identity(rows)),
        uinv: track.uinv.then(|| IntMat::identity(rows)),
        v: track.v.then(|| IntMat::identity(cols)),
        vinv: track.vinv.then(|| IntMat::identity(cols)),
    };
    let bound = rows.min(cols);

    for t in 0..bound {
        loop {
            // least-absolute-value pivot in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w.m.get(i, j).is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if w.m.get(pi, pj).abs() <= w.m.get(i, j).abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !w.m.get(i, t).is_zero() {
                    let q = w.m.get(i, t).div_floor(w.m.get(t, t));
                    let neg = -q;
                    w.add_row(i, t, &neg);
                    if !w.m.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.m.get(t, j).is_zero() {
                    let q = w.m.get(t, j).div_floor(w.m.get(t, t));
                    let neg = -q;
                    w.add_col(j, t, &neg);
                    if !w.m.get(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if clean && w.m.get(t, t).is_negative() {
                w.negate_row(t);
            }
            if clean {
                break;
            }
        }
        if w.m.get(t, t).is_zero() {
            break;
        }
    }

    // enforce the divisibility chain d_t | d_{t+1}
    loop {
        let mut fixed = true;
        for t in 0..bound.saturating_sub(1) {
            let a = w.m.get(t, t).clone();
            let b = w.m.get(t + 1, t + 1).clone();
            if b.is_zero() || a.is_zero() {
                continue;
            }
            if (&b % &a).is_zero() {
                continue;
            }
            fixed = false;
            // fold d_{t+1} into column t and rediagonalize the 2x2 block
            w.add_col(t, t + 1, &BigInt::one());
            loop {
                let att = w.m.get(t, t).clone();
                let a1t = w.m.get(t + 1, t).clone();
                if a1t.is_zero() {
                    break;
                }
                if att.is_zero() || (!a1t.is_zero() && a1t.abs() < att.abs()) {
                    w.swap_rows(t, t + 1);
                    continue;
                }
                let q = w.m.get(t + 1, t).div_floor(w.m.get(t, t));
                let neg = -q;
                w.add_row(t + 1, t, &neg);
            }
            loop {
                let att = w.m.get(t, t).clone();
                let at1 = w.m.get(t, t + 1).clone();
                if at1.is_zero() {
                    break;
                }
                if att.is_zero() || at1.abs() < att.abs() {
                    w.swap_cols(t, t + 1);
                    continue;
                }
                let q = w.m.get(t, t + 1).div_floor(w.m.get(t, t));
                let neg = -q;
                w.add_col(t + 1, t, &neg);
            }
            if w.m.get(t, t).is_negative() {
                w.negate_row(t);
            }
            if w.m.get(t + 1, t + 1).is_negative() {
                w.negate_row(t + 1);
            }
        }
        if fixed {
            break;
        }
    }

    Snf {
        d: w.m,
        u: w.u,
        uinv: w.uinv,
        v: w.v,
        vinv: w.vinv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_snf(m: &IntMat) {
        let snf = smith_normal_form(m);
        let u = snf.u.as_ref().unwrap();
        let v = snf.v.as_ref().unwrap();
        // d = u * m * v
        assert_eq!(u.mul(m).mul(v), snf.d);
        // transforms invertible over the integers
        assert_eq!(u.mul(snf.uinv.as_ref().unwrap()), IntMat::identity(u.rows()));
        assert_eq!(v.mul(snf.vinv.as_ref().unwrap()), IntMat::identity(v.rows()));
        // diagonal, non-negative, divisibility chain
        let bound = m.rows().min(m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero(), "off-diagonal at ({i},{j})");
                }
            }
        }
        for k in 0..bound {
            assert!(!snf.d.get(k, k).is_negative());
            if k + 1 < bound && !snf.d.get(k + 1, k + 1).is_zero() {
                let a = snf.d.get(k, k);
                assert!(!a.is_zero());
                assert!((snf.d.get(k + 1, k + 1) % a).is_zero(), "chain broken at {k}");
            }
        }
    }

    #[test]
    fn identity_is_its_own_snf() {
        let m = IntMat::identity(2);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, m);
        check_snf(&m);
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = IntMat::from_rows_i64(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag(0), BigInt::from(1));
        assert_eq!(snf.diag(1), BigInt::from(6));
        check_snf(&m);
    }

    #[test]
    fn row_4_6_becomes_2() {
        let m = IntMat::from_rows_i64(&[vec![4, 6]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag(0), BigInt::from(2));
        check_snf(&m);
    }

    #[test]
    fn zero_and_empty_matrices() {
        check_snf(&IntMat::zeros(3, 2));
        check_snf(&IntMat::zeros(0, 4));
        check_snf(&IntMat::zeros(4, 0));
        check_snf(&IntMat::zeros(0, 0));
    }

    proptest! {
        #[test]
        fn snf_postconditions_hold(rows in 0usize..5, cols in 0usize..5,
                                   entries in proptest::collection::vec(-30i64..30, 25)) {
            let m = IntMat::from_fn(rows, cols, |i, j| BigInt::from(entries[i * 5 + j]));
            check_snf(&m);
        }
    }
}
