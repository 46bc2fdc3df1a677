//! Finite groups given by explicit multiplication tables, with the
//! built-ins used throughout (cyclic groups, S3, D4, Q8) and a loader for
//! the table file format: first line the order m, then m lines of m
//! 0-based entries with identity 0.

use thiserror::Error;

use crate::finab::FinAbGroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableGroupError {
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row},{col}) out of range [0,{order})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    NoIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("malformed table file: {0}")]
    Malformed(String),
}

/// A finite group as a multiplication table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl TableGroup {
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, TableGroupError> {
        let order = table.len();
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(TableGroupError::NotSquare {
                    row,
                    len: r.len(),
                    order,
                });
            }
            for (col, &v) in r.iter().enumerate() {
                if v >= order {
                    return Err(TableGroupError::EntryOutOfRange {
                        row,
                        col,
                        value: v,
                        order,
                    });
                }
            }
        }
        for g in 0..order {
            if table[0][g] != g || table[g][0] != g {
                return Err(TableGroupError::NoIdentity(g));
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| table[g][h] == 0 && table[h][g] == 0) {
                Some(h) => inverse[g] = h,
                None => return Err(TableGroupError::NoInverse(g)),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(TableGroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(TableGroup {
            name: name.into(),
            table,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Cyclic group Z/n written multiplicatively.
    pub fn cyclic(n: usize) -> TableGroup {
        assert!(n >= 1);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        TableGroup::new(format!("Z/{n}"), table).expect("cyclic table is a group")
    }

    /// A finite abelian group as a table group; element i is the i-th
    /// element in enumeration order.
    pub fn from_abelian(g: &FinAbGroup) -> TableGroup {
        let els = crate::finab::enumerate_elements(g, 1 << 20).expect("abelian group small");
        let n = els.len();
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| g.index_of(&g.add(&els[a], &els[b])))
                    .collect()
            })
            .collect();
        TableGroup::new(g.to_string(), table).expect("abelian table is a group")
    }

    /// Symmetric group on three letters; elements ordered with the
    /// identity first, then the remaining permutations of {0,1,2} in lex
    /// order of their one-line notation.
    pub fn s3() -> TableGroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a*b)(x) = a(b(x))
                        let comp = [a[b[0]], a[b[1]], a[b[2]]];
                        index(&comp)
                    })
                    .collect()
            })
            .collect();
        TableGroup::new("S3", table).expect("S3 table is a group")
    }

    /// Dihedral group of order 8: r^4 = s^2 = 1, s r s = r^-1. Elements
    /// 0..3 are r^j, elements 4..7 are s r^j.
    pub fn d4() -> TableGroup {
        let n = 8;
        let mul = |a: usize, b: usize| -> usize {
            let (sa, ra) = (a / 4, a % 4);
            let (sb, rb) = (b / 4, b % 4);
            // (s^sa r^ra)(s^sb r^rb) = s^(sa+sb) r^(ra' + rb) with
            // ra' = ra or -ra depending on whether it moves past s
            let ra_adj = if sb == 1 { (4 - ra) % 4 } else { ra };
            ((sa + sb) % 2) * 4 + (ra_adj + rb) % 4
        };
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        TableGroup::new("D4", table).expect("D4 table is a group")
    }

    /// Quaternion group {±1, ±i, ±j, ±k}; element 2u+s encodes the unit
    /// u in (1,i,j,k) with sign s.
    pub fn q8() -> TableGroup {
        // unit multiplication: (unit, unit) -> (unit, sign)
        let unit_mul = |a: usize, b: usize| -> (usize, i32) {
            match (a, b) {
                (0, x) => (x, 1),
                (x, 0) => (x, 1),
                (1, 1) | (2, 2) | (3, 3) => (0, -1),
                (1, 2) => (3, 1),
                (2, 1) => (3, -1),
                (2, 3) => (1, 1),
                (3, 2) => (1, -1),
                (3, 1) => (2, 1),
                (1, 3) => (2, -1),
                _ => unreachable!(),
            }
        };
        let mul = |a: usize, b: usize| -> usize {
            let (ua, sa) = (a / 2, if a % 2 == 0 { 1 } else { -1 });
            let (ub, sb) = (b / 2, if b % 2 == 0 { 1 } else { -1 });
            let (u, s) = unit_mul(ua, ub);
            u * 2 + if sa * sb * s == 1 { 0 } else { 1 }
        };
        let table = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
        TableGroup::new("Q8", table).expect("Q8 table is a group")
    }

    /// Look up a built-in by name or parse an abelian spec.
    pub fn from_spec(spec: &str) -> Result<TableGroup, String> {
        match spec.trim() {
            "S3" => Ok(TableGroup::s3()),
            "D4" => Ok(TableGroup::d4()),
            "Q8" => Ok(TableGroup::q8()),
            other => {
                let g = crate::finab::group_from_spec(other).map_err(|e| e.to_string())?;
                Ok(TableGroup::from_abelian(&g))
            }
        }
    }

    /// Parse the multiplication-table file format.
    pub fn from_table_text(name: &str, text: &str) -> Result<TableGroup, TableGroupError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let order: usize = lines
            .next()
            .ok_or_else(|| TableGroupError::Malformed("empty file".into()))?
            .trim()
            .parse()
            .map_err(|_| TableGroupError::Malformed("first line must be the order".into()))?;
        let mut table = Vec::with_capacity(order);
        for _ in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| TableGroupError::Malformed("missing table row".into()))?;
            let row: Result<Vec<usize>, _> =
                line.split_whitespace().map(|t| t.parse::<usize>()).collect();
            table.push(row.map_err(|_| TableGroupError::Malformed(format!("bad row: {line}")))?);
        }
        TableGroup::new(name, table)
    }
}
