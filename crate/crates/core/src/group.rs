//! Finite groups as multiplication tables.
//!
//! Tables are validated on construction: identity, two-sided inverses, and
//! full associativity (order cubed triples). Built-ins cover the cyclic
//! groups and the quaternion group of order 8; anything else loads from JSON.

use crate::abelian::AbelianGroup;
use crate::matrix::IntMatrix;
use crate::snf::cokernel;
use num_bigint::BigInt;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("multiplication table is invalid: {0}")]
    BadTable(String),
    #[error("unknown built-in group '{0}'")]
    UnknownGroup(String),
    #[error("group table does not parse: {0}")]
    Parse(String),
    #[error("table has order {got}, expected {want}")]
    OrderMismatch { got: usize, want: usize },
}

#[derive(Clone)]
pub struct FiniteGroupTable {
    name: String,
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    pub fn new(name: impl Into<String>, mult_rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mult_rows.len();
        if n == 0 {
            return Err(GroupError::BadTable("empty table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in mult_rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::BadTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::BadTable(format!(
                        "entry ({i},{j}) = {v} out of range"
                    )));
                }
                mult.push(v);
            }
        }
        let at = |a: usize, b: usize| mult[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::BadTable("no identity element".into()))?;

        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| at(x, y) == identity && at(y, x) == identity)
                    .ok_or_else(|| GroupError::BadTable(format!("element {x} has no inverse")))
            })
            .collect::<Result<Vec<usize>, _>>()?;

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::BadTable(format!(
                            "associativity fails on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }

        Ok(FiniteGroupTable { name: name.into(), order: n, mult, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroupTable::new(format!("c{n}"), rows).expect("cyclic table is a group")
    }

    /// Quaternion group of order 8. Elements are the unit quaternions
    /// 1, -1, i, -i, j, -j, k, -k in that order.
    pub fn quaternion() -> Self {
        // basis products: (sign, basis) with basis 0..4 = 1, i, j, k
        const BASIS: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let idx = |sign: i8, basis: usize| basis * 2 + if sign < 0 { 1 } else { 0 };
        let rows: Vec<Vec<usize>> = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, ba) = (if a % 2 == 0 { 1i8 } else { -1 }, a / 2);
                        let (sb, bb) = (if b % 2 == 0 { 1i8 } else { -1 }, b / 2);
                        let (s, basis) = BASIS[ba][bb];
                        idx(sa * sb * s, basis)
                    })
                    .collect()
            })
            .collect();
        FiniteGroupTable::new("q8", rows).expect("quaternion table is a group")
    }

    /// Resolve a built-in name: `q8` or `c<n>` with 1 <= n <= 12.
    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        if name == "q8" {
            return Ok(FiniteGroupTable::quaternion());
        }
        if let Some(num) = name.strip_prefix('c') {
            if let Ok(n) = num.parse::<usize>() {
                if (1..=12).contains(&n) {
                    return Ok(FiniteGroupTable::cyclic(n));
                }
            }
        }
        Err(GroupError::UnknownGroup(name.to_string()))
    }

    /// Load from JSON of the form {"order": n, "mult": [[...], ...]}.
    pub fn from_json_str(name: impl Into<String>, text: &str) -> Result<Self, GroupError> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            mult: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
        if raw.mult.len() != raw.order {
            return Err(GroupError::OrderMismatch { got: raw.mult.len(), want: raw.order });
        }
        FiniteGroupTable::new(name, raw.mult)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The abelianized group: free abelian on the elements modulo the
    /// relations x + y - xy, presented to the cokernel routine with rows as
    /// relations.
    pub fn abelianization(&self) -> AbelianGroup {
        let n = self.order;
        let mut rel = IntMatrix::zero(n * n, n);
        for a in 0..n {
            for b in 0..n {
                let row = a * n + b;
                let mut add = |col: usize, delta: i64| {
                    let v = rel.get(row, col) + BigInt::from(delta);
                    rel.set(row, col, v);
                };
                add(a, 1);
                add(b, 1);
                add(self.mul(a, b), -1);
            }
        }
        cokernel(&rel)
    }
}

impl std::fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroupTable({}, order {})", self.name, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        for n in 1..=12 {
            let g = FiniteGroupTable::cyclic(n);
            assert_eq!(g.order(), n);
            assert_eq!(g.identity(), 0);
            assert!(g.is_abelian());
            if n == 1 {
                assert!(g.abelianization().is_trivial());
            } else {
                assert_eq!(g.abelianization(), AbelianGroup::new(0, vec![n as u64]));
            }
        }
    }

    #[test]
    fn quaternion_group() {
        let q = FiniteGroupTable::quaternion();
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        // i * j = k but j * i = -k
        assert_eq!(q.mul(2, 4), 6);
        assert_eq!(q.mul(4, 2), 7);
        // i^2 = -1, and i * (-i) = 1
        assert_eq!(q.mul(2, 2), 1);
        assert_eq!(q.inv(2), 3);
        assert_eq!(q.abelianization(), AbelianGroup::new(0, vec![2, 2]));
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(FiniteGroupTable::builtin("q8").unwrap().order(), 8);
        assert_eq!(FiniteGroupTable::builtin("c7").unwrap().order(), 7);
        assert!(FiniteGroupTable::builtin("c13").is_err());
        assert!(FiniteGroupTable::builtin("d4").is_err());
    }

    #[test]
    fn json_loading() {
        let g = FiniteGroupTable::from_json_str(
            "z2",
            r#"{"order": 2, "mult": [[0,1],[1,0]]}"#,
        )
        .unwrap();
        assert_eq!(g.order(), 2);
        let err = FiniteGroupTable::from_json_str("bad", r#"{"order": 3, "mult": [[0]]}"#)
            .unwrap_err();
        assert!(matches!(err, GroupError::OrderMismatch { got: 1, want: 3 }));
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // idempotent non-identity element has no inverse
        let err = FiniteGroupTable::new("bad", vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::BadTable(_)));
        // a loop (identity + two-sided inverses) that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroupTable::new("loop5", loop5).unwrap_err();
        match err {
            GroupError::BadTable(msg) => assert!(msg.contains("associativity"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
