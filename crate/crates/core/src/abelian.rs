//! Finitely generated abelian groups in divisor-chain normal form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// Z^rank + Z/t_1 + ... + Z/t_s with t_i >= 2 and t_i | t_{i+1}.
/// Structural equality therefore decides isomorphism.
#[derive(Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn new(rank: usize, torsion: Vec<impl Into<BigInt>>) -> Self {
        let torsion: Vec<BigInt> = torsion.into_iter().map(Into::into).collect();
        for i in 0..torsion.len() {
            assert!(torsion[i] >= BigInt::from(2), "torsion coefficient < 2");
            if i + 1 < torsion.len() {
                assert!(
                    (&torsion[i + 1] % &torsion[i]).is_zero(),
                    "torsion list is not a divisor chain"
                );
            }
        }
        AbelianGroup { rank, torsion }
    }

    /// Normal form of the cokernel of a map with the given SNF diagonal into
    /// Z^generators: ones vanish, zeros and missing diagonal entries are free.
    pub fn from_diagonal(diag: &[BigInt], generators: usize) -> Self {
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        assert!(nonzero <= generators);
        let torsion: Vec<BigInt> =
            diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        AbelianGroup::new(generators - nonzero, torsion)
    }

    /// Normal form of Z^free + sum of Z/orders (orders need not form a chain).
    pub fn from_summand_orders(orders: &[u64], free: usize) -> Self {
        let diag: Vec<i64> = orders.iter().map(|&n| n as i64).collect();
        let m = crate::matrix::IntMatrix::diagonal(&diag, orders.len(), orders.len());
        let snf = crate::snf::smith_normal_form(&m);
        let mut g = AbelianGroup::from_diagonal(&snf.diagonal(), orders.len());
        g.rank += free;
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group; None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Number of torsion coefficients divisible by p. By universal coefficients
    /// this feeds the mod-p dimension prediction.
    pub fn torsion_count_at(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|t| (*t % &p).is_zero()).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<u64> = self
            .torsion
            .iter()
            .map(|t| u64::try_from(t).expect("torsion coefficient exceeds u64 in report"))
            .collect();
        let mut s = serializer.serialize_struct("AbelianGroup", 3)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.serialize_field("display", &self.to_string())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_merges_coprime_orders() {
        let g = AbelianGroup::from_summand_orders(&[2, 3], 0);
        assert_eq!(g, AbelianGroup::new(0, vec![6]));
        let h = AbelianGroup::from_summand_orders(&[2, 4], 1);
        assert_eq!(h, AbelianGroup::new(1, vec![2, 4]));
        let k = AbelianGroup::from_summand_orders(&[2, 2, 3], 0);
        assert_eq!(k, AbelianGroup::new(0, vec![2, 6]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(2).to_string(), "Z^2");
        assert_eq!(AbelianGroup::new(1, vec![2]).to_string(), "Z + Z/2");
    }

    #[test]
    fn torsion_count() {
        let g = AbelianGroup::new(0, vec![2, 6]);
        assert_eq!(g.torsion_count_at(2), 2);
        assert_eq!(g.torsion_count_at(3), 1);
        assert_eq!(g.torsion_count_at(5), 0);
        assert_eq!(g.order(), Some(BigInt::from(12)));
    }
}
