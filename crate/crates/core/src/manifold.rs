//! Input model: prime decompositions of closed orientable 3-manifolds.
//!
//! A decomposition is a list of aspherical factors (opaque labels), spherical
//! factors (finite fundamental group, given by its order and optionally a
//! multiplication-table id), and a count of S1 x S2 factors. The empty
//! decomposition is the 3-sphere.
//!
//! Aspherical factors carry no homological data beyond H_3 = Z, and a
//! spherical order alone does not determine H_1 (only the cyclic default
//! does), so homology of the whole manifold is exposed with explicit
//! partiality instead of guessed values.

use crate::abelian::AbelianGroup;
use crate::chain::ChainComplex;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifoldError {
    #[error("spherical factor {index} has order {order}; orders must be at least 2")]
    InvalidOrder { index: usize, order: u64 },
    #[error("decomposition does not parse: {0}")]
    Parse(String),
    #[error("{quantity} is not determined by the decomposition ({reason})")]
    InsufficientData { quantity: &'static str, reason: String },
}

/// Spherical prime factor: a closed orientable 3-manifold covered by S^3,
/// recorded by the order of its fundamental group. `group` optionally names a
/// multiplication table (see the group module); without it the factor is
/// treated as the cyclic (lens-space) one of that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalPiece {
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

impl SphericalPiece {
    pub fn cyclic(order: u64) -> Self {
        SphericalPiece { order, group: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PrimeDecomposition {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aspherical: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spherical: Vec<SphericalPiece>,
    #[serde(default, skip_serializing_if = "is_zero_usize")]
    pub s1xs2: usize,
}

fn is_zero_usize(n: &usize) -> bool {
    *n == 0
}

impl PrimeDecomposition {
    pub fn new(aspherical: Vec<String>, orders: Vec<u64>, s1xs2: usize) -> Self {
        PrimeDecomposition {
            aspherical,
            spherical: orders.into_iter().map(SphericalPiece::cyclic).collect(),
            s1xs2,
        }
    }

    pub fn sphere() -> Self {
        PrimeDecomposition::default()
    }

    /// Number of aspherical factors.
    pub fn m(&self) -> usize {
        self.aspherical.len()
    }

    /// Number of spherical factors.
    pub fn n(&self) -> usize {
        self.spherical.len()
    }

    /// Number of S1 x S2 factors.
    pub fn k(&self) -> usize {
        self.s1xs2
    }

    pub fn spherical_orders(&self) -> Vec<u64> {
        self.spherical.iter().map(|s| s.order).collect()
    }

    pub fn is_sphere(&self) -> bool {
        self.m() == 0 && self.n() == 0 && self.k() == 0
    }

    pub fn validate(&self) -> Result<(), ManifoldError> {
        for (index, s) in self.spherical.iter().enumerate() {
            if s.order < 2 {
                return Err(ManifoldError::InvalidOrder { index, order: s.order });
            }
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self, ManifoldError> {
        let d: PrimeDecomposition =
            serde_json::from_str(text).map_err(|e| ManifoldError::Parse(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }

    pub fn describe(&self) -> String {
        if self.is_sphere() {
            return "S^3".to_string();
        }
        let mut parts = Vec::new();
        for a in &self.aspherical {
            parts.push(format!("aspherical({a})"));
        }
        for s in &self.spherical {
            match &s.group {
                Some(g) => parts.push(format!("spherical(order {}, group {g})", s.order)),
                None => parts.push(format!("spherical(order {})", s.order)),
            }
        }
        for _ in 0..self.s1xs2 {
            parts.push("S^1 x S^2".to_string());
        }
        parts.join(" # ")
    }

    /// True when every spherical factor is the cyclic default (no table id).
    pub fn all_spherical_cyclic(&self) -> bool {
        self.spherical.iter().all(|s| s.group.is_none())
    }

    /// Chain model of the manifold itself: one vertex, one 1- and 2-cell per
    /// spherical factor (boundary multiplication by the order), one 1-cell
    /// and one 2-cell per S1 x S2 factor (boundaries zero), and a single top
    /// 3-cell with zero boundary. Aspherical factors contribute no cells
    /// below degree 3; their low-degree homology is not modeled.
    pub fn m_complex(&self) -> ChainComplex {
        let n = self.n();
        let k = self.k();
        let ranks = vec![1, n + k, n + k, 1];
        let d1 = IntMatrix::zero(1, n + k);
        let d2 = IntMatrix::from_fn(n + k, n + k, |i, j| {
            if i == j && j < n {
                BigInt::from(self.spherical[j].order)
            } else {
                BigInt::zero()
            }
        });
        let d3 = IntMatrix::zero(n + k, 1);
        ChainComplex::new(ranks, vec![d1, d2, d3]).expect("manifold model is a complex")
    }

    /// First Betti number when it is determined: spherical factors have
    /// b_1 = 0 and each S1 x S2 contributes 1, but aspherical factors carry
    /// no Betti data, so the value is exact only when none are present.
    pub fn b1(&self) -> Result<usize, ManifoldError> {
        if self.m() > 0 {
            return Err(ManifoldError::InsufficientData {
                quantity: "b_1",
                reason: format!("{} aspherical factor(s) with unknown Betti numbers", self.m()),
            });
        }
        Ok(self.k())
    }

    pub fn b1_lower_bound(&self) -> usize {
        self.k()
    }
}

/// Homology of the manifold, with degrees 1 and 2 exposed as partial data:
/// H_0 and H_3 are Z for every nonempty connected closed orientable
/// 3-manifold, while H_1 and H_2 require every factor's contribution to be
/// known.
#[derive(Clone, Debug)]
pub struct ManifoldHomology {
    h0: AbelianGroup,
    h3: AbelianGroup,
    h1: Option<AbelianGroup>,
    h2: Option<AbelianGroup>,
    b1: Option<usize>,
    b1_lower: usize,
    missing: Option<String>,
}

impl ManifoldHomology {
    pub fn h0(&self) -> &AbelianGroup {
        &self.h0
    }

    pub fn h3(&self) -> &AbelianGroup {
        &self.h3
    }

    pub fn h1(&self) -> Result<&AbelianGroup, ManifoldError> {
        self.h1.as_ref().ok_or_else(|| ManifoldError::InsufficientData {
            quantity: "H_1",
            reason: self.missing.clone().unwrap_or_default(),
        })
    }

    pub fn h2(&self) -> Result<&AbelianGroup, ManifoldError> {
        self.h2.as_ref().ok_or_else(|| ManifoldError::InsufficientData {
            quantity: "H_2",
            reason: self.missing.clone().unwrap_or_default(),
        })
    }

    pub fn b1(&self) -> Result<usize, ManifoldError> {
        self.b1.ok_or_else(|| ManifoldError::InsufficientData {
            quantity: "b_1",
            reason: self.missing.clone().unwrap_or_default(),
        })
    }

    pub fn b1_lower_bound(&self) -> usize {
        self.b1_lower
    }
}

/// Closed-form homology of the manifold. Exact in degrees 0 and 3; degrees 1
/// and 2 are present when every factor determines them: no aspherical
/// factors, and every spherical factor cyclic (a table id alone does not fix
/// the abelianization here).
pub fn homology_of_m(m: &PrimeDecomposition) -> ManifoldHomology {
    let missing = if m.m() > 0 {
        Some(format!("{} aspherical factor(s)", m.m()))
    } else if !m.all_spherical_cyclic() {
        Some("non-cyclic spherical factor without abelianization data".to_string())
    } else {
        None
    };
    let b1 = if m.m() == 0 { Some(m.k()) } else { None };
    let (h1, h2) = if missing.is_none() {
        let orders: Vec<u64> = m.spherical_orders();
        (
            Some(AbelianGroup::from_summand_orders(&orders, m.k())),
            Some(AbelianGroup::free(m.k())),
        )
    } else if b1.is_some() && !m.all_spherical_cyclic() {
        // b_1 is known (no aspherical factors), so H_2 = Z^{b_1} is too,
        // even though H_1 torsion is not
        (None, Some(AbelianGroup::free(m.k())))
    } else {
        (None, None)
    };
    ManifoldHomology {
        h0: AbelianGroup::free(1),
        h3: AbelianGroup::free(1),
        h1,
        h2,
        b1,
        b1_lower: m.k(),
        missing,
    }
}

/// A standard prime piece, for building reference complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// Spherical factor; `abelianization` optionally lists the divisor chain
    /// of H_1 (for non-cyclic groups with known tables). Defaults to cyclic.
    Spherical { order: u64, abelianization: Option<Vec<u64>> },
    S1xS2,
    Sphere,
}

/// Explicit chain complex of a standard piece with its known homology:
/// cyclic spherical pieces get the lens-space complex, non-cyclic ones a
/// surrogate with the same homology, and the product and sphere cases their
/// minimal cell structures.
pub fn piece_complex(piece: &Piece) -> ChainComplex {
    match piece {
        Piece::Spherical { order, abelianization } => {
            let divisors: Vec<u64> = match abelianization {
                Some(d) => d.clone(),
                None => vec![*order],
            };
            let t = divisors.len();
            let d2 = IntMatrix::from_fn(t, t, |i, j| {
                if i == j {
                    BigInt::from(divisors[i])
                } else {
                    BigInt::zero()
                }
            });
            ChainComplex::new(
                vec![1, t, t, 1],
                vec![IntMatrix::zero(1, t), d2, IntMatrix::zero(t, 1)],
            )
            .expect("spherical piece complex")
        }
        Piece::S1xS2 => ChainComplex::new(
            vec![1, 1, 1, 1],
            vec![IntMatrix::zero(1, 1), IntMatrix::zero(1, 1), IntMatrix::zero(1, 1)],
        )
        .expect("product piece complex"),
        Piece::Sphere => ChainComplex::new(
            vec![1, 0, 0, 1],
            vec![IntMatrix::zero(1, 0), IntMatrix::zero(0, 0), IntMatrix::zero(0, 1)],
        )
        .expect("sphere complex"),
    }
}
