//! Chain complexes of finitely generated free abelian groups.
//!
//! Homology is computed from Smith normal forms with the change-of-basis
//! matrices kept, so classes of explicit cycles and induced maps come out as
//! honest matrices instead of isomorphism-class bookkeeping.

use crate::abelian::AbelianGroup;
use crate::fp::FpMatrix;
use crate::matrix::IntMatrix;
use crate::snf::{smith_normal_form, SnfResult};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("boundary {degree} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch { degree: usize, got_rows: usize, got_cols: usize, want_rows: usize, want_cols: usize },
    #[error("boundary composite at degree {degree} is nonzero")]
    NotAComplex { degree: usize },
    #[error("vector in degree {degree} is not a cycle")]
    NotACycle { degree: usize },
    #[error("chain map does not commute with boundaries at degree {degree}")]
    ChainMapNotCommuting { degree: usize },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
}

/// Free chain complex C_0 <- C_1 <- ... <- C_top. `boundaries[k]` is the map
/// from degree k+1 to degree k, with ranks[k] rows and ranks[k+1] columns.
#[derive(Clone)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, ChainError> {
        assert!(!ranks.is_empty(), "complex needs at least degree 0");
        assert_eq!(boundaries.len() + 1, ranks.len(), "one boundary per adjacent degree pair");
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[i] || b.cols() != ranks[i + 1] {
                return Err(ChainError::ShapeMismatch {
                    degree: i + 1,
                    got_rows: b.rows(),
                    got_cols: b.cols(),
                    want_rows: ranks[i],
                    want_cols: ranks[i + 1],
                });
            }
        }
        for k in 0..boundaries.len().saturating_sub(1) {
            if !boundaries[k].mul(&boundaries[k + 1]).is_zero() {
                return Err(ChainError::NotAComplex { degree: k + 2 });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// Boundary out of degree k; degenerate degrees give zero maps of the
    /// right shape so callers can treat the complex as extended by zeros.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k == 0 || k > self.top_degree() {
            IntMatrix::zero(if k == 0 { 0 } else { self.rank(k - 1) }, self.rank(k))
        } else {
            self.boundaries[k - 1].clone()
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn homology(&self) -> HomologyProfile {
        ComplexHomology::new(self).profile().clone()
    }

    /// dims[k] = rank_k - rank_p(d_k) - rank_p(d_{k+1}).
    pub fn homology_mod_p(&self, p: u64) -> FpHomologyProfile {
        let dims = (0..=self.top_degree())
            .map(|k| {
                let rk = FpMatrix::from_int_matrix(&self.boundary(k), p).rank();
                let rk1 = FpMatrix::from_int_matrix(&self.boundary(k + 1), p).rank();
                self.rank(k) - rk - rk1
            })
            .collect();
        FpHomologyProfile { p, dims }
    }

    /// Elementary expansion: a new k-cell t and (k+1)-cell s with ds = t + v.
    /// The result is chain homotopy equivalent, so homology is unchanged.
    pub fn insert_cancelling_pair(&self, k: usize, v: &[BigInt]) -> ChainComplex {
        assert_eq!(v.len(), self.rank(k), "attachment vector lives in degree k");
        let top = self.top_degree().max(k + 1);
        let mut ranks: Vec<usize> = (0..=top).map(|i| self.rank(i)).collect();
        ranks[k] += 1;
        ranks[k + 1] += 1;
        let mut boundaries = Vec::new();
        for deg in 1..=top {
            let old = self.boundary(deg);
            let b = if deg == k {
                // new column: dt = -d(v)
                let dv = old.mul_vec(v);
                IntMatrix::from_fn(ranks[deg - 1], ranks[deg], |i, j| {
                    if j < old.cols() {
                        old.get(i, j).clone()
                    } else {
                        -dv[i].clone()
                    }
                })
            } else if deg == k + 1 {
                // new row for t (zero on old cells), new column ds = v + t
                IntMatrix::from_fn(ranks[deg - 1], ranks[deg], |i, j| {
                    match (i < old.rows(), j < old.cols()) {
                        (true, true) => old.get(i, j).clone(),
                        (true, false) => v[i].clone(),
                        (false, false) => BigInt::one(),
                        (false, true) => BigInt::zero(),
                    }
                })
            } else if deg == k + 2 {
                // new row for s
                IntMatrix::from_fn(ranks[deg - 1], ranks[deg], |i, j| {
                    if i < old.rows() {
                        old.get(i, j).clone()
                    } else {
                        BigInt::zero()
                    }
                })
            } else {
                old
            };
            boundaries.push(b);
        }
        ChainComplex::new(ranks, boundaries).expect("elementary expansion stays a complex")
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex(ranks = {:?})", self.ranks)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub groups: Vec<AbelianGroup>,
}

impl HomologyProfile {
    pub fn group(&self, k: usize) -> AbelianGroup {
        self.groups.get(k).cloned().unwrap_or_else(AbelianGroup::trivial)
    }
}

impl fmt::Debug for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpHomologyProfile {
    pub p: u64,
    pub dims: Vec<usize>,
}

/// Class of a cycle in the normal-form basis of a homology group: free
/// coordinates first (exact integers), then torsion coordinates reduced into
/// [0, d_i). Matches the generator order of [`ComplexHomology::generators`].
#[derive(Clone, PartialEq, Eq)]
pub struct ClassVector {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl ClassVector {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.torsion.iter().all(|x| x.is_zero())
    }
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<String> = self
            .free
            .iter()
            .map(|x| x.to_string())
            .chain(self.torsion.iter().map(|x| format!("{x} (tors)")))
            .collect();
        write!(f, "[{}]", all.join(", "))
    }
}

struct DegreeData {
    /// SNF of the boundary out of this degree.
    snf_out: SnfResult,
    rank_out: usize,
    /// SNF of the incoming boundary expressed in kernel coordinates.
    rel: SnfResult,
    /// Divisors padded to the kernel dimension: one entry per kernel generator.
    divisors: Vec<BigInt>,
    group: AbelianGroup,
}

/// Homology of a complex with enough change-of-basis data retained to map
/// explicit cycles to normal-form coordinates.
pub struct ComplexHomology {
    ranks: Vec<usize>,
    degrees: Vec<DegreeData>,
    profile: HomologyProfile,
}

impl ComplexHomology {
    pub fn new(c: &ChainComplex) -> Self {
        let mut degrees = Vec::new();
        for k in 0..=c.top_degree() {
            let snf_out = smith_normal_form(&c.boundary(k));
            let rank_out = snf_out.rank();
            let kernel_dim = c.rank(k) - rank_out;
            // incoming boundary in kernel coordinates; rows above the kernel
            // block must vanish because dd = 0
            let incoming = snf_out.v_inv.mul(&c.boundary(k + 1));
            for i in 0..rank_out {
                for j in 0..incoming.cols() {
                    assert!(incoming.get(i, j).is_zero(), "dd != 0 leaked through SNF");
                }
            }
            let rel_matrix = incoming.rows_from(rank_out);
            let rel = smith_normal_form(&rel_matrix);
            let mut divisors = rel.diagonal();
            divisors.resize(kernel_dim, BigInt::zero());
            let group = AbelianGroup::from_diagonal(&divisors, kernel_dim);
            degrees.push(DegreeData { snf_out, rank_out, rel, divisors, group });
        }
        let profile = HomologyProfile { groups: degrees.iter().map(|d| d.group.clone()).collect() };
        ComplexHomology { ranks: c.ranks().to_vec(), degrees, profile }
    }

    pub fn profile(&self) -> &HomologyProfile {
        &self.profile
    }

    pub fn group(&self, k: usize) -> AbelianGroup {
        self.profile.group(k)
    }

    /// Positions of free and torsion generators inside the padded divisor list.
    fn generator_positions(&self, k: usize) -> (Vec<usize>, Vec<usize>) {
        let d = &self.degrees[k];
        let free = (0..d.divisors.len()).filter(|&i| d.divisors[i].is_zero()).collect();
        let torsion = (0..d.divisors.len())
            .filter(|&i| !d.divisors[i].is_zero() && !d.divisors[i].is_one())
            .collect();
        (free, torsion)
    }

    /// Normal-form generators realized as cycles, free ones first.
    pub fn generators(&self, k: usize) -> Vec<Vec<BigInt>> {
        let d = &self.degrees[k];
        let (free, torsion) = self.generator_positions(k);
        let kernel_basis = d.snf_out.v.columns_from(d.rank_out);
        free.into_iter()
            .chain(torsion)
            .map(|i| kernel_basis.mul_vec(&d.rel.u_inv.column(i)))
            .collect()
    }

    /// Coordinates of a cycle's class; torsion coordinates land in [0, d_i).
    pub fn class_vector(&self, k: usize, cycle: &[BigInt]) -> Result<ClassVector, ChainError> {
        if k >= self.degrees.len() {
            return Err(ChainError::DegreeOutOfRange(k));
        }
        let d = &self.degrees[k];
        assert_eq!(cycle.len(), self.ranks[k], "cycle has wrong length");
        let y = d.snf_out.v_inv.mul_vec(cycle);
        if y[..d.rank_out].iter().any(|x| !x.is_zero()) {
            return Err(ChainError::NotACycle { degree: k });
        }
        let w = d.rel.u.mul_vec(&y[d.rank_out..]);
        let (free, torsion) = self.generator_positions(k);
        Ok(ClassVector {
            free: free.iter().map(|&i| w[i].clone()).collect(),
            torsion: torsion
                .iter()
                .map(|&i| {
                    let m = &d.divisors[i];
                    let r = &w[i] % m;
                    if r.is_negative() {
                        r + m
                    } else {
                        r
                    }
                })
                .collect(),
        })
    }

    pub fn is_boundary(&self, k: usize, cycle: &[BigInt]) -> Result<bool, ChainError> {
        Ok(self.class_vector(k, cycle)?.is_zero())
    }

    pub fn homologous(&self, k: usize, a: &[BigInt], b: &[BigInt]) -> Result<bool, ChainError> {
        Ok(self.class_vector(k, a)? == self.class_vector(k, b)?)
    }
}

/// Mod-p homology with explicit bases: kernel of the outgoing boundary modulo
/// the reduced image of the incoming one.
pub struct FpComplexHomology {
    p: u64,
    ranks: Vec<usize>,
    degrees: Vec<FpDegreeData>,
}

struct FpDegreeData {
    kernel: FpMatrix,
    /// RREF rows spanning the image inside kernel coordinates.
    image_rref: FpMatrix,
    image_pivots: Vec<usize>,
}

impl FpComplexHomology {
    pub fn new(c: &ChainComplex, p: u64) -> Self {
        let mut degrees = Vec::new();
        for k in 0..=c.top_degree() {
            let out = FpMatrix::from_int_matrix(&c.boundary(k), p);
            let kernel = out.kernel();
            let incoming = FpMatrix::from_int_matrix(&c.boundary(k + 1), p);
            // each boundary column is a cycle; express it in kernel coordinates
            let mut coords = FpMatrix::zero(p, incoming.cols(), kernel.cols());
            for j in 0..incoming.cols() {
                let col: Vec<u64> = (0..incoming.rows()).map(|i| incoming.get(i, j)).collect();
                let x = kernel.solve(&col).expect("boundary image not in kernel");
                for (idx, &v) in x.iter().enumerate() {
                    coords.set(j, idx, v);
                }
            }
            let (image_rref, image_pivots) = coords.rref();
            degrees.push(FpDegreeData { kernel, image_rref, image_pivots });
        }
        FpComplexHomology { p, ranks: c.ranks().to_vec(), degrees }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.kernel.cols() - d.image_pivots.len()).collect()
    }

    fn quotient_positions(&self, k: usize) -> Vec<usize> {
        let d = &self.degrees[k];
        (0..d.kernel.cols()).filter(|i| !d.image_pivots.contains(i)).collect()
    }

    /// Basis cycles of H_k(-; F_p).
    pub fn generators(&self, k: usize) -> Vec<Vec<u64>> {
        let d = &self.degrees[k];
        self.quotient_positions(k)
            .into_iter()
            .map(|i| (0..d.kernel.rows()).map(|r| d.kernel.get(r, i)).collect())
            .collect()
    }

    pub fn class_vector(&self, k: usize, cycle: &[u64]) -> Result<Vec<u64>, ChainError> {
        if k >= self.degrees.len() {
            return Err(ChainError::DegreeOutOfRange(k));
        }
        let d = &self.degrees[k];
        assert_eq!(cycle.len(), self.ranks[k], "cycle has wrong length");
        let mut x = d.kernel.solve(cycle).ok_or(ChainError::NotACycle { degree: k })?;
        // kill pivot coordinates with image rows
        for (row, &pc) in d.image_pivots.iter().enumerate() {
            let f = x[pc];
            if f != 0 {
                for (j, xj) in x.iter_mut().enumerate() {
                    let sub = (f as u128 * d.image_rref.get(row, j) as u128 % self.p as u128) as u64;
                    *xj = (*xj + self.p - sub) % self.p;
                }
            }
        }
        Ok(self.quotient_positions(k).into_iter().map(|i| x[i]).collect())
    }

    pub fn is_boundary(&self, k: usize, cycle: &[u64]) -> Result<bool, ChainError> {
        Ok(self.class_vector(k, cycle)?.iter().all(|&x| x == 0))
    }
}

/// Coefficient system for induced maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeff {
    Integral,
    ModP(u64),
}

#[derive(Clone, Debug)]
pub enum InducedH3 {
    /// Rows and columns in ClassVector order (free, then torsion); torsion
    /// rows are reduced mod the target's divisors.
    Integral(IntMatrix),
    ModP(FpMatrix),
}

impl InducedH3 {
    pub fn is_zero(&self) -> bool {
        match self {
            InducedH3::Integral(m) => m.is_zero(),
            InducedH3::ModP(m) => m.is_zero(),
        }
    }
}

/// Induced map on H_3 of a partial chain map given by its degree-3 and
/// degree-2 blocks. Commutation with the boundaries is verified in the
/// requested coefficients before anything is computed.
pub fn induced_map_on_h3(
    source: &ChainComplex,
    target: &ChainComplex,
    f3: &IntMatrix,
    f2: &IntMatrix,
    coeff: Coeff,
) -> Result<InducedH3, ChainError> {
    assert!(
        source.top_degree() >= 3 && target.top_degree() >= 3,
        "induced map on H3 needs degree-3 chains on both sides"
    );
    let (s3, s2) = (source.rank(3), source.rank(2));
    let (t3, t2) = (target.rank(3), target.rank(2));
    if f3.rows() != t3 || f3.cols() != s3 {
        return Err(ChainError::ShapeMismatch {
            degree: 3,
            got_rows: f3.rows(),
            got_cols: f3.cols(),
            want_rows: t3,
            want_cols: s3,
        });
    }
    if f2.rows() != t2 || f2.cols() != s2 {
        return Err(ChainError::ShapeMismatch {
            degree: 2,
            got_rows: f2.rows(),
            got_cols: f2.cols(),
            want_rows: t2,
            want_cols: s2,
        });
    }
    let lhs = target.boundary(3).mul(f3);
    let rhs = f2.mul(&source.boundary(3));
    let commutes = match coeff {
        Coeff::Integral => lhs == rhs,
        Coeff::ModP(p) => FpMatrix::from_int_matrix(&lhs, p) == FpMatrix::from_int_matrix(&rhs, p),
    };
    if !commutes {
        return Err(ChainError::ChainMapNotCommuting { degree: 3 });
    }

    match coeff {
        Coeff::Integral => {
            let src = ComplexHomology::new(source);
            let tgt = ComplexHomology::new(target);
            let gens = src.generators(3);
            let g = tgt.group(3);
            let rows = g.rank() + g.torsion().len();
            let mut out = IntMatrix::zero(rows, gens.len());
            for (j, gen) in gens.iter().enumerate() {
                let image = f3.mul_vec(gen);
                let cv = tgt.class_vector(3, &image)?;
                for (i, v) in cv.free.iter().chain(cv.torsion.iter()).enumerate() {
                    out.set(i, j, v.clone());
                }
            }
            Ok(InducedH3::Integral(out))
        }
        Coeff::ModP(p) => {
            let src = FpComplexHomology::new(source, p);
            let tgt = FpComplexHomology::new(target, p);
            let gens = src.generators(3);
            let f3p = FpMatrix::from_int_matrix(f3, p);
            let rows = tgt.dims()[3];
            let mut out = FpMatrix::zero(p, rows, gens.len());
            for (j, gen) in gens.iter().enumerate() {
                let image = f3p.mul_vec(gen);
                let cv = tgt.class_vector(3, &image)?;
                for (i, &v) in cv.iter().enumerate() {
                    out.set(i, j, v);
                }
            }
            Ok(InducedH3::ModP(out))
        }
    }
}
