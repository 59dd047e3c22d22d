//! The 4-skeleton of the classifying space of pi_1(M), built cell by cell
//! from a prime decomposition.
//!
//! Starting from the manifold's own chain model, the construction adds one
//! 3-cell per decomposition sphere (null boundary), one 3-cell per
//! S1 x S2 factor killing its sphere class, then a 4-cell per spherical
//! factor attached with degree equal to the group order and a 4-cell of
//! degree 1 capping each leftover 3-sphere class. The result has the
//! homology of
//!
//! ```text
//! (wedge of aspherical surrogates) v (wedge of capped spherical pieces) v (wedge of circles)
//! ```
//!
//! Degree 3 of this skeleton is already the homology of the full classifying
//! space, and degree 4 stays zero: cells of dimension 5 and up can only
//! quotient it further. Every closed-form value this module reports is
//! cross-checked against the chain-level homology at construction time.

use crate::abelian::AbelianGroup;
use crate::chain::{ChainComplex, ChainError, ClassVector, Coeff, ComplexHomology, FpComplexHomology};
use crate::fp::{reduce_vec, FpMatrix};
use crate::manifold::PrimeDecomposition;
use crate::matrix::IntMatrix;
use crate::snf::solve_int;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// H_3 of the classifying space: one free summand per aspherical factor and
/// one cyclic summand of the group order per spherical factor.
pub fn closed_form_h3(m: &PrimeDecomposition) -> AbelianGroup {
    AbelianGroup::from_summand_orders(&m.spherical_orders(), m.m())
}

/// H_4 of the classifying space: always trivial.
pub fn closed_form_h4(_m: &PrimeDecomposition) -> AbelianGroup {
    AbelianGroup::trivial()
}

/// Presentation of closed-form H_3 as a two-term complex: degree 0 is one
/// generator per aspherical and spherical factor, degree 1 one relation per
/// spherical factor (the order). Its degree-0 homology is closed_form_h3,
/// and its class-vector machinery fixes the normal-form coordinates used by
/// [`FundamentalClassImage`].
pub fn h3_presentation(m: &PrimeDecomposition) -> ChainComplex {
    let (mm, n) = (m.m(), m.n());
    let orders = m.spherical_orders();
    let d1 = IntMatrix::from_fn(mm + n, n, |i, j| {
        if i == mm + j {
            BigInt::from(orders[j])
        } else {
            BigInt::zero()
        }
    });
    ChainComplex::new(vec![mm + n, n], vec![d1]).expect("presentation complex")
}

/// Image of the fundamental class in H_3 of the classifying space.
///
/// `summand_pattern` has one entry per aspherical-or-spherical factor in
/// input order: over Z it is all ones; mod p the spherical entries with
/// order prime to p drop to zero. `vector` re-expresses that pattern in the
/// normal-form basis fixed by [`h3_presentation`].
#[derive(Clone, Debug)]
pub struct FundamentalClassImage {
    pub coefficients: Coeff,
    pub summand_pattern: Vec<u64>,
    pub vector: ImageVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageVector {
    Integral(ClassVector),
    ModP { p: u64, coords: Vec<u64> },
}

impl FundamentalClassImage {
    pub fn is_nonzero(&self) -> bool {
        match &self.vector {
            ImageVector::Integral(cv) => !cv.is_zero(),
            ImageVector::ModP { coords, .. } => coords.iter().any(|&c| c != 0),
        }
    }
}

/// The pattern of summand coordinates of the fundamental-class image: 1 on
/// every aspherical factor, and on a spherical factor iff the coefficients
/// see its order (always over Z, p | order mod p).
pub fn summand_pattern(m: &PrimeDecomposition, coeff: Coeff) -> Vec<u64> {
    let orders = m.spherical_orders();
    let mut v = vec![1u64; m.m()];
    for &o in &orders {
        let on = match coeff {
            Coeff::Integral => true,
            Coeff::ModP(p) => o % p == 0,
        };
        v.push(if on { 1 } else { 0 });
    }
    v
}

pub fn fundamental_class_image(m: &PrimeDecomposition, coeff: Coeff) -> FundamentalClassImage {
    let pattern = summand_pattern(m, coeff);
    let pres = h3_presentation(m);
    let vector = match coeff {
        Coeff::Integral => {
            let h = ComplexHomology::new(&pres);
            let cycle: Vec<BigInt> = pattern.iter().map(|&x| BigInt::from(x)).collect();
            ImageVector::Integral(h.class_vector(0, &cycle).expect("degree-0 chains are cycles"))
        }
        Coeff::ModP(p) => {
            let h = FpComplexHomology::new(&pres, p);
            let cycle: Vec<u64> = pattern.iter().map(|&x| x % p).collect();
            ImageVector::ModP {
                p,
                coords: h.class_vector(0, &cycle).expect("degree-0 chains are cycles"),
            }
        }
    };
    let img = FundamentalClassImage { coefficients: coeff, summand_pattern: pattern, vector };
    // nonvanishing criterion: over Z iff any factor is aspherical or
    // spherical; mod p iff aspherical present or p divides some order
    let expect_nonzero = img.summand_pattern.iter().any(|&x| x != 0);
    assert_eq!(img.is_nonzero(), expect_nonzero, "normal form lost a summand");
    img
}

/// Whether the fundamental-class map on H_3 is injective: exactly when an
/// aspherical factor contributes a free summand.
pub fn injective_on_h3(m: &PrimeDecomposition) -> bool {
    m.m() >= 1
}

/// The explicit 4-skeleton with its inclusion data.
pub struct Kpi1Skeleton {
    source: PrimeDecomposition,
    complex: ChainComplex,
    m_complex: ChainComplex,
    /// Blocks of the inclusion chain map in degrees 0..=3.
    inclusion: Vec<IntMatrix>,
    /// One 3-cycle per prime factor (aspherical, spherical, then S1 x S2
    /// order), summing to the manifold's top cell.
    summand_cycles: Vec<Vec<BigInt>>,
    h3: ComplexHomology,
}

impl Kpi1Skeleton {
    pub fn source(&self) -> &PrimeDecomposition {
        &self.source
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn m_complex(&self) -> &ChainComplex {
        &self.m_complex
    }

    pub fn inclusion_block(&self, degree: usize) -> &IntMatrix {
        &self.inclusion[degree]
    }

    /// Degrees of the skeleton whose homology already equals that of the
    /// full classifying space: 3 because higher cells cannot touch it, and 4
    /// because later cells only quotient a group that is already zero.
    pub fn stable_degrees(&self) -> &'static [usize] {
        &[3, 4]
    }

    pub fn homology(&self) -> &ComplexHomology {
        &self.h3
    }

    /// All per-factor 3-cycles (aspherical, spherical, S1 x S2 in order).
    pub fn summand_cycles(&self) -> &[Vec<BigInt>] {
        &self.summand_cycles
    }

    /// The cycles whose classes are the H_3 summands (aspherical and
    /// spherical factors; the S1 x S2 cycles are capped away).
    pub fn h3_summand_cycles(&self) -> &[Vec<BigInt>] {
        &self.summand_cycles[..self.source.m() + self.source.n()]
    }

    /// The fundamental class of the manifold pushed into the skeleton's
    /// degree-3 chains.
    pub fn image_cycle(&self) -> Vec<BigInt> {
        let hm = ComplexHomology::new(&self.m_complex);
        let gens = hm.generators(3);
        assert_eq!(gens.len(), 1, "closed orientable manifold has H_3 = Z");
        self.inclusion[3].mul_vec(&gens[0])
    }

    /// Solve for the summand coordinates of a 3-cycle against the oracle:
    /// integers x with z homologous to sum x_i * (summand cycle i), each
    /// spherical coordinate reduced mod its order. The solution is unique
    /// once reduced because the summand classes generate H_3 with exactly
    /// those orders.
    pub fn solve_summand_coords(&self, z: &[BigInt]) -> Result<Vec<BigInt>, ChainError> {
        let target = self.h3.class_vector(3, z)?;
        let cols: Vec<ClassVector> = self
            .h3_summand_cycles()
            .iter()
            .map(|c| self.h3.class_vector(3, c))
            .collect::<Result<_, _>>()?;
        let group = self.h3.group(3);
        let (fr, tr) = (group.rank(), group.torsion().len());
        let unknowns = cols.len();
        // rows: free coords then torsion coords; torsion rows get an extra
        // unknown multiple of the divisor
        let a = IntMatrix::from_fn(fr + tr, unknowns + tr, |i, j| {
            if j < unknowns {
                if i < fr {
                    cols[j].free[i].clone()
                } else {
                    cols[j].torsion[i - fr].clone()
                }
            } else if i == fr + (j - unknowns) {
                group.torsion()[j - unknowns].clone()
            } else {
                BigInt::zero()
            }
        });
        let b: Vec<BigInt> =
            target.free.iter().chain(target.torsion.iter()).cloned().collect();
        let y = solve_int(&a, &b).expect("summand cycles span H_3");
        let orders = self.source.spherical_orders();
        let m = self.source.m();
        Ok((0..unknowns)
            .map(|i| {
                if i < m {
                    y[i].clone()
                } else {
                    let o = BigInt::from(orders[i - m]);
                    ((&y[i] % &o) + &o) % &o
                }
            })
            .collect())
    }

    /// Mod-p analogue of [`solve_summand_coords`]: coordinates are solved
    /// only on the factors whose classes survive mod p (aspherical ones and
    /// spherical ones with p dividing the order); the rest are zero.
    pub fn solve_summand_coords_mod_p(&self, z: &[BigInt], p: u64) -> Result<Vec<u64>, ChainError> {
        let hp = FpComplexHomology::new(&self.complex, p);
        let target = hp.class_vector(3, &reduce_vec(z, p))?;
        let pattern = summand_pattern(&self.source, Coeff::ModP(p));
        let live: Vec<usize> = (0..pattern.len()).filter(|&i| pattern[i] == 1).collect();
        let classes: Vec<Vec<u64>> = live
            .iter()
            .map(|&i| hp.class_vector(3, &reduce_vec(&self.h3_summand_cycles()[i], p)))
            .collect::<Result<_, _>>()?;
        let dim = hp.dims()[3];
        let a = FpMatrix::from_fn(p, dim, classes.len(), |i, j| classes[j][i]);
        // the live classes must be independent, otherwise coordinates would
        // be ambiguous
        assert_eq!(a.rank(), classes.len(), "live summand classes are independent");
        let x = a.solve(&target).expect("live summand classes span the image");
        let mut out = vec![0u64; pattern.len()];
        for (idx, &i) in live.iter().enumerate() {
            out[i] = x[idx];
        }
        Ok(out)
    }

    /// Oracle check that a cycle is homologous to the patterned combination
    /// of summand cycles, in the given coefficients.
    pub fn homologous_to_pattern(
        &self,
        z: &[BigInt],
        pattern: &[u64],
        coeff: Coeff,
    ) -> Result<bool, ChainError> {
        let cycles = self.h3_summand_cycles();
        assert_eq!(pattern.len(), cycles.len());
        let len = self.complex.rank(3);
        let mut diff: Vec<BigInt> = z.to_vec();
        assert_eq!(diff.len(), len);
        for (x, c) in pattern.iter().zip(cycles) {
            for (d, v) in diff.iter_mut().zip(c) {
                *d -= BigInt::from(*x) * v;
            }
        }
        match coeff {
            Coeff::Integral => self.h3.is_boundary(3, &diff),
            Coeff::ModP(p) => {
                FpComplexHomology::new(&self.complex, p).is_boundary(3, &reduce_vec(&diff, p))
            }
        }
    }
}

/// Build the skeleton. Cell bookkeeping, with P = m + n + k prime factors:
///
/// * degrees 0..=2 are the manifold model's cells;
/// * degree 3 holds the manifold's top cell, then P - 1 null-boundary
///   3-cells (one per decomposition sphere), then k sphere-killing 3-cells;
/// * degree 4 holds one degree-order cap per spherical factor and one
///   degree-1 cap per S1 x S2 factor.
///
/// The per-factor summand cycles are the sphere cells g_1, ..., g_{P-1} and
/// the top cell minus their sum; for the empty decomposition the top cell is
/// capped directly and the complex is contractible.
pub fn build_skeleton(source: &PrimeDecomposition) -> Kpi1Skeleton {
    source.validate().expect("valid decomposition");
    let (m, n, k) = (source.m(), source.n(), source.k());
    let p_total = m + n + k;
    let orders = source.spherical_orders();
    let m_complex = source.m_complex();

    let c1 = n + k;
    let c2 = n + k;
    let glue = p_total.saturating_sub(1);
    let c3 = 1 + glue + k;
    let c4 = if p_total == 0 { 1 } else { n + k };

    // degree-3 cells: index 0 the top cell, 1..=glue the sphere cells,
    // glue+1.. the sphere killers
    let d3 = IntMatrix::from_fn(c2, c3, |i, j| {
        if j > glue && i == n + (j - glue - 1) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });

    // summand cycles in degree-3 coordinates
    let mut summand_cycles: Vec<Vec<BigInt>> = Vec::new();
    for idx in 0..p_total {
        let mut v = vec![BigInt::zero(); c3];
        if idx < glue {
            v[1 + idx] = BigInt::one();
        } else {
            v[0] = BigInt::one();
            for s in 0..glue {
                v[1 + s] = -BigInt::one();
            }
        }
        summand_cycles.push(v);
    }

    let d4 = if p_total == 0 {
        IntMatrix::from_rows(&[vec![1]])
    } else {
        IntMatrix::from_fn(c3, c4, |i, j| {
            // column j caps factor: spherical j < n with degree orders[j],
            // otherwise the S1 x S2 sphere class with degree 1
            let (factor, degree) = if j < n {
                (m + j, BigInt::from(orders[j]))
            } else {
                (m + n + (j - n), BigInt::one())
            };
            &summand_cycles[factor][i] * degree
        })
    };

    let complex = ChainComplex::new(
        vec![1, c1, c2, c3, c4],
        vec![IntMatrix::zero(1, c1), m_complex.boundary(2), d3, d4],
    )
    .expect("skeleton is a complex");

    // inclusion of the manifold model: identity below degree 3, top cell to
    // top cell in degree 3
    let inclusion = vec![
        IntMatrix::identity(1),
        IntMatrix::identity(c1),
        IntMatrix::identity(c2),
        IntMatrix::from_fn(c3, 1, |i, _| if i == 0 { BigInt::one() } else { BigInt::zero() }),
    ];
    for d in 1..=3 {
        let lhs = complex.boundary(d).mul(&inclusion[d]);
        let rhs = inclusion[d - 1].mul(&m_complex.boundary(d));
        assert_eq!(lhs, rhs, "inclusion commutes with boundaries at degree {d}");
    }

    let h3 = ComplexHomology::new(&complex);
    assert_eq!(h3.group(3), closed_form_h3(source), "chain-level H_3 disagrees with closed form");
    assert_eq!(h3.group(4), closed_form_h4(source), "chain-level H_4 disagrees with closed form");

    Kpi1Skeleton {
        source: source.clone(),
        complex,
        m_complex,
        inclusion,
        summand_cycles,
        h3,
    }
}
