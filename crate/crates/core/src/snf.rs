//! Smith normal form over Z with unimodular change-of-basis tracking.

use crate::abelian::AbelianGroup;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0,
/// zeros last. The inverses are tracked alongside so kernels and cokernels can
/// be read off without re-solving.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Calc {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Calc {
    fn new(a: &IntMatrix) -> Self {
        Calc {
            m: a.clone(),
            u: IntMatrix::identity(a.rows()),
            u_inv: IntMatrix::identity(a.rows()),
            v: IntMatrix::identity(a.cols()),
            v_inv: IntMatrix::identity(a.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        // row_i += q * row_j
        self.m.add_row_multiple(i, j, q);
        self.u.add_row_multiple(i, j, q);
        self.u_inv.add_col_multiple(j, i, &-q.clone());
    }

    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        // col_i += q * col_j
        self.m.add_col_multiple(i, j, q);
        self.v.add_col_multiple(i, j, q);
        self.v_inv.add_row_multiple(j, i, &-q.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Rows (a, b) <- (s*a + t*b, -(y/d)*a + (x/d)*b) where d = s*x + t*y = gcd(x, y).
    #[allow(clippy::too_many_arguments)]
    fn gcd_rows(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, x: &BigInt, y: &BigInt, d: &BigInt) {
        let xd = x / d;
        let yd = y / d;
        self.m.combine_rows(a, b, s, t, &-yd.clone(), &xd);
        self.u.combine_rows(a, b, s, t, &-yd.clone(), &xd);
        // inverse of [[s, t], [-y/d, x/d]] is [[x/d, -t], [y/d, s]], applied to columns
        self.u_inv.combine_cols(a, b, &xd, &yd, &-t.clone(), s);
    }

    /// Cols (a, b) <- (s*a + t*b, -(y/d)*a + (x/d)*b) where d = s*x + t*y = gcd(x, y).
    #[allow(clippy::too_many_arguments)]
    fn gcd_cols(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, x: &BigInt, y: &BigInt, d: &BigInt) {
        let xd = x / d;
        let yd = y / d;
        self.m.combine_cols(a, b, s, t, &-yd.clone(), &xd);
        self.v.combine_cols(a, b, s, t, &-yd.clone(), &xd);
        self.v_inv.combine_rows(a, b, &xd, &yd, &-t.clone(), s);
    }
}

/// Deterministic pivot: smallest nonzero absolute value, ties by (row, col).
fn select_pivot(m: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in from..m.rows() {
        for j in from..m.cols() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((cur, _, _)) if *cur <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut c = Calc::new(a);
    let bound = a.rows().min(a.cols());
    let mut t = 0;
    while t < bound {
        let Some((pi, pj)) = select_pivot(&c.m, t) else { break };
        c.swap_rows(t, pi);
        c.swap_cols(t, pj);
        // Clear row t and column t. Column combines can refill the column,
        // so iterate until both are clean; the pivot |value| only shrinks.
        loop {
            let mut dirty = false;
            for i in t + 1..c.m.rows() {
                let y = c.m.get(i, t).clone();
                if y.is_zero() {
                    continue;
                }
                let x = c.m.get(t, t).clone();
                if (&y % &x).is_zero() {
                    let q = -(&y / &x);
                    c.add_row(i, t, &q);
                } else {
                    let e = x.extended_gcd(&y);
                    c.gcd_rows(t, i, &e.x, &e.y, &x, &y, &e.gcd);
                    dirty = true;
                }
            }
            for j in t + 1..c.m.cols() {
                let y = c.m.get(t, j).clone();
                if y.is_zero() {
                    continue;
                }
                let x = c.m.get(t, t).clone();
                if (&y % &x).is_zero() {
                    let q = -(&y / &x);
                    c.add_col(j, t, &q);
                    // the column stays clean: col_j only changes in row t
                } else {
                    let e = x.extended_gcd(&y);
                    c.gcd_cols(t, j, &e.x, &e.y, &x, &y, &e.gcd);
                    dirty = true;
                }
            }
            let col_clean = (t + 1..c.m.rows()).all(|i| c.m.get(i, t).is_zero());
            let row_clean = (t + 1..c.m.cols()).all(|j| c.m.get(t, j).is_zero());
            if col_clean && row_clean && !dirty {
                break;
            }
        }
        if c.m.get(t, t).is_negative() {
            c.negate_row(t);
        }
        t += 1;
    }
    let rank = t;

    // Divisor chain fixup: for adjacent pivots with d_i not dividing d_{i+1},
    // fold d_{i+1} into column i and re-split as (gcd, lcm). Sweeps until stable.
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            let di = c.m.get(i, i).clone();
            let dj = c.m.get(i + 1, i + 1).clone();
            if (&dj % &di).is_zero() {
                continue;
            }
            changed = true;
            c.add_col(i, i + 1, &BigInt::one());
            let e = di.extended_gcd(&dj);
            c.gcd_rows(i, i + 1, &e.x, &e.y, &di, &dj, &e.gcd);
            // clear the fill-in at (i, i+1); g divides dj so the quotient is exact
            let q = -(&e.y * &dj) / &e.gcd;
            c.add_col(i + 1, i, &q);
            if c.m.get(i + 1, i + 1).is_negative() {
                c.negate_row(i + 1);
            }
        }
        if !changed {
            break;
        }
    }

    let res = SnfResult { u: c.u, d: c.m, v: c.v, u_inv: c.u_inv, v_inv: c.v_inv };
    // recomposition is checked on every call; callers rely on it blindly
    debug_assert!(verify(a, &res));
    assert!(recompose_ok(a, &res), "SNF recomposition failed");
    res
}

fn recompose_ok(a: &IntMatrix, r: &SnfResult) -> bool {
    r.u.mul(a).mul(&r.v) == r.d
}

fn verify(a: &IntMatrix, r: &SnfResult) -> bool {
    recompose_ok(a, r)
        && r.u.mul(&r.u_inv) == IntMatrix::identity(a.rows())
        && r.v.mul(&r.v_inv) == IntMatrix::identity(a.cols())
}

/// Cokernel of A read as rows-are-relations: Z^cols / (row span of A).
/// A 0 x n matrix therefore has cokernel Z^n.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    AbelianGroup::from_diagonal(&snf.diagonal(), a.cols())
}

/// One integer solution of A x = b, if any: diagonalize, divide, change back.
pub fn solve_int(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows(), "right-hand side length");
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let d = if i < a.cols() { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = c[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert!(verify(a, &r));
        assert!(r.u.is_unimodular(), "U not unimodular");
        assert!(r.v.is_unimodular(), "V not unimodular");
        let diag = r.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() && !diag[i + 1].is_zero() {
                assert!(!diag[i].is_zero(), "zero before nonzero divisor");
                assert!((&diag[i + 1] % &diag[i]).is_zero(), "divisor chain broken");
            }
        }
        r
    }

    fn diag_i64(r: &SnfResult) -> Vec<i64> {
        r.diagonal().iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let a = IntMatrix::diagonal(&[2, 3], 2, 2);
        let r = check(&a);
        assert_eq!(diag_i64(&r), vec![1, 6]);
    }

    #[test]
    fn two_by_two_dense() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 10]]);
        let r = check(&a);
        assert_eq!(diag_i64(&r), vec![2, 2]);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zero(2, 2);
        let r = check(&a);
        assert_eq!(diag_i64(&r), vec![0, 0]);
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn rectangular_and_empty() {
        let a = IntMatrix::from_rows(&[vec![0, 0, 4, 0]]);
        let r = check(&a);
        assert_eq!(diag_i64(&r), vec![4]);

        let e = IntMatrix::zero(0, 3);
        let r = check(&e);
        assert_eq!(r.rank(), 0);
        assert_eq!(r.v, IntMatrix::identity(3));
    }

    #[test]
    fn cokernel_examples() {
        let five = IntMatrix::from_rows(&[vec![5]]);
        assert_eq!(cokernel(&five), AbelianGroup::new(0, vec![5]));

        let none = IntMatrix::zero(0, 4);
        assert_eq!(cokernel(&none), AbelianGroup::free(4));

        let d = IntMatrix::diagonal(&[1, 2, 0], 3, 3);
        assert_eq!(cokernel(&d), AbelianGroup::new(1, vec![2]));
    }

    #[test]
    fn cokernel_invariance_under_unimodular_factors() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let g = cokernel(&a);
        // row/col permutations
        let mut b = a.clone();
        b.swap_rows(0, 2);
        b.swap_cols(1, 2);
        assert_eq!(cokernel(&b), g);
        // unimodular factors
        let mut c = a.clone();
        c.add_row_multiple(0, 1, &BigInt::from(3));
        c.add_col_multiple(2, 0, &BigInt::from(-2));
        assert_eq!(cokernel(&c), g);
    }

    #[test]
    fn integer_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 10]]);
        let b = vec![BigInt::from(6), BigInt::from(14)];
        let x = solve_int(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        // 2x + 4y is always even
        assert!(solve_int(&a, &[BigInt::from(1), BigInt::from(0)]).is_none());
        // underdetermined: pick any valid solution
        let wide = IntMatrix::from_rows(&[vec![2, 3, 5]]);
        let b = vec![BigInt::from(1)];
        let x = solve_int(&wide, &b).unwrap();
        assert_eq!(wide.mul_vec(&x), b);
        // inconsistent tall system
        let tall = IntMatrix::from_rows(&[vec![1], vec![1]]);
        assert!(solve_int(&tall, &[BigInt::from(1), BigInt::from(2)]).is_none());
    }
}
