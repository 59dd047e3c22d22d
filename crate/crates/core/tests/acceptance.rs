//! Acceptance suite: one criterion per function, one printed line each.
//!
//! Runs without the default harness so every criterion reports pass/fail on
//! its own line regardless of where a failure lands; the process exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pi1iso::{
    build_skeleton, classify, closed_form_h3, closed_form_h4, decide_bounds_4manifold,
    decide_embedding_codim1, decide_maps_to_4manifold, fundamental_class_image, h3h1_cup_check,
    replay_certificate, smith_normal_form, summand_pattern, two_power_cover,
    verify_h3h1_cup_trivial, verify_h4_integral_trivial, Answer, CaseTag, ChainComplex, Coeff,
    FiniteGroupTable, IntMatrix, PrimeDecomposition, DEFAULT_BUDGET,
};

/// Aspherical surrogate labels, 0 to 2 of them.
fn labels(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("A{}", i + 1)).collect()
}

/// Multisets of spherical orders drawn from the pool, sizes 0..=max_len.
fn order_multisets(pool: &[u64], max_len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut level: Vec<(Vec<u64>, usize)> = vec![(vec![], 0)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (orders, start) in &level {
            for (i, &o) in pool.iter().enumerate().skip(*start) {
                let mut extended = orders.clone();
                extended.push(o);
                out.push(extended.clone());
                next.push((extended, i));
            }
        }
        level = next;
    }
    out
}

/// The shared grid: m in 0..=2, order multisets of size <= 3 from the pool,
/// k in 0..=3.
fn grid() -> Vec<PrimeDecomposition> {
    let mut cases = Vec::new();
    for m in 0..=2 {
        for orders in order_multisets(&[2, 3, 4, 5, 8, 12], 3) {
            for k in 0..=3 {
                cases.push(PrimeDecomposition::new(labels(m), orders.clone(), k));
            }
        }
    }
    cases
}

fn criterion_1_homology_grid() {
    let cases = grid();
    assert_eq!(cases.len(), 3 * 84 * 4, "grid enumeration drifted");
    for m in &cases {
        let skeleton = build_skeleton(m);
        let h = skeleton.homology();
        assert_eq!(h.group(3), closed_form_h3(m), "H_3 mismatch on {}", m.describe());
        assert!(h.group(4).is_trivial(), "H_4 nonzero on {}", m.describe());
        assert_eq!(h.group(4), closed_form_h4(m));
    }
}

fn criterion_2_fundamental_class_images() {
    let primes = [2u64, 3, 5, 7, 11, 13];
    for m in &grid() {
        let skeleton = build_skeleton(m);
        let z = skeleton.image_cycle();

        let pattern = summand_pattern(m, Coeff::Integral);
        let coords = skeleton.solve_summand_coords(&z).expect("integral solve");
        let want: Vec<BigInt> = pattern.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(coords, want, "integral image on {}", m.describe());
        let img = fundamental_class_image(m, Coeff::Integral);
        assert_eq!(img.is_nonzero(), m.m() + m.n() >= 1, "Z nonvanishing on {}", m.describe());

        for &p in &primes {
            let pattern = summand_pattern(m, Coeff::ModP(p));
            let coords = skeleton.solve_summand_coords_mod_p(&z, p).expect("mod-p solve");
            assert_eq!(coords, pattern, "mod-{p} image on {}", m.describe());
            let img = fundamental_class_image(m, Coeff::ModP(p));
            let expect = m.m() >= 1 || m.spherical_orders().iter().any(|o| o % p == 0);
            assert_eq!(img.is_nonzero(), expect, "mod-{p} nonvanishing on {}", m.describe());
        }
    }
}

fn criterion_3_cup_triviality() {
    let start = Instant::now();
    for (n, p) in [(3, 3), (5, 5), (6, 3), (9, 3), (12, 3), (15, 3), (15, 5)] {
        let g = FiniteGroupTable::cyclic(n);
        let check = verify_h3h1_cup_trivial(&g, p, DEFAULT_BUDGET)
            .unwrap_or_else(|e| panic!("n = {n}, p = {p}: {e}"));
        assert!(check.trivial, "H^3 x H^1 -> H^4 not trivial for Z/{n} mod {p}");
        assert!(check.h3_dim >= 1 && check.h1_dim >= 1, "empty spaces prove nothing");
    }
    // the even-prime contrast: on Z/2 mod 2 the very first pair (x^3, x)
    // multiplies to the nonzero class of H^4
    let z2 = FiniteGroupTable::cyclic(2);
    let check = h3h1_cup_check(&z2, 2, DEFAULT_BUDGET).unwrap();
    assert!(!check.trivial);
    assert_eq!((check.h3_dim, check.h1_dim), (1, 1));
    assert_eq!(check.witness, Some((0, 0)));
    assert!(start.elapsed() < Duration::from_secs(30), "criterion 3 over its time cap");
}

fn criterion_4_integral_h4() {
    let start = Instant::now();
    let mut groups: Vec<FiniteGroupTable> = (1..=6).map(FiniteGroupTable::cyclic).collect();
    groups.push(FiniteGroupTable::quaternion());
    for g in &groups {
        let trivial = verify_h4_integral_trivial(g, DEFAULT_BUDGET)
            .unwrap_or_else(|e| panic!("{}: {e}", g.name()));
        assert!(trivial, "H_4({}; Z) != 0", g.name());
    }
    // same statement as the closed form reports for a matching decomposition
    for n in 2..=6u64 {
        assert!(closed_form_h4(&PrimeDecomposition::new(vec![], vec![n], 0)).is_trivial());
    }
    assert!(start.elapsed() < Duration::from_secs(60), "criterion 4 over its time cap");
}

fn criterion_5_cover_formulas() {
    // all 2-power multisets (orders up to 128, at most 5 factors) whose
    // index d = prod(n_j / 2) stays <= 64, crossed with k <= 4
    let pool = [2u64, 4, 8, 16, 32, 64, 128];
    let mut checked = 0usize;
    for orders in order_multisets(&pool, 5) {
        if orders.is_empty() {
            continue;
        }
        let d: u128 = orders.iter().map(|&o| (o / 2) as u128).product();
        if d > 64 {
            continue;
        }
        for k in 0..=4usize {
            let m = PrimeDecomposition::new(vec![], orders.clone(), k);
            let cover = two_power_cover(&m).expect("2-power case");

            // independent integer form of the RP^3 count: each kernel
            // conjugacy class contributes 2d / n_i = prod over the others
            let a_count: u128 = (0..orders.len())
                .map(|i| {
                    orders
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &o)| (o / 2) as u128)
                        .product::<u128>()
                })
                .sum();
            assert_eq!(cover.a, BigInt::from(a_count), "a on {orders:?}");
            assert!(cover.a >= BigInt::from(1));
            assert!(cover.b >= BigInt::from(0));
            assert_eq!(cover.index, BigInt::from(d));

            // Euler identity in independent i128 rational arithmetic:
            // 1 - a/2 - b = d * (sum 1/n_i - n - k + 1)
            let a = i128::try_from(&cover.a).unwrap();
            let b = i128::try_from(&cover.b).unwrap();
            let n = orders.len() as i128;
            let lhs = Ratio::from_integer(1i128)
                - Ratio::new(a, 2)
                - Ratio::from_integer(b);
            let sum_inv: Ratio<i128> =
                orders.iter().map(|&o| Ratio::new(1i128, o as i128)).sum();
            let rhs = Ratio::from_integer(d as i128)
                * (sum_inv - Ratio::from_integer(n + k as i128 - 1));
            assert_eq!(lhs, rhs, "Euler identity on {orders:?}, k = {k}");
            checked += 1;
        }
    }
    assert!(checked >= 5 * 100, "sweep shrank unexpectedly: {checked} cases");

    let fixtures: [(&[u64], usize, i64, i64); 5] = [
        (&[2], 0, 1, 0),
        (&[2, 2], 0, 2, 0),
        (&[4], 0, 1, 0),
        (&[8], 0, 1, 0),
        (&[2, 2], 1, 2, 1),
    ];
    for (orders, k, a, b) in fixtures {
        let cover = two_power_cover(&PrimeDecomposition::new(vec![], orders.to_vec(), k)).unwrap();
        assert_eq!((cover.a, cover.b), (BigInt::from(a), BigInt::from(b)), "{orders:?}, k = {k}");
    }
}

fn criterion_6_decision_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3D_4D_5D);
    let mut yes_cases = 0usize;
    let mut replayed = 0usize;
    for _ in 0..200 {
        let m_count = rng.gen_range(0..=2usize);
        let n_count = rng.gen_range(0..=3usize);
        let orders: Vec<u64> = (0..n_count).map(|_| rng.gen_range(2..=12u64)).collect();
        let k = rng.gen_range(0..=3usize);
        let m = PrimeDecomposition::new(labels(m_count), orders, k);

        let maps = decide_maps_to_4manifold(&m);
        let bounds = decide_bounds_4manifold(&m);
        assert!(maps.well_formed() && bounds.well_formed(), "{}", m.describe());
        assert_eq!(maps.answer, bounds.answer, "questions disagree on {}", m.describe());
        let expect_yes = m_count == 0 && n_count == 0;
        assert_eq!(maps.is_yes(), expect_yes, "wrong verdict on {}", m.describe());
        assert_eq!(maps.is_yes(), classify(&m) == CaseTag::Free);

        let embed = decide_embedding_codim1(&m, 3);
        assert_eq!(embed.answer, maps.answer, "dimension-3 embedding disagrees");

        for verdict in [maps, bounds, embed] {
            if let Some(cert) = &verdict.certificate {
                replay_certificate(&m, cert)
                    .unwrap_or_else(|e| panic!("replay on {}: {e}", m.describe()));
                replayed += 1;
            } else {
                assert_eq!(verdict.answer, Answer::Yes);
                yes_cases += 1;
            }
        }
    }
    assert!(yes_cases > 0, "sweep never hit the free case");
    assert!(replayed > 0, "sweep never produced a certificate");
}

fn criterion_7_algebra_substrate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0501);
    // 500 random matrices: recomposition, unimodular changes of basis,
    // divisor-chain normal form
    for _ in 0..500 {
        let rows = rng.gen_range(0..=8usize);
        let cols = rng.gen_range(0..=8usize);
        let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9..=9i64)));
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d, "U A V != D");
        assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(rows));
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(cols));
        assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        let diag = snf.diagonal();
        let nonzero: Vec<&BigInt> = diag.iter().filter(|d| *d != &BigInt::from(0)).collect();
        for pair in nonzero.windows(2) {
            assert!(pair[0] > &BigInt::from(0));
            assert_eq!(pair[1] % pair[0], BigInt::from(0), "divisor chain broken");
        }
        let zeros_start = nonzero.len();
        assert!(diag[zeros_start..].iter().all(|d| *d == BigInt::from(0)));
    }

    // universal-coefficient consistency on randomly constructed complexes:
    // dim H_k(C; F_p) = rank H_k + p-torsion of H_k + p-torsion of H_{k-1}
    for _ in 0..100 {
        let c = random_complex(&mut rng);
        let h = c.homology();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let dims = c.homology_mod_p(p).dims;
            for (k, &dim) in dims.iter().enumerate() {
                let expected = h.group(k).rank()
                    + h.group(k).torsion_count_at(p)
                    + if k > 0 { h.group(k - 1).torsion_count_at(p) } else { 0 };
                assert_eq!(dim, expected, "UCT failure at degree {k}, p = {p}");
            }
        }
    }
}

/// A genuine random chain complex: each boundary is a random combination of
/// the previous boundary's kernel basis, so dd = 0 holds by construction
/// without being the zero map.
fn random_complex(rng: &mut ChaCha8Rng) -> ChainComplex {
    let r0 = rng.gen_range(1..=5usize);
    let r1 = rng.gen_range(0..=5usize);
    let d1 = IntMatrix::from_fn(r0, r1, |_, _| BigInt::from(rng.gen_range(-4..=4i64)));
    let mut ranks = vec![r0, r1];
    let mut boundaries = vec![d1];
    for _ in 0..2 {
        let prev = boundaries.last().unwrap();
        let snf = smith_normal_form(prev);
        let kernel = snf.v.columns_from(snf.rank());
        let next_rank = rng.gen_range(0..=4usize);
        let mix = IntMatrix::from_fn(kernel.cols(), next_rank, |_, _| {
            BigInt::from(rng.gen_range(-2..=2i64))
        });
        boundaries.push(kernel.mul(&mix));
        ranks.push(next_rank);
    }
    ChainComplex::new(ranks, boundaries).expect("constructed boundaries compose to zero")
}

fn main() {
    let criteria: Vec<(&str, fn())> = vec![
        ("closed-form vs oracle homology over the m,n,k grid", criterion_1_homology_grid),
        ("fundamental-class image over Z and all p <= 13", criterion_2_fundamental_class_images),
        ("cup-product triviality at odd primes, nontriviality at 2", criterion_3_cup_triviality),
        ("integral H_4 vanishing for cyclic groups and Q8", criterion_4_integral_h4),
        ("cover formulas: integrality, Euler identity, subgroup count", criterion_5_cover_formulas),
        ("decision totality, agreement, certificate replay (200 cases)", criterion_6_decision_sweep),
        ("algebra substrate: 500 SNF cases and universal coefficients", criterion_7_algebra_substrate),
    ];

    let mut failures = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} ({name}): PASS [{secs:.2}s]", idx + 1),
            Err(_) => {
                failures += 1;
                println!("criterion {} ({name}): FAIL [{secs:.2}s]", idx + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
