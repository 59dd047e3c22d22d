//! Deterministic report structures shared by the library and the CLI.
//!
//! A [`Report`] serializes with a fixed field order and no timestamps, so
//! identical input and flags produce byte-identical output; wall-clock
//! measurements are collected in a side channel ([`Report::timing_ms`]) that
//! callers print to stderr, never into the comparable body.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::bar::{cup_table, verify_h3h1_cup_trivial, verify_h4_integral_trivial, BarError};
use crate::chain::Coeff;
use crate::decision::{
    classify, decide_bounds_4manifold, decide_maps_to_4manifold, replay_certificate,
    two_power_cover, Answer, CaseTag, Certificate, CoverDescription, DecisionError, Question,
    Verdict,
};
use crate::group::FiniteGroupTable;
use crate::kpi1::{
    build_skeleton, closed_form_h3, closed_form_h4, fundamental_class_image, summand_pattern,
    FundamentalClassImage, ImageVector,
};
use crate::manifold::{PrimeDecomposition, SphericalPiece};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    /// Echo of the parsed input (decomposition JSON or group spec).
    pub input: Value,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverReport>,
    /// Oracle-agreement flags; present whenever verification ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckReport>>,
    /// (phase, milliseconds) pairs; excluded from the serialized body so
    /// reports stay diffable.
    #[serde(skip)]
    pub timing_ms: Vec<(String, u128)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub question: String,
    pub answer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injective_h3: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<ImageReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spherical_orders: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageReport {
    /// "Z" or "Z/p".
    pub coefficients: String,
    pub summand_pattern: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<u64>>,
    pub nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub a: String,
    pub b: String,
    pub index: String,
    pub description: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    /// H_0..H_4 of the classifying-space skeleton.
    pub kpi1: Vec<crate::abelian::AbelianGroup>,
    pub closed_form_h3: crate::abelian::AbelianGroup,
    pub manifold_h0: crate::abelian::AbelianGroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifold_h1: Option<crate::abelian::AbelianGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifold_h2: Option<crate::abelian::AbelianGroup>,
    pub manifold_h3: crate::abelian::AbelianGroup,
    pub integral_image: ImageReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mod_p_images: Vec<ImageReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingReport {
    pub group: String,
    pub order: usize,
    pub p: u64,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    /// All product blocks between positive degrees i + j <= max_degree.
    pub blocks: Vec<ProductBlock>,
    /// Powers of the degree-1 generator when H^1 is one-dimensional:
    /// entry j holds the coordinates of x^(j+2) in its degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_powers: Option<Vec<PowerEntry>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductBlock {
    pub left_degree: usize,
    pub right_degree: usize,
    pub zero: bool,
    /// table[a][b] = coordinates of basis_i[a] * basis_j[b].
    pub table: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerEntry {
    pub degree: usize,
    pub coords: Vec<u64>,
    pub nonzero: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The chain-level oracle declined under the cell budget; not a failure.
    SkippedBudget,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Report {
    fn new(command: &str, input: Value, description: String) -> Self {
        Report {
            command: command.to_string(),
            input,
            description,
            case: None,
            verdicts: Vec::new(),
            homology: None,
            ring: None,
            cover: None,
            checks: None,
            timing_ms: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn has_failures(&self) -> bool {
        self.checks
            .iter()
            .flatten()
            .any(|c| c.status == CheckStatus::Fail)
    }

    pub fn has_budget_skips(&self) -> bool {
        self.checks
            .iter()
            .flatten()
            .any(|c| c.status == CheckStatus::SkippedBudget)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("{}: {}", self.command, self.description));
        if let Some(case) = &self.case {
            line(format!("case: {case}"));
        }
        for v in &self.verdicts {
            line(format!("{}: {}", v.question, v.answer));
            if let Some(c) = &v.construction {
                line(format!("  construction: {c}"));
            }
            if let Some(c) = &v.certificate {
                line(format!("  certificate: {}", render_certificate(c)));
            }
        }
        if let Some(h) = &self.homology {
            for (k, g) in h.kpi1.iter().enumerate() {
                line(format!("H_{k}(K(pi,1)) = {g}"));
            }
            line(format!("closed-form H_3 = {}", h.closed_form_h3));
            line(format!("integral image: {}", render_image(&h.integral_image)));
            for img in &h.mod_p_images {
                line(format!("{} image: {}", img.coefficients, render_image(img)));
            }
        }
        if let Some(r) = &self.ring {
            line(format!(
                "H^*({}; Z/{}) dims through degree {}: {:?}",
                r.group, r.p, r.max_degree, r.dims
            ));
            for b in &r.blocks {
                line(format!(
                    "  H^{} x H^{} -> H^{}: {}",
                    b.left_degree,
                    b.right_degree,
                    b.left_degree + b.right_degree,
                    if b.zero { "zero" } else { "nonzero" }
                ));
            }
            if let Some(powers) = &r.generator_powers {
                for e in powers {
                    line(format!(
                        "  x^{} {}",
                        e.degree,
                        if e.nonzero { "nonzero" } else { "= 0" }
                    ));
                }
            }
        }
        if let Some(c) = &self.cover {
            line(format!("cover: {}", c.description));
        }
        if let Some(checks) = &self.checks {
            line("checks:".to_string());
            for c in checks {
                let status = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::SkippedBudget => "SKIP (budget)",
                    CheckStatus::NotApplicable => "n/a",
                };
                line(format!("  [{status}] {}: {}", c.name, c.detail));
            }
        }
        out
    }
}

fn render_certificate(c: &CertificateReport) -> String {
    let mut parts = vec![c.tag.clone()];
    if let Some(f) = &c.factors {
        parts.push(format!("factors {f:?}"));
    }
    if let Some(i) = c.injective_h3 {
        parts.push(format!("injective on H_3: {i}"));
    }
    if let Some(p) = c.p {
        parts.push(format!("p = {p}"));
    }
    if let Some(img) = &c.image {
        parts.push(render_image(img));
    }
    if let Some(cov) = &c.cover {
        parts.push(cov.description.clone());
    }
    if let Some(orders) = &c.spherical_orders {
        parts.push(format!("orders {orders:?} with b_1 = 0"));
    }
    parts.join(", ")
}

fn render_image(img: &ImageReport) -> String {
    let coords = match (&img.free, &img.torsion, &img.coords) {
        (Some(f), Some(t), _) => format!("free {f:?}, torsion {t:?}"),
        (_, _, Some(c)) => format!("{c:?}"),
        _ => "[]".to_string(),
    };
    format!(
        "{} class {} ({})",
        img.coefficients,
        coords,
        if img.nonzero { "nonzero" } else { "zero" }
    )
}

fn big_strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

impl ImageReport {
    fn from_image(img: &FundamentalClassImage) -> Self {
        let nonzero = img.is_nonzero();
        match &img.vector {
            ImageVector::Integral(cv) => ImageReport {
                coefficients: "Z".to_string(),
                summand_pattern: img.summand_pattern.clone(),
                free: Some(big_strings(&cv.free)),
                torsion: Some(big_strings(&cv.torsion)),
                coords: None,
                nonzero,
            },
            ImageVector::ModP { p, coords } => ImageReport {
                coefficients: format!("Z/{p}"),
                summand_pattern: img.summand_pattern.clone(),
                free: None,
                torsion: None,
                coords: Some(coords.clone()),
                nonzero,
            },
        }
    }
}

impl CoverReport {
    fn from_cover(c: &CoverDescription) -> Self {
        CoverReport {
            a: c.a.to_string(),
            b: c.b.to_string(),
            index: c.index.to_string(),
            description: c.describe(),
        }
    }
}

impl CertificateReport {
    fn from_certificate(cert: &Certificate) -> Self {
        let mut r = CertificateReport {
            tag: cert.tag().to_string(),
            factors: None,
            injective_h3: None,
            p: None,
            image: None,
            cover: None,
            spherical_orders: None,
        };
        match cert {
            Certificate::Aspherical { factors, h3 } => {
                r.factors = Some(factors.clone());
                if let Some(w) = h3 {
                    r.injective_h3 = Some(w.injective);
                    r.image = Some(ImageReport::from_image(&w.image));
                }
            }
            Certificate::OddPrime { p, image } => {
                r.p = Some(*p);
                r.image = Some(ImageReport::from_image(image));
            }
            Certificate::TwoPower(cover) => {
                r.cover = Some(CoverReport::from_cover(cover));
            }
            Certificate::B1Zero { spherical_orders } => {
                r.spherical_orders = Some(spherical_orders.clone());
            }
        }
        r
    }
}

impl VerdictReport {
    fn from_verdict(v: &Verdict) -> Self {
        VerdictReport {
            question: match v.question {
                Question::Bounds4Manifold => "bounds_4manifold",
                Question::MapsTo4Manifold => "maps_to_4manifold",
                Question::EmbedsCodim1 => "embeds_codim1",
            }
            .to_string(),
            answer: match v.answer {
                Answer::Yes => "yes",
                Answer::No => "no",
                Answer::Inconclusive => "inconclusive",
            }
            .to_string(),
            construction: v.construction.clone(),
            certificate: v.certificate.as_ref().map(CertificateReport::from_certificate),
        }
    }
}

fn case_name(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::Free => "FREE",
        CaseTag::Aspherical => "ASPHERICAL",
        CaseTag::OddPrime => "ODD_PRIME",
        CaseTag::TwoPower => "TWO_POWER",
    }
}

fn input_value(m: &PrimeDecomposition) -> Value {
    serde_json::to_value(m).expect("decomposition serializes")
}

fn time<T>(timing: &mut Vec<(String, u128)>, name: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    timing.push((name.to_string(), t.elapsed().as_millis()));
    out
}

/// Primes dividing some spherical factor order, ascending.
fn relevant_primes(m: &PrimeDecomposition) -> Vec<u64> {
    let mut primes = Vec::new();
    for &o in &m.spherical_orders() {
        let mut n = o;
        let mut f = 2;
        while f * f <= n {
            if n % f == 0 {
                primes.push(f);
                while n % f == 0 {
                    n /= f;
                }
            }
            f += 1;
        }
        if n > 1 {
            primes.push(n);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

/// The multiplication table backing a spherical factor: the cyclic group of
/// its order unless a table id is attached.
fn factor_group(piece: &SphericalPiece) -> Result<FiniteGroupTable, String> {
    match &piece.group {
        None => Ok(FiniteGroupTable::cyclic(piece.order as usize)),
        Some(id) => {
            let g = FiniteGroupTable::builtin(id).map_err(|e| e.to_string())?;
            if g.order() as u64 != piece.order {
                return Err(format!(
                    "table {id} has order {}, factor declares {}",
                    g.order(),
                    piece.order
                ));
            }
            Ok(g)
        }
    }
}

fn pass(name: impl Into<String>, detail: impl Into<String>) -> CheckReport {
    CheckReport { name: name.into(), status: CheckStatus::Pass, detail: detail.into() }
}

fn fail(name: impl Into<String>, detail: impl Into<String>) -> CheckReport {
    CheckReport { name: name.into(), status: CheckStatus::Fail, detail: detail.into() }
}

fn check_outcome(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> CheckReport {
    CheckReport {
        name: name.into(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: detail.into(),
    }
}

fn budget_skip(name: impl Into<String>, e: &BarError) -> CheckReport {
    CheckReport { name: name.into(), status: CheckStatus::SkippedBudget, detail: e.to_string() }
}

/// The oracle-vs-closed-form battery. Every homological claim the decision
/// relies on is recomputed at the chain level:
///
/// * skeleton H_3 and H_4 against the closed forms;
/// * the fundamental-class image against the summand pattern, over Z and
///   every prime dividing a factor order;
/// * cup-product triviality H^3 x H^1 -> H^4 at each odd relevant prime, per
///   factor group, on the bar complex;
/// * integral H_4 vanishing per factor group, on the bar complex;
/// * the cover count identities in the all-2-power case;
/// * replay of the certificates the decisions actually emitted.
///
/// Bar-complex checks whose cell count exceeds `budget` are reported as
/// skipped, never as failures.
pub fn run_checks(m: &PrimeDecomposition, budget: u64) -> Vec<CheckReport> {
    let mut checks = Vec::new();

    let skeleton = build_skeleton(m);
    let h = skeleton.homology();

    let want_h3 = closed_form_h3(m);
    let got_h3 = h.group(3);
    checks.push(check_outcome(
        "skeleton H_3 matches closed form",
        got_h3 == want_h3,
        format!("chain level {got_h3}, closed form {want_h3}"),
    ));

    let got_h4 = h.group(4);
    let want_h4 = closed_form_h4(m);
    checks.push(check_outcome(
        "skeleton H_4 vanishes",
        got_h4.is_trivial() && want_h4.is_trivial(),
        format!("chain level {got_h4}"),
    ));

    let z = skeleton.image_cycle();
    let pattern = summand_pattern(m, Coeff::Integral);
    match skeleton.homologous_to_pattern(&z, &pattern, Coeff::Integral) {
        Ok(ok) => checks.push(check_outcome(
            "integral fundamental-class image matches pattern",
            ok,
            format!("pattern {pattern:?}"),
        )),
        Err(e) => checks.push(fail("integral fundamental-class image matches pattern", e.to_string())),
    }

    for p in relevant_primes(m) {
        let name = format!("mod-{p} fundamental-class image matches pattern");
        let pattern = summand_pattern(m, Coeff::ModP(p));
        match skeleton.homologous_to_pattern(&z, &pattern, Coeff::ModP(p)) {
            Ok(ok) => checks.push(check_outcome(name, ok, format!("pattern {pattern:?}"))),
            Err(e) => checks.push(fail(name, e.to_string())),
        }
    }

    // bar-complex checks, one per factor group
    let mut seen = Vec::new();
    for piece in &m.spherical {
        let g = match factor_group(piece) {
            Ok(g) => g,
            Err(e) => {
                checks.push(fail(format!("factor group of order {}", piece.order), e));
                continue;
            }
        };
        if seen.contains(&g.name().to_string()) {
            continue;
        }
        seen.push(g.name().to_string());

        for p in relevant_primes(m) {
            if p % 2 == 0 || piece.order % p != 0 {
                continue;
            }
            let name = format!("cup H^3 x H^1 -> H^4 trivial mod {p} for {}", g.name());
            match verify_h3h1_cup_trivial(&g, p, budget) {
                Ok(result) => checks.push(check_outcome(
                    name,
                    result.trivial,
                    format!("dims h3 = {}, h1 = {}", result.h3_dim, result.h1_dim),
                )),
                Err(e @ BarError::BudgetExceeded { .. }) => checks.push(budget_skip(name, &e)),
                Err(e) => checks.push(fail(name, e.to_string())),
            }
        }

        let name = format!("bar H_4({}; Z) = 0", g.name());
        match verify_h4_integral_trivial(&g, budget) {
            Ok(ok) => checks.push(check_outcome(name, ok, "integral bar homology".to_string())),
            Err(e @ BarError::BudgetExceeded { .. }) => checks.push(budget_skip(name, &e)),
            Err(e) => checks.push(fail(name, e.to_string())),
        }
    }

    let euler_name = "cover count identities";
    if classify(m) == CaseTag::TwoPower {
        // two_power_cover verifies integrality, a >= 1, the subgroup count,
        // and the Euler identity internally before returning
        match two_power_cover(m) {
            Ok(c) => checks.push(pass(euler_name, c.describe())),
            Err(e) => checks.push(fail(euler_name, e.to_string())),
        }
    } else {
        checks.push(CheckReport {
            name: euler_name.to_string(),
            status: CheckStatus::NotApplicable,
            detail: "only meaningful when every factor order is a power of 2".to_string(),
        });
    }

    for verdict in [decide_maps_to_4manifold(m), decide_bounds_4manifold(m)] {
        let q = VerdictReport::from_verdict(&verdict).question;
        let name = format!("certificate replay ({q})");
        match &verdict.certificate {
            Some(cert) => match replay_certificate(m, cert) {
                Ok(()) => checks.push(pass(name, format!("{} certificate reproduced", cert.tag()))),
                Err(e) => checks.push(fail(name, e.to_string())),
            },
            None => checks.push(CheckReport {
                name,
                status: CheckStatus::NotApplicable,
                detail: "yes verdict carries a construction, not a certificate".to_string(),
            }),
        }
    }

    checks
}

/// Both decisions plus the case tag; the check battery is attached when
/// `verify` is set.
pub fn classify_report(m: &PrimeDecomposition, verify: bool, budget: u64) -> Report {
    let mut report = Report::new("classify", input_value(m), m.describe());
    let mut timing = Vec::new();
    let (maps, bounds) = time(&mut timing, "decisions", || {
        (decide_maps_to_4manifold(m), decide_bounds_4manifold(m))
    });
    report.case = Some(case_name(classify(m)).to_string());
    report.verdicts =
        vec![VerdictReport::from_verdict(&maps), VerdictReport::from_verdict(&bounds)];
    if verify {
        report.checks = Some(time(&mut timing, "checks", || run_checks(m, budget)));
    }
    report.timing_ms = timing;
    report
}

/// The full check battery on its own.
pub fn verify_report(m: &PrimeDecomposition, budget: u64) -> Report {
    let mut report = Report::new("verify", input_value(m), m.describe());
    let mut timing = Vec::new();
    report.case = Some(case_name(classify(m)).to_string());
    report.checks = Some(time(&mut timing, "checks", || run_checks(m, budget)));
    report.timing_ms = timing;
    report
}

/// Homology tables: skeleton H_0..H_4, the manifold's determined groups, and
/// fundamental-class images over Z and each requested prime.
pub fn homology_report(m: &PrimeDecomposition, primes: &[u64]) -> Report {
    let mut report = Report::new("homology", input_value(m), m.describe());
    let mut timing = Vec::new();
    let homology = time(&mut timing, "homology", || {
        let skeleton = build_skeleton(m);
        let h = skeleton.homology();
        let mh = crate::manifold::homology_of_m(m);
        HomologyReport {
            kpi1: (0..=4).map(|k| h.group(k)).collect(),
            closed_form_h3: closed_form_h3(m),
            manifold_h0: mh.h0().clone(),
            manifold_h1: mh.h1().ok().cloned(),
            manifold_h2: mh.h2().ok().cloned(),
            manifold_h3: mh.h3().clone(),
            integral_image: ImageReport::from_image(&fundamental_class_image(m, Coeff::Integral)),
            mod_p_images: primes
                .iter()
                .map(|&p| ImageReport::from_image(&fundamental_class_image(m, Coeff::ModP(p))))
                .collect(),
        }
    });
    report.homology = Some(homology);
    report.timing_ms = timing;
    report
}

/// Cover data for an all-2-power input.
pub fn cover_report(m: &PrimeDecomposition) -> Result<Report, DecisionError> {
    let mut report = Report::new("cover", input_value(m), m.describe());
    let mut timing = Vec::new();
    let cover = time(&mut timing, "cover", || two_power_cover(m))?;
    report.case = Some(case_name(classify(m)).to_string());
    report.cover = Some(CoverReport::from_cover(&cover));
    report.timing_ms = timing;
    Ok(report)
}

/// Mod-p cohomology ring of a finite group through `max_degree`, with every
/// positive-degree product block and, when H^1 is a line, the powers of its
/// generator. A budget overrun yields a report whose single check records
/// the skip instead of ring data.
pub fn ring_report(
    g: &FiniteGroupTable,
    p: u64,
    max_degree: usize,
    budget: u64,
) -> Result<Report, BarError> {
    let input = serde_json::json!({ "group": g.name(), "order": g.order() });
    let mut report = Report::new(
        "ring",
        input,
        format!("H^*({}; Z/{p}) through degree {max_degree}", g.name()),
    );
    let mut timing = Vec::new();
    let name = format!("cohomology ring of {} mod {p}", g.name());
    match time(&mut timing, "ring", || cup_table(g, p, max_degree, budget)) {
        Ok(table) => {
            let mut blocks = Vec::new();
            for i in 1..=max_degree {
                for j in i..=max_degree {
                    if i + j > max_degree {
                        continue;
                    }
                    let t: Vec<Vec<Vec<u64>>> = (0..table.dims[i])
                        .map(|a| {
                            (0..table.dims[j]).map(|b| table.product(i, j, a, b).to_vec()).collect()
                        })
                        .collect();
                    blocks.push(ProductBlock {
                        left_degree: i,
                        right_degree: j,
                        zero: table.block_is_zero(i, j),
                        table: t,
                    });
                }
            }
            let generator_powers = (table.dims[1] == 1).then(|| {
                let mut powers = Vec::new();
                let mut current = vec![1u64];
                for degree in 2..=max_degree {
                    let mut next = vec![0u64; table.dims[degree]];
                    for (b, &c) in current.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for (i, &v) in table.product(1, degree - 1, 0, b).iter().enumerate() {
                            next[i] = (next[i] + c * v) % p;
                        }
                    }
                    powers.push(PowerEntry {
                        degree,
                        nonzero: next.iter().any(|&c| c != 0),
                        coords: next.clone(),
                    });
                    current = next;
                }
                powers
            });
            report.ring = Some(RingReport {
                group: g.name().to_string(),
                order: g.order(),
                p,
                max_degree,
                dims: table.dims.clone(),
                blocks,
                generator_powers,
            });
            report.checks = Some(vec![pass(name, "table constructed and verified")]);
        }
        Err(e @ BarError::BudgetExceeded { .. }) => {
            report.checks = Some(vec![budget_skip(name, &e)]);
        }
        Err(e) => return Err(e),
    }
    report.timing_ms = timing;
    Ok(report)
}
