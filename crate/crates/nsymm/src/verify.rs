//! Named verification suites. Every mathematical statement the crate
//! implements is re-checked mechanically here, at a size governed by the
//! run configuration; each check carries the statement it verifies, so a
//! report doubles as a coverage map of the theory.
//!
//! Checks inside a suite are independent and run through the parallel
//! executor; outcomes are collected in registration order, so reports are
//! deterministic for a fixed configuration.

use std::sync::Mutex;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::curves::{ray_curve, Curve};
use crate::exec;
use crate::freeness;
use crate::isobaric::{self, newton_p, newton_q, IsobaricTable, TableKind};
use crate::ncpoly::hopf::{antipode, is_primitive, mu, reverse, swap_xy, verschiebung};
use crate::ncpoly::{Host, Int, NcPoly, Word};
use crate::primitives::{index_by_product, Engine};
use crate::qsymm;
use crate::rng::Rng;
use crate::words::{compositions, enumerate_lyndon, Composition, DirectionPair};
use crate::zlattice::hermite_normal_form;
use crate::zlattice::IntMatrix;

/// Knobs shared by every suite.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub max_weight: u32,
    pub truncation: u32,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_weight: 6, truncation: 3, seed: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "statement": c.statement,
                "status": if c.passed { "pass" } else { "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}: {}", c.name, c.statement));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        let overall = if self.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "suite {}: {overall} ({}/{} checks)\n",
            self.suite,
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        out
    }
}

type CheckFn = Box<dyn FnOnce() -> Result<String, String> + Send>;

struct Check {
    name: &'static str,
    statement: String,
    run: CheckFn,
}

fn check(name: &'static str, statement: impl Into<String>, run: impl FnOnce() -> Result<String, String> + Send + 'static) -> Check {
    Check { name, statement: statement.into(), run: Box::new(run) }
}

fn run_checks(suite: &str, checks: Vec<Check>) -> SuiteReport {
    let mut meta = Vec::with_capacity(checks.len());
    let mut jobs: Vec<CheckFn> = Vec::with_capacity(checks.len());
    for c in checks {
        meta.push((c.name, c.statement));
        jobs.push(c.run);
    }
    let results = exec::map_collect(jobs, |job| job());
    let checks = meta
        .into_iter()
        .zip(results)
        .map(|((name, statement), result)| match result {
            Ok(detail) => CheckOutcome { name: name.into(), statement, passed: true, detail },
            Err(detail) => CheckOutcome { name: name.into(), statement, passed: false, detail },
        })
        .collect();
    SuiteReport { suite: suite.into(), checks }
}

pub const SUITES: &[&str] = &[
    "orders",
    "hopf-axioms",
    "decomposition1",
    "decomposition2",
    "swl",
    "curves",
    "primitives",
    "verschiebung",
    "qsymm",
    "freeness",
    "all",
];

/// Runs one suite (or `all`); `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Option<SuiteReport> {
    match name {
        "orders" => Some(orders_suite(cfg)),
        "hopf-axioms" => Some(hopf_suite(cfg)),
        "decomposition1" => Some(decomposition1_suite(cfg)),
        "decomposition2" => Some(decomposition2_suite(cfg)),
        "swl" => Some(swl_suite(cfg)),
        "curves" => Some(curves_suite(cfg)),
        "primitives" => Some(primitives_suite(cfg)),
        "verschiebung" => Some(verschiebung_suite(cfg)),
        "qsymm" => Some(qsymm_suite(cfg)),
        "freeness" => Some(freeness_suite(cfg)),
        "all" => {
            let mut checks = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                let report = run_suite(s, cfg)?;
                checks.extend(report.checks);
            }
            Some(SuiteReport { suite: "all".into(), checks })
        }
        _ => None,
    }
}

fn ok(detail: impl Into<String>) -> Result<String, String> {
    Ok(detail.into())
}

fn ensure(cond: bool, detail: impl Into<String>) -> Result<String, String> {
    if cond {
        Ok(String::new())
    } else {
        Err(detail.into())
    }
}

// ---------------------------------------------------------------- orders --

fn orders_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight.min(6);
    let checks = vec![
        check(
            "wll-total-order",
            format!("wll is a total order on compositions of weight <= {w}"),
            move || {
                let mut words = Vec::new();
                for n in 0..=w {
                    words.extend(compositions(n));
                }
                for a in &words {
                    for b in &words {
                        let ab = a.wll_cmp(b);
                        if ab.reverse() != b.wll_cmp(a) || ((ab == std::cmp::Ordering::Equal) != (a == b)) {
                            return Err(format!("antisymmetry fails on {a}, {b}"));
                        }
                        for c in &words {
                            if ab != std::cmp::Ordering::Greater
                                && b.wll_cmp(c) != std::cmp::Ordering::Greater
                                && a.wll_cmp(c) == std::cmp::Ordering::Greater
                            {
                                return Err(format!("transitivity fails on {a}, {b}, {c}"));
                            }
                        }
                    }
                }
                ok(format!("{} words", words.len()))
            },
        ),
        check(
            "swl-chain",
            "the swl order lists (2,1) < (3,1) < (3,2) < ... < (1,1) < ... < (1,3) < (1,2)",
            || {
                let want = [
                    (2, 1), (3, 1), (3, 2), (4, 1), (5, 1), (4, 3), (5, 2), (6, 1),
                    (1, 1),
                    (1, 6), (2, 5), (3, 4), (1, 5), (1, 4), (2, 3), (1, 3), (1, 2),
                ];
                let mut pairs = Vec::new();
                for wt in 2..=7u32 {
                    for u in 1..wt {
                        let p = DirectionPair::new(u, wt - u);
                        if p.is_normalized() {
                            pairs.push(p);
                        }
                    }
                }
                pairs.sort_by(|a, b| a.swl_cmp(b));
                let got: Vec<(u32, u32)> = pairs.iter().map(|p| (p.u, p.v)).collect();
                ensure(got == want, format!("got {got:?}"))
            },
        ),
        check(
            "swl-symmetry",
            "p < q iff swap(q) < swap(p) in swl, coprime pairs of weight <= 10",
            || {
                let mut pairs = vec![DirectionPair::new(1, 0), DirectionPair::new(0, 1)];
                for wt in 2..=10u32 {
                    for u in 1..wt {
                        let p = DirectionPair::new(u, wt - u);
                        if p.is_normalized() {
                            pairs.push(p);
                        }
                    }
                }
                for p in &pairs {
                    for q in &pairs {
                        if p.swl_cmp(q) != q.swap().swl_cmp(&p.swap()) {
                            return Err(format!("fails on {p}, {q}"));
                        }
                    }
                }
                ok(format!("{} pairs", pairs.len()))
            },
        ),
        check(
            "factorization",
            format!("canonical factorization splits Lyndon words of weight <= {w} into Lyndon halves"),
            move || {
                let mut count = 0;
                for n in 2..=w {
                    for alpha in enumerate_lyndon(n) {
                        if alpha.len() < 2 {
                            continue;
                        }
                        let (p, s) = alpha
                            .canonical_factorization()
                            .map_err(|e| e.to_string())?;
                        if !p.is_lyndon() || !s.is_lyndon() || p.concat(&s) != alpha {
                            return Err(format!("fails on {alpha}"));
                        }
                        count += 1;
                    }
                }
                ok(format!("{count} words"))
            },
        ),
        check(
            "lyndon-counts",
            "the number of Lyndon words of weight 1..8 is 1, 1, 2, 3, 6, 9, 18, 30",
            || {
                let got = freeness::lyndon_counts(8);
                ensure(got == vec![1, 1, 2, 3, 6, 9, 18, 30], format!("got {got:?}"))
            },
        ),
    ];
    run_checks("orders", checks)
}

// ----------------------------------------------------------- hopf axioms --

fn random_poly(rng: &mut Rng, max_weight: u32) -> NcPoly {
    let mut p = NcPoly::zero(Host::NSymm);
    for _ in 0..4 {
        let mut rest = rng.below(max_weight as u64 + 1) as u32;
        let mut letters = Vec::new();
        while rest > 0 {
            let part = rng.below(rest as u64) as u32 + 1;
            letters.push(crate::ncpoly::Letter::z(part));
            rest -= part;
        }
        p += &NcPoly::monomial(Host::NSymm, Word(letters), Int::from(rng.range(-3, 3)));
    }
    p
}

fn hopf_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight.min(6);
    let seed = cfg.seed;
    let checks = vec![
        check(
            "coassociativity",
            format!("(mu (x) id) mu = (id (x) mu) mu on generators to weight {w} and 50 random samples"),
            move || {
                let mut rng = Rng::new(seed);
                let mut samples: Vec<NcPoly> = (1..=w).map(NcPoly::z).collect();
                for _ in 0..50 {
                    samples.push(random_poly(&mut rng, 5));
                }
                for p in &samples {
                    let m = crate::ncpoly::MultiTensor::from_tensor(&mu(p));
                    let right = crate::ncpoly::hopf::expand_last(&m);
                    // Expand the first slot by hand for the left side.
                    let mut left = crate::ncpoly::MultiTensor::zero(Host::NSymm, 3);
                    for (slots, c) in m.terms() {
                        let e = mu(&NcPoly::monomial(Host::NSymm, slots[0].clone(), Int::from(1)));
                        for ((a, b), v) in e.terms() {
                            left.add_term(vec![a.clone(), b.clone(), slots[1].clone()], c * v);
                        }
                    }
                    if left != right {
                        return Err(format!("fails on {p}"));
                    }
                }
                ok(format!("{} samples", w as usize + 50))
            },
        ),
        check(
            "counit",
            "(eps (x) id) mu = id = (id (x) eps) mu on the same sample",
            move || {
                let mut rng = Rng::new(seed.wrapping_add(1));
                let mut samples: Vec<NcPoly> = (1..=w).map(NcPoly::z).collect();
                for _ in 0..50 {
                    samples.push(random_poly(&mut rng, 5));
                }
                for p in &samples {
                    let m = mu(p);
                    if &m.contract_counit(0) != p || &m.contract_counit(1) != p {
                        return Err(format!("fails on {p}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "antipode",
            format!("m(iota (x) id) mu = eps on generators to weight {w}"),
            move || {
                for n in 1..=w {
                    let m = mu(&NcPoly::z(n));
                    let mut acc = NcPoly::zero(Host::NSymm);
                    for ((a, b), c) in m.terms() {
                        let ia = antipode(&NcPoly::monomial(Host::NSymm, a.clone(), c.clone()));
                        acc += &(&ia * &NcPoly::monomial(Host::NSymm, b.clone(), Int::from(1)));
                    }
                    if !acc.is_zero() {
                        return Err(format!("fails on Z_{n}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "mu-multiplicative",
            "mu(pq) = mu(p) mu(q) on random pairs of weight <= 4",
            move || {
                let mut rng = Rng::new(seed.wrapping_add(2));
                for _ in 0..20 {
                    let p = random_poly(&mut rng, 4);
                    let q = random_poly(&mut rng, 4);
                    if mu(&(&p * &q)) != mu(&p).mul(&mu(&q)) {
                        return Err(format!("fails on {p}, {q}"));
                    }
                }
                ok("20 pairs")
            },
        ),
        check(
            "verschiebung-composition",
            "V_r V_s = V_rs on generators to weight 12",
            || {
                for n in 1..=12u32 {
                    for r in 2..=3u32 {
                        for s in 2..=3u32 {
                            if verschiebung(r, &verschiebung(s, &NcPoly::z(n)))
                                != verschiebung(r * s, &NcPoly::z(n))
                            {
                                return Err(format!("fails on Z_{n}, r={r}, s={s}"));
                            }
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "reversal",
            "word reversal is involutive and anti-multiplicative",
            move || {
                let mut rng = Rng::new(seed.wrapping_add(3));
                for _ in 0..20 {
                    let p = random_poly(&mut rng, 4);
                    let q = random_poly(&mut rng, 4);
                    if reverse(&reverse(&p)) != p || reverse(&(&p * &q)) != &reverse(&q) * &reverse(&p) {
                        return Err(format!("fails on {p}, {q}"));
                    }
                }
                ok("20 pairs")
            },
        ),
    ];
    run_checks("hopf-axioms", checks)
}

// -------------------------------------------------------- decompositions --

fn decomposition1_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight;
    let checks = vec![
        check(
            "reconstruction",
            format!("the curve commutator equals the ordered product of its ray factors to weight {w}, with no pure powers"),
            move || {
                let table = IsobaricTable::build(TableKind::LWl, w);
                ensure(isobaric::reconstruct(&table, w), "series mismatch")
            },
        ),
        check(
            "bihomogeneity",
            format!("the commutator entries at (u,v) are bihomogeneous with corrections of length >= 3 and no single-alphabet words, u+v <= {w}"),
            move || {
                let table = IsobaricTable::build(TableKind::LWl, w);
                for u in 1..w {
                    for v in 1..=(w - u) {
                        let e = table.entry(u, v);
                        if !e.is_bihomogeneous(u, v) {
                            return Err(format!("({u},{v}) not bihomogeneous"));
                        }
                        let rest = e - &NcPoly::x(u).commutator(&NcPoly::y(v));
                        for (word, _) in rest.terms() {
                            if word.len() < 3 {
                                return Err(format!("short correction {word} at ({u},{v})"));
                            }
                        }
                        for (word, _) in e.terms() {
                            let (bu, bv) = word.biweight();
                            if bu == 0 || bv == 0 {
                                return Err(format!("single-alphabet word {word} at ({u},{v})"));
                            }
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "first-slice",
            "the (1,1) coefficient of the commutator is the commutator of the first generators",
            || {
                let lhs = isobaric::decomposed_series(TableKind::LWl, 3);
                let want = NcPoly::x(1).commutator(&NcPoly::y(1));
                ensure(lhs.coeff(1, 1) == want, "slice mismatch")
            },
        ),
    ];
    run_checks("decomposition1", checks)
}

fn decomposition2_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight;
    let checks = vec![
        check(
            "reconstruction",
            format!("the additive 2-curve equals the ordered product of its ray factors to weight {w}, with no pure powers"),
            move || {
                let table = IsobaricTable::build(TableKind::NWl, w);
                ensure(isobaric::reconstruct(&table, w), "series mismatch")
            },
        ),
        check(
            "first-column",
            "the (1, n-1) entries are the Newton primitives P_n, n <= 10",
            || {
                let table = IsobaricTable::build(TableKind::NWl, 10);
                for n in 2..=10u32 {
                    if table.entry(1, n - 1) != &newton_p(n) {
                        return Err(format!("mismatch at n = {n}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "homogeneity",
            format!("the additive entries at (u,v) are homogeneous of weight u+v with corrections of length >= 2, u+v <= {w}"),
            move || {
                let table = IsobaricTable::build(TableKind::NWl, w);
                for u in 1..w {
                    for v in 1..=(w - u) {
                        let e = table.entry(u, v);
                        if !e.is_homogeneous(u + v) {
                            return Err(format!("({u},{v}) not homogeneous"));
                        }
                        let lead = NcPoly::z(u + v).scale(&num_integer::binomial(Int::from(u + v), Int::from(u)));
                        let rest = e - &lead;
                        for (word, _) in rest.terms() {
                            if word.len() < 2 {
                                return Err(format!("short correction {word} at ({u},{v})"));
                            }
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "newton-routes",
            "the closed alternating sum and the left recursion give the same P_n, n <= 10; Q_n is the reversal of P_n, n <= 8",
            || {
                for n in 1..=10u32 {
                    if newton_p(n) != isobaric::newton_p_by_recursion(n) {
                        return Err(format!("P routes differ at n = {n}"));
                    }
                }
                for n in 1..=8u32 {
                    if newton_q(n) != reverse(&newton_p(n)) {
                        return Err(format!("Q_{n} != reversal of P_{n}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "newton-primitivity",
            "P_n and Q_n are primitive for n <= 8",
            || {
                for n in 1..=8u32 {
                    if !is_primitive(&newton_p(n)) || !is_primitive(&newton_q(n)) {
                        return Err(format!("fails at n = {n}"));
                    }
                }
                ok("")
            },
        ),
    ];
    run_checks("decomposition2", checks)
}

fn swl_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight.min(6);
    let checks = vec![
        check(
            "reconstruction-l",
            format!("the swl-ordered conjugate commutator reconstructs from its ray factors to weight {w}"),
            move || {
                let table = IsobaricTable::build(TableKind::LSwl, w);
                ensure(isobaric::reconstruct(&table, w), "series mismatch")
            },
        ),
        check(
            "reconstruction-n",
            format!("the swl-ordered additive decomposition reconstructs to weight {w}"),
            move || {
                let table = IsobaricTable::build(TableKind::NSwl, w);
                ensure(isobaric::reconstruct(&table, w), "series mismatch")
            },
        ),
        check(
            "newton-columns",
            "swl additive entries give P_{k+1} at (k,1) and Q_{k+1} at (1,k), k <= 5",
            || {
                let table = IsobaricTable::build(TableKind::NSwl, 6);
                for k in 1..=5u32 {
                    if table.entry(k, 1) != &newton_p(k + 1) {
                        return Err(format!("(k,1) fails at k = {k}"));
                    }
                    if table.entry(1, k) != &newton_q(k + 1) {
                        return Err(format!("(1,k) fails at k = {k}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "reversal-symmetry",
            format!("reversal swaps the swl entry at (u,v) with (v,u) (exchanging alphabets on the commutator side), u+v <= {w}"),
            move || {
                let n = IsobaricTable::build(TableKind::NSwl, w);
                let l = IsobaricTable::build(TableKind::LSwl, w);
                for u in 1..w {
                    for v in 1..=(w - u) {
                        if &reverse(n.entry(u, v)) != n.entry(v, u) {
                            return Err(format!("additive symmetry fails at ({u},{v})"));
                        }
                        if reverse(l.entry(u, v)) != swap_xy(l.entry(v, u)) {
                            return Err(format!("commutator symmetry fails at ({u},{v})"));
                        }
                    }
                }
                ok("")
            },
        ),
    ];
    run_checks("swl", checks)
}

// ----------------------------------------------------------------- curves --

fn curves_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight.min(6);
    let t = cfg.truncation.max(2);
    let checks = vec![
        check(
            "natural-curve",
            format!("the natural curve and its inverse satisfy the coproduct condition to bound {t}"),
            move || {
                let z = Curve::natural_z(t.max(4));
                ensure(
                    z.is_curve() && z.is_v_curve() && z.inv().is_curve() && z.inv() == z.antipode_sequence(),
                    "natural curve checks fail",
                )
            },
        ),
        check(
            "ray-curves",
            format!("every commutator ray with a+b <= {w} is a curve and compatible with all Verschiebung operators, 2 terms deep"),
            move || {
                let table = IsobaricTable::build(TableKind::LWl, 2 * w);
                let mut count = 0;
                for a in 1..w {
                    for b in 1..=(w - a) {
                        let d = DirectionPair::new(a, b);
                        if !d.is_normalized() {
                            continue;
                        }
                        let c = ray_curve(a, b, &table, 2);
                        if !c.is_curve() {
                            return Err(format!("ray ({a},{b}) is not a curve"));
                        }
                        if !c.is_v_curve() {
                            return Err(format!("ray ({a},{b}) is not a V-curve"));
                        }
                        count += 1;
                    }
                }
                ok(format!("{count} rays"))
            },
        ),
        check(
            "ray-extraction",
            format!("restricting a ray factor series to its direction yields a curve (a+b <= {})", w.min(5)),
            move || {
                let wv = w.min(5);
                let table = IsobaricTable::build(TableKind::LWl, 2 * wv);
                for a in 1..wv {
                    for b in 1..=(wv - a) {
                        let d = DirectionPair::new(a, b);
                        if !d.is_normalized() {
                            continue;
                        }
                        let mut s = crate::series::Series2::one(Host::TwoNSymm, 2 * (a + b));
                        let mut m = 1;
                        while m * (a + b) <= 2 * (a + b) {
                            s.set_coeff(m * a, m * b, table.entry(m * a, m * b).clone());
                            m += 1;
                        }
                        let restricted = s.restrict_direction(a, b).map_err(|e| e.to_string())?;
                        let curve = Curve::from_series(&restricted);
                        if !curve.is_curve() {
                            return Err(format!("extracted ray ({a},{b}) fails"));
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "lyndon-curves",
            format!("d_alpha is a curve for Lyndon alpha of weight <= {}, 2 terms deep", w.min(5)),
            move || {
                let mut eng = Engine::new();
                let mut count = 0;
                for n in 1..=w.min(5) {
                    for alpha in enumerate_lyndon(n) {
                        if !eng.d_curve(&alpha, 2).is_curve() {
                            return Err(format!("d_{alpha} fails"));
                        }
                        count += 1;
                    }
                }
                ok(format!("{count} curves"))
            },
        ),
        check(
            "over-curves",
            format!("the curve over P_alpha is a curve for g(alpha) in {{2,3}}, weight <= {w}, 2 terms deep"),
            move || {
                let mut eng = Engine::new();
                let mut count = 0;
                for n in 1..=w {
                    for alpha in enumerate_lyndon(n) {
                        let g = alpha.parts_gcd();
                        if g == 2 || g == 3 {
                            let over = eng.over_curve(&alpha, 2);
                            if !over.is_curve() {
                                return Err(format!("over-curve of {alpha} fails"));
                            }
                            count += 1;
                        }
                    }
                }
                ok(format!("{count} curves"))
            },
        ),
        check(
            "substitution",
            "substitution of curves in curves is functorial and preserves the curve property",
            || {
                let z = Curve::natural_z(4);
                let a = z.inv();
                let b = z.mul(&z);
                let d = z.inv().mul(&z.inv());
                let left = a
                    .subst_into(&b.subst_into(&d).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let right = a
                    .subst_into(&b)
                    .map_err(|e| e.to_string())?
                    .subst_into(&d)
                    .map_err(|e| e.to_string())?;
                ensure(left == right && left.is_curve(), "functoriality fails")
            },
        ),
    ];
    run_checks("curves", checks)
}

// ------------------------------------------------------------- primitives --

fn primitives_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight.min(7);
    let checks = vec![
        check(
            "primitivity",
            format!("P_alpha is primitive for every Lyndon alpha of weight <= {w}"),
            move || {
                let mut eng = Engine::new();
                let mut count = 0;
                for n in 1..=w {
                    for alpha in enumerate_lyndon(n) {
                        if !is_primitive(&eng.primitive(&alpha)) {
                            return Err(format!("P_{alpha} is not primitive"));
                        }
                        count += 1;
                    }
                }
                ok(format!("{count} primitives"))
            },
        ),
        check(
            "minimal-terms",
            format!("the least monomial of P_alpha is g(alpha) Z_alpha, weight <= {w}"),
            move || {
                let mut eng = Engine::new();
                for n in 1..=w {
                    for alpha in enumerate_lyndon(n) {
                        let p = eng.primitive(&alpha);
                        let (word, coeff) = p.min_term().ok_or_else(|| format!("P_{alpha} is zero"))?;
                        if word != &Word::from_composition(&alpha) || coeff != &Int::from(alpha.parts_gcd()) {
                            return Err(format!("least monomial of P_{alpha} is {coeff}*{word}"));
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "curve-minimal-terms",
            format!("the least monomial of d_alpha(i) is the i/g-scaled word with coefficient 1, weight <= {}, i <= 2", w.min(6)),
            move || {
                let mut eng = Engine::new();
                for n in 1..=w.min(6) {
                    for alpha in enumerate_lyndon(n) {
                        let g = alpha.parts_gcd();
                        let d = eng.d_curve(&alpha, 2);
                        for i in 1..=2u32 {
                            let term = d.term(i);
                            let (word, coeff) = term.min_term().ok_or_else(|| format!("d_{alpha}({i}) is zero"))?;
                            let scaled = alpha.unscale(g).expect("g divides parts").scale(i);
                            if word != &Word::from_composition(&scaled) || coeff != &Int::from(1) {
                                return Err(format!("least monomial of d_{alpha}({i}) is {coeff}*{word}"));
                            }
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "scale-invariance",
            "d is unchanged under scaling the word: d_[2,4] = d_[1,2], d_[3,6] = d_[1,2], d_[4] = d_[2]",
            || {
                let mut eng = Engine::new();
                let c = |p: &[u32]| Composition::new(p.to_vec());
                ensure(
                    eng.d_curve(&c(&[2, 4]), 2) == eng.d_curve(&c(&[1, 2]), 2)
                        && eng.d_curve(&c(&[3, 6]), 1) == eng.d_curve(&c(&[1, 2]), 1)
                        && eng.d_curve(&c(&[4]), 3) == eng.d_curve(&c(&[2]), 3),
                    "scale invariance fails",
                )
            },
        ),
        check(
            "index-table",
            format!("the free Lie subalgebra index at weight n equals both the lattice index and the product formula, n <= {}", cfg.max_weight.min(6)),
            {
                let cap = cfg.max_weight.min(6);
                move || {
                    let mut eng = Engine::new();
                    let known = [1i64, 1, 2, 6, 576, 69120];
                    let mut detail = String::new();
                    for n in 1..=cap {
                        let det = eng.index_by_determinant(n);
                        let lat = eng.index_by_lattice(n);
                        let prod = index_by_product(n);
                        if det != lat || det != prod {
                            return Err(format!("routes disagree at weight {n}: {det} / {lat} / {prod}"));
                        }
                        if (n as usize) <= known.len() && det != Int::from(known[n as usize - 1]) {
                            return Err(format!("weight {n}: expected {}, got {det}", known[n as usize - 1]));
                        }
                        detail = format!("index({n}) = {det}");
                    }
                    ok(detail)
                }
            },
        ),
        check(
            "over-curve-heads",
            format!("the curve over P_alpha starts at P_alpha, weight <= {}", w.min(6)),
            move || {
                let mut eng = Engine::new();
                for n in 1..=w.min(6) {
                    for alpha in enumerate_lyndon(n) {
                        let over = eng.over_curve(&alpha, 1);
                        if over.term(1) != eng.primitive(&alpha) {
                            return Err(format!("over-curve of {alpha} starts wrong"));
                        }
                    }
                }
                ok("")
            },
        ),
    ];
    run_checks("primitives", checks)
}

// ----------------------------------------------------------- verschiebung --

fn verschiebung_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight.min(6);
    let checks = vec![
        check(
            "dichotomy",
            format!("V_r P_alpha = r P_(alpha/r) when r | g(alpha) and 0 otherwise, weight <= {w}, r <= {w}"),
            move || {
                let mut eng = Engine::new();
                let mut count = 0;
                for n in 1..=w {
                    for alpha in enumerate_lyndon(n) {
                        let p = eng.primitive(&alpha);
                        let g = alpha.parts_gcd();
                        for r in 2..=w {
                            let image = verschiebung(r, &p);
                            if g % r == 0 {
                                let smaller = alpha.unscale(r).expect("r divides parts");
                                if image != eng.primitive(&smaller).scale_i64(r as i64) {
                                    return Err(format!("V_{r} P_{alpha} wrong"));
                                }
                            } else if !image.is_zero() {
                                return Err(format!("V_{r} P_{alpha} should vanish"));
                            }
                            count += 1;
                        }
                    }
                }
                ok(format!("{count} cases"))
            },
        ),
        check(
            "image-lattice",
            format!("V_r maps the weight-rn primitive lattice onto r times the weight-n one (Hermite comparison), rn <= {w}"),
            move || {
                let mut eng = Engine::new();
                let mut count = 0;
                for r in 2..=w {
                    for n in 1..=w {
                        if r * n > w {
                            continue;
                        }
                        let cols = compositions(n);
                        let image_rows: Vec<Vec<Int>> = enumerate_lyndon(r * n)
                            .iter()
                            .map(|alpha| {
                                let v = verschiebung(r, &eng.primitive(alpha));
                                cols.iter().map(|c| v.coeff(&Word::from_composition(c))).collect()
                            })
                            .collect();
                        let scaled_rows: Vec<Vec<Int>> = enumerate_lyndon(n)
                            .iter()
                            .map(|beta| {
                                let p = eng.primitive(beta).scale_i64(r as i64);
                                cols.iter().map(|c| p.coeff(&Word::from_composition(c))).collect()
                            })
                            .collect();
                        let a = hermite_normal_form(&IntMatrix::from_rows(image_rows));
                        let b = hermite_normal_form(&IntMatrix::from_rows(scaled_rows));
                        if a != b {
                            return Err(format!("lattices differ for r = {r}, n = {n}"));
                        }
                        count += 1;
                    }
                }
                ok(format!("{count} pairs"))
            },
        ),
    ];
    run_checks("verschiebung", checks)
}

// ------------------------------------------------------------------ qsymm --

fn qsymm_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight;
    let seed = cfg.seed;
    let checks = vec![
        check(
            "commutative-associative",
            "the overlapping shuffle is commutative (exhaustive to weight 4) and associative (random triples to weight 5)",
            move || {
                let mut words = Vec::new();
                for n in 0..=4u32 {
                    words.extend(compositions(n));
                }
                for a in &words {
                    for b in &words {
                        if qsymm::osh_mul(a, b) != qsymm::osh_mul(b, a) {
                            return Err(format!("commutativity fails on {a}, {b}"));
                        }
                    }
                }
                let mut rng = Rng::new(seed.wrapping_add(10));
                let mut five = Vec::new();
                for n in 0..=5u32 {
                    five.extend(compositions(n));
                }
                for _ in 0..30 {
                    let a = &five[rng.below(five.len() as u64) as usize];
                    let b = &five[rng.below(five.len() as u64) as usize];
                    let d = &five[rng.below(five.len() as u64) as usize];
                    let left = qsymm::osh_mul(a, b).mul(&qsymm::QElem::from_composition(d));
                    let right = qsymm::QElem::from_composition(a).mul(&qsymm::osh_mul(b, d));
                    if left != right {
                        return Err(format!("associativity fails on {a}, {b}, {d}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "two-implementations",
            format!("the walk-based and matrix-based shuffle products agree on all pairs of weight sum <= {}", w.min(6)),
            move || {
                let cap = w.min(6);
                let mut count = 0;
                for wa in 1..cap {
                    for a in compositions(wa) {
                        for wb in 1..=(cap - wa) {
                            for b in compositions(wb) {
                                let two = qsymm::osh_mul(&a, &b);
                                let multi = qsymm::osh_mul_multi(&[a.clone(), b.clone()]);
                                if two != multi {
                                    return Err(format!("disagree on {a}, {b}"));
                                }
                                count += 1;
                            }
                        }
                    }
                }
                ok(format!("{count} pairs"))
            },
        ),
        check(
            "term-count",
            "the shuffle of words of lengths m, n has sum_k C(m+n-k; m-k, n-k, k) terms with multiplicity",
            || {
                let cases = [
                    (vec![1u32], vec![3u32]),
                    (vec![1, 2], vec![1, 1]),
                    (vec![2, 1, 1], vec![2, 2, 1]),
                ];
                for (a, b) in cases {
                    let a = Composition::new(a);
                    let b = Composition::new(b);
                    let p = qsymm::osh_mul(&a, &b);
                    if p.coefficient_sum() != qsymm::osh_term_count(a.len(), b.len()) {
                        return Err(format!("count off for {a}, {b}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "frobenius-power",
            "the p-th shuffle power of alpha is its Frobenius image modulo p, p in {2,3}, weight <= 4",
            || {
                for p in [2u32, 3] {
                    for n in 1..=4u32 {
                        for alpha in compositions(n) {
                            if !qsymm::check_fp_power(p, &alpha) {
                                return Err(format!("fails for p = {p}, alpha = {alpha}"));
                            }
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "verschiebung-frobenius-adjoint",
            format!("<V_r x, beta> = <x, f_r beta> on basis words to weight {}, r in {{2,3}}", w.min(6)),
            move || {
                for r in [2u32, 3] {
                    for wt in 1..=w.min(6) {
                        if wt % r != 0 {
                            continue;
                        }
                        for gamma in compositions(wt) {
                            let x = NcPoly::z_monomial(&gamma);
                            let vx = verschiebung(r, &x);
                            for beta in compositions(wt / r) {
                                let lhs = qsymm::pairing(&vx, &qsymm::QElem::from_composition(&beta));
                                let rhs = qsymm::pairing(
                                    &x,
                                    &qsymm::QElem::from_composition(&qsymm::frobenius(r, &beta)),
                                );
                                if lhs != rhs {
                                    return Err(format!("fails on r={r}, {gamma}, {beta}"));
                                }
                            }
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "product-coproduct-adjoint",
            format!("<mu(x), alpha (x) beta> = <x, alpha beta> on basis words to weight {}", w.min(5)),
            move || {
                for wt in 1..=w.min(5) {
                    for gamma in compositions(wt) {
                        let x = NcPoly::z_monomial(&gamma);
                        let mx = mu(&x);
                        for wa in 0..=wt {
                            for alpha in compositions(wa) {
                                for beta in compositions(wt - wa) {
                                    let lhs = qsymm::pairing2(&mx, &alpha, &beta);
                                    let rhs = qsymm::pairing(&x, &qsymm::osh_mul(&alpha, &beta));
                                    if lhs != rhs {
                                        return Err(format!("fails on {gamma}, {alpha}, {beta}"));
                                    }
                                }
                            }
                        }
                    }
                }
                ok("")
            },
        ),
    ];
    run_checks("qsymm", checks)
}

// --------------------------------------------------------------- freeness --

fn freeness_suite(cfg: &RunConfig) -> SuiteReport {
    let w = cfg.max_weight;
    let checks = vec![
        check(
            "power-product-coproduct",
            format!("mu(P^f) = sum over splittings f1 + f2 = f of P^f1 (x) P^f2, weight <= {}", w.min(5)),
            move || {
                let mut eng = Engine::new();
                let mut count = 0;
                for n in 1..=w.min(5) {
                    for f in freeness::support_functions(n) {
                        if !freeness::check_pf_coproduct(&mut eng, &f) {
                            return Err(format!("fails for {f}"));
                        }
                        count += 1;
                    }
                }
                ok(format!("{count} support functions"))
            },
        ),
        check(
            "power-product-basis",
            format!("the P^f of weight n form a unimodular square matrix over the monomials, n <= {}", w.min(6)),
            move || {
                let mut eng = Engine::new();
                for n in 1..=w.min(6) {
                    let m = freeness::pf_basis_matrix(&mut eng, n);
                    if !m.det().abs().is_one() {
                        return Err(format!("determinant not a unit at weight {n}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "v-operators",
            "v_n kills products of fewer than n factors and symmetrizes products of exactly n, |f| <= 3, weight <= 5",
            || {
                let mut eng = Engine::new();
                for n in 1..=5u32 {
                    for f in freeness::support_functions(n) {
                        let k = f.size() as usize;
                        let p = freeness::p_power_product(&mut eng, &f);
                        if k < 3 && !freeness::v_operator(3, &p).is_zero() {
                            return Err(format!("v_3 does not kill P^{f}"));
                        }
                        if (1..=3).contains(&k) {
                            let got = freeness::v_operator(k, &p);
                            let want = freeness::symmetrized_primitive_tensor(&mut eng, &f);
                            if got != want {
                                return Err(format!("v_{k} P^{f} is not the symmetrized tensor"));
                            }
                        }
                    }
                }
                ok("")
            },
        ),
        check(
            "integral-basis",
            format!("the span of the P_alpha equals the kernel of the reduced coproduct (Hermite comparison), weight <= {}", w.min(6)),
            move || {
                let mut eng = Engine::new();
                for n in 1..=w.min(6) {
                    if !freeness::lyndon_primitives_span_kernel(&mut eng, n) {
                        return Err(format!("lattices differ at weight {n}"));
                    }
                }
                ok("")
            },
        ),
        check(
            "rank-series",
            "(1-t) prod (1-t^n)^beta_n = 1-2t mod t^9 and the free ranks are 2^(n-1), with beta = (1,1,2,3,6,9,18,30)",
            || ensure(freeness::rank_series_check(8), "series relation fails"),
        ),
        check(
            "weight-reports",
            format!("per-weight summary: coproduct identity, power-product determinant, primitive invariant factors, kernel match, n <= {}", w.min(5)),
            move || {
                let mut eng = Engine::new();
                let reports: Vec<serde_json::Value> =
                    (1..=w.min(5)).map(|n| freeness::weight_report(&mut eng, n)).collect();
                for r in &reports {
                    if r["coproduct_identity"] != true
                        || r["matches_reduced_coproduct_kernel"] != true
                        || r["primitive_invariant_factors"]
                            .as_array()
                            .is_none_or(|fs| fs.iter().any(|f| f != "1"))
                    {
                        return Err(format!("bad report {r}"));
                    }
                }
                ok(serde_json::Value::Array(reports).to_string())
            },
        ),
    ];
    run_checks("freeness", checks)
}

// A tiny shared-state smoke test lives here; the serious uses are in the
// CLI and the acceptance suite.
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_resolve() {
        let cfg = RunConfig { max_weight: 2, truncation: 2, seed: 1 };
        for name in SUITES {
            let report = run_suite(name, &cfg).expect("known suite");
            assert!(report.passed(), "suite {name} failed:\n{}", report.render_text());
        }
        assert!(run_suite("nope", &cfg).is_none());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = RunConfig { max_weight: 3, truncation: 2, seed: 7 };
        let a = run_suite("hopf-axioms", &cfg).unwrap();
        let b = run_suite("hopf-axioms", &cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        exec::set_parallel(false);
        let c = run_suite("hopf-axioms", &cfg).unwrap();
        exec::set_parallel(true);
        assert_eq!(a.to_json(), c.to_json());
    }

    #[test]
    fn json_report_shape() {
        let cfg = RunConfig { max_weight: 2, truncation: 2, seed: 1 };
        let report = run_suite("orders", &cfg).unwrap();
        let v = report.to_json();
        assert_eq!(v["suite"], "orders");
        assert!(v["checks"].as_array().unwrap().len() >= 4);
        for c in v["checks"].as_array().unwrap() {
            assert!(c["status"] == "pass" || c["status"] == "fail");
            assert!(c["statement"].as_str().unwrap().len() > 4);
        }
    }

    #[test]
    fn failure_is_reported_not_panicked() {
        // A deliberately failing check goes through the same machinery.
        let report = run_checks(
            "demo",
            vec![check("always-fails", "one equals two", || {
                ensure(1 == 2, "it does not")
            })],
        );
        assert!(!report.passed());
        assert_eq!(report.checks[0].detail, "it does not");
    }
}

/// One row of the free-Lie-algebra index table.
#[derive(Clone, Debug)]
pub struct IndexRow {
    pub weight: u32,
    pub lyndon_count: usize,
    pub by_lattice: Int,
    pub by_product: Int,
}

impl IndexRow {
    pub fn agree(&self) -> bool {
        self.by_lattice == self.by_product
    }
}

/// The index table for weights `1..=n_max`, each row computed by both
/// routes.
pub fn index_table(n_max: u32) -> Vec<IndexRow> {
    let engine = Mutex::new(Engine::new());
    let rows: Vec<u32> = (1..=n_max).collect();
    exec::map_collect(rows, |n| {
        let mut eng = engine.lock().expect("engine lock");
        IndexRow {
            weight: n,
            lyndon_count: enumerate_lyndon(n).len(),
            by_lattice: eng.index_by_lattice(n),
            by_product: index_by_product(n),
        }
    })
}
