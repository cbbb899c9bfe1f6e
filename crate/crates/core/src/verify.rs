//! The acceptance suite: eight checks over the family, the oracles, the skein
//! algebra and the reference values, each reported as pass, fail or
//! resource-limited.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, Resolution};
use crate::family::{self, builtin, builtin_knots};
use crate::laurent::{Laurent1, Laurent2};
use crate::oracle;
use crate::skein::{self, CrossingSelection, GammaEngine, SkeinConfig, SkeinEngine, SkeinError};
use crate::slicetools;

pub const FAMILY_TIME_LIMIT: Duration = Duration::from_secs(600);
pub const PROPERTY_TIME_LIMIT: Duration = Duration::from_secs(120);
pub const VARIANTS_PER_KNOT: usize = 20;
pub const VARIANT_CROSSING_LIMIT: usize = 16;
pub const SKEIN_IDENTITY_SAMPLES: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// A resource cap was hit before the check could finish.
    Resource(String),
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, why) = match &self.outcome {
            Outcome::Pass => ("PASS", None),
            Outcome::Fail(w) => ("FAIL", Some(w)),
            Outcome::Resource(w) => ("CAP ", Some(w)),
        };
        write!(f, "[{tag}] {}. {} ({:.1} s)", self.id, self.title, self.elapsed.as_secs_f64())?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        if let Some(w) = why {
            write!(f, " -- {w}")?;
        }
        Ok(())
    }
}

/// Process exit code for a finished suite: 0 when everything passed, 3 on
/// any verification failure, otherwise 2 when a resource cap was hit.
pub fn exit_code(results: &[CriterionResult]) -> i32 {
    if results.iter().any(|r| matches!(r.outcome, Outcome::Fail(_))) {
        3
    } else if results.iter().any(|r| matches!(r.outcome, Outcome::Resource(_))) {
        2
    } else {
        0
    }
}

enum Check {
    Fail(String),
    Resource(String),
}

impl From<SkeinError> for Check {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::NodeCap { .. } => Check::Resource(e.to_string()),
            other => Check::Fail(other.to_string()),
        }
    }
}

impl From<oracle::OracleError> for Check {
    fn from(e: oracle::OracleError) -> Self {
        Check::Fail(e.to_string())
    }
}

impl From<slicetools::SliceError> for Check {
    fn from(e: slicetools::SliceError) -> Self {
        match e {
            slicetools::SliceError::Skein(s) => s.into(),
            other => Check::Fail(other.to_string()),
        }
    }
}

type CheckResult = Result<String, Check>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Check> {
    if cond {
        Ok(())
    } else {
        Err(Check::Fail(msg()))
    }
}

fn run_one(id: u8, title: &'static str, limit: Option<Duration>, f: impl FnOnce() -> CheckResult) -> CriterionResult {
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let (outcome, detail) = match res {
        Ok(detail) => match limit {
            Some(l) if elapsed > l => (Outcome::Fail(format!("exceeded the {} s time limit", l.as_secs())), detail),
            _ => (Outcome::Pass, detail),
        },
        Err(Check::Fail(w)) => (Outcome::Fail(w), String::new()),
        Err(Check::Resource(w)) => (Outcome::Resource(w), String::new()),
    };
    CriterionResult { id, title, outcome, detail, elapsed }
}

/// Family members and their invariants, each computed once.
struct FamilyCache {
    engine: SkeinEngine,
    gamma_engine: GammaEngine,
    knots: BTreeMap<i64, Diagram>,
    homflypt: BTreeMap<i64, Laurent2>,
    gamma: BTreeMap<i64, Laurent1>,
}

impl FamilyCache {
    fn new(cfg: &SkeinConfig) -> Self {
        FamilyCache {
            engine: SkeinEngine::new(*cfg),
            gamma_engine: GammaEngine::new(*cfg),
            knots: BTreeMap::new(),
            homflypt: BTreeMap::new(),
            gamma: BTreeMap::new(),
        }
    }

    fn knot(&mut self, n: i64) -> Result<Diagram, Check> {
        if let Some(d) = self.knots.get(&n) {
            return Ok(d.clone());
        }
        let d = family::boundary_knot(n);
        ensure(d.is_knot(), || format!("member {n} has {} components", d.n_components()))?;
        self.knots.insert(n, d.clone());
        Ok(d)
    }

    fn homflypt(&mut self, n: i64) -> Result<Laurent2, Check> {
        if let Some(p) = self.homflypt.get(&n) {
            return Ok(p.clone());
        }
        let d = self.knot(n)?;
        let p = self.engine.homflypt(&d)?;
        self.homflypt.insert(n, p.clone());
        Ok(p)
    }

    fn gamma(&mut self, n: i64) -> Result<Laurent1, Check> {
        if let Some(g) = self.gamma.get(&n) {
            return Ok(g.clone());
        }
        let g = match self.homflypt.get(&n) {
            Some(p) => skein::gamma_of(p)?,
            None => {
                let d = self.knot(n)?;
                self.gamma_engine.gamma(&d)?
            }
        };
        self.gamma.insert(n, g.clone());
        Ok(g)
    }

    fn alexander(&mut self, n: i64) -> Result<Laurent1, Check> {
        Ok(oracle::alexander_wirtinger(&self.knot(n)?)?)
    }
}

fn gamma_span_law(cache: &mut FamilyCache) -> CheckResult {
    let mut spans = Vec::new();
    for n in 0..=3 {
        let span = cache.gamma(n)?.span().map_err(|e| Check::Fail(e.to_string()))?;
        spans.push(span.to_string());
        ensure(span == 2 * n + 4, || format!("member {n} has span {span}, expected {}", 2 * n + 4))?;
    }
    Ok(format!("spans {} for n = 0..3", spans.join(", ")))
}

fn mutual_inequivalence(cache: &mut FamilyCache) -> CheckResult {
    let gammas = (0..=3).map(|n| cache.gamma(n)).collect::<Result<Vec<_>, _>>()?;
    for m in 0..4 {
        for n in m + 1..4 {
            ensure(gammas[m] != gammas[n], || format!("members {m} and {n} share a gamma polynomial"))?;
        }
    }
    Ok("6 distinct pairs".into())
}

fn base_identification(cache: &mut FamilyCache, cfg: &SkeinConfig) -> CheckResult {
    let f = skein::homflypt(&builtin("figure_eight").expect("built-in"), cfg)?;
    ensure(cache.homflypt(0)? == &f * &f, || "member 0 differs from the square of the figure-eight polynomial".into())?;
    Ok("equal".into())
}

fn negative_symmetry(cache: &mut FamilyCache) -> CheckResult {
    for n in 1..=2 {
        ensure(cache.homflypt(n)? == cache.homflypt(-n)?, || format!("members {n} and {} differ", -n))?;
    }
    Ok("n = 1, 2".into())
}

fn ribbon_obstruction(cache: &mut FamilyCache) -> CheckResult {
    let mut dets = Vec::new();
    for n in 0..=3 {
        let det = skein::determinant_of(&cache.alexander(n)?)?;
        ensure(slicetools::is_odd_square(det), || format!("member {n} has determinant {det}"))?;
        dets.push(det.to_string());
    }
    let delta = cache.alexander(0)?;
    let factor = slicetools::fox_milnor_search(&delta, slicetools::DEFAULT_MAX_COEFF)?;
    let want = Laurent1::from_coeffs(&[1, -3, 1]);
    ensure(factor.as_ref() == Some(&want), || format!("factor search returned {factor:?}"))?;
    Ok(format!("determinants {}; factor 1 - 3t + t^2", dets.join(", ")))
}

/// The built-in knots followed by seeded random expansions of each.
pub fn oracle_corpus() -> Vec<Diagram> {
    let mut out = Vec::new();
    for k in builtin_knots() {
        out.push(k.clone());
        let mut seed = 0u64;
        let mut kept = 0;
        while kept < VARIANTS_PER_KNOT {
            let v = k.expand_random(seed, 1 + (seed % 4) as usize);
            seed += 1;
            if v.crossing_count() <= VARIANT_CROSSING_LIMIT {
                out.push(v);
                kept += 1;
            }
        }
    }
    out
}

fn oracle_equivalence(cfg: &SkeinConfig) -> CheckResult {
    let corpus = oracle_corpus();
    let mut engine = SkeinEngine::new(*cfg);
    for d in &corpus {
        let p = engine.homflypt(d)?;
        let jones = skein::jones_of(&p, cfg.jones_convention)?;
        ensure(jones == oracle::kauffman_jones(d)?, || format!("Jones polynomial disagrees on {}", d.to_pd()))?;
        let (_, alexander) = skein::conway_alexander_of(&p)?;
        ensure(alexander == oracle::alexander_wirtinger(d)?, || format!("Alexander polynomial disagrees on {}", d.to_pd()))?;
    }
    Ok(format!("{} diagrams", corpus.len()))
}

fn skein_identity_at(engine: &mut SkeinEngine, d: &Diagram, i: usize) -> Result<bool, Check> {
    let here = engine.homflypt(d)?;
    let switched = engine.homflypt(&d.resolve_crossing(i, Resolution::Switch).map_err(|e| Check::Fail(e.to_string()))?)?;
    let smoothed = engine.homflypt(&d.resolve_crossing(i, Resolution::Smooth).map_err(|e| Check::Fail(e.to_string()))?)?;
    let (plus, minus) = if d.crossings()[i].sign() > 0 { (here, switched) } else { (switched, here) };
    Ok(&plus.mul_monomial(-1, 0, 1) - &minus.mul_monomial(1, 0, 1) == smoothed.mul_monomial(0, 1, 1))
}

fn skein_algebra(cfg: &SkeinConfig) -> CheckResult {
    let mut engine = SkeinEngine::new(*cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool: Vec<Diagram> = family::BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).expect("built-in"))
        .filter(|d| d.crossing_count() > 0)
        .collect();
    for _ in 0..SKEIN_IDENTITY_SAMPLES {
        let base = &pool[rng.gen_range(0..pool.len())];
        let d = base.expand_random(rng.gen(), rng.gen_range(0..4));
        let i = rng.gen_range(0..d.crossing_count());
        ensure(skein_identity_at(&mut engine, &d, i)?, || format!("skein identity fails at crossing {i} of {}", d.to_pd()))?;
    }

    let trefoil = builtin("trefoil_rh").expect("built-in");
    let fig8 = builtin("figure_eight").expect("built-in");
    let pair = [&trefoil, &fig8];
    for (a, i) in pair.iter().zip(0..) {
        for b in &pair[i..] {
            let sum = a.connected_sum(b).map_err(|e| Check::Fail(e.to_string()))?;
            let lhs = engine.homflypt(&sum)?;
            ensure(lhs == &engine.homflypt(a)? * &engine.homflypt(b)?, || "connected sum is not multiplicative".into())?;
        }
    }

    let p = engine.homflypt(&trefoil)?;
    ensure(engine.homflypt(&builtin("trefoil_lh").expect("built-in"))? == p.invert_v(), || "mirror rule fails on the trefoil".into())?;
    ensure(engine.homflypt(&fig8.mirror())? == engine.homflypt(&fig8)?, || "figure-eight polynomial changes under mirror".into())?;

    let variants = [
        SkeinConfig { memo_enabled: false, ..*cfg },
        cfg.with_selection(CrossingSelection::Last),
        SkeinConfig { memo_enabled: false, ..cfg.with_selection(CrossingSelection::Last) },
    ];
    let corpus: Vec<Diagram> = builtin_knots().into_iter().chain(pool.iter().map(|d| d.expand_random(3, 2))).collect();
    for d in &corpus {
        let p = engine.homflypt(d)?;
        for v in &variants {
            ensure(skein::homflypt(d, v)? == p, || format!("strategy dependence on {}", d.to_pd()))?;
        }
    }
    Ok(format!("{SKEIN_IDENTITY_SAMPLES} skein samples, 3 sums, mirror pair, {} strategy checks", corpus.len()))
}

fn reference_values(cfg: &SkeinConfig) -> CheckResult {
    let trefoil = skein::homflypt(&builtin("trefoil_rh").expect("built-in"), cfg)?;
    let want = Laurent2::from_terms(&[(2, 0, 2), (4, 0, -1), (2, 2, 1)]);
    ensure(trefoil == want, || format!("right-handed trefoil gives {trefoil}"))?;
    let fig8 = builtin("figure_eight").expect("built-in");
    let p = skein::homflypt(&fig8, cfg)?;
    let want = Laurent2::from_terms(&[(-2, 0, 1), (0, 0, -1), (2, 0, 1), (0, 2, -1)]);
    ensure(p == want, || format!("figure-eight gives {p}"))?;
    let det = skein::determinant(&fig8, cfg)?;
    ensure(det == 5, || format!("figure-eight determinant is {det}"))?;
    Ok("trefoil, figure-eight, determinant 5".into())
}

pub const TITLES: [&str; 8] = [
    "gamma span law",
    "mutual inequivalence",
    "base identification",
    "negative-twist symmetry",
    "ribbon obstruction consistency",
    "oracle equivalence",
    "skein algebra",
    "reference values",
];

/// Runs the whole suite.
pub fn run_all(cfg: &SkeinConfig) -> Vec<CriterionResult> {
    run_selected(cfg, &[1, 2, 3, 4, 5, 6, 7, 8])
}

/// Runs the listed criteria (numbered from 1) in order.
pub fn run_selected(cfg: &SkeinConfig, ids: &[u8]) -> Vec<CriterionResult> {
    let mut cache = FamilyCache::new(cfg);
    let mut out = Vec::new();
    for &id in ids {
        let title = TITLES[(id - 1) as usize];
        let r = match id {
            1 => run_one(id, title, Some(FAMILY_TIME_LIMIT), || gamma_span_law(&mut cache)),
            2 => run_one(id, title, None, || mutual_inequivalence(&mut cache)),
            3 => run_one(id, title, None, || base_identification(&mut cache, cfg)),
            4 => run_one(id, title, None, || negative_symmetry(&mut cache)),
            5 => run_one(id, title, None, || ribbon_obstruction(&mut cache)),
            6 => run_one(id, title, Some(PROPERTY_TIME_LIMIT), || oracle_equivalence(cfg)),
            7 => run_one(id, title, Some(PROPERTY_TIME_LIMIT), || skein_algebra(cfg)),
            8 => run_one(id, title, None, || reference_values(cfg)),
            _ => panic!("no criterion numbered {id}"),
        };
        out.push(r);
    }
    out
}
