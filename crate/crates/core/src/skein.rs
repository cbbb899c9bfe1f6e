//! HOMFLYPT by memoized skein-tree recursion, and the invariants derived
//! from it.
//!
//! Convention: `v^-1 P(L+) - v P(L-) = z P(L0)`, `P(unknot) = 1`. Each node
//! is simplified, looked up by canonical key, and either recognized as a
//! descending diagram (an unlink) or split at a non-descending crossing.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Resolution};
use crate::laurent::{Laurent1, Laurent2, PolyError};
use crate::oracle::{self, OracleError};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CrossingSelection {
    /// First non-descending crossing along the traversal.
    #[default]
    First,
    /// Last non-descending crossing along the traversal.
    Last,
}

/// Substitution used to read Jones off HOMFLYPT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum JonesConvention {
    /// `v -> t^-1`, `z -> t^(1/2) - t^(-1/2)`.
    #[default]
    Standard,
    /// `v -> t`; yields the Jones polynomial of the mirror image.
    Mirrored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeinConfig {
    pub node_cap: u64,
    pub memo_enabled: bool,
    pub crossing_selection: CrossingSelection,
    pub jones_convention: JonesConvention,
    /// Compare against the oracle module in [`full_report`].
    pub cross_check: bool,
}

impl Default for SkeinConfig {
    fn default() -> Self {
        SkeinConfig {
            node_cap: DEFAULT_NODE_CAP,
            memo_enabled: true,
            crossing_selection: CrossingSelection::First,
            jones_convention: JonesConvention::Standard,
            cross_check: true,
        }
    }
}

impl SkeinConfig {
    pub fn with_node_cap(mut self, cap: u64) -> Self {
        assert!(cap > 0, "node cap must be positive");
        self.node_cap = cap;
        self
    }

    pub fn with_selection(mut self, s: CrossingSelection) -> Self {
        self.crossing_selection = s;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("skein tree exceeded the node cap of {cap} after expanding {nodes} nodes")]
    NodeCap { nodes: u64, cap: u64 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("odd power of v in the z^0 slice of a knot polynomial")]
    OddExponent,
    #[error("{0} from the skein engine disagrees with the oracle")]
    OracleMismatch(&'static str),
    #[error("determinant does not fit in 64 bits")]
    Overflow,
}

/// A skein evaluator whose memo table persists across calls.
pub struct SkeinEngine {
    cfg: SkeinConfig,
    memo: HashMap<Vec<u8>, Laurent2>,
    nodes: u64,
}

fn unlink_value(k: usize) -> Laurent2 {
    Laurent2::from_terms(&[(-1, -1, 1), (1, -1, -1)]).pow(k as u32 - 1)
}

impl SkeinEngine {
    pub fn new(cfg: SkeinConfig) -> Self {
        SkeinEngine { cfg, memo: HashMap::new(), nodes: 0 }
    }

    pub fn config(&self) -> &SkeinConfig {
        &self.cfg
    }

    /// Nodes expanded so far (memo hits excluded).
    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn homflypt(&mut self, d: &Diagram) -> Result<Laurent2, SkeinError> {
        self.nodes = 0;
        self.eval(d)
    }

    fn eval(&mut self, d: &Diagram) -> Result<Laurent2, SkeinError> {
        let d = d.simplify();
        if d.crossing_count() == 0 {
            return Ok(unlink_value(d.n_components()));
        }
        let key = if self.cfg.memo_enabled {
            let key = d.canonical_key();
            if let Some(p) = self.memo.get(&key) {
                return Ok(p.clone());
            }
            Some(key)
        } else {
            None
        };
        self.nodes += 1;
        if self.nodes > self.cfg.node_cap {
            return Err(SkeinError::NodeCap { nodes: self.nodes, cap: self.cfg.node_cap });
        }
        let bad = d.non_descending_crossings();
        let p = match self.cfg.crossing_selection {
            CrossingSelection::First => bad.first(),
            CrossingSelection::Last => bad.last(),
        };
        let value = match p {
            None => unlink_value(d.n_components()),
            Some(&i) => {
                let switched = self.eval(&d.resolve_crossing(i, Resolution::Switch)?)?;
                let smoothed = self.eval(&d.resolve_crossing(i, Resolution::Smooth)?)?;
                if d.crossings()[i].sign() > 0 {
                    // P(L+) = v^2 P(L-) + v z P(L0)
                    &switched.mul_monomial(2, 0, 1) + &smoothed.mul_monomial(1, 1, 1)
                } else {
                    // P(L-) = v^-2 P(L+) - v^-1 z P(L0)
                    &switched.mul_monomial(-2, 0, 1) - &smoothed.mul_monomial(-1, 1, 1)
                }
            }
        };
        if let Some(key) = key {
            self.memo.insert(key, value.clone());
        }
        Ok(value)
    }
}

pub fn homflypt(d: &Diagram, cfg: &SkeinConfig) -> Result<Laurent2, SkeinError> {
    SkeinEngine::new(*cfg).homflypt(d)
}

/// Gamma of knots computed directly, without the rest of HOMFLYPT.
///
/// Switching a self-crossing of a knot `K` and smoothing it yields a two
/// component link `A ∪ B` with linking number `lk`; the lowest `z` term of
/// that link is `v^(2 lk) (v^-1 - v) P0(A) P0(B)`, so in `x = v^2`
/// `Γ(K+) = x Γ(K-) + x^lk (1 - x) Γ(A) Γ(B)`. Only knots ever appear in the
/// recursion.
pub struct GammaEngine {
    cfg: SkeinConfig,
    memo: HashMap<Vec<u8>, Laurent1>,
    nodes: u64,
}

impl GammaEngine {
    pub fn new(cfg: SkeinConfig) -> Self {
        GammaEngine { cfg, memo: HashMap::new(), nodes: 0 }
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    pub fn gamma(&mut self, d: &Diagram) -> Result<Laurent1, SkeinError> {
        require_knot(d)?;
        self.nodes = 0;
        self.eval(d)
    }

    fn eval(&mut self, d: &Diagram) -> Result<Laurent1, SkeinError> {
        let d = d.simplify();
        if d.crossing_count() == 0 {
            return Ok(Laurent1::one());
        }
        let key = if self.cfg.memo_enabled {
            let key = d.canonical_key();
            if let Some(g) = self.memo.get(&key) {
                return Ok(g.clone());
            }
            Some(key)
        } else {
            None
        };
        self.nodes += 1;
        if self.nodes > self.cfg.node_cap {
            return Err(SkeinError::NodeCap { nodes: self.nodes, cap: self.cfg.node_cap });
        }
        let bad = d.non_descending_crossings();
        let p = match self.cfg.crossing_selection {
            CrossingSelection::First => bad.first(),
            CrossingSelection::Last => bad.last(),
        };
        let value = match p {
            None => Laurent1::one(),
            Some(&i) => {
                let switched = self.eval(&d.resolve_crossing(i, Resolution::Switch)?)?;
                let (parts, mixed) = d.resolve_crossing(i, Resolution::Smooth)?.split_components();
                let [a, b] = parts.as_slice() else {
                    return Err(SkeinError::NotAKnot(parts.len()));
                };
                let lk = (mixed / 2) as i32;
                let product = &self.eval(a)? * &self.eval(b)?;
                if d.crossings()[i].sign() > 0 {
                    let factor = Laurent1::from_whole(&[(lk, 1), (lk + 1, -1)]);
                    &switched.shift_half(2) + &(&factor * &product)
                } else {
                    let factor = Laurent1::from_whole(&[(lk - 1, 1), (lk, -1)]);
                    &switched.shift_half(-2) - &(&factor * &product)
                }
            }
        };
        if let Some(key) = key {
            self.memo.insert(key, value.clone());
        }
        Ok(value)
    }
}

/// Gamma by the direct recursion of [`GammaEngine`].
pub fn fast_gamma(d: &Diagram, cfg: &SkeinConfig) -> Result<Laurent1, SkeinError> {
    GammaEngine::new(*cfg).gamma(d)
}

fn require_knot(d: &Diagram) -> Result<(), SkeinError> {
    if d.is_knot() {
        Ok(())
    } else {
        Err(SkeinError::NotAKnot(d.n_components()))
    }
}

/// The z^0 slice of a knot's HOMFLYPT, in `x = v^2`.
pub fn gamma_of(p: &Laurent2) -> Result<Laurent1, SkeinError> {
    let in_x = p.coeff_z(0).compress(2).ok_or(SkeinError::OddExponent)?;
    if !in_x.is_whole_power() {
        return Err(SkeinError::OddExponent);
    }
    Ok(in_x)
}

pub fn jones_of(p: &Laurent2, convention: JonesConvention) -> Result<Laurent1, SkeinError> {
    let v = match convention {
        JonesConvention::Standard => Laurent1::monomial(-1, 1),
        JonesConvention::Mirrored => Laurent1::monomial(1, 1),
    };
    let j = p.specialize(&v, &Laurent1::sqrt_t_difference())?;
    if !j.is_whole_power() {
        return Err(PolyError::HalfInteger.into());
    }
    Ok(j)
}

/// Conway polynomial in `z` and symmetric Alexander polynomial in `t`.
pub fn conway_alexander_of(p: &Laurent2) -> Result<(Laurent1, Laurent1), SkeinError> {
    let one = Laurent1::one();
    let conway = p.specialize(&one, &Laurent1::monomial(1, 1))?;
    let alexander = p.specialize(&one, &Laurent1::sqrt_t_difference())?;
    if !alexander.is_whole_power() {
        return Err(PolyError::HalfInteger.into());
    }
    Ok((conway, alexander))
}

pub fn determinant_of(alexander: &Laurent1) -> Result<u64, SkeinError> {
    oracle::abs_value_at_minus_one(alexander)?.to_u64().ok_or(SkeinError::Overflow)
}

pub fn gamma(d: &Diagram, cfg: &SkeinConfig) -> Result<Laurent1, SkeinError> {
    require_knot(d)?;
    gamma_of(&homflypt(d, cfg)?)
}

pub fn gamma_span(d: &Diagram, cfg: &SkeinConfig) -> Result<i64, SkeinError> {
    Ok(gamma(d, cfg)?.span()?)
}

pub fn jones(d: &Diagram, cfg: &SkeinConfig) -> Result<Laurent1, SkeinError> {
    require_knot(d)?;
    jones_of(&homflypt(d, cfg)?, cfg.jones_convention)
}

pub fn conway_alexander(d: &Diagram, cfg: &SkeinConfig) -> Result<(Laurent1, Laurent1), SkeinError> {
    require_knot(d)?;
    conway_alexander_of(&homflypt(d, cfg)?)
}

pub fn determinant(d: &Diagram, cfg: &SkeinConfig) -> Result<u64, SkeinError> {
    let (_, a) = conway_alexander(d, cfg)?;
    determinant_of(&a)
}

/// Every invariant derived from one HOMFLYPT evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub homflypt: Laurent2,
    pub gamma: Laurent1,
    pub gamma_span: i64,
    pub jones: Laurent1,
    pub conway: Laurent1,
    pub alexander: Laurent1,
    pub determinant: u64,
}

impl InvariantReport {
    pub fn from_homflypt(p: Laurent2, convention: JonesConvention) -> Result<Self, SkeinError> {
        let gamma = gamma_of(&p)?;
        let gamma_span = gamma.span()?;
        let jones = jones_of(&p, convention)?;
        let (conway, alexander) = conway_alexander_of(&p)?;
        let determinant = determinant_of(&alexander)?;
        Ok(InvariantReport { homflypt: p, gamma, gamma_span, jones, conway, alexander, determinant })
    }
}

/// Full report, cross-checked against the oracles when enabled. The bracket
/// oracle only runs within its crossing cap.
pub fn full_report(d: &Diagram, cfg: &SkeinConfig) -> Result<InvariantReport, SkeinError> {
    full_report_with(&mut SkeinEngine::new(*cfg), d)
}

pub fn full_report_with(engine: &mut SkeinEngine, d: &Diagram) -> Result<InvariantReport, SkeinError> {
    require_knot(d)?;
    let cfg = *engine.config();
    let report = InvariantReport::from_homflypt(engine.homflypt(d)?, cfg.jones_convention)?;
    if cfg.cross_check {
        if oracle::alexander_wirtinger(d)? != report.alexander {
            return Err(SkeinError::OracleMismatch("Alexander polynomial"));
        }
        if d.crossing_count() <= oracle::DEFAULT_BRACKET_CAP && oracle::kauffman_jones(d)? != report.jones {
            return Err(SkeinError::OracleMismatch("Jones polynomial"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Side;

    fn trefoil() -> Diagram {
        Diagram::parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap()
    }

    fn fig8() -> Diagram {
        Diagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap()
    }

    fn cfg() -> SkeinConfig {
        SkeinConfig::default()
    }

    #[test]
    fn homflypt_examples() {
        assert_eq!(homflypt(&Diagram::unknot(), &cfg()).unwrap(), Laurent2::one());
        assert_eq!(homflypt(&trefoil(), &cfg()).unwrap(), Laurent2::from_terms(&[(2, 0, 2), (4, 0, -1), (2, 2, 1)]));
        assert_eq!(homflypt(&fig8(), &cfg()).unwrap(), Laurent2::from_terms(&[(-2, 0, 1), (0, 0, -1), (2, 0, 1), (0, 2, -1)]));
        let hopf = trefoil().resolve_crossing(0, Resolution::Smooth).unwrap();
        assert_eq!(homflypt(&hopf, &cfg()).unwrap(), Laurent2::from_terms(&[(1, -1, 1), (3, -1, -1), (1, 1, 1)]));
        assert_eq!(homflypt(&Diagram::unlink(3), &cfg()).unwrap(), unlink_value(3));
    }

    #[test]
    fn unknotting_one_crossing_of_trefoil() {
        let d = trefoil().resolve_crossing(1, Resolution::Switch).unwrap();
        assert_eq!(homflypt(&d, &cfg()).unwrap(), Laurent2::one());
    }

    #[test]
    fn derived_invariants() {
        let r = full_report(&fig8(), &cfg()).unwrap();
        assert_eq!(r.gamma, Laurent1::from_whole(&[(-1, 1), (0, -1), (1, 1)]));
        assert_eq!(r.gamma_span, 2);
        assert_eq!(r.jones, Laurent1::from_whole(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
        assert_eq!(r.conway, Laurent1::from_whole(&[(0, 1), (2, -1)]));
        assert_eq!(r.alexander, Laurent1::from_whole(&[(1, -1), (0, 3), (-1, -1)]));
        assert_eq!(r.determinant, 5);

        let t = full_report(&trefoil(), &cfg()).unwrap();
        assert_eq!(t.jones, Laurent1::from_whole(&[(-4, -1), (-3, 1), (-1, 1)]));
        assert_eq!(t.conway, Laurent1::from_whole(&[(0, 1), (2, 1)]));
        assert_eq!(t.alexander, Laurent1::from_whole(&[(1, 1), (0, -1), (-1, 1)]));
        assert_eq!(t.determinant, 3);

        let u = full_report(&Diagram::unknot(), &cfg()).unwrap();
        assert!(u.homflypt == Laurent2::one() && u.gamma.is_one() && u.jones.is_one());
        assert!(u.conway.is_one() && u.alexander.is_one());
        assert_eq!((u.gamma_span, u.determinant), (0, 1));
    }

    #[test]
    fn connected_sum_gamma() {
        let s = fig8().connected_sum(&fig8()).unwrap();
        assert_eq!(gamma(&s, &cfg()).unwrap(), Laurent1::from_whole(&[(-2, 1), (-1, -2), (0, 3), (1, -2), (2, 1)]));
        assert_eq!(gamma_span(&s, &cfg()).unwrap(), 4);
        assert_eq!(determinant(&s, &cfg()).unwrap(), 25);
    }

    #[test]
    fn knot_only_operations_reject_links() {
        let hopf = trefoil().resolve_crossing(0, Resolution::Smooth).unwrap();
        assert_eq!(gamma(&hopf, &cfg()), Err(SkeinError::NotAKnot(2)));
        assert_eq!(jones(&hopf, &cfg()), Err(SkeinError::NotAKnot(2)));
    }

    #[test]
    fn node_cap_is_enforced() {
        let s = fig8().connected_sum(&fig8()).unwrap();
        let e = homflypt(&s, &cfg().with_node_cap(3)).unwrap_err();
        assert!(matches!(e, SkeinError::NodeCap { cap: 3, .. }), "{e:?}");
    }

    #[test]
    fn memo_and_strategy_do_not_change_results() {
        let d = fig8().insert_kink(Some(2), Side::Right, false).unwrap().connected_sum(&trefoil()).unwrap();
        let base = homflypt(&d, &cfg()).unwrap();
        let no_memo = SkeinConfig { memo_enabled: false, ..cfg() };
        assert_eq!(homflypt(&d, &no_memo).unwrap(), base);
        assert_eq!(homflypt(&d, &cfg().with_selection(CrossingSelection::Last)).unwrap(), base);
    }

    #[test]
    fn mirrored_convention_breaks_oracle_agreement() {
        let c = SkeinConfig { jones_convention: JonesConvention::Mirrored, ..cfg() };
        assert_eq!(full_report(&trefoil(), &c), Err(SkeinError::OracleMismatch("Jones polynomial")));
        // amphichiral knots cannot tell the difference
        assert!(full_report(&fig8(), &c).is_ok());
    }

    #[test]
    fn fast_gamma_matches_homflypt() {
        let mut knots = vec![trefoil(), fig8(), trefoil().mirror(), fig8().connected_sum(&trefoil()).unwrap()];
        knots.push(fig8().expand_random(3, 3));
        knots.push(trefoil().connected_sum(&trefoil()).unwrap().expand_random(5, 2));
        for d in &knots {
            assert_eq!(fast_gamma(d, &cfg()).unwrap(), gamma(d, &cfg()).unwrap(), "{d}");
        }
        assert_eq!(fast_gamma(&trefoil(), &cfg()).unwrap(), Laurent1::from_whole(&[(1, 2), (2, -1)]));
    }

    #[test]
    fn split_components_of_hopf_link() {
        let hopf = trefoil().resolve_crossing(0, Resolution::Smooth).unwrap();
        let (parts, mixed) = hopf.split_components();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.is_knot() && p.simplify().crossing_count() == 0));
        assert_eq!(mixed.abs(), 2);
    }
}
