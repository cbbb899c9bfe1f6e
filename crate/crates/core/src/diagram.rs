//! Oriented link diagrams stored as planar-diagram (PD) codes.
//!
//! Each crossing lists its four arc labels counterclockwise, starting from
//! the incoming under-strand. The sign is kept alongside: for a positive
//! crossing the over-strand runs from position 3 to position 1, for a
//! negative one from 1 to 3. A [`Diagram`] always carries sequential labels
//! `1..=2c` that follow the orientation of each component, so two diagrams
//! built the same way compare equal.
//!
//! Components without crossings cannot be written in PD form; they are
//! counted separately as free loops. The 0-crossing unknot is the empty
//! crossing list with one free loop.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type Label = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("token {index}: {message}")]
    Syntax { index: usize, message: String },
    #[error("token {index}: expected 4 arc labels, found {found}")]
    Arity { index: usize, found: usize },
    #[error("token {index}: arc label {label} occurs {count} time(s), expected 2")]
    Multiplicity { index: usize, label: Label, count: usize },
    #[error("token {index}: orientation along arc {label} is inconsistent")]
    Orientation { index: usize, label: Label },
    #[error("token {index}: rotation system is not planar (V - E + F = {euler}, expected {expected})")]
    NonPlanar { index: usize, euler: i64, expected: i64 },
    #[error("crossing index {0} out of range")]
    BadCrossing(usize),
    #[error("arc {0} does not exist")]
    BadArc(Label),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("arcs {0} and {1} do not share the requested face")]
    NotOnFace(Label, Label),
    #[error("twist slots must use distinct arcs")]
    OverlappingSlots,
    #[error("braid word must be a pure braid on the cut strands")]
    NonPureBraid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    arcs: [Label; 4],
    sign: i8,
}

impl Crossing {
    pub fn new(arcs: [Label; 4], sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        Crossing { arcs, sign }
    }

    pub fn arcs(&self) -> [Label; 4] {
        self.arcs
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    fn over_in(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    fn is_head(&self, p: usize) -> bool {
        p == 0 || p == self.over_in()
    }

    /// The same crossing with over and under exchanged.
    fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        if self.sign > 0 {
            Crossing { arcs: [d, a, b, c], sign: -1 }
        } else {
            Crossing { arcs: [b, c, d, a], sign: 1 }
        }
    }

    fn reversed(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        Crossing { arcs: [c, d, a, b], sign: self.sign }
    }
}

/// Builds a crossing from four corner labels listed counterclockwise and the
/// corner indices where the under- and over-strands enter.
fn local_crossing(corners: [Label; 4], under_in: usize, over_in: usize) -> Crossing {
    let arcs = std::array::from_fn(|i| corners[(under_in + i) % 4]);
    let sign = match (over_in + 4 - under_in) % 4 {
        3 => 1,
        1 => -1,
        _ => unreachable!("over and under strands must be transverse"),
    };
    Crossing { arcs, sign }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    Switch,
    Smooth,
}

/// Braid letter: generator index (between tracks `i` and `i + 1`) and sign.
pub type Letter = (usize, bool);

/// `|n|` full twists on `k` strands, right-handed for `n > 0`.
pub fn full_twist(k: usize, n: i64) -> Vec<Letter> {
    let sweep: Vec<Letter> = (0..k.saturating_sub(1)).map(|i| (i, n > 0)).collect();
    sweep.repeat(k * n.unsigned_abs() as usize)
}

/// A transverse path across parallel strands, listed top to bottom. Each
/// entry gives the arc and its side facing the next strand; consecutive
/// strands share a face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub strands: Vec<(Label, Side)>,
}

/// A place where two strands run side by side across a common face.
///
/// The face is the one on `side` of `first`; `second` must border it too.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub first: Label,
    pub side: Side,
    pub second: Label,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub multiplicity: Check,
    pub orientation: Check,
    pub planarity: Check,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.multiplicity.passed() && self.orientation.passed() && self.planarity.passed()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussToken {
    /// 1-based crossing index.
    pub crossing: usize,
    pub over: bool,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussCode {
    pub components: Vec<Vec<GaussToken>>,
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|t| format!("{}{}{}", if t.over { 'O' } else { 'U' }, t.crossing, if t.sign > 0 { '+' } else { '-' }))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        f.write_str(&comps.join(";"))
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    n_components: usize,
    name: Option<String>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.free_loops == other.free_loops
    }
}

impl Eq for Diagram {}

/// Endpoint `(crossing, position)`.
type End = (usize, usize);

/// Tail and head endpoint of every arc, indexed by label.
struct ArcEnds {
    tail: Vec<End>,
    head: Vec<End>,
}

impl ArcEnds {
    fn of(crossings: &[Crossing]) -> ArcEnds {
        let max = crossings.iter().flat_map(|x| x.arcs).max().unwrap_or(0) as usize;
        let mut tail = vec![(usize::MAX, 0); max + 1];
        let mut head = vec![(usize::MAX, 0); max + 1];
        for (k, x) in crossings.iter().enumerate() {
            for p in 0..4 {
                let l = x.arcs[p] as usize;
                if x.is_head(p) {
                    head[l] = (k, p);
                } else {
                    tail[l] = (k, p);
                }
            }
        }
        ArcEnds { tail, head }
    }
}

/// Minimal union-find over arc labels.
struct Merger {
    parent: Vec<Label>,
}

impl Merger {
    fn new(max: Label) -> Self {
        Merger { parent: (0..=max).collect() }
    }

    fn find(&mut self, mut x: Label) -> Label {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: Label, b: Label) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

impl Diagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `k` free loops, no crossings.
    pub fn unlink(k: usize) -> Self {
        Diagram { crossings: Vec::new(), free_loops: k, n_components: k, name: None }
    }

    /// Builds a diagram from oriented crossings with arbitrary labels,
    /// relabelling arcs sequentially along each component.
    ///
    /// The caller guarantees that every label occurs once as a head and once
    /// as a tail.
    pub(crate) fn from_oriented(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        let ends = ArcEnds::of(&crossings);
        let max = ends.head.len();
        let mut new_label = vec![0 as Label; max];
        let mut next: Label = 1;
        let mut traced = 0;
        for k in 0..crossings.len() {
            for p in 0..4 {
                let start = crossings[k].arcs[p];
                if new_label[start as usize] != 0 {
                    continue;
                }
                traced += 1;
                let mut l = start;
                while new_label[l as usize] == 0 {
                    new_label[l as usize] = next;
                    next += 1;
                    let (hk, hp) = ends.head[l as usize];
                    l = crossings[hk].arcs[(hp + 2) % 4];
                }
            }
        }
        let crossings = crossings
            .into_iter()
            .map(|x| Crossing { arcs: x.arcs.map(|l| new_label[l as usize]), sign: x.sign })
            .collect();
        Diagram { crossings, free_loops, n_components: traced + free_loops, name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn is_knot(&self) -> bool {
        self.n_components == 1
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// Arc labels currently in use, ascending.
    pub fn arcs(&self) -> Vec<Label> {
        (1..=2 * self.crossings.len() as Label).collect()
    }

    fn max_label(&self) -> Label {
        self.crossings.iter().flat_map(|x| x.arcs).max().unwrap_or(0)
    }

    fn ends(&self) -> ArcEnds {
        ArcEnds::of(&self.crossings)
    }

    // -- parsing and printing ------------------------------------------------

    /// Parses `X[a,b,c,d]` tokens separated by commas or whitespace.
    pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
        let codes = tokenize_pd(text)?;
        if codes.is_empty() {
            return Ok(Diagram::unknot());
        }
        check_multiplicity(&codes)?;
        let signs = infer_signs(&codes)?;
        let crossings: Vec<Crossing> =
            codes.iter().zip(&signs).map(|(&arcs, &sign)| Crossing { arcs, sign }).collect();
        check_planarity(&crossings)?;
        Ok(Diagram::from_oriented(crossings, 0))
    }

    pub fn to_pd(&self) -> String {
        self.crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Runs the multiplicity, orientation and Euler checks on this diagram.
    pub fn validate(&self) -> ValidationReport {
        let codes: Vec<[Label; 4]> = self.crossings.iter().map(|x| x.arcs).collect();
        let mut report = validate_codes(&codes);
        if report.multiplicity.passed() {
            // signs are stored, so check them directly instead of re-inferring
            report.orientation = match check_stored_orientation(&self.crossings) {
                Ok(()) => Check::Pass,
                Err(e) => Check::Fail(e.to_string()),
            };
        }
        report
    }

    // -- traversal -----------------------------------------------------------

    /// Per component, the crossings visited in order as `(crossing, entry position)`.
    ///
    /// Components are ordered by their smallest arc label and each one starts
    /// at that label.
    fn walks(&self) -> Vec<Vec<End>> {
        let ends = self.ends();
        let n = 2 * self.crossings.len();
        let mut seen = vec![false; n + 1];
        let mut walks = Vec::new();
        for start in 1..=n as Label {
            if seen[start as usize] {
                continue;
            }
            let mut walk = Vec::new();
            let mut l = start;
            while !seen[l as usize] {
                seen[l as usize] = true;
                let (k, p) = ends.head[l as usize];
                walk.push((k, p));
                l = self.crossings[k].arcs[(p + 2) % 4];
            }
            walks.push(walk);
        }
        walks
    }

    pub fn gauss_code(&self) -> GaussCode {
        let components = self
            .walks()
            .into_iter()
            .map(|w| {
                w.into_iter()
                    .map(|(k, p)| GaussToken { crossing: k + 1, over: p % 2 == 1, sign: self.crossings[k].sign })
                    .collect()
            })
            .collect();
        GaussCode { components }
    }

    /// Crossings whose first visit, walking components in label order, is
    /// an under-pass. Empty exactly when the diagram is descending.
    pub fn non_descending_crossings(&self) -> Vec<usize> {
        let mut seen = vec![false; self.crossings.len()];
        let mut out = Vec::new();
        for walk in self.walks() {
            for (k, p) in walk {
                if !seen[k] {
                    seen[k] = true;
                    if p % 2 == 0 {
                        out.push(k);
                    }
                }
            }
        }
        out
    }

    /// Relabelling-invariant key: lexicographic minimum of the signed Gauss
    /// code over component orders and basepoints, crossings numbered by
    /// first appearance.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(8 + 8 * self.crossings.len());
        key.extend_from_slice(&(self.free_loops as u32).to_be_bytes());
        if self.crossings.is_empty() {
            key.extend_from_slice(b"unlink");
            return key;
        }
        let walks: Vec<Vec<(usize, u32)>> = self
            .walks()
            .into_iter()
            .map(|w| w.into_iter().map(|(k, p)| (k, ((p % 2) as u32) << 1 | (self.crossings[k].sign > 0) as u32)).collect())
            .collect();
        let mut search = KeySearch {
            walks: &walks,
            used: vec![false; walks.len()],
            numbering: vec![u32::MAX; self.crossings.len()],
            best: None,
        };
        search.run(0, &mut Vec::new());
        for t in search.best.expect("at least one component") {
            key.extend_from_slice(&t.to_be_bytes());
        }
        key
    }

    // -- faces ---------------------------------------------------------------

    /// Face index of each dart. Dart `4k + p` departs crossing `k` along the
    /// arc at position `p`; its face is the one on the left of that departure.
    fn face_ids(&self) -> (Vec<usize>, usize) {
        face_ids(&self.crossings)
    }

    /// Each face as the list of `(arc, side)` pairs bounding it.
    pub fn faces(&self) -> Vec<Vec<(Label, Side)>> {
        let (ids, nf) = self.face_ids();
        let ends = self.ends();
        let mut faces = vec![Vec::new(); nf];
        for l in 1..=2 * self.crossings.len() {
            let (tk, tp) = ends.tail[l];
            let (hk, hp) = ends.head[l];
            faces[ids[4 * tk + tp]].push((l as Label, Side::Left));
            faces[ids[4 * hk + hp]].push((l as Label, Side::Right));
        }
        faces
    }

    fn face_of(&self, ids: &[usize], ends: &ArcEnds, arc: Label, side: Side) -> usize {
        let (k, p) = match side {
            Side::Left => ends.tail[arc as usize],
            Side::Right => ends.head[arc as usize],
        };
        ids[4 * k + p]
    }

    /// All slots `(first, side, second)` with `first < second` sharing a face.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        for face in self.faces() {
            for &(a, side) in &face {
                for &(b, _) in &face {
                    if a < b && !out.iter().any(|s: &Slot| s.first == a && s.side == side && s.second == b) {
                        out.push(Slot { first: a, side, second: b });
                    }
                }
            }
        }
        out
    }

    // -- moves ---------------------------------------------------------------

    pub fn mirror(&self) -> Diagram {
        let crossings = self.crossings.iter().map(Crossing::switched).collect();
        Diagram::from_oriented(crossings, self.free_loops)
    }

    pub fn reverse(&self) -> Diagram {
        let crossings = self.crossings.iter().map(Crossing::reversed).collect();
        Diagram::from_oriented(crossings, self.free_loops)
    }

    pub fn resolve_crossing(&self, i: usize, mode: Resolution) -> Result<Diagram, DiagramError> {
        if i >= self.crossings.len() {
            return Err(DiagramError::BadCrossing(i));
        }
        Ok(match mode {
            Resolution::Switch => {
                // arcs keep their labels, so basepoints stay where they were
                let mut d = self.clone();
                d.crossings[i] = d.crossings[i].switched();
                d.name = None;
                d
            }
            Resolution::Smooth => {
                let [a, b, c, d] = self.crossings[i].arcs;
                let (merges, through) = if self.crossings[i].sign > 0 {
                    ([(a, b), (d, c)], [a, d])
                } else {
                    ([(a, d), (b, c)], [a, b])
                };
                self.remove_and_merge(&[i], &merges, &through)
            }
        })
    }

    /// Deletes crossings, glues arcs, and turns any glued strand that no
    /// longer meets a crossing into a free loop.
    fn remove_and_merge(&self, removed: &[usize], merges: &[(Label, Label)], through: &[Label]) -> Diagram {
        let mut uf = Merger::new(self.max_label());
        for &(a, b) in merges {
            uf.union(a, b);
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(k, _)| !removed.contains(k))
            .map(|(_, x)| Crossing { arcs: x.arcs.map(|l| uf.find(l)), sign: x.sign })
            .collect();
        let mut roots: Vec<Label> = through.iter().map(|&l| uf.find(l)).collect();
        roots.sort_unstable();
        roots.dedup();
        let vanished = roots.iter().filter(|&&r| !crossings.iter().any(|x| x.arcs.contains(&r))).count();
        Diagram::from_oriented(crossings, self.free_loops + vanished)
    }

    /// Lowest-indexed crossing carrying a monogon, with the loop's first position.
    fn find_kink(&self) -> Option<(usize, usize)> {
        self.crossings
            .iter()
            .enumerate()
            .find_map(|(k, x)| (0..4).find(|&p| x.arcs[p] == x.arcs[(p + 1) % 4]).map(|p| (k, p)))
    }

    fn remove_kink(&self, k: usize, p: usize) -> Diagram {
        let arcs = self.crossings[k].arcs;
        let (x, y) = (arcs[(p + 2) % 4], arcs[(p + 3) % 4]);
        self.remove_and_merge(&[k], &[(x, y)], &[x])
    }

    /// Lowest-indexed bigon where one strand passes over at both corners,
    /// as `(k1, q1, k2, p2)`: the shared edge leaves crossing `k1` at
    /// position `q1` and enters `k2` at `p2`.
    fn find_clasp(&self) -> Option<(usize, usize, usize, usize)> {
        let (ids, nf) = self.face_ids();
        let mut darts_of = vec![Vec::new(); nf];
        for (dart, &f) in ids.iter().enumerate() {
            darts_of[f].push(dart);
        }
        let other = other_end_table(&self.crossings);
        let mut best: Option<((usize, usize), (usize, usize, usize, usize))> = None;
        for darts in darts_of.iter().filter(|d| d.len() == 2) {
            let (k1, q1) = (darts[0] / 4, darts[0] % 4);
            let (k2, p2) = other[darts[0]];
            if k1 == k2 || q1 % 2 != p2 % 2 {
                continue;
            }
            let order = (k1.min(k2), k1.max(k2));
            if best.is_none_or(|(b, _)| order < b) {
                best = Some((order, (k1, q1, k2, p2)));
            }
        }
        best.map(|(_, c)| c)
    }

    fn remove_clasp(&self, k1: usize, q1: usize, k2: usize, p2: usize) -> Diagram {
        let x1 = self.crossings[k1].arcs;
        let x2 = self.crossings[k2].arcs;
        let e = x1[q1];
        // the second bigon edge leaves k2 just clockwise of e and returns to k1
        let (r2, r1) = ((p2 + 3) % 4, (q1 + 1) % 4);
        let f = x2[r2];
        let merges = [(x1[(q1 + 2) % 4], e), (e, x2[(p2 + 2) % 4]), (x2[(r2 + 2) % 4], f), (f, x1[(r1 + 2) % 4])];
        self.remove_and_merge(&[k1, k2], &merges, &[e, f])
    }

    /// Greedy kink and clasp removal to a fixpoint, lowest index first.
    pub fn simplify(&self) -> Diagram {
        let mut d = self.clone();
        loop {
            if let Some((k, p)) = d.find_kink() {
                d = d.remove_kink(k, p);
            } else if let Some((k1, q1, k2, p2)) = d.find_clasp() {
                d = d.remove_clasp(k1, q1, k2, p2);
            } else {
                break;
            }
        }
        d.name = self.name.clone();
        d
    }

    /// Component index of every arc label; traced components come first,
    /// numbered in order of their smallest label.
    fn component_of_labels(&self) -> Vec<usize> {
        let ends = self.ends();
        let mut comp = vec![usize::MAX; self.max_label() as usize + 1];
        let mut next = 0;
        for start in 1..comp.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut l = start as Label;
            while comp[l as usize] == usize::MAX {
                comp[l as usize] = next;
                let (hk, hp) = ends.head[l as usize];
                l = self.crossings[hk].arcs[(hp + 2) % 4];
            }
            next += 1;
        }
        comp
    }

    /// Every component as its own knot diagram, with the sum of the signs
    /// of crossings between different components (twice the total linking
    /// number).
    pub fn split_components(&self) -> (Vec<Diagram>, i64) {
        let comp = self.component_of_labels();
        let traced = self.n_components - self.free_loops;
        let mut mixed = 0i64;
        for x in &self.crossings {
            if comp[x.arcs[0] as usize] != comp[x.arcs[1] as usize] {
                mixed += x.sign as i64;
            }
        }
        let mut out = Vec::with_capacity(self.n_components);
        for c in 0..traced {
            let mut removed = Vec::new();
            let mut merges = Vec::new();
            let mut through = Vec::new();
            for (k, x) in self.crossings.iter().enumerate() {
                let (under, over) = (comp[x.arcs[0] as usize] == c, comp[x.arcs[1] as usize] == c);
                if under && over {
                    continue;
                }
                removed.push(k);
                if under {
                    merges.push((x.arcs[0], x.arcs[2]));
                    through.push(x.arcs[0]);
                } else if over {
                    merges.push((x.arcs[1], x.arcs[3]));
                    through.push(x.arcs[1]);
                }
            }
            let mut d = self.remove_and_merge(&removed, &merges, &through);
            d.free_loops = d.free_loops.saturating_sub(self.free_loops);
            d.n_components = 1;
            out.push(d);
        }
        out.extend((0..self.free_loops).map(|_| Diagram::unknot()));
        (out, mixed)
    }

    /// The (2,1)-cable of a knot: the blackboard 2-parallel, with `1 - 2w`
    /// half twists added on the first arc so that the pattern has one half
    /// twist against the zero framing (`w` is the writhe).
    pub fn cable_2_1(&self) -> Result<Diagram, DiagramError> {
        if self.n_components != 1 {
            return Err(DiagramError::NotAKnot(self.n_components));
        }
        if self.crossings.is_empty() {
            return Ok(Diagram::unknot());
        }
        let max = self.max_label();
        // sub-arc labels: left and right copy of each arc at its tail, and
        // at its head (these differ only on arc 1, which carries the twists)
        let left = |l: Label| 2 * l;
        let right = |l: Label| 2 * l + 1;
        let mut fresh = 2 * max + 2;
        let mut next = || {
            fresh += 1;
            fresh
        };
        let (head_left, head_right) = (next(), next());
        let sub = |l: Label, at_head: bool, left_side: bool| match (l == 1 && at_head, left_side) {
            (true, true) => head_left,
            (true, false) => head_right,
            (false, true) => left(l),
            (false, false) => right(l),
        };
        let mut out = Vec::with_capacity(4 * self.crossings.len());
        for x in &self.crossings {
            // (first, second) copies at each corner, counterclockwise
            let corner: [(Label, Label); 4] = std::array::from_fn(|p| {
                let l = x.arcs[p];
                let head = x.is_head(p);
                let (lt, rt) = (sub(l, head, true), sub(l, head, false));
                if head { (lt, rt) } else { (rt, lt) }
            });
            let (hp, hm, vm, vp) = (next(), next(), next(), next());
            let s = x.sign;
            out.push(Crossing::new([corner[0].0, vm, hp, corner[3].1], s));
            out.push(Crossing::new([hp, vp, corner[2].1, corner[3].0], s));
            out.push(Crossing::new([corner[0].1, corner[1].0, hm, vm], s));
            out.push(Crossing::new([hm, corner[1].1, corner[2].0, vp], s));
        }
        let twist = 1 - 2 * self.writhe();
        let (mut north, mut south) = (left(1), right(1));
        for i in 0..twist.unsigned_abs() {
            let last = i + 1 == twist.unsigned_abs();
            let (ne, se) = if last { (head_left, head_right) } else { (next(), next()) };
            if twist > 0 {
                out.push(Crossing::new([south, se, ne, north], 1));
            } else {
                out.push(Crossing::new([north, south, se, ne], -1));
            }
            (north, south) = (ne, se);
        }
        Ok(Diagram::from_oriented(out, 0))
    }

    /// Whether the two slot strands cross the shared face in the same
    /// direction.
    pub fn slot_is_parallel(&self, slot: &Slot) -> Result<bool, DiagramError> {
        let (ids, _) = self.face_ids();
        let ends = self.ends();
        let n = self.crossings.len() as Label;
        for l in [slot.first, slot.second] {
            if l == 0 || l > 2 * n {
                return Err(DiagramError::BadArc(l));
            }
        }
        let face = self.face_of(&ids, &ends, slot.first, slot.side);
        let second_side = if self.face_of(&ids, &ends, slot.second, Side::Left) == face {
            Side::Left
        } else if self.face_of(&ids, &ends, slot.second, Side::Right) == face {
            Side::Right
        } else {
            return Err(DiagramError::NotOnFace(slot.first, slot.second));
        };
        Ok((slot.side == Side::Right) == (second_side == Side::Left))
    }

    /// Inserts a 2-strand braid word at a slot. `true` letters are crossings
    /// where the strand heading from the first arc's side down to the second
    /// passes over; constant words give twist boxes, `[true, false]` is an
    /// inverse clasp removal.
    pub fn insert_braid(&self, slot: &Slot, word: &[bool]) -> Result<Diagram, DiagramError> {
        self.insert_braids(&[(*slot, word.to_vec())])
    }

    /// Inserts several braid words at once; slot geometry is read off `self`.
    pub fn insert_braids(&self, plan: &[(Slot, Vec<bool>)]) -> Result<Diagram, DiagramError> {
        let plan = plan
            .iter()
            .map(|(s, w)| Ok((self.slot_cut(s)?, w.iter().map(|&b| (0, b)).collect())))
            .collect::<Result<Vec<(Cut, Vec<Letter>)>, DiagramError>>()?;
        self.insert_cut_braids(&plan)
    }

    /// The two-strand cut across a slot.
    pub fn slot_cut(&self, slot: &Slot) -> Result<Cut, DiagramError> {
        let (ids, _) = self.face_ids();
        let ends = self.ends();
        self.check_arc(slot.first)?;
        self.check_arc(slot.second)?;
        let face = self.face_of(&ids, &ends, slot.first, slot.side);
        let facing = if self.face_of(&ids, &ends, slot.second, Side::Left) == face {
            Side::Left
        } else if self.face_of(&ids, &ends, slot.second, Side::Right) == face {
            Side::Right
        } else {
            return Err(DiagramError::NotOnFace(slot.first, slot.second));
        };
        Ok(Cut { strands: vec![(slot.first, slot.side), (slot.second, facing.flip())] })
    }

    fn check_arc(&self, l: Label) -> Result<(), DiagramError> {
        if l == 0 || l > 2 * self.crossings.len() as Label {
            Err(DiagramError::BadArc(l))
        } else {
            Ok(())
        }
    }

    /// All cuts across `k` distinct strands, each listed once.
    pub fn cuts(&self, k: usize) -> Vec<Cut> {
        let (ids, _) = self.face_ids();
        let ends = self.ends();
        let arcs = self.arcs();
        let mut out = Vec::new();
        let mut path: Vec<(Label, Side)> = Vec::new();
        fn grow(d: &Diagram, ids: &[usize], ends: &ArcEnds, arcs: &[Label], k: usize, path: &mut Vec<(Label, Side)>, out: &mut Vec<Cut>) {
            if path.len() == k {
                if k < 2 || path[0].0 < path[k - 1].0 {
                    out.push(Cut { strands: path.clone() });
                }
                return;
            }
            let below = path.last().map(|&(l, s)| d.face_of(ids, ends, l, s));
            for &l in arcs {
                if path.iter().any(|&(m, _)| m == l) {
                    continue;
                }
                for side in [Side::Left, Side::Right] {
                    if below.is_some_and(|f| d.face_of(ids, ends, l, side.flip()) != f) {
                        continue;
                    }
                    path.push((l, side));
                    grow(d, ids, ends, arcs, k, path, out);
                    path.pop();
                }
            }
        }
        grow(self, &ids, &ends, &arcs, k, &mut path, &mut out);
        out
    }

    /// Inserts pure braids across cuts; cut geometry is read off `self`.
    pub fn insert_cut_braids(&self, plan: &[(Cut, Vec<Letter>)]) -> Result<Diagram, DiagramError> {
        let mut used: Vec<Label> = plan.iter().filter(|(_, w)| !w.is_empty()).flat_map(|(c, _)| c.strands.iter().map(|s| s.0)).collect();
        let total = used.len();
        used.sort_unstable();
        used.dedup();
        if used.len() != total {
            return Err(DiagramError::OverlappingSlots);
        }
        let (ids, _) = self.face_ids();
        let ends = self.ends();
        let mut crossings = self.crossings.clone();
        let mut fresh = self.max_label();
        let mut next = || {
            fresh += 1;
            fresh
        };
        let mut joins: Vec<(Label, Label)> = Vec::new();
        for (cut, word) in plan {
            if word.is_empty() {
                continue;
            }
            let k = cut.strands.len();
            for (i, &(l, side)) in cut.strands.iter().enumerate() {
                self.check_arc(l)?;
                if i + 1 < k {
                    let (m, t) = cut.strands[i + 1];
                    self.check_arc(m)?;
                    if self.face_of(&ids, &ends, l, side) != self.face_of(&ids, &ends, m, t.flip()) {
                        return Err(DiagramError::NotOnFace(l, m));
                    }
                }
            }
            if word.iter().any(|&(p, _)| p + 1 >= k) {
                return Err(DiagramError::NonPureBraid);
            }
            // local frame: strands run west-east, the cut runs top to bottom
            let ltr: Vec<bool> = cut.strands.iter().map(|&(_, s)| s == Side::Right).collect();
            let west: Vec<Label> = (0..k).map(|_| next()).collect();
            let mut cur = west.clone();
            let mut on_track: Vec<usize> = (0..k).collect();
            for &(p, positive) in word {
                let (ne, se) = (next(), next());
                // corners counterclockwise: NW, SW, SE, NE
                let corners = [cur[p], cur[p + 1], se, ne];
                let (s1, s2) = (on_track[p], on_track[p + 1]);
                let s1_in = if ltr[s1] { 0 } else { 2 };
                let s2_in = if ltr[s2] { 1 } else { 3 };
                let (under_in, over_in) = if positive { (s2_in, s1_in) } else { (s1_in, s2_in) };
                crossings.push(local_crossing(corners, under_in, over_in));
                cur[p] = ne;
                cur[p + 1] = se;
                on_track.swap(p, p + 1);
            }
            if on_track.iter().enumerate().any(|(i, &s)| i != s) {
                return Err(DiagramError::NonPureBraid);
            }
            for (i, &(x, _)) in cut.strands.iter().enumerate() {
                let x_head = next();
                let (hk, hp) = ends.head[x as usize];
                crossings[hk].arcs[hp] = x_head;
                let (w, e) = if ltr[i] { (x, x_head) } else { (x_head, x) };
                joins.push((west[i], w));
                joins.push((cur[i], e));
            }
        }
        let mut uf = Merger::new(fresh);
        for (a, b) in joins {
            uf.union(a, b);
        }
        let crossings: Vec<Crossing> = crossings.into_iter().map(|x| Crossing { arcs: x.arcs.map(|l| uf.find(l)), sign: x.sign }).collect();
        check_planarity(&crossings)?;
        Ok(Diagram::from_oriented(crossings, self.free_loops))
    }

    /// `|n|` full twists of the two slot strands, right-handed for `n > 0`.
    pub fn insert_full_twists(&self, slot: &Slot, n: i64) -> Result<Diagram, DiagramError> {
        self.insert_braid(slot, &vec![n > 0; 2 * n.unsigned_abs() as usize])
    }

    /// Adds a kink on `arc` (or on a free loop when `arc` is `None`).
    pub fn insert_kink(&self, arc: Option<Label>, side: Side, first_pass_over: bool) -> Result<Diagram, DiagramError> {
        let mut crossings = self.crossings.clone();
        let mut free_loops = self.free_loops;
        let fresh = self.max_label();
        let loop_label = fresh + 1;
        let (x_in, x_out) = match arc {
            Some(x) => {
                if x == 0 || x > 2 * self.crossings.len() as Label {
                    return Err(DiagramError::BadArc(x));
                }
                let (hk, hp) = self.ends().head[x as usize];
                crossings[hk].arcs[hp] = fresh + 2;
                (x, fresh + 2)
            }
            None => {
                if free_loops == 0 {
                    return Err(DiagramError::BadArc(0));
                }
                free_loops -= 1;
                (fresh + 2, fresh + 2)
            }
        };
        // corners counterclockwise: NE, NW, SW, SE
        let (corners, pass1_in, pass2_in) = match side {
            Side::Left => ([loop_label, loop_label, x_in, x_out], 2, 1),
            Side::Right => ([x_out, x_in, loop_label, loop_label], 1, 2),
        };
        let (under_in, over_in) = if first_pass_over { (pass2_in, pass1_in) } else { (pass1_in, pass2_in) };
        crossings.push(local_crossing(corners, under_in, over_in));
        Ok(Diagram::from_oriented(crossings, free_loops))
    }

    /// Applies `steps` random inverse kink/clasp moves, seeded.
    pub fn expand_random(&self, seed: u64, steps: usize) -> Diagram {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = self.clone();
        for _ in 0..steps {
            let n = d.crossings.len() as Label;
            let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
            let over: bool = rng.gen_bool(0.5);
            if n == 0 {
                d = d.insert_kink(None, side, over).expect("free loop present");
                continue;
            }
            if rng.gen_bool(0.5) {
                let arc = rng.gen_range(1..=2 * n);
                d = d.insert_kink(Some(arc), side, over).expect("valid arc");
            } else {
                let faces = d.faces();
                let face = &faces[rng.gen_range(0..faces.len())];
                let mut arcs: Vec<Label> = face.iter().map(|&(l, _)| l).collect();
                arcs.sort_unstable();
                arcs.dedup();
                if arcs.len() < 2 {
                    let arc = rng.gen_range(1..=2 * n);
                    d = d.insert_kink(Some(arc), side, over).expect("valid arc");
                    continue;
                }
                let i = rng.gen_range(0..face.len());
                let (first, side) = face[i];
                let others: Vec<Label> = arcs.iter().copied().filter(|&l| l != first).collect();
                let second = others[rng.gen_range(0..others.len())];
                let slot = Slot { first, side, second };
                d = d.insert_braid(&slot, &[over, !over]).expect("slot taken from a face");
            }
        }
        d.name = self.name.clone();
        d
    }

    /// Splices two knots along their first arcs.
    pub fn connected_sum(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        for d in [self, other] {
            if !d.is_knot() {
                return Err(DiagramError::NotAKnot(d.n_components));
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        let off = self.max_label();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing { arcs: x.arcs.map(|l| l + off), sign: x.sign }));
        let ends = ArcEnds::of(&crossings);
        let (e1, e2) = (1, 1 + off);
        let (h1k, h1p) = ends.head[e1 as usize];
        let (h2k, h2p) = ends.head[e2 as usize];
        crossings[h1k].arcs[h1p] = e2;
        crossings[h2k].arcs[h2p] = e1;
        Ok(Diagram::from_oriented(crossings, 0))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

struct KeySearch<'a> {
    walks: &'a [Vec<(usize, u32)>],
    used: Vec<bool>,
    numbering: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl KeySearch<'_> {
    const SEP: u32 = u32::MAX;

    fn encode(&self, c: usize, rot: usize, next: u32, out: &mut Vec<u32>, fresh: &mut Vec<usize>) {
        let w = &self.walks[c];
        let mut next = next;
        let mut local: Vec<(usize, u32)> = Vec::new();
        for i in 0..w.len() {
            let (k, bits) = w[(rot + i) % w.len()];
            let num = if self.numbering[k] != u32::MAX {
                self.numbering[k]
            } else if let Some(&(_, n)) = local.iter().find(|(kk, _)| *kk == k) {
                n
            } else {
                local.push((k, next));
                fresh.push(k);
                next += 1;
                next - 1
            };
            out.push(num << 2 | bits);
        }
        out.push(Self::SEP);
    }

    fn run(&mut self, next: u32, prefix: &mut Vec<u32>) {
        if self.used.iter().all(|&u| u) {
            if self.best.as_ref().is_none_or(|b| &**prefix < b.as_slice()) {
                self.best = Some(prefix.clone());
            }
            return;
        }
        let mut best_seg: Option<Vec<u32>> = None;
        let mut ties: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for c in 0..self.walks.len() {
            if self.used[c] {
                continue;
            }
            for rot in 0..self.walks[c].len() {
                let mut seg = Vec::with_capacity(self.walks[c].len() + 1);
                let mut fresh = Vec::new();
                self.encode(c, rot, next, &mut seg, &mut fresh);
                match best_seg.as_ref().map(|b| seg.cmp(b)) {
                    Some(std::cmp::Ordering::Greater) => {}
                    Some(std::cmp::Ordering::Equal) => ties.push((c, rot, fresh)),
                    _ => {
                        best_seg = Some(seg);
                        ties.clear();
                        ties.push((c, rot, fresh));
                    }
                }
            }
        }
        let seg = best_seg.expect("an unused component");
        let len = prefix.len();
        prefix.extend_from_slice(&seg);
        for (c, _, fresh) in ties {
            self.used[c] = true;
            for (i, &k) in fresh.iter().enumerate() {
                self.numbering[k] = next + i as u32;
            }
            self.run(next + fresh.len() as u32, prefix);
            for &k in &fresh {
                self.numbering[k] = u32::MAX;
            }
            self.used[c] = false;
        }
        prefix.truncate(len);
    }
}

fn tokenize_pd(text: &str) -> Result<Vec<[Label; 4]>, DiagramError> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_sep = |i: &mut usize| {
        while *i < chars.len() && (chars[*i].is_whitespace() || chars[*i] == ',') {
            *i += 1;
        }
    };
    loop {
        skip_sep(&mut i);
        if i >= chars.len() {
            break;
        }
        let index = out.len();
        let syntax = |message: &str| DiagramError::Syntax { index, message: message.to_string() };
        if chars[i] != 'X' {
            return Err(syntax("expected 'X['"));
        }
        i += 1;
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i >= chars.len() || chars[i] != '[' {
            return Err(syntax("expected '[' after 'X'"));
        }
        i += 1;
        let close = chars[i..].iter().position(|&c| c == ']').ok_or_else(|| syntax("missing ']'"))? + i;
        let body: String = chars[i..close].iter().collect();
        i = close + 1;
        let mut labels = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(syntax("empty arc label"));
            }
            let l: Label = part.parse().map_err(|_| syntax(&format!("bad arc label '{part}'")))?;
            if l == 0 {
                return Err(syntax("arc labels must be positive"));
            }
            labels.push(l);
        }
        if labels.len() != 4 {
            return Err(DiagramError::Arity { index, found: labels.len() });
        }
        out.push([labels[0], labels[1], labels[2], labels[3]]);
    }
    Ok(out)
}

fn check_multiplicity(codes: &[[Label; 4]]) -> Result<(), DiagramError> {
    let mut seen: std::collections::BTreeMap<Label, (usize, usize)> = Default::default();
    for (k, c) in codes.iter().enumerate() {
        for &l in c {
            seen.entry(l).or_insert((0, k)).0 += 1;
        }
    }
    match seen.into_iter().find(|(_, (n, _))| *n != 2) {
        Some((label, (count, index))) => Err(DiagramError::Multiplicity { index, label, count }),
        None => Ok(()),
    }
}

/// Recovers crossing signs from head/tail consistency along every arc.
fn infer_signs(codes: &[[Label; 4]]) -> Result<Vec<i8>, DiagramError> {
    let max = codes.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut occ: Vec<Vec<End>> = vec![Vec::new(); max + 1];
    for (k, c) in codes.iter().enumerate() {
        for (p, &l) in c.iter().enumerate() {
            occ[l as usize].push((k, p));
        }
    }
    let mut signs = vec![0i8; codes.len()];
    // Some(true) = head, Some(false) = tail, None = undetermined
    let role = |signs: &[i8], (k, p): End| -> Option<bool> {
        match p {
            0 => Some(true),
            2 => Some(false),
            _ if signs[k] == 0 => None,
            1 => Some(signs[k] < 0),
            _ => Some(signs[k] > 0),
        }
    };
    loop {
        let mut changed = false;
        for (l, ends) in occ.iter().enumerate() {
            if ends.len() != 2 {
                continue;
            }
            let (e1, e2) = (ends[0], ends[1]);
            match (role(&signs, e1), role(&signs, e2)) {
                (Some(r1), Some(r2)) if r1 == r2 => {
                    return Err(DiagramError::Orientation { index: e1.0.max(e2.0), label: l as Label });
                }
                (Some(r), None) | (None, Some(r)) => {
                    let (k, p) = if role(&signs, e1).is_none() { e1 } else { e2 };
                    // the undetermined end must take the opposite role
                    let head = !r;
                    signs[k] = if (p == 3) == head { 1 } else { -1 };
                    changed = true;
                }
                _ => {}
            }
        }
        if changed {
            continue;
        }
        match signs.iter().position(|&s| s == 0) {
            None => break,
            Some(k) => {
                // free-standing over-strands: labels assumed to increase along the strand
                let [_, b, _, d] = codes[k];
                signs[k] = if b == d + 1 || d > b + 1 { 1 } else { -1 };
            }
        }
    }
    Ok(signs)
}

fn check_stored_orientation(crossings: &[Crossing]) -> Result<(), DiagramError> {
    let max = crossings.iter().flat_map(|x| x.arcs).max().unwrap_or(0) as usize;
    let mut heads = vec![0usize; max + 1];
    let mut tails = vec![0usize; max + 1];
    for (k, x) in crossings.iter().enumerate() {
        for p in 0..4 {
            let l = x.arcs[p] as usize;
            if x.is_head(p) {
                heads[l] += 1;
                if heads[l] > 1 {
                    return Err(DiagramError::Orientation { index: k, label: l as Label });
                }
            } else {
                tails[l] += 1;
                if tails[l] > 1 {
                    return Err(DiagramError::Orientation { index: k, label: l as Label });
                }
            }
        }
    }
    Ok(())
}

/// For each endpoint `4k + p`, the other endpoint of the same arc.
fn other_end_table(crossings: &[Crossing]) -> Vec<End> {
    let max = crossings.iter().flat_map(|x| x.arcs).max().unwrap_or(0) as usize;
    let mut first: Vec<Option<End>> = vec![None; max + 1];
    let mut other = vec![(usize::MAX, 0); 4 * crossings.len()];
    for (k, x) in crossings.iter().enumerate() {
        for p in 0..4 {
            let l = x.arcs[p] as usize;
            match first[l] {
                None => first[l] = Some((k, p)),
                Some((k0, p0)) => {
                    other[4 * k + p] = (k0, p0);
                    other[4 * k0 + p0] = (k, p);
                }
            }
        }
    }
    other
}

fn face_ids(crossings: &[Crossing]) -> (Vec<usize>, usize) {
    let other = other_end_table(crossings);
    let n = 4 * crossings.len();
    let mut ids = vec![usize::MAX; n];
    let mut nf = 0;
    for start in 0..n {
        if ids[start] != usize::MAX {
            continue;
        }
        let mut dart = start;
        while ids[dart] == usize::MAX {
            ids[dart] = nf;
            let (k, p) = other[dart];
            dart = 4 * k + (p + 3) % 4;
        }
        nf += 1;
    }
    (ids, nf)
}

fn check_planarity(crossings: &[Crossing]) -> Result<(), DiagramError> {
    let (v, f, comps) = euler_data(crossings);
    let euler = v - 2 * v + f;
    if euler != 2 * comps {
        return Err(DiagramError::NonPlanar { index: crossings.len().saturating_sub(1), euler, expected: 2 * comps });
    }
    Ok(())
}

/// `(V, F, connected components)` of the projection graph.
fn euler_data(crossings: &[Crossing]) -> (i64, i64, i64) {
    let (_, nf) = face_ids(crossings);
    let other = other_end_table(crossings);
    let n = crossings.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (e, &(k, _)) in other.iter().enumerate() {
        let (a, b) = (find(&mut parent, e / 4), find(&mut parent, k));
        parent[a] = b;
    }
    let comps = (0..n).filter(|&i| find(&mut parent, i) == i).count();
    (n as i64, nf as i64, comps as i64)
}

/// Validation of raw PD arrays, reporting every check separately.
pub fn validate_codes(codes: &[[Label; 4]]) -> ValidationReport {
    let multiplicity = match check_multiplicity(codes) {
        Ok(()) => Check::Pass,
        Err(e) => Check::Fail(e.to_string()),
    };
    if !multiplicity.passed() {
        let skipped = Check::Fail("skipped: label multiplicity failed".into());
        return ValidationReport { multiplicity, orientation: skipped.clone(), planarity: skipped };
    }
    let (orientation, planarity) = match infer_signs(codes) {
        Err(e) => (Check::Fail(e.to_string()), Check::Fail("skipped: orientation failed".into())),
        Ok(signs) => {
            let crossings: Vec<Crossing> =
                codes.iter().zip(&signs).map(|(&arcs, &sign)| Crossing { arcs, sign }).collect();
            let planarity = match check_planarity(&crossings) {
                Ok(()) => Check::Pass,
                Err(e) => Check::Fail(e.to_string()),
            };
            (Check::Pass, planarity)
        }
    };
    ValidationReport { multiplicity, orientation, planarity }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG8: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";

    fn fig8() -> Diagram {
        Diagram::parse_pd(FIG8).unwrap()
    }

    fn trefoil() -> Diagram {
        Diagram::parse_pd(TREFOIL).unwrap()
    }

    #[test]
    fn parses_standard_codes() {
        let d = fig8();
        assert_eq!(d.crossing_count(), 4);
        assert!(d.is_knot());
        assert!(d.validate().all_passed());
        assert_eq!(trefoil().n_components(), 1);
    }

    #[test]
    fn empty_text_is_unknot() {
        let d = Diagram::parse_pd("  ").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.n_components(), 1);
    }

    #[test]
    fn parse_errors_carry_token_index() {
        assert_eq!(Diagram::parse_pd("X[1,2,3]"), Err(DiagramError::Arity { index: 0, found: 3 }));
        assert!(matches!(
            Diagram::parse_pd("X[1,2,2,1], X[3,4"),
            Err(DiagramError::Syntax { index: 1, .. })
        ));
        assert!(matches!(Diagram::parse_pd("Y[1,2,3,4]"), Err(DiagramError::Syntax { index: 0, .. })));
        assert!(matches!(Diagram::parse_pd("X[1,0,2,2]"), Err(DiagramError::Syntax { .. })));
        let e = Diagram::parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,9]").unwrap_err();
        assert!(matches!(e, DiagramError::Multiplicity { label: 8, count: 1, .. }), "{e:?}");
    }

    #[test]
    fn orientation_conflict_is_rejected() {
        // arc 1 and arc 2 would both need two heads
        let e = Diagram::parse_pd("X[1,2,3,4] X[1,4,3,2]").unwrap_err();
        assert!(matches!(e, DiagramError::Orientation { .. }), "{e:?}");
    }

    #[test]
    fn validate_reports() {
        let codes: Vec<[Label; 4]> = vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];
        assert!(validate_codes(&codes).all_passed());
        let mut bad = codes.clone();
        bad[3][3] = 99;
        let r = validate_codes(&bad);
        assert!(!r.multiplicity.passed());
        // swapping two entries keeps every label paired but breaks planarity
        let mut virt = codes.clone();
        virt[0].swap(1, 3);
        let r = validate_codes(&virt);
        assert!(r.multiplicity.passed());
        assert!(r.orientation.passed());
        assert!(!r.planarity.passed(), "{r:?}");
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(Diagram::unknot().writhe(), 0);
        assert_eq!(trefoil().writhe(), 3);
        assert_eq!(fig8().writhe(), 0);
        assert_eq!(trefoil().mirror().writhe(), -3);
        assert_eq!(trefoil().reverse().writhe(), 3);
    }

    #[test]
    fn gauss_code_export() {
        let g = trefoil().gauss_code();
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.components[0].len(), 6);
        let s = g.to_string();
        assert!(s.starts_with('U') || s.starts_with('O'));
        assert_eq!(s.matches('+').count(), 6);
        assert!(!s.contains(';'));
    }

    #[test]
    fn canonical_key_behaviour() {
        let relabelled = Diagram::parse_pd("X[2,6,3,5] X[4,2,5,1] X[6,4,1,3]").unwrap();
        assert_eq!(relabelled.canonical_key(), trefoil().canonical_key());
        let permuted = Diagram::parse_pd("X[5,3,6,2] X[1,5,2,4] X[3,1,4,6]").unwrap();
        assert_eq!(permuted.canonical_key(), trefoil().canonical_key());
        assert_ne!(trefoil().canonical_key(), fig8().canonical_key());
        assert_ne!(trefoil().canonical_key(), trefoil().mirror().canonical_key());
        assert_eq!(Diagram::unknot().canonical_key(), Diagram::unlink(1).canonical_key());
        assert_ne!(Diagram::unknot().canonical_key(), Diagram::unlink(2).canonical_key());
        assert_eq!(trefoil().mirror().mirror().canonical_key(), trefoil().canonical_key());
    }

    #[test]
    fn switch_is_involution() {
        let d = fig8();
        for i in 0..4 {
            let s = d.resolve_crossing(i, Resolution::Switch).unwrap();
            assert!(s.validate().all_passed());
            assert_eq!(s.writhe(), d.writhe() - 2 * d.crossings[i].sign as i64);
            let back = s.resolve_crossing(i, Resolution::Switch).unwrap();
            assert_eq!(back.canonical_key(), d.canonical_key());
        }
        assert_eq!(d.resolve_crossing(9, Resolution::Switch), Err(DiagramError::BadCrossing(9)));
    }

    #[test]
    fn smoothing_trefoil_gives_hopf_link() {
        let s = trefoil().resolve_crossing(0, Resolution::Smooth).unwrap();
        assert_eq!(s.crossing_count(), 2);
        assert_eq!(s.n_components(), 2);
        assert_eq!(s.writhe(), 2);
        assert!(s.validate().all_passed());
        let simplified = s.simplify();
        assert_eq!(simplified.crossing_count(), 2);
    }

    #[test]
    fn smoothing_a_kink_frees_a_loop() {
        let k = Diagram::unknot().insert_kink(None, Side::Left, true).unwrap();
        assert_eq!(k.crossing_count(), 1);
        assert!(k.validate().all_passed());
        let s = k.resolve_crossing(0, Resolution::Smooth).unwrap();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.n_components(), 2);
    }

    #[test]
    fn kinks_of_every_shape_simplify_away() {
        for side in [Side::Left, Side::Right] {
            for over in [false, true] {
                let k = trefoil().insert_kink(Some(3), side, over).unwrap();
                assert!(k.validate().all_passed());
                assert_eq!(k.crossing_count(), 4);
                assert_eq!(k.simplify().canonical_key(), trefoil().canonical_key());
                let u = Diagram::unknot().insert_kink(None, side, over).unwrap();
                assert_eq!(u.simplify(), Diagram::unknot());
            }
        }
    }

    #[test]
    fn standard_codes_are_already_reduced() {
        assert_eq!(fig8().simplify(), fig8());
        assert_eq!(trefoil().simplify(), trefoil());
    }

    #[test]
    fn twists_insert_and_cancel() {
        let d = fig8();
        let slots = d.slots();
        assert!(!slots.is_empty());
        for slot in slots {
            assert_eq!(d.insert_full_twists(&slot, 0).unwrap(), d);
            let t = d.insert_full_twists(&slot, 1).unwrap();
            assert_eq!(t.crossing_count(), 6);
            assert!(t.validate().all_passed());
            assert!(t.is_knot());
            let t3 = d.insert_full_twists(&slot, -3).unwrap();
            assert_eq!(t3.crossing_count(), 10);
            // cancel through an inverse braid in the same place
            let both = d.insert_braid(&slot, &[true, true, false, false]).unwrap();
            assert_eq!(both.simplify().canonical_key(), d.canonical_key());
        }
    }

    #[test]
    fn positive_twist_of_parallel_strands_is_positive() {
        // two parallel strands: the unlink of two circles drawn as a Hopf-free pair
        let d = Diagram::unknot().insert_kink(None, Side::Left, true).unwrap();
        for slot in d.slots() {
            let t = d.insert_full_twists(&slot, 1).unwrap();
            let new_signs: Vec<i8> = t.crossings.iter().skip(1).map(|x| x.sign).collect();
            assert_eq!(new_signs[0], new_signs[1]);
        }
    }

    #[test]
    fn slot_must_share_face() {
        let d = fig8();
        let faces = d.faces();
        let all: Vec<Label> = d.arcs();
        let (a, side) = faces[0][0];
        let absent = all.iter().copied().find(|l| !faces[0].iter().any(|(m, _)| m == l)).unwrap();
        let slot = Slot { first: a, side, second: absent };
        assert_eq!(d.insert_full_twists(&slot, 1), Err(DiagramError::NotOnFace(a, absent)));
    }

    #[test]
    fn face_count_matches_euler() {
        for d in [fig8(), trefoil()] {
            assert_eq!(d.faces().len(), d.crossing_count() + 2);
        }
    }

    #[test]
    fn expand_random_is_deterministic() {
        let d = fig8();
        assert_eq!(d.expand_random(7, 0), d);
        let a = d.expand_random(11, 6);
        let b = d.expand_random(11, 6);
        assert_eq!(a, b);
        assert!(a.validate().all_passed());
        assert!(a.crossing_count() <= 4 + 12);
        assert!(a.is_knot());
        let u = Diagram::unknot().expand_random(3, 5);
        assert!(u.validate().all_passed());
        assert!(u.is_knot());
    }

    #[test]
    fn connected_sum_adds_crossings() {
        let s = fig8().connected_sum(&fig8()).unwrap();
        assert_eq!(s.crossing_count(), 8);
        assert!(s.is_knot());
        assert!(s.validate().all_passed());
        assert_eq!(fig8().connected_sum(&Diagram::unknot()).unwrap(), fig8());
        let link = trefoil().resolve_crossing(0, Resolution::Smooth).unwrap();
        assert_eq!(fig8().connected_sum(&link), Err(DiagramError::NotAKnot(2)));
    }

    #[test]
    fn reverse_keeps_figure_eight_shape() {
        let r = fig8().reverse();
        assert!(r.validate().all_passed());
        assert_eq!(r.writhe(), 0);
        assert_eq!(r.crossing_count(), 4);
    }
}
