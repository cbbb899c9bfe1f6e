//! Built-in reference knots and the twisted family built on `4_1 # 4_1`.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{full_twist, Cut, Diagram, DiagramError, Label, Letter, Side};

pub const TREFOIL_RH_PD: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
pub const FIGURE_EIGHT_PD: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
pub const HOPF_PLUS_PD: &str = "X[4,2,3,1] X[2,4,1,3]";

pub const BUILTIN_NAMES: [&str; 6] = ["unknot", "trefoil_rh", "trefoil_lh", "figure_eight", "fig8_sum", "hopf_plus"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown built-in knot '{0}' (known: {known})", known = BUILTIN_NAMES.join(", "))]
    UnknownBuiltin(String),
    #[error("a twist slot needs at least two strands, got {0}")]
    ShortCut(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub fn builtin(name: &str) -> Result<Diagram, FamilyError> {
    let parse = |pd: &str| Diagram::parse_pd(pd).expect("built-in PD codes are valid");
    let d = match name {
        "unknot" => Diagram::unknot(),
        "trefoil_rh" => parse(TREFOIL_RH_PD),
        "trefoil_lh" => parse(TREFOIL_RH_PD).mirror(),
        "figure_eight" => parse(FIGURE_EIGHT_PD),
        "fig8_sum" => {
            let f = parse(FIGURE_EIGHT_PD);
            f.connected_sum(&f)?
        }
        "hopf_plus" => parse(HOPF_PLUS_PD),
        _ => return Err(FamilyError::UnknownBuiltin(name.to_string())),
    };
    Ok(d.with_name(name))
}

/// Built-in knots (single component), in a fixed order.
pub fn builtin_knots() -> Vec<Diagram> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).unwrap()).filter(Diagram::is_knot).collect()
}

/// Base diagram of the family at `n = 0`: a diagram of `4_1 # 4_1` with two
/// kinks and an inverse clasp, so that the twist region below is a face-to-face
/// cut.
pub const FAMILY_BASE_PD: &str = "X[1,13,2,12] X[11,9,12,8] X[9,16,10,17] X[15,10,16,11] X[17,23,18,22] X[21,19,22,18] \
X[19,24,20,1] X[23,20,24,21] X[3,3,4,2] X[5,15,6,14] X[4,13,5,14] X[6,7,7,8]";

/// The twist region of the family template, top to bottom.
pub const FAMILY_CUT: [(Label, Side); 4] = [(7, Side::Left), (6, Side::Left), (12, Side::Right), (19, Side::Right)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Parallel,
    Antiparallel,
}

/// Twist box across a cut: `a * n + b` full twists of all its strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSlot {
    pub cut: Cut,
    /// Direction of each strand relative to the first.
    pub orientation_pattern: Vec<Orientation>,
    pub multiplier: (i64, i64),
}

impl TwistSlot {
    pub fn new(cut: Cut, multiplier: (i64, i64)) -> Result<Self, FamilyError> {
        if cut.strands.len() < 2 {
            return Err(FamilyError::ShortCut(cut.strands.len()));
        }
        let first = cut.strands[0].1;
        let orientation_pattern = cut
            .strands
            .iter()
            .map(|&(_, s)| if s == first { Orientation::Parallel } else { Orientation::Antiparallel })
            .collect();
        Ok(TwistSlot { cut, orientation_pattern, multiplier })
    }

    pub fn strand_count(&self) -> usize {
        self.cut.strands.len()
    }

    pub fn twists(&self, n: i64) -> i64 {
        self.multiplier.0 * n + self.multiplier.1
    }

    /// Crossings added per full twist.
    pub fn crossings_per_twist(&self) -> usize {
        let k = self.strand_count();
        k * (k - 1)
    }
}

#[derive(Clone, Debug)]
pub struct FamilyTemplate {
    pub base: Diagram,
    pub slots: Vec<TwistSlot>,
}

impl FamilyTemplate {
    /// Checks every slot against the base diagram.
    pub fn new(base: Diagram, slots: Vec<TwistSlot>) -> Result<Self, FamilyError> {
        let t = FamilyTemplate { base, slots };
        t.knot(1)?;
        Ok(t)
    }

    pub fn knot(&self, n: i64) -> Result<Diagram, FamilyError> {
        let plan: Vec<(Cut, Vec<Letter>)> =
            self.slots.iter().map(|s| (s.cut.clone(), full_twist(s.strand_count(), s.twists(n)))).collect();
        Ok(self.base.insert_cut_braids(&plan)?)
    }

    /// Crossing count as `(c0, c1)` with `c(n) = c0 + c1 |n|` when every
    /// multiplier has `b = 0`.
    pub fn crossing_law(&self) -> (usize, usize) {
        let c1 = self.slots.iter().map(|s| s.crossings_per_twist() * s.multiplier.0.unsigned_abs() as usize).sum();
        (self.base.crossing_count(), c1)
    }
}

pub fn family_template() -> FamilyTemplate {
    let base = Diagram::parse_pd(FAMILY_BASE_PD).expect("template PD is valid");
    let slot = TwistSlot::new(Cut { strands: FAMILY_CUT.to_vec() }, (1, 0)).expect("template cut has four strands");
    FamilyTemplate::new(base, vec![slot]).expect("template slots are valid")
}

pub fn boundary_knot(n: i64) -> Diagram {
    family_template().knot(n).expect("template knots are valid").with_name(format!("family({n})"))
}
