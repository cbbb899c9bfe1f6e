//! Classical slice obstructions read off the Alexander polynomial: the
//! determinant test and a bounded Fox–Milnor factor search.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::laurent::Laurent1;
use crate::skein::{self, SkeinConfig, SkeinError};

pub const DEFAULT_MAX_COEFF: i64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SliceError {
    #[error("coefficient bound must be positive, got {0}")]
    NonPositiveBound(i64),
    #[error("Alexander polynomial is not symmetric with value 1 at t = 1")]
    NotNormalized,
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBound {
    /// Degree of the candidate factor; `None` when the span is odd.
    pub degree: Option<u32>,
    pub max_coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub determinant: u64,
    pub det_is_odd_square: bool,
    pub fox_milnor_factor: Option<Laurent1>,
    pub search_bound: SearchBound,
}

impl SliceReport {
    pub fn from_alexander(delta: &Laurent1, max_coeff: i64) -> Result<Self, SliceError> {
        let determinant = skein::determinant_of(delta)?;
        let fox_milnor_factor = fox_milnor_search(delta, max_coeff)?;
        let degree = delta.span().ok().filter(|s| s % 2 == 0).map(|s| (s / 2) as u32);
        Ok(SliceReport {
            determinant,
            det_is_odd_square: is_odd_square(determinant),
            fox_milnor_factor,
            search_bound: SearchBound { degree, max_coeff },
        })
    }
}

pub fn is_odd_square(n: u64) -> bool {
    let r = n.sqrt();
    n % 2 == 1 && r * r == n
}

/// Whether the determinant of a knot is an odd perfect square, together with
/// the determinant.
pub fn det_square_check(d: &Diagram, cfg: &SkeinConfig) -> Result<(bool, u64), SliceError> {
    let det = skein::determinant(d, cfg)?;
    Ok((is_odd_square(det), det))
}

/// Searches for `f` with `f(t) f(t^-1) = ±t^k Δ(t)` among integer
/// polynomials of degree `span(Δ)/2` with coefficients in
/// `[-max_coeff, max_coeff]`.
///
/// `Ok(None)` means nothing was found within the bound.
pub fn fox_milnor_search(delta: &Laurent1, max_coeff: i64) -> Result<Option<Laurent1>, SliceError> {
    if max_coeff <= 0 {
        return Err(SliceError::NonPositiveBound(max_coeff));
    }
    let Some((lo, hi)) = delta.half_degree_range() else {
        return Err(SliceError::NotNormalized);
    };
    if (hi - lo) % 4 != 0 {
        return Ok(None);
    }
    let centered = delta.shift_half(-(lo + hi) / 2);
    if centered.invert() != centered || !centered.is_whole_power() {
        return Err(SliceError::NotNormalized);
    }
    if centered.eval_int(1).map(|(n, _)| n) != Ok(BigInt::one()) {
        return Err(SliceError::NotNormalized);
    }
    let m = ((hi - lo) / 4) as usize;
    let bound = max_coeff as i128;
    let limit = (m as i128 + 1) * bound * bound;
    let mut target = Vec::with_capacity(m + 1);
    for j in 0..=m {
        match centered.coeff(j as i32).to_i128() {
            Some(c) if c.abs() <= limit => target.push(c),
            _ => return Ok(None),
        }
    }
    for sign in [1i128, -1] {
        let t: Vec<i128> = target.iter().map(|c| sign * c).collect();
        let mut search = Search { t: &t, m, bound, a: vec![0; m + 1], found: None, sign, delta: &centered };
        search.start();
        if let Some(f) = search.found {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

struct Search<'a> {
    /// Target coefficients of `f f*` at `t^0 … t^m`.
    t: &'a [i128],
    m: usize,
    bound: i128,
    a: Vec<i128>,
    found: Option<Laurent1>,
    sign: i128,
    delta: &'a Laurent1,
}

impl Search<'_> {
    fn candidates(&self) -> impl Iterator<Item = i128> {
        let b = self.bound;
        std::iter::once(0).chain((1..=b).flat_map(|x| [x, -x]))
    }

    fn start(&mut self) {
        let m = self.m;
        let top = self.t[m];
        if m == 0 {
            let r = top.max(0).sqrt();
            if r * r == top && r <= self.bound {
                self.a[0] = r;
                self.verify();
            }
            return;
        }
        for a0 in (1..=self.bound).flat_map(|x| [x, -x]) {
            if top % a0 != 0 || (top / a0).abs() > self.bound {
                continue;
            }
            self.a[0] = a0;
            self.a[m] = top / a0;
            self.descend(1);
            if self.found.is_some() {
                return;
            }
        }
    }

    /// Assigns `a[k]` and `a[m-k]` from the coefficient of `t^(m-k)`.
    fn descend(&mut self, k: usize) {
        let m = self.m;
        let l = m - k.min(m);
        if k > l {
            self.verify();
            return;
        }
        let rest: i128 = (1..k).map(|i| self.a[i] * self.a[i + m - k]).sum();
        let rhs = self.t[m - k] - rest;
        let (a0, am) = (self.a[0], self.a[m]);
        if k == l {
            let d = a0 + am;
            if d == 0 {
                if rhs != 0 {
                    return;
                }
                for x in self.candidates().collect::<Vec<_>>() {
                    self.a[k] = x;
                    self.verify();
                    if self.found.is_some() {
                        return;
                    }
                }
            } else if rhs % d == 0 && (rhs / d).abs() <= self.bound {
                self.a[k] = rhs / d;
                self.verify();
            }
            return;
        }
        for x in self.candidates().collect::<Vec<_>>() {
            let num = rhs - x * am;
            if num % a0 != 0 || (num / a0).abs() > self.bound {
                continue;
            }
            self.a[k] = x;
            self.a[l] = num / a0;
            self.descend(k + 1);
            if self.found.is_some() {
                return;
            }
        }
    }

    fn verify(&mut self) {
        let coeffs: Vec<i64> = self.a.iter().map(|&c| c as i64).collect();
        let f = Laurent1::from_coeffs(&coeffs);
        let product = &f * &f.invert();
        let want = self.delta.scale(&BigInt::from(self.sign as i64));
        if !product.is_zero() && product == want {
            self.found = Some(f);
        }
    }
}
