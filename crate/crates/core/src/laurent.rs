//! Exact sparse Laurent polynomials with big-integer coefficients.
//!
//! [`Laurent2`] lives in `Z[v^±1, z^±1]` and holds HOMFLYPT values.
//! [`Laurent1`] is a one-variable ring whose exponents are stored doubled,
//! so that `t^(1/2)` is representable; the variable name is only a
//! presentation concern.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("span undefined for the zero polynomial")]
    ZeroSpan,
    #[error("half-integer exponent where a whole power was required")]
    HalfInteger,
    #[error("evaluation point must be nonzero")]
    ZeroPoint,
    #[error("negative power of a substitution image that is not a unit monomial")]
    NonInvertible,
    #[error("division is not exact")]
    Inexact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    V,
    Z,
}

fn insert_term<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Laurent2
// ---------------------------------------------------------------------------

/// Element of `Z[v^±1, z^±1]`, keyed by `(deg_v, deg_z)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(dv: i32, dz: i32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        insert_term(&mut p.terms, (dv, dz), c.into());
        p
    }

    /// Builds from `(deg_v, deg_z, coeff)` triples; repeated keys are summed.
    pub fn from_terms(terms: &[(i32, i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(dv, dz, c) in terms {
            insert_term(&mut p.terms, (dv, dz), BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dv: i32, dz: i32) -> BigInt {
        self.terms.get(&(dv, dz)).cloned().unwrap_or_default()
    }

    /// Coefficient of `z^k`, as a polynomial in `v`.
    pub fn coeff_z(&self, k: i32) -> Laurent1 {
        let mut out = Laurent1::zero();
        for (&(dv, dz), c) in &self.terms {
            if dz == k {
                insert_term(&mut out.terms, 2 * dv, c.clone());
            }
        }
        out
    }

    /// Distinct powers of `z` that carry a nonzero coefficient.
    pub fn z_degrees(&self) -> Vec<i32> {
        let mut ks: Vec<i32> = self.terms.keys().map(|&(_, dz)| dz).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn span(&self, var: Var) -> Result<i64, PolyError> {
        let degs = self.terms.keys().map(|&(dv, dz)| match var {
            Var::V => dv as i64,
            Var::Z => dz as i64,
        });
        let (lo, hi) = degs.fold((i64::MAX, i64::MIN), |(lo, hi), d| (lo.min(d), hi.max(d)));
        if self.is_zero() {
            Err(PolyError::ZeroSpan)
        } else {
            Ok(hi - lo)
        }
    }

    /// Multiplies by `c · v^dv · z^dz`.
    pub fn mul_monomial(&self, dv: i32, dz: i32, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let c = BigInt::from(c);
        Laurent2 {
            terms: self.terms.iter().map(|(&(a, b), x)| ((a + dv, b + dz), x * &c)).collect(),
        }
    }

    /// `p(v, z) ↦ p(v^-1, z)`.
    pub fn invert_v(&self) -> Self {
        Laurent2 { terms: self.terms.iter().map(|(&(a, b), c)| ((-a, b), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `v ↦ v_image`, `z ↦ z_image`.
    ///
    /// Negative powers are only defined when the image is `±t^e`.
    pub fn specialize(&self, v_image: &Laurent1, z_image: &Laurent1) -> Result<Laurent1, PolyError> {
        let mut vcache = PowerCache::new(v_image);
        let mut zcache = PowerCache::new(z_image);
        let mut out = Laurent1::zero();
        for (&(dv, dz), c) in &self.terms {
            let term = &vcache.pow(dv)? * &zcache.pow(dz)?;
            out += &term.scale(c);
        }
        Ok(out)
    }
}

struct PowerCache<'a> {
    base: &'a Laurent1,
    cache: HashMap<i32, Laurent1>,
}

impl<'a> PowerCache<'a> {
    fn new(base: &'a Laurent1) -> Self {
        PowerCache { base, cache: HashMap::new() }
    }

    fn pow(&mut self, k: i32) -> Result<Laurent1, PolyError> {
        if let Some(p) = self.cache.get(&k) {
            return Ok(p.clone());
        }
        let p = if k >= 0 {
            if k == 0 {
                Laurent1::one()
            } else {
                let prev = self.pow(k - 1)?;
                &prev * self.base
            }
        } else {
            self.base.inverse_unit().ok_or(PolyError::NonInvertible)?.pow(k.unsigned_abs())
        };
        self.cache.insert(k, p.clone());
        Ok(p)
    }
}

impl fmt::Debug for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(dv, dz)| (dz, dv));
        let monos = keys.into_iter().map(|(dv, dz)| {
            let mut vars = String::new();
            push_var(&mut vars, "v", dv as i64, 1);
            push_var(&mut vars, "z", dz as i64, 1);
            (vars, self.terms[&(dv, dz)].clone())
        });
        write_terms(f, monos)
    }
}

impl Serialize for Laurent2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(dv, dz), c) in &self.terms {
            seq.serialize_element(&(dv, dz, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a Laurent2> for &'a Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            insert_term(&mut out.terms, k, c.clone());
        }
        out
    }
}

impl Add for Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: Laurent2) -> Laurent2 {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Laurent2> for &'a Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            insert_term(&mut out.terms, k, -c);
        }
        out
    }
}

impl Sub for Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: Laurent2) -> Laurent2 {
        &self - &rhs
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        Laurent2 { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl<'a> Mul<&'a Laurent2> for &'a Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = BTreeMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                insert_term(&mut out, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        Laurent2 { terms: out }
    }
}

impl Mul for Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: Laurent2) -> Laurent2 {
        &self * &rhs
    }
}

// ---------------------------------------------------------------------------
// Laurent1
// ---------------------------------------------------------------------------

/// One-variable Laurent polynomial over `Z` admitting half-integer powers.
///
/// Keys are twice the semantic exponent: `t^k` is stored under `2k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent1 {
    terms: BTreeMap<i32, BigInt>,
}

impl Laurent1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_whole(&[(0, 1)])
    }

    /// `c · t^k` for a whole power `k`.
    pub fn monomial(k: i32, c: impl Into<BigInt>) -> Self {
        Self::monomial_half(2 * k, c)
    }

    /// `c · t^(e/2)`.
    pub fn monomial_half(e: i32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        insert_term(&mut p.terms, e, c.into());
        p
    }

    /// Builds from `(whole exponent, coeff)` pairs.
    pub fn from_whole(terms: &[(i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(k, c) in terms {
            insert_term(&mut p.terms, 2 * k, BigInt::from(c));
        }
        p
    }

    /// Builds from `(doubled exponent, coeff)` pairs.
    pub fn from_half(terms: &[(i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            insert_term(&mut p.terms, e, BigInt::from(c));
        }
        p
    }

    /// Coefficients `c_0, c_1, …` of `c_0 + c_1 t + …`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            insert_term(&mut p.terms, 2 * k as i32, BigInt::from(c));
        }
        p
    }

    /// `t^(1/2) - t^(-1/2)`.
    pub fn sqrt_t_difference() -> Self {
        Self::from_half(&[(1, 1), (-1, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True when every exponent is a whole number.
    pub fn is_whole_power(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Terms as `(doubled exponent, coeff)`.
    pub fn half_terms(&self) -> impl Iterator<Item = (&i32, &BigInt)> {
        self.terms.iter()
    }

    /// Terms as `(whole exponent, coeff)`; fails on a half-integer exponent.
    pub fn whole_terms(&self) -> Result<Vec<(i32, BigInt)>, PolyError> {
        self.terms
            .iter()
            .map(|(&e, c)| if e % 2 == 0 { Ok((e / 2, c.clone())) } else { Err(PolyError::HalfInteger) })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i32) -> BigInt {
        self.coeff_half(2 * k)
    }

    pub fn coeff_half(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Lowest and highest doubled exponent.
    pub fn half_degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    /// Max minus min semantic exponent.
    pub fn span(&self) -> Result<i64, PolyError> {
        let (lo, hi) = self.half_degree_range().ok_or(PolyError::ZeroSpan)?;
        let d = (hi - lo) as i64;
        if d % 2 != 0 {
            return Err(PolyError::HalfInteger);
        }
        Ok(d / 2)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent1 { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// Multiplies by `t^(e/2)`.
    pub fn shift_half(&self, e: i32) -> Self {
        Laurent1 { terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect() }
    }

    /// `p(t) ↦ p(t^-1)`.
    pub fn invert(&self) -> Self {
        Laurent1 { terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect() }
    }

    /// Rescales exponents by an integer factor: `p(t) ↦ p(t^m)`.
    pub fn stretch(&self, m: i32) -> Self {
        Laurent1 { terms: self.terms.iter().map(|(&k, c)| (k * m, c.clone())).collect() }
    }

    /// Divides every exponent by `m`; `None` if some exponent is not a multiple.
    pub fn compress(&self, m: i32) -> Option<Self> {
        let mut out = BTreeMap::new();
        for (&k, c) in &self.terms {
            if k % m != 0 {
                return None;
            }
            out.insert(k / m, c.clone());
        }
        Some(Laurent1 { terms: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse when the polynomial is `±t^e`.
    pub fn inverse_unit(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some(Self::monomial_half(-e, c.clone()))
        } else {
            None
        }
    }

    /// Exact value at a nonzero integer, as a reduced fraction with positive
    /// denominator.
    pub fn eval_int(&self, point: i64) -> Result<(BigInt, BigInt), PolyError> {
        if point == 0 {
            return Err(PolyError::ZeroPoint);
        }
        let terms = self.whole_terms()?;
        let Some(lo) = terms.first().map(|(k, _)| *k) else {
            return Ok((BigInt::zero(), BigInt::one()));
        };
        let x = BigInt::from(point);
        let shift = lo.min(0);
        let mut num = BigInt::zero();
        for (k, c) in &terms {
            num += c * x.pow((k - shift) as u32);
        }
        let mut den = x.pow((-shift) as u32);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_zero() && !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Ok((num, den))
    }

    /// Exact quotient `self / rhs`; errors unless `rhs` divides `self`.
    pub fn div_exact(&self, rhs: &Laurent1) -> Result<Laurent1, PolyError> {
        let (blo, bhi) = rhs.half_degree_range().ok_or(PolyError::Inexact)?;
        let Some((alo, _)) = self.half_degree_range() else {
            return Ok(Laurent1::zero());
        };
        let lead = &rhs.terms[&bhi];
        let mut rem = self.clone();
        let mut quot = Laurent1::zero();
        while let Some((_, rhi)) = rem.half_degree_range() {
            let e = rhi - bhi;
            if e < alo - blo {
                return Err(PolyError::Inexact);
            }
            let (q, r) = rem.terms[&rhi].div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::Inexact);
            }
            let step = Laurent1::monomial_half(e, q);
            rem = &rem - &(&step * rhs);
            quot += &step;
        }
        Ok(quot)
    }

    /// Writes a polynomial as a string in the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        struct D<'a>(&'a Laurent1, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let monos = self.0.terms.iter().map(|(&e, c)| {
                    let mut s = String::new();
                    push_var(&mut s, self.1, e as i64, 2);
                    (s, c.clone())
                });
                write_terms(f, monos)
            }
        }
        D(self, var).to_string()
    }
}

impl fmt::Debug for Laurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

#[derive(serde::Serialize)]
#[serde(untagged)]
enum Exponent {
    Whole(i32),
    Half(String),
}

impl Serialize for Laurent1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            let exp = if e % 2 == 0 { Exponent::Whole(e / 2) } else { Exponent::Half(format!("{e}/2")) };
            seq.serialize_element(&(exp, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a Laurent1> for &'a Laurent1 {
    type Output = Laurent1;
    fn add(self, rhs: &Laurent1) -> Laurent1 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent1 {
    type Output = Laurent1;
    fn add(self, rhs: Laurent1) -> Laurent1 {
        &self + &rhs
    }
}

impl AddAssign<&Laurent1> for Laurent1 {
    fn add_assign(&mut self, rhs: &Laurent1) {
        for (&k, c) in &rhs.terms {
            insert_term(&mut self.terms, k, c.clone());
        }
    }
}

impl<'a> Sub<&'a Laurent1> for &'a Laurent1 {
    type Output = Laurent1;
    fn sub(self, rhs: &Laurent1) -> Laurent1 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            insert_term(&mut out.terms, k, -c);
        }
        out
    }
}

impl Sub for Laurent1 {
    type Output = Laurent1;
    fn sub(self, rhs: Laurent1) -> Laurent1 {
        &self - &rhs
    }
}

impl Neg for &Laurent1 {
    type Output = Laurent1;
    fn neg(self) -> Laurent1 {
        Laurent1 { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl<'a> Mul<&'a Laurent1> for &'a Laurent1 {
    type Output = Laurent1;
    fn mul(self, rhs: &Laurent1) -> Laurent1 {
        let mut out = BTreeMap::new();
        for (&a, c1) in &self.terms {
            for (&b, c2) in &rhs.terms {
                insert_term(&mut out, a + b, c1 * c2);
            }
        }
        Laurent1 { terms: out }
    }
}

impl Mul for Laurent1 {
    type Output = Laurent1;
    fn mul(self, rhs: Laurent1) -> Laurent1 {
        &self * &rhs
    }
}

// ---------------------------------------------------------------------------
// formatting helpers
// ---------------------------------------------------------------------------

fn push_var(s: &mut String, name: &str, exp: i64, scale: i64) {
    if exp == 0 {
        return;
    }
    s.push_str(name);
    if exp == scale {
        return;
    }
    if exp % scale == 0 {
        s.push_str(&format!("^{}", exp / scale));
    } else {
        s.push_str(&format!("^({exp}/{scale})"));
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (String, BigInt)>) -> fmt::Result {
    let mut first = true;
    for (vars, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if vars.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(&vars)?;
        } else {
            write!(f, "{mag}{vars}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p41() -> Laurent2 {
        Laurent2::from_terms(&[(-2, 0, 1), (0, 0, -1), (2, 0, 1), (0, 2, -1)])
    }

    #[test]
    fn add_examples() {
        let a = Laurent2::monomial(2, 0, 1);
        let b = Laurent2::monomial(2, 0, -1);
        assert!((&a + &b).is_zero());
        assert_eq!(&p41() + &Laurent2::zero(), p41());
        let s = &Laurent2::from_terms(&[(-2, 0, 1), (0, 0, -1), (2, 0, 1)]) + &Laurent2::monomial(0, 2, -1);
        assert_eq!(s, p41());
    }

    #[test]
    fn mul_examples() {
        let g = Laurent1::from_whole(&[(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(&g * &g, Laurent1::from_whole(&[(-2, 1), (-1, -2), (0, 3), (1, -2), (2, 1)]));
        assert_eq!(&p41() * &Laurent2::one(), p41());
        let a = Laurent2::from_terms(&[(-1, -1, 1), (1, -1, -1)]);
        assert_eq!(&a * &Laurent2::monomial(0, 1, 1), Laurent2::from_terms(&[(-1, 0, 1), (1, 0, -1)]));
    }

    #[test]
    fn coeff_z_examples() {
        assert_eq!(p41().coeff_z(0), Laurent1::from_whole(&[(-2, 1), (0, -1), (2, 1)]));
        assert_eq!(p41().coeff_z(2), Laurent1::from_whole(&[(0, -1)]));
        assert!(p41().coeff_z(99).is_zero());
    }

    #[test]
    fn span_examples() {
        let g = Laurent1::from_whole(&[(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(g.span(), Ok(2));
        assert_eq!((&g * &g).span(), Ok(4));
        assert_eq!(Laurent1::one().span(), Ok(0));
        assert_eq!(Laurent1::zero().span(), Err(PolyError::ZeroSpan));
        assert_eq!(Laurent2::zero().span(Var::V), Err(PolyError::ZeroSpan));
        assert_eq!(p41().span(Var::V), Ok(4));
        assert_eq!(p41().span(Var::Z), Ok(2));
    }

    #[test]
    fn specialize_examples() {
        let conway = p41().specialize(&Laurent1::one(), &Laurent1::monomial(1, 1)).unwrap();
        assert_eq!(conway, Laurent1::from_whole(&[(0, 1), (2, -1)]));
        let one = Laurent2::one().specialize(&Laurent1::sqrt_t_difference(), &Laurent1::monomial(3, 7)).unwrap();
        assert!(one.is_one());
        let jones = p41().specialize(&Laurent1::monomial(-1, 1), &Laurent1::sqrt_t_difference()).unwrap();
        assert_eq!(jones, Laurent1::from_whole(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn specialize_rejects_negative_power_of_binomial() {
        let p = Laurent2::monomial(0, -1, 1);
        assert_eq!(
            p.specialize(&Laurent1::one(), &Laurent1::sqrt_t_difference()),
            Err(PolyError::NonInvertible)
        );
    }

    #[test]
    fn eval_examples() {
        let d41 = Laurent1::from_whole(&[(-1, -1), (0, 3), (1, -1)]);
        assert_eq!(d41.eval_int(-1), Ok((BigInt::from(5), BigInt::from(1))));
        assert_eq!(Laurent1::one().eval_int(-1), Ok((BigInt::from(1), BigInt::from(1))));
        let d31 = Laurent1::from_whole(&[(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(d31.eval_int(-1), Ok((BigInt::from(-3), BigInt::from(1))));
        assert_eq!(d31.eval_int(0), Err(PolyError::ZeroPoint));
        // t^-1 at 2 is 1/2
        assert_eq!(Laurent1::monomial(-1, 1).eval_int(2), Ok((BigInt::from(1), BigInt::from(2))));
        assert_eq!(Laurent1::monomial(-1, 1).eval_int(-2), Ok((BigInt::from(-1), BigInt::from(2))));
        assert_eq!(Laurent1::sqrt_t_difference().eval_int(1), Err(PolyError::HalfInteger));
    }

    #[test]
    fn exact_division() {
        let a = Laurent1::from_coeffs(&[1, -3, 1]);
        let b = Laurent1::from_whole(&[(-2, 2), (0, 5)]);
        assert_eq!((&a * &b).div_exact(&b), Ok(a.clone()));
        assert_eq!(Laurent1::from_coeffs(&[1, 1]).div_exact(&Laurent1::from_coeffs(&[1, 2])), Err(PolyError::Inexact));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p41().to_string(), "v^-2 - 1 + v^2 - z^2");
        assert_eq!(Laurent1::sqrt_t_difference().display_in("t"), "-t^(-1/2) + t^(1/2)");
        assert_eq!(Laurent1::zero().display_in("x"), "0");
        let j = serde_json::to_string(&Laurent1::sqrt_t_difference()).unwrap();
        assert_eq!(j, r#"[["-1/2","-1"],["1/2","1"]]"#);
        let j = serde_json::to_string(&Laurent1::from_whole(&[(-1, 2)])).unwrap();
        assert_eq!(j, r#"[[-1,"2"]]"#);
        let j = serde_json::to_string(&Laurent2::from_terms(&[(0, 2, -1), (-2, 0, 1)])).unwrap();
        assert_eq!(j, r#"[[-2,0,"1"],[0,2,"-1"]]"#);
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let p = Laurent1::from_coeffs(&[1, 1]).pow(200);
        assert!(p.coeff(100) > BigInt::from(u128::MAX));
        assert_eq!(p.eval_int(1).unwrap().0, BigInt::from(2).pow(200));
    }

    fn arb_l2() -> impl Strategy<Value = Laurent2> {
        prop::collection::vec((-3i32..=3, -3i32..=3, -4i64..=4), 0..6).prop_map(|t| Laurent2::from_terms(&t))
    }

    fn arb_l1() -> impl Strategy<Value = Laurent1> {
        prop::collection::vec((-6i32..=6, -4i64..=4), 0..6).prop_map(|t| Laurent1::from_half(&t))
    }

    proptest! {
        #[test]
        fn ring_axioms_l2(a in arb_l2(), b in arb_l2(), c in arb_l2()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &Laurent2::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn ring_axioms_l1(a in arb_l1(), b in arb_l1(), c in arb_l1()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &Laurent1::zero(), a.clone());
        }

        #[test]
        fn z_slices_reassemble(p in arb_l2()) {
            let mut acc = Laurent2::zero();
            for k in p.z_degrees() {
                for (&e, c) in p.coeff_z(k).half_terms() {
                    acc = &acc + &Laurent2::monomial(e / 2, k, c.clone());
                }
            }
            prop_assert_eq!(acc, p);
        }

        #[test]
        fn identity_specialization(p in arb_l2()) {
            // v -> t, z -> t^100 keeps the small exponent pairs apart, so it is invertible here
            let img_v = Laurent1::monomial(1, 1);
            let img_z = Laurent1::monomial(100, 1);
            let q = p.specialize(&img_v, &img_z).unwrap();
            let mut back = Laurent2::zero();
            for (&e, c) in q.half_terms() {
                let k = e / 2;
                let dz = (k + 350).div_euclid(100) - 3;
                let dv = k - 100 * dz;
                back = &back + &Laurent2::monomial(dv, dz, c.clone());
            }
            prop_assert_eq!(back, p);
        }

        #[test]
        fn span_is_additive(a in arb_l1(), b in arb_l1()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (alo, ahi) = a.half_degree_range().unwrap();
            let (blo, bhi) = b.half_degree_range().unwrap();
            let (plo, phi) = (&a * &b).half_degree_range().unwrap();
            prop_assert_eq!(phi - plo, (ahi - alo) + (bhi - blo));
        }
    }
}
