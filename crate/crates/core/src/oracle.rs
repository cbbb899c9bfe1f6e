//! Independent Jones and Alexander computations used to cross-check the
//! skein engine: a Kauffman bracket state sum and a Wirtinger/Fox
//! Alexander matrix with fraction-free elimination.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{Diagram, Label};
use crate::laurent::{Laurent1, PolyError};

pub const DEFAULT_BRACKET_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("{crossings} crossings exceed the state-sum cap of {cap}")]
    CrossingCap { crossings: usize, cap: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("Alexander determinant does not normalize to a unit at t = 1")]
    BadNormalization,
}

/// One generator per over-arc, one relation per crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub generators: usize,
    /// `(over, incoming under, outgoing under, sign)` as generator indices.
    pub relations: Vec<(usize, usize, usize, i8)>,
}

impl WirtingerPresentation {
    pub fn of(d: &Diagram) -> Self {
        let max = 2 * d.crossing_count() + 1;
        let mut parent: Vec<usize> = (0..max).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in d.crossings() {
            let [_, b, _, dd] = x.arcs();
            let (rb, rd) = (find(&mut parent, b as usize), find(&mut parent, dd as usize));
            parent[rb] = rd;
        }
        let mut index = vec![usize::MAX; max];
        let mut generators = 0;
        let mut gen_of = |l: Label, parent: &mut Vec<usize>| {
            let r = find(parent, l as usize);
            if index[r] == usize::MAX {
                index[r] = generators;
                generators += 1;
            }
            index[r]
        };
        let mut relations = Vec::new();
        for x in d.crossings() {
            let [a, b, c, _] = x.arcs();
            let o = gen_of(b, &mut parent);
            let ai = gen_of(a, &mut parent);
            let ci = gen_of(c, &mut parent);
            relations.push((o, ai, ci, x.sign()));
        }
        WirtingerPresentation { generators, relations }
    }

    /// Abelianized Fox Jacobian, one row per relation.
    pub fn alexander_matrix(&self) -> Vec<Vec<Laurent1>> {
        let mut m = vec![vec![Laurent1::zero(); self.generators]; self.relations.len()];
        for (row, &(o, a, c, sign)) in m.iter_mut().zip(&self.relations) {
            row[o] += &Laurent1::from_whole(&[(0, 1), (1, -1)]);
            let (ea, ec) = if sign > 0 { (Laurent1::monomial(1, 1), Laurent1::monomial(0, -1)) } else { (Laurent1::monomial(0, -1), Laurent1::monomial(1, 1)) };
            row[a] += &ea;
            row[c] += &ec;
        }
        m
    }
}

/// Bareiss elimination over `Z[t, t^-1]`.
pub fn bareiss_determinant(mut m: Vec<Vec<Laurent1>>) -> Result<Laurent1, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(Laurent1::one());
    }
    let mut negate = false;
    let mut prev = Laurent1::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Laurent1::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Rescales by `±t^k` to the symmetric representative with value 1 at `t = 1`.
pub fn normalize_alexander(p: &Laurent1) -> Result<Laurent1, OracleError> {
    let (lo, hi) = p.half_degree_range().ok_or(OracleError::BadNormalization)?;
    if (lo + hi) % 2 != 0 {
        return Err(OracleError::BadNormalization);
    }
    let centered = p.shift_half(-(lo + hi) / 2);
    let at_one: BigInt = centered.half_terms().map(|(_, c)| c.clone()).sum();
    if at_one.is_one() {
        Ok(centered)
    } else if (-at_one).is_one() {
        Ok(-&centered)
    } else {
        Err(OracleError::BadNormalization)
    }
}

pub fn alexander_wirtinger(d: &Diagram) -> Result<Laurent1, OracleError> {
    if !d.is_knot() {
        return Err(OracleError::NotAKnot(d.n_components()));
    }
    let w = WirtingerPresentation::of(d);
    let mut m = w.alexander_matrix();
    if m.len() <= 1 {
        return Ok(Laurent1::one());
    }
    m.pop();
    for row in &mut m {
        row.pop();
    }
    normalize_alexander(&bareiss_determinant(m)?)
}

/// Kauffman bracket in `A`, summed over all `2^c` states.
pub fn kauffman_bracket(d: &Diagram) -> Laurent1 {
    let c = d.crossing_count();
    let crossings: Vec<[Label; 4]> = d.crossings().iter().map(|x| x.arcs()).collect();
    let free = d.free_loops();
    let labels = 2 * c + 1;
    // histogram over (number of A-smoothings, loop count)
    let hist = (0u64..1u64 << c)
        .into_par_iter()
        .fold(
            || vec![0u64; (c + 1) * (2 * c + free + 2)],
            |mut hist, state| {
                let mut parent: Vec<u32> = (0..labels as u32).collect();
                fn find(p: &mut [u32], mut x: u32) -> u32 {
                    while p[x as usize] != x {
                        p[x as usize] = p[p[x as usize] as usize];
                        x = p[x as usize];
                    }
                    x
                }
                let mut loops = labels - 1;
                let join = |p: &mut Vec<u32>, a: Label, b: Label, loops: &mut usize| {
                    let (ra, rb) = (find(p, a), find(p, b));
                    if ra != rb {
                        p[ra as usize] = rb;
                        *loops -= 1;
                    }
                };
                let mut a_count = 0;
                for (k, &[a, b, cc, dd]) in crossings.iter().enumerate() {
                    if state >> k & 1 == 0 {
                        a_count += 1;
                        join(&mut parent, a, b, &mut loops);
                        join(&mut parent, cc, dd, &mut loops);
                    } else {
                        join(&mut parent, a, dd, &mut loops);
                        join(&mut parent, b, cc, &mut loops);
                    }
                }
                hist[a_count * (2 * c + free + 2) + loops + free] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; (c + 1) * (2 * c + free + 2)],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    let delta = Laurent1::from_whole(&[(2, -1), (-2, -1)]);
    let width = 2 * c + free + 2;
    let mut out = Laurent1::zero();
    for (i, &count) in hist.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let (a_count, loops) = (i / width, i % width);
        let b_count = c - a_count;
        let term = Laurent1::monomial(a_count as i32 - b_count as i32, BigInt::from(count)) * delta.pow(loops as u32 - 1);
        out += &term;
    }
    out
}

/// Jones polynomial from the bracket, with `t = A^4`.
pub fn kauffman_jones(d: &Diagram) -> Result<Laurent1, OracleError> {
    kauffman_jones_capped(d, DEFAULT_BRACKET_CAP)
}

pub fn kauffman_jones_capped(d: &Diagram, cap: usize) -> Result<Laurent1, OracleError> {
    if !d.is_knot() {
        return Err(OracleError::NotAKnot(d.n_components()));
    }
    if d.crossing_count() > cap {
        return Err(OracleError::CrossingCap { crossings: d.crossing_count(), cap });
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let framed = Laurent1::monomial(-3 * w as i32, sign) * kauffman_bracket(d);
    let in_t = framed.compress(4).ok_or(PolyError::HalfInteger)?;
    if !in_t.is_whole_power() {
        return Err(PolyError::HalfInteger.into());
    }
    Ok(in_t)
}

/// `|p(-1)|` for a polynomial with whole exponents.
pub fn abs_value_at_minus_one(p: &Laurent1) -> Result<BigInt, PolyError> {
    let (num, den) = p.eval_int(-1)?;
    debug_assert!(den.is_one());
    Ok(num.abs())
}
