//! Harder-Narasimhan combinatorics on dimension vectors.
//!
//! This module decides semistability of dimension types by the recursive
//! dense-stratum criterion, enumerates HN types with their stratum
//! codimensions, evaluates the HN recursion on point counts, and implements
//! the polygon/coarsening combinatorics behind the resolved recursion.

use std::cell::RefCell;
use std::collections::HashMap;

use num::rational::Ratio;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Slope, StabilityData};
use crate::ratfun::RatFun;
use crate::RatFunQ;

/// A tuple of semistable dimension vectors with strictly decreasing slopes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct HNType {
    parts: Vec<DimVector>,
}

impl HNType {
    pub fn parts(&self) -> &[DimVector] {
        &self.parts
    }

    pub fn weight(&self) -> DimVector {
        DimVector::sum_of(&self.parts)
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn polygon(&self, stab: &StabilityData) -> Polygon {
        Polygon::from_tuple(stab, &self.parts)
    }
}

/// The polygon of a tuple: prefix sums of `(dim, Theta)` starting at `(0,0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polygon {
    vertices: Vec<(i64, i64)>,
}

impl Polygon {
    pub fn from_tuple(stab: &StabilityData, parts: &[DimVector]) -> Polygon {
        let mut vertices = vec![(0i64, 0i64)];
        let (mut x, mut y) = (0i64, 0i64);
        for p in parts {
            x += p.total();
            y += stab.weight_of(p);
            vertices.push((x, y));
        }
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    /// Value of the piecewise-linear function at `x` (must lie in range).
    fn value_at(&self, x: i64) -> Ratio<i64> {
        let vs = &self.vertices;
        assert!(x >= vs[0].0 && x <= vs[vs.len() - 1].0);
        for w in vs.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x <= x1 {
                // y0 + (y1-y0)(x-x0)/(x1-x0)
                return Ratio::from_integer(y0)
                    + Ratio::new((y1 - y0) * (x - x0), x1 - x0);
            }
        }
        unreachable!()
    }
}

/// `sum_{k<l} <d^l, d^k>`, the bracket of a tuple (note the reversed order).
pub fn bracket_type(quiver: &Quiver, parts: &[DimVector]) -> i64 {
    let mut acc = 0;
    for k in 0..parts.len() {
        for l in k + 1..parts.len() {
            acc += quiver.euler_form(&parts[l], &parts[k]);
        }
    }
    acc
}

/// Codimension of the HN stratum: `-sum_{k<l} <d^k, d^l>`.
pub fn hn_codim(quiver: &Quiver, hn_type: &HNType) -> u64 {
    let parts = hn_type.parts();
    let mut acc = 0i64;
    for k in 0..parts.len() {
        for l in k + 1..parts.len() {
            acc -= quiver.euler_form(&parts[k], &parts[l]);
        }
    }
    assert!(acc >= 0, "HN stratum codimension must be nonnegative");
    acc as u64
}

/// The `I`-coarsening of a tuple: sums the blocks between consecutive kept
/// cut positions. `cuts` is a strictly increasing subset of `1..=s-1`.
pub fn coarsen(parts: &[DimVector], cuts: &[usize]) -> Result<Vec<DimVector>> {
    let s = parts.len();
    let max = s.saturating_sub(1);
    for w in cuts.windows(2) {
        assert!(w[0] < w[1], "cut positions must be strictly increasing");
    }
    for &c in cuts {
        if c < 1 || c > max {
            return Err(Error::CutOutOfRange { pos: c, max });
        }
    }
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0usize;
    for &c in cuts.iter().chain(std::iter::once(&s)) {
        out.push(DimVector::sum_of(&parts[start..c]));
        start = c;
    }
    Ok(out)
}

/// Polygon comparison: `d* <= e*` iff `P(d*)` lies on or below `P(e*)`.
/// Checked exactly at the union of both vertex x-coordinates, which is
/// sufficient for piecewise-linear functions.
pub fn polygon_leq(
    stab: &StabilityData,
    lhs: &[DimVector],
    rhs: &[DimVector],
) -> Result<bool> {
    let wl = DimVector::sum_of(lhs);
    let wr = DimVector::sum_of(rhs);
    if wl != wr {
        return Err(Error::WeightMismatch {
            left: wl.to_string(),
            right: wr.to_string(),
        });
    }
    let pl = Polygon::from_tuple(stab, lhs);
    let pr = Polygon::from_tuple(stab, rhs);
    let mut xs: Vec<i64> = pl
        .vertices()
        .iter()
        .chain(pr.vertices())
        .map(|&(x, _)| x)
        .collect();
    xs.sort_unstable();
    xs.dedup();
    Ok(xs.into_iter().all(|x| pl.value_at(x) <= pr.value_at(x)))
}

/// Weakly decreasing part slopes (collinear vertices allowed).
pub fn is_convex(stab: &StabilityData, parts: &[DimVector]) -> Result<bool> {
    let mut prev: Option<Slope> = None;
    for p in parts {
        let s = stab.slope(p)?;
        if let Some(q) = prev {
            if s > q {
                return Ok(false);
            }
        }
        prev = Some(s);
    }
    Ok(true)
}

/// A subset of cut positions is admissible when the coarsened tuple is convex
/// and its polygon lies on or below the polygon of the original tuple.
pub fn is_admissible(stab: &StabilityData, parts: &[DimVector], cuts: &[usize]) -> Result<bool> {
    let coarse = coarsen(parts, cuts)?;
    Ok(is_convex(stab, &coarse)? && polygon_leq(stab, &coarse, parts)?)
}

/// Alternating sum `sum_{I admissible} (-1)^{#I}` over all cut subsets.
///
/// Precondition: the tuple is a single part, or every proper prefix has slope
/// strictly above the slope of the total weight.
pub fn coarsening_euler_sum(stab: &StabilityData, parts: &[DimVector]) -> Result<i64> {
    let s = parts.len();
    assert!(s >= 1, "empty tuple");
    let total = DimVector::sum_of(parts);
    let total_slope = stab.slope(&total)?;
    if s > 1 {
        let mut prefix = DimVector::zero(total.len());
        for p in &parts[..s - 1] {
            prefix = prefix.add(p);
            if stab.slope(&prefix)? <= total_slope {
                return Err(Error::TupleBelowBaseline);
            }
        }
    }
    assert!(s <= 24, "tuple too long for subset enumeration");
    let mut acc = 0i64;
    for mask in 0u32..(1u32 << (s - 1)) {
        let cuts: Vec<usize> = (1..s).filter(|&c| mask & (1 << (c - 1)) != 0).collect();
        if is_admissible(stab, parts, &cuts)? {
            acc += if cuts.len().is_multiple_of(2) { 1 } else { -1 };
        }
    }
    Ok(acc)
}

/// Per-`(quiver, stability)` session carrying the memo caches of the
/// semistability and HN recursions. Confine a session to one thread;
/// distinct sessions are independent.
pub struct HnContext<'a> {
    quiver: &'a Quiver,
    stab: &'a StabilityData,
    ss_memo: RefCell<HashMap<DimVector, bool>>,
    ev_memo: RefCell<HashMap<DimVector, RatFunQ>>,
}

impl<'a> HnContext<'a> {
    pub fn new(quiver: &'a Quiver, stab: &'a StabilityData) -> Self {
        assert_eq!(quiver.num_vertices(), stab.len());
        HnContext {
            quiver,
            stab,
            ss_memo: RefCell::new(HashMap::new()),
            ev_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        self.quiver
    }

    pub fn stability(&self) -> &StabilityData {
        self.stab
    }

    /// Whether `d` is a semistable dimension type: no HN type of weight `d`
    /// with vanishing pairwise Euler brackets exists besides `(d)` itself.
    pub fn is_semistable(&self, d: &DimVector) -> Result<bool> {
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        if let Some(&v) = self.ss_memo.borrow().get(d) {
            return Ok(v);
        }
        let v = if self.stab.is_constant_on_support(d) {
            true
        } else {
            self.destabilizing_type(d)?.is_none()
        };
        self.ss_memo.borrow_mut().insert(d.clone(), v);
        Ok(v)
    }

    /// A proper HN type of weight `d` whose pairwise Euler brackets all
    /// vanish — the certificate that `d` is not semistable.
    pub fn destabilizing_type(&self, d: &DimVector) -> Result<Option<Vec<DimVector>>> {
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        let mut prefix = Vec::new();
        if self.flat_dfs(d, &mut prefix, None)? {
            Ok(Some(prefix))
        } else {
            Ok(None)
        }
    }

    fn flat_dfs(
        &self,
        remaining: &DimVector,
        prefix: &mut Vec<DimVector>,
        bound: Option<Slope>,
    ) -> Result<bool> {
        for e in remaining.box_iter() {
            if e.is_zero() {
                continue;
            }
            if prefix.is_empty() && e == *remaining {
                continue; // a proper type has at least two parts
            }
            let se = self.stab.slope(&e)?;
            if let Some(b) = bound {
                if se >= b {
                    continue;
                }
            }
            if prefix.iter().any(|p| self.quiver.euler_form(p, &e) != 0) {
                continue;
            }
            if !self.is_semistable(&e)? {
                continue;
            }
            let rest = remaining.checked_sub(&e).unwrap();
            prefix.push(e);
            if rest.is_zero() {
                return Ok(true);
            }
            if self.flat_dfs(&rest, prefix, Some(se))? {
                return Ok(true);
            }
            prefix.pop();
        }
        Ok(false)
    }

    /// All HN types of weight `d` in lexicographic order on the part
    /// sequences; `proper_only` drops `(d)`.
    pub fn enumerate_hn_types(&self, d: &DimVector, proper_only: bool) -> Result<Vec<HNType>> {
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        let mut types = Vec::new();
        self.hn_types_rec(d, None, &mut Vec::new(), &mut types)?;
        if proper_only {
            types.retain(|t| t.length() > 1);
        }
        types.sort();
        Ok(types)
    }

    fn hn_types_rec(
        &self,
        remaining: &DimVector,
        bound: Option<Slope>,
        prefix: &mut Vec<DimVector>,
        out: &mut Vec<HNType>,
    ) -> Result<()> {
        for e in remaining.box_iter() {
            if e.is_zero() {
                continue;
            }
            let se = self.stab.slope(&e)?;
            if let Some(b) = bound {
                if se >= b {
                    continue;
                }
            }
            if !self.is_semistable(&e)? {
                continue;
            }
            let rest = remaining.checked_sub(&e).unwrap();
            prefix.push(e);
            if rest.is_zero() {
                out.push(HNType {
                    parts: prefix.clone(),
                });
            } else {
                self.hn_types_rec(&rest, Some(se), prefix, out)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    /// Validates an externally supplied part sequence as an HN type.
    pub fn hn_type(&self, parts: Vec<DimVector>) -> Result<HNType> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("empty HN type".into()));
        }
        let mut prev: Option<Slope> = None;
        for p in &parts {
            let s = self.stab.slope(p)?;
            if let Some(q) = prev {
                if s >= q {
                    return Err(Error::InvalidParameter(format!(
                        "slopes not strictly decreasing at part {p}"
                    )));
                }
            }
            if !self.is_semistable(p)? {
                return Err(Error::InvalidParameter(format!(
                    "part {p} is not a semistable dimension type"
                )));
            }
            prev = Some(s);
        }
        Ok(HNType { parts })
    }

    /// The counting series `#R_d^ss / #G_d` via the HN recursion.
    pub fn ev_semistable(&self, d: &DimVector) -> Result<RatFunQ> {
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        if let Some(v) = self.ev_memo.borrow().get(d) {
            return Ok(v.clone());
        }
        let value = if self.stab.is_constant_on_support(d) {
            self.quiver.count_r_over_g(d)
        } else {
            let mut acc = self.quiver.count_r_over_g(d);
            for t in self.enumerate_hn_types(d, true)? {
                let mut term = RatFun::q_power(-bracket_type(self.quiver, t.parts()));
                for p in t.parts() {
                    term = &term * &self.ev_semistable(p)?;
                }
                acc = &acc - &term;
            }
            acc
        };
        self.ev_memo.borrow_mut().insert(d.clone(), value.clone());
        Ok(value)
    }
}
