//! Production algorithms for the counting series `#R_d^ss / #G_d` and the
//! assembly of Poincare polynomials, Betti numbers and Euler characteristics.
//!
//! Three independent routes compute the same series: the HN recursion (see
//! [`crate::hn::HnContext::ev_semistable`]), the brute-force resolved sum over
//! slope-constrained tuples, and the transfer-matrix corner inversion. A
//! numeric interpolation fast path evaluates the transfer matrix at integer
//! points and reconstructs the polynomial.

use std::collections::HashMap;

use num::rational::Ratio;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigInt;

use crate::error::{Error, Result};
use crate::hn::HnContext;
use crate::poly::Poly;
use crate::quiver::{DimVector, Quiver, StabilityData};
use crate::ratfun::RatFun;
use crate::{PolyQ, RatFunQ};

type BigRational = Ratio<BigInt>;

/// The index set of the transfer matrix:
/// `{e : 0 <= e <= d, mu(e) > mu(d)} ∪ {0, d}`, stored in a fixed linear
/// extension of the componentwise order (total dimension, then lex).
#[derive(Clone, Debug)]
pub struct Lattice {
    points: Vec<DimVector>,
    index: HashMap<DimVector, usize>,
}

impl Lattice {
    pub fn points(&self) -> &[DimVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, e: &DimVector) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// Enumerates the lattice for `d`, deterministically ordered.
pub fn lattice_points(quiver: &Quiver, stab: &StabilityData, d: &DimVector) -> Result<Lattice> {
    let _ = quiver;
    if d.is_zero() {
        return Err(Error::ZeroDimVector);
    }
    let mu_d = stab.slope(d)?;
    let mut points: Vec<DimVector> = Vec::new();
    for e in d.box_iter() {
        if e.is_zero() || e == *d || stab.slope(&e)? > mu_d {
            points.push(e);
        }
    }
    points.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    let index = points
        .iter()
        .enumerate()
        .map(|(k, e)| (e.clone(), k))
        .collect();
    Ok(Lattice { points, index })
}

/// The transfer matrix over the lattice: `T_{e,f} = q^{<e-f,e>} #R_{f-e}/#G_{f-e}`
/// when `e <= f` componentwise, zero otherwise. Upper unitriangular in the
/// stored order.
pub fn transfer_matrix(quiver: &Quiver, stab: &StabilityData, lattice: &Lattice) -> Vec<Vec<RatFunQ>> {
    let _ = stab;
    let n = lattice.len();
    let mut t = vec![vec![RatFun::zero(); n]; n];
    for (a, e) in lattice.points().iter().enumerate() {
        for (b, f) in lattice.points().iter().enumerate() {
            if !e.leq(f) {
                continue;
            }
            let diff = f.checked_sub(e).unwrap();
            let ef: Vec<i64> = e
                .signed()
                .iter()
                .zip(f.signed())
                .map(|(&x, y)| x - y)
                .collect();
            let exp = quiver.euler_form_signed(&ef, &e.signed());
            let entry = &RatFun::q_power(exp) * &quiver.count_r_over_g(&diff);
            t[a][b] = entry;
        }
    }
    t
}

/// `(T^{-1})_{0,d}` by back-substitution on the single column of `d`:
/// `x_d = 1`, then `x_e = -sum_{e<f} T_{e,f} x_f` in reverse order.
pub fn corner_inverse(t: &[Vec<RatFunQ>], lattice: &Lattice) -> RatFunQ {
    let n = lattice.len();
    if n == 0 {
        return RatFun::zero();
    }
    if n == 1 {
        // lattice {0} = {d} cannot occur for d != 0; kept total for safety
        return RatFun::one();
    }
    let mut x = vec![RatFun::zero(); n];
    x[n - 1] = RatFun::one();
    for a in (0..n - 1).rev() {
        let mut acc = RatFun::zero();
        for b in a + 1..n {
            if t[a][b].is_zero() || x[b].is_zero() {
                continue;
            }
            acc = &acc + &(&t[a][b] * &x[b]);
        }
        x[a] = -&acc;
    }
    x[0].clone()
}

/// The counting series via the transfer-matrix method: `-(T^{-1})_{0,d}`.
pub fn ev_semistable_tm(quiver: &Quiver, stab: &StabilityData, d: &DimVector) -> Result<RatFunQ> {
    let lattice = lattice_points(quiver, stab, d)?;
    let t = transfer_matrix(quiver, stab, &lattice);
    Ok(-&corner_inverse(&t, &lattice))
}

/// The resolved recursion evaluated by brute force: sum over all ordered
/// tuples of nonzero dimension vectors of weight `d` whose proper partial
/// sums have slope strictly above `mu(d)`, of
/// `(-1)^{s-1} q^{-<d*>} prod_k #R_{d^k}/#G_{d^k}`.
///
/// Exponential in `d`; this is the designated independent oracle. `budget`
/// caps the number of completed tuples.
pub fn resolved_sum(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    budget: u64,
) -> Result<RatFunQ> {
    if d.is_zero() {
        return Err(Error::ZeroDimVector);
    }
    let mu_d = stab.slope(d)?;
    let mut acc = RatFun::zero();
    let mut count = 0u64;
    let prefix = DimVector::zero(d.len());
    resolved_dfs(
        quiver, stab, d, mu_d, &prefix, 0, &RatFun::one(), 0, &mut acc, &mut count, budget,
    )?;
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn resolved_dfs(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    mu_d: crate::quiver::Slope,
    prefix: &DimVector,
    bracket: i64,
    product: &RatFunQ,
    parts: usize,
    acc: &mut RatFunQ,
    count: &mut u64,
    budget: u64,
) -> Result<()> {
    let remaining = d.checked_sub(prefix).unwrap();
    for c in remaining.box_iter() {
        if c.is_zero() {
            continue;
        }
        // appending c after the parts summing to `prefix` adds <c, prefix>
        // to the tuple bracket <d*> = sum_{k<l} <d^l, d^k>
        let new_bracket = bracket + quiver.euler_form(&c, prefix);
        let new_prefix = prefix.add(&c);
        let new_product = &(product * &quiver.count_r_over_g(&c));
        if new_prefix == *d {
            *count += 1;
            if *count > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            let mut term = &RatFun::q_power(-new_bracket) * new_product;
            if parts % 2 == 1 {
                term = -&term;
            }
            *acc = &*acc + &term;
        } else if stab.slope(&new_prefix)? > mu_d {
            resolved_dfs(
                quiver,
                stab,
                d,
                mu_d,
                &new_prefix,
                new_bracket,
                new_product,
                parts + 1,
                acc,
                count,
                budget,
            )?;
        }
    }
    Ok(())
}

/// Engine route selection for the counting series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    TransferMatrix,
    Recursion,
    Oracle,
    Interpolation,
}

/// Default tuple budget for the brute-force oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000;

/// Computes the counting series `#R_d^ss/#G_d` by the requested route.
pub fn counting_series(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    method: Method,
) -> Result<RatFunQ> {
    match method {
        Method::TransferMatrix | Method::Interpolation => ev_semistable_tm(quiver, stab, d),
        Method::Recursion => HnContext::new(quiver, stab).ev_semistable(d),
        Method::Oracle => resolved_sum(quiver, stab, d, DEFAULT_ORACLE_BUDGET),
    }
}

/// Poincare data of the moduli space for a coprime dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiResult {
    /// Poincare polynomial in `q = v^2`.
    pub poincare_q: PolyQ,
    /// Betti numbers `b_0, b_1, ...` (odd entries are zero).
    pub betti: Vec<u64>,
    /// Euler characteristic, the value at `q = 1`.
    pub euler: i64,
    /// `1 - <d,d>`.
    pub moduli_dim: i64,
    pub coprime: bool,
    /// True when the semistable locus is empty (zero polynomial).
    pub empty: bool,
}

impl BettiResult {
    /// Coefficients by `v`-degree: the coefficient of `q^i` sits at `v^{2i}`.
    pub fn poincare_v_coeffs(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, b) in self.betti.iter().enumerate() {
            let _ = i;
            out.push(*b);
        }
        out
    }

    /// Poincare polynomial rendered in `v` with even exponents.
    pub fn poincare_v_string(&self) -> String {
        self.poincare_q.display_with("v", 2)
    }
}

fn build_result(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    p: PolyQ,
) -> Result<BettiResult> {
    let moduli_dim = quiver.moduli_dimension(d)?;
    let coprime = stab.is_coprime(d)?;
    let empty = p.is_zero();
    let mut betti = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(Error::Internal(format!(
                "negative Betti number at degree {i}: {c}"
            )));
        }
        let b = c
            .to_u64()
            .ok_or_else(|| Error::Internal(format!("Betti number overflow at degree {i}")))?;
        betti.push(b);
        if i + 1 < p.coeffs().len() {
            betti.push(0); // odd cohomology vanishes
        }
    }
    let euler = p
        .eval_int(&BigInt::one())
        .to_i64()
        .ok_or_else(|| Error::Internal("Euler characteristic overflow".into()))?;
    Ok(BettiResult {
        poincare_q: p,
        betti,
        euler,
        moduli_dim,
        coprime,
        empty,
    })
}

/// Poincare polynomial, Betti numbers and Euler characteristic via the
/// transfer-matrix route. Refuses non-coprime `d`, where the cohomological
/// reading is unavailable.
pub fn poincare(quiver: &Quiver, stab: &StabilityData, d: &DimVector) -> Result<BettiResult> {
    poincare_from_series(quiver, stab, d, &ev_semistable_tm(quiver, stab, d)?)
}

/// Assembles the Betti data from a precomputed counting series,
/// `P = (q - 1) * ev_ss(d)` expanded as a polynomial.
pub fn poincare_from_series(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    ev: &RatFunQ,
) -> Result<BettiResult> {
    ensure_coprime(stab, d)?;
    let q_minus_one = RatFun::from_poly(Poly::from_coeffs(vec![
        BigInt::from(-1),
        BigInt::from(1),
    ]));
    let p = (&q_minus_one * ev).to_poly()?;
    build_result(quiver, stab, d, p)
}

fn ensure_coprime(stab: &StabilityData, d: &DimVector) -> Result<()> {
    if !stab.is_coprime(d)? {
        let theta = stab.weight_of(d);
        let dim = d.total();
        return Err(Error::NotCoprime {
            theta,
            dim,
            gcd: num::integer::gcd(theta.abs(), dim),
        });
    }
    Ok(())
}

/// Numeric back-substitution: evaluates the transfer matrix at `q = q0` and
/// returns the counting series value `-(T^{-1})_{0,d}(q0)`.
pub fn counting_series_at(
    t: &[Vec<RatFunQ>],
    lattice: &Lattice,
    q0: &BigRational,
) -> Result<BigRational> {
    let n = lattice.len();
    let mut x = vec![BigRational::zero(); n];
    if n == 0 {
        return Ok(BigRational::zero());
    }
    x[n - 1] = BigRational::one();
    for a in (0..n - 1).rev() {
        let mut acc = BigRational::zero();
        for b in a + 1..n {
            if t[a][b].is_zero() || x[b].is_zero() {
                continue;
            }
            acc += t[a][b].eval(q0)? * x[b].clone();
        }
        x[a] = -acc;
    }
    Ok(-x[0].clone())
}

/// Interpolation fast path: samples `(q-1) * ev_ss` at integer points
/// `q = 2, 3, ...`, reconstructs the degree-bounded polynomial by Lagrange
/// interpolation, and verifies it at extra sample points. Falls back to the
/// symbolic route on any mismatch.
pub fn poincare_interpolated(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
) -> Result<BettiResult> {
    ensure_coprime(stab, d)?;
    let degree_bound = quiver.moduli_dimension(d)?.max(0) as usize;
    let lattice = lattice_points(quiver, stab, d)?;
    let t = transfer_matrix(quiver, stab, &lattice);

    // degree_bound + 1 interpolation nodes, one held-out node, one extra
    let nodes = degree_bound + 1;
    let mut xs = Vec::with_capacity(nodes + 2);
    let mut ys = Vec::with_capacity(nodes + 2);
    for k in 0..nodes + 2 {
        let q0 = BigRational::from_integer(BigInt::from(2 + k as i64));
        let ev = counting_series_at(&t, &lattice, &q0)?;
        let val = (q0.clone() - BigRational::one()) * ev;
        xs.push(q0);
        ys.push(val);
    }

    if let Some(p) = interpolate_integer_poly(&xs[..nodes], &ys[..nodes]) {
        let verified = (nodes..nodes + 2).all(|k| {
            p.eval(&xs[k]) == ys[k]
        });
        if verified {
            return build_result(quiver, stab, d, p);
        }
    }
    // degree bound or integrality failed; the symbolic route is authoritative
    poincare(quiver, stab, d)
}

/// Lagrange interpolation; returns `None` when the result has non-integer
/// coefficients.
fn interpolate_integer_poly(xs: &[BigRational], ys: &[BigRational]) -> Option<PolyQ> {
    let n = xs.len();
    let zero = BigRational::zero();
    let mut coeffs = vec![zero.clone(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            // multiply by (x - x_j)
            for k in (0..=deg).rev() {
                let c = basis[k].clone();
                basis[k + 1] += c.clone();
                basis[k] = -c * xs[j].clone();
                // basis[k+1] accumulated the shifted coefficient; order of
                // the two updates keeps the in-place multiply correct
            }
            deg += 1;
            denom *= xs[i].clone() - xs[j].clone();
        }
        let scale = ys[i].clone() / denom;
        for k in 0..=deg {
            coeffs[k] += basis[k].clone() * scale.clone();
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in coeffs {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    Some(Poly::from_coeffs(out))
}
