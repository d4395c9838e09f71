//! Built-in example families (chains, subspace arrangements, flags,
//! generalized Kronecker quivers) and closed-form reference polynomials used
//! to cross-check the engine.

use std::collections::BTreeMap;

use num::rational::Ratio;
use num::traits::{One, ToPrimitive, Zero};
use num::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qseries::q_binomial;
use crate::quiver::{DimVector, Quiver, StabilityData};
use crate::ratfun::RatFun;
use crate::{PolyQ, RatFunQ};

/// Chain quiver `i_1 -> i_2 -> ... -> i_n` with weights `Theta(i_k) = -k`.
pub fn preset_linear(n: u32) -> Result<(Quiver, StabilityData)> {
    if n < 1 {
        return Err(Error::InvalidParameter("linear: n must be >= 1".into()));
    }
    let vertices = (1..=n).map(|k| format!("i{k}")).collect();
    let arrows: Vec<(usize, usize, u32)> =
        (0..n as usize - 1).map(|k| (k, k + 1, 1)).collect();
    let quiver = Quiver::new(vertices, &arrows)?;
    let theta = (1..=n as i64).map(|k| -k).collect();
    Ok((quiver, StabilityData::new(theta)))
}

/// Star quiver `i_k -> i_0` for `k = 1..n`, with `d = (m, 1, ..., 1)` and
/// `Theta = -i_0^*`.
pub fn preset_subspace(m: u32, n: u32) -> Result<(Quiver, StabilityData, DimVector)> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParameter(
            "subspace: m and n must be >= 1".into(),
        ));
    }
    let mut vertices = vec!["i0".to_string()];
    vertices.extend((1..=n).map(|k| format!("i{k}")));
    let arrows: Vec<(usize, usize, u32)> = (1..=n as usize).map(|k| (k, 0, 1)).collect();
    let quiver = Quiver::new(vertices, &arrows)?;
    let mut theta = vec![0i64; n as usize + 1];
    theta[0] = -1;
    let mut d = vec![1u32; n as usize + 1];
    d[0] = m;
    Ok((quiver, StabilityData::new(theta), DimVector::new(d)))
}

/// Generalized Kronecker quiver: `n` arrows `i -> j`, `d = (a, b)`,
/// `Theta = i^*`.
pub fn preset_kronecker(n: u32, a: u32, b: u32) -> Result<(Quiver, StabilityData, DimVector)> {
    if n < 1 {
        return Err(Error::InvalidParameter("kronecker: n must be >= 1".into()));
    }
    if a == 0 && b == 0 {
        return Err(Error::InvalidParameter(
            "kronecker: (a, b) must be nonzero".into(),
        ));
    }
    let quiver = Quiver::new(vec!["i".into(), "j".into()], &[(0, 1, n)])?;
    Ok((
        quiver,
        StabilityData::new(vec![1, 0]),
        DimVector::new(vec![a, b]),
    ))
}

/// Flag quiver: `r` arms of `2N + 1` vertices feeding a central vertex `i_0`,
/// with `Theta = -i_0^*`. Each arm carries weakly increasing dimensions (from
/// the outer end inward), bounded by the central dimension `d0`.
pub fn preset_flag(
    r: u32,
    big_n: u32,
    dims: &[Vec<u32>],
    d0: u32,
) -> Result<(Quiver, StabilityData, DimVector)> {
    if r < 1 {
        return Err(Error::InvalidParameter("flag: r must be >= 1".into()));
    }
    if d0 < 1 {
        return Err(Error::InvalidParameter("flag: d0 must be >= 1".into()));
    }
    let arm_len = 2 * big_n as usize + 1;
    if dims.len() != r as usize {
        return Err(Error::InvalidParameter(format!(
            "flag: expected {r} arms of dimensions, got {}",
            dims.len()
        )));
    }
    for (v, arm) in dims.iter().enumerate() {
        if arm.len() != arm_len {
            return Err(Error::InvalidParameter(format!(
                "flag: arm {} has {} dimensions, expected {arm_len}",
                v + 1,
                arm.len()
            )));
        }
        for w in arm.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidParameter(format!(
                    "flag: arm {} dimensions must be weakly increasing",
                    v + 1
                )));
            }
        }
        if *arm.last().unwrap() > d0 {
            return Err(Error::InvalidParameter(format!(
                "flag: arm {} dimensions exceed d0 = {d0}",
                v + 1
            )));
        }
    }

    let mut vertices = vec!["i0".to_string()];
    let mut arrows: Vec<(usize, usize, u32)> = Vec::new();
    let mut d = vec![d0];
    for (v, arm) in dims.iter().enumerate() {
        let base = vertices.len();
        for (p, &dim) in arm.iter().enumerate() {
            vertices.push(format!("i{}_{}", v + 1, p + 1));
            d.push(dim);
            if p + 1 < arm_len {
                arrows.push((base + p, base + p + 1, 1));
            } else {
                arrows.push((base + p, 0, 1));
            }
        }
    }
    let quiver = Quiver::new(vertices, &arrows)?;
    let mut theta = vec![0i64; d.len()];
    theta[0] = -1;
    Ok((quiver, StabilityData::new(theta), DimVector::new(d)))
}

/// Poincare polynomial of the Grassmannian `Gr_b(n)`: the Gaussian binomial.
pub fn grassmannian_reference(n: u32, b: u32) -> Result<PolyQ> {
    if b > n {
        return Err(Error::InvalidParameter(format!(
            "grassmannian: need 0 <= b <= n, got b = {b}, n = {n}"
        )));
    }
    Ok(q_binomial(n, b as i64))
}

/// Closed form for rank-2 Kronecker moduli, `d = (2, b)` with `b` odd:
/// in `q`,
/// `P = ((q-1) q)^{-1} ( [2n over b]/(q+1) - sum_{k=0}^{(b-1)/2}
///      q^{(n-b+k)k} [n over k][n over b-k] )`.
pub fn kronecker_rank2_reference(n: u32, b: u32) -> Result<PolyQ> {
    if b.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "rank-2 reference: b must be odd, got {b}"
        )));
    }
    if b > 2 * n {
        return Err(Error::InvalidParameter(format!(
            "rank-2 reference: need b <= 2n, got b = {b}, n = {n}"
        )));
    }
    let q_plus_one = RatFun::from_poly(Poly::from_coeffs(vec![
        BigInt::from(1),
        BigInt::from(1),
    ]));
    let mut inner: RatFunQ = RatFun::from_poly(q_binomial(2 * n, b as i64))
        .checked_div(&q_plus_one)?;
    for k in 0..=(b as i64 - 1) / 2 {
        let exp = (n as i64 - b as i64 + k) * k;
        let term = &RatFun::q_power(exp)
            * &RatFun::from_poly(&q_binomial::<BigInt>(n, k) * &q_binomial(n, b as i64 - k));
        inner = &inner - &term;
    }
    // divide by (q - 1) q
    let qq1 = RatFun::from_poly(Poly::from_coeffs(vec![
        BigInt::from(0),
        BigInt::from(-1),
        BigInt::from(1),
    ]));
    inner.checked_div(&qq1)?.to_poly()
}

/// Closed form for the rank-2 Kronecker Euler characteristic:
/// `chi = (bn-1)/4 * C(2n, b) - n * sum_{k=0}^{(b-1)/2} k C(n, k) C(n, b-k)`.
pub fn kronecker_rank2_euler_reference(n: u32, b: u32) -> Result<i64> {
    if b.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "rank-2 Euler reference: b must be odd, got {b}"
        )));
    }
    let binom = |top: u32, bot: i64| -> BigInt {
        if bot < 0 || bot > top as i64 {
            BigInt::zero()
        } else {
            num::integer::binomial(BigInt::from(top), BigInt::from(bot))
        }
    };
    let mut chi = Ratio::new(
        BigInt::from(b as i64 * n as i64 - 1) * binom(2 * n, b as i64),
        BigInt::from(4),
    );
    for k in 0..=(b as i64 - 1) / 2 {
        let term = BigInt::from(n) * BigInt::from(k) * binom(n, k) * binom(n, b as i64 - k);
        chi -= Ratio::from_integer(term);
    }
    if !chi.denom().is_one() {
        return Err(Error::Internal(format!(
            "rank-2 Euler reference is not an integer: {chi}"
        )));
    }
    chi.numer()
        .to_i64()
        .ok_or_else(|| Error::Internal("rank-2 Euler reference overflow".into()))
}

/// A preset addressed as `name:key=val,...` on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetSpec {
    pub family: String,
    pub params: BTreeMap<String, String>,
}

impl PresetSpec {
    /// Parses `name` or `name:key=val,key=val`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (family, rest) = match spec.split_once(':') {
            Some((f, r)) => (f, r),
            None => (spec, ""),
        };
        if family.is_empty() {
            return Err(Error::InvalidParameter("empty preset name".into()));
        }
        let mut params = BTreeMap::new();
        if !rest.is_empty() {
            for pair in rest.split(',') {
                let (key, val) = pair.split_once('=').ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "preset parameter `{pair}` is not of the form key=val"
                    ))
                })?;
                if params.insert(key.to_string(), val.to_string()).is_some() {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate preset parameter `{key}`"
                    )));
                }
            }
        }
        Ok(PresetSpec {
            family: family.to_string(),
            params,
        })
    }

    fn int(&self, key: &str) -> Result<u32> {
        let raw = self.params.get(key).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "preset {} requires parameter `{key}`",
                self.family
            ))
        })?;
        raw.parse().map_err(|_| {
            Error::InvalidParameter(format!(
                "preset parameter `{key}={raw}` is not a nonnegative integer"
            ))
        })
    }

    fn dim_list(raw: &str, what: &str) -> Result<Vec<u32>> {
        raw.split(':')
            .map(|x| {
                x.parse().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "{what} entry `{x}` is not a nonnegative integer"
                    ))
                })
            })
            .collect()
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for key in self.params.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "preset {} does not take parameter `{key}` (expected one of {})",
                    self.family,
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }

    /// Builds the quiver data. Families without a canonical dimension vector
    /// (`linear`) require an explicit `d=a:b:...` parameter.
    pub fn build(&self) -> Result<(Quiver, StabilityData, DimVector)> {
        match self.family.as_str() {
            "linear" => {
                self.check_keys(&["n", "d"])?;
                let n = self.int("n")?;
                let (quiver, stab) = preset_linear(n)?;
                let raw = self.params.get("d").ok_or_else(|| {
                    Error::InvalidParameter(
                        "preset linear requires a dimension vector, e.g. d=1:1:1".into(),
                    )
                })?;
                let d = DimVector::new(Self::dim_list(raw, "dimension vector")?);
                if d.len() != quiver.num_vertices() {
                    return Err(Error::DimensionMismatch {
                        expected: quiver.num_vertices(),
                        got: d.len(),
                    });
                }
                Ok((quiver, stab, d))
            }
            "subspace" => {
                self.check_keys(&["m", "n"])?;
                preset_subspace(self.int("m")?, self.int("n")?)
            }
            "kronecker" => {
                self.check_keys(&["n", "a", "b"])?;
                preset_kronecker(self.int("n")?, self.int("a")?, self.int("b")?)
            }
            "flag" => {
                self.check_keys(&["r", "N", "dims", "d0"])?;
                let r = self.int("r")?;
                let big_n = self.int("N")?;
                let d0 = self.int("d0")?;
                let raw = self.params.get("dims").ok_or_else(|| {
                    Error::InvalidParameter(
                        "preset flag requires arm dimensions, e.g. dims=0:1:1.0:1:2".into(),
                    )
                })?;
                let dims: Vec<Vec<u32>> = raw
                    .split('.')
                    .map(|arm| Self::dim_list(arm, "arm dimension"))
                    .collect::<Result<_>>()?;
                preset_flag(r, big_n, &dims, d0)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown preset `{other}` (expected linear, subspace, kronecker or flag)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyQ {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn linear_family() {
        let (q, s) = preset_linear(2).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.arrow_count(0, 1), 1);
        assert_eq!(s.theta(), &[-1, -2]);

        let (q, s) = preset_linear(1).unwrap();
        assert_eq!(q.num_vertices(), 1);
        assert_eq!(s.theta(), &[-1]);

        let (q, _) = preset_linear(3).unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.arrow_count(1, 2), 1);
        assert!(preset_linear(0).is_err());
    }

    #[test]
    fn subspace_family() {
        let (q, s, d) = preset_subspace(2, 3).unwrap();
        assert_eq!(q.num_vertices(), 4);
        for k in 1..=3 {
            assert_eq!(q.arrow_count(k, 0), 1);
        }
        assert_eq!(d, DimVector::new(vec![2, 1, 1, 1]));
        assert_eq!(s.theta(), &[-1, 0, 0, 0]);

        let (q, _, _) = preset_subspace(1, 1).unwrap();
        assert_eq!(q.num_vertices(), 2);
        let (_, _, d) = preset_subspace(2, 5).unwrap();
        assert_eq!(d, DimVector::new(vec![2, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn kronecker_family() {
        let (q, s, d) = preset_kronecker(3, 1, 1).unwrap();
        assert_eq!(q.arrow_count(0, 1), 3);
        assert_eq!(d, DimVector::new(vec![1, 1]));
        assert_eq!(s.theta(), &[1, 0]);
        let (_, _, d) = preset_kronecker(1, 1, 0).unwrap();
        assert_eq!(d, DimVector::new(vec![1, 0]));
        let (_, _, d) = preset_kronecker(3, 2, 3).unwrap();
        assert_eq!(d, DimVector::new(vec![2, 3]));
        assert!(preset_kronecker(1, 0, 0).is_err());
    }

    #[test]
    fn flag_family() {
        let (q, s, d) = preset_flag(1, 0, &[vec![1]], 1).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.arrow_count(1, 0), 1);
        assert_eq!(d, DimVector::new(vec![1, 1]));
        assert_eq!(s.theta(), &[-1, 0]);

        // two length-1 arms of dimension 1 into a center of dimension 2:
        // same data as subspace(2, 2)
        let (qf, sf, df) = preset_flag(2, 0, &[vec![1], vec![1]], 2).unwrap();
        let (qs, ss, ds) = preset_subspace(2, 2).unwrap();
        assert_eq!(qf.num_vertices(), qs.num_vertices());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(qf.arrow_count(i, j), qs.arrow_count(i, j));
            }
        }
        assert_eq!(sf.theta(), ss.theta());
        assert_eq!(df, ds);

        assert!(preset_flag(1, 1, &[vec![2, 1, 1]], 2).is_err()); // non-monotone
        assert!(preset_flag(1, 0, &[vec![3]], 2).is_err()); // exceeds d0
        assert!(preset_flag(2, 0, &[vec![1]], 2).is_err()); // missing arm
    }

    #[test]
    fn flag_longer_arm_structure() {
        let (q, _, d) = preset_flag(1, 1, &[vec![0, 1, 1]], 2).unwrap();
        assert_eq!(q.num_vertices(), 4);
        assert_eq!(q.arrow_count(1, 2), 1);
        assert_eq!(q.arrow_count(2, 3), 1);
        assert_eq!(q.arrow_count(3, 0), 1);
        assert_eq!(d, DimVector::new(vec![2, 0, 1, 1]));
    }

    #[test]
    fn grassmannian_values() {
        assert_eq!(grassmannian_reference(3, 1).unwrap(), p(&[1, 1, 1]));
        assert_eq!(grassmannian_reference(5, 0).unwrap(), Poly::one());
        assert_eq!(
            grassmannian_reference(4, 2).unwrap(),
            p(&[1, 1, 2, 1, 1])
        );
        assert!(grassmannian_reference(2, 3).is_err());
    }

    #[test]
    fn rank2_reference_values() {
        assert_eq!(kronecker_rank2_reference(3, 1).unwrap(), p(&[1, 1, 1]));
        assert!(kronecker_rank2_reference(1, 1).unwrap().is_zero());
        assert!(kronecker_rank2_reference(3, 2).is_err());
        assert!(kronecker_rank2_reference(2, 5).is_err());
    }

    #[test]
    fn rank2_euler_values() {
        assert_eq!(kronecker_rank2_euler_reference(3, 1).unwrap(), 3);
        assert_eq!(kronecker_rank2_euler_reference(2, 1).unwrap(), 1);
        assert_eq!(kronecker_rank2_euler_reference(3, 3).unwrap(), 13);
        assert!(kronecker_rank2_euler_reference(3, 2).is_err());
    }

    #[test]
    fn spec_parsing() {
        let s = PresetSpec::parse("kronecker:n=3,a=1,b=1").unwrap();
        assert_eq!(s.family, "kronecker");
        let (q, _, d) = s.build().unwrap();
        assert_eq!(q.arrow_count(0, 1), 3);
        assert_eq!(d, DimVector::new(vec![1, 1]));

        let s = PresetSpec::parse("subspace:m=2,n=3").unwrap();
        let (_, _, d) = s.build().unwrap();
        assert_eq!(d, DimVector::new(vec![2, 1, 1, 1]));

        let s = PresetSpec::parse("linear:n=3,d=1:1:1").unwrap();
        let (q, _, d) = s.build().unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(d, DimVector::new(vec![1, 1, 1]));

        let s = PresetSpec::parse("flag:r=2,N=0,dims=1.1,d0=2").unwrap();
        let (q, _, _) = s.build().unwrap();
        assert_eq!(q.num_vertices(), 3);

        assert!(PresetSpec::parse("kronecker:n3").is_err());
        assert!(PresetSpec::parse("kronecker:n=3,n=4").is_err());
        assert!(PresetSpec::parse("unknown:x=1").unwrap().build().is_err());
        assert!(PresetSpec::parse("linear:n=2").unwrap().build().is_err());
        assert!(PresetSpec::parse("kronecker:n=3,a=1,b=1,z=9")
            .unwrap()
            .build()
            .is_err());
    }
}
