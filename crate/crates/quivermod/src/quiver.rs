//! Quivers, dimension vectors, stability data, the Euler form and the exact
//! point counts of representation spaces and base change groups.

use std::cmp::Ordering;
use std::fmt;

use num::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::{PolyQ, RatFunQ};

/// A finite acyclic multi-quiver, stored as an arrow multiplicity matrix.
///
/// Acyclicity (and hence absence of loops) is checked at construction; a
/// topological vertex order is computed once and cached.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    mult: Vec<Vec<u32>>,
    topo_order: Vec<usize>,
}

impl Quiver {
    /// Builds a quiver from vertex names and arrows `(from, to, count)`.
    pub fn new(vertices: Vec<String>, arrows: &[(usize, usize, u32)]) -> Result<Self> {
        let n = vertices.len();
        let mut mult = vec![vec![0u32; n]; n];
        for &(i, j, c) in arrows {
            assert!(i < n && j < n, "arrow endpoint out of range");
            mult[i][j] += c;
        }
        let topo_order = topological_order(&mult)?;
        Ok(Quiver {
            vertices,
            mult,
            topo_order,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    /// Arrow multiplicity `r_{ij}`.
    pub fn arrow_count(&self, i: usize, j: usize) -> u32 {
        self.mult[i][j]
    }

    /// A vertex order with all arrows pointing from later to earlier vertices.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo_order
    }

    /// Euler form `<d, e> = sum_i d_i e_i - sum_{i,j} r_{ij} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> i64 {
        self.check_len(d);
        self.check_len(e);
        self.euler_form_signed(
            &d.entries().iter().map(|&x| x as i64).collect::<Vec<_>>(),
            &e.entries().iter().map(|&x| x as i64).collect::<Vec<_>>(),
        )
    }

    /// Euler form on arbitrary integer vectors (used for matrix exponents
    /// `<e - f, e>` where the difference has negative entries).
    pub fn euler_form_signed(&self, d: &[i64], e: &[i64]) -> i64 {
        let n = self.num_vertices();
        assert!(d.len() == n && e.len() == n);
        let mut acc = 0i64;
        for ((&di, &ei), row) in d.iter().zip(e).zip(&self.mult) {
            acc += di * ei;
            for (&ej, &m) in e.iter().zip(row) {
                acc -= m as i64 * di * ej;
            }
        }
        acc
    }

    /// `#R_d = q^{sum r_{ij} d_i d_j}`.
    pub fn count_r(&self, d: &DimVector) -> RatFunQ {
        RatFun::from_poly(Poly::monomial(BigInt::from(1), self.r_exponent(d)))
    }

    /// Dimension of the representation space, `sum r_{ij} d_i d_j`.
    pub fn r_exponent(&self, d: &DimVector) -> usize {
        self.check_len(d);
        let mut acc = 0usize;
        for i in 0..self.num_vertices() {
            for j in 0..self.num_vertices() {
                acc += self.mult[i][j] as usize * d.get(i) as usize * d.get(j) as usize;
            }
        }
        acc
    }

    /// `#G_d = prod_i #GL_{d_i}(F_q)` as a polynomial in `q`.
    pub fn count_g_poly(&self, d: &DimVector) -> PolyQ {
        self.check_len(d);
        let mut acc = Poly::one();
        for i in 0..self.num_vertices() {
            acc = &acc * &gl_count(d.get(i));
        }
        acc
    }

    pub fn count_g(&self, d: &DimVector) -> RatFunQ {
        RatFun::from_poly(self.count_g_poly(d))
    }

    /// `#R_d / #G_d` as a reduced rational function.
    pub fn count_r_over_g(&self, d: &DimVector) -> RatFunQ {
        self.count_r(d)
            .checked_div(&self.count_g(d))
            .expect("#G_d is never the zero polynomial")
    }

    /// `1 - <d, d>`, the dimension of the moduli space when the semistable
    /// locus is nonempty.
    pub fn moduli_dimension(&self, d: &DimVector) -> Result<i64> {
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        Ok(1 - self.euler_form(d, d))
    }

    fn check_len(&self, d: &DimVector) {
        assert!(
            d.len() == self.num_vertices(),
            "dimension vector has {} entries, quiver has {} vertices",
            d.len(),
            self.num_vertices()
        );
    }
}

fn topological_order(mult: &[Vec<u32>]) -> Result<Vec<usize>> {
    let n = mult.len();
    for (i, row) in mult.iter().enumerate() {
        if row[i] > 0 {
            return Err(Error::CyclicQuiver);
        }
    }
    let mut indeg = vec![0usize; n];
    for row in mult {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                indeg[j] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop() {
        order.push(i);
        for j in 0..n {
            if mult[i][j] > 0 {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(Error::CyclicQuiver)
    }
}

/// `#GL_n(F_q) = q^{n(n-1)/2} * prod_{k=1}^n (q^k - 1)`.
pub fn gl_count(n: u32) -> PolyQ {
    let n_us = n as usize;
    let mut acc: PolyQ = Poly::monomial(BigInt::from(1), n_us * n_us.saturating_sub(1) / 2);
    for k in 1..=n as usize {
        let mut coeffs = vec![BigInt::from(0); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] = BigInt::from(1);
        acc = &acc * &Poly::from_coeffs(coeffs);
    }
    acc
}

/// A dimension vector `d` in `N^I`, indexed like the quiver's vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    /// Unit vector at vertex `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `dim d = sum_i d_i`.
    pub fn total(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn add(&self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len());
        DimVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, `None` when some entry would go negative.
    pub fn checked_sub(&self, rhs: &DimVector) -> Option<DimVector> {
        assert_eq!(self.len(), rhs.len());
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// Componentwise partial order `self <= rhs`.
    pub fn leq(&self, rhs: &DimVector) -> bool {
        assert_eq!(self.len(), rhs.len());
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    pub fn signed(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// All vectors `0 <= e <= self` in lexicographic order (first entry most
    /// significant), including zero and `self`.
    pub fn box_iter(&self) -> BoxIter {
        BoxIter {
            bound: self.0.clone(),
            next: Some(vec![0; self.0.len()]),
        }
    }

    pub fn sum_of(parts: &[DimVector]) -> DimVector {
        let mut acc = DimVector::zero(parts[0].len());
        for p in parts {
            acc = acc.add(p);
        }
        acc
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub struct BoxIter {
    bound: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Iterator for BoxIter {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        let cur = self.next.take()?;
        let out = DimVector(cur.clone());
        let mut cur = cur;
        // odometer with the last coordinate fastest
        for i in (0..cur.len()).rev() {
            if cur[i] < self.bound[i] {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                self.next = Some(cur);
                return Some(out);
            }
        }
        self.next = None;
        Some(out)
    }
}

/// An integral weight `Theta` defining the slope function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityData {
    theta: Vec<i64>,
}

impl StabilityData {
    pub fn new(theta: Vec<i64>) -> Self {
        StabilityData { theta }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    /// `Theta(d)`.
    pub fn weight_of(&self, d: &DimVector) -> i64 {
        assert_eq!(self.theta.len(), d.len());
        self.theta
            .iter()
            .zip(d.entries())
            .map(|(&t, &x)| t * x as i64)
            .sum()
    }

    /// `mu(d) = Theta(d) / dim d`.
    pub fn slope(&self, d: &DimVector) -> Result<Slope> {
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        Ok(Slope {
            theta: self.weight_of(d),
            dim: d.total(),
        })
    }

    /// `gcd(|Theta(d)|, dim d) = 1`.
    pub fn is_coprime(&self, d: &DimVector) -> Result<bool> {
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        Ok(num::integer::gcd(self.weight_of(d).abs(), d.total()) == 1)
    }

    /// Whether `Theta` takes a single value on the support of `d`.
    pub fn is_constant_on_support(&self, d: &DimVector) -> bool {
        let mut vals = d.support().into_iter().map(|i| self.theta[i]);
        match vals.next() {
            None => true,
            Some(first) => vals.all(|t| t == first),
        }
    }
}

/// An exact slope `Theta(d) / dim d`, compared by cross-multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slope {
    theta: i64,
    dim: i64,
}

impl Slope {
    pub fn new(theta: i64, dim: i64) -> Self {
        assert!(dim > 0, "slope denominator must be positive");
        Slope { theta, dim }
    }

    pub fn theta(&self) -> i64 {
        self.theta
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Slope) -> Ordering {
        let lhs = self.theta as i128 * other.dim as i128;
        let rhs = other.theta as i128 * self.dim as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.theta, self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker(n: u32) -> Quiver {
        Quiver::new(vec!["i".into(), "j".into()], &[(0, 1, n)]).unwrap()
    }

    fn chain3() -> Quiver {
        Quiver::new(
            vec!["i".into(), "j".into(), "k".into()],
            &[(0, 1, 1), (1, 2, 1)],
        )
        .unwrap()
    }

    fn d(entries: &[u32]) -> DimVector {
        DimVector::new(entries.to_vec())
    }

    #[test]
    fn acyclicity_validation() {
        assert!(kronecker(3).topological_order().len() == 2);
        assert!(Quiver::new(vec!["i".into()], &[]).is_ok());
        assert!(matches!(
            Quiver::new(vec!["i".into(), "j".into()], &[(0, 1, 1), (1, 0, 1)]),
            Err(Error::CyclicQuiver)
        ));
        assert!(matches!(
            Quiver::new(vec!["i".into()], &[(0, 0, 1)]),
            Err(Error::CyclicQuiver)
        ));
    }

    #[test]
    fn euler_form_values() {
        let k3 = kronecker(3);
        assert_eq!(k3.euler_form(&d(&[1, 0]), &d(&[0, 1])), -3);
        assert_eq!(k3.euler_form(&d(&[2, 3]), &d(&[2, 3])), -5);
        assert_eq!(chain3().euler_form(&d(&[1, 1, 1]), &d(&[1, 1, 1])), 1);
    }

    #[test]
    fn slopes() {
        let s = StabilityData::new(vec![1, 0]);
        assert_eq!(s.slope(&d(&[2, 3])).unwrap(), Slope::new(2, 5));
        let chain_s = StabilityData::new(vec![2, 3, 0]);
        assert_eq!(chain_s.slope(&d(&[0, 1, 1])).unwrap(), Slope::new(3, 2));
        assert!(matches!(
            s.slope(&d(&[0, 0])),
            Err(Error::ZeroDimVector)
        ));
        assert!(Slope::new(1, 1) > Slope::new(1, 2));
        assert_eq!(Slope::new(2, 4), Slope::new(2, 4));
        assert!(Slope::new(1, 2) < Slope::new(2, 3));
    }

    #[test]
    fn point_counts() {
        let k3 = kronecker(3);
        assert_eq!(k3.r_exponent(&d(&[2, 3])), 18);
        assert_eq!(k3.count_r(&d(&[0, 0])), RatFun::one());
        assert_eq!(chain3().r_exponent(&d(&[1, 1, 1])), 2);

        // GL_2 count: (q^2-1)(q^2-q) = q(q-1)(q^2-1)
        let one_vertex = Quiver::new(vec!["i".into()], &[]).unwrap();
        let expect = &Poly::monomial(BigInt::from(1), 1)
            * &Poly::from_coeffs(vec![BigInt::from(-1), BigInt::from(1)]);
        let expect = &expect
            * &Poly::from_coeffs(vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)]);
        assert_eq!(one_vertex.count_g_poly(&d(&[2])), expect);
        assert_eq!(one_vertex.count_g_poly(&d(&[0])), Poly::one());
        assert_eq!(
            kronecker(1).count_g_poly(&d(&[1, 1])),
            Poly::from_coeffs(vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)])
        );
    }

    #[test]
    fn coprimality() {
        let s = StabilityData::new(vec![1, 0]);
        assert!(s.is_coprime(&d(&[2, 3])).unwrap());
        assert!(!s.is_coprime(&d(&[2, 2])).unwrap());
        let chain_s = StabilityData::new(vec![2, 3, 0]);
        assert!(chain_s.is_coprime(&d(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn moduli_dimensions() {
        let k3 = kronecker(3);
        assert_eq!(k3.moduli_dimension(&d(&[1, 1])).unwrap(), 2);
        assert_eq!(k3.moduli_dimension(&d(&[2, 3])).unwrap(), 6);
        assert_eq!(chain3().moduli_dimension(&d(&[1, 1, 1])).unwrap(), 0);
        assert!(matches!(
            k3.moduli_dimension(&d(&[0, 0])),
            Err(Error::ZeroDimVector)
        ));
    }

    #[test]
    fn degree_relation() {
        // deg #R_d - deg #G_d = -<d,d>
        let k3 = kronecker(3);
        for dv in d(&[2, 2]).box_iter() {
            let r = k3.r_exponent(&dv) as i64;
            let g = k3.count_g_poly(&dv).degree().unwrap() as i64;
            assert_eq!(r - g, -k3.euler_form(&dv, &dv));
        }
    }

    #[test]
    fn box_iteration_is_lex_and_complete() {
        let all: Vec<_> = d(&[1, 2]).box_iter().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], d(&[0, 0]));
        assert_eq!(all[5], d(&[1, 2]));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
