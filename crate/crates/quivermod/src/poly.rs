//! Dense univariate polynomials with exact integer coefficients.
//!
//! The variable is called `q` throughout the crate. Coefficients are stored
//! low degree first with no trailing zeros; the zero polynomial is the empty
//! coefficient vector, so structural equality is semantic equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::Ratio;

use crate::scalar::Coeff;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        Poly::monomial(T::one(), 1)
    }

    /// Builds a polynomial from low-to-high coefficients, trimming trailing
    /// zeros to restore the representation invariant.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval(&self, x: &Ratio<T>) -> Ratio<T> {
        let mut acc = Ratio::from_integer(T::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Ratio::from_integer(c.clone());
        }
        acc
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> T {
        let mut g = T::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| c.clone() / g.clone())
                .collect(),
        )
    }

    /// Exact division: `Some(self / rhs)` when `rhs` divides `self` in `T[q]`,
    /// `None` otherwise.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dr = rhs.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dr)];
        let lead = rhs.leading_coeff().unwrap().clone();
        while let Some(d) = rem.degree() {
            if d < dr {
                return None;
            }
            let (c, r) = rem.leading_coeff().unwrap().div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let k = d - dr;
            rem = &rem - &rhs.scale(&c).shift(k);
            quot[k] = c;
            if rem.is_zero() {
                return Some(Poly::from_coeffs(quot));
            }
            // degree must strictly drop, otherwise rhs does not divide self
            if rem.degree() == Some(d) {
                return None;
            }
        }
        Some(Poly::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by `rhs` (content-stripped each step to
    /// keep coefficients small; only used up to content by `gcd`).
    fn pseudo_rem_primitive(&self, rhs: &Self) -> Self {
        let dr = rhs.degree().expect("pseudo_rem by zero");
        let lead = rhs.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        while let Some(d) = rem.degree() {
            if d < dr {
                break;
            }
            let c = rem.leading_coeff().unwrap().clone();
            rem = &rem.scale(&lead) - &rhs.scale(&c).shift(d - dr);
            rem = rem.primitive_part();
        }
        rem
    }

    /// Polynomial gcd over the integers, content included, normalized to a
    /// positive leading coefficient. Primitive PRS.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.normalize_sign();
        }
        if rhs.is_zero() {
            return self.normalize_sign();
        }
        let content = self.content().gcd(&rhs.content());
        let mut a = self.primitive_part();
        let mut b = rhs.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem_primitive(&b);
            a = b;
            b = r;
        }
        a.scale(&content).normalize_sign()
    }

    fn normalize_sign(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Renders the polynomial with ascending exponents; `exp_scale` rescales
    /// each exponent (2 turns a polynomial in `q` into one in `v = q^{1/2}`).
    pub fn display_with(&self, var: &str, exp_scale: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let e = k * exp_scale;
            if e == 0 {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                if e == 1 {
                    out.push_str(var);
                } else {
                    out.push_str(&format!("{var}^{e}"));
                }
            }
        }
        out
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<T: Coeff> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("q", 1))
    }
}

impl<T: Coeff> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
