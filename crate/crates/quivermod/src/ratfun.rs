//! Reduced rational functions in `q` with integer polynomial parts.
//!
//! Canonical form: numerator and denominator have polynomial gcd 1 (content
//! included) and the denominator has positive leading coefficient, so
//! structural equality decides equality in the fraction field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::Ratio;
use num::traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Coeff;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Coeff> RatFun<T> {
    /// Builds `num/den` in canonical reduced form.
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<T>, den: Poly<T>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RatFun { num, den }
    }

    /// Canonical pair, coprime with positive-leading denominator.
    fn make(num: Poly<T>, den: Poly<T>) -> Self {
        debug_assert!(!den.is_zero());
        let mut r = RatFun { num, den };
        if r.num.is_zero() {
            r.den = Poly::one();
        } else if r.den.leading_coeff().is_some_and(|c| c.is_negative()) {
            r.num = -&r.num;
            r.den = -&r.den;
        }
        debug_assert!(r.num.is_zero() || r.num.gcd(&r.den).is_one());
        r
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// `q^e`, with negative exponents landing in the denominator.
    pub fn q_power(e: i64) -> Self {
        if e >= 0 {
            RatFun::from_poly(Poly::monomial(T::one(), e as usize))
        } else {
            RatFun {
                num: Poly::one(),
                den: Poly::monomial(T::one(), (-e) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Converts to a polynomial; fails when the (reduced) denominator is not 1.
    pub fn to_poly(&self) -> Result<Poly<T>> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::NonPolynomial {
                num: self.num.to_string(),
                den: self.den.to_string(),
            })
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a/b / (c/d) = (a/c') * (d/b') with cross-cancellation
        let g1 = self.num.gcd(&rhs.num);
        let g2 = rhs.den.gcd(&self.den);
        let num = &self.num.div_exact(&g1).unwrap() * &rhs.den.div_exact(&g2).unwrap();
        let den = &self.den.div_exact(&g2).unwrap() * &rhs.num.div_exact(&g1).unwrap();
        Ok(Self::make(num, den))
    }

    /// Exact evaluation at a rational point; fails on a pole.
    pub fn eval(&self, x: &Ratio<T>) -> Result<Ratio<T>> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / den)
    }
}

impl<T: Coeff> Add for &RatFun<T> {
    type Output = RatFun<T>;
    fn add(self, rhs: &RatFun<T>) -> RatFun<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Henrici: with g = gcd(d1, d2) the only factors cancelling against
        // the lcm denominator divide g.
        let g = self.den.gcd(&rhs.den);
        let d2g = rhs.den.div_exact(&g).unwrap();
        let d1g = self.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d2g) + &(&rhs.num * &d1g);
        if num.is_zero() {
            return RatFun::zero();
        }
        let g2 = num.gcd(&g);
        let num = num.div_exact(&g2).unwrap();
        let den = &self.den.div_exact(&g2).unwrap() * &d2g;
        RatFun::make(num, den)
    }
}

impl<T: Coeff> Sub for &RatFun<T> {
    type Output = RatFun<T>;
    fn sub(self, rhs: &RatFun<T>) -> RatFun<T> {
        self + &(-rhs)
    }
}

impl<T: Coeff> Neg for &RatFun<T> {
    type Output = RatFun<T>;
    fn neg(self) -> RatFun<T> {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Coeff> Mul for &RatFun<T> {
    type Output = RatFun<T>;
    fn mul(self, rhs: &RatFun<T>) -> RatFun<T> {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1).unwrap() * &rhs.num.div_exact(&g2).unwrap();
        let den = &self.den.div_exact(&g2).unwrap() * &rhs.den.div_exact(&g1).unwrap();
        RatFun::make(num, den)
    }
}

impl<T: Coeff> fmt::Display for RatFun<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<T: Coeff> fmt::Debug for RatFun<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}
