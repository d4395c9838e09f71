//! Coefficient scalar abstraction.
//!
//! All polynomial and rational function arithmetic is generic over a signed
//! integer type with exact gcd and division. Production code instantiates it
//! with `BigInt` (see the aliases at the crate root); `i64` is convenient for
//! small hand computations in tests.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num::integer::Integer;
use num::traits::{FromPrimitive, Signed};

pub trait Coeff:
    Integer + Signed + FromPrimitive + Clone + Hash + Debug + Display + 'static
{
}

impl<T> Coeff for T where
    T: Integer + Signed + FromPrimitive + Clone + Hash + Debug + Display + 'static
{
}
