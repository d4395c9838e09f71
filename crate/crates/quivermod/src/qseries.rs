//! q-combinatorial atoms: q-integers, q-factorials, Gaussian binomials.
//!
//! Everything is a polynomial in `q`; the engine works in `q = v^2` and only
//! re-expands into `v` when reporting Poincare polynomials.

use crate::poly::Poly;
use crate::scalar::Coeff;

/// `[N] = 1 + q + ... + q^{N-1}`; `[0] = 0`.
pub fn q_integer<T: Coeff>(n: u32) -> Poly<T> {
    Poly::from_coeffs(vec![T::one(); n as usize])
}

/// `[N]! = [1][2]...[N]`; the empty product is 1.
pub fn q_factorial<T: Coeff>(n: u32) -> Poly<T> {
    let mut acc = Poly::one();
    for k in 1..=n {
        acc = &acc * &q_integer(k);
    }
    acc
}

/// Gaussian binomial `[n]! / ([k]! [n-k]!)`, zero outside `0 <= k <= n`.
///
/// Computed by the q-Pascal recurrence to stay inside polynomial arithmetic.
pub fn q_binomial<T: Coeff>(n: u32, k: i64) -> Poly<T> {
    if k < 0 || k > n as i64 {
        return Poly::zero();
    }
    let k = (k as u32).min(n - k as u32); // symmetry, smaller column
    let mut row: Vec<Poly<T>> = vec![Poly::one()];
    for m in 1..=n {
        let top = k.min(m);
        let mut next: Vec<Poly<T>> = Vec::with_capacity(top as usize + 1);
        for j in 0..=top {
            // [m over j] = [m-1 over j-1] + q^j [m-1 over j]
            let mut v = Poly::zero();
            if j > 0 {
                v = row[(j - 1) as usize].clone();
            }
            if (j as usize) < row.len() {
                v = &v + &row[j as usize].shift(j as usize);
            }
            next.push(v);
        }
        row = next;
    }
    row[k as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    type P = Poly<i64>;

    fn p(cs: &[i64]) -> P {
        P::from_coeffs(cs.to_vec())
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer::<i64>(3), p(&[1, 1, 1]));
        assert_eq!(q_integer::<i64>(1), P::one());
        assert!(q_integer::<i64>(0).is_zero());
    }

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial::<i64>(0), P::one());
        assert_eq!(q_factorial::<i64>(2), p(&[1, 1]));
        assert_eq!(q_factorial::<i64>(3), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial::<i64>(2, 1), p(&[1, 1]));
        assert_eq!(q_binomial::<i64>(4, 2), p(&[1, 1, 2, 1, 1]));
        assert!(q_binomial::<i64>(3, 5).is_zero());
        assert!(q_binomial::<i64>(3, -1).is_zero());
        assert_eq!(q_binomial::<i64>(5, 0), P::one());
    }

    #[test]
    fn binomial_matches_factorial_quotient() {
        for n in 0..=8u32 {
            for k in 0..=n {
                let lhs = &q_binomial::<i64>(n, k as i64) * &q_factorial(k);
                let lhs = &lhs * &q_factorial(n - k);
                assert_eq!(lhs, q_factorial(n), "n={n} k={k}");
            }
        }
    }
}
