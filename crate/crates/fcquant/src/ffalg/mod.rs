//! Exact arithmetic over `F_p`.
//!
//! Everything downstream reduces to this module: multivariate (Laurent)
//! polynomials, localized rational functions on charts, Hasse derivatives,
//! Wronskians, p-th-power decomposition, and exact linear algebra.

mod linalg;
mod parse;
mod poly;
mod ratfunc;

pub use linalg::{solve_linear, Frac, FpMat, LinearSolution, RatMat};
pub use parse::{eval_ratfunc, parse_expr, parse_poly, parse_ratfunc, Expr};
pub use poly::{Monomial, Poly};
pub use ratfunc::{wronskian, ChartRing, RatFunc};

use crate::error::{Error, Result};

/// An odd prime modulus, `3 <= p < 2^31`.
///
/// All coefficient arithmetic goes through this type; values are kept
/// reduced in `0..p` and products stay below `2^62`, so plain `u64`
/// arithmetic never overflows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p > (1 << 31) || !is_prime(p) || p % 2 == 0 {
            return Err(Error::NotAnOddPrime(p));
        }
        Ok(PrimeModulus { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { self.p - b + a }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.p - a }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (a non-unit of the field).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// `k!` reduced mod p; zero as soon as `k >= p`.
    pub fn factorial(&self, k: u64) -> u64 {
        if k >= self.p {
            return 0;
        }
        let mut acc = 1u64;
        for i in 2..=k {
            acc = self.mul(acc, i);
        }
        acc
    }

    /// Binomial coefficient `C(n, k) mod p` for nonnegative `n` via Lucas.
    pub fn binomial(&self, mut n: u64, mut k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        while k > 0 || n > 0 {
            let nd = n % self.p;
            let kd = k % self.p;
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(nd, kd));
            n /= self.p;
            k /= self.p;
        }
        acc
    }

    /// Generalized binomial `C(m, k) mod p` for any integer `m` and `k >= 0`.
    ///
    /// For negative `m` this is `(-1)^k C(k - m - 1, k)`, which is what the
    /// Hasse derivative of a Laurent monomial needs.
    pub fn binomial_generalized(&self, m: i64, k: u64) -> u64 {
        if m >= 0 {
            self.binomial(m as u64, k)
        } else {
            let top = (k as i64 - m - 1) as u64;
            let v = self.binomial(top, k);
            if k % 2 == 0 { v } else { self.neg(v) }
        }
    }

    fn small_binomial(&self, n: u64, k: u64) -> u64 {
        // n, k < p here; direct product formula.
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num = self.mul(num, self.reduce_i64((n - i) as i64));
            den = self.mul(den, i + 1);
        }
        self.mul(num, self.inv(den))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_rejects_non_primes() {
        assert!(PrimeModulus::new(2).is_err());
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(5).is_ok());
    }

    #[test]
    fn lucas_binomials() {
        let f5 = PrimeModulus::new(5).unwrap();
        assert_eq!(f5.binomial(2, 2), 1);
        assert_eq!(f5.binomial(5, 5), 1);
        assert_eq!(f5.binomial(6, 5), 1); // 6 = 11_5, C(1,1)*C(1,0) = 1
        assert_eq!(f5.binomial(5, 1), 0);
        assert_eq!(f5.binomial(7, 2), 1); // 21 mod 5
    }

    #[test]
    fn generalized_binomial_negative_upper() {
        let f5 = PrimeModulus::new(5).unwrap();
        // C(-6, 4) = C(9,4) = 126 = 1 mod 5
        assert_eq!(f5.binomial_generalized(-6, 4), 1);
        // C(-1, k) = (-1)^k
        assert_eq!(f5.binomial_generalized(-1, 3), f5.neg(1));
        assert_eq!(f5.binomial_generalized(-1, 2), 1);
    }

    #[test]
    fn inverse_and_factorial() {
        let f7 = PrimeModulus::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f7.mul(a, f7.inv(a)), 1);
        }
        assert_eq!(f7.factorial(6), 6); // Wilson: 6! = -1 mod 7
        assert_eq!(f7.factorial(7), 0);
    }
}
