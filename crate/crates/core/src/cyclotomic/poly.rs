//! Integer and rational polynomial helpers backing the cyclotomic field tables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        let mut p = IntPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        p.trim();
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trim(&mut self) {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    /// Exact division by a monic polynomial. Panics if the remainder is nonzero.
    fn div_exact_monic(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree();
        assert!(divisor.0[dd].is_one(), "divisor must be monic");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return IntPoly(vec![BigInt::zero()]);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        let mut q = IntPoly(quot);
        q.trim();
        q
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The `m`-th cyclotomic polynomial, computed as `(x^m - 1) / prod_{d | m, d < m} Phi_d`.
pub fn cyclotomic_polynomial(m: u32) -> IntPoly {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut p = IntPoly(num);
    for d in divisors(m) {
        if d < m {
            p = p.div_exact_monic(&cyclotomic_polynomial(d));
        }
    }
    p
}

// Rational polynomials as coefficient vectors, lowest degree first, trimmed.

pub(crate) fn rp_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rp_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = a.to_vec();
    rp_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            let t = &c * d;
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    rp_trim(&mut rem);
    rp_trim(&mut quot);
    (quot, rem)
}

fn rp_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    rp_trim(&mut out);
    out
}

fn rp_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    rp_trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `modulus` via the extended Euclidean
/// algorithm. Returns `None` when `a` is zero modulo `modulus`.
pub(crate) fn rp_inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
    let mut a = a.to_vec();
    rp_trim(&mut a);
    if a.is_empty() {
        return None;
    }
    let (_, a_red) = rp_divmod(&a, modulus);
    if a_red.is_empty() {
        return None;
    }
    // Invariant: s0 * a == r0 and s1 * a == r1 (mod modulus).
    let mut r0 = modulus.to_vec();
    let mut r1 = a_red;
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = rp_divmod(&r0, &r1);
        let s2 = rp_sub(&s0, &rp_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let scaled: Vec<Rational> = s0.iter().map(|x| x / &c).collect();
    let (_, inv) = rp_divmod(&scaled, modulus);
    Some(inv)
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u32 + 1), e);
        }
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), IntPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(4).to_string(), "x^2 + 1");
        assert_eq!(cyclotomic_polynomial(1).to_string(), "x - 1");
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        for m in 1..=40 {
            let p = cyclotomic_polynomial(m);
            assert_eq!(p.degree(), euler_phi(m), "m = {m}");
            assert!(p.0[p.degree()].is_one());
        }
    }

    #[test]
    fn product_over_divisors_is_x_m_minus_one() {
        // Independent check: multiply Phi_d over all d | m and compare with x^m - 1.
        for m in 1..=24u32 {
            let mut acc = vec![BigInt::one()];
            for d in divisors(m) {
                let p = cyclotomic_polynomial(d);
                let mut out = vec![BigInt::zero(); acc.len() + p.0.len() - 1];
                for (i, x) in acc.iter().enumerate() {
                    for (j, y) in p.0.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                acc = out;
            }
            let mut expected = vec![BigInt::zero(); m as usize + 1];
            expected[0] = BigInt::from(-1);
            expected[m as usize] = BigInt::one();
            assert_eq!(acc, expected, "m = {m}");
        }
    }
}
