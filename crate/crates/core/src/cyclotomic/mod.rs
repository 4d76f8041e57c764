//! Exact arithmetic in cyclotomic fields `Q(zeta_M)`.
//!
//! A [`CycNumber`] stores its coefficients in the power basis
//! `1, z, ..., z^(phi(M)-1)` of `Q[z]/(Phi_M(z))`. Rational values are always
//! demoted to order 1, so rational fast paths stay cheap inside large fields.
//! Operands of different orders are embedded into `Q(zeta_lcm)` before
//! combining.

mod poly;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) use poly::gcd_i64;
pub use poly::{cyclotomic_polynomial, euler_phi, IntPoly};

pub type Rational = num_rational::BigRational;

/// Build a rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

struct FieldTables {
    phi: usize,
    modulus: Vec<Rational>,
    /// `powers[e]` is `z^e mod Phi_M` for `0 <= e < M`, as sparse integer coefficients.
    powers: Vec<Vec<(usize, i64)>>,
}

impl FieldTables {
    fn build(order: u32) -> Self {
        let phi = euler_phi(order);
        let cyc = cyclotomic_polynomial(order);
        let poly: Vec<i64> = cyc
            .coeffs()
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient overflows i64"))
            .collect();
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect(),
            );
            // multiply by z and reduce by the monic Phi_M
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(poly[i]).expect("overflow"))
                        .expect("overflow in power table");
                }
            }
        }
        let modulus = poly.iter().map(|&c| Rational::from_integer(c.into())).collect();
        FieldTables { phi, modulus, powers }
    }
}

fn tables(order: u32) -> &'static FieldTables {
    thread_local! {
        static LOCAL: RefCell<HashMap<u32, &'static FieldTables>> = RefCell::new(HashMap::new());
    }
    static GLOBAL: OnceLock<Mutex<HashMap<u32, &'static FieldTables>>> = OnceLock::new();
    if let Some(t) = LOCAL.with(|l| l.borrow().get(&order).copied()) {
        return t;
    }
    let global = GLOBAL.get_or_init(|| Mutex::new(HashMap::new()));
    let t = {
        let mut g = global.lock().expect("field table lock poisoned");
        *g.entry(order)
            .or_insert_with(|| Box::leak(Box::new(FieldTables::build(order))))
    };
    LOCAL.with(|l| l.borrow_mut().insert(order, t));
    t
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An exact element of `Q(zeta_M)`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNumber {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// `zeta_M^k`, with `k` taken modulo `M`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        assert!(order >= 1);
        let e = k.rem_euclid(order as i64) as usize;
        let t = tables(order);
        let mut coeffs = vec![Rational::zero(); t.phi];
        for &(i, c) in &t.powers[e] {
            coeffs[i] = Rational::from_integer(c.into());
        }
        CycNumber { order, coeffs }.normalized()
    }

    /// Build `sum_i coeffs[i] * zeta_M^i` from a coefficient list of any length.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1);
        let t = tables(order);
        let mut out = vec![Rational::zero(); t.phi];
        for (e, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = e % order as usize;
            if e < t.phi {
                out[e] += c;
            } else {
                for &(i, r) in &t.powers[e] {
                    out[i] += &c * Rational::from_integer(r.into());
                }
            }
        }
        CycNumber { order, coeffs: out }.normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.order == 1 && (-&self.coeffs[0]).is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    /// The same number written in the power basis of `Q(zeta_target)`.
    pub fn embed(&self, target: u32) -> Result<CycNumber> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::BadEmbedding {
                from: self.order,
                to: target,
            });
        }
        Ok(self.embed_raw(target).normalized())
    }

    /// Coefficient vector in `Q(zeta_target)` without demoting rationals.
    fn embed_raw(&self, target: u32) -> CycNumber {
        let t = tables(target);
        let mut out = vec![Rational::zero(); t.phi];
        if self.order == 1 {
            out[0] = self.coeffs[0].clone();
            return CycNumber {
                order: target,
                coeffs: out,
            };
        }
        if self.order == target {
            return self.clone();
        }
        let factor = (target / self.order) as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = i * factor;
            if e < t.phi {
                out[e] += c;
            } else {
                for &(j, r) in &t.powers[e] {
                    out[j] += c * Rational::from_integer(r.into());
                }
            }
        }
        CycNumber {
            order: target,
            coeffs: out,
        }
    }

    /// Coefficients padded to the power basis of `Q(zeta_target)`, for formatting.
    pub fn coeffs_in(&self, target: u32) -> Result<Vec<Rational>> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::BadEmbedding {
                from: self.order,
                to: target,
            });
        }
        Ok(self.embed_raw(target).coeffs)
    }

    fn scale(&self, r: &Rational) -> CycNumber {
        if r.is_zero() {
            return CycNumber::zero();
        }
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn combine(&self, other: &CycNumber, sign: bool) -> CycNumber {
        let (a, b);
        let (ra, rb);
        if self.order == other.order {
            a = self;
            b = other;
        } else {
            let m = lcm(self.order, other.order);
            ra = self.embed_raw(m);
            rb = other.embed_raw(m);
            a = &ra;
            b = &rb;
        }
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| if sign { x + y } else { x - y })
            .collect();
        CycNumber {
            order: a.order,
            coeffs,
        }
        .normalized()
    }

    fn multiply(&self, other: &CycNumber) -> CycNumber {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (ra, rb);
        let (a, b) = if self.order == other.order {
            (self, other)
        } else {
            let m = lcm(self.order, other.order);
            ra = self.embed_raw(m);
            rb = other.embed_raw(m);
            (&ra, &rb)
        };
        let order = a.order;
        let t = tables(order);
        let phi = t.phi;
        let mut buf = vec![Rational::zero(); 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    buf[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = buf.drain(..phi).collect();
        for (k, c) in buf.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (phi + k) % order as usize;
            for &(j, r) in &t.powers[e] {
                out[j] += &c * Rational::from_integer(r.into());
            }
        }
        CycNumber { order, coeffs: out }.normalized()
    }

    /// Multiplicative inverse, computed with the extended Euclidean algorithm
    /// against `Phi_M`.
    pub fn inv(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(CycNumber::from_rational(self.coeffs[0].recip()));
        }
        let t = tables(self.order);
        let inv = poly::rp_inverse_mod(&self.coeffs, &t.modulus).ok_or(Error::DivisionByZero)?;
        Ok(CycNumber::from_coeffs(self.order, inv))
    }

    pub fn checked_div(&self, other: &CycNumber) -> Result<CycNumber> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<CycNumber> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Text form `c0 + c1*z + c2*z^2 + ...` with `z = zeta_target`.
    pub fn to_string_in(&self, target: u32) -> Result<String> {
        let coeffs = self.coeffs_in(target)?;
        Ok(format_terms(&coeffs))
    }

    /// Parse the text form produced by [`CycNumber::to_string_in`], reading `z`
    /// as `zeta_order`. Exponents may exceed `phi(order)`; they are reduced.
    pub fn parse(s: &str, order: u32) -> Result<CycNumber> {
        if order == 0 {
            return Err(Error::Parse("field order must be positive".into()));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'*' | b'^' | b'/') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<Rational> = vec![Rational::zero(); order as usize];
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'+' => (false, &term[1..]),
                b'-' => (true, &term[1..]),
                _ => (false, term),
            };
            let (coef, exp) = parse_term(body)?;
            let coef = if neg { -coef } else { coef };
            let e = exp.rem_euclid(order as i64) as usize;
            coeffs[e] += coef;
        }
        Ok(CycNumber::from_coeffs(order, coeffs))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(body: &str) -> Result<(Rational, i64)> {
    if body.is_empty() {
        return Err(Error::Parse("dangling sign".into()));
    }
    let (coef_part, z_part) = match body.find('z') {
        None => return Ok((parse_rational(body)?, 0)),
        Some(pos) => (&body[..pos], &body[pos..]),
    };
    let coef = match coef_part.strip_suffix('*') {
        Some(c) => parse_rational(c)?,
        None if coef_part.is_empty() => Rational::one(),
        None => return Err(Error::Parse(format!("expected '*' in term '{body}'"))),
    };
    let exp = match z_part.strip_prefix('z') {
        Some("") => 1,
        Some(rest) => match rest.strip_prefix('^') {
            Some(e) => e
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent in '{body}'")))?,
            None => return Err(Error::Parse(format!("bad term '{body}'"))),
        },
        None => unreachable!(),
    };
    Ok((coef, exp))
}

fn format_terms(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show = i == 0 || !mag.is_one();
        if show {
            out.push_str(&mag.to_string());
        }
        if i > 0 {
            if show {
                out.push('*');
            }
            out.push('z');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.coeffs))?;
        if self.order > 2 && !self.is_rational() {
            write!(f, " (z = zeta_{})", self.order)?;
        }
        Ok(())
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.order == 1 || other.order == 1 {
            // A normalized non-rational value never equals a rational one.
            return false;
        }
        let m = lcm(self.order, other.order);
        self.embed_raw(m).coeffs == other.embed_raw(m).coeffs
    }
}

impl Eq for CycNumber {}

impl Default for CycNumber {
    fn default() -> Self {
        CycNumber::zero()
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        CycNumber::from_i64(n)
    }
}

impl From<Rational> for CycNumber {
    fn from(r: Rational) -> Self {
        CycNumber::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b CycNumber> for &'a CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'b CycNumber) -> CycNumber {
                let f: fn(&CycNumber, &CycNumber) -> CycNumber = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'b CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, true));
forward_binop!(Sub, sub, |a, b| a.combine(b, false));
forward_binop!(Mul, mul, |a, b| a.multiply(b));

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field operation on two cyclotomic numbers, embedding mixed orders into
/// the lcm field.
pub fn cyc_arith(a: &CycNumber, b: &CycNumber, op: ArithOp) -> Result<CycNumber> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// The q-integer `[n]_q = (q^n - q^-n) / (q - q^-1)`, with `[n]_1 = n` and
/// `[n]_{-1} = n (-1)^(n-1)`.
pub fn q_integer(n: i64, q: &CycNumber) -> Result<CycNumber> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if q.is_one() {
        return Ok(CycNumber::from_i64(n));
    }
    if q.is_minus_one() {
        let sign = if (n - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        return Ok(CycNumber::from_i64(sign * n));
    }
    let qi = q.inv()?;
    let num = &q.pow(n)? - &qi.pow(n)?;
    let den = q - &qi;
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(m: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(m, k)
    }

    #[test]
    fn root_products() {
        assert!((&z(5, 1) * &z(5, 4)).is_one());
        let s = &(&z(5, 1) + &z(5, 2)) + &(&z(5, 3) + &z(5, 4));
        assert_eq!(s, CycNumber::from_i64(-1));
        assert_eq!(z(4, 1).inv().unwrap(), -z(4, 1));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(CycNumber::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(
            cyc_arith(&z(5, 1), &CycNumber::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixed_orders_embed() {
        // zeta_4 * zeta_6 = zeta_12^5
        assert_eq!(&z(4, 1) * &z(6, 1), z(12, 5));
        // zeta_6^2 = zeta_3
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(2, 1), CycNumber::from_i64(-1));
    }

    #[test]
    fn embedding_coherence() {
        let a = &z(3, 1) + &CycNumber::from_ratio(1, 2);
        let via = a.embed(6).unwrap().embed(12).unwrap();
        assert_eq!(via.coeffs_in(12).unwrap(), a.coeffs_in(12).unwrap());
        assert_eq!(via, a);
        assert!(a.embed(4).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = &(&z(7, 3) * &CycNumber::from_ratio(-3, 2)) + &CycNumber::from_i64(2);
        let s = a.to_string_in(7).unwrap();
        assert_eq!(s, "2 - 3/2*z^3");
        assert_eq!(CycNumber::parse(&s, 7).unwrap(), a);
        assert_eq!(CycNumber::parse("0", 5).unwrap(), CycNumber::zero());
        assert_eq!(CycNumber::parse("-z", 4).unwrap(), -z(4, 1));
        assert_eq!(CycNumber::parse("z^5", 5).unwrap(), CycNumber::one());
        assert!(CycNumber::parse("3*y", 5).is_err());
        // rational embedded in a bigger field prints the same
        assert_eq!(CycNumber::from_ratio(1, 3).to_string_in(12).unwrap(), "1/3");
    }

    #[test]
    fn q_integer_examples() {
        let q = z(7, 1);
        let expected = &(&q.pow(2).unwrap() + &CycNumber::one()) + &q.pow(-2).unwrap();
        assert_eq!(q_integer(3, &q).unwrap(), expected);
        assert_eq!(
            q_integer(2, &CycNumber::from_i64(-1)).unwrap(),
            CycNumber::from_i64(-2)
        );
        assert_eq!(
            q_integer(3, &CycNumber::from_i64(-1)).unwrap(),
            CycNumber::from_i64(3)
        );
        assert_eq!(q_integer(5, &CycNumber::one()).unwrap(), CycNumber::from_i64(5));
        assert_eq!(q_integer(1, &CycNumber::zero()), Err(Error::DivisionByZero));
        // non root of unity
        let two = CycNumber::from_i64(2);
        assert_eq!(q_integer(2, &two).unwrap(), CycNumber::from_ratio(5, 2));
    }

    #[test]
    fn q_integer_symmetries_hold_for_small_orders() {
        for m in 1..=12u32 {
            for k in 0..m as i64 {
                if gcd_i64(k, m as i64) != 1 {
                    continue;
                }
                let q = z(m, k);
                for n in -6..=6 {
                    let v = q_integer(n, &q).unwrap();
                    assert_eq!(q_integer(-n, &q).unwrap(), -&v);
                    assert_eq!(q_integer(n, &q.inv().unwrap()).unwrap(), v);
                }
            }
        }
    }

    fn arb_cyc(order: u32) -> impl Strategy<Value = CycNumber> {
        let phi = euler_phi(order);
        proptest::collection::vec((-5i64..=5, 1i64..=3), phi).prop_map(move |cs| {
            let coeffs = cs.into_iter().map(|(n, d)| rat(n, d)).collect();
            CycNumber::from_coeffs(order, coeffs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms_q7(a in arb_cyc(7), b in arb_cyc(7), c in arb_cyc(7)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn field_axioms_q12(a in arb_cyc(12), b in arb_cyc(12)) {
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                let q = a.checked_div(&b).unwrap();
                prop_assert_eq!(&q * &b, a.clone());
            }
            let s = a.to_string_in(12).unwrap();
            prop_assert_eq!(CycNumber::parse(&s, 12).unwrap(), a);
        }

        #[test]
        fn embedding_chain(a in arb_cyc(3)) {
            let two_step = a.embed(6).unwrap().embed(24).unwrap();
            prop_assert_eq!(two_step.coeffs_in(24).unwrap(), a.coeffs_in(24).unwrap());
            prop_assert_eq!(two_step, a);
        }
    }
}
