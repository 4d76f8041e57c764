//! The algebra `D_S` on generators `D^a(n)` and a central `c`:
//!
//! ```text
//! [D^a(m), D^b(n)] = (chi(n a - m b) - chi(m b - n a)) D^(a+b)(m+n)
//!                  - (chi(n a + m b) - chi(-n a - m b)) D^(a-b)(m+n)
//!                  + ([n]_chi(a+b) - [n]_chi(a-b)) d(m+n, 0) c
//! ```
//!
//! with `D^(-a) = -D^a` and `D^a = 0` when `2a = 0`.

use std::collections::BTreeMap;

use itertools::iproduct;
use rayon::prelude::*;
use serde_json::json;

use crate::cyclotomic::{q_integer, CycNumber};
use crate::error::{Error, Result};
use crate::group::{Character, Elem, FinAbGroup};
use crate::liealg::SparseVec;
use crate::report::Check;

/// `sum coeff D^a(n) + central c` with `a` always the half-set representative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DSElement {
    terms: BTreeMap<(Elem, i64), CycNumber>,
    pub central: CycNumber,
}

impl DSElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn c(coeff: CycNumber) -> Self {
        DSElement {
            terms: BTreeMap::new(),
            central: coeff,
        }
    }

    /// `D^a(n)` in normal form.
    pub fn generator(group: &FinAbGroup, a: Elem, n: i64) -> Self {
        let mut out = Self::zero();
        out.add_generator(group, a, n, &CycNumber::one());
        out
    }

    /// Adds `coeff D^a(n)`, resolving `a` to its half-set representative.
    pub fn add_generator(&mut self, group: &FinAbGroup, a: Elem, n: i64, coeff: &CycNumber) {
        let Some((rep, flipped)) = group.half_set_rep(a) else {
            return;
        };
        let c = if flipped { -coeff } else { coeff.clone() };
        let e = self.terms.entry((rep, n)).or_insert_with(CycNumber::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(rep, n));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Elem, i64, &CycNumber)> {
        self.terms.iter().map(|(&(a, n), c)| (a, n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn add(&self, other: &DSElement) -> DSElement {
        self.add_scaled(other, &CycNumber::one())
    }

    pub fn sub(&self, other: &DSElement) -> DSElement {
        self.add_scaled(other, &CycNumber::from_i64(-1))
    }

    pub fn add_scaled(&self, other: &DSElement, s: &CycNumber) -> DSElement {
        let mut out = self.clone();
        for (&(a, n), c) in &other.terms {
            let e = out.terms.entry((a, n)).or_insert_with(CycNumber::zero);
            *e = &*e + &(c * s);
            if e.is_zero() {
                out.terms.remove(&(a, n));
            }
        }
        out.central = &out.central + &(&other.central * s);
        out
    }

    pub fn scale(&self, s: &CycNumber) -> DSElement {
        DSElement::zero().add_scaled(self, s)
    }

    /// Coordinates in the windowed basis `D^a(n)`, `a` in the half set and
    /// `|n| <= window`, ordered by `(n, a)`, with `c` last.
    pub fn to_vec(&self, group: &FinAbGroup, window: i64) -> Result<SparseVec> {
        let half = group.half_set();
        let h = half.len();
        let mut entries = Vec::new();
        for (a, n, c) in self.terms() {
            if n.abs() > window {
                return Err(Error::WindowExceeded { degree: n, window });
            }
            let pos = half.iter().position(|&x| x == a).expect("normal form");
            entries.push(((n + window) as usize * h + pos, c.clone()));
        }
        entries.push(((2 * window + 1) as usize * h, self.central.clone()));
        Ok(SparseVec::from_entries(entries))
    }

    pub fn describe(&self, group: &FinAbGroup) -> String {
        let mut parts: Vec<String> = self
            .terms()
            .map(|(a, n, c)| format!("({c}) D^{}({n})", group.label(a)))
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({}) c", self.central));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `D_S` for a cyclic group with an injective character, restricted to `|n| <= window`.
#[derive(Clone, Debug)]
pub struct DSAlgebra {
    pub chi: Character,
    pub window: i64,
    /// When false the `c` term of the bracket is dropped; used as a negative control.
    pub central_term: bool,
}

impl DSAlgebra {
    pub fn new(chi: &Character, window: i64) -> Self {
        DSAlgebra {
            chi: chi.clone(),
            window,
            central_term: true,
        }
    }

    pub fn without_central_term(mut self) -> Self {
        self.central_term = false;
        self
    }

    pub fn group(&self) -> &FinAbGroup {
        self.chi.group()
    }

    /// Windowed dimension `|S_-| (2W + 1) + 1`.
    pub fn dim(&self) -> usize {
        self.group().half_set().len() * (2 * self.window + 1) as usize + 1
    }

    fn value(&self, a: Elem) -> CycNumber {
        self.chi.value(a)
    }

    /// `[D^a(m), D^b(n)]` on generators.
    pub fn bracket_generators(&self, a: Elem, m: i64, b: Elem, n: i64) -> Result<DSElement> {
        if (m + n).abs() > self.window {
            return Err(Error::WindowExceeded {
                degree: m + n,
                window: self.window,
            });
        }
        let s = self.group();
        let mut out = DSElement::zero();
        let na_mb = s.sub(s.mul(n, a), s.mul(m, b));
        let c1 = &self.value(na_mb) - &self.value(s.neg(na_mb));
        out.add_generator(s, s.add(a, b), m + n, &c1);
        let na_pb = s.add(s.mul(n, a), s.mul(m, b));
        let c2 = &self.value(na_pb) - &self.value(s.neg(na_pb));
        out.add_generator(s, s.sub(a, b), m + n, &-&c2);
        if self.central_term && m + n == 0 {
            let z = &q_integer(n, &self.value(s.add(a, b)))? - &q_integer(n, &self.value(s.sub(a, b)))?;
            out.central = z;
        }
        Ok(out)
    }

    /// Bilinear extension of [`Self::bracket_generators`]; `c` is central.
    pub fn bracket(&self, x: &DSElement, y: &DSElement) -> Result<DSElement> {
        let mut out = DSElement::zero();
        for (a, m, p) in x.terms() {
            for (b, n, q) in y.terms() {
                out = out.add_scaled(&self.bracket_generators(a, m, b, n)?, &(p * q));
            }
        }
        Ok(out)
    }

    /// `D~^a(n) = D^a(n) + (1 - d(2a,0)) (chi(a) - chi(-a))^-1 d(n,0) c`
    pub fn d_tilde(&self, a: Elem, n: i64) -> Result<DSElement> {
        let s = self.group();
        let mut out = DSElement::generator(s, a, n);
        if n == 0 && s.double(a) != 0 {
            out.central = (&self.value(a) - &self.value(s.neg(a))).inv()?;
        }
        Ok(out)
    }

    /// `D^(a,b)(n) = chi(b)^-n D~^a(n)`
    pub fn dab(&self, a: Elem, b: Elem, n: i64) -> Result<DSElement> {
        Ok(self.d_tilde(a, n)?.scale(&self.chi.value_pow(b, -n)))
    }

    fn generator_pairs(&self) -> Vec<(Elem, i64, Elem, i64)> {
        let s = self.group();
        let w = self.window;
        iproduct!(s.elements(), -w..=w, s.elements(), -w..=w)
            .filter(|&(_, m, _, n)| (m + n).abs() <= w)
            .collect()
    }

    /// `[D^a(m), D^b(n)] = -[D^b(n), D^a(m)] = -[D^(-a)(m), D^b(n)]` from the raw
    /// formula on every in-window pair of labels `a, b` in `S`, so neither
    /// symmetry is imposed by normal form.
    pub fn check_antisymmetry(&self) -> Result<Check> {
        let s = self.group();
        let pairs = self.generator_pairs();
        let found = pairs
            .par_iter()
            .map(|&(a, m, b, n)| -> Result<Option<serde_json::Value>> {
                let l = self.bracket_generators(a, m, b, n)?;
                let r = self.bracket_generators(b, n, a, m)?;
                let flipped = self.bracket_generators(s.neg(a), m, b, n)?;
                let ok = l.add(&r).is_zero() && l.add(&flipped).is_zero();
                Ok((!ok).then(|| json!({"generators": [[a, m], [b, n]]})))
            })
            .collect::<Result<Vec<_>>>()?;
        let bad = found.into_iter().flatten().next();
        Ok(Check::from_witness("D_S antisymmetry", pairs.len() as u64, bad))
    }

    /// Jacobi on generator triples whose partial sums of degrees stay in window.
    pub fn check_jacobi(&self) -> Result<Check> {
        let s = self.group();
        let w = self.window;
        let half = s.half_set();
        let triples: Vec<_> = iproduct!(
            half.iter().copied(),
            -w..=w,
            half.iter().copied(),
            -w..=w,
            half.iter().copied(),
            -w..=w
        )
        .filter(|&(_, p, _, q, _, r)| [p + q, q + r, p + r, p + q + r].iter().all(|d| d.abs() <= w))
        .collect();
        let found =
            triples
                .par_iter()
                .map(|&(a, p, b, q, c, r)| -> Result<Option<serde_json::Value>> {
                    let x = DSElement::generator(s, a, p);
                    let y = DSElement::generator(s, b, q);
                    let z = DSElement::generator(s, c, r);
                    let t1 = self.bracket(&x, &self.bracket(&y, &z)?)?;
                    let t2 = self.bracket(&y, &self.bracket(&z, &x)?)?;
                    let t3 = self.bracket(&z, &self.bracket(&x, &y)?)?;
                    Ok((!t1.add(&t2).add(&t3).is_zero())
                        .then(|| json!({"generators": [[a, p], [b, q], [c, r]]})))
                })
                .collect::<Result<Vec<_>>>()?;
        let bad = found.into_iter().flatten().next();
        Ok(Check::from_witness("D_S jacobi", triples.len() as u64, bad))
    }

    /// `D^(-a,b)(n) = -D^(a,b)(n)` and `D^(a,b+g)(n) = chi(g)^-n D^(a,b)(n)`.
    pub fn check_dab_relations(&self) -> Result<Check> {
        let s = self.group();
        let w = self.window;
        let mut count = 0u64;
        for (a, b, g, n) in iproduct!(s.elements(), s.elements(), s.elements(), -w..=w) {
            count += 1;
            let x = self.dab(a, b, n)?;
            let odd = self.dab(s.neg(a), b, n)? == x.scale(&CycNumber::from_i64(-1));
            let shifted = self.dab(a, s.add(b, g), n)? == x.scale(&self.chi.value_pow(g, -n));
            if !(odd && shifted) {
                return Ok(Check::fail(
                    "D^(a,b) relations",
                    count,
                    json!({"a": a, "b": b, "gamma": g, "n": n}),
                ));
            }
        }
        Ok(Check::pass("D^(a,b) relations", count))
    }

    /// Every `chi(a +- b)` that reaches a q-integer gives a nonzero
    /// denominator or hits one of the `+-1` limit branches.
    pub fn check_q_integer_domain(&self) -> Result<Check> {
        let s = self.group();
        let mut count = 0u64;
        let mut limit = 0u64;
        for (a, b, n) in iproduct!(s.elements(), s.elements(), -self.window..=self.window) {
            for x in [s.add(a, b), s.sub(a, b)] {
                count += 1;
                let q = self.value(x);
                if q.is_one() || q.is_minus_one() {
                    limit += 1;
                }
                q_integer(n, &q)?;
            }
        }
        Ok(Check::pass("q-integer denominators", count)
            .with_note(format!("{limit} limit-branch evaluations")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_character;

    fn z5() -> DSAlgebra {
        DSAlgebra::new(&make_character(&FinAbGroup::cyclic(5), 1).unwrap(), 3)
    }

    fn q(k: i64) -> CycNumber {
        CycNumber::root_of_unity(5, k)
    }

    #[test]
    fn bracket_examples() {
        let d = z5();
        let s = d.group().clone();
        let r = d.bracket_generators(1, 1, 1, -1).unwrap();
        let expect = DSElement::generator(&s, 2, 0).scale(&(&q(-2) - &q(2)));
        assert_eq!(r, expect);
        let r = d.bracket_generators(1, -2, 1, 2).unwrap();
        let mut expect = DSElement::generator(&s, 2, 0).scale(&(&q(4) - &q(-4)));
        expect.central = &(&q(2) + &q(-2)) - &CycNumber::from_i64(2);
        assert_eq!(r, expect);
        assert!(d.bracket_generators(2, 1, 2, 1).unwrap().is_zero());
        assert!(matches!(
            d.bracket_generators(1, 3, 2, 1),
            Err(Error::WindowExceeded { degree: 4, window: 3 })
        ));
    }

    #[test]
    fn normal_form() {
        let s = FinAbGroup::cyclic(4);
        assert!(DSElement::generator(&s, 2, 1).is_zero());
        assert_eq!(
            DSElement::generator(&s, 3, 1),
            DSElement::generator(&s, 1, 1).scale(&CycNumber::from_i64(-1))
        );
    }

    #[test]
    fn d_tilde_and_dab_examples() {
        let d = z5();
        let s = d.group().clone();
        let mut expect = DSElement::generator(&s, 1, 0);
        expect.central = (&q(1) - &q(4)).inv().unwrap();
        assert_eq!(d.d_tilde(1, 0).unwrap(), expect);
        assert_eq!(d.dab(1, 2, 3).unwrap(), d.d_tilde(1, 3).unwrap().scale(&q(4)));
        let z4 = DSAlgebra::new(&make_character(&FinAbGroup::cyclic(4), 1).unwrap(), 2);
        assert!(z4.d_tilde(2, 0).unwrap().is_zero());
    }

    #[test]
    fn consistency_checks() {
        for n in [3u64, 4, 5, 6] {
            let d = DSAlgebra::new(&make_character(&FinAbGroup::cyclic(n), 1).unwrap(), 2);
            assert!(d.check_antisymmetry().unwrap().passed(), "Z{n}");
            assert!(d.check_jacobi().unwrap().passed(), "Z{n}");
            assert!(d.check_dab_relations().unwrap().passed(), "Z{n}");
            assert!(d.check_q_integer_domain().unwrap().passed(), "Z{n}");
        }
    }

    #[test]
    fn dropping_central_term_keeps_jacobi() {
        let d = z5().without_central_term();
        assert!(d.check_jacobi().unwrap().passed());
    }
}
