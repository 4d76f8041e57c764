//! Finite abelian groups, injective characters, and the 2-torsion / doubling
//! data used by the algebra constructions.
//!
//! Elements are represented by their index in the canonical order, which is
//! lexicographic on coordinate tuples. For a cyclic group `Z/N` the index of
//! `a` is `a` itself.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// Index of a group element in the canonical order.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    #[serde(skip)]
    add_table: Vec<Elem>,
    #[serde(skip)]
    neg_table: Vec<Elem>,
}

fn prime_power_parts(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Invariant factors `d_1 | d_2 | ... | d_s`, all at least 2, of a product of cyclic groups.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &n in orders {
        for (p, q) in prime_power_parts(n) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            // largest powers go to the last factor
            factors[len - 1 - i] *= q;
        }
    }
    factors
}

impl FinAbGroup {
    /// The group `Z/n_1 x ... x Z/n_s`, normalized to invariant factors.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Invalid("cyclic factor of order 0 is infinite".into()));
        }
        let factors = invariant_factors(orders);
        let order: u64 = factors.iter().product();
        if order > 1 << 16 {
            return Err(Error::Invalid(format!("group of order {order} is too large")));
        }
        let mut g = FinAbGroup {
            factors,
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        g.build_tables();
        Ok(g)
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(&[n]).expect("cyclic group of positive order")
    }

    fn build_tables(&mut self) {
        let n = self.order();
        let coords: Vec<Vec<u64>> = (0..n).map(|e| self.coords(e)).collect();
        let mut add = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let c: Vec<u64> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .zip(&self.factors)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                add[a * n + b] = self.from_coords(&c);
            }
        }
        self.neg_table = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] == 0).expect("inverse exists"))
            .collect();
        self.add_table = add;
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn zero(&self) -> Elem {
        0
    }

    /// Coordinates in `Z/d_1 x ... x Z/d_s`, first factor most significant.
    pub fn coords(&self, e: Elem) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        let mut rest = e as u64;
        for (slot, m) in out.iter_mut().zip(&self.factors).rev() {
            *slot = rest % m;
            rest /= m;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u64]) -> Elem {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (c, m)| acc * m + c % m) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add_table[a * self.order() + b]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg_table[a]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `n * a` for any integer `n`.
    pub fn mul(&self, n: i64, a: Elem) -> Elem {
        let coords: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &m)| (n.rem_euclid(m as i64) as u64 * c) % m)
            .collect();
        self.from_coords(&coords)
    }

    pub fn double(&self, a: Elem) -> Elem {
        self.add(a, a)
    }

    /// Human-readable label of an element: the residue for cyclic groups,
    /// a coordinate tuple otherwise.
    pub fn label(&self, a: Elem) -> String {
        if self.is_cyclic() {
            a.to_string()
        } else {
            let parts: Vec<String> = self.coords(a).iter().map(u64::to_string).collect();
            format!("({})", parts.join(","))
        }
    }

    /// `S^0 = { a : 2a = 0 }`, in canonical order.
    pub fn subgroup_s0(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.double(a) == 0).collect()
    }

    /// `2S = { 2a }`, in canonical order.
    pub fn two_s(&self) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        for a in self.elements() {
            seen[self.double(a)] = true;
        }
        self.elements().filter(|&a| seen[a]).collect()
    }

    /// Cosets of `2S`; `cosets[0]` is `2S` itself and the rest follow by
    /// smallest element.
    pub fn coset_decomposition_2s(&self) -> CosetDecomposition {
        let two_s = self.two_s();
        let mut assigned = vec![false; self.order()];
        let mut cosets = Vec::new();
        for a in self.elements() {
            if assigned[a] {
                continue;
            }
            let mut coset: Vec<Elem> = two_s.iter().map(|&t| self.add(a, t)).collect();
            coset.sort_unstable();
            for &c in &coset {
                assigned[c] = true;
            }
            cosets.push(coset);
        }
        CosetDecomposition {
            k: two_s.len(),
            r: cosets.len(),
            cosets,
        }
    }

    /// The lesser of `a` and `-a` in canonical order, with a flag telling
    /// whether `a` was negated. `None` when `2a = 0`.
    pub fn half_set_rep(&self, a: Elem) -> Option<(Elem, bool)> {
        let na = self.neg(a);
        match a.cmp(&na) {
            std::cmp::Ordering::Less => Some((a, false)),
            std::cmp::Ordering::Greater => Some((na, true)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// `S_-`: one element from each pair `{a, -a}` with `2a != 0`, the lesser one.
    pub fn half_set(&self) -> Vec<Elem> {
        self.elements().filter(|&a| a < self.neg(a)).collect()
    }

    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "Z1".into();
        }
        self.factors
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Parses `Z5`, `Z2xZ2`, `Z1`; factors are normalized to invariant factors.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad group spec '{s}', expected e.g. Z5 or Z2xZ2"));
        let mut orders = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let digits = part.trim().strip_prefix('Z').ok_or_else(bad)?;
            let n: u64 = digits.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            orders.push(n);
        }
        FinAbGroup::new(&orders)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetDecomposition {
    /// `|2S|`
    pub k: usize,
    /// `|S / 2S|`, which equals `|S^0|`
    pub r: usize,
    pub cosets: Vec<Vec<Elem>>,
}

/// An injective character `chi(a) = zeta_N^(k a)` of a cyclic group of order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group: FinAbGroup,
    k: i64,
}

pub fn make_character(group: &FinAbGroup, k: i64) -> Result<Character> {
    if !group.is_cyclic() {
        return Err(Error::NotCyclic(group.name()));
    }
    let n = group.order() as i64;
    if crate::cyclotomic::gcd_i64(k, n) != 1 {
        return Err(Error::NotInjective { k, order: n as u64 });
    }
    Ok(Character {
        group: group.clone(),
        k: k.rem_euclid(n.max(1)),
    })
}

impl Character {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn index(&self) -> i64 {
        self.k
    }

    /// `N`, the order of the group and of the root of unity.
    pub fn order(&self) -> u32 {
        self.group.order() as u32
    }

    /// Exponent `e` with `chi(a) = zeta_N^e`, reduced mod `N`.
    pub fn exponent(&self, a: Elem) -> i64 {
        let n = self.group.order() as i64;
        (self.k * a as i64).rem_euclid(n)
    }

    pub fn value(&self, a: Elem) -> CycNumber {
        CycNumber::root_of_unity(self.order(), self.exponent(a))
    }

    /// `chi(a)^p` for any integer `p`.
    pub fn value_pow(&self, a: Elem, p: i64) -> CycNumber {
        let n = self.group.order() as i64;
        CycNumber::root_of_unity(self.order(), (self.exponent(a) * p.rem_euclid(n)) % n.max(1))
    }

    /// The element `g` with `chi(g) = zeta_N`.
    pub fn primitive_preimage(&self) -> Elem {
        let n = self.group.order() as i64;
        (0..n)
            .find(|&g| (self.k * g).rem_euclid(n) == 1 % n)
            .expect("k is invertible mod N") as Elem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_normalize() {
        assert_eq!(g("Z5").factors(), &[5]);
        assert_eq!(g("Z2xZ2").factors(), &[2, 2]);
        assert_eq!(g("Z2xZ3").factors(), &[6]);
        assert_eq!(g("Z4xZ2").factors(), &[2, 4]);
        assert_eq!(g("Z1").order(), 1);
        assert_eq!(g("Z1").name(), "Z1");
        assert!("Y5".parse::<FinAbGroup>().is_err());
        assert!("Z0".parse::<FinAbGroup>().is_err());
    }

    #[test]
    fn s0_examples() {
        assert_eq!(g("Z5").subgroup_s0(), vec![0]);
        assert_eq!(g("Z6").subgroup_s0(), vec![0, 3]);
        assert_eq!(g("Z2xZ2").subgroup_s0(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn coset_examples() {
        let d = g("Z7").coset_decomposition_2s();
        assert_eq!((d.k, d.r, d.cosets.len()), (7, 1, 1));
        let d = g("Z6").coset_decomposition_2s();
        assert_eq!((d.k, d.r), (3, 2));
        assert_eq!(d.cosets, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let d = g("Z8").coset_decomposition_2s();
        assert_eq!((d.k, d.r), (4, 2));
    }

    #[test]
    fn two_s_times_s0_is_order() {
        for s in [
            "Z1", "Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3",
        ] {
            let grp = g(s);
            assert_eq!(grp.two_s().len() * grp.subgroup_s0().len(), grp.order(), "{s}");
            if grp.order() % 2 == 1 {
                assert_eq!(grp.subgroup_s0(), vec![0]);
                assert_eq!(grp.two_s().len(), grp.order());
            }
        }
    }

    #[test]
    fn group_axioms() {
        let grp = g("Z2xZ4");
        for a in grp.elements() {
            assert_eq!(grp.add(a, grp.neg(a)), 0);
            for b in grp.elements() {
                assert_eq!(grp.add(a, b), grp.add(b, a));
                for c in grp.elements() {
                    assert_eq!(grp.add(grp.add(a, b), c), grp.add(a, grp.add(b, c)));
                }
            }
            assert_eq!(grp.mul(3, a), grp.add(a, grp.double(a)));
            assert_eq!(grp.mul(-1, a), grp.neg(a));
        }
    }

    #[test]
    fn characters() {
        let z5 = g("Z5");
        let chi = make_character(&z5, 1).unwrap();
        assert_eq!(chi.value(1), CycNumber::root_of_unity(5, 1));
        assert_eq!(
            make_character(&g("Z6"), 2),
            Err(Error::NotInjective { k: 2, order: 6 })
        );
        assert!(matches!(make_character(&g("Z2xZ2"), 1), Err(Error::NotCyclic(_))));
        for n in 1..=12u64 {
            let grp = FinAbGroup::cyclic(n);
            for k in 1..=n as i64 {
                let Ok(chi) = make_character(&grp, k) else {
                    continue;
                };
                for a in grp.elements() {
                    assert_eq!(chi.value(a).is_one(), a == 0);
                    for b in grp.elements() {
                        assert_eq!(chi.value(grp.add(a, b)), &chi.value(a) * &chi.value(b));
                    }
                }
                let p = chi.primitive_preimage();
                assert_eq!(chi.value(p), CycNumber::root_of_unity(n as u32, 1));
            }
        }
    }

    #[test]
    fn half_set() {
        assert_eq!(g("Z5").half_set(), vec![1, 2]);
        assert_eq!(g("Z6").half_set(), vec![1, 2]);
        assert_eq!(g("Z6").half_set_rep(4), Some((2, true)));
        assert_eq!(g("Z6").half_set_rep(3), None);
        assert!(g("Z2xZ2").half_set().is_empty());
    }
}
