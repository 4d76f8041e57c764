use crate::cyclotomic::CycNumber;

/// Sparse vector over `CycNumber`: sorted `(index, coefficient)` pairs with no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, CycNumber)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, CycNumber::one())],
        }
    }

    pub fn single(i: usize, c: CycNumber) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(i, c)],
            }
        }
    }

    /// Sorts, merges duplicate indices and drops zeros.
    pub fn from_entries(mut entries: Vec<(usize, CycNumber)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, CycNumber)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(values: &[CycNumber]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<CycNumber> {
        let mut out = vec![CycNumber::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, CycNumber)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CycNumber)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&CycNumber> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn coeff(&self, i: usize) -> CycNumber {
        self.get(i).cloned().unwrap_or_default()
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn last_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &SparseVec, c: &CycNumber) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let v = x + &(c * y);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add_scaled_assign(&mut self, other: &SparseVec, c: &CycNumber) {
        *self = self.add_scaled(other, c);
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &CycNumber::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &CycNumber::from_i64(-1))
    }

    pub fn scale(&self, c: &CycNumber) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// Relabel indices through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, c)| f(*i).map(|j| (j, c.clone())))
                .collect(),
        )
    }

    /// Euclidean-style pairing `sum_i x_i y_i`.
    pub fn dot(&self, other: &SparseVec) -> CycNumber {
        let mut acc = CycNumber::zero();
        for (i, x) in &self.entries {
            if let Some(y) = other.get(*i) {
                acc = &acc + &(x * y);
            }
        }
        acc
    }

    /// Least common multiple of the cyclotomic orders of the coefficients.
    pub fn scalar_order(&self) -> u32 {
        use num_integer::Integer;
        self.entries.iter().fold(1u32, |acc, (_, c)| acc.lcm(&c.order()))
    }

    /// `a*e_i + b*e_j + ...` written with the given labels, for reports.
    pub fn describe(&self, labels: &[String], order: u32) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(i, c)| {
                let label = labels.get(*i).cloned().unwrap_or_else(|| format!("#{i}"));
                let s = c
                    .to_string_in(num_integer::Integer::lcm(&order.max(1), &c.order()))
                    .unwrap_or_else(|_| c.to_string());
                if c.is_one() {
                    label
                } else {
                    format!("({s})*{label}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycNumber {
        CycNumber::from_i64(n)
    }

    #[test]
    fn merge_and_cancel() {
        let a = SparseVec::from_entries(vec![(3, c(1)), (1, c(2)), (3, c(4))]);
        assert_eq!(a.entries(), &[(1, c(2)), (3, c(5))]);
        let b = SparseVec::from_entries(vec![(3, c(5)), (7, c(1))]);
        let d = a.sub(&b);
        assert_eq!(d.entries(), &[(1, c(2)), (7, c(-1))]);
        assert_eq!(d.coeff(3), c(0));
        assert_eq!(a.dot(&b), c(25));
        assert!(a.add_scaled(&a, &c(-1)).is_zero());
    }
}
