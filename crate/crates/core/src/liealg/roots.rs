//! Root decomposition with respect to a supplied Cartan subalgebra and
//! classification of the resulting root system by Cartan-matrix matching.
//!
//! Cartan elements are expected to act with eigenvalues in `i * Z` (as plane
//! rotations in orthogonal algebras do); a root is the integer tuple of
//! eigenvalues divided by `i`.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

use super::linear::{LinearMap, PivotSide, Subspace};
use super::sparse::SparseVec;
use super::LieAlgebra;

/// Largest `|eigenvalue / i|` searched for.
const EIGEN_BOUND: i64 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct RootData {
    pub rank: usize,
    /// Nonzero roots in lexicographic order.
    pub roots: Vec<Vec<i64>>,
    pub multiplicities: Vec<usize>,
    pub zero_weight_dim: usize,
    /// Basis of each root space, aligned with `roots`.
    #[serde(skip)]
    pub root_spaces: Vec<Vec<SparseVec>>,
}

impl RootData {
    pub fn root_space(&self, root: &[i64]) -> Option<&[SparseVec]> {
        self.roots
            .iter()
            .position(|r| r == root)
            .map(|p| self.root_spaces[p].as_slice())
    }
}

/// Eigenspaces of `m` for eigenvalues `scale * t`, `t` integer, stopping as
/// soon as they fill the space.
pub(crate) fn integer_eigenspaces(m: &LinearMap, scale: &CycNumber) -> Option<Vec<(i64, Subspace)>> {
    let n = m.domain_dim();
    let id = LinearMap::identity(n);
    let mut found = Vec::new();
    let mut total = 0;
    let candidates = std::iter::once(0).chain((1..=EIGEN_BOUND).flat_map(|t| [t, -t]));
    for t in candidates {
        if total == n {
            break;
        }
        let shifted = m.sub(&id.scale(&(scale * &CycNumber::from_i64(t))));
        let k = shifted.kernel();
        if k.dim() > 0 {
            total += k.dim();
            found.push((t, k.with_side(PivotSide::First)));
        }
    }
    (total == n).then_some(found)
}

pub fn root_decomposition(l: &LieAlgebra, cartan: &[SparseVec]) -> Result<RootData> {
    let n = l.dim();
    for (a, b) in (0..cartan.len()).tuple_combinations() {
        if !l.bracket_vec(&cartan[a], &cartan[b])?.is_zero() {
            return Err(Error::NotSimultaneouslyDiagonalizable(format!(
                "Cartan elements {a} and {b} do not commute"
            )));
        }
    }
    let i = CycNumber::root_of_unity(4, 1);
    let mut cells: Vec<(Vec<i64>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
    for (s, h) in cartan.iter().enumerate() {
        let ad = l.ad(h)?;
        let spaces = integer_eigenspaces(&ad, &i).ok_or_else(|| {
            Error::NotSimultaneouslyDiagonalizable(format!(
                "ad of Cartan element {s} is not diagonalizable with eigenvalues in i*Z"
            ))
        })?;
        let mut next = Vec::new();
        for (tuple, v) in &cells {
            for (t, e) in &spaces {
                let w = v.intersect(e);
                if w.dim() > 0 {
                    let mut tu = tuple.clone();
                    tu.push(*t);
                    next.push((tu, w));
                }
            }
        }
        cells = next;
    }
    let total: usize = cells.iter().map(|(_, w)| w.dim()).sum();
    if total != n {
        return Err(Error::NotSimultaneouslyDiagonalizable(format!(
            "weight spaces cover {total} of {n} dimensions"
        )));
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    let mut data = RootData {
        rank: cartan.len(),
        roots: Vec::new(),
        multiplicities: Vec::new(),
        zero_weight_dim: 0,
        root_spaces: Vec::new(),
    };
    for (tuple, w) in cells {
        if tuple.iter().all(|&t| t == 0) {
            data.zero_weight_dim = w.dim();
        } else {
            data.multiplicities.push(w.dim());
            data.root_spaces.push(w.rows().to_vec());
            data.roots.push(tuple);
        }
    }
    Ok(data)
}

/// Simple-type label: a product of simple components, an abelian algebra,
/// or simple components plus a center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeLabel {
    pub components: Vec<(char, usize)>,
    pub center_dim: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl TypeLabel {
    pub fn is_abelian(&self) -> bool {
        self.components.is_empty()
    }

    pub fn abelian(dim: usize) -> Self {
        TypeLabel {
            components: Vec::new(),
            center_dim: dim,
            cartan_matrix: Vec::new(),
        }
    }

    /// Same components regardless of order.
    pub fn same_type(&self, other: &TypeLabel) -> bool {
        let mut a = self.components.clone();
        let mut b = other.components.clone();
        a.sort();
        b.sort();
        a == b && self.center_dim == other.center_dim
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "abelian-{}", self.center_dim);
        }
        let parts: Vec<String> = self.components.iter().map(|(t, l)| format!("{t}{l}")).collect();
        write!(f, "{}", parts.join("x"))?;
        if self.center_dim > 0 {
            write!(f, "xabelian-{}", self.center_dim)?;
        }
        Ok(())
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cartan_matrix_of(simple: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let mut m = vec![vec![0; simple.len()]; simple.len()];
    for (i, a) in simple.iter().enumerate() {
        for (j, b) in simple.iter().enumerate() {
            let num = 2 * dot(a, b);
            let den = dot(b, b);
            if den == 0 || num % den != 0 {
                return None;
            }
            m[i][j] = num / den;
        }
    }
    Some(m)
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn chain(dim: usize, l: usize) -> Vec<Vec<i64>> {
    (0..l.saturating_sub(1))
        .map(|i| {
            let mut v = unit(dim, i);
            v[i + 1] = -1;
            v
        })
        .collect()
}

/// Cartan matrix of type `t` and rank `l` from the standard simple roots.
fn template(t: char, l: usize) -> Option<Vec<Vec<i64>>> {
    let simple = match t {
        'A' if l >= 1 => chain(l + 1, l + 1),
        'B' if l >= 2 => {
            let mut s = chain(l, l);
            s.push(unit(l, l - 1));
            s
        }
        'C' if l >= 2 => {
            let mut s = chain(l, l);
            let mut last = unit(l, l - 1);
            last[l - 1] = 2;
            s.push(last);
            s
        }
        'D' if l >= 4 => {
            let mut s = chain(l, l);
            let mut last = unit(l, l - 1);
            last[l - 2] = 1;
            s.push(last);
            s
        }
        _ => return None,
    };
    cartan_matrix_of(&simple)
}

fn matches_up_to_permutation(m: &[Vec<i64>], t: &[Vec<i64>]) -> bool {
    let l = m.len();
    if t.len() != l {
        return false;
    }
    (0..l)
        .permutations(l)
        .any(|p| (0..l).all(|i| (0..l).all(|j| m[p[i]][p[j]] == t[i][j])))
}

fn classify_component(simple: &[Vec<i64>], m: &[Vec<i64>]) -> Option<(char, usize)> {
    let l = simple.len();
    if l == 1 {
        // Rank one: only the root length distinguishes the conventional names.
        return match dot(&simple[0], &simple[0]) {
            1 => Some(('B', 1)),
            4 => Some(('C', 1)),
            _ => Some(('A', 1)),
        };
    }
    ['A', 'B', 'C', 'D']
        .into_iter()
        .find(|&t| template(t, l).is_some_and(|tm| matches_up_to_permutation(m, &tm)))
        .map(|t| (t, l))
}

fn is_positive(r: &[i64]) -> bool {
    r.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Identifies the root system: lexicographic positive roots, simple roots as
/// the indecomposable positive ones, Cartan matrix `2(a_i, a_j)/(a_j, a_j)`,
/// and template matching per Dynkin component.
pub fn classify_simple_type(data: &RootData) -> Result<TypeLabel> {
    if data.roots.is_empty() {
        return Ok(TypeLabel::abelian(data.zero_weight_dim));
    }
    let unrecognized = |m: Vec<Vec<i64>>| Error::UnrecognizedRootSystem { cartan_matrix: m };
    let roots = &data.roots;
    if roots.iter().any(|r| {
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        !roots.contains(&neg)
    }) {
        return Err(unrecognized(Vec::new()));
    }
    let positive: Vec<&Vec<i64>> = roots.iter().filter(|r| is_positive(r)).collect();
    let simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                let b: Vec<i64> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                is_positive(&b) && positive.contains(&&b)
            })
        })
        .map(|r| (*r).clone())
        .collect();
    let m = cartan_matrix_of(&simple).ok_or_else(|| unrecognized(Vec::new()))?;
    // Dynkin components
    let l = simple.len();
    let mut comp = vec![usize::MAX; l];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..l {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..l {
                if comp[y] == usize::MAX && m[x][y] != 0 {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    let mut labels = Vec::new();
    for members in &components {
        let sub_simple: Vec<Vec<i64>> = members.iter().map(|&i| simple[i].clone()).collect();
        let sub_m: Vec<Vec<i64>> = members
            .iter()
            .map(|&i| members.iter().map(|&j| m[i][j]).collect())
            .collect();
        labels.push(classify_component(&sub_simple, &sub_m).ok_or_else(|| unrecognized(m.clone()))?);
    }
    // Reduced root system check: the number of roots must match the types found.
    let expected: usize = labels
        .iter()
        .map(|&(t, l)| match t {
            'A' => l * (l + 1),
            'B' | 'C' => 2 * l * l,
            'D' => 2 * l * (l - 1),
            _ => 0,
        })
        .sum();
    if expected != roots.len() || data.multiplicities.iter().any(|&k| k != 1) {
        return Err(unrecognized(m));
    }
    Ok(TypeLabel {
        components: labels,
        center_dim: data.zero_weight_dim.saturating_sub(l),
        cartan_matrix: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(roots: Vec<Vec<i64>>, zero: usize) -> RootData {
        RootData {
            rank: roots.first().map_or(0, Vec::len),
            multiplicities: vec![1; roots.len()],
            root_spaces: vec![Vec::new(); roots.len()],
            roots,
            zero_weight_dim: zero,
        }
    }

    fn b2_roots() -> Vec<Vec<i64>> {
        let mut r = Vec::new();
        for (a, b) in [(1, 1), (1, -1), (1, 0), (0, 1)] {
            r.push(vec![a, b]);
            r.push(vec![-a, -b]);
        }
        r
    }

    #[test]
    fn templates() {
        assert_eq!(template('B', 2).unwrap(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(template('A', 2).unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        assert!(template('D', 3).is_none());
    }

    #[test]
    fn b2_and_a1xa1() {
        let t = classify_simple_type(&data(b2_roots(), 2)).unwrap();
        assert_eq!(t.to_string(), "B2");
        let a1a1 = data(vec![vec![1, 1], vec![-1, -1], vec![1, -1], vec![-1, 1]], 2);
        assert_eq!(classify_simple_type(&a1a1).unwrap().to_string(), "A1xA1");
        let b1 = data(vec![vec![1], vec![-1]], 1);
        assert_eq!(classify_simple_type(&b1).unwrap().to_string(), "B1");
        assert_eq!(
            classify_simple_type(&data(vec![], 3)).unwrap().to_string(),
            "abelian-3"
        );
    }

    #[test]
    fn permuting_cartan_coordinates_keeps_type() {
        // B3 roots: +-e_i +- e_j, +-e_i
        let mut roots = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut v = vec![0; 3];
                v[i] = s;
                roots.push(v);
                for j in i + 1..3 {
                    for t in [1, -1] {
                        let mut w = vec![0; 3];
                        w[i] = s;
                        w[j] = t;
                        roots.push(w);
                    }
                }
            }
        }
        for perm in (0..3).permutations(3) {
            let permuted: Vec<Vec<i64>> = roots
                .iter()
                .map(|r| perm.iter().map(|&p| r[p]).collect())
                .collect();
            let t = classify_simple_type(&data(permuted, 3)).unwrap();
            assert_eq!(t.to_string(), "B3");
        }
    }

    #[test]
    fn g2_is_unrecognized() {
        // G2 in a non-orthonormal realization: Cartan matrix entry -3.
        let roots = vec![vec![1, 0], vec![-1, 0], vec![-3, 1], vec![3, -1]];
        let err = classify_simple_type(&data(roots, 2)).unwrap_err();
        assert!(matches!(err, Error::UnrecognizedRootSystem { .. }));
    }
}
