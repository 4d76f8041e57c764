//! Exact linear algebra over `CycNumber`: dense matrices, sparse row-reduced
//! subspaces, and linear maps stored by columns.

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

use super::sparse::SparseVec;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNumber>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycNumber::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycNumber::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycNumber) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(&self.data[i * self.cols..(i + 1) * self.cols])
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        Subspace::from_vectors(self.cols, PivotSide::First, (0..self.rows).map(|i| self.row(i))).dim()
    }

    /// Basis of `{ x : M x = 0 }`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        Subspace::from_vectors(self.cols, PivotSide::First, (0..self.rows).map(|i| self.row(i))).annihilated()
    }

    pub fn scalar_order(&self) -> u32 {
        use num_integer::Integer;
        self.data.iter().fold(1u32, |acc, c| acc.lcm(&c.order()))
    }
}

/// Which end of a row carries its pivot.
///
/// With `Last`, the non-pivot coordinates are the lowest-index ones that
/// can be kept, which makes the complement basis of a quotient prefer early
/// basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotSide {
    First,
    Last,
}

/// A subspace of `K^n` kept in fully reduced echelon form.
///
/// Every row has pivot entry 1 and every other row vanishes in its pivot
/// column. The subspace also remembers the vectors that were accepted on
/// insertion and how each row is expressed through them, so coordinates with
/// respect to that accepted basis are available.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    side: PivotSide,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    accepted: Vec<SparseVec>,
    track: Vec<SparseVec>,
}

impl Subspace {
    pub fn new(ambient: usize, side: PivotSide) -> Self {
        Subspace {
            ambient,
            side,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ambient],
            accepted: Vec::new(),
            track: Vec::new(),
        }
    }

    pub fn from_vectors<I>(ambient: usize, side: PivotSide, vectors: I) -> Self
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let mut s = Subspace::new(ambient, side);
        for v in vectors {
            s.insert(&v);
        }
        s
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::new(ambient, PivotSide::Last)
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(ambient, PivotSide::Last, (0..ambient).map(SparseVec::unit))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn side(&self) -> PivotSide {
        self.side
    }

    /// Reduced echelon rows.
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The independent input vectors, in insertion order.
    pub fn accepted(&self) -> &[SparseVec] {
        &self.accepted
    }

    fn pivot_of(&self, v: &SparseVec) -> Option<usize> {
        match self.side {
            PivotSide::First => v.first_index(),
            PivotSide::Last => v.last_index(),
        }
    }

    /// Residual of `v` after removing its component along the pivots, and
    /// the tracked combination of accepted vectors that was subtracted.
    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut used = SparseVec::new();
        for (i, c) in v.iter() {
            if let Some(r) = self.pivot_row[i] {
                let c = c.clone();
                res.add_scaled_assign(&self.rows[r], &-&c);
                used.add_scaled_assign(&self.track[r], &c);
            }
        }
        // Entries introduced by earlier subtractions never land on pivot
        // columns because rows are fully reduced.
        (res, used)
    }

    /// The component of `v` outside the span, supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut res = v.clone();
        for (i, c) in v.iter() {
            if let Some(r) = self.pivot_row[i] {
                res.add_scaled_assign(&self.rows[r], &-c);
            }
        }
        res
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns `true` when it was independent of the current span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        assert!(
            v.last_index().is_none_or(|i| i < self.ambient),
            "vector outside the ambient space"
        );
        let (res, used) = self.reduce_tracked(v);
        let Some(p) = self.pivot_of(&res) else {
            return false;
        };
        let inv = res.coeff(p).inv().expect("pivot is nonzero");
        let new_index = self.accepted.len();
        let row = res.scale(&inv);
        let track = SparseVec::unit(new_index).sub(&used).scale(&inv);
        for r in 0..self.rows.len() {
            if let Some(c) = self.rows[r].get(p).cloned() {
                let neg = -&c;
                self.rows[r].add_scaled_assign(&row, &neg);
                self.track[r].add_scaled_assign(&track, &neg);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(row);
        self.track.push(track);
        self.accepted.push(v.clone());
        true
    }

    /// Coordinates of `v` in the reduced rows: the entries at the pivots.
    /// `None` if `v` is not in the span.
    pub fn row_coords(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_entries(
            self.pivots
                .iter()
                .enumerate()
                .filter_map(|(r, &p)| v.get(p).map(|c| (r, c.clone())))
                .collect(),
        ))
    }

    /// Coordinates of `v` in the accepted basis. `None` if `v` is not in the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, used) = self.reduce_tracked(v);
        res.is_zero().then_some(used)
    }

    /// Non-pivot coordinates in increasing order; the standard basis vectors
    /// at these indices span a complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&i| self.pivot_row[i].is_none())
            .collect()
    }

    /// Treating the rows as linear equations, a basis of their common solution space.
    pub fn annihilated(&self) -> Vec<SparseVec> {
        self.complement()
            .into_iter()
            .map(|f| {
                let mut entries = vec![(f, CycNumber::one())];
                for (r, row) in self.rows.iter().enumerate() {
                    if let Some(c) = row.get(f) {
                        entries.push((self.pivots[r], -c));
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect()
    }

    /// Same subspace with a different pivot convention.
    pub fn with_side(&self, side: PivotSide) -> Subspace {
        if side == self.side {
            return self.clone();
        }
        Subspace::from_vectors(self.ambient, side, self.accepted.iter().cloned())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        let shift = |v: &SparseVec| v.reindex(|i| Some(i + n));
        let mut z = Subspace::new(2 * n, PivotSide::First);
        for v in &self.rows {
            z.insert(&v.add(&shift(v)));
        }
        for w in &other.rows {
            z.insert(w);
        }
        let meet = z
            .rows
            .iter()
            .filter(|r| r.first_index().is_some_and(|i| i >= n))
            .map(|r| r.reindex(|i| i.checked_sub(n)));
        Subspace::from_vectors(n, self.side, meet)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

/// Linear map `K^domain -> K^codomain` stored as its image columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    domain: usize,
    codomain: usize,
    columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn new(domain: usize, codomain: usize, columns: Vec<SparseVec>) -> Result<Self> {
        if columns.len() != domain {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for a domain of dimension {domain}",
                columns.len()
            )));
        }
        if let Some(bad) = columns
            .iter()
            .position(|c| c.last_index().is_some_and(|i| i >= codomain))
        {
            return Err(Error::DimensionMismatch(format!(
                "column {bad} leaves the codomain of dimension {codomain}"
            )));
        }
        Ok(LinearMap {
            domain,
            codomain,
            columns,
        })
    }

    pub fn from_fn(domain: usize, codomain: usize, f: impl Fn(usize) -> SparseVec) -> Result<Self> {
        LinearMap::new(domain, codomain, (0..domain).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            domain: n,
            codomain: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn zero(domain: usize, codomain: usize) -> Self {
        LinearMap {
            domain,
            codomain,
            columns: vec![SparseVec::new(); domain],
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain
    }

    pub fn column(&self, i: usize) -> &SparseVec {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out.add_scaled_assign(&self.columns[i], c);
        }
        out
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(inner.codomain, self.domain, "maps do not compose");
        LinearMap {
            domain: inner.domain,
            codomain: self.codomain,
            columns: inner.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.domain, self.codomain), (other.domain, other.codomain));
        LinearMap {
            domain: self.domain,
            codomain: self.codomain,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        self.add(&other.scale(&CycNumber::from_i64(-1)))
    }

    pub fn scale(&self, c: &CycNumber) -> LinearMap {
        LinearMap {
            domain: self.domain,
            codomain: self.codomain,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == LinearMap::identity(self.domain)
    }

    /// Rows of the matrix, as sparse vectors over the domain.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); self.codomain];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].push((j, c.clone()));
            }
        }
        rows.into_iter().map(SparseVec::from_entries).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.codomain, self.domain);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.codomain, PivotSide::First, self.columns.iter().cloned())
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn kernel(&self) -> Subspace {
        let eqs = Subspace::from_vectors(self.domain, PivotSide::First, self.row_vectors());
        Subspace::from_vectors(self.domain, PivotSide::Last, eqs.annihilated())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| CycNumber::from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn echelon_and_coords() {
        let mut s = Subspace::new(4, PivotSide::First);
        assert!(s.insert(&v(&[1, 2, 0, 1])));
        assert!(s.insert(&v(&[0, 1, 1, 0])));
        assert!(!s.insert(&v(&[2, 5, 1, 2])));
        assert_eq!(s.dim(), 2);
        let w = v(&[3, 7, 1, 3]);
        let c = s.coords(&w).unwrap();
        assert_eq!(c.coeff(0), CycNumber::from_i64(3));
        assert_eq!(c.coeff(1), CycNumber::from_i64(1));
        assert!(s.coords(&v(&[0, 0, 0, 1])).is_none());
    }

    #[test]
    fn trailing_pivots_keep_early_complement() {
        let s = Subspace::from_vectors(3, PivotSide::Last, [v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert_eq!(s.complement(), vec![0]);
        let t = Subspace::from_vectors(3, PivotSide::First, [v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert_eq!(t.complement(), vec![2]);
    }

    #[test]
    fn nullspace_and_intersection() {
        let m = Matrix::from_fn(2, 4, |i, j| CycNumber::from_i64(((i + 1) * (j + 1)) as i64 % 3));
        let ns = m.nullspace();
        assert_eq!(ns.len(), 4 - m.rank());
        for x in &ns {
            for i in 0..2 {
                assert!(m.row(i).dot(x).is_zero());
            }
        }
        let a = Subspace::from_vectors(3, PivotSide::First, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(3, PivotSide::First, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let meet = a.intersect(&b);
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn map_kernel_rank() {
        let f = LinearMap::new(3, 2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(f.rank(), 2);
        let k = f.kernel();
        assert_eq!(k.dim(), 1);
        assert!(f.apply(&k.rows()[0]).is_zero());
        assert!(LinearMap::identity(3).is_identity());
        assert_eq!(f.to_matrix().rank(), 2);
    }
}
