use rayon::prelude::*;
use serde_json::json;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::report::Check;

use super::linear::{LinearMap, Matrix};
use super::sparse::SparseVec;
use super::{LieAlgebra, TripleCount};

/// Bilinear form given by its Gram matrix in a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        Ok(BilinearForm { matrix })
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm {
            matrix: Matrix::zeros(n, n),
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> CycNumber) -> Self {
        BilinearForm {
            matrix: Matrix::from_fn(n, n, f),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        self.matrix.get(i, j)
    }

    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> CycNumber {
        let mut acc = CycNumber::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let g = self.matrix.get(i, j);
                if !g.is_zero() {
                    acc = &acc + &(&(a * b) * g);
                }
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }

    /// `(x, y) -> <f x, f y>`
    pub fn pullback(&self, f: &LinearMap) -> BilinearForm {
        BilinearForm::from_fn(f.domain_dim(), |i, j| self.eval(f.column(i), f.column(j)))
    }

    /// Radical `{ x : <x, y> = 0 for all y }`.
    pub fn radical_dim(&self) -> usize {
        self.dim() - self.rank()
    }
}

/// Symmetry and invariance `<[a, b], c> = <a, [b, c]>` on all basis triples
/// for which both brackets are defined.
pub fn check_invariant_form(l: &LieAlgebra, b: &BilinearForm) -> Check {
    let n = l.dim();
    if b.dim() != n {
        return Check::fail(
            "invariant form",
            0,
            json!({"form_dim": b.dim(), "algebra_dim": n}),
        );
    }
    for i in 0..n {
        for j in 0..i {
            if b.get(i, j) != b.get(j, i) {
                return Check::fail(
                    "invariant form",
                    0,
                    json!({"asymmetric": [l.label(i), l.label(j)]}),
                );
            }
        }
    }
    let results: Vec<TripleCount> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut count = 0u64;
            for bb in 0..n {
                if !l.in_window(a, bb) {
                    continue;
                }
                let ab = l.bracket(a, bb).expect("in window");
                for c in 0..n {
                    if !l.in_window(bb, c) {
                        continue;
                    }
                    count += 1;
                    let bc = l.bracket(bb, c).expect("in window");
                    let mut lhs = CycNumber::zero();
                    for (k, x) in ab.iter() {
                        let g = b.get(k, c);
                        if !g.is_zero() {
                            lhs = &lhs + &(x * g);
                        }
                    }
                    let mut rhs = CycNumber::zero();
                    for (k, x) in bc.iter() {
                        let g = b.get(a, k);
                        if !g.is_zero() {
                            rhs = &rhs + &(x * g);
                        }
                    }
                    if lhs != rhs {
                        return (count, Some((a, bb, c)));
                    }
                }
            }
            (count, None)
        })
        .collect();
    let count = results.iter().map(|r| r.0).sum();
    match results.iter().find_map(|r| r.1) {
        None => Check::pass("invariant form", count),
        Some((a, bb, c)) => Check::fail(
            "invariant form",
            count,
            json!({"triple": [l.label(a), l.label(bb), l.label(c)]}),
        ),
    }
}

/// `kappa(a, b) = tr(ad a ad b)`.
pub fn killing_form(l: &LieAlgebra) -> Result<BilinearForm> {
    if let Some(w) = l.window() {
        return Err(Error::Invalid(format!(
            "Killing form needs total brackets, algebra has window {w}"
        )));
    }
    let n = l.dim();
    // ad_i[k][m] = coefficient of b_k in [b_i, b_m]
    let entries: Vec<CycNumber> = (0..n * n)
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p / n, p % n);
            let mut acc = CycNumber::zero();
            for m in 0..n {
                for (k, c) in l.bracket(i, m).expect("ungraded").iter() {
                    if let Some(d) = l.bracket(j, k).expect("ungraded").get(m) {
                        acc = &acc + &(c * d);
                    }
                }
            }
            acc
        })
        .collect();
    Ok(BilinearForm::from_fn(n, |i, j| entries[i * n + j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::tests::sl2;

    #[test]
    fn killing_of_sl2() {
        let k = killing_form(&sl2()).unwrap();
        // kappa(e, f) = 4, kappa(h, h) = 8
        assert_eq!(k.get(0, 1), &CycNumber::from_i64(4));
        assert_eq!(k.get(2, 2), &CycNumber::from_i64(8));
        assert!(k.is_nondegenerate());
        assert!(check_invariant_form(&sl2(), &k).passed());
    }

    #[test]
    fn abelian_and_zero_forms() {
        let a = LieAlgebra::abelian(3);
        assert_eq!(killing_form(&a).unwrap(), BilinearForm::zero(3));
        assert!(check_invariant_form(&sl2(), &BilinearForm::zero(3)).passed());
    }

    #[test]
    fn non_invariant_form_fails() {
        let id = BilinearForm::from_fn(3, |i, j| CycNumber::from_i64((i == j) as i64));
        assert!(!check_invariant_form(&sl2(), &id).passed());
    }
}
