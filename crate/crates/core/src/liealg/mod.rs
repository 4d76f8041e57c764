//! Finite-dimensional Lie algebras given by structure constants over
//! cyclotomic scalars, with identity checks, quotients, subalgebras,
//! homomorphism checks and fixed points.
//!
//! An algebra may carry a degree grading with a window `W`: brackets of
//! basis elements are then defined only when the degrees add up to at most
//! `W` in absolute value. Out-of-window requests are errors rather than
//! silently dropped terms.

pub mod forms;
pub mod linear;
pub mod roots;
pub mod sparse;

use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::report::Check;

pub use forms::{check_invariant_form, killing_form, BilinearForm};
pub use linear::{LinearMap, Matrix, PivotSide, Subspace};
pub use roots::{classify_simple_type, root_decomposition, RootData, TypeLabel};
pub use sparse::SparseVec;

/// Tuples checked in one slice of a sweep, and the first failing triple.
pub(crate) type TripleCount = (u64, Option<(usize, usize, usize)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub degrees: Vec<i64>,
    pub window: i64,
}

impl Grading {
    fn allows(&self, total: i64) -> bool {
        total.abs() <= self.window
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// Full `n x n` table, `table[i * n + j] = [b_i, b_j]`.
    table: Vec<SparseVec>,
    grading: Option<Grading>,
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

impl LieAlgebra {
    /// Builds the algebra from `f(i, j) = [b_i, b_j]`, evaluated for `i < j` only.
    pub fn from_fn<F>(labels: Vec<String>, f: F) -> Self
    where
        F: Fn(usize, usize) -> SparseVec + Sync,
    {
        Self::build(labels, None, f)
    }

    /// Graded variant: `f` is evaluated only on pairs whose degrees stay in the window.
    pub fn from_fn_graded<F>(labels: Vec<String>, degrees: Vec<i64>, window: i64, f: F) -> Self
    where
        F: Fn(usize, usize) -> SparseVec + Sync,
    {
        assert_eq!(labels.len(), degrees.len());
        Self::build(labels, Some(Grading { degrees, window }), f)
    }

    fn build<F>(labels: Vec<String>, grading: Option<Grading>, f: F) -> Self
    where
        F: Fn(usize, usize) -> SparseVec + Sync,
    {
        let n = labels.len();
        let allowed = |i: usize, j: usize| {
            grading
                .as_ref()
                .is_none_or(|g| g.allows(g.degrees[i] + g.degrees[j]))
        };
        let values: Vec<((usize, usize), SparseVec)> = pair_list(n)
            .into_par_iter()
            .filter(|&(i, j)| allowed(i, j))
            .map(|(i, j)| ((i, j), f(i, j)))
            .collect();
        let mut table = vec![SparseVec::new(); n * n];
        for ((i, j), v) in values {
            table[j * n + i] = v.neg();
            table[i * n + j] = v;
        }
        LieAlgebra {
            labels,
            table,
            grading,
        }
    }

    /// Takes a full table and checks antisymmetry.
    pub fn from_table(labels: Vec<String>, table: Vec<SparseVec>, grading: Option<Grading>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "table of size {} for dimension {n}",
                table.len()
            )));
        }
        for i in 0..n {
            for j in i..n {
                if table[i * n + j] != table[j * n + i].neg() {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(LieAlgebra {
            labels,
            table,
            grading,
        })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra::from_fn((0..n).map(|i| format!("x{i}")).collect(), |_, _| SparseVec::new())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g.degrees[i])
    }

    pub fn window(&self) -> Option<i64> {
        self.grading.as_ref().map(|g| g.window)
    }

    pub fn in_window(&self, i: usize, j: usize) -> bool {
        self.grading
            .as_ref()
            .is_none_or(|g| g.allows(g.degrees[i] + g.degrees[j]))
    }

    fn check_window(&self, i: usize, j: usize) -> Result<()> {
        match &self.grading {
            Some(g) if !g.allows(g.degrees[i] + g.degrees[j]) => Err(Error::WindowExceeded {
                degree: g.degrees[i] + g.degrees[j],
                window: g.window,
            }),
            _ => Ok(()),
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> Result<&SparseVec> {
        self.check_window(i, j)?;
        Ok(&self.table[i * self.dim() + j])
    }

    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let v = self.bracket(i, j)?;
                if !v.is_zero() {
                    out.add_scaled_assign(v, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// The single degree of a homogeneous vector, `None` for zero or mixed vectors.
    pub fn homogeneous_degree(&self, v: &SparseVec) -> Option<i64> {
        let mut degs = v.iter().map(|(i, _)| self.degree(i));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// `ad x` as a linear map. Fails on graded algebras, where `ad x` is not total.
    pub fn ad(&self, x: &SparseVec) -> Result<LinearMap> {
        if let Some(w) = self.window() {
            return Err(Error::Invalid(format!(
                "ad is not defined on a degree-windowed algebra (window {w})"
            )));
        }
        let n = self.dim();
        let cols = (0..n)
            .map(|j| self.bracket_vec(x, &SparseVec::unit(j)))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::new(n, n, cols)
    }

    /// Overwrites `[b_i, b_j]` and `[b_j, b_i] = -v`. Used to build perturbed
    /// algebras for negative controls.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) {
        let n = self.dim();
        self.table[j * n + i] = v.neg();
        self.table[i * n + j] = v;
    }

    /// Overwrites only `[b_i, b_j]`, breaking antisymmetry on purpose.
    pub fn set_bracket_one_sided(&mut self, i: usize, j: usize, v: SparseVec) {
        let n = self.dim();
        self.table[i * n + j] = v;
    }

    pub fn scalar_order(&self) -> u32 {
        self.table.iter().fold(1u32, |acc, v| acc.lcm(&v.scalar_order()))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(SparseVec::is_zero)
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, CycNumber)> {
        let n = self.dim();
        let mut out = Vec::new();
        for (i, j) in pair_list(n) {
            for (k, c) in self.table[i * n + j].iter() {
                out.push((i, j, k, c.clone()));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let order = self.scalar_order();
        let brackets: Vec<Value> = self
            .structure_constants()
            .into_iter()
            .map(|(i, j, k, c)| json!([i, j, k, c.to_string_in(order).expect("order divides")]))
            .collect();
        let mut v = json!({
            "dimension": self.dim(),
            "scalar_order": order,
            "basis": self.labels,
            "brackets": brackets,
        });
        if let Some(g) = &self.grading {
            v["degrees"] = json!(g.degrees);
            v["window"] = json!(g.window);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("algebra JSON: {what}"));
        let labels: Vec<String> = serde_json::from_value(v["basis"].clone()).map_err(|_| bad("basis"))?;
        let order = v["scalar_order"].as_u64().ok_or_else(|| bad("scalar_order"))? as u32;
        let n = labels.len();
        let mut table = vec![SparseVec::new(); n * n];
        let mut entries: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); n * n];
        for b in v["brackets"].as_array().ok_or_else(|| bad("brackets"))? {
            let idx = |p: usize| b[p].as_u64().map(|x| x as usize).filter(|&x| x < n);
            let (i, j, k) = (
                idx(0).ok_or_else(|| bad("index"))?,
                idx(1).ok_or_else(|| bad("index"))?,
                idx(2).ok_or_else(|| bad("index"))?,
            );
            let c = CycNumber::parse(b[3].as_str().ok_or_else(|| bad("scalar"))?, order)?;
            entries[i * n + j].push((k, c.clone()));
            entries[j * n + i].push((k, -c));
        }
        for (slot, e) in table.iter_mut().zip(entries) {
            *slot = SparseVec::from_entries(e);
        }
        let grading = match (v.get("degrees"), v.get("window")) {
            (Some(d), Some(w)) => Some(Grading {
                degrees: serde_json::from_value(d.clone()).map_err(|_| bad("degrees"))?,
                window: w.as_i64().ok_or_else(|| bad("window"))?,
            }),
            _ => None,
        };
        LieAlgebra::from_table(labels, table, grading)
    }

    pub fn describe(&self, v: &SparseVec) -> String {
        v.describe(&self.labels, self.scalar_order())
    }
}

fn triple_in_window(l: &LieAlgebra, i: usize, j: usize, k: usize) -> bool {
    match &l.grading {
        None => true,
        Some(g) => {
            let (a, b, c) = (g.degrees[i], g.degrees[j], g.degrees[k]);
            [a + b, b + c, a + c, a + b + c].iter().all(|&t| g.allows(t))
        }
    }
}

/// Antisymmetry on all pairs and the Jacobi identity on all basis triples
/// (restricted to triples whose partial sums stay inside the window).
pub fn check_jacobi(l: &LieAlgebra) -> Check {
    let n = l.dim();
    for i in 0..n {
        for j in i..n {
            if l.table[i * n + j] != l.table[j * n + i].neg() {
                return Check::fail("jacobi", 0, json!({"antisymmetry": [l.label(i), l.label(j)]}));
            }
        }
    }
    let results: Vec<TripleCount> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut count = 0u64;
            for j in i + 1..n {
                for k in j + 1..n {
                    if !triple_in_window(l, i, j, k) {
                        continue;
                    }
                    count += 1;
                    let term = |a: usize, b: usize, c: usize| {
                        l.bracket_vec(&l.table[a * n + b], &SparseVec::unit(c))
                            .expect("triple is in window")
                    };
                    let sum = term(i, j, k).add(&term(j, k, i)).add(&term(k, i, j));
                    if !sum.is_zero() {
                        return (count, Some((i, j, k)));
                    }
                }
            }
            (count, None)
        })
        .collect();
    let count = results.iter().map(|r| r.0).sum();
    match results.iter().find_map(|r| r.1) {
        None => Check::pass("jacobi", count),
        Some((i, j, k)) => Check::fail(
            "jacobi",
            count,
            json!({"triple": [l.label(i), l.label(j), l.label(k)], "indices": [i, j, k]}),
        ),
    }
}

/// Non-associative product table, used for the intermediate algebras whose
/// product only becomes a Lie bracket after passing to a quotient. A graded
/// table leaves out-of-window products at zero and never consults them.
#[derive(Clone, Debug)]
pub struct ProductTable {
    n: usize,
    table: Vec<SparseVec>,
    grading: Option<Grading>,
}

impl ProductTable {
    pub fn from_fn<F>(n: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> SparseVec + Sync,
    {
        let table = (0..n * n).into_par_iter().map(|p| f(p / n, p % n)).collect();
        ProductTable {
            n,
            table,
            grading: None,
        }
    }

    pub fn from_fn_graded<F>(degrees: Vec<i64>, window: i64, f: F) -> Self
    where
        F: Fn(usize, usize) -> SparseVec + Sync,
    {
        let n = degrees.len();
        let g = Grading { degrees, window };
        let table = (0..n * n)
            .into_par_iter()
            .map(|p| {
                let (i, j) = (p / n, p % n);
                if g.allows(g.degrees[i] + g.degrees[j]) {
                    f(i, j)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        ProductTable {
            n,
            table,
            grading: Some(g),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn in_window(&self, i: usize, j: usize) -> bool {
        self.grading
            .as_ref()
            .is_none_or(|g| g.allows(g.degrees[i] + g.degrees[j]))
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.n + j]
    }

    /// Bilinear extension; `None` when some pair of components leaves the window.
    pub fn product_vec(&self, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if !self.in_window(i, j) {
                    return None;
                }
                out.add_scaled_assign(self.product(i, j), &(a * b));
            }
        }
        Some(out)
    }

    /// First `(basis index, ideal row)` whose product on either side escapes
    /// `ideal`. Products that leave the window are not checked.
    pub fn two_sided_ideal_witness(&self, ideal: &Subspace) -> Option<(usize, usize)> {
        (0..self.n).into_par_iter().find_map_first(|i| {
            let e = SparseVec::unit(i);
            ideal.rows().iter().enumerate().find_map(|(r, v)| {
                let ok = |w: Option<SparseVec>| w.is_none_or(|w| ideal.contains(&w));
                let good = ok(self.product_vec(&e, v)) && ok(self.product_vec(v, &e));
                (!good).then_some((i, r))
            })
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| *self.product(i, j) == self.product(j, i).neg()))
    }

    /// Quotient by a two-sided ideal on the complement of its pivots.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(ProductTable, LinearMap)> {
        let ideal = ideal.with_side(PivotSide::Last);
        if let Some((basis, vector)) = self.two_sided_ideal_witness(&ideal) {
            return Err(Error::NotAnIdeal { basis, vector });
        }
        let (keep, proj) = complement_projection(&ideal);
        let m = keep.len();
        let table = (0..m * m)
            .into_par_iter()
            .map(|p| proj.apply(self.product(keep[p / m], keep[p % m])))
            .collect();
        let grading = self.grading.as_ref().map(|g| Grading {
            degrees: keep.iter().map(|&k| g.degrees[k]).collect(),
            window: g.window,
        });
        Ok((ProductTable { n: m, table, grading }, proj))
    }

    /// Reinterprets the table as a Lie bracket; fails unless it is antisymmetric.
    pub fn into_lie(self, labels: Vec<String>) -> Result<LieAlgebra> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        LieAlgebra::from_table(labels, self.table, self.grading)
    }
}

/// Complement indices of `ideal` (its non-pivot coordinates) and the
/// projection onto them along `ideal`.
pub fn complement_projection(ideal: &Subspace) -> (Vec<usize>, LinearMap) {
    let n = ideal.ambient();
    let keep = ideal.complement();
    let mut pos = vec![None; n];
    for (p, &k) in keep.iter().enumerate() {
        pos[k] = Some(p);
    }
    let cols = (0..n)
        .map(|j| {
            ideal
                .reduce(&SparseVec::unit(j))
                .reindex(|i| Some(pos[i].expect("residual lives on the complement")))
        })
        .collect();
    let proj = LinearMap::new(n, keep.len(), cols).expect("projection shape");
    (keep, proj)
}

/// Quotient `L / I` on the complement basis kept by `I`'s trailing-pivot
/// echelon form, with the projection `L -> L / I`.
pub fn quotient(l: &LieAlgebra, ideal: &Subspace) -> Result<(LieAlgebra, LinearMap)> {
    let ideal = ideal.with_side(PivotSide::Last);
    let n = l.dim();
    let witness = (0..n).into_par_iter().find_map_first(|i| {
        let e = SparseVec::unit(i);
        ideal
            .rows()
            .iter()
            .enumerate()
            .find_map(|(r, v)| match l.bracket_vec(&e, v) {
                Ok(w) => (!ideal.contains(&w)).then_some((i, r)),
                Err(_) => None,
            })
    });
    if let Some((basis, vector)) = witness {
        return Err(Error::NotAnIdeal { basis, vector });
    }
    let (keep, proj) = complement_projection(&ideal);
    let labels = keep.iter().map(|&k| l.labels[k].clone()).collect();
    let f = |a: usize, b: usize| proj.apply(&l.table[keep[a] * n + keep[b]]);
    let q = match &l.grading {
        None => LieAlgebra::from_fn(labels, f),
        Some(g) => {
            LieAlgebra::from_fn_graded(labels, keep.iter().map(|&k| g.degrees[k]).collect(), g.window, f)
        }
    };
    Ok((q, proj))
}

/// The subalgebra spanned by independent `vectors`, with its inclusion map.
pub fn subalgebra(
    l: &LieAlgebra,
    vectors: &[SparseVec],
    labels: Vec<String>,
) -> Result<(LieAlgebra, LinearMap)> {
    if labels.len() != vectors.len() {
        return Err(Error::DimensionMismatch("one label per vector".into()));
    }
    let span = Subspace::from_vectors(l.dim(), PivotSide::First, vectors.iter().cloned());
    if span.dim() != vectors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vectors span only {} dimensions",
            vectors.len(),
            span.dim()
        )));
    }
    let m = vectors.len();
    let coords: Vec<((usize, usize), Option<SparseVec>)> = pair_list(m)
        .into_par_iter()
        .map(|(a, b)| {
            let v = l.bracket_vec(&vectors[a], &vectors[b]).ok();
            ((a, b), v.and_then(|v| span.coords(&v)))
        })
        .collect();
    let mut table = vec![SparseVec::new(); m * m];
    for ((a, b), c) in coords {
        let c = c.ok_or(Error::NotClosed(a, b))?;
        table[b * m + a] = c.neg();
        table[a * m + b] = c;
    }
    let sub = LieAlgebra::from_table(labels, table, None)?;
    let incl = LinearMap::new(m, l.dim(), vectors.to_vec())?;
    Ok((sub, incl))
}

/// Checks `f([a, b]) = [f a, f b]` on all in-window basis pairs of `dom`.
pub fn is_homomorphism(f: &LinearMap, dom: &LieAlgebra, cod: &LieAlgebra) -> Check {
    if f.domain_dim() != dom.dim() || f.codomain_dim() != cod.dim() {
        return Check::fail(
            "homomorphism",
            0,
            json!({"shape": [f.codomain_dim(), f.domain_dim()], "expected": [cod.dim(), dom.dim()]}),
        );
    }
    let pairs: Vec<(usize, usize)> = pair_list(dom.dim())
        .into_iter()
        .filter(|&(i, j)| dom.in_window(i, j))
        .collect();
    let bad = pairs.par_iter().find_map_first(|&(i, j)| {
        let lhs = f.apply(dom.bracket(i, j).expect("in window"));
        match cod.bracket_vec(f.column(i), f.column(j)) {
            Ok(rhs) if rhs == lhs => None,
            Ok(rhs) => Some(json!({
                "pair": [dom.label(i), dom.label(j)],
                "f_of_bracket": cod.describe(&lhs),
                "bracket_of_f": cod.describe(&rhs),
            })),
            Err(e) => Some(json!({"pair": [dom.label(i), dom.label(j)], "error": e.to_string()})),
        }
    });
    Check::from_witness("homomorphism", pairs.len() as u64, bad)
}

/// Homomorphism plus bijectivity.
pub fn is_isomorphism(f: &LinearMap, dom: &LieAlgebra, cod: &LieAlgebra) -> Check {
    let hom = is_homomorphism(f, dom, cod);
    if !hom.passed() {
        return hom.renamed("isomorphism");
    }
    let rank = f.rank();
    if rank == dom.dim() && rank == cod.dim() {
        Check::pass("isomorphism", hom.tuple_count)
    } else {
        Check::fail(
            "isomorphism",
            hom.tuple_count,
            json!({"rank": rank, "domain_dim": dom.dim(), "codomain_dim": cod.dim()}),
        )
    }
}

pub fn is_automorphism(l: &LieAlgebra, g: &LinearMap) -> bool {
    is_isomorphism(g, l, l).passed()
}

/// Common fixed points of the given automorphisms, checked to be a subalgebra.
pub fn fixed_subalgebra(l: &LieAlgebra, auts: &[LinearMap]) -> Result<Subspace> {
    let n = l.dim();
    let mut eqs = Subspace::new(n, PivotSide::First);
    for (index, g) in auts.iter().enumerate() {
        if !is_automorphism(l, g) {
            return Err(Error::NotAutomorphism { index });
        }
        for row in g.sub(&LinearMap::identity(n)).row_vectors() {
            eqs.insert(&row);
        }
    }
    let fixed = Subspace::from_vectors(n, PivotSide::First, eqs.annihilated());
    let basis = fixed.rows();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            match l.bracket_vec(&basis[a], &basis[b]) {
                Ok(v) if !fixed.contains(&v) => return Err(Error::NotClosed(a, b)),
                _ => {}
            }
        }
    }
    Ok(fixed)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// sl2 with basis e, f, h.
    pub(crate) fn sl2() -> LieAlgebra {
        let c = CycNumber::from_i64;
        LieAlgebra::from_fn(vec!["e".into(), "f".into(), "h".into()], |i, j| match (i, j) {
            (0, 1) => SparseVec::single(2, c(1)),
            (0, 2) => SparseVec::single(0, c(-2)),
            (1, 2) => SparseVec::single(1, c(2)),
            _ => SparseVec::new(),
        })
    }

    #[test]
    fn jacobi_pass_and_negative_control() {
        assert!(check_jacobi(&sl2()).passed());
        assert!(check_jacobi(&LieAlgebra::abelian(4)).passed());
        let mut bad = sl2();
        bad.set_bracket(1, 2, SparseVec::single(1, CycNumber::from_i64(-2)));
        let chk = check_jacobi(&bad);
        assert!(!chk.passed());
        assert!(chk.witness.unwrap()["triple"].is_array());
        let mut skew = sl2();
        skew.set_bracket_one_sided(0, 1, SparseVec::new());
        assert!(!check_jacobi(&skew).passed());
    }

    #[test]
    fn json_round_trip() {
        let l = sl2();
        let js = l.to_json();
        assert_eq!(js["brackets"][0], json!([0, 1, 2, "1"]));
        assert_eq!(LieAlgebra::from_json(&js).unwrap(), l);
    }

    #[test]
    fn quotient_by_center() {
        // sl2 x C, quotient by the center
        let c = CycNumber::from_i64;
        let l = LieAlgebra::from_fn(
            vec!["e".into(), "f".into(), "h".into(), "z".into()],
            |i, j| match (i, j) {
                (0, 1) => SparseVec::single(2, c(1)),
                (0, 2) => SparseVec::single(0, c(-2)),
                (1, 2) => SparseVec::single(1, c(2)),
                _ => SparseVec::new(),
            },
        );
        let center = Subspace::from_vectors(4, PivotSide::Last, [SparseVec::unit(3)]);
        let (q, proj) = quotient(&l, &center).unwrap();
        assert_eq!(q, sl2());
        assert!(is_homomorphism(&proj, &l, &q).passed());
        assert_eq!(proj.kernel().dim(), 1);
        let not_ideal = Subspace::from_vectors(4, PivotSide::Last, [SparseVec::unit(0)]);
        assert!(matches!(quotient(&l, &not_ideal), Err(Error::NotAnIdeal { .. })));
        let (same, _) = quotient(&l, &Subspace::zero(4)).unwrap();
        assert_eq!(same, l);
    }

    #[test]
    fn homomorphisms() {
        let l = sl2();
        assert!(is_isomorphism(&LinearMap::identity(3), &l, &l).passed());
        let zero = LinearMap::zero(3, 3);
        assert!(is_homomorphism(&zero, &l, &l).passed());
        assert!(!is_isomorphism(&zero, &l, &l).passed());
        let doubling = LinearMap::identity(3).scale(&CycNumber::from_i64(2));
        assert!(!is_homomorphism(&doubling, &l, &l).passed());
        // the Chevalley involution e -> -f, f -> -e, h -> -h
        let c = CycNumber::from_i64;
        let theta = LinearMap::new(
            3,
            3,
            vec![
                SparseVec::single(1, c(-1)),
                SparseVec::single(0, c(-1)),
                SparseVec::single(2, c(-1)),
            ],
        )
        .unwrap();
        assert!(is_automorphism(&l, &theta));
        let fixed = fixed_subalgebra(&l, &[theta]).unwrap();
        assert_eq!(fixed.dim(), 1);
        assert_eq!(fixed_subalgebra(&l, &[LinearMap::identity(3)]).unwrap().dim(), 3);
        assert!(matches!(
            fixed_subalgebra(&l, &[LinearMap::identity(3).scale(&c(2))]),
            Err(Error::NotAutomorphism { index: 0 })
        ));
    }

    #[test]
    fn zero_map_on_abelian_is_homomorphism() {
        let a = LieAlgebra::abelian(2);
        let z = LinearMap::zero(2, 2);
        assert!(is_homomorphism(&z, &a, &a).passed());
        assert!(!is_isomorphism(&z, &a, &a).passed());
    }

    #[test]
    fn windowed_bracket_rejects() {
        let l = LieAlgebra::from_fn_graded(vec!["a".into(), "b".into()], vec![1, 1], 1, |_, _| {
            SparseVec::new()
        });
        assert_eq!(
            l.bracket(0, 1).unwrap_err(),
            Error::WindowExceeded { degree: 2, window: 1 }
        );
    }

    #[test]
    fn subalgebra_of_sl2() {
        let l = sl2();
        let (b, incl) = subalgebra(
            &l,
            &[SparseVec::unit(0), SparseVec::unit(2)],
            vec!["e".into(), "h".into()],
        )
        .unwrap();
        assert_eq!(b.dim(), 2);
        assert!(is_homomorphism(&incl, &b, &l).passed());
        assert!(matches!(
            subalgebra(
                &l,
                &[SparseVec::unit(0), SparseVec::unit(1)],
                vec!["e".into(), "f".into()]
            ),
            Err(Error::NotClosed(0, 1))
        ));
    }
}
