//! Degree-windowed affine algebras `L (x) C[t, t^-1] + C k`, the algebra
//! `D_S`, and the checks tying them together.
//!
//! Everything is materialized on the degrees `-W..=W`. Brackets whose result
//! would leave the window are rejected with [`Error::WindowExceeded`].

pub mod delta;
pub mod ds;
pub mod realization;
pub mod twisted;

use std::collections::BTreeMap;

use serde_json::json;

use crate::algebras::GS;
use crate::covariant::GroupActionOnLie;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::{Character, Elem};
use crate::liealg::{check_invariant_form, BilinearForm, LieAlgebra, LinearMap, SparseVec};
use crate::report::Check;

pub use ds::{DSAlgebra, DSElement};

/// `L (x) t^n` for `|n| <= W` plus `k`. Basis element `a_i t^n` sits at
/// `(n + W) * dim L + i` and `k` is last.
#[derive(Clone, Debug)]
pub struct AffineAlgebra {
    pub base: LieAlgebra,
    pub base_form: BilinearForm,
    pub window: i64,
    /// The windowed algebra, graded by `t`-degree with `k` in degree 0.
    pub algebra: LieAlgebra,
}

impl AffineAlgebra {
    pub fn new(base: LieAlgebra, base_form: BilinearForm, window: i64) -> Result<Self> {
        if base.grading().is_some() {
            return Err(Error::Invalid("affine base algebra must be ungraded".into()));
        }
        if base_form.dim() != base.dim() {
            return Err(Error::DimensionMismatch(
                "form and algebra dimensions differ".into(),
            ));
        }
        let d = base.dim();
        let width = (2 * window + 1) as usize;
        let mut labels: Vec<String> = (0..width * d)
            .map(|p| format!("{}[{}]", base.label(p % d), (p / d) as i64 - window))
            .collect();
        labels.push("k".into());
        let mut degrees: Vec<i64> = (0..width * d).map(|p| (p / d) as i64 - window).collect();
        degrees.push(0);
        let kidx = width * d;
        let algebra = LieAlgebra::from_fn_graded(labels, degrees, window, |x, y| {
            if x == kidx || y == kidx {
                return SparseVec::new();
            }
            let (m, i) = ((x / d) as i64 - window, x % d);
            let (n, j) = ((y / d) as i64 - window, y % d);
            let b = base.bracket(i, j).expect("ungraded base");
            let mut out = b.reindex(|r| Some(((m + n + window) as usize) * d + r));
            if m + n == 0 {
                let f = base_form.get(i, j);
                if !f.is_zero() {
                    out = out.add(&SparseVec::single(kidx, &CycNumber::from_i64(m) * f));
                }
            }
            out
        });
        Ok(AffineAlgebra {
            base,
            base_form,
            window,
            algebra,
        })
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn k_index(&self) -> usize {
        (2 * self.window + 1) as usize * self.base.dim()
    }

    pub fn index(&self, i: usize, n: i64) -> Result<usize> {
        if n.abs() > self.window {
            return Err(Error::WindowExceeded {
                degree: n,
                window: self.window,
            });
        }
        Ok((n + self.window) as usize * self.base.dim() + i)
    }

    /// `(base index, degree)`, or `None` for `k`.
    pub fn decompose(&self, idx: usize) -> Option<(usize, i64)> {
        (idx != self.k_index()).then(|| {
            let d = self.base.dim();
            (idx % d, (idx / d) as i64 - self.window)
        })
    }

    /// `a (x) t^n` for a base vector `a`.
    pub fn at_degree(&self, a: &SparseVec, n: i64) -> Result<SparseVec> {
        let off = self.index(0, n)?;
        Ok(a.reindex(|i| Some(off + i)))
    }

    pub fn k(&self) -> SparseVec {
        SparseVec::unit(self.k_index())
    }

    /// `<a t^m, b t^n> = <a,b> d(m+n, 0)`, with `k` in the radical.
    pub fn loop_form(&self) -> BilinearForm {
        let kidx = self.k_index();
        BilinearForm::from_fn(self.dim(), |x, y| {
            if x == kidx || y == kidx {
                return CycNumber::zero();
            }
            let (i, m) = self.decompose(x).expect("not k");
            let (j, n) = self.decompose(y).expect("not k");
            if m + n == 0 {
                self.base_form.get(i, j).clone()
            } else {
                CycNumber::zero()
            }
        })
    }

    /// The linear map `a t^n -> f(a) t^n`, `k -> scale * k`.
    pub fn extend_map(
        &self,
        f: &LinearMap,
        target: &AffineAlgebra,
        k_scale: &CycNumber,
    ) -> Result<LinearMap> {
        if target.window != self.window
            || f.domain_dim() != self.base_dim()
            || f.codomain_dim() != target.base_dim()
        {
            return Err(Error::DimensionMismatch(
                "base map does not fit the affine algebras".into(),
            ));
        }
        LinearMap::from_fn(self.dim(), target.dim(), |x| match self.decompose(x) {
            None => SparseVec::single(target.k_index(), k_scale.clone()),
            Some((i, n)) => target.at_degree(f.column(i), n).expect("same window"),
        })
    }
}

/// Sparse affine element: `sum c (a_i t^n) + central k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineElement {
    terms: BTreeMap<(usize, i64), CycNumber>,
    pub central: CycNumber,
}

impl AffineElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(i: usize, n: i64, c: CycNumber) -> Self {
        let mut out = Self::zero();
        out.add_term(i, n, c);
        out
    }

    pub fn k(c: CycNumber) -> Self {
        AffineElement {
            terms: BTreeMap::new(),
            central: c,
        }
    }

    pub fn add_term(&mut self, i: usize, n: i64, c: CycNumber) {
        let e = self.terms.entry((i, n)).or_insert_with(CycNumber::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(i, n));
        }
    }

    /// `(base index, degree, coefficient)` in sorted order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64, &CycNumber)> {
        self.terms.iter().map(|(&(i, n), c)| (i, n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn to_vec(&self, aff: &AffineAlgebra) -> Result<SparseVec> {
        let mut entries = Vec::with_capacity(self.terms.len() + 1);
        for (i, n, c) in self.terms() {
            entries.push((aff.index(i, n)?, c.clone()));
        }
        entries.push((aff.k_index(), self.central.clone()));
        Ok(SparseVec::from_entries(entries))
    }

    pub fn from_vec(aff: &AffineAlgebra, v: &SparseVec) -> Self {
        let mut out = Self::zero();
        for (idx, c) in v.iter() {
            match aff.decompose(idx) {
                Some((i, n)) => out.add_term(i, n, c.clone()),
                None => out.central = &out.central + c,
            }
        }
        out
    }
}

/// `[a t^m, b t^n] = [a,b] t^(m+n) + m d(m+n,0) <a,b> k`, extended bilinearly,
/// computed directly from the base algebra and form.
pub fn affine_bracket(
    x: &AffineElement,
    y: &AffineElement,
    base: &LieAlgebra,
    form: &BilinearForm,
    window: i64,
) -> Result<AffineElement> {
    let mut out = AffineElement::zero();
    for (i, m, a) in x.terms() {
        for (j, n, b) in y.terms() {
            if (m + n).abs() > window {
                return Err(Error::WindowExceeded {
                    degree: m + n,
                    window,
                });
            }
            let ab = a * b;
            for (r, c) in base.bracket(i, j)?.iter() {
                out.add_term(r, m + n, &ab * c);
            }
            if m + n == 0 {
                let f = form.get(i, j);
                out.central = &out.central + &(&(&ab * f) * &CycNumber::from_i64(m));
            }
        }
    }
    Ok(out)
}

/// `gamma . d(a,b)(n) = chi(gamma)^n d(a, b+gamma)(n)`, `gamma . k = k`, on
/// the windowed affine algebra over `g_S`.
pub fn s_action(aff: &AffineAlgebra, gs: &GS, chi: &Character, gamma: Elem) -> LinearMap {
    let s = gs.group();
    LinearMap::from_fn(aff.dim(), aff.dim(), |x| match aff.decompose(x) {
        None => aff.k(),
        Some((i, n)) => {
            let (a, b) = gs.basis()[i];
            let v = gs.d(a, s.add(b, gamma)).scale(&chi.value_pow(gamma, n));
            aff.at_degree(&v, n).expect("same degree")
        }
    })
    .expect("square map")
}

/// Windowed affine `g_S` with the chi-form, its loop form, and the `S`-action
/// generated by `gamma = 1`.
#[derive(Clone, Debug)]
pub struct AffineGS {
    pub gs: GS,
    pub chi: Character,
    pub affine: AffineAlgebra,
    pub loop_form: BilinearForm,
    pub action: GroupActionOnLie,
}

pub fn build_affine_gs_with_s_action(chi: &Character, window: i64) -> Result<AffineGS> {
    let group = chi.group();
    let gs = crate::algebras::build_g_s(group)?;
    let form = crate::algebras::chi_form(&gs, chi)?;
    let affine = AffineAlgebra::new(gs.algebra.clone(), form, window)?;
    let gens = if group.order() > 1 {
        vec![s_action(&affine, &gs, chi, 1)]
    } else {
        Vec::new()
    };
    let action = GroupActionOnLie::new(&affine.algebra, gens)?;
    let loop_form = affine.loop_form();
    Ok(AffineGS {
        gs,
        chi: chi.clone(),
        affine,
        loop_form,
        action,
    })
}

/// Jacobi on in-window triples, invariance of the loop form, and agreement of
/// the stored table with [`affine_bracket`] on every in-window basis pair.
pub fn affine_checks(aff: &AffineAlgebra) -> Vec<Check> {
    let mut out = vec![crate::liealg::check_jacobi(&aff.algebra).renamed("affine jacobi")];
    out.push(check_invariant_form(&aff.algebra, &aff.loop_form()).renamed("loop form invariant"));
    let n = aff.dim();
    let mut count = 0u64;
    let mut bad = None;
    'outer: for x in 0..n {
        for y in 0..n {
            if !aff.algebra.in_window(x, y) {
                continue;
            }
            count += 1;
            let ex = AffineElement::from_vec(aff, &SparseVec::unit(x));
            let ey = AffineElement::from_vec(aff, &SparseVec::unit(y));
            let direct =
                affine_bracket(&ex, &ey, &aff.base, &aff.base_form, aff.window).and_then(|r| r.to_vec(aff));
            let table = aff.algebra.bracket(x, y).cloned();
            match (direct, table) {
                (Ok(d), Ok(t)) if d == t => {}
                _ => {
                    bad = Some(json!({"pair": [aff.algebra.label(x), aff.algebra.label(y)]}));
                    break 'outer;
                }
            }
        }
    }
    out.push(Check::from_witness(
        "affine table matches bracket formula",
        count,
        bad,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_character, FinAbGroup};
    use crate::liealg::is_automorphism;

    fn c(n: i64) -> CycNumber {
        CycNumber::from_i64(n)
    }

    #[test]
    fn bracket_examples() {
        let gl = crate::algebras::build_gl_s(&FinAbGroup::cyclic(2));
        let (base, form) = (&gl.algebra, &gl.form);
        // E(0,1), E(1,0)
        let a = |n| AffineElement::term(1, n, c(1));
        let b = |n| AffineElement::term(2, n, c(1));
        let r0 = affine_bracket(&a(0), &b(0), base, form, 2).unwrap();
        assert!(r0.central.is_zero());
        let r = affine_bracket(&a(2), &b(-2), base, form, 2).unwrap();
        assert_eq!(r.central, &c(2) * &CycNumber::from_ratio(1, 2));
        let k = AffineElement::k(c(1));
        assert!(affine_bracket(&k, &a(1), base, form, 2).unwrap().is_zero());
        assert!(matches!(
            affine_bracket(&a(2), &b(1), base, form, 2),
            Err(Error::WindowExceeded { degree: 3, window: 2 })
        ));
    }

    #[test]
    fn s_action_example_z3() {
        let s = FinAbGroup::cyclic(3);
        let chi = make_character(&s, 1).unwrap();
        let a = build_affine_gs_with_s_action(&chi, 2).unwrap();
        assert_eq!(a.action.order(), 3);
        let one = s_action(&a.affine, &a.gs, &chi, 1);
        let x = a.affine.at_degree(&a.gs.d(1, 0), 2).unwrap();
        let y = a
            .affine
            .at_degree(&a.gs.d(1, 1), 2)
            .unwrap()
            .scale(&chi.value_pow(1, 2));
        assert_eq!(one.apply(&x), y);
        assert!(s_action(&a.affine, &a.gs, &chi, 0).is_identity());
        assert!(is_automorphism(&a.affine.algebra, &one));
        assert!(affine_checks(&a.affine).iter().all(Check::passed));
    }
}
