//! Covariant algebras `K/G` for a finite group `G` of automorphisms of `K`:
//! the averaged bracket `[a,b]_G = sum_g [ga, b]`, the ideal
//! `I_G = span{a - ga}`, the induced form, and the comparison map
//! `phi: K/G -> K^G`, `a + I_G -> sum_g ga`.

use rayon::prelude::*;
use serde_json::json;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::liealg::{
    check_invariant_form, check_jacobi, fixed_subalgebra, is_homomorphism, BilinearForm, LieAlgebra,
    LinearMap, PivotSide, ProductTable, SparseVec, Subspace,
};
use crate::report::Check;

pub const DEFAULT_CLOSURE_CAP: usize = 4096;

/// A finite group of automorphisms, materialized as the closure of its generators.
#[derive(Clone, Debug)]
pub struct GroupActionOnLie {
    dim: usize,
    generators: Vec<LinearMap>,
    elements: Vec<LinearMap>,
}

impl GroupActionOnLie {
    pub fn new(l: &LieAlgebra, generators: Vec<LinearMap>) -> Result<Self> {
        Self::with_cap(l, generators, DEFAULT_CLOSURE_CAP)
    }

    /// Verifies every generator is a degree-preserving automorphism, then
    /// closes under composition, failing once more than `cap` elements appear.
    pub fn with_cap(l: &LieAlgebra, generators: Vec<LinearMap>, cap: usize) -> Result<Self> {
        let n = l.dim();
        for (index, g) in generators.iter().enumerate() {
            if g.domain_dim() != n || g.codomain_dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {index} is not {n} x {n}"
                )));
            }
            let graded_ok = l.grading().is_none()
                || (0..n).all(|i| {
                    let col = g.column(i);
                    col.is_zero() || l.homogeneous_degree(col) == Some(l.degree(i))
                });
            if !graded_ok || !is_homomorphism(g, l, l).passed() || g.rank() != n {
                return Err(Error::NotAutomorphism { index });
            }
        }
        let mut elements = vec![LinearMap::identity(n)];
        let mut frontier = 0;
        while frontier < elements.len() {
            let x = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let y = g.compose(&x);
                if !elements.contains(&y) {
                    if elements.len() == cap {
                        return Err(Error::NotFinite { bound: cap });
                    }
                    elements.push(y);
                }
            }
        }
        Ok(GroupActionOnLie {
            dim: n,
            generators,
            elements,
        })
    }

    pub fn trivial(l: &LieAlgebra) -> Self {
        GroupActionOnLie {
            dim: l.dim(),
            generators: Vec::new(),
            elements: vec![LinearMap::identity(l.dim())],
        }
    }

    pub fn generators(&self) -> &[LinearMap] {
        &self.generators
    }

    pub fn elements(&self) -> &[LinearMap] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `sum_g g`
    pub fn averaging(&self) -> LinearMap {
        self.elements
            .iter()
            .fold(LinearMap::zero(self.dim, self.dim), |acc, g| acc.add(g))
    }
}

#[derive(Clone, Debug)]
pub struct CovariantAlgebra {
    pub algebra: LieAlgebra,
    /// `K -> K/G`
    pub projection: LinearMap,
    pub ideal: Subspace,
    /// Indices of `K` whose images form the basis of `K/G`.
    pub kept: Vec<usize>,
    pub form: Option<BilinearForm>,
    pub checks: Vec<Check>,
}

/// Builds `K/G` with the bracket `[a,b]_G` and, when `form` is given, the
/// form `<a,b>_G = sum_g <ga, b>`. The ideal property, antisymmetry, Jacobi,
/// and the form's descent and invariance are all checked.
pub fn covariant_algebra(
    k: &LieAlgebra,
    g: &GroupActionOnLie,
    form: Option<&BilinearForm>,
) -> Result<CovariantAlgebra> {
    let n = k.dim();
    if let Some(b) = form {
        if let Some(index) = g.elements().iter().position(|x| b.pullback(x) != *b) {
            return Err(Error::FormNotPreserved { index });
        }
    }
    let id = LinearMap::identity(n);
    let ideal = Subspace::from_vectors(
        n,
        PivotSide::Last,
        g.elements().iter().flat_map(|x| id.sub(x).columns().to_vec()),
    );
    let averaged = |i: usize, j: usize| {
        let ej = SparseVec::unit(j);
        g.elements().iter().fold(SparseVec::new(), |acc, x| {
            let b = k
                .bracket_vec(x.column(i), &ej)
                .expect("degree-preserving action stays in window");
            acc.add(&b)
        })
    };
    let table = match k.grading() {
        None => ProductTable::from_fn(n, averaged),
        Some(gr) => ProductTable::from_fn_graded(gr.degrees.clone(), gr.window, averaged),
    };
    let mut checks = vec![Check::pass("I_G two-sided ideal", (n * ideal.dim()) as u64)];
    let (q, projection) = table.quotient(&ideal)?;
    let kept = ideal.complement();
    let labels = kept.iter().map(|&i| k.label(i).to_string()).collect();
    let algebra = q.into_lie(labels)?;
    checks.push(Check::pass(
        "covariant bracket antisymmetric",
        (kept.len() * kept.len()) as u64,
    ));
    checks.push(check_jacobi(&algebra).renamed("covariant jacobi"));
    let induced = form.map(|b| {
        let full = BilinearForm::from_fn(n, |i, j| {
            g.elements().iter().fold(CycNumber::zero(), |acc, x| {
                &acc + &b.eval(x.column(i), &SparseVec::unit(j))
            })
        });
        let rad_bad = ideal.rows().iter().enumerate().find_map(|(r, v)| {
            (0..n)
                .find(|&j| !full.eval(v, &SparseVec::unit(j)).is_zero())
                .map(|j| json!({"ideal_row": r, "basis": j}))
        });
        checks.push(Check::from_witness(
            "I_G in radical of induced form",
            (ideal.dim() * n) as u64,
            rad_bad,
        ));
        let qf = BilinearForm::from_fn(kept.len(), |a, c| full.get(kept[a], kept[c]).clone());
        checks.push(Check::expect("induced form symmetric", qf.is_symmetric(), || {
            json!({})
        }));
        checks.push(check_invariant_form(&algebra, &qf).renamed("induced form invariant"));
        qf
    });
    Ok(CovariantAlgebra {
        algebra,
        projection,
        ideal,
        kept,
        form: induced,
        checks,
    })
}

#[derive(Clone, Debug)]
pub struct FixedPointIso {
    /// `K/G -> K`, landing in `K^G`.
    pub map: LinearMap,
    pub fixed: Subspace,
    pub checks: Vec<Check>,
}

/// `phi(a + I_G) = sum_g ga`, checked to kill `I_G`, land in `K^G`, be
/// bijective onto it, be natural, and carry `[.,.]_G` to the bracket of `K`.
pub fn phi_fixed_point_iso(
    k: &LieAlgebra,
    g: &GroupActionOnLie,
    cov: &CovariantAlgebra,
) -> Result<FixedPointIso> {
    let avg = g.averaging();
    let map = LinearMap::from_fn(cov.algebra.dim(), k.dim(), |p| avg.column(cov.kept[p]).clone())?;
    let fixed = fixed_subalgebra(k, g.elements())?;
    let mut checks = Vec::new();
    let bad = cov
        .ideal
        .rows()
        .par_iter()
        .position_first(|v| !avg.apply(v).is_zero());
    checks.push(Check::from_witness(
        "phi kills I_G",
        cov.ideal.dim() as u64,
        bad.map(|r| json!({"ideal_row": r})),
    ));
    let bad = map.columns().iter().position(|v| !fixed.contains(v));
    checks.push(Check::from_witness(
        "phi lands in K^G",
        map.domain_dim() as u64,
        bad.map(|p| json!({"basis": cov.algebra.label(p)})),
    ));
    let rank = map.rank();
    checks.push(Check::expect(
        "phi bijective onto K^G",
        rank == cov.algebra.dim() && rank == fixed.dim(),
        || json!({"rank": rank, "quotient_dim": cov.algebra.dim(), "fixed_dim": fixed.dim()}),
    ));
    checks.push(Check::expect(
        "phi natural",
        map.compose(&cov.projection) == avg,
        || json!({}),
    ));
    checks.push(is_homomorphism(&map, &cov.algebra, k).renamed("phi bracket preserving"));
    Ok(FixedPointIso { map, fixed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_g_s, build_gl_s, k_lie_algebra, minus_theta};
    use crate::group::FinAbGroup;
    use crate::liealg::is_isomorphism;

    #[test]
    fn trivial_group_is_identity() {
        let gl = build_gl_s(&FinAbGroup::cyclic(2));
        let g = GroupActionOnLie::trivial(&gl.algebra);
        let cov = covariant_algebra(&gl.algebra, &g, Some(&gl.form)).unwrap();
        assert!(cov.projection.is_identity());
        let phi = phi_fixed_point_iso(&gl.algebra, &g, &cov).unwrap();
        assert!(phi.map.is_identity());
        assert!(cov.checks.iter().chain(&phi.checks).all(Check::passed));
    }

    #[test]
    fn tau_on_gl_s() {
        let gl = build_gl_s(&FinAbGroup::cyclic(3));
        let g = GroupActionOnLie::new(&gl.algebra, vec![gl.tau.clone()]).unwrap();
        assert_eq!(g.order(), 2);
        let cov = covariant_algebra(&gl.algebra, &g, Some(&gl.form)).unwrap();
        let phi = phi_fixed_point_iso(&gl.algebra, &g, &cov).unwrap();
        assert_eq!(cov.algebra.dim(), 3);
        assert_eq!(phi.fixed.dim(), 3);
        assert!(cov.checks.iter().chain(&phi.checks).all(Check::passed));
    }

    #[test]
    fn k_modulo_minus_theta_is_g_s() {
        let s = FinAbGroup::cyclic(5);
        let k = k_lie_algebra(&s);
        let g = GroupActionOnLie::new(&k, vec![minus_theta(&s)]).unwrap();
        let cov = covariant_algebra(&k, &g, None).unwrap();
        let gs = build_g_s(&s).unwrap();
        assert!(cov.ideal.same_as(&gs.j));
        // both quotients use the same kept basis, so the identity map compares them
        assert_eq!(cov.kept.len(), gs.dim());
        let id = LinearMap::identity(gs.dim());
        assert!(is_isomorphism(&id, &cov.algebra, &gs.algebra).passed());
    }

    #[test]
    fn non_automorphism_rejected() {
        let gl = build_gl_s(&FinAbGroup::cyclic(2));
        let twice = LinearMap::identity(4).scale(&CycNumber::from_i64(2));
        assert!(matches!(
            GroupActionOnLie::new(&gl.algebra, vec![twice]),
            Err(Error::NotAutomorphism { index: 0 })
        ));
    }

    #[test]
    fn closure_cap() {
        let gl = build_gl_s(&FinAbGroup::cyclic(3));
        let shift = gl.shift(1);
        assert!(matches!(
            GroupActionOnLie::with_cap(&gl.algebra, vec![shift], 2),
            Err(Error::NotFinite { bound: 2 })
        ));
    }
}
