//! The concrete algebras attached to a finite abelian group `S`:
//!
//! * `gl_S` with basis `E(a,b)`, the trace form `<E(a,b), E(m,n)> = 1/2 d(a,n) d(b,m)`
//!   and the involution `tau(E(a,b)) = -E(b,a)`;
//! * `A_S`, spanned by `G(a,b) = E(a+b, b-a)`, and its `tau`-fixed part
//!   `A_S^tau`, spanned by `G^tau(a,b) = G(a,b) - G(-a,b)`;
//! * `g_S`, the Lie algebra on generators `d(a,b)`, realized as the quotient
//!   of the product table on `F(a,b)` by `J = span{F(-a,b) + F(a,b)}`;
//! * the chi-form, the `S`-actions, `pi: g_S -> A_S^tau`, the ideal `I` and
//!   the decomposition of `A_S^tau` into blocks indexed by the cosets of `2S`.

use itertools::iproduct;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::{Character, Elem, FinAbGroup};
use crate::liealg::{
    check_invariant_form, check_jacobi, classify_simple_type, is_automorphism, is_homomorphism,
    is_isomorphism, killing_form, quotient, root_decomposition, subalgebra, BilinearForm, LieAlgebra,
    LinearMap, PivotSide, ProductTable, SparseVec, Subspace,
};
use crate::report::{Check, VerificationReport};

fn c(n: i64) -> CycNumber {
    CycNumber::from_i64(n)
}

/// `gl_S` as a Lie algebra, with `E(a,b)` at index `a * |S| + b`.
#[derive(Clone, Debug)]
pub struct GlS {
    group: FinAbGroup,
    pub algebra: LieAlgebra,
    pub form: BilinearForm,
    pub tau: LinearMap,
}

impl GlS {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn index(&self, a: Elem, b: Elem) -> usize {
        a * self.group.order() + b
    }

    pub fn e(&self, a: Elem, b: Elem) -> SparseVec {
        SparseVec::unit(self.index(a, b))
    }

    /// `G(a,b) = E(a+b, b-a)`
    pub fn g(&self, a: Elem, b: Elem) -> SparseVec {
        let s = &self.group;
        self.e(s.add(a, b), s.sub(b, a))
    }

    /// `G^tau(a,b) = E(a+b, b-a) - E(b-a, b+a)`
    pub fn g_tau(&self, a: Elem, b: Elem) -> SparseVec {
        let s = &self.group;
        self.g(a, b).sub(&self.g(s.neg(a), b))
    }

    /// `sigma_gamma(E(a,b)) = E(a+gamma, b+gamma)`
    pub fn shift(&self, gamma: Elem) -> LinearMap {
        let s = &self.group;
        let n = s.order();
        LinearMap::from_fn(n * n, n * n, |i| self.e(s.add(i / n, gamma), s.add(i % n, gamma)))
            .expect("square map")
    }
}

pub fn build_gl_s(group: &FinAbGroup) -> GlS {
    let n = group.order();
    let labels = iproduct!(group.elements(), group.elements())
        .map(|(a, b)| format!("E({},{})", group.label(a), group.label(b)))
        .collect();
    let algebra = LieAlgebra::from_fn(labels, |i, j| {
        let (a, b, m, v) = (i / n, i % n, j / n, j % n);
        let mut out = Vec::new();
        if b == m {
            out.push((a * n + v, c(1)));
        }
        if v == a {
            out.push((m * n + b, c(-1)));
        }
        SparseVec::from_entries(out)
    });
    let half = CycNumber::from_ratio(1, 2);
    let form = BilinearForm::from_fn(n * n, |i, j| {
        if i / n == j % n && i % n == j / n {
            half.clone()
        } else {
            CycNumber::zero()
        }
    });
    let tau = LinearMap::from_fn(n * n, n * n, |i| SparseVec::single((i % n) * n + i / n, c(-1)))
        .expect("square map");
    GlS {
        group: group.clone(),
        algebra,
        form,
        tau,
    }
}

/// Jacobi, form invariance, and `tau` as a form-preserving involutive automorphism.
pub fn gl_s_checks(gl: &GlS) -> Vec<Check> {
    let tau = &gl.tau;
    vec![
        check_jacobi(&gl.algebra).renamed("gl_S jacobi"),
        check_invariant_form(&gl.algebra, &gl.form).renamed("gl_S form invariant"),
        Check::expect(
            "gl_S form nondegenerate",
            gl.form.is_nondegenerate(),
            || json!({"rank": gl.form.rank()}),
        ),
        is_isomorphism(tau, &gl.algebra, &gl.algebra).renamed("tau automorphism"),
        Check::expect("tau involution", tau.compose(tau).is_identity(), || json!({})),
        Check::expect("tau preserves form", gl.form.pullback(tau) == gl.form, || {
            json!({})
        }),
    ]
}

/// `A_S^tau` as a subalgebra of `gl_S`. The basis is chosen greedily from the
/// generators `G^tau(a,b)` in canonical `(a, b)` order.
#[derive(Clone, Debug)]
pub struct ASTau {
    pub algebra: LieAlgebra,
    /// `A_S^tau -> gl_S`
    pub inclusion: LinearMap,
    /// Restriction of the `gl_S` form.
    pub form: BilinearForm,
    /// `A_S = span{E(m,n) : m + n in 2S}`, in `gl_S` coordinates.
    pub a_s: Subspace,
    basis: Vec<(Elem, Elem)>,
    span: Subspace,
}

impl ASTau {
    /// `(a, b)` with basis vector `i` equal to `G^tau(a,b)`.
    pub fn basis(&self) -> &[(Elem, Elem)] {
        &self.basis
    }

    /// Coordinates of a `gl_S` vector, `None` outside `A_S^tau`.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        self.span.coords(v)
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Restriction of `gl_S`'s `sigma_gamma`.
    pub fn shift(&self, gl: &GlS, gamma: Elem) -> LinearMap {
        let s = gl.shift(gamma);
        LinearMap::from_fn(self.algebra.dim(), self.algebra.dim(), |i| {
            self.coords(&s.apply(self.inclusion.column(i)))
                .expect("A_S^tau is shift invariant")
        })
        .expect("square map")
    }
}

pub fn build_a_s_tau(gl: &GlS) -> Result<ASTau> {
    let s = gl.group();
    let n = s.order();
    let two_s = s.two_s();
    let a_s = Subspace::from_vectors(
        n * n,
        PivotSide::First,
        iproduct!(s.elements(), s.elements())
            .filter(|&(m, v)| two_s.contains(&s.add(m, v)))
            .map(|(m, v)| gl.e(m, v)),
    );
    let mut span = Subspace::new(n * n, PivotSide::First);
    let mut basis = Vec::new();
    for (a, b) in iproduct!(s.elements(), s.elements()) {
        if span.insert(&gl.g_tau(a, b)) {
            basis.push((a, b));
        }
    }
    let labels = basis
        .iter()
        .map(|&(a, b)| format!("Gt({},{})", s.label(a), s.label(b)))
        .collect();
    let (algebra, inclusion) = subalgebra(&gl.algebra, span.accepted(), labels)?;
    let form = gl.form.pullback(&inclusion);
    Ok(ASTau {
        algebra,
        inclusion,
        form,
        a_s,
        basis,
        span,
    })
}

/// Dimension of `A_S`, equality `A_S = span{G(a,b)}`, `A_S^tau` as the
/// `tau`-fixed part of `A_S`, the symmetries of `G^tau`, and the bracket of
/// `G^tau` generators.
pub fn a_s_tau_checks(gl: &GlS, ast: &ASTau) -> Vec<Check> {
    let s = gl.group();
    let n = s.order();
    let cd = s.coset_decomposition_2s();
    let mut out = Vec::new();
    out.push(Check::expect(
        "A_S dimension",
        ast.a_s.dim() == cd.k * n,
        || json!({"dim": ast.a_s.dim(), "expected": cd.k * n}),
    ));
    let g_span = Subspace::from_vectors(
        n * n,
        PivotSide::First,
        iproduct!(s.elements(), s.elements()).map(|(a, b)| gl.g(a, b)),
    );
    out.push(Check::expect(
        "A_S spanned by G",
        g_span.same_as(&ast.a_s),
        || json!({"span_dim": g_span.dim()}),
    ));
    // tau-fixed vectors inside A_S
    let mut eqs = Subspace::new(n * n, PivotSide::First);
    for row in gl.tau.sub(&LinearMap::identity(n * n)).row_vectors() {
        eqs.insert(&row);
    }
    let fixed = Subspace::from_vectors(n * n, PivotSide::First, eqs.annihilated());
    let fixed_in_a_s = fixed.intersect(&ast.a_s);
    out.push(Check::expect(
        "A_S^tau is the tau-fixed part of A_S",
        fixed_in_a_s.same_as(ast.span()),
        || json!({"fixed_dim": fixed_in_a_s.dim(), "span_dim": ast.span().dim()}),
    ));
    let expected = cd.r * cd.k * cd.k.saturating_sub(1) / 2;
    out.push(Check::expect(
        "A_S^tau dimension",
        ast.algebra.dim() == expected,
        || json!({"dim": ast.algebra.dim(), "expected": expected}),
    ));
    let s0 = s.subgroup_s0();
    let mut count = 0u64;
    let mut bad = None;
    'outer: for (a, b) in iproduct!(s.elements(), s.elements()) {
        let g = gl.g_tau(a, b);
        count += 1;
        if gl.g_tau(s.neg(a), b) != g.neg() {
            bad = Some(json!({"odd_in_a": [a, b]}));
            break;
        }
        for &gamma in &s0 {
            if gl.g_tau(s.add(a, gamma), s.add(b, gamma)) != g {
                bad = Some(json!({"s0_translation": [a, b, gamma]}));
                break 'outer;
            }
        }
    }
    out.push(Check::from_witness("G^tau symmetries", count, bad));
    out.push(g_tau_bracket_check(gl));
    out.push(check_jacobi(&ast.algebra).renamed("A_S^tau jacobi"));
    out.push(check_invariant_form(&ast.algebra, &ast.form).renamed("A_S^tau form invariant"));
    out
}

/// `[G^tau(a,b), G^tau(m,n)]` in `gl_S` against the four-delta formula.
pub fn g_tau_bracket_check(gl: &GlS) -> Check {
    let s = gl.group();
    let els: Vec<Elem> = s.elements().collect();
    let tuples: Vec<(Elem, Elem, Elem, Elem)> = iproduct!(
        els.iter().copied(),
        els.iter().copied(),
        els.iter().copied(),
        els.iter().copied()
    )
    .collect();
    let bad = tuples.par_iter().find_map_first(|&(a, b, m, v)| {
        let lhs = gl
            .algebra
            .bracket_vec(&gl.g_tau(a, b), &gl.g_tau(m, v))
            .expect("ungraded");
        let mut rhs = SparseVec::new();
        let (apm, amm) = (s.add(a, m), s.sub(a, m));
        if apm == s.sub(b, v) {
            rhs = rhs.add(&gl.g_tau(apm, s.add(v, a)));
        }
        if apm == s.sub(v, b) {
            rhs = rhs.sub(&gl.g_tau(apm, s.add(m, b)));
        }
        if amm == s.sub(v, b) {
            rhs = rhs.add(&gl.g_tau(amm, s.sub(b, m)));
        }
        if amm == s.sub(b, v) {
            rhs = rhs.sub(&gl.g_tau(amm, s.add(a, v)));
        }
        (lhs != rhs).then(|| json!({"generators": [[a, b], [m, v]]}))
    });
    Check::from_witness("G^tau bracket", tuples.len() as u64, bad)
}

/// `G(a,b) = G(a',b')` exactly when `(a,b) = (a'+g, b'+g)` for some `g` in `S^0`,
/// over all pairs of pairs.
pub fn gg_equality_check(group: &FinAbGroup) -> Check {
    let n = group.order();
    let s0 = group.subgroup_s0();
    let key = |a: Elem, b: Elem| (group.add(a, b), group.sub(b, a));
    let mut count = 0u64;
    for (a, b, a2, b2) in iproduct!(0..n, 0..n, 0..n, 0..n) {
        count += 1;
        let equal = key(a, b) == key(a2, b2);
        let related = s0.iter().any(|&g| a == group.add(a2, g) && b == group.add(b2, g));
        if equal != related {
            return Check::fail(
                "G equality criterion",
                count,
                json!({"pairs": [[a, b], [a2, b2]], "equal": equal}),
            );
        }
    }
    Check::pass("G equality criterion", count)
}

/// `g_S` as `K / J`, with `d(a,b)` the image of `F(a,b)`.
#[derive(Clone, Debug)]
pub struct GS {
    group: FinAbGroup,
    pub algebra: LieAlgebra,
    /// The product table on `F(a,b)`, index `a * |S| + b`.
    pub k: ProductTable,
    pub j: Subspace,
    /// `K -> g_S`
    pub projection: LinearMap,
    basis: Vec<(Elem, Elem)>,
}

impl GS {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Basis vector `i` is `d(a,b)` with `a` the lesser of `{a, -a}`.
    pub fn basis(&self) -> &[(Elem, Elem)] {
        &self.basis
    }

    /// `d(a,b)` in the basis; zero when `2a = 0`, a negated basis vector when `a` is
    /// not the half-set representative.
    pub fn d(&self, a: Elem, b: Elem) -> SparseVec {
        self.projection.column(a * self.group.order() + b).clone()
    }

    /// Position of `d(a,b)` in the basis, for `a` in the half set.
    pub fn index_of(&self, a: Elem, b: Elem) -> Option<usize> {
        self.basis.iter().position(|&p| p == (a, b))
    }

    /// `sigma_gamma(d(a,b)) = d(a, b+gamma)`
    pub fn shift(&self, gamma: Elem) -> LinearMap {
        let s = &self.group;
        LinearMap::from_fn(self.dim(), self.dim(), |i| {
            let (a, b) = self.basis[i];
            self.d(a, s.add(b, gamma))
        })
        .expect("square map")
    }

    /// The right side of the defining bracket relation for `[d(a,b), d(m,n)]`.
    pub fn relation_rhs(&self, a: Elem, b: Elem, m: Elem, v: Elem) -> SparseVec {
        four_delta(&self.group, a, b, m, v)
            .into_iter()
            .fold(SparseVec::new(), |acc, (sign, x, y)| {
                acc.add_scaled(&self.d(x, y), &c(sign))
            })
    }
}

/// The four terms `sign * X(x, y)` shared by the product on `F` and the bracket on `d`.
fn four_delta(s: &FinAbGroup, a: Elem, b: Elem, m: Elem, v: Elem) -> Vec<(i64, Elem, Elem)> {
    let (apm, amm) = (s.add(a, m), s.sub(a, m));
    let mut out = Vec::with_capacity(4);
    if apm == s.sub(v, b) {
        out.push((1, apm, s.sub(v, a)));
    }
    if apm == s.sub(b, v) {
        out.push((-1, apm, s.add(a, v)));
    }
    if amm == s.sub(v, b) {
        out.push((-1, amm, s.sub(v, a)));
    }
    if amm == s.sub(b, v) {
        out.push((1, amm, s.add(a, v)));
    }
    out
}

/// The product table on `F(a,b)`.
pub fn k_product(group: &FinAbGroup) -> ProductTable {
    let n = group.order();
    ProductTable::from_fn(n * n, |i, j| {
        SparseVec::from_entries(
            four_delta(group, i / n, i % n, j / n, j % n)
                .into_iter()
                .map(|(sign, x, y)| (x * n + y, c(sign)))
                .collect(),
        )
    })
}

/// `J = span{F(-a,b) + F(a,b)}`
pub fn j_ideal(group: &FinAbGroup) -> Subspace {
    let n = group.order();
    Subspace::from_vectors(
        n * n,
        PivotSide::Last,
        iproduct!(group.elements(), group.elements())
            .map(|(a, b)| SparseVec::unit(a * n + b).add(&SparseVec::unit(group.neg(a) * n + b))),
    )
}

pub fn build_g_s(group: &FinAbGroup) -> Result<GS> {
    let n = group.order();
    let k = k_product(group);
    let j = j_ideal(group);
    let (q, projection) = k.quotient(&j)?;
    let keep = j.complement();
    let basis: Vec<(Elem, Elem)> = keep.iter().map(|&i| (i / n, i % n)).collect();
    let labels = basis
        .iter()
        .map(|&(a, b)| format!("d({},{})", group.label(a), group.label(b)))
        .collect();
    let algebra = q.into_lie(labels)?;
    Ok(GS {
        group: group.clone(),
        algebra,
        k,
        j,
        projection,
        basis,
    })
}

/// The defining relations on every generator pair: `d(-a,b) = -d(a,b)` and
/// the four-delta bracket.
pub fn check_gs_presentation(gs: &GS) -> Check {
    let s = gs.group();
    let els: Vec<Elem> = s.elements().collect();
    let tuples: Vec<(Elem, Elem, Elem, Elem)> = iproduct!(
        els.iter().copied(),
        els.iter().copied(),
        els.iter().copied(),
        els.iter().copied()
    )
    .collect();
    let bad = tuples.par_iter().find_map_first(|&(a, b, m, v)| {
        if gs.d(s.neg(a), b) != gs.d(a, b).neg() {
            return Some(json!({"odd_in_a": [a, b]}));
        }
        let lhs = gs
            .algebra
            .bracket_vec(&gs.d(a, b), &gs.d(m, v))
            .expect("ungraded");
        let rhs = gs.relation_rhs(a, b, m, v);
        (lhs != rhs).then(|| {
            json!({
                "generators": [[a, b], [m, v]],
                "bracket": gs.algebra.describe(&lhs),
                "relation": gs.algebra.describe(&rhs),
            })
        })
    });
    Check::from_witness("g_S presentation", tuples.len() as u64, bad)
}

/// `K` as the Lie algebra of the associative product `F(a,b) F(m,n) = d(n, a+b+m) F(a+m, b+m)`.
pub fn k_lie_algebra(group: &FinAbGroup) -> LieAlgebra {
    let n = group.order();
    let s = group;
    let labels = iproduct!(s.elements(), s.elements())
        .map(|(a, b)| format!("F({},{})", s.label(a), s.label(b)))
        .collect();
    LieAlgebra::from_fn(labels, |i, j| {
        let (a, b, m, v) = (i / n, i % n, j / n, j % n);
        let mut out = Vec::new();
        if v == s.add(s.add(a, b), m) {
            out.push((s.add(a, m) * n + s.add(b, m), c(1)));
        }
        if b == s.add(s.add(m, v), a) {
            out.push((s.add(m, a) * n + s.add(v, a), c(-1)));
        }
        SparseVec::from_entries(out)
    })
}

/// `-theta`, where `theta(F(a,b)) = F(-a,b)`.
pub fn minus_theta(group: &FinAbGroup) -> LinearMap {
    let n = group.order();
    LinearMap::from_fn(n * n, n * n, |i| {
        SparseVec::single(group.neg(i / n) * n + i % n, c(-1))
    })
    .expect("square map")
}

/// `<F(a,b), F(m,n)> = chi(a+m) d(2(a+m), 0) d(a+m, b-n)` on `K`.
pub fn k_form(chi: &Character) -> BilinearForm {
    let s = chi.group();
    let n = s.order();
    BilinearForm::from_fn(n * n, |i, j| {
        let (a, b, m, v) = (i / n, i % n, j / n, j % n);
        let apm = s.add(a, m);
        if s.double(apm) == 0 && apm == s.sub(b, v) {
            chi.value(apm)
        } else {
            CycNumber::zero()
        }
    })
}

/// `<d(a,b), d(m,n)>_chi` on generators.
pub fn chi_form_value(chi: &Character, a: Elem, b: Elem, m: Elem, v: Elem) -> CycNumber {
    let s = chi.group();
    let mut out = CycNumber::zero();
    let (apm, amm, bmv) = (s.add(a, m), s.sub(a, m), s.sub(b, v));
    if s.double(apm) == 0 && apm == bmv {
        out = &out + &chi.value(apm);
    }
    if s.double(amm) == 0 && amm == bmv {
        out = &out - &chi.value(amm);
    }
    out
}

/// The chi-form on the basis of `g_S`.
pub fn chi_form(gs: &GS, chi: &Character) -> Result<BilinearForm> {
    if chi.group() != gs.group() {
        return Err(Error::Invalid("character belongs to another group".into()));
    }
    let basis = gs.basis();
    Ok(BilinearForm::from_fn(gs.dim(), |i, j| {
        let ((a, b), (m, v)) = (basis[i], basis[j]);
        chi_form_value(chi, a, b, m, v)
    }))
}

/// The generator formula agrees with the basis form on every generator pair,
/// so the form does not depend on representatives.
pub fn check_chi_form_well_defined(gs: &GS, chi: &Character, form: &BilinearForm) -> Check {
    let s = gs.group();
    let n = s.order();
    let mut count = 0u64;
    for (a, b, m, v) in iproduct!(0..n, 0..n, 0..n, 0..n) {
        count += 1;
        if form.eval(&gs.d(a, b), &gs.d(m, v)) != chi_form_value(chi, a, b, m, v) {
            return Check::fail(
                "chi-form well defined",
                count,
                json!({"generators": [[a, b], [m, v]]}),
            );
        }
    }
    Check::pass("chi-form well defined", count)
}

/// `sigma_gamma` on `g_S` for every `gamma` in canonical order.
pub fn s_action_on_gs(gs: &GS) -> Vec<LinearMap> {
    gs.group().elements().map(|g| gs.shift(g)).collect()
}

/// Automorphisms, the group law, and preservation of the form when one is given.
pub fn s_action_checks(
    l: &LieAlgebra,
    action: &[LinearMap],
    group: &FinAbGroup,
    form: Option<&BilinearForm>,
    what: &str,
) -> Vec<Check> {
    let mut out = Vec::new();
    let bad = action.iter().position(|g| !is_automorphism(l, g));
    out.push(Check::from_witness(
        format!("{what} S-action by automorphisms"),
        action.len() as u64,
        bad.map(|i| json!({"gamma": i})),
    ));
    let mut bad = None;
    let mut count = 0u64;
    for (x, y) in iproduct!(group.elements(), group.elements()) {
        count += 1;
        if action[x].compose(&action[y]) != action[group.add(x, y)] {
            bad = Some(json!({"gammas": [x, y]}));
            break;
        }
    }
    out.push(Check::from_witness(
        format!("{what} S-action group law"),
        count,
        bad,
    ));
    if let Some(b) = form {
        let bad = action.iter().position(|g| b.pullback(g) != *b);
        out.push(Check::from_witness(
            format!("{what} S-action preserves form"),
            action.len() as u64,
            bad.map(|i| json!({"gamma": i})),
        ));
    }
    out
}

/// `pi(d(a,b)) = -G^tau(a,b)`, as a map `g_S -> A_S^tau`.
pub fn pi_hom(gl: &GlS, gs: &GS, ast: &ASTau) -> Result<LinearMap> {
    LinearMap::from_fn(gs.dim(), ast.algebra.dim(), |i| {
        let (a, b) = gs.basis()[i];
        ast.coords(&gl.g_tau(a, b).neg()).expect("G^tau lies in A_S^tau")
    })
}

/// One block `g_j = span{E(m,n) - E(n,m) : m, n in S_j}` of `A_S^tau`.
#[derive(Clone, Debug)]
pub struct Block {
    pub coset: Vec<Elem>,
    /// `(m, n)` with `m < n` in the coset, one per basis vector.
    pub pairs: Vec<(Elem, Elem)>,
    /// Basis in `A_S^tau` coordinates.
    pub basis: Vec<SparseVec>,
    pub algebra: LieAlgebra,
    /// Plane rotations of consecutive coset elements, in block coordinates.
    pub cartan: Vec<SparseVec>,
}

#[derive(Clone, Debug)]
pub struct IdealData {
    /// `I = span{d(a+g, b+g) - d(a,b) : g in S^0}`
    pub ideal: Subspace,
    pub quotient: LieAlgebra,
    /// `g_S -> g_S / I`
    pub projection: LinearMap,
    /// `g_S / I -> A_S^tau` induced by `pi`.
    pub pi_bar: LinearMap,
    pub blocks: Vec<Block>,
}

pub fn ideal_i_and_blocks(gl: &GlS, gs: &GS, ast: &ASTau) -> Result<IdealData> {
    let s = gs.group();
    let s0 = s.subgroup_s0();
    let ideal = Subspace::from_vectors(
        gs.dim(),
        PivotSide::Last,
        iproduct!(s.elements(), s.elements(), s0.iter().copied())
            .map(|(a, b, g)| gs.d(s.add(a, g), s.add(b, g)).sub(&gs.d(a, b))),
    );
    let (q, projection) = quotient(&gs.algebra, &ideal)?;
    let keep = ideal.complement();
    let pi = pi_hom(gl, gs, ast)?;
    let pi_bar = LinearMap::from_fn(q.dim(), ast.algebra.dim(), |p| pi.column(keep[p]).clone())?;
    let cd = s.coset_decomposition_2s();
    let mut blocks = Vec::new();
    for coset in cd.cosets {
        let pairs: Vec<(Elem, Elem)> = coset
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| coset[i + 1..].iter().map(move |&v| (m, v)))
            .collect();
        let gl_vecs: Vec<SparseVec> = pairs.iter().map(|&(m, v)| gl.e(m, v).sub(&gl.e(v, m))).collect();
        let basis = gl_vecs
            .iter()
            .map(|v| {
                ast.coords(v)
                    .ok_or(Error::NotClosed(v.first_index().unwrap_or(0), 0))
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = pairs
            .iter()
            .map(|&(m, v)| format!("R({},{})", s.label(m), s.label(v)))
            .collect();
        let (algebra, _) = subalgebra(&gl.algebra, &gl_vecs, labels)?;
        let cartan = coset
            .chunks_exact(2)
            .map(|p| {
                let at = pairs
                    .iter()
                    .position(|&q| q == (p[0], p[1]))
                    .expect("pair listed");
                SparseVec::unit(at)
            })
            .collect();
        blocks.push(Block {
            coset,
            pairs,
            basis,
            algebra,
            cartan,
        });
    }
    Ok(IdealData {
        ideal,
        quotient: q,
        projection,
        pi_bar,
        blocks,
    })
}

/// `I` is killed by `pi`, `pi_bar` is an isomorphism, and the blocks are
/// pairwise commuting ideals of the expected dimension summing to `A_S^tau`.
pub fn ideal_checks(gl: &GlS, gs: &GS, ast: &ASTau, data: &IdealData) -> Result<Vec<Check>> {
    let pi = pi_hom(gl, gs, ast)?;
    let mut out = vec![Check::pass("I is an ideal", data.ideal.dim() as u64)];
    let killed = data.ideal.rows().iter().all(|r| pi.apply(r).is_zero());
    out.push(Check::expect("pi vanishes on I", killed, || json!({})));
    out.push(is_isomorphism(&data.pi_bar, &data.quotient, &ast.algebra).renamed("pi_bar isomorphism"));
    let k = gs.group().two_s().len();
    let dims_ok = data
        .blocks
        .iter()
        .all(|b| b.algebra.dim() == k * k.saturating_sub(1) / 2);
    out.push(Check::expect(
        "block dimensions k(k-1)/2",
        dims_ok,
        || json!({"dims": data.blocks.iter().map(|b| b.algebra.dim()).collect::<Vec<_>>()}),
    ));
    let all: Vec<SparseVec> = data.blocks.iter().flat_map(|b| b.basis.iter().cloned()).collect();
    let total = Subspace::from_vectors(ast.algebra.dim(), PivotSide::First, all.iter().cloned());
    out.push(Check::expect(
        "blocks span A_S^tau directly",
        total.dim() == ast.algebra.dim() && all.len() == total.dim(),
        || json!({"span": total.dim(), "vectors": all.len(), "dim": ast.algebra.dim()}),
    ));
    let mut count = 0u64;
    let mut bad = None;
    'outer: for (i, bi) in data.blocks.iter().enumerate() {
        let span_i = Subspace::from_vectors(ast.algebra.dim(), PivotSide::First, bi.basis.iter().cloned());
        for x in &bi.basis {
            for y in 0..ast.algebra.dim() {
                count += 1;
                let w = ast.algebra.bracket_vec(x, &SparseVec::unit(y))?;
                if !span_i.contains(&w) {
                    bad = Some(json!({"block": i, "not_ideal_with_basis": y}));
                    break 'outer;
                }
            }
            for (j, bj) in data.blocks.iter().enumerate().skip(i + 1) {
                for z in &bj.basis {
                    count += 1;
                    if !ast.algebra.bracket_vec(x, z)?.is_zero() {
                        bad = Some(json!({"blocks": [i, j]}));
                        break 'outer;
                    }
                }
            }
        }
    }
    out.push(Check::from_witness("blocks are commuting ideals", count, bad));
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRecord {
    pub block_index: usize,
    pub coset: Vec<Elem>,
    pub dimension: usize,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub type_label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRecord {
    pub group: String,
    pub g_s_dim: usize,
    pub ideal_i_dim: usize,
    pub quotient_dim: usize,
    pub blocks: Vec<BlockRecord>,
}

impl ClassificationRecord {
    /// Block labels joined with `+`, e.g. `B1+B1`.
    pub fn summary(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.type_label.clone())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "## classification of g_S for {}\n\ndim g_S = {}, dim I = {}, dim g_S/I = {}\n\n| block | coset | dim | rank | type | Cartan matrix |\n|---|---|---|---|---|---|\n",
            self.group, self.g_s_dim, self.ideal_i_dim, self.quotient_dim
        );
        for b in &self.blocks {
            out.push_str(&format!(
                "| {} | {:?} | {} | {} | {} | {:?} |\n",
                b.block_index, b.coset, b.dimension, b.rank, b.type_label, b.cartan_matrix
            ));
        }
        out
    }
}

pub fn classify_block(block: &Block) -> Result<(usize, crate::liealg::TypeLabel)> {
    let data = root_decomposition(&block.algebra, &block.cartan)?;
    Ok((data.rank, classify_simple_type(&data)?))
}

/// Everything needed downstream of a group: `gl_S`, `A_S^tau`, `g_S`, `pi`, `I` and blocks.
#[derive(Clone, Debug)]
pub struct GroupAlgebras {
    pub gl: GlS,
    pub ast: ASTau,
    pub gs: GS,
    pub pi: LinearMap,
    pub ideal: IdealData,
}

pub fn build_all(group: &FinAbGroup) -> Result<GroupAlgebras> {
    let gl = build_gl_s(group);
    let ast = build_a_s_tau(&gl)?;
    let gs = build_g_s(group)?;
    let pi = pi_hom(&gl, &gs, &ast)?;
    let ideal = ideal_i_and_blocks(&gl, &gs, &ast)?;
    Ok(GroupAlgebras {
        gl,
        ast,
        gs,
        pi,
        ideal,
    })
}

pub fn classify(group: &FinAbGroup) -> Result<ClassificationRecord> {
    let p = build_all(group)?;
    classify_built(&p)
}

pub fn classify_built(p: &GroupAlgebras) -> Result<ClassificationRecord> {
    let blocks = p
        .ideal
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let (rank, label) = classify_block(b)?;
            Ok(BlockRecord {
                block_index: i,
                coset: b.coset.clone(),
                dimension: b.algebra.dim(),
                rank,
                cartan_matrix: label.cartan_matrix.clone(),
                type_label: label.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationRecord {
        group: p.gs.group().name(),
        g_s_dim: p.gs.dim(),
        ideal_i_dim: p.ideal.ideal.dim(),
        quotient_dim: p.ideal.quotient.dim(),
        blocks,
    })
}

/// Commuting Cartan elements of `(gl_S)^tau` for cyclic `S` of odd order `N`:
/// `H_k = i (P_k - P_{-k})` for `k` in the half set, where `P_k` projects onto
/// `sum_b zeta_N^(k b) e_b`. Unlike plane rotations, these commute with the
/// shift `sigma_1`. Returned in `gl_S` coordinates.
pub fn fourier_cartan(gl: &GlS) -> Result<Vec<SparseVec>> {
    let s = gl.group();
    let n = s.order();
    if !s.is_cyclic() || n.is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "Fourier Cartan needs a cyclic group of odd order, got {}",
            s.name()
        )));
    }
    let i = CycNumber::root_of_unity(4, 1);
    let scale = &i * &CycNumber::from_ratio(1, n as i64);
    Ok(s.half_set()
        .into_iter()
        .map(|k| {
            SparseVec::from_entries(
                iproduct!(0..n, 0..n)
                    .map(|(a, b)| {
                        let e = (k * ((n + a - b) % n)) as i64;
                        let d =
                            &CycNumber::root_of_unity(n as u32, e) - &CycNumber::root_of_unity(n as u32, -e);
                        (a * n + b, &scale * &d)
                    })
                    .collect(),
            )
        })
        .collect())
}

/// The `gs` verification suite: everything about `gl_S`, `A_S^tau`, `g_S`,
/// the chi-form (when a character is given), `pi`, `I` and the blocks.
pub fn verify_gs(group: &FinAbGroup, chi: Option<&Character>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("gs", &group.name(), chi.map(|c| c.index()), None);
    let p = build_all(group)?;
    let (gl, ast, gs) = (&p.gl, &p.ast, &p.gs);
    report.extend(gl_s_checks(gl));
    report.extend(a_s_tau_checks(gl, ast));
    report.push(gg_equality_check(group));
    report.push(check_jacobi(&gs.algebra).renamed("g_S jacobi"));
    report.push(check_gs_presentation(gs));
    let expected = group.half_set().len() * group.order();
    let mut dim = Check::expect(
        "g_S dimension",
        gs.dim() == expected,
        || json!({"dim": gs.dim(), "expected": expected}),
    );
    if gs.dim() == 0 {
        dim = dim.with_note("g_S = 0: every element has order at most 2");
    }
    report.push(dim);
    let action = s_action_on_gs(gs);
    let form = match chi {
        Some(chi) => {
            let f = chi_form(gs, chi)?;
            report.push(check_chi_form_well_defined(gs, chi, &f));
            report.push(check_invariant_form(&gs.algebra, &f).renamed("chi-form invariant"));
            Some(f)
        }
        None => {
            report.push(Check::skipped(
                "chi-form invariant",
                "no character for this group",
            ));
            None
        }
    };
    report.extend(s_action_checks(&gs.algebra, &action, group, form.as_ref(), "g_S"));
    let ast_action: Vec<LinearMap> = group.elements().map(|g| ast.shift(gl, g)).collect();
    report.extend(s_action_checks(
        &ast.algebra,
        &ast_action,
        group,
        Some(&ast.form),
        "A_S^tau",
    ));
    report.push(is_homomorphism(&p.pi, &gs.algebra, &ast.algebra).renamed("pi homomorphism"));
    let surj = p.pi.rank() == ast.algebra.dim();
    report.push(Check::expect(
        "pi surjective",
        surj,
        || json!({"rank": p.pi.rank()}),
    ));
    let mut count = 0u64;
    let equivariant = group.elements().all(|g| {
        count += 1;
        p.pi.compose(&action[g]) == ast_action[g].compose(&p.pi)
    });
    report.push(Check::expect("pi equivariant", equivariant, || json!({})).with_tuples(count));
    if group.subgroup_s0().len() == 1 {
        report.push(is_isomorphism(&p.pi, &gs.algebra, &ast.algebra).renamed("pi isomorphism"));
        if let Some(f) = &form {
            let iso = ast.form.pullback(&p.pi) == *f;
            report.push(Check::expect("pi isometry", iso, || json!({})));
        }
    }
    report.extend(ideal_checks(gl, gs, ast, &p.ideal)?);
    if group.order() % 2 == 1 {
        let n = group.order();
        report.push(Check::expect(
            "A_S = gl_S",
            ast.a_s.dim() == n * n,
            || json!({"dim": ast.a_s.dim()}),
        ));
        let kf = killing_form(&gs.algebra)?;
        report.push(Check::expect(
            "g_S Killing form nondegenerate",
            kf.is_nondegenerate(),
            || json!({"rank": kf.rank()}),
        ));
    }
    let record = classify_built(&p)?;
    report.push(Check::pass("block classification", record.blocks.len() as u64).with_note(record.summary()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_character;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    #[test]
    fn gl_s_examples() {
        let gl = build_gl_s(&z(3));
        let b = gl.algebra.bracket(gl.index(1, 2), gl.index(2, 0)).unwrap();
        assert_eq!(*b, gl.e(1, 0));
        assert_eq!(gl.tau.apply(&gl.e(1, 2)), gl.e(2, 1).neg());
        assert!(gl_s_checks(&gl).iter().all(Check::passed));
    }

    #[test]
    fn g_s_examples_z5() {
        let s = z(5);
        let gs = build_g_s(&s).unwrap();
        assert_eq!(gs.dim(), 10);
        // [d(1,0), d(2,3)] = d(3,2)
        let br = gs.algebra.bracket_vec(&gs.d(1, 0), &gs.d(2, 3)).unwrap();
        assert_eq!(br, gs.d(3, 2));
        assert!(check_gs_presentation(&gs).passed());
        let chi = make_character(&s, 1).unwrap();
        let f = chi_form(&gs, &chi).unwrap();
        assert_eq!(f.eval(&gs.d(1, 0), &gs.d(4, 0)), c(1));
        assert_eq!(f.eval(&gs.d(1, 0), &gs.d(1, 0)), c(-1));
        assert_eq!(f.eval(&gs.d(1, 0), &gs.d(2, 0)), c(0));
        assert_eq!(gs.shift(2).apply(&gs.d(1, 0)), gs.d(1, 2));
    }

    #[test]
    fn a_s_tau_bracket_example() {
        let gl = build_gl_s(&z(5));
        let ast = build_a_s_tau(&gl).unwrap();
        assert_eq!(ast.a_s.dim(), 25);
        assert_eq!(ast.algebra.dim(), 10);
        let x = ast.coords(&gl.g_tau(1, 0)).unwrap();
        let y = ast.coords(&gl.g_tau(2, 3)).unwrap();
        let br = ast.algebra.bracket_vec(&x, &y).unwrap();
        assert_eq!(br, ast.coords(&gl.g_tau(3, 2).neg()).unwrap());
    }

    #[test]
    fn collapsed_group() {
        let s: FinAbGroup = "Z2xZ2".parse().unwrap();
        let gs = build_g_s(&s).unwrap();
        assert_eq!(gs.dim(), 0);
        let r = verify_gs(&s, None).unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
    }

    #[test]
    fn z4_ideal_and_pi() {
        let p = build_all(&z(4)).unwrap();
        assert_eq!(p.gs.dim(), 4);
        assert_eq!(p.ideal.ideal.dim(), 2);
        assert_eq!(p.ideal.quotient.dim(), 2);
        assert_eq!(p.pi.kernel().dim(), 2);
        assert!(!killing_form(&p.gs.algebra).unwrap().is_nondegenerate());
    }

    #[test]
    fn fourier_cartan_commutes_with_shift() {
        let gl = build_gl_s(&z(5));
        let h = fourier_cartan(&gl).unwrap();
        assert_eq!(h.len(), 2);
        let shift = gl.shift(1);
        for x in &h {
            assert_eq!(shift.apply(x), *x);
            assert_eq!(gl.tau.apply(x), *x);
        }
        assert!(gl.algebra.bracket_vec(&h[0], &h[1]).unwrap().is_zero());
    }

    #[test]
    fn gs_suite_small_groups() {
        for n in [1u64, 2, 3, 4, 5, 6] {
            let s = z(n);
            let chi = make_character(&s, 1).unwrap();
            let r = verify_gs(&s, Some(&chi)).unwrap();
            assert!(r.passed(), "{}", r.to_markdown());
        }
    }

    #[test]
    fn classification_table() {
        let cases = [
            ("Z3", 3, "B1"),
            ("Z4", 4, "abelian-1+abelian-1"),
            ("Z5", 10, "B2"),
            ("Z6", 12, "B1+B1"),
            ("Z7", 21, "B3"),
            ("Z8", 24, "A1xA1+A1xA1"),
        ];
        for (g, dim, label) in cases {
            let r = classify(&g.parse().unwrap()).unwrap();
            assert_eq!((r.g_s_dim, r.summary().as_str()), (dim, label), "{g}");
        }
    }
}
