//! Twisted affine algebras and the isomorphism `psi` onto the untwisted one.
//!
//! For `h` in `L` with `ad h` diagonalizable with integer eigenvalues and a
//! period `T`, let `sigma = exp(2 pi i / T ad h)`. The twisted algebra
//! `L[sigma]` is spanned by `a t^(n - r/T)` for `a` in the `r`-eigenspace of
//! `ad h`, plus `k`, with
//!
//! ```text
//! [a t^(p/T), b t^(q/T)] = [a,b] t^((p+q)/T) + (p/T) d(p+q,0) <a,b> k
//! ```
//!
//! A basis element `a t^(n - r/T)` is stored as the pair `(n, a)`. The map
//! `psi(a t^(n - r/T)) = a t^n + (1/T) <h,a> d(n,0) k`, `psi(k) = k` is a Lie
//! isomorphism onto the untwisted affine algebra on the same window.

use itertools::Itertools;
use serde_json::json;

use super::realization::{phi_central_scalar, Realization};
use super::AffineAlgebra;
use crate::algebras::{build_a_s_tau, build_gl_s, fourier_cartan, pi_hom};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::Character;
use crate::liealg::roots::integer_eigenspaces;
use crate::liealg::{
    check_invariant_form, check_jacobi, is_homomorphism, is_isomorphism, root_decomposition, subalgebra,
    BilinearForm, LieAlgebra, LinearMap, PivotSide, SparseVec, Subspace,
};
use crate::report::{Check, VerificationReport};

/// An eigenbasis of `ad h` with integer eigenvalues.
#[derive(Clone, Debug)]
pub struct EigenBasis {
    pub vectors: Vec<SparseVec>,
    pub eigenvalues: Vec<i64>,
    span: Subspace,
}

impl EigenBasis {
    /// Coordinates of an `L` vector in the eigenbasis.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        self.span.coords(v).expect("eigenbasis spans L")
    }

    pub fn max_abs(&self) -> i64 {
        self.eigenvalues.iter().map(|r| r.abs()).max().unwrap_or(0)
    }
}

pub fn ad_eigenbasis(l: &LieAlgebra, h: &SparseVec) -> Result<EigenBasis> {
    let spaces = integer_eigenspaces(&l.ad(h)?, &CycNumber::one()).ok_or(Error::NotIntegerSemisimple)?;
    let mut vectors = Vec::new();
    let mut eigenvalues = Vec::new();
    for (r, space) in spaces.into_iter().sorted_by_key(|(r, _)| *r) {
        for v in space.rows() {
            vectors.push(v.clone());
            eigenvalues.push(r);
        }
    }
    let mut span = Subspace::new(l.dim(), PivotSide::First);
    for v in &vectors {
        span.insert(v);
    }
    Ok(EigenBasis {
        vectors,
        eigenvalues,
        span,
    })
}

/// `L[sigma]` on the window `|n| <= W`, in the eigenbasis of `ad h`.
#[derive(Clone, Debug)]
pub struct TwistedAffine {
    pub eigen: EigenBasis,
    /// `L` rewritten in the eigenbasis.
    pub base: LieAlgebra,
    pub form: BilinearForm,
    /// `h` in eigenbasis coordinates.
    pub h: SparseVec,
    pub period: i64,
    pub window: i64,
    pub algebra: LieAlgebra,
}

impl TwistedAffine {
    pub fn new(l: &LieAlgebra, form: &BilinearForm, h: &SparseVec, period: i64, window: i64) -> Result<Self> {
        if period < 1 {
            return Err(Error::Invalid(format!("period must be positive, got {period}")));
        }
        let eigen = ad_eigenbasis(l, h)?;
        let labels = eigen
            .vectors
            .iter()
            .zip(&eigen.eigenvalues)
            .map(|(v, r)| format!("<{}>_{r}", l.describe(v)))
            .collect();
        let (base, incl) = subalgebra(l, &eigen.vectors, labels)?;
        let form = form.pullback(&incl);
        let h_e = eigen.coords(h);
        let d = base.dim();
        let width = (2 * window + 1) as usize;
        let kidx = width * d;
        let mut labels: Vec<String> = (0..kidx)
            .map(|p| {
                let (n, i) = ((p / d) as i64 - window, p % d);
                format!("{} t^({n}-{}/{period})", base.label(i), eigen.eigenvalues[i])
            })
            .collect();
        labels.push("k".into());
        let mut degrees: Vec<i64> = (0..kidx).map(|p| (p / d) as i64 - window).collect();
        degrees.push(0);
        let r = eigen.eigenvalues.clone();
        let algebra = LieAlgebra::from_fn_graded(labels, degrees, window, |x, y| {
            if x == kidx || y == kidx {
                return SparseVec::new();
            }
            let (m, i) = ((x / d) as i64 - window, x % d);
            let (n, j) = ((y / d) as i64 - window, y % d);
            let b = base.bracket(i, j).expect("ungraded");
            let mut out = b.reindex(|c| Some(((m + n + window) as usize) * d + c));
            let p = m * period - r[i];
            let q = n * period - r[j];
            if p + q == 0 {
                let f = form.get(i, j);
                if !f.is_zero() {
                    out = out.add(&SparseVec::single(kidx, &CycNumber::from_ratio(p, period) * f));
                }
            }
            out
        });
        Ok(TwistedAffine {
            eigen,
            base,
            form,
            h: h_e,
            period,
            window,
            algebra,
        })
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

    /// The untwisted affine algebra over the same eigenbasis and window.
    pub fn untwisted(&self) -> Result<AffineAlgebra> {
        AffineAlgebra::new(self.base.clone(), self.form.clone(), self.window)
    }

    /// `psi(a t^(n - r/T)) = a t^n + (1/T) <h,a> d(n,0) k`, `psi(k) = k`.
    pub fn psi(&self, untwisted: &AffineAlgebra) -> Result<LinearMap> {
        let d = self.base.dim();
        let kidx = self.k_index();
        LinearMap::from_fn(self.dim(), untwisted.dim(), |x| {
            if x == kidx {
                return untwisted.k();
            }
            let (n, i) = ((x / d) as i64 - self.window, x % d);
            let mut v = SparseVec::unit(untwisted.index(i, n).expect("same window"));
            if n == 0 {
                let c =
                    &self.form.eval(&self.h, &SparseVec::unit(i)) * &CycNumber::from_ratio(1, self.period);
                v = v.add(&SparseVec::single(untwisted.k_index(), c));
            }
            v
        })
    }
}

/// Builds `L[sigma]` and checks that `psi` is a degree-preserving Lie
/// isomorphism with `psi(k) = k`.
pub fn psi_twisted_untwisted_iso(
    l: &LieAlgebra,
    form: &BilinearForm,
    h: &SparseVec,
    period: i64,
    window: i64,
) -> Result<(TwistedAffine, LinearMap, Vec<Check>)> {
    let mut checks = vec![
        Check::expect("form symmetric", form.is_symmetric(), || json!({})),
        check_invariant_form(l, form).renamed("form invariant"),
    ];
    let tw = TwistedAffine::new(l, form, h, period, window)?;
    checks.push(
        Check::pass("ad h integer semisimple", l.dim() as u64).with_note(format!(
            "eigenvalues {:?}",
            tw.eigen.eigenvalues.iter().dedup().collect_vec()
        )),
    );
    let un = tw.untwisted()?;
    let psi = tw.psi(&un)?;
    checks.push(check_jacobi(&tw.algebra).renamed("twisted jacobi"));
    checks.push(is_isomorphism(&psi, &tw.algebra, &un.algebra).renamed("psi isomorphism"));
    let kcol = psi.column(tw.k_index());
    checks.push(Check::expect("psi(k) = k", *kcol == un.k(), || json!({})));
    let graded = (0..tw.dim()).all(|x| {
        let v = psi.column(x);
        v.iter()
            .all(|(y, _)| un.algebra.degree(y) == tw.algebra.degree(x))
    });
    checks.push(Check::expect("psi preserves degree", graded, || json!({})));
    Ok((tw, psi, checks))
}

/// Checks `exp(2 pi i / T ad h) = sigma` on every integer eigenspace of `ad h`.
pub fn verify_grading_element(l: &LieAlgebra, h: &SparseVec, sigma: &LinearMap, period: i64) -> Result<bool> {
    let Some(spaces) = integer_eigenspaces(&l.ad(h)?, &CycNumber::one()) else {
        return Ok(false);
    };
    Ok(spaces.iter().all(|(r, space)| {
        let z = CycNumber::root_of_unity(period as u32, *r);
        space.rows().iter().all(|v| sigma.apply(v) == v.scale(&z))
    }))
}

/// Searches `h = sum_s x_s (-i) H_s` over the given Cartan elements (acting
/// with eigenvalues in `i Z`) with `x_s` in `[0, 2T)`, such that
/// `exp(2 pi i / T ad h) = sigma`. Failure is `NotFound`, which says nothing
/// about elements outside this Cartan or this range.
pub fn find_grading_element(
    l: &LieAlgebra,
    cartan: &[SparseVec],
    sigma: &LinearMap,
    period: i64,
) -> Result<SparseVec> {
    if period < 1 {
        return Err(Error::Invalid(format!("period must be positive, got {period}")));
    }
    let mut power = LinearMap::identity(l.dim());
    for _ in 0..period {
        power = sigma.compose(&power);
    }
    if !power.is_identity() {
        return Err(Error::NotFound(format!("sigma^{period} is not the identity")));
    }
    let data = root_decomposition(l, cartan)?;
    // sigma's eigenvalue exponent on each root space
    let mut targets = Vec::with_capacity(data.roots.len());
    for space in &data.root_spaces {
        let v = &space[0];
        let w = sigma.apply(v);
        let e = (0..period).find(|&e| w == v.scale(&CycNumber::root_of_unity(period as u32, e)));
        match e {
            Some(e) => targets.push(e),
            None => {
                return Err(Error::NotFound(
                    "sigma does not act by a scalar on a root space".into(),
                ))
            }
        }
    }
    let minus_i = CycNumber::root_of_unity(4, 3);
    let rank = cartan.len();
    for xs in (0..rank).map(|_| 0..2 * period).multi_cartesian_product() {
        let ok = data.roots.iter().zip(&targets).all(|(root, &e)| {
            let val: i64 = root.iter().zip(&xs).map(|(t, x)| t * x).sum();
            (val - e).rem_euclid(period) == 0
        });
        if !ok {
            continue;
        }
        let h = cartan.iter().zip(&xs).fold(SparseVec::new(), |acc, (c, &x)| {
            acc.add_scaled(c, &(&minus_i * &CycNumber::from_i64(x)))
        });
        if verify_grading_element(l, &h, sigma, period)? {
            return Ok(h);
        }
    }
    if rank == 0 && sigma.is_identity() {
        return Ok(SparseVec::new());
    }
    Err(Error::NotFound(format!(
        "no grading element with coefficients in [0, {}) over a Cartan of rank {rank}",
        2 * period
    )))
}

/// The target of the chain: `A_S^tau` with its form, the shift by the
/// preimage of `zeta_N`, and a Cartan commuting with it.
#[derive(Clone, Debug)]
pub struct ChainTarget {
    pub algebra: LieAlgebra,
    pub form: BilinearForm,
    pub sigma: LinearMap,
    pub cartan: Vec<SparseVec>,
}

pub fn chain_target(chi: &Character) -> Result<ChainTarget> {
    let gl = build_gl_s(chi.group());
    let ast = build_a_s_tau(&gl)?;
    let sigma = ast.shift(&gl, chi.primitive_preimage());
    let cartan = fourier_cartan(&gl)?
        .iter()
        .map(|h| {
            ast.coords(h)
                .ok_or_else(|| Error::Invalid("Cartan element outside A_S^tau".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainTarget {
        algebra: ast.algebra,
        form: ast.form,
        sigma,
        cartan,
    })
}

/// Certifies `D_S = ghat_S / S = (ghat_S)^S = (A_S^tau)^ fixed = A[sigma] = untwisted A`
/// for a cyclic group of odd order, one link at a time, all on degree windows.
/// `h` is searched for when not supplied.
pub fn identification_chain(
    chi: &Character,
    window: i64,
    h: Option<SparseVec>,
) -> Result<VerificationReport> {
    let s = chi.group();
    let n = s.order();
    let period = n as i64;
    let mut report = VerificationReport::new("appendix", &s.name(), Some(chi.index()), Some(window));
    if n.is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "the identification chain needs odd order, got {}",
            s.name()
        )));
    }
    // links 1 and 2
    let real = Realization::build(chi, window)?;
    let (count, bad) = real.sweep(&real.ds)?;
    report.push(Check::from_witness(
        "link 1: D_S = covariant quotient",
        count,
        bad,
    ));
    let phi = crate::covariant::phi_fixed_point_iso(
        &real.affine.affine.algebra,
        &real.affine.action,
        &real.covariant,
    )?;
    let phi_ok = phi.checks.iter().all(Check::passed);
    report.push(Check::expect("link 2: phi isomorphism onto fixed points", phi_ok, || {
        json!({"failed": phi.checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect::<Vec<_>>()})
    }));
    report.push(phi_central_scalar(&real, &phi));
    // link 3
    let target = chain_target(chi)?;
    let gl = build_gl_s(s);
    let ast = build_a_s_tau(&gl)?;
    let pi = pi_hom(&gl, &real.affine.gs, &ast)?;
    let aff_gs = &real.affine.affine;
    let aff_a = AffineAlgebra::new(target.algebra.clone(), target.form.clone(), window)?;
    let pi_hat = aff_gs.extend_map(&pi, &aff_a, &CycNumber::one())?;
    report.push(
        is_isomorphism(&pi_hat, &aff_gs.algebra, &aff_a.algebra).renamed("link 3: affine pi isomorphism"),
    );
    let gamma0 = chi.primitive_preimage();
    let act_gs = super::s_action(aff_gs, &real.affine.gs, chi, gamma0);
    let act_a = LinearMap::from_fn(aff_a.dim(), aff_a.dim(), |x| match aff_a.decompose(x) {
        None => aff_a.k(),
        Some((i, m)) => aff_a
            .at_degree(&target.sigma.column(i).scale(&chi.value_pow(gamma0, m)), m)
            .expect("same degree"),
    })?;
    let equivariant = pi_hat.compose(&act_gs) == act_a.compose(&pi_hat);
    report.push(Check::expect(
        "link 3: affine pi equivariant",
        equivariant,
        || json!({}),
    ));
    // fixed points of A^, degree by degree: sigma(a) = zeta_N^-m a
    let id = LinearMap::identity(target.algebra.dim());
    let mut fixed_basis: Vec<(i64, SparseVec)> = Vec::new();
    for m in -window..=window {
        let shift = id.scale(&CycNumber::root_of_unity(n as u32, -m));
        for v in target.sigma.sub(&shift).kernel().rows() {
            fixed_basis.push((m, v.clone()));
        }
    }
    let fixed_a = Subspace::from_vectors(
        aff_a.dim(),
        PivotSide::First,
        fixed_basis
            .iter()
            .map(|(m, v)| aff_a.at_degree(v, *m).expect("in window"))
            .chain(std::iter::once(aff_a.k())),
    );
    let image = Subspace::from_vectors(
        aff_a.dim(),
        PivotSide::First,
        phi.fixed.rows().iter().map(|v| pi_hat.apply(v)),
    );
    report.push(Check::expect(
        "link 3: pi maps fixed points onto fixed points",
        image.same_as(&fixed_a),
        || json!({"image_dim": image.dim(), "fixed_dim": fixed_a.dim()}),
    ));
    // grading element
    let h = match h {
        Some(h) => h,
        None => find_grading_element(&target.algebra, &target.cartan, &target.sigma, period)?,
    };
    let h_ok = verify_grading_element(&target.algebra, &h, &target.sigma, period)?;
    report.push(
        Check::expect("grading element realizes sigma", h_ok, || json!({}))
            .with_note(format!("h = {}", target.algebra.describe(&h))),
    );
    if !h_ok {
        return Ok(report);
    }
    // link 4: a t^m -> a t^(m/T), k -> k/T
    let eigen = ad_eigenbasis(&target.algebra, &h)?;
    let reach = (window + eigen.max_abs() + period - 1) / period;
    let (tw, psi, psi_checks) =
        psi_twisted_untwisted_iso(&target.algebra, &target.form, &h, period, 2 * reach)?;
    let canon = |m: i64, v: &SparseVec| -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (i, c) in tw.eigen.coords(v).iter() {
            let r = tw.eigen.eigenvalues[i];
            if (m + r).rem_euclid(period) != 0 {
                return Err(Error::Invalid(format!(
                    "component with eigenvalue {r} is not fixed at degree {m}"
                )));
            }
            out = out.add(&SparseVec::single(tw.index(i, (m + r) / period)?, c.clone()));
        }
        Ok(out)
    };
    let mut fixed_alg_labels = Vec::new();
    let mut fixed_vectors = Vec::new();
    let mut canon_cols = Vec::new();
    for (m, v) in &fixed_basis {
        fixed_alg_labels.push(format!("{}[{m}]", target.algebra.describe(v)));
        fixed_vectors.push(aff_a.at_degree(v, *m)?);
        canon_cols.push(canon(*m, v)?);
    }
    fixed_alg_labels.push("k".into());
    fixed_vectors.push(aff_a.k());
    canon_cols.push(SparseVec::single(tw.k_index(), CycNumber::from_ratio(1, period)));
    let degrees: Vec<i64> = fixed_basis
        .iter()
        .map(|(m, _)| *m)
        .chain(std::iter::once(0))
        .collect();
    let fixed_span = Subspace::from_vectors(aff_a.dim(), PivotSide::First, fixed_vectors.iter().cloned());
    let fixed_alg = LieAlgebra::from_fn_graded(fixed_alg_labels, degrees, window, |x, y| {
        let b = aff_a
            .algebra
            .bracket_vec(&fixed_vectors[x], &fixed_vectors[y])
            .expect("in window");
        fixed_span.coords(&b).expect("fixed points form a subalgebra")
    });
    let canon_map = LinearMap::new(fixed_vectors.len(), tw.dim(), canon_cols)?;
    let hom = is_homomorphism(&canon_map, &fixed_alg, &tw.algebra);
    let injective = canon_map.rank() == fixed_vectors.len();
    report.push(
        Check::expect(
            "link 4: fixed points into twisted algebra",
            hom.passed() && injective,
            || json!({"homomorphism": hom.witness, "rank": canon_map.rank(), "dim": fixed_vectors.len()}),
        )
        .with_tuples(hom.tuple_count),
    );
    // link 5
    let psi_ok = psi_checks.iter().all(Check::passed);
    report.push(Check::expect("link 5: psi isomorphism", psi_ok, || {
        json!({"failed": psi_checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect::<Vec<_>>()})
    }).with_tuples(psi.domain_dim() as u64));
    // central element along the chain: k -> |S| k -> |S| k -> (|S|/T) k -> (|S|/T) k
    let scalar = CycNumber::from_ratio(n as i64, period);
    report.push(
        Check::expect(
            "central element carried to k",
            scalar.is_one(),
            || json!({"scalar": scalar.to_string()}),
        )
        .with_note("c = -k(quotient) is carried to -k in the untwisted algebra"),
    );
    Ok(report)
}

/// The `appendix` report suite: `psi` for the trivial grading (`h = 0`, `T = 1`) on
/// `A_S^tau`, `psi` for the shift's grading element with `T = |S|`, and the
/// full identification chain.
pub fn verify_twisted(chi: &Character, window: i64, h: Option<SparseVec>) -> Result<VerificationReport> {
    let target = chain_target(chi)?;
    let mut report = identification_chain(chi, window, h.clone())?;
    let (_, psi, trivial) =
        psi_twisted_untwisted_iso(&target.algebra, &target.form, &SparseVec::new(), 1, window)?;
    report.extend(trivial.into_iter().map(|c| {
        let name = format!("trivial grading: {}", c.name);
        c.renamed(name)
    }));
    report.push(Check::expect(
        "trivial grading: psi is the identity",
        psi.is_identity(),
        || json!({}),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_character, FinAbGroup};

    #[test]
    fn grading_element_for_z3_shift() {
        let chi = make_character(&FinAbGroup::cyclic(3), 1).unwrap();
        let t = chain_target(&chi).unwrap();
        let h = find_grading_element(&t.algebra, &t.cartan, &t.sigma, 3).unwrap();
        let eig = ad_eigenbasis(&t.algebra, &h).unwrap();
        assert!(
            eig.eigenvalues.iter().all(|r| r.abs() <= 2),
            "{:?}",
            eig.eigenvalues
        );
        let (_, _, checks) = psi_twisted_untwisted_iso(&t.algebra, &t.form, &h, 3, 2).unwrap();
        assert!(checks.iter().all(Check::passed), "{checks:?}");
    }

    #[test]
    fn order_must_divide_period() {
        let chi = make_character(&FinAbGroup::cyclic(3), 1).unwrap();
        let t = chain_target(&chi).unwrap();
        assert!(matches!(
            find_grading_element(&t.algebra, &t.cartan, &t.sigma, 2),
            Err(Error::NotFound(_))
        ));
        let id = LinearMap::identity(t.algebra.dim());
        assert!(find_grading_element(&t.algebra, &t.cartan, &id, 1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn chain_z3() {
        let chi = make_character(&FinAbGroup::cyclic(3), 1).unwrap();
        let r = verify_twisted(&chi, 3, None).unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
    }
}
