//! Builders for the group schemes `α_p`, `μ_{p^m}`, `G_λ = α_p ⋊_λ μ_{p^m}`,
//! the twisted family `H̃_a`, Oort–Tate groups, and the isomorphisms between
//! them.

use std::sync::Arc;

use crate::algebra::{wp_polynomial, AlgElem, Algebra, AlgebraRef, RawPoly};
use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfMorphism, HopfRef};
use crate::ring::{BaseRing, Scalar};

/// `v_p(n)` for `n > 0`.
pub fn valuation_p(mut n: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CatalogParams {
    pub base: BaseRing,
    pub m: u32,
    pub lambda: u64,
}

impl CatalogParams {
    pub fn new(base: BaseRing, m: u32, lambda: u64) -> Result<Self> {
        let params = CatalogParams { base, m, lambda };
        if m == 0 || m > 6 {
            return Err(Error::OutOfRange(format!("m = {m} must lie in 1..=6")));
        }
        if lambda == 0 || lambda >= params.order_mu() {
            return Err(Error::OutOfRange(format!(
                "lambda = {lambda} must lie in [1, {}]",
                params.order_mu() - 1
            )));
        }
        Ok(params)
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    /// `p^m`.
    pub fn order_mu(&self) -> u64 {
        (self.p() as u64).pow(self.m)
    }

    /// `v_p(λ)`.
    pub fn v(&self) -> u32 {
        valuation_p(self.lambda, self.p())
    }

    /// True in the case `v_p(λ) = m − 1` where nontrivial law twists exist.
    pub fn is_family_case(&self) -> bool {
        self.v() + 1 == self.m
    }
}

fn one_plus(e: &AlgElem) -> AlgElem {
    &AlgElem::one(e.algebra()) + e
}

/// `(1+y)^{-1} - 1` in `R[y]/(y^N)`.
fn mu_antipode(y: &AlgElem) -> AlgElem {
    let inv = one_plus(y).inverse().expect("1+y is a unit");
    &inv - &AlgElem::one(y.algebra())
}

/// `O(α_p) = R[x]/(x^p)` with `Δx = x⊗1 + 1⊗x`.
pub fn alpha_p(base: BaseRing) -> Result<Hopf> {
    let p = base.p();
    let a = Algebra::truncated(base, &["x"], &[p])?;
    let a2 = Algebra::tensor_power(&a, 2)?;
    let d = &AlgElem::gen(&a2, 0) + &AlgElem::gen(&a2, 1);
    let s = AlgElem::gen(&a, 0).neg();
    Hopf::new(format!("alpha_{p}"), a, vec![d], vec![Scalar::ZERO], Some(vec![s]))
}

/// `O(μ_{p^m}) = R[y]/(y^{p^m})` with `Δy = y⊗1 + 1⊗y + y⊗y`.
pub fn mu(base: BaseRing, m: u32) -> Result<Hopf> {
    let p = base.p();
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    let n = p.checked_pow(m).ok_or_else(|| Error::OutOfRange("p^m too large".into()))?;
    let a = Algebra::truncated(base, &["y"], &[n])?;
    let a2 = Algebra::tensor_power(&a, 2)?;
    let (y1, y2) = (AlgElem::gen(&a2, 0), AlgElem::gen(&a2, 1));
    let d = &(&y1 + &y2) + &(&y1 * &y2);
    let s = mu_antipode(&AlgElem::gen(&a, 0));
    Hopf::new(format!("mu_{p}^{m}"), a, vec![d], vec![Scalar::ZERO], Some(vec![s]))
}

/// The algebra `R[x,y]/(x^p, y^{p^m})` underlying `G_λ` and its deformations.
pub fn g_lambda_algebra(base: BaseRing, m: u32) -> Result<AlgebraRef> {
    let p = base.p();
    Algebra::truncated(base, &["x", "y"], &[p, p.pow(m)])
}

/// The `G_λ` law on an algebra with generators `x, y`, with an optional
/// `W_p` twist `a·π·W_p(x⊗1, 1⊗x)` in the `x`-coordinate.
fn semidirect_law(alg: &AlgebraRef, lambda: u64, twist: Scalar) -> Result<(Vec<AlgElem>, Vec<AlgElem>)> {
    let base = alg.base();
    let a2 = Algebra::tensor_power(alg, 2)?;
    let (x1, y1, x2, y2) = (AlgElem::gen(&a2, 0), AlgElem::gen(&a2, 1), AlgElem::gen(&a2, 2), AlgElem::gen(&a2, 3));
    let mut dx = &(&one_plus(&y1).pow(lambda) * &x2) + &x1;
    if !twist.is_zero() {
        dx = &dx + &wp_polynomial(base.p(), &x1, &x2)?.scale(base.mul(twist, base.pi()));
    }
    let dy = &(&y1 + &y2) + &(&y1 * &y2);
    let (x, y) = (AlgElem::gen(alg, 0), AlgElem::gen(alg, 1));
    let twist_inv = one_plus(&y).inverse().expect("1+y is a unit").pow(lambda);
    let sx = (&twist_inv * &x).neg();
    Ok((vec![dx, dy], vec![sx, mu_antipode(&y)]))
}

/// `G_λ`: `Δx = (1+y)^λ ⊗ x + x ⊗ 1`, `Δy = y⊗1 + 1⊗y + y⊗y`.
pub fn g_lambda(params: CatalogParams) -> Result<Hopf> {
    let alg = g_lambda_algebra(params.base, params.m)?;
    let (comul, s) = semidirect_law(&alg, params.lambda, Scalar::ZERO)?;
    Hopf::new(
        format!("G_lambda(p={},m={},lambda={})", params.p(), params.m, params.lambda),
        alg,
        comul,
        vec![Scalar::ZERO; 2],
        Some(s),
    )
}

/// Closed form `[p^h](x, y) = (x Σ_{i<p^h} (1+y)^{λi}, (1+y)^{p^h} − 1)`.
pub fn closed_form_power(params: CatalogParams, h: u32) -> Result<(AlgElem, AlgElem)> {
    let alg = g_lambda_algebra(params.base, params.m)?;
    let (x, y) = (AlgElem::gen(&alg, 0), AlgElem::gen(&alg, 1));
    let n = (params.p() as u64).pow(h);
    let step = one_plus(&y).pow(params.lambda);
    let mut sum = AlgElem::zero(&alg);
    let mut term = AlgElem::one(&alg);
    for _ in 0..n {
        sum = &sum + &term;
        term = &term * &step;
    }
    Ok((&x * &sum, &one_plus(&y).pow(n) - &AlgElem::one(&alg)))
}

/// Oort–Tate group `R[τ]/(τ^p − aτ)` with `Δτ = τ⊗1 + 1⊗τ + b·W_p(τ⊗1, 1⊗τ)`.
pub fn oort_tate(base: BaseRing, a: Scalar, b: Scalar) -> Result<Hopf> {
    let p = base.p();
    if base.mul(a, b) != base.from_int(p as i64) {
        return Err(Error::Precondition(format!(
            "a·b = {} but p = {} in {base}",
            base.format(base.mul(a, b)),
            base.format(base.from_int(p as i64))
        )));
    }
    let alg = Algebra::new(base, vec!["t".into()], vec![p], vec![RawPoly::new(vec![(vec![1], a)])])?;
    let a2 = Algebra::tensor_power(&alg, 2)?;
    let (t1, t2) = (AlgElem::gen(&a2, 0), AlgElem::gen(&a2, 1));
    let d = &(&t1 + &t2) + &wp_polynomial(p, &t1, &t2)?.scale(b);
    let name = format!("OT(a={},b={})", base.format(a), base.format(b));
    Hopf::new(name, alg, vec![d], vec![Scalar::ZERO], None)?.completed()
}

/// `H̃_a`: the law of `G_{p^{m−1}}` twisted by `a·π·W_p(x⊗1, 1⊗x)`.
pub fn tilde_h(base: BaseRing, m: u32, a: Scalar) -> Result<Hopf> {
    if base.is_field() || base.length() != 2 {
        return Err(Error::Precondition(format!("{base} has no square-zero π ≠ 0")));
    }
    let p = base.p();
    let lambda = (p as u64).pow(m - 1);
    let alg = g_lambda_algebra(base, m)?;
    let (comul, s) = semidirect_law(&alg, lambda, a)?;
    Hopf::new(
        format!("H_tilde(p={p},m={m},a={})", base.format(a)),
        alg,
        comul,
        vec![Scalar::ZERO; 2],
        Some(s),
    )
}

fn check_unit(u: u64, p: u32) -> Result<()> {
    if u % p as u64 == 0 {
        Err(Error::Precondition(format!("u = {u} is divisible by p = {p}")))
    } else {
        Ok(())
    }
}

/// `ψ_u : y ↦ (1+y)^u − 1` on `μ_{p^m}`.
pub fn psi_u(base: BaseRing, m: u32, u: u64) -> Result<HopfMorphism> {
    check_unit(u, base.p())?;
    let g: HopfRef = Arc::new(mu(base, m)?);
    let y = g.gen(0);
    let img = &one_plus(&y).pow(u) - &AlgElem::one(g.algebra());
    HopfMorphism::new(g.clone(), g, vec![img])
}

/// The isomorphism `G_{λu} → G_λ`, as the algebra map `O(G_λ) → O(G_{λu})`
/// with `x ↦ x`, `y ↦ (1+y)^u − 1`.
pub fn units_iso(params: CatalogParams, u: u64) -> Result<HopfMorphism> {
    check_unit(u, params.p())?;
    let target_lambda = params.lambda * (u % params.order_mu()) % params.order_mu();
    let source: HopfRef = Arc::new(g_lambda(params)?);
    let target: HopfRef = Arc::new(g_lambda(CatalogParams::new(params.base, params.m, target_lambda)?)?);
    let (x, y) = (target.gen(0), target.gen(1));
    let img = &one_plus(&y).pow(u) - &AlgElem::one(target.algebra());
    HopfMorphism::new(source, target, vec![x, img])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> BaseRing {
        BaseRing::prime_field(p).unwrap()
    }

    fn params(p: u32, m: u32, l: u64) -> CatalogParams {
        CatalogParams::new(fp(p), m, l).unwrap()
    }

    #[test]
    fn standard_groups_pass_axioms() {
        for p in [2, 3, 5] {
            let a = alpha_p(fp(p)).unwrap();
            assert_eq!(a.order(), p as u64);
            assert!(a.check_axioms().all_pass());
            assert!(a.is_killed_by(p as u64));
            assert_eq!(a.antipode().unwrap()[0], a.gen(0).neg());
            let g = mu(fp(p), 2).unwrap();
            assert!(g.check_axioms().all_pass());
            assert_eq!(g.exponent().unwrap(), 2);
        }
        let g = g_lambda(params(2, 1, 1)).unwrap();
        assert!(g.check_axioms().all_pass());
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn corrupted_law_fails_antipode_only() {
        let g = g_lambda(params(2, 1, 1)).unwrap();
        let a2 = g.square().clone();
        let mut comul = g.comul().to_vec();
        comul[0] = AlgElem::gen(&a2, 0);
        let bad = Hopf::new("bad", g.algebra().clone(), comul, vec![Scalar::ZERO; 2], g.antipode().map(|s| s.to_vec()))
            .unwrap();
        let rep = bad.check_axioms();
        assert!(rep.coassociative.pass);
        assert!(!rep.antipode_left.pass);
    }

    #[test]
    fn solved_antipode_matches_closed_form() {
        let g = g_lambda(params(3, 1, 2)).unwrap();
        let bare = Hopf::new("g", g.algebra().clone(), g.comul().to_vec(), g.counit().to_vec(), None).unwrap();
        assert_eq!(bare.solve_antipode().unwrap(), g.antipode().unwrap().to_vec());
    }

    #[test]
    fn killed_by_examples() {
        assert!(g_lambda(params(2, 2, 2)).unwrap().is_killed_by(4));
        assert!(!g_lambda(params(2, 2, 1)).unwrap().is_killed_by(4));
        let g1 = g_lambda(params(2, 1, 1)).unwrap();
        assert!(!g1.is_killed_by(2));
        assert!(g1.is_killed_by(4));
        assert!(!g1.is_killed_by(1));
        assert_eq!(g1.exponent().unwrap(), 2);
        assert_eq!(g_lambda(params(2, 2, 2)).unwrap().exponent().unwrap(), 2);
        let two = g1.mult_by_n(2);
        assert_eq!(two[0].to_string(), "x*y");
        assert!(two[1].is_zero());
    }

    #[test]
    fn closed_form_examples() {
        let (a, b) = closed_form_power(params(2, 1, 1), 1).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("x*y".into(), "0".into()));
        let (a, b) = closed_form_power(params(2, 2, 2), 2).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let (a, b) = closed_form_power(params(3, 1, 1), 0).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("x".into(), "y".into()));
    }

    #[test]
    fn oort_tate_examples() {
        let z4 = BaseRing::zmod(2, 2).unwrap();
        let g = oort_tate(z4, z4.from_int(2), z4.from_int(1)).unwrap();
        assert!(g.check_axioms().all_pass());
        let g = oort_tate(z4, z4.from_int(1), z4.from_int(2)).unwrap();
        assert!(g.check_axioms().all_pass());
        let r = BaseRing::fp_pi(3, 2).unwrap();
        let g = oort_tate(r, Scalar::ZERO, Scalar::ZERO).unwrap();
        let alpha = alpha_p(r).unwrap();
        assert_eq!(g.comul()[0].to_string().replace('t', "x"), alpha.comul()[0].to_string());
        assert!(oort_tate(z4, z4.from_int(1), z4.from_int(1)).is_err());
    }

    #[test]
    fn tilde_h_examples() {
        let r = BaseRing::fp_pi(2, 2).unwrap();
        let h = tilde_h(r, 1, Scalar::ONE).unwrap();
        assert_eq!(h.comul()[0].to_string(), "x@2 + y@1*x@2 + x@1 + pi*x@1*x@2");
        let h0 = tilde_h(r, 2, Scalar::ZERO).unwrap();
        assert!(h0.check_axioms().all_pass());
        let g = g_lambda(CatalogParams::new(r, 2, 2).unwrap()).unwrap();
        assert_eq!(h0.comul(), g.comul());
        assert!(tilde_h(fp(2), 1, Scalar::ONE).is_err());
    }

    #[test]
    fn twisted_law_is_not_coassociative() {
        // (Δ⊗id)Δ(x) - (id⊗Δ)Δ(x) = aπ·x⊗y⊗x for p = 2, m = 1
        let r = BaseRing::fp_pi(2, 2).unwrap();
        let rep = tilde_h(r, 1, Scalar::ONE).unwrap().check_axioms();
        assert!(rep.well_defined.pass && rep.counit_left.pass && rep.counit_right.pass);
        assert!(!rep.coassociative.pass);
        assert!(rep.coassociative.witness.unwrap().ends_with("pi*x@1*y@2*x@3"));
        let r3 = BaseRing::fp_pi(3, 2).unwrap();
        assert!(!tilde_h(r3, 1, Scalar::ONE).unwrap().check_axioms().coassociative.pass);
    }

    #[test]
    fn psi_and_units_isos() {
        let f2 = fp(2);
        let psi = psi_u(f2, 2, 3).unwrap();
        assert_eq!(psi.images[0].to_string(), "y + y^2 + y^3");
        assert!(psi.check().is_isomorphism());
        assert!(psi_u(f2, 2, 1).unwrap().check().is_isomorphism());
        assert!(psi_u(f2, 2, 2).is_err());
        let iso = units_iso(params(2, 2, 1), 3).unwrap();
        assert_eq!(iso.target.name(), "G_lambda(p=2,m=2,lambda=3)");
        assert!(iso.check().is_isomorphism());
        assert!(units_iso(params(3, 1, 1), 2).unwrap().check().is_isomorphism());
    }

    #[test]
    fn params_range() {
        assert!(CatalogParams::new(fp(2), 2, 4).is_err());
        assert!(CatalogParams::new(fp(2), 2, 0).is_err());
        assert_eq!(params(3, 2, 6).v(), 1);
        assert!(params(3, 2, 6).is_family_case());
    }
}
