//! Infinitesimal deformations of `G_λ` over `R` with `π² = 0`.
//!
//! A datum `(f, g, h₁, h₂)` lives in the π-free model `k[x,y]/(x^p, y^{p^m})`
//! and describes
//! `A = R[x,y]/(x^p − πf, y^{p^m} − πg)` with law
//! `(x'(1+y)^λ + x + πh₁, y + y' + yy' + πh₂)`.
//! Since `π² = 0` and `pπ = 0`, every compatibility condition between two
//! such structures that agree mod `π` is affine-linear over `k`, which is
//! what the isomorphism solver exploits.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{wp_polynomial, AlgElem, Algebra, AlgebraRef, RawPoly};
use crate::catalog::{g_lambda, g_lambda_algebra, CatalogParams};
use crate::cohomology::{self, adjoint_rep, cochain_from, cochain_parts, vbar_rep, Cohomology, Comodule, Complex};
use crate::error::{Error, Result};
use crate::hopf::{AxiomReport, Hopf, HopfMorphism, HopfRef};
use crate::linalg::{Echelon, SparseVec};
use crate::quotient::{is_free_over, quotient_subalgebra, Convention};
use crate::ring::{BaseRing, Scalar};

fn one_plus(e: &AlgElem) -> AlgElem {
    &AlgElem::one(e.algebra()) + e
}

/// `π·e` for `e` over the residue field, read index by index in `target`.
pub fn pi_lift(e: &AlgElem, target: &AlgebraRef) -> AlgElem {
    let base = target.base();
    AlgElem::from_index_terms(target, e.index_terms().map(|(i, c)| (i, base.pi_times(c.0))).collect::<Vec<_>>())
}

/// `e/π` for `e ∈ πA`, read index by index in the model `target`.
fn pi_divide(e: &AlgElem, target: &AlgebraRef) -> Result<AlgElem> {
    let base = e.base();
    let terms = e
        .index_terms()
        .map(|(i, c)| {
            base.pi_part(c)
                .map(|r| (i, Scalar(r)))
                .ok_or_else(|| Error::ReductionMismatch(format!("coefficient {} is not in πR", base.format(c))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgElem::from_index_terms(target, terms))
}

/// Partial derivative in an algebra with zero tails.
fn partial(e: &AlgElem, var: usize) -> AlgElem {
    let alg = e.algebra();
    let base = alg.base();
    let terms: Vec<(u64, Scalar)> = e
        .terms()
        .filter_map(|(m, c)| {
            let a = m.0[var];
            if a == 0 {
                return None;
            }
            let mut ex = m.0.clone();
            ex[var] -= 1;
            Some((alg.encode(&ex), base.mul(c, base.from_int(a as i64))))
        })
        .collect();
    AlgElem::from_index_terms(alg, terms)
}

/// The reduction of a presentation modulo the maximal ideal.
pub fn reduction(g: &Hopf) -> Result<Hopf> {
    let alg = g.algebra().residue()?;
    let a2 = Algebra::tensor_power(&alg, 2)?;
    let base = g.algebra().base();
    let comul = g.comul().iter().map(|c| c.residue(&a2)).collect::<Result<Vec<_>>>()?;
    let counit = g.counit().iter().map(|c| Scalar(base.residue(*c))).collect();
    Hopf::new(format!("{} mod m", g.name()), alg, comul, counit, None)?.completed()
}

#[derive(Clone, Debug)]
pub struct DeformationDatum {
    pub base: BaseRing,
    /// Parameters over the residue field.
    pub params: CatalogParams,
    pub model: AlgebraRef,
    pub model2: AlgebraRef,
    pub f: AlgElem,
    pub g: AlgElem,
    pub h1: AlgElem,
    pub h2: AlgElem,
}

impl DeformationDatum {
    pub fn trivial(base: BaseRing, params: CatalogParams) -> Result<Self> {
        if base.length() != 2 {
            return Err(Error::Precondition(format!("{base} is not an Artin ring with π² = 0, π ≠ 0")));
        }
        let params = CatalogParams::new(base.residue_field(), params.m, params.lambda)?;
        let model = g_lambda_algebra(params.base, params.m)?;
        let model2 = Algebra::tensor_power(&model, 2)?;
        Ok(DeformationDatum {
            base,
            params,
            f: AlgElem::zero(&model),
            g: AlgElem::zero(&model),
            h1: AlgElem::zero(&model2),
            h2: AlgElem::zero(&model2),
            model,
            model2,
        })
    }

    pub fn new(base: BaseRing, params: CatalogParams, f: AlgElem, g: AlgElem, h1: AlgElem, h2: AlgElem) -> Result<Self> {
        let mut d = DeformationDatum::trivial(base, params)?;
        d.f = f.transport(&d.model)?;
        d.g = g.transport(&d.model)?;
        d.h1 = h1.transport(&d.model2)?;
        d.h2 = h2.transport(&d.model2)?;
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        if !self.f.constant_term().is_zero() || !self.g.constant_term().is_zero() {
            return Err(Error::Precondition("f and g must vanish at the identity".into()));
        }
        let z = AlgElem::zero(&self.model2);
        let gens: Vec<AlgElem> = (0..4).map(|i| AlgElem::gen(&self.model2, i)).collect();
        let left = [gens[0].clone(), gens[1].clone(), z.clone(), z.clone()];
        let right = [z.clone(), z, gens[2].clone(), gens[3].clone()];
        for (name, h) in [("h1", &self.h1), ("h2", &self.h2)] {
            if !h.substitute(&left, &self.model2)?.is_zero() || !h.substitute(&right, &self.model2)?.is_zero() {
                return Err(Error::Precondition(format!("{name} violates the neutral-element condition")));
            }
        }
        Ok(())
    }

    /// `R[x,y]/(x^p − πf, y^{p^m} − πg)`.
    pub fn algebra(&self) -> Result<AlgebraRef> {
        let tail = |e: &AlgElem| {
            RawPoly::new(e.terms().map(|(m, c)| (m.0, self.base.pi_times(c.0))).collect())
        };
        Algebra::new(
            self.base,
            self.model.names().to_vec(),
            self.model.bounds().to_vec(),
            vec![tail(&self.f), tail(&self.g)],
        )
    }

    pub fn label(&self) -> String {
        format!("f={}; g={}; h1={}; h2={}", self.f, self.g, self.h1, self.h2)
    }
}

/// Builds the candidate presentation and runs the axiom checks.
pub fn assemble(d: &DeformationDatum) -> Result<(Hopf, AxiomReport)> {
    let alg = d.algebra()?;
    let a2 = Algebra::tensor_power(&alg, 2)?;
    let (x1, y1, x2, y2) = (AlgElem::gen(&a2, 0), AlgElem::gen(&a2, 1), AlgElem::gen(&a2, 2), AlgElem::gen(&a2, 3));
    let dx = &(&(&one_plus(&y1).pow(d.params.lambda) * &x2) + &x1) + &pi_lift(&d.h1, &a2);
    let dy = &(&(&y1 + &y2) + &(&y1 * &y2)) + &pi_lift(&d.h2, &a2);
    let name = format!("deformation(p={},m={},lambda={})", d.params.p(), d.params.m, d.params.lambda);
    let h = Hopf::new(name, alg, vec![dx, dy], vec![Scalar::ZERO; 2], None)?;
    let h = match h.solve_antipode() {
        Ok(s) => h.with_antipode(s)?,
        Err(_) => h,
    };
    let report = h.check_axioms();
    Ok((h, report))
}

/// Residuals of `f(Δx, Δy) = f ⊗ 1 + (1+y)^{λp}·(1 ⊗ f)` and
/// `g(Δx, Δy) = g ⊗ 1 + 1 ⊗ g` in the doubled model.
pub fn closure_residuals(d: &DeformationDatum) -> Result<(AlgElem, AlgElem)> {
    let a2 = &d.model2;
    let (x1, y1, x2, y2) = (AlgElem::gen(a2, 0), AlgElem::gen(a2, 1), AlgElem::gen(a2, 2), AlgElem::gen(a2, 3));
    let law = [&(&one_plus(&y1).pow(d.params.lambda) * &x2) + &x1, &(&y1 + &y2) + &(&y1 * &y2)];
    let slot1 = [x1, y1.clone()];
    let slot2 = [x2, y2];
    let twist = one_plus(&y1).pow(d.params.lambda * d.params.p() as u64);
    let at = |e: &AlgElem, imgs: &[AlgElem]| e.substitute(imgs, a2);
    let r1 = &(&at(&d.f, &law)? - &at(&d.f, &slot1)?) - &(&twist * &at(&d.f, &slot2)?);
    let r2 = &(&at(&d.g, &law)? - &at(&d.g, &slot1)?) - &at(&d.g, &slot2)?;
    Ok((r1, r2))
}

/// Coefficient of `x^{p−1}x'` in `γW_p(x,x') − f(x+x',0) + f(x,0) + f(x',0)`
/// over a base with `γ = p/π` (so `ℤ/p²`, where `γ = 1`).
pub fn char_obstruction(base: BaseRing, f: &AlgElem) -> Result<Scalar> {
    let gamma = base.gamma().ok_or_else(|| Error::Precondition(format!("{base} has no square-zero π")))?;
    let p = base.p();
    let alg = f.algebra();
    if alg.ngens() == 0 || alg.names()[0] != "x" {
        return Err(Error::Precondition("f must be a polynomial in x (and y)".into()));
    }
    if alg.bounds()[0] > p || f.terms().any(|(m, _)| m.0[0] >= p) {
        return Err(Error::OutOfRange(format!("deg_x f must be at most {}", p - 1)));
    }
    let a2 = Algebra::tensor_power(alg, 2)?;
    let k = alg.ngens();
    let zero = AlgElem::zero(&a2);
    let slot = |s: usize| -> Vec<AlgElem> {
        (0..k).map(|i| if i == 0 { AlgElem::gen(&a2, s * k) } else { zero.clone() }).collect()
    };
    let sum: Vec<AlgElem> = (0..k)
        .map(|i| if i == 0 { &AlgElem::gen(&a2, 0) + &AlgElem::gen(&a2, k) } else { zero.clone() })
        .collect();
    let fb = f.base();
    let e = &(&f.substitute(&slot(0), &a2)? + &f.substitute(&slot(1), &a2)?) - &f.substitute(&sum, &a2)?;
    let mut exps = vec![0u32; 2 * k];
    exps[0] = p - 1;
    exps[k] = 1;
    let cf = Scalar(fb.residue(e.coefficient_index(a2.encode(&exps))));
    Ok(base.add(gamma, base.lift_residue(cf.0)))
}

/// `F̄ = (f, g)` as a 1-cochain in `C¹(G_λ, V̄)`.
pub fn extract_cocycle(d: &DeformationDatum) -> Result<(Comodule, SparseVec)> {
    let (r1, r2) = closure_residuals(d)?;
    if !r1.is_zero() || !r2.is_zero() {
        return Err(Error::Precondition(format!("closure residuals are nonzero: ({r1}, {r2})")));
    }
    let v = vbar_rep(d.params)?;
    let parts = [d.f.transport(v.hopf.algebra())?, d.g.transport(v.hopf.algebra())?];
    let c = cochain_from(&parts, 1, v.hopf.algebra().dim());
    if !Complex::new(&v)?.is_cocycle(1, &c) {
        return Err(Error::Precondition("F̄ is not a cocycle".into()));
    }
    Ok((v, c))
}

/// `(c, d)` with `F̄ = d⁰(c e_1 + d e_2)`; `d = 0` canonically.
pub fn solve_coboundary(v: &Comodule, cochain: &SparseVec) -> Result<(u32, u32)> {
    let cx = Complex::new(v)?;
    let pre = cx
        .coboundary_preimage(1, cochain, u64::MAX)?
        .ok_or_else(|| Error::NoSolution("cocycle is not a coboundary".into()))?;
    Ok((pre.get(&0).copied().unwrap_or(0), pre.get(&1).copied().unwrap_or(0)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normality {
    /// Conjugates of points of `N` stay in `N`.
    pub normal: bool,
    /// The restricted law of `N` passes the axioms.
    pub subgroup_axioms: bool,
    pub witness: Option<String>,
}

impl Normality {
    pub fn holds(&self) -> bool {
        self.normal && self.subgroup_axioms
    }
}

/// Checks that `N = V(gens not in keep)` is a normal subgroup scheme.
pub fn conjugation_factors_through(g: &Hopf, keep: &[usize]) -> Result<Normality> {
    let k = g.algebra().ngens();
    let killed: Vec<usize> = (0..k).filter(|i| !keep.contains(i)).collect();
    let conj = cohomology::conjugation(g)?;
    let a2 = g.square();
    let zero = AlgElem::zero(a2);
    let images: Vec<AlgElem> = g
        .slot_gens(0, a2)
        .into_iter()
        .chain(g.slot_gens(1, a2).into_iter().enumerate().map(|(i, e)| if killed.contains(&i) { zero.clone() } else { e }))
        .collect();
    let mut witness = None;
    for &i in &killed {
        let c = conj[i].substitute(&images, a2)?;
        if !c.is_zero() {
            witness = Some(format!("{}-coordinate of g n g^-1 is {c}", g.algebra().names()[i]));
            break;
        }
    }
    let (subgroup_axioms, sub_witness) = match cohomology::subgroup(g, &killed) {
        Ok((h, _)) => {
            let r = h.check_axioms();
            (r.all_pass(), r.first_failure())
        }
        Err(e) => (false, Some(e.to_string())),
    };
    Ok(Normality { normal: witness.is_none(), subgroup_axioms, witness: witness.or(sub_witness) })
}

/// `J_ij(g, h) = ∂μ_i(a, gh)/∂a_j` at `a = e`: the left-translation
/// Jacobian at the product, over the residue field.
fn translation_jacobian(g0: &Hopf) -> Result<Vec<Vec<AlgElem>>> {
    let alg = g0.algebra();
    let a2 = g0.square();
    let d = alg.dim();
    let k = alg.ngens();
    let strides: Vec<u64> = (0..k).map(|j| alg.encode(&unit_exps(k, j))).collect();
    let mut out = vec![vec![AlgElem::zero(a2); k]; k];
    for i in 0..k {
        for j in 0..k {
            let terms: Vec<(u64, Scalar)> =
                g0.comul()[i].index_terms().filter(|(idx, _)| idx / d == strides[j]).map(|(idx, c)| (idx % d, c)).collect();
            out[i][j] = AlgElem::from_index_terms(alg, terms).substitute(g0.comul(), a2)?;
        }
    }
    Ok(out)
}

fn unit_exps(k: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    e[j] = 1;
    e
}

/// Solves `J c = b` over a commutative algebra, pivoting on units.
fn solve_over(mut j: Vec<Vec<AlgElem>>, mut rhs: Vec<AlgElem>) -> Result<Vec<AlgElem>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| j[r][col].inverse().is_some())
            .ok_or_else(|| Error::NoSolution("translation Jacobian is not invertible".into()))?;
        j.swap(col, piv);
        rhs.swap(col, piv);
        let inv = j[col][col].inverse().expect("unit pivot");
        j[col] = j[col].iter().map(|e| e * &inv).collect();
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !j[r][col].is_zero() {
                let f = j[r][col].clone();
                for c in 0..n {
                    j[r][c] = &j[r][c] - &(&f * &j[col][c]);
                }
                rhs[r] = &rhs[r] - &(&f * &rhs[col]);
            }
        }
    }
    Ok(rhs)
}

fn same_presentation(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    a.names() == b.names()
        && a.bounds() == b.bounds()
        && a.base() == b.base()
        && (0..a.ngens()).all(|i| a.tail(i) == b.tail(i))
}

/// `(Δ₁ − Δ₂)/π` transported back along left translation by the product:
/// a 2-cochain in `C²(G₀, V_ad)` where `G₀` is the common reduction.
pub fn group_law_difference(g1: &Hopf, g2: &Hopf) -> Result<(Comodule, SparseVec)> {
    if !same_presentation(g1.algebra(), g2.algebra()) {
        return Err(Error::ReductionMismatch("the two laws live on different algebras".into()));
    }
    let g0 = reduction(g2)?;
    let r1 = reduction(g1)?;
    if r1.comul() != g0.comul() {
        return Err(Error::ReductionMismatch("the laws differ modulo π".into()));
    }
    let g0: HopfRef = Arc::new(g0);
    let a2 = g0.square().clone();
    let diff = g1
        .comul()
        .iter()
        .zip(g2.comul())
        .map(|(a, b)| pi_divide(&(a - b), &a2))
        .collect::<Result<Vec<_>>>()?;
    let c = solve_over(translation_jacobian(&g0)?, diff)?;
    let ad = adjoint_rep(g0.clone())?;
    let cochain = cochain_from(&c, 2, g0.algebra().dim());
    Ok((ad, cochain))
}

/// Twists the law of `g` (over `R`) by `π·J·c` for a 2-cochain `c` of the
/// reduction with values in the adjoint representation.
pub fn law_twist(g: &Hopf, cochain: &SparseVec) -> Result<Hopf> {
    let g0: HopfRef = Arc::new(reduction(g)?);
    let jac = translation_jacobian(&g0)?;
    let k = g0.algebra().ngens();
    let parts = cochain_parts(cochain, k, 2, g0.square());
    let comul = (0..k)
        .map(|i| {
            let mut s = AlgElem::zero(g0.square());
            for j in 0..k {
                s = &s + &(&jac[i][j] * &parts[j]);
            }
            Ok(&g.comul()[i] + &pi_lift(&s, g.square()))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = Hopf::new(format!("{}+twist", g.name()), g.algebra().clone(), comul, g.counit().to_vec(), None)?;
    Ok(match h.solve_antipode() {
        Ok(s) => h.with_antipode(s)?,
        Err(_) => h,
    })
}

/// Subtracts `d¹(c(e,e) ⊗ 1)` so that the cocycle vanishes when either
/// argument is the identity.
pub fn normalize_cocycle(cx: &Complex, cochain: &SparseVec) -> SparseVec {
    let v = cx.comodule();
    let d = v.hopf.algebra().dim();
    let mut b = SparseVec::new();
    for j in 0..v.rank() as u64 {
        if let Some(&x) = cochain.get(&(j * d * d)) {
            b.insert(j * d, x);
        }
    }
    let db = cx.apply(1, &b);
    let f = crate::linalg::Fp::new(cx.field());
    let mut out = cochain.clone();
    crate::linalg::axpy(f, &mut out, f.neg(1), &db);
    out
}

/// Searches for `x_i ↦ x_i + π·w_i` (identity mod π) as an isomorphism
/// `O(G₁) → O(G₂)`; every constraint is affine-linear in the coefficients
/// of the `w_i`.
pub fn infinitesimal_iso(g1: &HopfRef, g2: &HopfRef) -> Result<Option<HopfMorphism>> {
    let (a1, a2) = (g1.algebra(), g2.algebra());
    if a1.names() != a2.names() || a1.bounds() != a2.bounds() || a1.base() != a2.base() {
        return Err(Error::ReductionMismatch("different generators or base rings".into()));
    }
    let base = a2.base();
    if base.length() != 2 {
        return Err(Error::Precondition(format!("{base} is not an Artin ring with π² = 0, π ≠ 0")));
    }
    let r1 = reduction(g1)?;
    let g0 = reduction(g2)?;
    if r1.comul() != g0.comul() || g1.counit() != g2.counit() {
        return Err(Error::ReductionMismatch("the presentations differ modulo π".into()));
    }
    for i in 0..a1.ngens() {
        if !a1.tail_elem(i).residue(g0.algebra())?.is_zero() || !a2.tail_elem(i).residue(g0.algebra())?.is_zero() {
            return Err(Error::ReductionMismatch("relations are not truncations modulo π".into()));
        }
    }
    // relation compatibility is independent of w: (x + πw)^{p^j} = x^{p^j}
    if (0..a1.ngens()).any(|i| a1.tail(i) != a2.tail(i)) {
        return Ok(None);
    }
    let k = a1.ngens();
    let d = a1.dim();
    let m2 = g0.square();
    let dd = m2.dim();
    let p = base.p();
    let col_of = |e: &AlgElem, out: &mut SparseVec, block: usize| {
        for (i, c) in e.index_terms() {
            out.insert(block as u64 * dd + i, c.0);
        }
    };
    let mut target = SparseVec::new();
    for i in 0..k {
        col_of(&pi_divide(&(&g1.comul()[i] - &g2.comul()[i]), m2)?, &mut target, i);
    }
    let partials: Vec<Vec<[AlgElem; 2]>> = (0..k)
        .map(|row| (0..k).map(|i| [partial(&g0.comul()[row], i), partial(&g0.comul()[row], k + i)]).collect())
        .collect();
    let mut ech = Echelon::new(p);
    let mut unknowns = Vec::new();
    for i in 0..k {
        for t in 1..d {
            let mono = AlgElem::from_index_terms(g0.algebra(), [(t, Scalar::ONE)]);
            let at1 = g0.embed(&mono, &[0], m2);
            let at2 = g0.embed(&mono, &[1], m2);
            let mut col = SparseVec::new();
            for (row, part) in partials.iter().enumerate() {
                let mut e = &(&part[i][0] * &at1) + &(&part[i][1] * &at2);
                e = e.neg();
                if row == i {
                    e = &e + &g0.apply_comul(&mono)?;
                }
                col_of(&e, &mut col, row);
            }
            ech.insert(col, unknowns.len() as u64);
            unknowns.push((i, t));
        }
    }
    let Some(sol) = ech.preimage(&target) else { return Ok(None) };
    let mut w = vec![AlgElem::zero(g0.algebra()); k];
    for (tag, x) in sol {
        let (i, t) = unknowns[tag as usize];
        w[i] = &w[i] + &AlgElem::from_index_terms(g0.algebra(), [(t, Scalar(x))]);
    }
    let images = (0..k).map(|i| &AlgElem::gen(a2, i) + &pi_lift(&w[i], a2)).collect();
    let phi = HopfMorphism::new(g1.clone(), g2.clone(), images)?;
    if !phi.check().is_isomorphism() {
        return Err(Error::NoSolution("solver output failed verification".into()));
    }
    Ok(Some(phi))
}

/// Deformation of `μ_{p^m}`: `R[y]/(y^{p^m} − πg)` with `Δy = y+y'+yy' + πh`.
pub fn assemble_mu(base: BaseRing, m: u32, g: &AlgElem, h: &AlgElem) -> Result<Hopf> {
    let p = base.p();
    let tail = RawPoly::new(g.terms().map(|(mo, c)| (mo.0, base.pi_times(c.0))).collect());
    let alg = Algebra::new(base, vec!["y".into()], vec![p.pow(m)], vec![tail])?;
    let a2 = Algebra::tensor_power(&alg, 2)?;
    let (y1, y2) = (AlgElem::gen(&a2, 0), AlgElem::gen(&a2, 1));
    let dy = &(&(&y1 + &y2) + &(&y1 * &y2)) + &pi_lift(h, &a2);
    let hh = Hopf::new(format!("mu_{p}^{m} deformation"), alg, vec![dy], vec![Scalar::ZERO], None)?;
    Ok(match hh.solve_antipode() {
        Ok(s) => hh.with_antipode(s)?,
        Err(_) => hh,
    })
}

#[derive(Clone, Debug)]
pub struct MuRigidity {
    pub axioms_pass: bool,
    pub iso: Option<HopfMorphism>,
}

/// Tries to trivialize a μ-deformation against the base change of `μ_{p^m}`.
pub fn mu_rigidity_check(base: BaseRing, m: u32, g: &AlgElem, h: &AlgElem) -> Result<MuRigidity> {
    let cand: HopfRef = Arc::new(assemble_mu(base, m, g, h)?);
    let axioms_pass = cand.check_axioms().all_pass();
    if !axioms_pass {
        return Ok(MuRigidity { axioms_pass, iso: None });
    }
    let zero_g = AlgElem::zero(g.algebra());
    let zero_h = AlgElem::zero(h.algebra());
    let trivial: HopfRef = Arc::new(assemble_mu(base, m, &zero_g, &zero_h)?);
    Ok(MuRigidity { axioms_pass, iso: infinitesimal_iso(&cand, &trivial)? })
}

/// Driver enumeration of μ-deformation data `(g, h)` in the model:
/// `g = 0` with `h` a normalized coboundary twist `(1+Δy)·(b⊗1 + 1⊗b − Δb)`
/// for `b = y^i`, plus sums of two such.
pub fn mu_deformation_data(p: u32, m: u32) -> Result<Vec<(AlgElem, AlgElem)>> {
    let k = BaseRing::prime_field(p)?;
    let mu0 = crate::catalog::mu(k, m)?;
    let a = mu0.algebra().clone();
    let a2 = mu0.square().clone();
    let n = p.pow(m) as u64;
    let dy = &mu0.comul()[0];
    let jac = one_plus(dy);
    let twist = |i: u64| -> Result<AlgElem> {
        let b = AlgElem::gen(&a, 0).pow(i);
        let cob = &(&mu0.embed(&b, &[0], &a2) + &mu0.embed(&b, &[1], &a2)) - &mu0.apply_comul(&b)?;
        Ok(&jac * &cob)
    };
    let singles = (1..n).map(twist).collect::<Result<Vec<_>>>()?;
    let mut out = vec![(AlgElem::zero(&a), AlgElem::zero(&a2))];
    for (i, h) in singles.iter().enumerate() {
        out.push((AlgElem::zero(&a), h.clone()));
        if let Some(h2) = singles.get(i + 1) {
            out.push((AlgElem::zero(&a), h + h2));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    MatchesPaper,
    Deviates,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidateKind {
    Trivial,
    /// `f = c·[(1+y)^{λp} − 1]`.
    AlgebraTwist { c: u32 },
    /// `h₁ = a·W_p(x, x')`.
    WpLawTwist { a: u32 },
    /// Law twist by `s` times the `class`-th representative of `H²(G_λ, V_ad)`.
    CohomologyTwist { class: usize, scale: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSummary {
    pub convention: String,
    pub generators: usize,
    pub length: usize,
    pub free: bool,
    pub closed_under_mul: bool,
    pub comul_stable: bool,
    pub a_free_over_b: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateVerdict {
    pub candidate: CandidateKind,
    pub datum: String,
    pub axioms: BTreeMap<String, bool>,
    pub axiom_witness: Option<String>,
    pub reduces_to_g_lambda: bool,
    pub closure_residuals_vanish: bool,
    pub killed_by_order: Option<bool>,
    pub killed_by_p_m: Option<bool>,
    pub quotients: Vec<QuotientSummary>,
    pub normal_subgroup: Option<bool>,
    pub iso_to_trivial: Option<bool>,
    pub predicted: String,
    pub observed: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseVerdict {
    pub p: u32,
    pub m: u32,
    pub lambda: u64,
    pub base: String,
    pub v: u32,
    /// "i" when `v ≠ m−1`, "ii" otherwise.
    pub case: String,
    pub h2_adjoint_dim: Option<usize>,
    pub predicted_law_classes: u64,
    /// Isomorphism classes among axiom-passing law twists on the undeformed algebra.
    pub observed_law_classes: Option<u64>,
    pub axiom_passing_candidates: usize,
    pub status: Status,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub claim_id: String,
    pub parameters: BTreeMap<String, String>,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub case: CaseVerdict,
    pub candidates: Vec<CandidateVerdict>,
    pub deviations: Vec<Deviation>,
}

/// A deformation candidate assembled by the classification driver.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub kind: CandidateKind,
    pub datum: DeformationDatum,
    pub hopf: Hopf,
    pub report: AxiomReport,
}

fn summarize(report: &AxiomReport) -> BTreeMap<String, bool> {
    report.checks().iter().map(|(n, c)| (n.to_string(), c.pass)).collect()
}

fn quotient_summaries(g: &Hopf) -> Vec<QuotientSummary> {
    let p = g.algebra().bounds()[0];
    [Convention::Left, Convention::Right]
        .into_iter()
        .map(|conv| match quotient_subalgebra(g, &[1], conv) {
            Ok(q) => {
                let xs: Vec<AlgElem> = (0..p).map(|i| g.gen(0).pow(i as u64)).collect();
                QuotientSummary {
                    convention: conv.label().into(),
                    generators: q.generators.len(),
                    length: q.structure.length,
                    free: q.structure.free,
                    closed_under_mul: q.closed_under_mul,
                    comul_stable: q.comul_stable,
                    a_free_over_b: is_free_over(&q.generators, &xs).unwrap_or(false),
                    error: None,
                }
            }
            Err(e) => QuotientSummary {
                convention: conv.label().into(),
                generators: 0,
                length: 0,
                free: false,
                closed_under_mul: false,
                comul_stable: false,
                a_free_over_b: false,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

fn union_find_classes(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count() as u64
}

/// Every candidate the driver considers: the trivial datum, algebra twists,
/// `a·W_p` law twists and, when `H²(G_λ, V_ad)` fits in the budget, twists
/// by its classes.
pub fn candidates(base: BaseRing, params: CatalogParams, budget: u64) -> Result<Vec<Candidate>> {
    Ok(enumerate(base, params, budget)?.0)
}

fn enumerate(base: BaseRing, params: CatalogParams, budget: u64) -> Result<(Vec<Candidate>, Option<Cohomology>)> {
    let trivial = DeformationDatum::trivial(base, params)?;
    let params = trivial.params;
    let p = params.p();
    let mut data: Vec<(CandidateKind, DeformationDatum)> = vec![(CandidateKind::Trivial, trivial.clone())];

    let y = AlgElem::gen(&trivial.model, 1);
    let shape = &one_plus(&y).pow(params.lambda * p as u64) - &AlgElem::one(&trivial.model);
    for c in 1..p {
        let mut d = trivial.clone();
        d.f = shape.scale(Scalar(c));
        data.push((CandidateKind::AlgebraTwist { c }, d));
    }
    let m2 = &trivial.model2;
    let w = wp_polynomial(p, &AlgElem::gen(m2, 0), &AlgElem::gen(m2, 2))?;
    for a in 1..p {
        let mut d = trivial.clone();
        d.h1 = w.scale(Scalar(a));
        data.push((CandidateKind::WpLawTwist { a }, d));
    }

    let g0: HopfRef = Arc::new(g_lambda(params)?);
    let ad = adjoint_rep(g0.clone())?;
    let cx = Complex::new(&ad)?;
    let h2 = cx.cohomology(2, budget).ok();

    let mut candidates: Vec<Candidate> = data
        .into_par_iter()
        .map(|(kind, datum)| {
            let (hopf, report) = assemble(&datum)?;
            Ok(Candidate { kind, datum, hopf, report })
        })
        .collect::<Result<Vec<_>>>()?;

    if let Some(h2) = &h2 {
        let base_hopf = candidates[0].hopf.clone();
        let twists: Vec<Candidate> = h2
            .report
            .representatives
            .iter()
            .enumerate()
            .flat_map(|(class, rep)| (1..p).map(move |s| (class, s, rep)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(class, scale, rep)| {
                let f = crate::linalg::Fp::new(p);
                let c = crate::linalg::scale(f, &normalize_cocycle(&cx, rep), scale);
                let hopf = law_twist(&base_hopf, &c)?;
                let report = hopf.check_axioms();
                let a2 = g0.square();
                let parts = cochain_parts(&c, 2, 2, a2);
                let mut datum = trivial.clone();
                let jac = translation_jacobian(&g0)?;
                let h: Vec<AlgElem> = (0..2)
                    .map(|i| &(&jac[i][0] * &parts[0]) + &(&jac[i][1] * &parts[1]))
                    .collect();
                datum.h1 = h[0].transport(&trivial.model2)?;
                datum.h2 = h[1].transport(&trivial.model2)?;
                Ok(Candidate { kind: CandidateKind::CohomologyTwist { class, scale }, datum, hopf, report })
            })
            .collect::<Result<Vec<_>>>()?;
        candidates.extend(twists);
    }
    Ok((candidates, h2))
}

/// Enumerates deformation candidates of `G_λ` over `base` and compares each
/// against the classification theorem's prediction.
pub fn classify(base: BaseRing, params: CatalogParams, budget: u64) -> Result<Classification> {
    let (candidates, h2) = enumerate(base, params, budget)?;
    let params = candidates[0].datum.params;
    let p = params.p();
    let family = params.is_family_case();
    let g0: HopfRef = Arc::new(g_lambda(params)?);

    let trivial_ref: HopfRef = Arc::new(candidates[0].hopf.clone());
    let order = (p as u64).pow(params.m + 1);
    let pm = params.order_mu();
    let verdicts: Vec<CandidateVerdict> = candidates
        .par_iter()
        .map(|cand| {
            let pass = cand.report.all_pass();
            let reduces = reduction(&cand.hopf).map(|r| r.comul() == g0.comul()).unwrap_or(false);
            let closure = closure_residuals(&cand.datum).map(|(a, b)| a.is_zero() && b.is_zero()).unwrap_or(false);
            let (killed_order, killed_pm, quotients, normal, iso) = if pass {
                let href: HopfRef = Arc::new(cand.hopf.clone());
                let iso = infinitesimal_iso(&href, &trivial_ref).ok().map(|o| o.is_some());
                (
                    Some(cand.hopf.is_killed_by(order)),
                    Some(cand.hopf.is_killed_by(pm)),
                    quotient_summaries(&cand.hopf),
                    conjugation_factors_through(&cand.hopf, &[0]).ok().map(|n| n.holds()),
                    iso,
                )
            } else {
                (None, None, Vec::new(), None, None)
            };
            let (predicted, observed, status) = judge(&cand.kind, family, pass, iso, &quotients);
            CandidateVerdict {
                candidate: cand.kind.clone(),
                datum: cand.datum.label(),
                axioms: summarize(&cand.report),
                axiom_witness: cand.report.first_failure(),
                reduces_to_g_lambda: reduces,
                closure_residuals_vanish: closure,
                killed_by_order: killed_order,
                killed_by_p_m: killed_pm,
                quotients,
                normal_subgroup: normal,
                iso_to_trivial: iso,
                predicted,
                observed,
                status,
            }
        })
        .collect();

    // isomorphism classes among axiom-passing law twists on the undeformed algebra
    let law_idx: Vec<usize> = candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| c.report.all_pass() && c.datum.f.is_zero() && c.datum.g.is_zero())
        .map(|(i, _)| i)
        .collect();
    let refs: Vec<HopfRef> = law_idx.iter().map(|&i| Arc::new(candidates[i].hopf.clone())).collect();
    let pairs: Vec<(usize, usize)> =
        (0..refs.len()).flat_map(|a| (a + 1..refs.len()).map(move |b| (a, b))).collect();
    let edges: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(a, b)| matches!(infinitesimal_iso(&refs[a], &refs[b]), Ok(Some(_))))
        .collect();
    let classes = (!base.is_field() && h2.is_some() && !refs.is_empty()).then(|| union_find_classes(refs.len(), &edges));

    let predicted_classes = if family { p as u64 } else { 1 };
    let axiom_passing = verdicts.iter().filter(|v| v.axioms.values().all(|b| *b)).count();
    let zmod = base.gamma() == Some(Scalar::ONE);
    let (case_status, note) = if zmod {
        if axiom_passing == 0 {
            (Status::MatchesPaper, "no axiom-passing datum over a base of characteristic p²".to_string())
        } else {
            (Status::Deviates, format!("{axiom_passing} axiom-passing data over a base of characteristic p²"))
        }
    } else {
        match classes {
            None => (Status::Undecided, "H²(G_λ, V_ad) not computed within the budget".to_string()),
            Some(c) if c == predicted_classes => {
                let wp_ok = verdicts
                    .iter()
                    .filter(|v| matches!(v.candidate, CandidateKind::WpLawTwist { .. }))
                    .all(|v| v.status == Status::MatchesPaper);
                if wp_ok {
                    (Status::MatchesPaper, format!("{c} isomorphism classes of law twists"))
                } else {
                    (Status::Deviates, format!("{c} isomorphism classes of law twists, but the a·W_p(x,x') twists are not group laws"))
                }
            }
            Some(c) => (Status::Deviates, format!("{c} isomorphism classes of law twists, {predicted_classes} predicted")),
        }
    };
    let case = CaseVerdict {
        p,
        m: params.m,
        lambda: params.lambda,
        base: base.to_string(),
        v: params.v(),
        case: if family { "ii".into() } else { "i".into() },
        h2_adjoint_dim: h2.as_ref().map(|h| h.report.dim),
        predicted_law_classes: if zmod { 0 } else { predicted_classes },
        observed_law_classes: classes,
        axiom_passing_candidates: axiom_passing,
        status: case_status,
        note,
    };
    let verdicts = if zmod { verdicts.into_iter().map(|v| rejudge_zmod(v)).collect() } else { verdicts };
    let mut deviations = Vec::new();
    let mut params_map = BTreeMap::new();
    params_map.insert("p".to_string(), p.to_string());
    params_map.insert("m".to_string(), params.m.to_string());
    params_map.insert("lambda".to_string(), params.lambda.to_string());
    params_map.insert("base".to_string(), base.to_string());
    if case.status == Status::Deviates {
        deviations.push(Deviation {
            claim_id: "classification.case".into(),
            parameters: params_map.clone(),
            expected: format!("case ({}) with {} law classes", case.case, case.predicted_law_classes),
            observed: case.note.clone(),
        });
    }
    for v in &verdicts {
        if v.status == Status::Deviates {
            let mut pm = params_map.clone();
            pm.insert("candidate".into(), serde_json::to_string(&v.candidate).unwrap_or_default());
            deviations.push(Deviation {
                claim_id: "classification.candidate".into(),
                parameters: pm,
                expected: v.predicted.clone(),
                observed: v.observed.clone(),
            });
        }
    }
    Ok(Classification { case, candidates: verdicts, deviations })
}

fn rejudge_zmod(mut v: CandidateVerdict) -> CandidateVerdict {
    let pass = v.axioms.values().all(|b| *b);
    v.predicted = "no deformation exists: p = 0 is forced in R".into();
    v.observed = if pass { "axioms pass".into() } else { "axioms fail".into() };
    v.status = if pass { Status::Deviates } else { Status::MatchesPaper };
    v
}

fn judge(
    kind: &CandidateKind,
    family: bool,
    pass: bool,
    iso: Option<bool>,
    quotients: &[QuotientSummary],
) -> (String, String, Status) {
    let iso_txt = match iso {
        Some(true) => "isomorphic to the trivial deformation",
        Some(false) => "not isomorphic to the trivial deformation",
        None => "isomorphism search not run",
    };
    let observed = if pass {
        let free = quotients.iter().map(|q| format!("{}: B free={}", q.convention, q.free)).collect::<Vec<_>>().join(", ");
        format!("axioms pass; {iso_txt}; {free}")
    } else {
        "axioms fail".to_string()
    };
    let (predicted, ok) = match kind {
        CandidateKind::Trivial => ("group scheme, the trivial deformation".to_string(), pass && iso == Some(true)),
        CandidateKind::AlgebraTwist { .. } => (
            "not a deformation: c = 0 is forced (B fails to be free)".to_string(),
            !pass || iso == Some(true),
        ),
        CandidateKind::WpLawTwist { .. } if family => {
            ("group scheme H̃_a, not isomorphic to the trivial deformation".to_string(), pass && iso == Some(false))
        }
        CandidateKind::WpLawTwist { .. } => {
            ("law trivial up to isomorphism".to_string(), !pass || iso == Some(true))
        }
        CandidateKind::CohomologyTwist { .. } if family => (
            "group scheme isomorphic to some H̃_a (h₂ = 0, h₁ ∈ ⟨W_p⟩)".to_string(),
            false,
        ),
        CandidateKind::CohomologyTwist { .. } => ("law trivial up to isomorphism".to_string(), pass && iso == Some(true)),
    };
    let status = if ok { Status::MatchesPaper } else { Status::Deviates };
    (predicted, observed, status)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::tilde_h;

    fn fp(p: u32) -> BaseRing {
        BaseRing::prime_field(p).unwrap()
    }

    fn r(p: u32) -> BaseRing {
        BaseRing::fp_pi(p, 2).unwrap()
    }

    fn params(p: u32, m: u32, l: u64) -> CatalogParams {
        CatalogParams::new(fp(p), m, l).unwrap()
    }

    #[test]
    fn trivial_datum_assembles() {
        let d = DeformationDatum::trivial(r(2), params(2, 1, 1)).unwrap();
        let (h, rep) = assemble(&d).unwrap();
        assert!(rep.all_pass());
        let g = g_lambda(CatalogParams::new(r(2), 1, 1).unwrap()).unwrap();
        assert_eq!(h.comul()[0].to_string(), g.comul()[0].to_string());
        assert!(DeformationDatum::trivial(fp(2), params(2, 1, 1)).is_err());
    }

    #[test]
    fn closure_examples() {
        let mut d = DeformationDatum::trivial(r(2), params(2, 1, 1)).unwrap();
        d.f = AlgElem::gen(&d.model, 0);
        let (r1, r2) = closure_residuals(&d).unwrap();
        assert_eq!(r1.to_string(), "y@1*x@2");
        assert!(r2.is_zero());
        let y = AlgElem::gen(&d.model, 1);
        for (p, m, l) in [(2, 2, 1), (3, 1, 1), (2, 2, 3)] {
            let mut d = DeformationDatum::trivial(r(p), params(p, m, l)).unwrap();
            let y = AlgElem::gen(&d.model, 1);
            d.f = &one_plus(&y).pow(l * p as u64) - &AlgElem::one(&d.model);
            let (r1, r2) = closure_residuals(&d).unwrap();
            assert!(r1.is_zero() && r2.is_zero());
        }
        let _ = y;
    }

    #[test]
    fn char_obstruction_is_one() {
        for p in [2, 3] {
            let z = BaseRing::zmod(p, 2).unwrap();
            let a = g_lambda_algebra(fp(p), 1).unwrap();
            assert_eq!(char_obstruction(z, &AlgElem::zero(&a)).unwrap(), Scalar::ONE);
            assert_eq!(char_obstruction(z, &AlgElem::gen(&a, 0)).unwrap(), Scalar::ONE);
            let x = AlgElem::gen(&a, 0);
            let f = &x.pow((p - 1) as u64) + &(&x * &AlgElem::gen(&a, 1));
            assert_eq!(char_obstruction(z, &f).unwrap(), Scalar::ONE);
        }
        let a = Algebra::truncated(fp(2), &["x"], &[4]).unwrap();
        assert!(char_obstruction(BaseRing::zmod(2, 2).unwrap(), &AlgElem::gen(&a, 0)).is_err());
    }

    #[test]
    fn coboundary_of_algebra_twist() {
        for (p, m, l) in [(2, 2, 1), (3, 1, 1), (2, 2, 3)] {
            let mut d = DeformationDatum::trivial(r(p), params(p, m, l)).unwrap();
            let y = AlgElem::gen(&d.model, 1);
            let shape = &one_plus(&y).pow(l * p as u64) - &AlgElem::one(&d.model);
            d.f = shape.clone();
            let (v, c) = extract_cocycle(&d).unwrap();
            if shape.is_zero() {
                assert_eq!(solve_coboundary(&v, &c).unwrap(), (0, 0));
            } else {
                assert_eq!(solve_coboundary(&v, &c).unwrap(), (1, 0));
                d.f = shape.scale(Scalar(p - 1));
                let (v, c) = extract_cocycle(&d).unwrap();
                assert_eq!(solve_coboundary(&v, &c).unwrap(), (p - 1, 0));
            }
        }
    }

    #[test]
    fn normality() {
        let g = g_lambda(CatalogParams::new(r(2), 2, 1).unwrap()).unwrap();
        assert!(conjugation_factors_through(&g, &[0]).unwrap().holds());
        let h = tilde_h(r(2), 1, Scalar::ONE).unwrap();
        assert!(conjugation_factors_through(&h, &[0]).unwrap().normal);
        let m = crate::catalog::mu(fp(3), 1).unwrap();
        assert!(conjugation_factors_through(&m, &[0]).unwrap().holds());
        // y-coordinate subgroup N = V(x) is not normal in G_λ
        let g = g_lambda(params(2, 1, 1)).unwrap();
        assert!(!conjugation_factors_through(&g, &[1]).unwrap().normal);
    }

    #[test]
    fn law_difference_and_twists() {
        let base = r(2);
        let pr = CatalogParams::new(base, 2, 2).unwrap();
        let g: HopfRef = Arc::new(g_lambda(pr).unwrap());
        let (ad, zero) = group_law_difference(&g, &g).unwrap();
        assert!(zero.is_empty());
        let g0 = reduction(&g).unwrap();
        let cx = Complex::new(&ad).unwrap();
        let h2 = cx.cohomology(2, cohomology::DEFAULT_BUDGET).unwrap();
        assert_eq!(h2.report.dim, 1);
        let rep = normalize_cocycle(&cx, &h2.report.representatives[0]);
        let tw: HopfRef = Arc::new(law_twist(&g, &rep).unwrap());
        assert!(tw.check_axioms().all_pass(), "{:?}", tw.check_axioms().first_failure());
        let (_, diff) = group_law_difference(&tw, &g).unwrap();
        assert_eq!(diff, rep);
        assert!(cx.is_cocycle(2, &diff));
        assert!(infinitesimal_iso(&tw, &g).unwrap().is_none());
        assert!(infinitesimal_iso(&g, &g).unwrap().is_some());
        let _ = g0;
        // a coboundary twist is isomorphic to the trivial law
        let b = cochain_from(&[AlgElem::zero(ad.hopf.algebra()), AlgElem::gen(ad.hopf.algebra(), 1).pow(2)], 1, 8);
        let cob = normalize_cocycle(&cx, &cx.apply(1, &b));
        let tw: HopfRef = Arc::new(law_twist(&g, &cob).unwrap());
        assert!(tw.check_axioms().all_pass());
        assert!(infinitesimal_iso(&tw, &g).unwrap().is_some());
    }

    #[test]
    fn tilde_h_difference_is_wp() {
        let base = r(3);
        let h1 = tilde_h(base, 1, Scalar(base.lift_residue(1).0)).unwrap();
        let h0 = tilde_h(base, 1, Scalar::ZERO).unwrap();
        let (ad, c) = group_law_difference(&h1, &h0).unwrap();
        let a2 = ad.hopf.square();
        let w = wp_polynomial(3, &AlgElem::gen(a2, 0), &AlgElem::gen(a2, 2)).unwrap();
        assert_eq!(c, cochain_from(&[w, AlgElem::zero(a2)], 2, 9));
        assert!(!Complex::new(&ad).unwrap().is_cocycle(2, &c));
    }

    #[test]
    fn mu_is_rigid() {
        for (p, m) in [(2, 1), (2, 2)] {
            for (g, h) in mu_deformation_data(p, m).unwrap() {
                let v = mu_rigidity_check(r(p), m, &g, &h).unwrap();
                assert!(v.axioms_pass);
                assert!(v.iso.is_some());
            }
        }
    }
}
