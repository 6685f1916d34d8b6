//! Comodules, the Hochschild cochain complex `C^n(G, V) = V ⊗ A^{⊗n}` and its
//! cohomology over `F_p`.
//!
//! A cochain basis element `e_j ⊗ b_1 ⊗ … ⊗ b_n` has index
//! `j·D^n + Σ_k b_k·D^{n-k}` where `D = dim A` and `b_k` are monomial indices.
//! The differential is
//! `d(v ⊗ b) = ρ(v) ⊗ b + Σ_{k=1}^{n} (-1)^k Δ_k(b) + (-1)^{n+1} v ⊗ b ⊗ 1`,
//! where `ρ(e_j) = Σ_i e_i ⊗ M_ij` puts its `A` factor in the first slot.

use std::sync::Arc;

use crate::algebra::{wp_polynomial, AlgElem, Algebra, AlgebraRef};
use crate::catalog::{g_lambda, CatalogParams};
use crate::error::{Error, Result};
use crate::hopf::{Check, Hopf, HopfRef};
use crate::linalg::{self, Echelon, Insert, SparseVec};
use crate::ring::Scalar;

/// Default cap on `dim C^n · dim C^{n+1}` for one differential.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// A finite free comodule `ρ(e_j) = Σ_i e_i ⊗ M_ij`.
#[derive(Clone, Debug)]
pub struct Comodule {
    pub name: String,
    pub hopf: HopfRef,
    pub matrix: Vec<Vec<AlgElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleReport {
    pub coassociative: Check,
    pub counit: Check,
}

impl ComoduleReport {
    pub fn pass(&self) -> bool {
        self.coassociative.pass && self.counit.pass
    }
}

impl Comodule {
    pub fn new(name: impl Into<String>, hopf: HopfRef, matrix: Vec<Vec<AlgElem>>) -> Result<Self> {
        let r = matrix.len();
        if matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidPresentation("coaction matrix must be square".into()));
        }
        let alg = hopf.algebra().clone();
        let matrix = matrix
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.transport(&alg)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Comodule { name: name.into(), hopf, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn trivial(hopf: HopfRef, rank: usize) -> Self {
        let alg = hopf.algebra().clone();
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { AlgElem::one(&alg) } else { AlgElem::zero(&alg) }).collect())
            .collect();
        Comodule { name: "trivial".into(), hopf, matrix }
    }

    pub fn check(&self) -> ComoduleReport {
        let g = &self.hopf;
        let r = self.rank();
        let a2 = g.square();
        let mut co = Vec::new();
        let mut cu = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let lhs = g.apply_comul(&self.matrix[i][j]).expect("entries in A");
                let mut rhs = AlgElem::zero(a2);
                for k in 0..r {
                    let a = g.embed(&self.matrix[i][k], &[0], a2);
                    let b = g.embed(&self.matrix[k][j], &[1], a2);
                    rhs = &rhs + &(&a * &b);
                }
                co.push((format!("M[{}][{}]", i + 1, j + 1), &lhs - &rhs));
                let e = g.apply_counit(&self.matrix[i][j]).expect("entries in A");
                let want = if i == j { Scalar::ONE } else { Scalar::ZERO };
                let base = g.algebra().base();
                cu.push((format!("M[{}][{}]", i + 1, j + 1), AlgElem::constant(g.algebra(), base.sub(e, want))));
            }
        }
        let first = |label: &str, v: Vec<(String, AlgElem)>| match v.into_iter().find(|(_, e)| !e.is_zero()) {
            None => Check::ok(),
            Some((n, e)) => Check::fail(format!("{label} at {n}: residual {e}")),
        };
        ComoduleReport {
            coassociative: first("Δ(M) ≠ M⊗M", co),
            counit: first("ε(M) ≠ 1", cu),
        }
    }

    /// The comodule obtained by pushing the coaction along a Hopf map
    /// `A → A'` given by generator images in `target`.
    pub fn push_forward(&self, target: HopfRef, images: &[AlgElem]) -> Result<Comodule> {
        let alg = target.algebra().clone();
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(images, &alg)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Comodule::new(self.name.clone(), target, matrix)
    }
}

/// The character `y ↦ (1+y)^j` of `μ_{p^m}`, rank one.
pub fn character(mu: HopfRef, j: u64) -> Comodule {
    let y = mu.gen(0);
    let e = (&AlgElem::one(mu.algebra()) + &y).pow(j);
    Comodule { name: format!("chi_{j}"), hopf: mu, matrix: vec![vec![e]] }
}

/// `V̄`: `Δ(e_1) = e_1 ⊗ (1+y)^{λp}`, `Δ(e_2) = e_2` over `G_λ`.
pub fn vbar_rep(params: CatalogParams) -> Result<Comodule> {
    let g: HopfRef = Arc::new(g_lambda(params)?);
    let alg = g.algebra().clone();
    let y = g.gen(1);
    let e11 = (&AlgElem::one(&alg) + &y).pow(params.lambda * params.p() as u64);
    let matrix = vec![vec![e11, AlgElem::zero(&alg)], vec![AlgElem::zero(&alg), AlgElem::one(&alg)]];
    Comodule::new("vbar", g, matrix)
}

/// The adjoint representation on the dual of `I/I²`, from the conjugation
/// `(g, z) ↦ g z g^{-1}` linearized in `z`.
pub fn adjoint_rep(g: HopfRef) -> Result<Comodule> {
    let alg = g.algebra().clone();
    let base = alg.base();
    if !base.is_field() {
        return Err(Error::NotAField(format!("{base}")));
    }
    let k = alg.ngens();
    for i in 0..k {
        if alg.bounds()[i] < 2 || alg.tail(i).iter().any(|(e, _)| e.iter().sum::<u32>() == 1) {
            return Err(Error::Precondition(format!(
                "relation of {} has a linear term; I/I² is not spanned freely by the generators",
                alg.names()[i]
            )));
        }
    }
    let conj = conjugation(&g)?;
    let d = alg.dim();
    let strides: Vec<u64> = (0..k).map(|j| AlgElem::gen(&alg, j).index_terms().next().map(|(i, _)| i).unwrap_or(0)).collect();
    let mut matrix = vec![vec![AlgElem::zero(&alg); k]; k];
    for (i, c) in conj.iter().enumerate() {
        for (j, stride) in strides.iter().enumerate() {
            let terms: Vec<(u64, Scalar)> =
                c.index_terms().filter(|(idx, _)| idx % d == *stride).map(|(idx, x)| (idx / d, x)).collect();
            matrix[i][j] = AlgElem::from_index_terms(&alg, terms);
        }
    }
    Comodule::new("adjoint", g, matrix)
}

/// Coordinates of `g z g^{-1}` in `A_g ⊗ A_z` (slot 1 is `g`, slot 2 is `z`).
pub fn conjugation(g: &Hopf) -> Result<Vec<AlgElem>> {
    let s = g
        .antipode()
        .map(|s| s.to_vec())
        .map(Ok)
        .unwrap_or_else(|| g.solve_antipode())?;
    let a2 = g.square();
    let k = g.algebra().ngens();
    let slot1 = g.slot_gens(0, a2);
    let slot2 = g.slot_gens(1, a2);
    let s_in_1: Vec<AlgElem> = s.iter().map(|e| g.embed(e, &[0], a2)).collect();
    let images: Vec<AlgElem> = slot1.into_iter().chain(slot2).chain(s_in_1).collect();
    let a3 = g.cube();
    let left: Vec<AlgElem> = g.comul().iter().map(|c| g.embed(c, &[0, 1], a3)).collect();
    let third = g.slot_gens(2, a3);
    let outer: Vec<AlgElem> = left.into_iter().chain(third).collect();
    (0..k)
        .map(|i| {
            let triple = g.comul()[i].substitute(&outer, a3)?;
            triple.substitute(&images, a2)
        })
        .collect()
}

/// The Hochschild complex of a comodule over a Hopf algebra with field base.
pub struct Complex<'a> {
    v: &'a Comodule,
    d: u64,
    r: u64,
    p: u32,
    delta: Vec<Vec<(u64, u64, u32)>>,
    coaction: Vec<Vec<Vec<(u64, u32)>>>,
}

impl<'a> Complex<'a> {
    pub fn new(v: &'a Comodule) -> Result<Self> {
        let g = &v.hopf;
        let base = g.algebra().base();
        if !base.is_field() {
            return Err(Error::NotAField(format!("{base}")));
        }
        let d = g.algebra().dim();
        let delta = g
            .comul_table()
            .iter()
            .map(|t| t.index_terms().map(|(idx, c)| (idx / d, idx % d, c.0)).collect())
            .collect();
        let coaction = v
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.index_terms().map(|(i, c)| (i, c.0)).collect()).collect())
            .collect();
        Ok(Complex { v, d, r: v.rank() as u64, p: base.p(), delta, coaction })
    }

    pub fn comodule(&self) -> &Comodule {
        self.v
    }

    pub fn field(&self) -> u32 {
        self.p
    }

    pub fn dim(&self, n: u32) -> u64 {
        self.r * self.d.pow(n)
    }

    /// Matrix cells of `d^n`.
    pub fn cells(&self, n: u32) -> u64 {
        self.dim(n).saturating_mul(self.dim(n + 1))
    }

    /// `d^n` applied to the basis cochain with index `c`.
    pub fn column(&self, n: u32, c: u64) -> SparseVec {
        let f = linalg::Fp::new(self.p);
        let d = self.d;
        let dn = d.pow(n);
        let dn1 = dn * d;
        let (j, rest) = (c / dn, c % dn);
        let mut out = SparseVec::new();
        let mut add = |idx: u64, x: u32| {
            let e = out.entry(idx).or_insert(0);
            *e = f.add(*e, x);
            if *e == 0 {
                out.remove(&idx);
            }
        };
        for i in 0..self.r {
            for &(a, x) in &self.coaction[i as usize][j as usize] {
                add(i * dn1 + a * dn + rest, x);
            }
        }
        for k in 1..=n {
            let high = d.pow(n - k + 1);
            let low = d.pow(n - k);
            let prefix = rest / high;
            let b = (rest / low) % d;
            let suffix = rest % low;
            let sign_neg = k % 2 == 1;
            for &(u, w, x) in &self.delta[b as usize] {
                let idx = j * dn1 + prefix * high * d + u * high + w * low + suffix;
                add(idx, if sign_neg { f.neg(x) } else { x });
            }
        }
        let last = j * dn1 + rest * d;
        add(last, if n % 2 == 0 { f.neg(1) } else { 1 });
        out
    }

    pub fn apply(&self, n: u32, cochain: &SparseVec) -> SparseVec {
        let f = linalg::Fp::new(self.p);
        let mut out = SparseVec::new();
        for (&c, &x) in cochain {
            linalg::axpy(f, &mut out, x, &self.column(n, c));
        }
        out
    }

    fn check_budget(&self, n: u32, budget: u64) -> Result<()> {
        let needed = self.cells(n);
        if needed > budget {
            Err(Error::Budget { needed, budget })
        } else {
            Ok(())
        }
    }

    /// Echelon of the image of `d^{n-1}` (tags are cochain indices).
    fn coboundaries(&self, n: u32, budget: u64) -> Result<Echelon> {
        let mut e = Echelon::new(self.p);
        if n == 0 {
            return Ok(e);
        }
        self.check_budget(n - 1, budget)?;
        for c in 0..self.dim(n - 1) {
            e.insert(self.column(n - 1, c), c);
        }
        Ok(e)
    }

    pub fn is_cocycle(&self, n: u32, cochain: &SparseVec) -> bool {
        self.apply(n, cochain).is_empty()
    }

    /// A preimage under `d^{n-1}` when the cochain is a coboundary.
    pub fn coboundary_preimage(&self, n: u32, cochain: &SparseVec, budget: u64) -> Result<Option<SparseVec>> {
        if n == 0 {
            return Ok(if cochain.is_empty() { Some(SparseVec::new()) } else { None });
        }
        Ok(self.coboundaries(n, budget)?.preimage(cochain))
    }

    pub fn cohomology(&self, n: u32, budget: u64) -> Result<Cohomology> {
        self.check_budget(n, budget)?;
        let cob = self.coboundaries(n, budget)?;
        let cols: Vec<SparseVec> = (0..self.dim(n)).map(|c| self.column(n, c)).collect();
        let cocycles = linalg::kernel(self.p, &cols);
        let mut classes = cob.clone();
        let mut representatives = Vec::new();
        for z in &cocycles {
            let red = cob.reduced(z);
            if let Insert::Pivot(_) = classes.insert(red.clone(), REP_TAG + representatives.len() as u64) {
                representatives.push(red);
            }
        }
        let report = CohomologyReport {
            degree: n,
            dim_cochains: self.dim(n),
            dim_cocycles: cocycles.len(),
            dim_coboundaries: cob.rank(),
            dim: representatives.len(),
            representatives,
        };
        Ok(Cohomology { report, coboundaries: cob, classes })
    }
}

const REP_TAG: u64 = 1 << 62;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: u32,
    pub dim_cochains: u64,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim: usize,
    /// Cocycles reduced against the echelonized coboundaries, one per class.
    pub representatives: Vec<SparseVec>,
}

pub struct Cohomology {
    pub report: CohomologyReport,
    coboundaries: Echelon,
    classes: Echelon,
}

impl Cohomology {
    /// Coordinates of the class of a cocycle in the representative basis;
    /// `None` when the cochain is not a cocycle.
    pub fn class_of(&self, cochain: &SparseVec) -> Option<Vec<u32>> {
        let combo = self.classes.preimage(cochain)?;
        let mut out = vec![0u32; self.report.dim];
        for (tag, x) in combo {
            if tag >= REP_TAG {
                out[(tag - REP_TAG) as usize] = x;
            }
        }
        Some(out)
    }

    /// Canonical reduction of a cochain modulo coboundaries.
    pub fn reduce(&self, cochain: &SparseVec) -> SparseVec {
        self.coboundaries.reduced(cochain)
    }

    /// True when the cochain is a cocycle with nonzero class and the class
    /// is a multiple of the single generator (only meaningful for dim 1).
    pub fn spans_class(&self, cochain: &SparseVec) -> bool {
        self.report.dim == 1 && self.class_of(cochain).is_some_and(|c| c[0] != 0)
    }
}

/// Cochain `Σ_j e_j ⊗ parts[j]` with `parts[j] ∈ A^{⊗n}`.
pub fn cochain_from(parts: &[AlgElem], n: u32, d: u64) -> SparseVec {
    let dn = d.pow(n);
    let mut out = SparseVec::new();
    for (j, e) in parts.iter().enumerate() {
        for (idx, c) in e.index_terms() {
            if !c.is_zero() {
                out.insert(j as u64 * dn + idx, c.0);
            }
        }
    }
    out
}

/// `W_p(x⊗1, Δx − x⊗1)` placed in coordinate `coord` of a rank-`rank`
/// comodule, where `x` is the first generator. For the additive law this is
/// the usual carry cocycle `W_p(x, x')`.
pub fn wp_cochain(g: &Hopf, coord: usize, rank: usize) -> Result<SparseVec> {
    let a2 = g.square();
    let x1 = g.embed(&g.gen(0), &[0], a2);
    let rest = &g.comul()[0] - &x1;
    let w = wp_polynomial(g.algebra().base().p(), &x1, &rest)?;
    let parts: Vec<AlgElem> = (0..rank).map(|j| if j == coord { w.clone() } else { AlgElem::zero(a2) }).collect();
    Ok(cochain_from(&parts, 2, g.algebra().dim()))
}

/// Splits a cochain into its `V`-components as elements of `A^{⊗n}`.
pub fn cochain_parts(cochain: &SparseVec, rank: usize, n: u32, tensor: &AlgebraRef) -> Vec<AlgElem> {
    let dn = tensor.dim();
    let _ = n;
    (0..rank as u64)
        .map(|j| {
            AlgElem::from_index_terms(
                tensor,
                cochain.range(j * dn..(j + 1) * dn).map(|(i, x)| (i - j * dn, Scalar(*x))).collect::<Vec<_>>(),
            )
        })
        .collect()
}

/// The closed subgroup `Spec(A/J)` for `J` generated by generators, with its
/// restricted law. Fails when `J` is not a Hopf ideal.
pub fn subgroup(g: &Hopf, kill: &[usize]) -> Result<(Hopf, Vec<AlgElem>)> {
    let (q, proj) = g.algebra().kill_generators(kill)?;
    let q2 = Algebra::tensor_power(&q, 2)?;
    let nq = q.ngens();
    let in_slot = |slot: usize| -> Vec<AlgElem> {
        proj.iter()
            .map(|e| {
                let gens: Vec<AlgElem> = (0..nq).map(|i| AlgElem::gen(&q2, slot * nq + i)).collect();
                e.substitute(&gens, &q2).expect("projection images")
            })
            .collect()
    };
    let images: Vec<AlgElem> = in_slot(0).into_iter().chain(in_slot(1)).collect();
    let mut comul = Vec::new();
    for (i, c) in g.comul().iter().enumerate() {
        let img = c.substitute(&images, &q2)?;
        if kill.contains(&i) {
            if !img.is_zero() || !g.counit()[i].is_zero() {
                return Err(Error::Quotient(format!("ideal generated by {} is not a Hopf ideal", g.algebra().names()[i])));
            }
        } else {
            comul.push(img);
        }
    }
    let counit = (0..g.algebra().ngens()).filter(|i| !kill.contains(i)).map(|i| g.counit()[i]).collect();
    let h = Hopf::new(format!("{}|N", g.name()), q, comul, counit, None)?.completed()?;
    Ok((h, proj))
}

/// `dim H^i(N, V)^{μ_{p^m}}` for `G_λ = N ⋊ μ` with `N = α_p = Spec(A/(y))`,
/// computed from the conjugation action `t^{-1} n t = ((1+y)^{-λ} x, 0)` and
/// the coaction of `V` restricted to `μ`.
pub fn diagonalizable_invariants(params: CatalogParams, v: &Comodule, i: u32) -> Result<usize> {
    if !(1..=2).contains(&i) {
        return Err(Error::OutOfRange(format!("degree {i} not supported; use 1 or 2")));
    }
    let g = &v.hopf;
    let (n_hopf, n_proj) = subgroup(g, &[1])?;
    let n_ref: HopfRef = Arc::new(n_hopf);
    let v_n = v.push_forward(n_ref.clone(), &n_proj)?;
    let (mu_hopf, mu_proj) = subgroup(g, &[0])?;
    let mu_alg = mu_hopf.algebra().clone();
    let v_mu: Vec<Vec<AlgElem>> = v
        .matrix
        .iter()
        .map(|row| row.iter().map(|e| e.substitute(&mu_proj, &mu_alg)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let cx = Complex::new(&v_n)?;
    let p = cx.field();
    let f = linalg::Fp::new(p);
    let coh = cx.cohomology(i, u64::MAX)?;
    let cocycles = {
        let cols: Vec<SparseVec> = (0..cx.dim(i)).map(|c| cx.column(i, c)).collect();
        linalg::kernel(p, &cols)
    };
    // twist (1+y)^{-λ|a|} where |a| is the total x-degree of the cochain monomial
    let y = mu_hopf.gen(0);
    let twist_base = (&AlgElem::one(&mu_alg) + &y).inverse().expect("unit").pow(params.lambda);
    let dn = n_ref.algebra().dim();
    let dim_ci = cx.dim(i);
    let degree_of = |rest: u64| -> u64 {
        let mut r = rest;
        let mut deg = 0;
        for _ in 0..i {
            deg += r % dn;
            r /= dn;
        }
        deg
    };
    let rank = v.rank() as u64;
    let dni = dn.pow(i);
    let psi = |z: &SparseVec| -> SparseVec {
        // Φ(z) - z⊗1, then reduce each O(μ)-component modulo coboundaries
        let mut comps: std::collections::BTreeMap<u64, SparseVec> = Default::default();
        for (&c, &x) in z {
            let (j, rest) = (c / dni, c % dni);
            let twist = twist_base.pow(degree_of(rest));
            for l in 0..rank {
                let coeff = &v_mu[l as usize][j as usize] * &twist;
                for (s, cy) in coeff.index_terms() {
                    let entry = comps.entry(s).or_default();
                    linalg::axpy(f, entry, f.mul(x, cy.0), &SparseVec::from([(l * dni + rest, 1)]));
                }
            }
            let entry = comps.entry(0).or_default();
            linalg::axpy(f, entry, f.neg(x), &SparseVec::from([(c, 1)]));
        }
        let mut out = SparseVec::new();
        for (s, w) in comps {
            for (k, x) in coh.reduce(&w) {
                out.insert(s * dim_ci + k, x);
            }
        }
        out
    };
    let images: Vec<SparseVec> = cocycles.iter().map(psi).collect();
    let invariant = linalg::kernel(p, &images).len();
    Ok(invariant - coh.report.dim_coboundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alpha_p, mu};
    use crate::ring::BaseRing;

    fn params(p: u32, m: u32, l: u64) -> CatalogParams {
        CatalogParams::new(BaseRing::prime_field(p).unwrap(), m, l).unwrap()
    }

    #[test]
    fn vbar_examples() {
        let v = vbar_rep(params(2, 1, 1)).unwrap();
        assert!(v.check().pass());
        assert_eq!(v.matrix[0][0].to_string(), "1");
        let v = vbar_rep(params(2, 2, 1)).unwrap();
        assert_eq!(v.matrix[0][0].to_string(), "1 + y^2");
        let v = vbar_rep(params(3, 1, 1)).unwrap();
        assert_eq!(v.matrix[0][0].to_string(), "1");
    }

    #[test]
    fn corrupted_comodule_fails() {
        let g: HopfRef = Arc::new(g_lambda(params(2, 1, 1)).unwrap());
        let x = g.gen(0);
        let v = Comodule::new("bad", g.clone(), vec![vec![x]]).unwrap();
        assert!(!v.check().coassociative.pass);
        assert!(Comodule::trivial(g, 1).check().pass());
    }

    #[test]
    fn adjoint_matrix_of_semidirect_product() {
        for (p, m, l) in [(2, 1, 1), (2, 2, 1), (2, 2, 3), (3, 1, 2)] {
            let pr = params(p, m, l);
            let g: HopfRef = Arc::new(g_lambda(pr).unwrap());
            let ad = adjoint_rep(g.clone()).unwrap();
            let one = AlgElem::one(g.algebra());
            let y = g.gen(1);
            assert_eq!(ad.matrix[0][0], (&one + &y).pow(l));
            assert_eq!(ad.matrix[0][1], g.gen(0).scale(g.algebra().base().from_int(-(l as i64))));
            assert!(ad.matrix[1][0].is_zero());
            assert_eq!(ad.matrix[1][1], one);
            assert!(ad.check().pass());
        }
        let m: HopfRef = Arc::new(mu(BaseRing::prime_field(3).unwrap(), 1).unwrap());
        assert_eq!(adjoint_rep(m).unwrap().matrix[0][0].to_string(), "1");
        let a: HopfRef = Arc::new(alpha_p(BaseRing::prime_field(2).unwrap()).unwrap());
        assert_eq!(adjoint_rep(a).unwrap().matrix[0][0].to_string(), "1");
    }

    #[test]
    fn differential_squares_to_zero() {
        let v = vbar_rep(params(2, 1, 1)).unwrap();
        let cx = Complex::new(&v).unwrap();
        for n in 0..2 {
            for c in 0..cx.dim(n) {
                assert!(cx.apply(n + 1, &cx.column(n, c)).is_empty(), "d∘d ≠ 0 in degree {n}");
            }
        }
    }

    #[test]
    fn additive_cocycles_over_alpha2() {
        let r = BaseRing::prime_field(2).unwrap();
        let a: HopfRef = Arc::new(alpha_p(r).unwrap());
        let v = Comodule::trivial(a.clone(), 1);
        let cx = Complex::new(&v).unwrap();
        let x = cochain_from(&[a.gen(0)], 1, 2);
        assert!(cx.is_cocycle(1, &x));
        let h0 = cx.cohomology(0, DEFAULT_BUDGET).unwrap();
        assert_eq!(h0.report.dim, 1);
        let h2 = cx.cohomology(2, DEFAULT_BUDGET).unwrap();
        assert_eq!(h2.report.dim, 1);
        let a2 = a.square();
        let w = wp_polynomial(2, &AlgElem::gen(a2, 0), &AlgElem::gen(a2, 1)).unwrap();
        let wc = cochain_from(&[w], 2, 2);
        assert!(cx.is_cocycle(2, &wc));
        assert!(cx.coboundary_preimage(2, &wc, DEFAULT_BUDGET).unwrap().is_none());
        assert!(h2.spans_class(&wc));
        let zero = SparseVec::new();
        assert!(cx.is_cocycle(2, &zero));
        assert_eq!(cx.coboundary_preimage(2, &zero, DEFAULT_BUDGET).unwrap(), Some(SparseVec::new()));
    }

    #[test]
    fn adjoint_degree_two() {
        for (p, m, l, dim) in [(2, 2, 2, 1), (2, 2, 1, 0), (2, 2, 3, 0), (2, 1, 1, 0)] {
            let g: HopfRef = Arc::new(g_lambda(params(p, m, l)).unwrap());
            let ad = adjoint_rep(g.clone()).unwrap();
            let cx = Complex::new(&ad).unwrap();
            let h = cx.cohomology(2, DEFAULT_BUDGET).unwrap();
            assert_eq!(h.report.dim, dim, "({p},{m},{l})");
            assert_eq!(h.report.dim_cocycles - h.report.dim_coboundaries, dim);
            let w = wp_cochain(&g, 1, 2).unwrap();
            assert_eq!(h.spans_class(&w), dim == 1);
        }
    }

    #[test]
    fn invariants_match_direct_computation() {
        for (m, l) in [(1, 1), (2, 1), (2, 2)] {
            let pr = params(2, m, l);
            let g: HopfRef = Arc::new(g_lambda(pr).unwrap());
            let reps = [vbar_rep(pr).unwrap(), adjoint_rep(g.clone()).unwrap(), Comodule::trivial(g, 1)];
            for v in &reps {
                let cx = Complex::new(v).unwrap();
                for i in 1..=2 {
                    let direct = cx.cohomology(i, DEFAULT_BUDGET).unwrap().report.dim;
                    assert_eq!(diagonalizable_invariants(pr, v, i).unwrap(), direct, "{} m={m} l={l} i={i}", v.name);
                }
            }
        }
        let pr = params(2, 1, 1);
        let tr = Comodule::trivial(Arc::new(g_lambda(pr).unwrap()), 1);
        assert_eq!(diagonalizable_invariants(pr, &tr, 2).unwrap(), 1);
        assert!(diagonalizable_invariants(pr, &tr, 3).is_err());
    }

    #[test]
    fn budget_guard() {
        let v = vbar_rep(params(2, 1, 1)).unwrap();
        let cx = Complex::new(&v).unwrap();
        assert!(matches!(cx.cohomology(2, 10), Err(Error::Budget { .. })));
    }
}
