//! Hopf algebra structures on truncated algebras: axiom checks, antipodes,
//! convolution powers, multiplication by `n` and morphisms.

use std::sync::{Arc, OnceLock};

use crate::algebra::{same_owner, AlgElem, Algebra, AlgebraRef, PowerCache};
use crate::chain;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::ring::Scalar;

/// Outcome of one axiom check; a failing check carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn ok() -> Self {
        Check { pass: true, witness: None }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Check { pass: false, witness: Some(witness.into()) }
    }

    fn from_residuals(label: &str, residuals: Vec<(String, AlgElem)>) -> Self {
        match residuals.into_iter().find(|(_, r)| !r.is_zero()) {
            None => Check::ok(),
            Some((name, r)) => Check::fail(format!("{label} at {name}: residual {r}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub well_defined: Check,
    pub coassociative: Check,
    pub counit_left: Check,
    pub counit_right: Check,
    pub antipode_left: Check,
    pub antipode_right: Check,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.pass)
    }

    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("well_defined", &self.well_defined),
            ("coassociative", &self.coassociative),
            ("counit_left", &self.counit_left),
            ("counit_right", &self.counit_right),
            ("antipode_left", &self.antipode_left),
            ("antipode_right", &self.antipode_right),
        ]
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks()
            .iter()
            .find(|(_, c)| !c.pass)
            .map(|(n, c)| format!("{n}: {}", c.witness.clone().unwrap_or_default()))
    }
}

/// A commutative Hopf algebra given by generator images.
#[derive(Clone, Debug)]
pub struct Hopf {
    name: String,
    alg: AlgebraRef,
    a2: AlgebraRef,
    a3: AlgebraRef,
    comul: Vec<AlgElem>,
    counit: Vec<Scalar>,
    antipode: Option<Vec<AlgElem>>,
    comul_table: OnceLock<Vec<AlgElem>>,
}

pub type HopfRef = Arc<Hopf>;

/// Images of the basis elements of `A` under a linear map `A → A`.
pub type LinMap = Vec<AlgElem>;

impl Hopf {
    pub fn new(
        name: impl Into<String>,
        alg: AlgebraRef,
        comul: Vec<AlgElem>,
        counit: Vec<Scalar>,
        antipode: Option<Vec<AlgElem>>,
    ) -> Result<Self> {
        let n = alg.ngens();
        if comul.len() != n || counit.len() != n {
            return Err(Error::InvalidPresentation("one comultiplication and counit value per generator".into()));
        }
        let a2 = Algebra::tensor_power(&alg, 2)?;
        let a3 = Algebra::tensor_power(&alg, 3)?;
        let comul = comul
            .into_iter()
            .map(|c| if same_owner(c.algebra(), &a2) { c.transport(&a2) } else { Err(Error::OwnerMismatch) })
            .collect::<Result<Vec<_>>>()?;
        let antipode = match antipode {
            None => None,
            Some(s) => {
                if s.len() != n {
                    return Err(Error::InvalidPresentation("one antipode image per generator".into()));
                }
                Some(
                    s.into_iter()
                        .map(|e| if same_owner(e.algebra(), &alg) { e.transport(&alg) } else { Err(Error::OwnerMismatch) })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        Ok(Hopf { name: name.into(), alg, a2, a3, comul, counit, antipode, comul_table: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    /// `A ⊗ A`, generators `g@1`, `g@2`.
    pub fn square(&self) -> &AlgebraRef {
        &self.a2
    }

    pub fn cube(&self) -> &AlgebraRef {
        &self.a3
    }

    pub fn comul(&self) -> &[AlgElem] {
        &self.comul
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> Option<&[AlgElem]> {
        self.antipode.as_deref()
    }

    pub fn order(&self) -> u64 {
        self.alg.dim()
    }

    pub fn with_antipode(&self, s: Vec<AlgElem>) -> Result<Hopf> {
        Hopf::new(self.name.clone(), self.alg.clone(), self.comul.clone(), self.counit.clone(), Some(s))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Fills in the antipode by [`Hopf::solve_antipode`] when absent.
    pub fn completed(self) -> Result<Hopf> {
        if self.antipode.is_some() {
            return Ok(self);
        }
        let s = self.solve_antipode()?;
        self.with_antipode(s)
    }

    pub fn gen(&self, i: usize) -> AlgElem {
        AlgElem::gen(&self.alg, i)
    }

    pub fn apply_comul(&self, e: &AlgElem) -> Result<AlgElem> {
        e.substitute(&self.comul, &self.a2)
    }

    pub fn apply_counit(&self, e: &AlgElem) -> Result<Scalar> {
        let unit = Algebra::unit(self.alg.base());
        let imgs: Vec<AlgElem> = self.counit.iter().map(|c| AlgElem::constant(&unit, *c)).collect();
        Ok(e.substitute(&imgs, &unit)?.constant_term())
    }

    pub fn apply_antipode(&self, e: &AlgElem) -> Result<AlgElem> {
        let s = self.antipode.as_ref().ok_or_else(|| Error::Precondition("antipode not set".into()))?;
        e.substitute(s, &self.alg)
    }

    /// Places the tensor factors of `e ∈ A^{⊗r}` into the given slots of
    /// `target = A^{⊗n}` (remaining slots get 1).
    pub fn embed(&self, e: &AlgElem, slots: &[usize], target: &AlgebraRef) -> AlgElem {
        let k = self.alg.ngens();
        let n = if k == 0 { 1 } else { target.ngens() / k };
        embed_slots(e, self.alg.dim(), slots, n, target)
    }

    /// Generators of `A` inside slot `slot` of `A^{⊗n}`.
    pub fn slot_gens(&self, slot: usize, target: &AlgebraRef) -> Vec<AlgElem> {
        let k = self.alg.ngens();
        (0..k).map(|j| AlgElem::gen(target, slot * k + j)).collect()
    }

    /// `Δ` on every basis monomial of `A`, by basis index.
    pub fn comul_table(&self) -> &[AlgElem] {
        self.comul_table.get_or_init(|| {
            let mut cache = PowerCache::new(&self.comul);
            (0..self.alg.dim())
                .map(|i| {
                    AlgElem::from_index_terms(&self.alg, [(i, Scalar::ONE)]).substitute_cached(&mut cache, &self.a2)
                })
                .collect()
        })
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.alg.ngens();
        let base = self.alg.base();
        let names = self.alg.names().to_vec();
        let unit = Algebra::unit(base);

        let mut wd = Vec::new();
        for i in 0..n {
            let d = self.alg.bounds()[i] as u64;
            let tail = self.alg.tail_elem(i);
            let lhs = self.comul[i].pow(d);
            let rhs = tail.substitute(&self.comul, &self.a2).expect("comul images in A⊗A");
            wd.push((format!("comul({})", names[i]), &lhs - &rhs));
            let eps: Vec<AlgElem> = self.counit.iter().map(|c| AlgElem::constant(&unit, *c)).collect();
            let lhs = AlgElem::constant(&unit, base.pow(self.counit[i], d));
            let rhs = tail.substitute(&eps, &unit).expect("counit images");
            wd.push((format!("counit({})", names[i]), &lhs - &rhs));
            if let Some(s) = &self.antipode {
                let lhs = s[i].pow(d);
                let rhs = tail.substitute(s, &self.alg).expect("antipode images");
                wd.push((format!("antipode({})", names[i]), &lhs - &rhs));
            }
        }
        let well_defined = Check::from_residuals("relation not preserved", wd);

        let left: Vec<AlgElem> = self.comul.iter().map(|c| self.embed(c, &[0, 1], &self.a3)).collect();
        let right: Vec<AlgElem> = self.comul.iter().map(|c| self.embed(c, &[1, 2], &self.a3)).collect();
        let mut coassoc = Vec::new();
        for i in 0..n {
            let imgs_l: Vec<AlgElem> = left.iter().cloned().chain(self.slot_gens(2, &self.a3)).collect();
            let imgs_r: Vec<AlgElem> = self.slot_gens(0, &self.a3).into_iter().chain(right.iter().cloned()).collect();
            let a = self.comul[i].substitute(&imgs_l, &self.a3).expect("slot images");
            let b = self.comul[i].substitute(&imgs_r, &self.a3).expect("slot images");
            coassoc.push((names[i].clone(), &a - &b));
        }
        let coassociative = Check::from_residuals("coassociativity fails", coassoc);

        let consts: Vec<AlgElem> = self.counit.iter().map(|c| AlgElem::constant(&self.alg, *c)).collect();
        let gens: Vec<AlgElem> = (0..n).map(|i| self.gen(i)).collect();
        let eval_pair = |l: &[AlgElem], r: &[AlgElem], i: usize| -> AlgElem {
            let imgs: Vec<AlgElem> = l.iter().chain(r).cloned().collect();
            self.comul[i].substitute(&imgs, &self.alg).expect("pair images")
        };
        let counit_left = Check::from_residuals(
            "(ε⊗id)Δ ≠ id",
            (0..n).map(|i| (names[i].clone(), &eval_pair(&consts, &gens, i) - &gens[i])).collect(),
        );
        let counit_right = Check::from_residuals(
            "(id⊗ε)Δ ≠ id",
            (0..n).map(|i| (names[i].clone(), &eval_pair(&gens, &consts, i) - &gens[i])).collect(),
        );

        let s = match &self.antipode {
            Some(s) => Ok(s.clone()),
            None => self.solve_antipode(),
        };
        let (antipode_left, antipode_right) = match s {
            Err(e) => (Check::fail(e.to_string()), Check::fail(e.to_string())),
            Ok(s) => (
                Check::from_residuals(
                    "m(S⊗id)Δ ≠ uε",
                    (0..n).map(|i| (names[i].clone(), &eval_pair(&s, &gens, i) - &consts[i])).collect(),
                ),
                Check::from_residuals(
                    "m(id⊗S)Δ ≠ uε",
                    (0..n).map(|i| (names[i].clone(), &eval_pair(&gens, &s, i) - &consts[i])).collect(),
                ),
            ),
        };
        AxiomReport { well_defined, coassociative, counit_left, counit_right, antipode_left, antipode_right }
    }

    fn basis_elem(&self, i: u64) -> AlgElem {
        AlgElem::from_index_terms(&self.alg, [(i, Scalar::ONE)])
    }

    pub fn identity_map(&self) -> LinMap {
        (0..self.alg.dim()).map(|i| self.basis_elem(i)).collect()
    }

    pub fn unit_counit_map(&self) -> Result<LinMap> {
        (0..self.alg.dim())
            .map(|i| Ok(AlgElem::constant(&self.alg, self.apply_counit(&self.basis_elem(i))?)))
            .collect()
    }

    /// Convolution `f * g = m ∘ (f ⊗ g) ∘ Δ` of linear maps.
    pub fn convolve(&self, f: &[AlgElem], g: &[AlgElem]) -> LinMap {
        let d = self.alg.dim();
        self.comul_table()
            .iter()
            .map(|delta| {
                let mut acc = AlgElem::zero(&self.alg);
                for (idx, c) in delta.index_terms() {
                    let (i, j) = ((idx / d) as usize, (idx % d) as usize);
                    let t = &f[i] * &g[j];
                    acc = &acc + &t.scale(c);
                }
                acc
            })
            .collect()
    }

    /// Applies a linear map given on the basis to an element.
    pub fn apply_linear(&self, map: &[AlgElem], e: &AlgElem) -> AlgElem {
        let mut acc = AlgElem::zero(&self.alg);
        for (i, c) in e.index_terms() {
            acc = &acc + &map[i as usize].scale(c);
        }
        acc
    }

    /// Solves `m ∘ (S ⊗ id) ∘ Δ = u ∘ ε`, first as the geometric series
    /// `Σ (uε − id)^{*k}` along powers of the augmentation ideal, then by a
    /// linear solve over the base ring when that series does not terminate.
    pub fn solve_antipode(&self) -> Result<Vec<AlgElem>> {
        let ue = self.unit_counit_map()?;
        let id = self.identity_map();
        let phi: LinMap = ue.iter().zip(&id).map(|(a, b)| a - b).collect();
        let dim = self.alg.dim() as usize;
        let mut total = ue.clone();
        let mut power = ue.clone();
        let mut converged = false;
        for _ in 0..=dim + 1 {
            power = self.convolve(&power, &phi);
            if power.iter().all(|e| e.is_zero()) {
                converged = true;
                break;
            }
            total = total.iter().zip(&power).map(|(a, b)| a + b).collect();
        }
        let s_map = if converged { total } else { self.solve_antipode_linear(&ue)? };
        let images: Vec<AlgElem> =
            (0..self.alg.ngens()).map(|i| self.apply_linear(&s_map, &self.gen(i))).collect();
        let candidate = self.with_antipode(images.clone())?;
        let report = candidate.check_axioms();
        if report.antipode_left.pass && report.antipode_right.pass && report.well_defined.pass {
            Ok(images)
        } else {
            Err(Error::NoAntipode(report.first_failure().unwrap_or_default()))
        }
    }

    fn solve_antipode_linear(&self, ue: &[AlgElem]) -> Result<LinMap> {
        let base = self.alg.base();
        let d = self.alg.dim() as usize;
        let basis = self.identity_map();
        // unknown X[k][l] = coefficient of b_l in S(b_k), variable index k*d + l
        let mut products = vec![AlgElem::zero(&self.alg); d * d];
        for l in 0..d {
            for j in 0..d {
                products[l * d + j] = &basis[l] * &basis[j];
            }
        }
        let mut rows: chain::Matrix = Vec::with_capacity(d * d);
        let mut rhs = Vec::with_capacity(d * d);
        for a in 0..d {
            let mut eq = vec![vec![Scalar::ZERO; d * d]; d];
            for (idx, c) in self.comul_table()[a].index_terms() {
                let (i, j) = ((idx / d as u64) as usize, (idx % d as u64) as usize);
                for l in 0..d {
                    for (o, pc) in products[l * d + j].index_terms() {
                        let slot = &mut eq[o as usize][i * d + l];
                        *slot = base.add(*slot, base.mul(c, pc));
                    }
                }
            }
            for (o, row) in eq.into_iter().enumerate() {
                rows.push(row);
                rhs.push(ue[a].coefficient_index(o as u64));
            }
        }
        let x = chain::solve(base, &rows, d * d, &rhs)
            .ok_or_else(|| Error::NoAntipode("convolution inverse of the identity does not exist".into()))?;
        Ok((0..d)
            .map(|k| AlgElem::from_index_terms(&self.alg, (0..d).map(|l| (l as u64, x[k * d + l]))))
            .collect())
    }

    /// `[n]` on generators by the recursion `[n+1] = m ∘ ([n] ⊗ id) ∘ Δ`.
    pub fn mult_by_n(&self, n: u64) -> Vec<AlgElem> {
        let k = self.alg.ngens();
        let gens: Vec<AlgElem> = (0..k).map(|i| self.gen(i)).collect();
        let mut cur: Vec<AlgElem> = self.counit.iter().map(|c| AlgElem::constant(&self.alg, *c)).collect();
        for _ in 0..n {
            let imgs: Vec<AlgElem> = cur.iter().chain(&gens).cloned().collect();
            cur = self.comul.iter().map(|c| c.substitute(&imgs, &self.alg).expect("images in A")).collect();
        }
        cur
    }

    /// `id^{*n}` on generators, via convolution of full linear maps.
    pub fn convolution_power(&self, n: u64) -> Result<Vec<AlgElem>> {
        let id = self.identity_map();
        let mut acc = self.unit_counit_map()?;
        for _ in 0..n {
            acc = self.convolve(&acc, &id);
        }
        Ok((0..self.alg.ngens()).map(|i| self.apply_linear(&acc, &self.gen(i))).collect())
    }

    pub fn is_killed_by(&self, n: u64) -> bool {
        self.mult_by_n(n)
            .iter()
            .zip(&self.counit)
            .all(|(img, c)| *img == AlgElem::constant(&self.alg, *c))
    }

    /// Least `h` with `[p^h]` trivial.
    pub fn exponent(&self) -> Result<u32> {
        let p = self.alg.base().p() as u64;
        let mut h = 0u32;
        let mut n = 1u64;
        let limit = self.alg.dim().saturating_mul(p);
        while n <= limit {
            if self.is_killed_by(n) {
                return Ok(h);
            }
            h += 1;
            n *= p;
        }
        Err(Error::Precondition(format!("{} is not killed by p times its order", self.name)))
    }

    /// `f ∘ g` for endomorphisms given by generator images.
    pub fn compose(&self, f: &[AlgElem], g: &[AlgElem]) -> Result<Vec<AlgElem>> {
        g.iter().map(|e| e.substitute(f, &self.alg)).collect()
    }
}

/// See [`Hopf::embed`].
pub fn embed_slots(e: &AlgElem, d: u64, slots: &[usize], n: usize, target: &AlgebraRef) -> AlgElem {
    let r = slots.len() as u32;
    let n = n as u32;
    if d == 1 {
        return AlgElem::constant(target, e.constant_term());
    }
    let terms = e.index_terms().map(|(idx, c)| {
        let mut out = 0u64;
        for (k, &s) in slots.iter().enumerate() {
            let digit = (idx / d.pow(r - 1 - k as u32)) % d;
            out += digit * d.pow(n - 1 - s as u32);
        }
        (out, c)
    });
    AlgElem::from_index_terms(target, terms.collect::<Vec<_>>())
}

/// An algebra map `O(source) → O(target)` given by generator images;
/// contravariant to the corresponding map of group schemes.
#[derive(Clone, Debug)]
pub struct HopfMorphism {
    pub source: HopfRef,
    pub target: HopfRef,
    pub images: Vec<AlgElem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub relations: Check,
    pub comul: Check,
    pub counit: Check,
    pub invertible: bool,
}

impl MorphismReport {
    pub fn is_hopf_map(&self) -> bool {
        self.relations.pass && self.comul.pass && self.counit.pass
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_hopf_map() && self.invertible
    }
}

impl HopfMorphism {
    pub fn new(source: HopfRef, target: HopfRef, images: Vec<AlgElem>) -> Result<Self> {
        if images.len() != source.algebra().ngens() {
            return Err(Error::InvalidPresentation("one image per source generator".into()));
        }
        let images = images
            .into_iter()
            .map(|e| if same_owner(e.algebra(), target.algebra()) { e.transport(target.algebra()) } else { Err(Error::OwnerMismatch) })
            .collect::<Result<Vec<_>>>()?;
        Ok(HopfMorphism { source, target, images })
    }

    pub fn identity(g: &HopfRef) -> Self {
        let images = (0..g.algebra().ngens()).map(|i| g.gen(i)).collect();
        HopfMorphism { source: g.clone(), target: g.clone(), images }
    }

    pub fn apply(&self, e: &AlgElem) -> Result<AlgElem> {
        e.substitute(&self.images, self.target.algebra())
    }

    pub fn check(&self) -> MorphismReport {
        let (s, t) = (&self.source, &self.target);
        let names = s.algebra().names();
        let mut rel = Vec::new();
        for i in 0..names.len() {
            let lhs = self.images[i].pow(s.algebra().bounds()[i] as u64);
            let rhs = self.apply(&s.algebra().tail_elem(i)).expect("images in target");
            rel.push((names[i].clone(), &lhs - &rhs));
        }
        let relations = Check::from_residuals("relation not preserved", rel);

        let t2 = t.square();
        let left: Vec<AlgElem> = self.images.iter().map(|e| t.embed(e, &[0], t2)).collect();
        let right: Vec<AlgElem> = self.images.iter().map(|e| t.embed(e, &[1], t2)).collect();
        let pair: Vec<AlgElem> = left.into_iter().chain(right).collect();
        let mut co = Vec::new();
        let mut cu = Vec::new();
        for i in 0..names.len() {
            let a = t.apply_comul(&self.images[i]).expect("target comul");
            let b = s.comul()[i].substitute(&pair, t2).expect("tensor images");
            co.push((names[i].clone(), &a - &b));
            let e = t.apply_counit(&self.images[i]).expect("target counit");
            let diff = AlgElem::constant(t.algebra(), t.algebra().base().sub(e, s.counit()[i]));
            cu.push((names[i].clone(), diff));
        }
        MorphismReport {
            relations,
            comul: Check::from_residuals("Δ∘φ ≠ (φ⊗φ)∘Δ", co),
            counit: Check::from_residuals("ε∘φ ≠ ε", cu),
            invertible: self.is_invertible(),
        }
    }

    /// Invertible as a module map: square matrix with invertible reduction.
    pub fn is_invertible(&self) -> bool {
        let (ds, dt) = (self.source.algebra().dim(), self.target.algebra().dim());
        if ds != dt {
            return false;
        }
        let base = self.source.algebra().base();
        let mut cache = PowerCache::new(&self.images);
        let cols: Vec<SparseVec> = (0..ds)
            .map(|i| {
                let img = AlgElem::from_index_terms(self.source.algebra(), [(i, Scalar::ONE)])
                    .substitute_cached(&mut cache, self.target.algebra());
                img.index_terms()
                    .map(|(k, c)| (k, base.residue(c)))
                    .filter(|(_, c)| *c != 0)
                    .collect()
            })
            .collect();
        linalg::rank(base.p(), &cols) as u64 == ds
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BaseRing;

    fn mu(p: u32, m: u32) -> Hopf {
        let r = BaseRing::prime_field(p).unwrap();
        let a = Algebra::truncated(r, &["y"], &[p.pow(m)]).unwrap();
        let a2 = Algebra::tensor_power(&a, 2).unwrap();
        let (y1, y2) = (AlgElem::gen(&a2, 0), AlgElem::gen(&a2, 1));
        let d = &(&y1 + &y2) + &(&y1 * &y2);
        Hopf::new("mu", a, vec![d], vec![Scalar::ZERO], None).unwrap()
    }

    #[test]
    fn mu_antipode_is_geometric_series() {
        let g = mu(2, 2);
        let s = g.solve_antipode().unwrap();
        assert_eq!(s[0].to_string(), "y + y^2 + y^3");
        let g = g.completed().unwrap();
        assert!(g.check_axioms().all_pass());
    }

    #[test]
    fn mult_by_n_on_mu4() {
        let g = mu(2, 2);
        assert_eq!(g.mult_by_n(2)[0].to_string(), "y^2");
        assert!(g.mult_by_n(4)[0].is_zero());
        assert_eq!(g.mult_by_n(1)[0], g.gen(0));
        assert_eq!(g.convolution_power(3).unwrap(), g.mult_by_n(3));
        assert_eq!(g.exponent().unwrap(), 2);
        assert!(!g.is_killed_by(1));
    }

    #[test]
    fn psi_morphisms_on_mu4() {
        let g = Arc::new(mu(2, 2).completed().unwrap());
        let y = g.gen(0);
        let one = AlgElem::one(g.algebra());
        let psi3 = HopfMorphism::new(g.clone(), g.clone(), vec![&(&one + &y).pow(3) - &one]).unwrap();
        assert_eq!(psi3.images[0].to_string(), "y + y^2 + y^3");
        assert!(psi3.check().is_isomorphism());
        assert!(HopfMorphism::identity(&g).check().is_isomorphism());
        let sq = HopfMorphism::new(g.clone(), g.clone(), vec![y.pow(2)]).unwrap();
        let rep = sq.check();
        assert!(!rep.is_isomorphism());
        assert!(!rep.invertible);
    }

    #[test]
    fn oort_tate_unit_case_uses_linear_solve() {
        // τ^2 = τ over Z/4 with Δτ = τ⊗1 + 1⊗τ + 2τ⊗τ
        let r = BaseRing::zmod(2, 2).unwrap();
        let a = Algebra::new(
            r,
            vec!["t".into()],
            vec![2],
            vec![crate::algebra::RawPoly::new(vec![(vec![1], Scalar::ONE)])],
        )
        .unwrap();
        let a2 = Algebra::tensor_power(&a, 2).unwrap();
        let (t1, t2) = (AlgElem::gen(&a2, 0), AlgElem::gen(&a2, 1));
        let d = &(&t1 + &t2) + &(&t1 * &t2).scale(r.from_int(2));
        let g = Hopf::new("ot", a, vec![d], vec![Scalar::ZERO], None).unwrap();
        let s = g.solve_antipode().unwrap();
        assert_eq!(s[0], g.gen(0));
        assert!(g.completed().unwrap().check_axioms().all_pass());
    }
}
