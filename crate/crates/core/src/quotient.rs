//! Quotients `G/N` for normal subgroups `N = Spec(A/J)` with `J` generated by
//! generators of `A`, and freeness tests over the Artin base ring.

use std::collections::BTreeSet;

use crate::algebra::{AlgElem, Algebra, AlgebraRef, RawPoly};
use crate::chain::{self, SpanStructure};
use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::linalg::{Echelon, SparseVec};
use crate::ring::{BaseRing, Scalar};

/// Which side of the comultiplication the subgroup ideal sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// `B = {a : Δ(a) ≡ 1⊗a mod J⊗A}`.
    Left,
    /// `B = {a : Δ(a) ≡ a⊗1 mod A⊗J}`.
    Right,
}

impl Convention {
    pub fn label(&self) -> &'static str {
        match self {
            Convention::Left => "left",
            Convention::Right => "right",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub convention: Convention,
    /// Generators of `A` generating `J`.
    pub ideal: Vec<usize>,
    /// Generators of `B` as a module over the base ring.
    pub generators: Vec<AlgElem>,
    pub structure: SpanStructure,
    pub closed_under_mul: bool,
    pub comul_stable: bool,
    /// Hopf presentation of `B` on the generators of `A` that lie in `B`,
    /// when those generate `B`.
    pub hopf: Option<Hopf>,
}

/// Coordinates of `e` in the monomial basis, as a dense vector.
pub fn coords(e: &AlgElem) -> Vec<Scalar> {
    let mut v = vec![Scalar::ZERO; e.algebra().dim() as usize];
    for (i, c) in e.index_terms() {
        v[i as usize] = c;
    }
    v
}

fn from_coords(alg: &AlgebraRef, v: &[Scalar]) -> AlgElem {
    AlgElem::from_index_terms(alg, v.iter().enumerate().map(|(i, c)| (i as u64, *c)))
}

/// The linear map `L` with `B = ker L`.
struct Defect {
    target: AlgebraRef,
    images: Vec<AlgElem>,
    inclusion: Vec<AlgElem>,
}

impl Defect {
    fn new(g: &Hopf, ideal: &[usize], conv: Convention) -> Result<Self> {
        let alg = g.algebra().clone();
        let (q, proj) = alg.kill_generators(ideal)?;
        let k = alg.ngens();
        let nq = q.ngens();
        let (target, into_q_slot, offset_a) = match conv {
            Convention::Left => (Algebra::tensor(&q, &alg)?, 0, nq),
            Convention::Right => (Algebra::tensor(&alg, &q)?, k, 0),
        };
        let q_in_target: Vec<AlgElem> = (0..nq).map(|i| AlgElem::gen(&target, into_q_slot + i)).collect();
        let a_in_target: Vec<AlgElem> = (0..k).map(|j| AlgElem::gen(&target, offset_a + j)).collect();
        let projected: Vec<AlgElem> =
            proj.iter().map(|e| e.substitute(&q_in_target, &target)).collect::<Result<_>>()?;
        let images = match conv {
            Convention::Left => projected.into_iter().chain(a_in_target.iter().cloned()).collect(),
            Convention::Right => a_in_target.iter().cloned().chain(projected).collect(),
        };
        Ok(Defect { target, images, inclusion: a_in_target })
    }

    fn apply_comul_image(&self, delta: &AlgElem, a: &AlgElem) -> Result<AlgElem> {
        let lhs = delta.substitute(&self.images, &self.target)?;
        let rhs = a.substitute(&self.inclusion, &self.target)?;
        Ok(&lhs - &rhs)
    }

    fn apply(&self, g: &Hopf, a: &AlgElem) -> Result<AlgElem> {
        self.apply_comul_image(&g.apply_comul(a)?, a)
    }
}

/// Splits `t ∈ A⊗A` as `Σ_j e_j ⊗ b_j` (`side = 1`) or `Σ_i b_i ⊗ e_i`
/// (`side = 0`), returning the `e` parts.
fn split_tensor(t: &AlgElem, alg: &AlgebraRef, keep_side: usize) -> Vec<AlgElem> {
    let d = alg.dim();
    let mut parts: std::collections::BTreeMap<u64, Vec<(u64, Scalar)>> = Default::default();
    for (idx, c) in t.index_terms() {
        let (i, j) = (idx / d, idx % d);
        let (keep, other) = if keep_side == 0 { (i, j) } else { (j, i) };
        parts.entry(other).or_default().push((keep, c));
    }
    parts.into_values().map(|terms| AlgElem::from_index_terms(alg, terms)).collect()
}

/// Computes `B` for `N = Spec(A/J)`, `J` generated by the listed generators.
pub fn quotient_subalgebra(g: &Hopf, ideal: &[usize], conv: Convention) -> Result<Quotient> {
    let alg = g.algebra().clone();
    let base = alg.base();
    let ideal: Vec<usize> = ideal.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if ideal.iter().any(|&i| i >= alg.ngens()) {
        return Err(Error::Quotient("ideal generator out of range".into()));
    }
    let defect = Defect::new(g, &ideal, conv)?;
    let dim = alg.dim() as usize;
    let table = g.comul_table();
    let columns: Vec<AlgElem> = (0..dim)
        .map(|i| {
            let a = AlgElem::from_index_terms(&alg, [(i as u64, Scalar::ONE)]);
            defect.apply_comul_image(&table[i], &a)
        })
        .collect::<Result<_>>()?;
    let generators = kernel_basis(base, &alg, &defect.target, &columns);
    let vectors: Vec<Vec<Scalar>> = generators.iter().map(coords).collect();
    let structure = chain::span_structure(base, &vectors, dim);

    let in_b = |e: &AlgElem| -> Result<bool> { Ok(defect.apply(g, e)?.is_zero()) };
    let mut closed_under_mul = true;
    'outer: for (i, a) in generators.iter().enumerate() {
        for b in &generators[i..] {
            if !in_b(&(a * b))? {
                closed_under_mul = false;
                break 'outer;
            }
        }
    }
    let mut comul_stable = true;
    for b in &generators {
        let delta = g.apply_comul(b)?;
        for side in [0, 1] {
            for part in split_tensor(&delta, &alg, side) {
                if !in_b(&part)? {
                    comul_stable = false;
                }
            }
        }
    }
    if !comul_stable {
        return Err(Error::Quotient(format!(
            "B is not stable under the comultiplication ({} convention): N is not normal",
            conv.label()
        )));
    }
    let hopf = induced_hopf(g, &defect, &structure)?;
    Ok(Quotient { convention: conv, ideal, generators, structure, closed_under_mul, comul_stable, hopf })
}

fn kernel_basis(base: BaseRing, alg: &AlgebraRef, target: &AlgebraRef, columns: &[AlgElem]) -> Vec<AlgElem> {
    if base.is_field() {
        let cols: Vec<SparseVec> = columns
            .iter()
            .map(|c| c.index_terms().map(|(k, x)| (k, x.0)).collect())
            .collect();
        let mut ech = Echelon::new(base.p());
        for v in crate::linalg::kernel(base.p(), &cols) {
            ech.insert(v, 0);
        }
        return ech
            .rref()
            .into_iter()
            .map(|v| AlgElem::from_index_terms(alg, v.into_iter().map(|(k, x)| (k, Scalar(x)))))
            .collect();
    }
    let rows = target.dim() as usize;
    let mut m = vec![vec![Scalar::ZERO; columns.len()]; rows];
    for (j, c) in columns.iter().enumerate() {
        for (i, x) in c.index_terms() {
            m[i as usize][j] = x;
        }
    }
    chain::kernel(base, &m, columns.len()).iter().map(|v| from_coords(alg, v)).collect()
}

/// The Hopf structure of `B` on those generators of `A` lying in `B`, when
/// they generate `B`, their relations and comultiplications stay inside them.
fn induced_hopf(g: &Hopf, defect: &Defect, structure: &SpanStructure) -> Result<Option<Hopf>> {
    let alg = g.algebra();
    let base = alg.base();
    let inside: Vec<usize> =
        (0..alg.ngens()).filter(|&i| defect.apply(g, &g.gen(i)).map(|e| e.is_zero()).unwrap_or(false)).collect();
    let outside: Vec<usize> = (0..alg.ngens()).filter(|i| !inside.contains(i)).collect();
    let uses_outside = |e: &AlgElem, k: usize, slots: usize| -> bool {
        e.terms().any(|(m, _)| (0..slots).any(|s| outside.iter().any(|&o| m.0[s * k + o] > 0)))
    };
    let k = alg.ngens();
    for &i in &inside {
        if uses_outside(&alg.tail_elem(i), k, 1) || uses_outside(&g.comul()[i], k, 2) {
            return Ok(None);
        }
    }
    let sub_dim: u64 = inside.iter().map(|&i| alg.bounds()[i] as u64).product();
    if sub_dim as usize * base.length() as usize != structure.length || !structure.free {
        return Ok(None);
    }
    let restrict = |exps: &[u32], slots: usize| -> Vec<u32> {
        (0..slots).flat_map(|s| inside.iter().map(move |&i| exps[s * k + i])).collect()
    };
    let sub = Algebra::new(
        base,
        inside.iter().map(|&i| alg.names()[i].clone()).collect(),
        inside.iter().map(|&i| alg.bounds()[i]).collect(),
        inside
            .iter()
            .map(|&i| RawPoly::new(alg.tail(i).iter().map(|(e, c)| (restrict(e, 1), *c)).collect()))
            .collect(),
    )?;
    let sub2 = Algebra::tensor_power(&sub, 2)?;
    let comul = inside
        .iter()
        .map(|&i| sub2.normal_form(&RawPoly::new(g.comul()[i].terms().map(|(m, c)| (restrict(&m.0, 2), c)).collect())))
        .collect::<Result<Vec<_>>>()?;
    let counit = inside.iter().map(|&i| g.counit()[i]).collect();
    let h = Hopf::new(format!("{}/N", g.name()), sub, comul, counit, None)?;
    Ok(Some(h.completed()?))
}

/// Freeness of the submodule spanned by `span` over the base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Freeness {
    pub free: bool,
    /// `dim_k(B/𝔪B)`.
    pub rank: usize,
    /// `dim_k(B)`.
    pub length: usize,
}

pub fn is_free_module(base: BaseRing, span: &[AlgElem], dim: usize) -> Freeness {
    let vectors: Vec<Vec<Scalar>> = span.iter().map(coords).collect();
    let s = chain::span_structure(base, &vectors, dim);
    Freeness {
        free: s.length == base.length() as usize * s.minimal_generators,
        rank: s.minimal_generators,
        length: s.length,
    }
}

/// True when `{b·c : b ∈ b_basis, c ∈ candidates}` is a basis of `A` over the
/// base ring, i.e. `A` is free over `B` with basis `candidates`.
pub fn is_free_over(b_basis: &[AlgElem], candidates: &[AlgElem]) -> Result<bool> {
    let Some(first) = b_basis.first().or(candidates.first()) else { return Ok(false) };
    let alg = first.algebra().clone();
    let base = alg.base();
    let dim = alg.dim() as usize;
    if b_basis.len() * candidates.len() != dim {
        return Ok(false);
    }
    let mut cols: Vec<SparseVec> = Vec::with_capacity(dim);
    for b in b_basis {
        for c in candidates {
            let prod = b.checked_mul(c)?;
            cols.push(prod.index_terms().map(|(k, x)| (k, base.residue(x))).filter(|(_, x)| *x != 0).collect());
        }
    }
    Ok(crate::linalg::rank(base.p(), &cols) == dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{g_lambda, mu, CatalogParams};
    use crate::hopf::HopfMorphism;
    use std::sync::Arc;

    #[test]
    fn semidirect_quotient_is_mu() {
        for (p, m, l) in [(2, 1, 1), (2, 2, 1), (3, 1, 2)] {
            let r = BaseRing::prime_field(p).unwrap();
            let g = g_lambda(CatalogParams::new(r, m, l).unwrap()).unwrap();
            let q = quotient_subalgebra(&g, &[1], Convention::Left).unwrap();
            let y = g.gen(1);
            let expected: Vec<AlgElem> = (0..p.pow(m)).map(|b| y.pow(b as u64)).collect();
            assert_eq!(q.generators, expected);
            assert!(q.closed_under_mul && q.structure.free);
            let h = Arc::new(q.hopf.clone().unwrap());
            let target = Arc::new(mu(r, m).unwrap());
            let iso = HopfMorphism::new(h.clone(), target.clone(), vec![target.gen(0)]).unwrap();
            assert!(iso.check().is_isomorphism());
            let xs: Vec<AlgElem> = (0..p).map(|i| g.gen(0).pow(i as u64)).collect();
            assert!(is_free_over(&q.generators, &xs).unwrap());
            assert_eq!(g.order() % (q.structure.length as u64), 0);
        }
    }

    #[test]
    fn trivial_and_whole_subgroups() {
        let r = BaseRing::prime_field(2).unwrap();
        let g = mu(r, 2).unwrap();
        // N = Spec(A/(y)) is the trivial subgroup: B = A
        let q = quotient_subalgebra(&g, &[0], Convention::Left).unwrap();
        assert_eq!(q.structure.length, 4);
        // N = G: B = R·1
        let q = quotient_subalgebra(&g, &[], Convention::Left).unwrap();
        assert_eq!(q.generators, vec![AlgElem::one(g.algebra())]);
        let gl = g_lambda(CatalogParams::new(r, 1, 1).unwrap()).unwrap();
        let q = quotient_subalgebra(&gl, &[], Convention::Right).unwrap();
        assert_eq!(q.structure.length, 1);
    }

    #[test]
    fn conventions_agree_for_normal_subgroup() {
        let r = BaseRing::prime_field(3).unwrap();
        let g = g_lambda(CatalogParams::new(r, 1, 1).unwrap()).unwrap();
        let left = quotient_subalgebra(&g, &[1], Convention::Left).unwrap();
        let right = quotient_subalgebra(&g, &[1], Convention::Right).unwrap();
        assert_eq!(left.generators, right.generators);
    }

    #[test]
    fn freeness_examples() {
        let r = BaseRing::fp_pi(2, 2).unwrap();
        let a = Algebra::truncated(r, &["x", "y"], &[2, 4]).unwrap();
        let y = AlgElem::gen(&a, 1);
        let span: Vec<AlgElem> = (0..4).map(|b| y.pow(b)).collect();
        assert_eq!(is_free_module(r, &span, 8), Freeness { free: true, rank: 4, length: 8 });
        let pix = AlgElem::gen(&a, 0).scale(r.pi());
        assert_eq!(
            is_free_module(r, &[AlgElem::one(&a), pix], 8),
            Freeness { free: false, rank: 2, length: 3 }
        );
        assert_eq!(is_free_module(r, &[], 8), Freeness { free: true, rank: 0, length: 0 });
    }
}
