//! Truncated multivariate polynomial algebras `R[x_1..x_n]/(x_i^{d_i} - r_i)`
//! and their elements in reduced normal form.
//!
//! A reduced monomial is identified with its mixed-radix index
//! `Σ e_i · stride_i` where the first generator is most significant, so the
//! natural order on indices is the lexicographic order on exponent vectors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{BaseRing, RingKind, Scalar};

/// Exponent vector, one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial(vec![0; ngens])
    }
}

/// Formal polynomial with unbounded exponents, prior to normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPoly {
    pub terms: Vec<(Vec<u32>, Scalar)>,
}

impl RawPoly {
    pub fn new(terms: Vec<(Vec<u32>, Scalar)>) -> Self {
        RawPoly { terms }
    }

    pub fn zero() -> Self {
        RawPoly::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    base: BaseRing,
    names: Vec<String>,
    bounds: Vec<u32>,
    /// Reduced tail of each relation, as (exponents, coefficient).
    tails: Vec<Vec<(Vec<u32>, Scalar)>>,
    strides: Vec<u64>,
    dim: u64,
}

pub type AlgebraRef = Arc<Algebra>;

impl Algebra {
    /// Builds `base[gens]/(gen_i^{bounds_i} - tails_i)`.
    ///
    /// Every tail term must either have a coefficient in the maximal ideal
    /// that annihilates the maximal ideal, or be a pure power of its own
    /// generator below the bound. Either condition makes rewriting terminate.
    pub fn new(
        base: BaseRing,
        names: Vec<String>,
        bounds: Vec<u32>,
        tails: Vec<RawPoly>,
    ) -> Result<AlgebraRef> {
        let n = names.len();
        if bounds.len() != n || tails.len() != n {
            return Err(Error::InvalidPresentation(
                "names, bounds and tails must have equal length".into(),
            ));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator {name}")));
            }
        }
        if bounds.iter().any(|&d| d == 0) {
            return Err(Error::InvalidPresentation("bounds must be positive".into()));
        }
        let mut strides = vec![1u64; n];
        let mut dim: u64 = 1;
        for i in (0..n).rev() {
            strides[i] = dim;
            dim = dim
                .checked_mul(bounds[i] as u64)
                .filter(|d| *d <= 1 << 40)
                .ok_or_else(|| Error::InvalidPresentation("dimension too large".into()))?;
        }
        let mut reduced_tails = Vec::with_capacity(n);
        for (i, tail) in tails.into_iter().enumerate() {
            let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
            for (exps, c) in tail.terms {
                if exps.len() != n {
                    return Err(Error::InvalidPresentation(format!(
                        "tail of {} has wrong arity",
                        names[i]
                    )));
                }
                let slot = acc.entry(exps).or_insert(Scalar::ZERO);
                *slot = base.add(*slot, c);
            }
            let mut terms = Vec::new();
            for (exps, c) in acc {
                if c.is_zero() {
                    continue;
                }
                if exps.iter().zip(&bounds).any(|(e, d)| e >= d) {
                    return Err(Error::InvalidPresentation(format!(
                        "tail of {} is not reduced",
                        names[i]
                    )));
                }
                if exps.iter().all(|&e| e == 0) {
                    return Err(Error::InvalidPresentation(format!(
                        "tail of {} has a constant term",
                        names[i]
                    )));
                }
                let socle = !base.is_unit(c) && base.annihilates_maximal_ideal(c);
                let pure_lower = exps
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| if j == i { e < bounds[i] } else { e == 0 });
                if !(socle || pure_lower) {
                    return Err(Error::InvalidPresentation(format!(
                        "tail of {} has coefficient {} outside Ann(m) on a mixed monomial",
                        names[i],
                        base.format(c)
                    )));
                }
                terms.push((exps, c));
            }
            reduced_tails.push(terms);
        }
        Ok(Arc::new(Algebra { base, names, bounds, tails: reduced_tails, strides, dim }))
    }

    /// `base[gens]/(gen_i^{d_i})`.
    pub fn truncated(base: BaseRing, names: &[&str], bounds: &[u32]) -> Result<AlgebraRef> {
        Self::new(
            base,
            names.iter().map(|s| s.to_string()).collect(),
            bounds.to_vec(),
            vec![RawPoly::zero(); names.len()],
        )
    }

    /// The base ring viewed as an algebra with no generators.
    pub fn unit(base: BaseRing) -> AlgebraRef {
        Arc::new(Algebra {
            base,
            names: Vec::new(),
            bounds: Vec::new(),
            tails: Vec::new(),
            strides: Vec::new(),
            dim: 1,
        })
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    /// Rank as a free module over the base ring.
    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn tail(&self, i: usize) -> &[(Vec<u32>, Scalar)] {
        &self.tails[i]
    }

    pub fn tail_elem(self: &Arc<Self>, i: usize) -> AlgElem {
        let terms = self.tails[i].iter().map(|(e, c)| (self.encode(e), *c)).collect();
        AlgElem { alg: self.clone(), terms }
    }

    pub fn has_zero_tails(&self) -> bool {
        self.tails.iter().all(|t| t.is_empty())
    }

    pub fn encode(&self, exps: &[u32]) -> u64 {
        exps.iter().zip(&self.strides).map(|(&e, &s)| e as u64 * s).sum()
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u32> {
        let mut out = vec![0u32; self.ngens()];
        for i in 0..self.ngens() {
            out[i] = (idx / self.strides[i]) as u32;
            idx %= self.strides[i];
        }
        out
    }

    fn decode_into(&self, mut idx: u64, out: &mut [u32]) {
        for i in 0..self.ngens() {
            out[i] = (idx / self.strides[i]) as u32;
            idx %= self.strides[i];
        }
    }

    /// Adds `c · x^exps` (exponents unbounded) in reduced form into `out`.
    fn push_reduced(&self, exps: &mut [u32], c: Scalar, out: &mut HashMap<u64, Scalar>) {
        if c.is_zero() {
            return;
        }
        match (0..self.ngens()).find(|&i| exps[i] >= self.bounds[i]) {
            None => {
                let idx = self.encode(exps);
                let slot = out.entry(idx).or_insert(Scalar::ZERO);
                *slot = self.base.add(*slot, c);
            }
            Some(i) => {
                if self.tails[i].is_empty() {
                    return;
                }
                exps[i] -= self.bounds[i];
                let mut next = exps.to_vec();
                for (t, tc) in &self.tails[i] {
                    let cc = self.base.mul(c, *tc);
                    if cc.is_zero() {
                        continue;
                    }
                    for j in 0..self.ngens() {
                        next[j] = exps[j] + t[j];
                    }
                    self.push_reduced(&mut next, cc, out);
                }
                exps[i] += self.bounds[i];
            }
        }
    }

    /// Reduced normal form of a formal polynomial.
    pub fn normal_form(self: &Arc<Self>, raw: &RawPoly) -> Result<AlgElem> {
        let mut acc = HashMap::new();
        for (exps, c) in &raw.terms {
            if exps.len() != self.ngens() {
                return Err(Error::InvalidPresentation("monomial arity mismatch".into()));
            }
            let mut e = exps.clone();
            self.push_reduced(&mut e, *c, &mut acc);
        }
        Ok(AlgElem::from_map(self.clone(), acc))
    }

    /// Same presentation over another base ring, coefficients mapped by `f`.
    pub fn map_base(
        &self,
        base: BaseRing,
        f: impl Fn(Scalar) -> Scalar,
    ) -> Result<AlgebraRef> {
        let tails = self
            .tails
            .iter()
            .map(|t| RawPoly::new(t.iter().map(|(e, c)| (e.clone(), f(*c))).collect()))
            .collect();
        Algebra::new(base, self.names.clone(), self.bounds.clone(), tails)
    }

    /// Reduction modulo the maximal ideal.
    pub fn residue(&self) -> Result<AlgebraRef> {
        let b = self.base;
        self.map_base(b.residue_field(), |c| Scalar(b.residue(c)))
    }

    /// `A ⊗ B`, generators renamed `g@1` for `A` and `g@2` for `B`.
    pub fn tensor(a: &Algebra, b: &Algebra) -> Result<AlgebraRef> {
        if a.base != b.base {
            return Err(Error::BaseMismatch);
        }
        let (na, nb) = (a.ngens(), b.ngens());
        let mut names = Vec::with_capacity(na + nb);
        names.extend(a.names.iter().map(|n| format!("{n}@1")));
        names.extend(b.names.iter().map(|n| format!("{n}@2")));
        let mut bounds = a.bounds.clone();
        bounds.extend(&b.bounds);
        let mut tails = Vec::new();
        for t in &a.tails {
            tails.push(RawPoly::new(
                t.iter()
                    .map(|(e, c)| {
                        let mut v = e.clone();
                        v.extend(std::iter::repeat(0).take(nb));
                        (v, *c)
                    })
                    .collect(),
            ));
        }
        for t in &b.tails {
            tails.push(RawPoly::new(
                t.iter()
                    .map(|(e, c)| {
                        let mut v = vec![0; na];
                        v.extend(e);
                        (v, *c)
                    })
                    .collect(),
            ));
        }
        Algebra::new(a.base, names, bounds, tails)
    }

    /// `A^{⊗n}` with generators `g@1 .. g@n`, slot 1 most significant.
    pub fn tensor_power(a: &Algebra, n: usize) -> Result<AlgebraRef> {
        let k = a.ngens();
        let mut names = Vec::with_capacity(k * n);
        let mut bounds = Vec::with_capacity(k * n);
        let mut tails = Vec::with_capacity(k * n);
        for slot in 0..n {
            for (i, name) in a.names.iter().enumerate() {
                names.push(format!("{name}@{}", slot + 1));
                bounds.push(a.bounds[i]);
                tails.push(RawPoly::new(
                    a.tails[i]
                        .iter()
                        .map(|(e, c)| {
                            let mut v = vec![0; k * n];
                            v[slot * k..slot * k + k].copy_from_slice(e);
                            (v, *c)
                        })
                        .collect(),
                ));
            }
        }
        Algebra::new(a.base, names, bounds, tails)
    }

    /// `A/(gens in kill)`, defined when every killed relation becomes `0 = 0`.
    /// Returns the quotient and the images of the generators of `A`.
    pub fn kill_generators(self: &Arc<Self>, kill: &[usize]) -> Result<(AlgebraRef, Vec<AlgElem>)> {
        let keep: Vec<usize> = (0..self.ngens()).filter(|i| !kill.contains(i)).collect();
        let restrict = |t: &[(Vec<u32>, Scalar)]| -> RawPoly {
            RawPoly::new(
                t.iter()
                    .filter(|(e, _)| kill.iter().all(|&k| e[k] == 0))
                    .map(|(e, c)| (keep.iter().map(|&j| e[j]).collect(), *c))
                    .collect(),
            )
        };
        for &k in kill {
            if k >= self.ngens() {
                return Err(Error::Quotient(format!("generator index {k} out of range")));
            }
            if !restrict(&self.tails[k]).terms.is_empty() {
                return Err(Error::Quotient(format!(
                    "killing {} leaves a relation on the remaining generators",
                    self.names[k]
                )));
            }
        }
        let q = Algebra::new(
            self.base,
            keep.iter().map(|&j| self.names[j].clone()).collect(),
            keep.iter().map(|&j| self.bounds[j]).collect(),
            keep.iter().map(|&j| restrict(&self.tails[j])).collect(),
        )?;
        let images = (0..self.ngens())
            .map(|i| match keep.iter().position(|&j| j == i) {
                Some(pos) => AlgElem::gen(&q, pos),
                None => AlgElem::zero(&q),
            })
            .collect();
        Ok((q, images))
    }

    pub fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Element of an [`Algebra`] in reduced normal form: a sparse map from
/// monomial index to nonzero coefficient.
#[derive(Clone)]
pub struct AlgElem {
    alg: AlgebraRef,
    terms: BTreeMap<u64, Scalar>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        same_owner(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for AlgElem {}

pub fn same_owner(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgElem {
    fn from_map(alg: AlgebraRef, acc: HashMap<u64, Scalar>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AlgElem { alg, terms }
    }

    pub fn zero(alg: &AlgebraRef) -> Self {
        AlgElem { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(alg: &AlgebraRef, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        AlgElem { alg: alg.clone(), terms }
    }

    pub fn one(alg: &AlgebraRef) -> Self {
        Self::constant(alg, alg.base.one())
    }

    pub fn from_int(alg: &AlgebraRef, n: i64) -> Self {
        Self::constant(alg, alg.base.from_int(n))
    }

    /// The `i`-th generator, reduced (a generator with bound 1 is its tail).
    pub fn gen(alg: &AlgebraRef, i: usize) -> Self {
        let mut e = vec![0; alg.ngens()];
        e[i] = 1;
        Self::monomial(alg, &e, alg.base.one())
    }

    pub fn gen_named(alg: &AlgebraRef, name: &str) -> Option<Self> {
        alg.gen_index(name).map(|i| Self::gen(alg, i))
    }

    /// `c · x^exps`, reduced.
    pub fn monomial(alg: &AlgebraRef, exps: &[u32], c: Scalar) -> Self {
        let mut acc = HashMap::new();
        let mut e = exps.to_vec();
        alg.push_reduced(&mut e, c, &mut acc);
        Self::from_map(alg.clone(), acc)
    }

    /// Builds an element from basis-index terms (indices must be reduced).
    pub fn from_index_terms(alg: &AlgebraRef, terms: impl IntoIterator<Item = (u64, Scalar)>) -> Self {
        let base = alg.base;
        let mut map: BTreeMap<u64, Scalar> = BTreeMap::new();
        for (i, c) in terms {
            debug_assert!(i < alg.dim);
            let slot = map.entry(i).or_insert(Scalar::ZERO);
            *slot = base.add(*slot, c);
        }
        map.retain(|_, c| !c.is_zero());
        AlgElem { alg: alg.clone(), terms: map }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn base(&self) -> BaseRing {
        self.alg.base
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (basis index, coefficient), in increasing index order.
    pub fn index_terms(&self) -> impl Iterator<Item = (u64, Scalar)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, *c))
    }

    /// Terms as (exponents, coefficient), in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Scalar)> + '_ {
        self.terms.iter().map(|(i, c)| (Monomial(self.alg.decode(*i)), *c))
    }

    pub fn coefficient_index(&self, idx: u64) -> Scalar {
        self.terms.get(&idx).copied().unwrap_or(Scalar::ZERO)
    }

    /// Coefficient of a reduced monomial; zero when absent.
    pub fn coefficient_of(&self, mono: &Monomial) -> Result<Scalar> {
        if mono.0.len() != self.alg.ngens()
            || mono.0.iter().zip(&self.alg.bounds).any(|(e, d)| e >= d)
        {
            return Err(Error::OutOfRange("monomial outside the normal-form basis".into()));
        }
        Ok(self.coefficient_index(self.alg.encode(&mono.0)))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient_index(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&i| i == 0)
    }

    fn check_owner(&self, other: &AlgElem) -> Result<()> {
        if same_owner(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn checked_add(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_owner(other)?;
        let base = self.alg.base;
        let mut terms = self.terms.clone();
        for (i, c) in &other.terms {
            let slot = terms.entry(*i).or_insert(Scalar::ZERO);
            *slot = base.add(*slot, *c);
            if slot.is_zero() {
                terms.remove(i);
            }
        }
        Ok(AlgElem { alg: self.alg.clone(), terms })
    }

    pub fn checked_sub(&self, other: &AlgElem) -> Result<AlgElem> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> AlgElem {
        let base = self.alg.base;
        AlgElem {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(i, c)| (*i, base.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, s: Scalar) -> AlgElem {
        let base = self.alg.base;
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (*i, base.mul(*c, s)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        AlgElem { alg: self.alg.clone(), terms }
    }

    pub fn checked_mul(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_owner(other)?;
        if self.is_constant() {
            return Ok(other.scale(self.constant_term()));
        }
        if other.is_constant() {
            return Ok(self.scale(other.constant_term()));
        }
        let alg = &self.alg;
        let base = alg.base;
        let n = alg.ngens();
        let decode_all = |e: &AlgElem| -> Vec<(u64, Vec<u32>, Scalar)> {
            e.terms
                .iter()
                .map(|(i, c)| {
                    let mut v = vec![0; n];
                    alg.decode_into(*i, &mut v);
                    (*i, v, *c)
                })
                .collect()
        };
        let (lhs, rhs) = (decode_all(self), decode_all(other));
        let mut acc: HashMap<u64, Scalar> = HashMap::with_capacity(lhs.len() * rhs.len() / 2 + 1);
        let mut sum = vec![0u32; n];
        for (ia, ea, ca) in &lhs {
            for (ib, eb, cb) in &rhs {
                let c = base.mul(*ca, *cb);
                if c.is_zero() {
                    continue;
                }
                let mut overflow = false;
                for j in 0..n {
                    sum[j] = ea[j] + eb[j];
                    overflow |= sum[j] >= alg.bounds[j];
                }
                if overflow {
                    alg.push_reduced(&mut sum, c, &mut acc);
                } else {
                    let slot = acc.entry(ia + ib).or_insert(Scalar::ZERO);
                    *slot = base.add(*slot, c);
                }
            }
        }
        Ok(AlgElem::from_map(alg.clone(), acc))
    }

    pub fn pow(&self, mut e: u64) -> AlgElem {
        let mut base = self.clone();
        let mut acc = AlgElem::one(&self.alg);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of an element whose constant term is a unit and whose
    /// remaining part is nilpotent.
    pub fn inverse(&self) -> Option<AlgElem> {
        let base = self.alg.base;
        let c = self.constant_term();
        let cinv = base.inv(c)?;
        let mut n = self.clone();
        n.terms.remove(&0);
        let step = n.scale(base.neg(cinv));
        let mut acc = AlgElem::one(&self.alg);
        let mut power = AlgElem::one(&self.alg);
        for _ in 0..=self.alg.dim() as usize + 1 {
            power = &power * &step;
            if power.is_zero() {
                return Some(acc.scale(cinv));
            }
            acc = &acc + &power;
        }
        None
    }

    /// Coefficientwise image in another algebra with the same generators.
    pub fn map_coeffs(&self, target: &AlgebraRef, f: impl Fn(Scalar) -> Scalar) -> Result<AlgElem> {
        if target.names != self.alg.names || target.bounds != self.alg.bounds {
            return Err(Error::OwnerMismatch);
        }
        let mut acc = HashMap::new();
        for (i, c) in &self.terms {
            let mut e = self.alg.decode(*i);
            target.push_reduced(&mut e, f(*c), &mut acc);
        }
        Ok(AlgElem::from_map(target.clone(), acc))
    }

    /// Same element viewed in an algebra with identical generators whose
    /// relations may differ (no reduction is performed; indices must fit).
    pub fn transport(&self, target: &AlgebraRef) -> Result<AlgElem> {
        if target.names != self.alg.names || target.bounds != self.alg.bounds || target.base != self.alg.base {
            return Err(Error::OwnerMismatch);
        }
        Ok(AlgElem { alg: target.clone(), terms: self.terms.clone() })
    }

    /// Reduction modulo the maximal ideal into `residue_alg`.
    pub fn residue(&self, residue_alg: &AlgebraRef) -> Result<AlgElem> {
        let b = self.alg.base;
        self.map_coeffs(residue_alg, |c| Scalar(b.residue(c)))
    }

    /// Evaluates this element with generator `i` replaced by `images[i]`.
    pub fn substitute(&self, images: &[AlgElem], target: &AlgebraRef) -> Result<AlgElem> {
        if images.len() != self.alg.ngens() {
            return Err(Error::OwnerMismatch);
        }
        if target.base != self.alg.base {
            return Err(Error::BaseMismatch);
        }
        for img in images {
            if !same_owner(&img.alg, target) {
                return Err(Error::OwnerMismatch);
            }
        }
        let mut powers = PowerCache::new(images);
        Ok(self.substitute_cached(&mut powers, target))
    }

    pub(crate) fn substitute_cached(&self, powers: &mut PowerCache, target: &AlgebraRef) -> AlgElem {
        let n = self.alg.ngens();
        let terms: Vec<(Vec<u32>, Scalar)> =
            self.terms.iter().map(|(i, c)| (self.alg.decode(*i), *c)).collect();
        if n == 0 {
            return AlgElem::constant(target, self.constant_term());
        }
        horner(&terms, 0, n, powers, target)
    }

    pub fn display(&self) -> String {
        format!("{self}")
    }
}

/// Cached powers `images[i]^k`.
pub(crate) struct PowerCache<'a> {
    images: &'a [AlgElem],
    powers: Vec<Vec<AlgElem>>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(images: &'a [AlgElem]) -> Self {
        PowerCache { images, powers: vec![Vec::new(); images.len()] }
    }

    fn get(&mut self, i: usize, k: u32) -> &AlgElem {
        let cache = &mut self.powers[i];
        if cache.is_empty() {
            cache.push(AlgElem::one(&self.images[i].alg));
        }
        while cache.len() <= k as usize {
            let next = cache.last().unwrap() * &self.images[i];
            cache.push(next);
        }
        &cache[k as usize]
    }
}

/// Nested Horner evaluation over the lexicographically sorted terms.
fn horner(
    terms: &[(Vec<u32>, Scalar)],
    depth: usize,
    n: usize,
    powers: &mut PowerCache,
    target: &AlgebraRef,
) -> AlgElem {
    if depth == n {
        let base = target.base;
        let c = terms.iter().fold(Scalar::ZERO, |acc, (_, c)| base.add(acc, *c));
        return AlgElem::constant(target, c);
    }
    let mut acc = AlgElem::zero(target);
    let mut start = 0;
    while start < terms.len() {
        let k = terms[start].0[depth];
        let mut end = start;
        while end < terms.len() && terms[end].0[depth] == k {
            end += 1;
        }
        let inner = horner(&terms[start..end], depth + 1, n, powers, target);
        if !inner.is_zero() {
            let term = if k == 0 { inner } else { &inner * powers.get(depth, k) };
            acc = &acc + &term;
        }
        start = end;
    }
    acc
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&AlgElem> for &AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: &AlgElem) -> AlgElem {
                self.$checked(rhs).expect("algebra elements from different algebras")
            }
        }
        impl std::ops::$tr<AlgElem> for AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: AlgElem) -> AlgElem {
                self.$checked(&rhs).expect("algebra elements from different algebras")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem::neg(self)
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let base = self.alg.base;
        let mut first = true;
        for (i, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = self.alg.format_monomial(&self.alg.decode(*i));
            let cs = base.format(*c);
            match (mono.as_str(), cs.as_str()) {
                ("1", _) => write!(f, "{cs}")?,
                (_, "1") => write!(f, "{mono}")?,
                _ => write!(f, "{cs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem({self})")
    }
}

fn binomial(n: u32, k: u32) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Integer coefficients of `W_p(a,b) = ((a+b)^p - a^p - b^p)/p`: entry `k`
/// is the coefficient of `a^k b^{p-k}` for `1 ≤ k ≤ p-1`.
pub fn wp_coefficients(p: u32) -> Vec<BigUint> {
    (1..p).map(|k| binomial(p, k) / BigUint::from(p)).collect()
}

fn reduce_big(base: BaseRing, n: &BigUint) -> Scalar {
    let modulus = match base.kind() {
        RingKind::FpPi => base.p(),
        RingKind::Zmod => base.size(),
    };
    let r = (n % BigUint::from(modulus)).to_u32().unwrap_or(0);
    base.from_int(r as i64)
}

/// `W_p(a, b) = Σ_{k=1}^{p-1} (C(p,k)/p) a^k b^{p-k}`, the Witt addition
/// carry, with the integer coefficients divided exactly before reduction.
pub fn wp_polynomial(p: u32, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
    a.check_owner(b)?;
    let base = a.base();
    let mut acc = AlgElem::zero(&a.alg);
    for (k, coeff) in (1..p).zip(wp_coefficients(p)) {
        if coeff.is_zero() {
            continue;
        }
        let c = reduce_big(base, &coeff);
        let term = &a.pow(k as u64) * &b.pow((p - k) as u64);
        acc = &acc + &term.scale(c);
    }
    Ok(acc)
}

/// Free-standing alias for [`Algebra::normal_form`].
pub fn normal_form(owner: &AlgebraRef, raw: &RawPoly) -> Result<AlgElem> {
    owner.normal_form(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2pi() -> BaseRing {
        BaseRing::fp_pi(2, 2).unwrap()
    }

    fn xy_alg() -> AlgebraRef {
        let r = f2pi();
        // x^2 = pi*y^2, y^4 = 0
        Algebra::new(
            r,
            vec!["x".into(), "y".into()],
            vec![2, 4],
            vec![RawPoly::new(vec![(vec![0, 2], r.pi())]), RawPoly::zero()],
        )
        .unwrap()
    }

    #[test]
    fn normal_form_rewrites() {
        let a = xy_alg();
        let r = a.base();
        let e = a.normal_form(&RawPoly::new(vec![(vec![3, 1], r.one())])).unwrap();
        assert_eq!(e.to_string(), "pi*x*y^3");
        let z = a.normal_form(&RawPoly::zero()).unwrap();
        assert!(z.is_zero());
        let x4 = a.normal_form(&RawPoly::new(vec![(vec![4, 0], r.one())])).unwrap();
        assert!(x4.is_zero());
        let once = a.normal_form(&RawPoly::new(vec![(vec![3, 3], r.one()), (vec![1, 0], r.one())])).unwrap();
        let raw: Vec<_> = once.terms().map(|(m, c)| (m.0, c)).collect();
        assert_eq!(a.normal_form(&RawPoly::new(raw)).unwrap(), once);
    }

    #[test]
    fn small_products() {
        let f2 = BaseRing::prime_field(2).unwrap();
        let a = Algebra::truncated(f2, &["y"], &[4]).unwrap();
        let y = AlgElem::gen(&a, 0);
        let one = AlgElem::one(&a);
        let s = &one + &y;
        assert_eq!((&s * &s).to_string(), "1 + y^2");
        assert_eq!((&s.pow(3) - &one).to_string(), "y + y^2 + y^3");
        let b = xy_alg();
        let x = AlgElem::gen(&b, 0);
        assert_eq!((&x * &x).to_string(), "pi*y^2");
    }

    #[test]
    fn tensor_dimensions() {
        let f2 = BaseRing::prime_field(2).unwrap();
        let a = Algebra::truncated(f2, &["x", "y"], &[2, 4]).unwrap();
        assert_eq!(Algebra::tensor(&a, &a).unwrap().dim(), 64);
        let unit = Algebra::unit(f2);
        let t = Algebra::tensor(&a, &unit).unwrap();
        assert_eq!(t.dim(), a.dim());
        let alpha = Algebra::truncated(f2, &["x"], &[2]).unwrap();
        let mu = Algebra::truncated(f2, &["y"], &[2]).unwrap();
        let am = Algebra::tensor(&alpha, &mu).unwrap();
        assert_eq!(am.dim(), 4);
        assert_eq!(am.names(), &["x@1".to_string(), "y@2".to_string()]);
        assert!(am.has_zero_tails());
        assert!(Algebra::tensor(&a, &Algebra::unit(BaseRing::prime_field(3).unwrap())).is_err());
    }

    #[test]
    fn substitution_examples() {
        let f3 = BaseRing::prime_field(3).unwrap();
        let src = Algebra::truncated(f3, &["x"], &[3]).unwrap();
        let tgt = Algebra::truncated(f3, &["y"], &[3]).unwrap();
        let x2 = AlgElem::gen(&src, 0).pow(2);
        let img = x2.substitute(&[AlgElem::gen(&tgt, 0)], &tgt).unwrap();
        assert_eq!(img.to_string(), "y^2");
        let id = x2.substitute(&[AlgElem::gen(&src, 0)], &src).unwrap();
        assert_eq!(id, x2);

        let f2 = BaseRing::prime_field(2).unwrap();
        let s2 = Algebra::truncated(f2, &["x"], &[2]).unwrap();
        let t2 = Algebra::truncated(f2, &["y"], &[4]).unwrap();
        let y = AlgElem::gen(&t2, 0);
        let img = &(&AlgElem::one(&t2) + &y) - &AlgElem::one(&t2);
        assert_eq!(AlgElem::gen(&s2, 0).substitute(&[img], &t2).unwrap().to_string(), "y");
    }

    #[test]
    fn wp_examples() {
        let f2 = BaseRing::prime_field(2).unwrap();
        let a = Algebra::truncated(f2, &["x", "z"], &[2, 2]).unwrap();
        let (x, z) = (AlgElem::gen(&a, 0), AlgElem::gen(&a, 1));
        assert_eq!(wp_polynomial(2, &x, &z).unwrap().to_string(), "x*z");
        assert!(wp_polynomial(2, &x, &AlgElem::zero(&a)).unwrap().is_zero());

        let f3 = BaseRing::prime_field(3).unwrap();
        let b = Algebra::truncated(f3, &["x", "z"], &[3, 3]).unwrap();
        let (x, z) = (AlgElem::gen(&b, 0), AlgElem::gen(&b, 1));
        let w = wp_polynomial(3, &x, &z).unwrap();
        assert_eq!(w.to_string(), "x*z^2 + x^2*z");
        assert_eq!(w.coefficient_of(&Monomial(vec![2, 1])).unwrap(), Scalar::ONE);
        assert_eq!(AlgElem::zero(&b).coefficient_of(&Monomial(vec![1, 0])).unwrap(), Scalar::ZERO);
        assert!(wp_polynomial(3, &x, &AlgElem::zero(&b)).unwrap().is_zero());
        assert_eq!(wp_coefficients(5).iter().map(|c| c.to_u32().unwrap()).collect::<Vec<_>>(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn coefficient_lookup() {
        let f2 = BaseRing::prime_field(2).unwrap();
        let a = Algebra::truncated(f2, &["x", "y"], &[2, 2]).unwrap();
        let xy = &AlgElem::gen(&a, 0) * &AlgElem::gen(&a, 1);
        assert_eq!(xy.coefficient_of(&Monomial(vec![1, 1])).unwrap(), Scalar::ONE);
        assert!(xy.coefficient_of(&Monomial(vec![2, 0])).is_err());
    }

    #[test]
    fn owner_mismatch_is_an_error() {
        let f2 = BaseRing::prime_field(2).unwrap();
        let a = Algebra::truncated(f2, &["x"], &[2]).unwrap();
        let b = Algebra::truncated(f2, &["y"], &[2]).unwrap();
        assert_eq!(
            AlgElem::gen(&a, 0).checked_mul(&AlgElem::gen(&b, 0)),
            Err(Error::OwnerMismatch)
        );
    }

    #[test]
    fn rejects_non_terminating_tails() {
        let f2 = BaseRing::prime_field(2).unwrap();
        let r = Algebra::new(
            f2,
            vec!["x".into(), "y".into()],
            vec![2, 2],
            vec![RawPoly::new(vec![(vec![0, 1], Scalar::ONE)]), RawPoly::new(vec![(vec![1, 0], Scalar::ONE)])],
        );
        assert!(r.is_err());
        // Oort-Tate style: tau^2 = tau over Z/4 is allowed
        let z4 = BaseRing::zmod(2, 2).unwrap();
        let ot = Algebra::new(z4, vec!["t".into()], vec![2], vec![RawPoly::new(vec![(vec![1], Scalar::ONE)])]).unwrap();
        let t = AlgElem::gen(&ot, 0);
        assert_eq!(t.pow(5), t);
    }

    #[test]
    fn inverse_of_unit() {
        let f3 = BaseRing::prime_field(3).unwrap();
        let a = Algebra::truncated(f3, &["y"], &[9]).unwrap();
        let u = &AlgElem::one(&a) + &AlgElem::gen(&a, 0);
        let inv = u.inverse().unwrap();
        assert_eq!(&u * &inv, AlgElem::one(&a));
    }
}
