//! The Hochschild complex `C^n = V ⊗ A^{⊗n}` of a comodule over a field,
//! with `d(e_j⊗a) = Σ_i e_i⊗M_ij⊗a + Σ_k (−1)^k Δ_k(a) + (−1)^{n+1} a⊗1`.

use crate::fp::Span;
use crate::law::Law;
use crate::poly::{Poly, Ring};

pub type Cochain = Vec<Poly>;

pub struct Complex<'a> {
    pub law: &'a Law,
    /// `ρ(e_j) = Σ_i e_i ⊗ matrix[i][j]`
    pub matrix: Vec<Vec<Poly>>,
}

impl<'a> Complex<'a> {
    pub fn new(law: &'a Law, matrix: Vec<Vec<Poly>>) -> Self {
        Complex { law, matrix }
    }

    pub fn trivial(law: &'a Law) -> Self {
        Complex { law, matrix: vec![vec![law.one.one()]] }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn ring(&self, n: u32) -> Ring {
        self.law.one.power(n as usize)
    }

    pub fn dim(&self, n: u32) -> usize {
        self.rank() * self.law.one.dim().pow(n)
    }

    /// Comodule axioms: `(ρ⊗id)ρ = (id⊗Δ)ρ` and `(id⊗ε)ρ = id`.
    pub fn is_comodule(&self) -> bool {
        let law = self.law;
        let k = law.ngens();
        let r = self.rank();
        let two = &law.two;
        let consts: Vec<Poly> = law.counit.iter().map(|&c| law.one.constant(c)).collect();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let lhs = (0..r).fold(two.zero(), |acc, l| {
                    let t = two.mul(&two.embed(&self.matrix[i][l], k, &[0]), &two.embed(&self.matrix[l][j], k, &[1]));
                    two.add(&acc, &t)
                });
                let rhs = two.subst(&self.matrix[i][j], &law.comul);
                let unit = law.one.subst(&self.matrix[i][j], &consts) == law.one.constant(u64::from(i == j));
                lhs == rhs && unit
            })
        })
    }

    pub fn d(&self, n: u32, c: &Cochain) -> Cochain {
        let law = self.law;
        let k = law.ngens();
        let n = n as usize;
        let dst = self.ring(n as u32 + 1);
        let var = |s: usize, t: usize| dst.var(s * k + t);
        let shifted: Vec<Poly> = (0..n * k).map(|t| var(t / k + 1, t % k)).collect();
        let kept: Vec<Poly> = (0..n * k).map(|t| var(t / k, t % k)).collect();
        (0..self.rank())
            .map(|i| {
                let mut out = dst.zero();
                for (j, cj) in c.iter().enumerate() {
                    if cj.is_empty() {
                        continue;
                    }
                    let m = dst.embed(&self.matrix[i][j], k, &[0]);
                    out = dst.add(&out, &dst.mul(&m, &dst.subst(cj, &shifted)));
                }
                for slot in 0..n {
                    let imgs: Vec<Poly> = (0..n * k)
                        .map(|t| {
                            let (s, g) = (t / k, t % k);
                            match s.cmp(&slot) {
                                std::cmp::Ordering::Less => var(s, g),
                                std::cmp::Ordering::Equal => dst.embed(&law.comul[g], k, &[s, s + 1]),
                                std::cmp::Ordering::Greater => var(s + 1, g),
                            }
                        })
                        .collect();
                    let t = dst.subst(&c[i], &imgs);
                    out = if slot % 2 == 0 { dst.sub(&out, &t) } else { dst.add(&out, &t) };
                }
                let last = dst.subst(&c[i], &kept);
                out = if n % 2 == 0 { dst.sub(&out, &last) } else { dst.add(&out, &last) };
                out
            })
            .collect()
    }

    pub fn to_vec(&self, n: u32, c: &Cochain) -> Vec<u64> {
        let ring = self.ring(n);
        let da = ring.dim();
        let mut v = vec![0; self.rank() * da];
        for (j, cj) in c.iter().enumerate() {
            for (e, x) in cj {
                v[j * da + ring.index(e)] = *x;
            }
        }
        v
    }

    pub fn basis_cochain(&self, n: u32, idx: usize) -> Cochain {
        let ring = self.ring(n);
        let da = ring.dim();
        let e = &ring.basis()[idx % da];
        (0..self.rank()).map(|j| if j == idx / da { ring.monomial(e, 1) } else { ring.zero() }).collect()
    }

    /// Span of `d^n` over all basis cochains.
    pub fn image(&self, n: u32) -> Span {
        let mut span = Span::new(self.law.k().p());
        for idx in 0..self.dim(n) {
            span.insert(&self.to_vec(n + 1, &self.d(n, &self.basis_cochain(n, idx))));
        }
        span
    }

    /// `dim Z^n − dim B^n`.
    pub fn cohomology_dim(&self, n: u32) -> usize {
        let kernel = self.dim(n) - self.image(n).rank();
        let boundaries = if n == 0 { 0 } else { self.image(n - 1).rank() };
        kernel - boundaries
    }

    pub fn is_cocycle(&self, n: u32, c: &Cochain) -> bool {
        self.d(n, c).iter().all(|p| p.is_empty())
    }
}
