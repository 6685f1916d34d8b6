use std::collections::{BTreeMap, HashMap};

use crate::coeffs::Coeffs;

pub type Poly = BTreeMap<Vec<u32>, u64>;

/// `k[v_1..v_n]/(v_i^{caps_i} − tails_i)`.
#[derive(Clone, Debug)]
pub struct Ring {
    pub k: Coeffs,
    pub caps: Vec<u32>,
    pub tails: Vec<Poly>,
}

impl Ring {
    pub fn truncated(k: Coeffs, caps: &[u32]) -> Ring {
        Ring { k, caps: caps.to_vec(), tails: vec![Poly::new(); caps.len()] }
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    /// `n`-fold tensor power, slot-major.
    pub fn power(&self, n: usize) -> Ring {
        let k = self.nvars();
        let mut caps = Vec::new();
        let mut tails = Vec::new();
        for s in 0..n {
            caps.extend_from_slice(&self.caps);
            for t in &self.tails {
                tails.push(
                    t.iter()
                        .map(|(e, c)| {
                            let mut big = vec![0; n * k];
                            big[s * k..(s + 1) * k].copy_from_slice(e);
                            (big, *c)
                        })
                        .collect(),
                );
            }
        }
        Ring { k: self.k, caps, tails }
    }

    pub fn zero(&self) -> Poly {
        Poly::new()
    }

    pub fn constant(&self, c: u64) -> Poly {
        let mut out = Poly::new();
        self.push(&mut out, vec![0; self.nvars()], c);
        out
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        let mut out = Poly::new();
        self.push(&mut out, e, 1);
        out
    }

    pub fn monomial(&self, e: &[u32], c: u64) -> Poly {
        let mut out = Poly::new();
        self.push(&mut out, e.to_vec(), c);
        out
    }

    /// Adds `c·v^e` to `out`, rewriting with the relations.
    fn push(&self, out: &mut Poly, e: Vec<u32>, c: u64) {
        if c == 0 {
            return;
        }
        if let Some(i) = (0..e.len()).find(|&i| e[i] >= self.caps[i]) {
            let mut rest = e;
            rest[i] -= self.caps[i];
            for (te, tc) in &self.tails[i] {
                let ne: Vec<u32> = rest.iter().zip(te).map(|(a, b)| a + b).collect();
                self.push(out, ne, self.k.mul(c, *tc));
            }
            return;
        }
        let v = self.k.add(out.get(&e).copied().unwrap_or(0), c);
        if v == 0 {
            out.remove(&e);
        } else {
            out.insert(e, v);
        }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (e, c) in b {
            self.push(&mut out, e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, a: &Poly, s: u64) -> Poly {
        let mut out = Poly::new();
        for (e, c) in a {
            self.push(&mut out, e.clone(), self.k.mul(*c, s));
        }
        out
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.scale(a, self.k.int(-1))
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.push(&mut out, e, self.k.mul(*ca, *cb));
            }
        }
        out
    }

    pub fn pow(&self, a: &Poly, e: u64) -> Poly {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Evaluates `a` (over a ring with `imgs.len()` variables) at `imgs`.
    pub fn subst(&self, a: &Poly, imgs: &[Poly]) -> Poly {
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::new();
        for (e, c) in a {
            let mut term = self.constant(*c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let f = cache.entry((i, k)).or_insert_with(|| self.pow(&imgs[i], k as u64)).clone();
                term = self.mul(&term, &f);
                if term.is_empty() {
                    break;
                }
            }
            out = self.add(&out, &term);
        }
        out
    }

    /// Places `a`, a polynomial in `slots.len()` tensor slots of `k`
    /// variables each, into the given slots of this ring.
    pub fn embed(&self, a: &Poly, k: usize, slots: &[usize]) -> Poly {
        let imgs: Vec<Poly> = (0..slots.len() * k).map(|j| self.var(slots[j / k] * k + j % k)).collect();
        self.subst(a, &imgs)
    }

    /// Monomials below the caps, in mixed-radix order with the first
    /// variable most significant.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &c in &self.caps {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..c).map(move |i| {
                        let mut e = e.clone();
                        e.push(i);
                        e
                    })
                })
                .collect();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.caps.iter().map(|&c| c as usize).product()
    }

    /// Index of a reduced monomial in `basis()`.
    pub fn index(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.caps).fold(0, |acc, (&x, &c)| acc * c as usize + x as usize)
    }

    /// `W_p(a, b) = Σ_{0<i<p} (C(p,i)/p)·a^i b^{p−i}`.
    pub fn wp(&self, a: &Poly, b: &Poly) -> Poly {
        let p = self.k.p();
        let mut out = Poly::new();
        for i in 1..p {
            let c = (crate::coeffs::binomial(p, i) / p as u128 % (self.k.p() * self.k.p()) as u128) as i64;
            let t = self.mul(&self.pow(a, i), &self.pow(b, p - i));
            out = self.add(&out, &self.scale(&t, self.k.int(c)));
        }
        out
    }
}
