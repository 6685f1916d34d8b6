use crate::coeffs::Coeffs;
use crate::fp;
use crate::poly::{Poly, Ring};

/// A candidate Hopf algebra: comultiplication on generators, counit values
/// and (optionally) antipode images.
#[derive(Clone, Debug)]
pub struct Law {
    pub name: String,
    pub one: Ring,
    pub two: Ring,
    pub three: Ring,
    pub comul: Vec<Poly>,
    pub counit: Vec<u64>,
    pub antipode: Option<Vec<Poly>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Axioms {
    pub well_defined: bool,
    pub coassociative: bool,
    pub counit: bool,
    pub antipode: bool,
}

impl Axioms {
    pub fn all(&self) -> bool {
        self.well_defined && self.coassociative && self.counit && self.antipode
    }
}

impl Law {
    pub fn new(name: impl Into<String>, one: Ring, comul: Vec<Poly>, counit: Vec<u64>, antipode: Option<Vec<Poly>>) -> Law {
        let (two, three) = (one.power(2), one.power(3));
        Law { name: name.into(), one, two, three, comul, counit, antipode }
    }

    pub fn k(&self) -> Coeffs {
        self.one.k
    }

    pub fn ngens(&self) -> usize {
        self.one.nvars()
    }

    fn vars(&self) -> Vec<Poly> {
        (0..self.ngens()).map(|i| self.one.var(i)).collect()
    }

    fn consts(&self) -> Vec<Poly> {
        self.counit.iter().map(|&c| self.one.constant(c)).collect()
    }

    pub fn well_defined(&self) -> bool {
        let n = self.ngens();
        (0..n).all(|i| {
            let cap = self.one.caps[i] as u64;
            let tail = &self.one.tails[i];
            let comul_ok = self.two.pow(&self.comul[i], cap) == self.two.subst(tail, &self.comul);
            let counit_ok = self.one.pow(&self.consts()[i], cap) == self.one.subst(tail, &self.consts());
            let antipode_ok = match &self.antipode {
                Some(s) => self.one.pow(&s[i], cap) == self.one.subst(tail, s),
                None => true,
            };
            comul_ok && counit_ok && antipode_ok
        })
    }

    pub fn coassociative(&self) -> bool {
        let n = self.ngens();
        let left: Vec<Poly> = (0..2 * n)
            .map(|j| if j < n { self.three.embed(&self.comul[j], n, &[0, 1]) } else { self.three.var(n + j) })
            .collect();
        let right: Vec<Poly> = (0..2 * n)
            .map(|j| if j < n { self.three.var(j) } else { self.three.embed(&self.comul[j - n], n, &[1, 2]) })
            .collect();
        self.comul.iter().all(|d| self.three.subst(d, &left) == self.three.subst(d, &right))
    }

    pub fn counit_ok(&self) -> bool {
        let (vars, consts) = (self.vars(), self.consts());
        let left = [consts.clone(), vars.clone()].concat();
        let right = [vars.clone(), consts].concat();
        (0..self.ngens())
            .all(|i| self.one.subst(&self.comul[i], &left) == vars[i] && self.one.subst(&self.comul[i], &right) == vars[i])
    }

    pub fn antipode_ok(&self) -> bool {
        let Some(s) = &self.antipode else { return false };
        let vars = self.vars();
        let left = [s.clone(), vars.clone()].concat();
        let right = [vars, s.clone()].concat();
        (0..self.ngens()).all(|i| {
            let e = self.one.constant(self.counit[i]);
            self.one.subst(&self.comul[i], &left) == e && self.one.subst(&self.comul[i], &right) == e
        })
    }

    pub fn axioms(&self) -> Axioms {
        Axioms {
            well_defined: self.well_defined(),
            coassociative: self.coassociative(),
            counit: self.counit_ok(),
            antipode: self.antipode_ok(),
        }
    }

    /// `[n]` on the generators: `[n] = μ∘([n−1]⊗id)∘Δ`.
    pub fn mult_by(&self, n: u64) -> Vec<Poly> {
        if n == 0 {
            return self.consts();
        }
        let vars = self.vars();
        let mut cur = vars.clone();
        for _ in 1..n {
            let imgs = [cur.clone(), vars.clone()].concat();
            cur = self.comul.iter().map(|d| self.one.subst(d, &imgs)).collect();
        }
        cur
    }

    pub fn is_killed_by(&self, n: u64) -> bool {
        self.mult_by(n) == self.consts()
    }

    /// Least `h` with `[p^h] = unit∘ε`, searched up to `limit`.
    pub fn exponent(&self, limit: u32) -> Option<u32> {
        let p = self.k().p();
        (0..=limit).find(|&h| self.is_killed_by(p.pow(h)))
    }
}

/// `φ: O(src) → O(dst)` given on generators is a Hopf algebra map.
pub fn is_hopf_map(src: &Law, dst: &Law, imgs: &[Poly]) -> bool {
    let n = src.ngens();
    let relations = (0..n).all(|i| dst.one.pow(&imgs[i], src.one.caps[i] as u64) == dst.one.subst(&src.one.tails[i], imgs));
    let counit = imgs.iter().zip(&src.counit).all(|(img, &c)| {
        let consts: Vec<Poly> = dst.counit.iter().map(|&c| dst.one.constant(c)).collect();
        dst.one.subst(img, &consts) == dst.one.constant(c)
    });
    let m = dst.ngens();
    let pair: Vec<Poly> = (0..2 * n).map(|j| dst.two.embed(&imgs[j % n], m, &[j / n])).collect();
    let comul = (0..n).all(|i| dst.two.subst(&imgs[i], &dst.comul) == dst.two.subst(&src.comul[i], &pair));
    relations && counit && comul
}

/// `φ` is bijective; by Nakayama it suffices to check modulo the maximal ideal.
pub fn is_bijective(src: &Law, dst: &Law, imgs: &[Poly]) -> bool {
    if src.one.dim() != dst.one.dim() {
        return false;
    }
    let p = dst.k().p();
    let rows: Vec<Vec<u64>> = src
        .one
        .basis()
        .iter()
        .map(|e| {
            let img = dst.one.subst(&Poly::from([(e.clone(), 1)]), imgs);
            let mut row = vec![0; dst.one.dim()];
            for (m, c) in &img {
                row[dst.one.index(m)] = dst.k().residue(*c);
            }
            row
        })
        .collect();
    fp::rank(p, &rows) == src.one.dim()
}

fn one_plus(r: &Ring, a: &Poly) -> Poly {
    r.add(&r.one(), a)
}

/// `(1+y)^{-1}` for nilpotent `y`.
fn inverse_one_plus(r: &Ring, y: &Poly) -> Poly {
    let mut out = r.one();
    let mut term = r.one();
    let minus_y = r.neg(y);
    for _ in 0..4096 {
        term = r.mul(&term, &minus_y);
        if term.is_empty() {
            return out;
        }
        out = r.add(&out, &term);
    }
    panic!("not nilpotent")
}

pub fn alpha_p(k: Coeffs) -> Law {
    let one = Ring::truncated(k, &[k.p() as u32]);
    let two = one.power(2);
    let d = two.add(&two.var(0), &two.var(1));
    let s = one.neg(&one.var(0));
    Law::new("alpha_p", one, vec![d], vec![0], Some(vec![s]))
}

pub fn mu(k: Coeffs, m: u32) -> Law {
    let one = Ring::truncated(k, &[k.p().pow(m) as u32]);
    let two = one.power(2);
    let (y1, y2) = (two.var(0), two.var(1));
    let d = two.add(&two.add(&y1, &y2), &two.mul(&y1, &y2));
    let s = one.sub(&inverse_one_plus(&one, &one.var(0)), &one.one());
    Law::new("mu", one, vec![d], vec![0], Some(vec![s]))
}

/// `Δx = (1+y)^λ⊗x + x⊗1 + a·π·W_p(x⊗1, 1⊗x)`, `Δy = y⊗1 + 1⊗y + y⊗y` on
/// `k[x,y]/(x^p, y^{p^m})`; `a = 0` is `G_λ`.
pub fn semidirect(k: Coeffs, m: u32, lambda: u64, a: u64) -> Law {
    let p = k.p();
    let one = Ring::truncated(k, &[p as u32, p.pow(m) as u32]);
    let two = one.power(2);
    let (x1, y1, x2, y2) = (two.var(0), two.var(1), two.var(2), two.var(3));
    let mut dx = two.add(&two.mul(&two.pow(&one_plus(&two, &y1), lambda), &x2), &x1);
    dx = two.add(&dx, &two.scale(&two.wp(&x1, &x2), k.mul(a, k.pi())));
    let dy = two.add(&two.add(&y1, &y2), &two.mul(&y1, &y2));
    let (x, y) = (one.var(0), one.var(1));
    let inv = inverse_one_plus(&one, &y);
    // x^p = 0 kills every W_p term of m(S⊗id)Δ(x), so the twist needs no correction
    let sx = one.neg(&one.mul(&one.pow(&inv, lambda), &x));
    let sy = one.sub(&inv, &one.one());
    Law::new(format!("semidirect(lambda={lambda},a={a})"), one, vec![dx, dy], vec![0, 0], Some(vec![sx, sy]))
}

pub fn g_lambda(k: Coeffs, m: u32, lambda: u64) -> Law {
    semidirect(k, m, lambda, 0)
}

pub fn tilde_h(k: Coeffs, m: u32, a: u64) -> Law {
    semidirect(k, m, k.p().pow(m - 1), a)
}

/// `k[τ]/(τ^p − aτ)`, `Δτ = τ⊗1 + 1⊗τ + b·W_p(τ⊗1, 1⊗τ)`.
pub fn oort_tate(k: Coeffs, a: u64, b: u64) -> Law {
    let p = k.p();
    let mut tail = Poly::new();
    if a != 0 {
        tail.insert(vec![1], a);
    }
    let one = Ring { k, caps: vec![p as u32], tails: vec![tail] };
    let two = one.power(2);
    let (t1, t2) = (two.var(0), two.var(1));
    let d = two.add(&two.add(&t1, &t2), &two.scale(&two.wp(&t1, &t2), b));
    // S solves S + τ + b·W_p(S, τ) = 0; iterate from −τ
    let t = one.var(0);
    let mut s = one.neg(&t);
    for _ in 0..64 {
        let next = one.sub(&one.neg(&t), &one.scale(&one.wp(&s, &t), b));
        if next == s {
            break;
        }
        s = next;
    }
    Law::new(format!("oort_tate(a={a},b={b})"), one, vec![d], vec![0], Some(vec![s]))
}
