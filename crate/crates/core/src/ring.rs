//! Coefficient rings: the Artin local rings `F_p[π]/(π^e)` and `Z/p^s`.
//!
//! Both families are finite chain rings with residue field `F_p`. Elements are
//! stored as a single `u32` holding base-`p` digits: for `F_p[π]/(π^e)` digit
//! `i` is the coefficient of `π^i`, for `Z/p^s` the integer itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a [`BaseRing`]. The encoding is only meaningful together with
/// the ring it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(pub u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    /// `F_p[π]/(π^e)`
    FpPi,
    /// `Z/p^s`
    Zmod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    kind: RingKind,
    p: u32,
    len: u32,
    size: u32,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseRing {
    /// `F_p[π]/(π^e)`.
    pub fn fp_pi(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if e == 0 || e > 8 {
            return Err(Error::InvalidRing(format!("nilpotency index e={e} out of range 1..=8")));
        }
        let size = p.checked_pow(e).filter(|s| *s <= 1 << 20).ok_or_else(|| {
            Error::InvalidRing(format!("F_{p}[pi]/(pi^{e}) too large"))
        })?;
        Ok(BaseRing { kind: RingKind::FpPi, p, len: e, size })
    }

    /// `Z/p^s` with `s ∈ {1, 2}`.
    pub fn zmod(p: u32, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if !(1..=2).contains(&s) {
            return Err(Error::InvalidRing(format!("Z/p^s needs s in {{1, 2}}, got {s}")));
        }
        if p > 46_000 {
            return Err(Error::InvalidRing(format!("prime {p} too large")));
        }
        Ok(BaseRing { kind: RingKind::Zmod, p, len: s, size: p.pow(s) })
    }

    /// The prime field `F_p`.
    pub fn prime_field(p: u32) -> Result<Self> {
        Self::fp_pi(p, 1)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Length of the ring as a module over itself (`e` or `s`).
    pub fn length(&self) -> u32 {
        self.len
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn is_field(&self) -> bool {
        self.len == 1
    }

    /// The residue field `F_p` of this ring.
    pub fn residue_field(&self) -> BaseRing {
        BaseRing { kind: RingKind::FpPi, p: self.p, len: 1, size: self.p }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(&self) -> Scalar {
        Scalar::ONE
    }

    fn digits(&self, a: Scalar) -> [u32; 8] {
        let mut out = [0u32; 8];
        let mut v = a.0;
        for d in out.iter_mut().take(self.len as usize) {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn from_digits(&self, d: &[u32]) -> Scalar {
        let mut v = 0u32;
        for i in (0..self.len as usize).rev() {
            v = v * self.p + d[i] % self.p;
        }
        Scalar(v)
    }

    /// Image of an integer under `Z → R`.
    pub fn from_int(&self, n: i64) -> Scalar {
        let m = match self.kind {
            RingKind::FpPi => self.p as i64,
            RingKind::Zmod => self.size as i64,
        };
        Scalar(n.rem_euclid(m) as u32)
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        match self.kind {
            RingKind::Zmod => Scalar((a.0 + b.0) % self.size),
            RingKind::FpPi if self.len == 1 => Scalar((a.0 + b.0) % self.p),
            RingKind::FpPi => {
                let (da, db) = (self.digits(a), self.digits(b));
                let mut d = [0u32; 8];
                for i in 0..self.len as usize {
                    d[i] = (da[i] + db[i]) % self.p;
                }
                self.from_digits(&d)
            }
        }
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        match self.kind {
            RingKind::Zmod => Scalar((self.size - a.0) % self.size),
            RingKind::FpPi if self.len == 1 => Scalar((self.p - a.0) % self.p),
            RingKind::FpPi => {
                let da = self.digits(a);
                let mut d = [0u32; 8];
                for i in 0..self.len as usize {
                    d[i] = (self.p - da[i]) % self.p;
                }
                self.from_digits(&d)
            }
        }
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        match self.kind {
            RingKind::Zmod => Scalar(((a.0 as u64 * b.0 as u64) % self.size as u64) as u32),
            RingKind::FpPi if self.len == 1 => {
                Scalar(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
            }
            RingKind::FpPi => {
                let (da, db) = (self.digits(a), self.digits(b));
                let n = self.len as usize;
                let mut d = [0u64; 8];
                for i in 0..n {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..n - i {
                        d[i + j] += da[i] as u64 * db[j] as u64;
                    }
                }
                let mut out = [0u32; 8];
                for i in 0..n {
                    out[i] = (d[i] % self.p as u64) as u32;
                }
                self.from_digits(&out)
            }
        }
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduction modulo the maximal ideal, as an integer in `0..p`.
    pub fn residue(&self, a: Scalar) -> u32 {
        a.0 % self.p
    }

    /// The Teichmüller-free lift `F_p → R` sending `c` to `c·1`.
    pub fn lift_residue(&self, c: u32) -> Scalar {
        Scalar(c % self.p)
    }

    pub fn is_unit(&self, a: Scalar) -> bool {
        self.residue(a) != 0
    }

    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if !self.is_unit(a) {
            return None;
        }
        let order = (self.size / self.p) as u64 * (self.p as u64 - 1);
        Some(self.pow(a, order - 1))
    }

    /// The uniformizer `t` generating the maximal ideal (`π` or `p`).
    pub fn uniformizer(&self) -> Scalar {
        if self.len == 1 {
            Scalar::ZERO
        } else {
            Scalar(self.p)
        }
    }

    /// The designated nilpotent `π`: the generator `t^{ℓ-1}` of the socle,
    /// so that `π·𝔪 = 0`. Zero when the ring is a field.
    pub fn pi(&self) -> Scalar {
        if self.len == 1 {
            Scalar::ZERO
        } else {
            Scalar(self.p.pow(self.len - 1))
        }
    }

    /// `γ` with `p = γ·π`, when such an element is a unit or zero in a
    /// canonical way (`Z/p^2`: `γ = 1`; `F_p[π]/(π^e)`: `p = 0`, `γ = 0`).
    pub fn gamma(&self) -> Option<Scalar> {
        match self.kind {
            RingKind::FpPi => Some(Scalar::ZERO),
            RingKind::Zmod if self.len == 2 => Some(Scalar::ONE),
            RingKind::Zmod => None,
        }
    }

    /// `t`-adic valuation; `None` for zero.
    pub fn valuation(&self, a: Scalar) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut x = a.0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        Some(v)
    }

    /// Some `u` with `t^v · u = a`, for `v ≤ valuation(a)`.
    pub fn shift_down(&self, a: Scalar, v: u32) -> Scalar {
        Scalar(a.0 / self.p.pow(v))
    }

    /// `t^v`.
    pub fn t_pow(&self, v: u32) -> Scalar {
        if v >= self.len {
            Scalar::ZERO
        } else {
            Scalar(self.p.pow(v))
        }
    }

    /// For `a` in the socle `(π)`, the residue `c` with `a = c·π`.
    pub fn pi_part(&self, a: Scalar) -> Option<u32> {
        if self.len == 1 {
            return if a.is_zero() { Some(0) } else { None };
        }
        let step = self.p.pow(self.len - 1);
        if a.0 % step == 0 {
            Some(a.0 / step)
        } else {
            None
        }
    }

    /// `c·π` for a residue `c`.
    pub fn pi_times(&self, c: u32) -> Scalar {
        self.mul(self.lift_residue(c), self.pi())
    }

    /// True when `a·m = 0` for every `m` in the maximal ideal.
    pub fn annihilates_maximal_ideal(&self, a: Scalar) -> bool {
        self.mul(a, self.uniformizer()).is_zero()
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.size).map(Scalar)
    }

    pub fn maximal_ideal(&self) -> impl Iterator<Item = Scalar> + '_ {
        self.elements().filter(move |a| !self.is_unit(*a))
    }

    pub fn format(&self, a: Scalar) -> String {
        match self.kind {
            RingKind::Zmod => a.0.to_string(),
            RingKind::FpPi => {
                let d = self.digits(a);
                let mut parts = Vec::new();
                for i in 0..self.len as usize {
                    if d[i] == 0 {
                        continue;
                    }
                    parts.push(match (i, d[i]) {
                        (0, c) => c.to_string(),
                        (1, 1) => "pi".to_string(),
                        (1, c) => format!("{c}*pi"),
                        (i, 1) => format!("pi^{i}"),
                        (i, c) => format!("{c}*pi^{i}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else if parts.len() == 1 {
                    parts.pop().unwrap()
                } else {
                    format!("({})", parts.join(" + "))
                }
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.len) {
            (RingKind::FpPi, 1) => write!(f, "Fp(p={})", self.p),
            (RingKind::FpPi, e) => write!(f, "Fp_pi(p={}, e={})", self.p, e),
            (RingKind::Zmod, s) => write!(f, "Zmod(p={}, s={})", self.p, s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rings() -> Vec<BaseRing> {
        let mut v = Vec::new();
        for p in [2, 3, 5] {
            for e in 1..=3 {
                v.push(BaseRing::fp_pi(p, e).unwrap());
            }
            for s in 1..=2 {
                v.push(BaseRing::zmod(p, s).unwrap());
            }
        }
        v
    }

    #[test]
    fn pi_annihilates_maximal_ideal() {
        for r in rings() {
            for x in r.maximal_ideal() {
                assert!(r.mul(r.pi(), x).is_zero(), "{r}: pi * {} != 0", x.0);
            }
        }
    }

    #[test]
    fn pi_square_and_characteristic() {
        let f = BaseRing::fp_pi(2, 2).unwrap();
        assert!(!f.pi().is_zero());
        assert!(f.mul(f.pi(), f.pi()).is_zero());
        assert!(f.from_int(2).is_zero());
        let z = BaseRing::zmod(3, 2).unwrap();
        assert_eq!(z.from_int(3), z.pi());
        assert!(!z.pi().is_zero());
        assert!(z.mul(z.pi(), z.pi()).is_zero());
        assert_eq!(z.gamma(), Some(Scalar::ONE));
        assert!(BaseRing::fp_pi(3, 1).unwrap().pi().is_zero());
        assert!(BaseRing::zmod(3, 1).unwrap().pi().is_zero());
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for r in rings() {
            let els: Vec<_> = r.elements().collect();
            for &a in &els {
                assert_eq!(r.add(a, r.neg(a)), r.zero());
                for &b in &els {
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for &c in els.iter().take(9) {
                        assert_eq!(
                            r.mul(a, r.add(b, c)),
                            r.add(r.mul(a, b), r.mul(a, c))
                        );
                        assert_eq!(r.mul(a, r.mul(b, c)), r.mul(r.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_and_valuation() {
        for r in rings() {
            for a in r.elements() {
                match r.inv(a) {
                    Some(b) => assert_eq!(r.mul(a, b), r.one()),
                    None => assert!(!r.is_unit(a)),
                }
                if let Some(v) = r.valuation(a) {
                    let u = r.shift_down(a, v);
                    assert!(r.is_unit(u));
                    assert_eq!(r.mul(r.t_pow(v), u), a);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BaseRing::fp_pi(4, 2).is_err());
        assert!(BaseRing::zmod(2, 3).is_err());
        assert!(BaseRing::fp_pi(2, 0).is_err());
    }
}
