//! Reading kernel objects into reference form. Only data is copied; no
//! kernel arithmetic is used.

use ffgs::{AlgElem, Algebra, BaseRing, Hopf, RingKind};

use crate::coeffs::Coeffs;
use crate::law::Law;
use crate::poly::{Poly, Ring};

pub fn coeffs(base: BaseRing) -> Coeffs {
    let p = base.p() as u64;
    match (base.kind(), base.length()) {
        (_, 1) => Coeffs::Field(p),
        (RingKind::FpPi, 2) => Coeffs::Dual(p),
        (RingKind::Zmod, 2) => Coeffs::Zmod(p),
        _ => panic!("no reference arithmetic for {base}"),
    }
}

pub fn poly(e: &AlgElem) -> Poly {
    e.terms().map(|(m, c)| (m.0.clone(), c.0 as u64)).collect()
}

pub fn ring(alg: &Algebra) -> Ring {
    let tails = (0..alg.ngens()).map(|i| alg.tail(i).iter().map(|(e, c)| (e.clone(), c.0 as u64)).collect()).collect();
    Ring { k: coeffs(alg.base()), caps: alg.bounds().to_vec(), tails }
}

pub fn law(g: &Hopf) -> Law {
    Law::new(
        g.name(),
        ring(g.algebra()),
        g.comul().iter().map(poly).collect(),
        g.counit().iter().map(|c| c.0 as u64).collect(),
        g.antipode().map(|s| s.iter().map(poly).collect()),
    )
}
