//! Self-tests of the reference arithmetic. They run as unit tests so that they
//! finish before the `acceptance` binary.

use crate::complex::Complex;
use crate::law::{self, is_bijective, is_hopf_map};
use crate::{Coeffs, Poly, Ring};

fn mono(e: &[u32], c: u64) -> Poly {
    Poly::from([(e.to_vec(), c)])
}

#[test]
fn wp_small_primes() {
    let r = Ring::truncated(Coeffs::Field(2), &[4, 4]);
    assert_eq!(r.wp(&r.var(0), &r.var(1)), mono(&[1, 1], 1));
    let r = Ring::truncated(Coeffs::Field(3), &[4, 4]);
    let expect = r.add(&mono(&[2, 1], 1), &mono(&[1, 2], 1));
    assert_eq!(r.wp(&r.var(0), &r.var(1)), expect);
    // (x+x')^5 − x^5 − x'^5 = 5·W_5 over the integers: 1,2,2,1
    let r = Ring::truncated(Coeffs::Zmod(5), &[8, 8]);
    let w = r.wp(&r.var(0), &r.var(1));
    assert_eq!(w.get(&vec![1, 4]), Some(&1));
    assert_eq!(w.get(&vec![2, 3]), Some(&2));
}

#[test]
fn dual_number_arithmetic() {
    let k = Coeffs::Dual(3);
    // (1 + 2π)(2 + π) = 2 + 5π = 2 + 2π
    assert_eq!(k.mul(1 + 2 * 3, 2 + 3), 2 + 2 * 3);
    assert_eq!(k.mul(k.pi(), k.pi()), 0);
    assert_eq!(k.add(k.neg(7), 7), 0);
    let z = Coeffs::Zmod(3);
    assert_eq!(z.mul(3, 3), 0);
    assert_eq!(z.mul(4, 7), 1);
}

#[test]
fn catalog_laws_pass_over_fields() {
    for p in [2, 3] {
        let k = Coeffs::Field(p);
        assert!(law::alpha_p(k).axioms().all());
        assert!(law::mu(k, 2).axioms().all());
        for lambda in 1..p * p {
            assert!(law::g_lambda(k, 2, lambda).axioms().all(), "p={p} λ={lambda}");
        }
    }
}

#[test]
fn broken_law_is_caught() {
    let k = Coeffs::Field(2);
    let one = Ring::truncated(k, &[4]);
    let two = one.power(2);
    let d = two.add(&two.add(&two.var(0), &two.var(1)), &two.pow(&two.var(0), 2));
    let bad = law::Law::new("bad", one.clone(), vec![d], vec![0], Some(vec![one.var(0)]));
    assert!(!bad.coassociative());
}

#[test]
fn g1_multiplication_by_two() {
    let g = law::g_lambda(Coeffs::Field(2), 1, 1);
    assert_eq!(g.mult_by(2)[0], mono(&[1, 1], 1));
    assert!(!g.is_killed_by(2));
    assert!(g.is_killed_by(4));
    assert_eq!(g.exponent(6), Some(2));
}

#[test]
fn oort_tate_over_z4() {
    let k = Coeffs::Zmod(2);
    let ot = law::oort_tate(k, 1, 2);
    assert!(ot.axioms().all());
    assert_eq!(ot.one.pow(&ot.one.var(0), 2), ot.one.var(0));
    assert!(ot.is_killed_by(2));
    assert!(!law::oort_tate(k, 1, 1).well_defined() || !law::oort_tate(k, 1, 1).coassociative());
}

#[test]
fn psi_u_is_an_automorphism() {
    let k = Coeffs::Field(3);
    let g = law::mu(k, 1);
    let y = g.one.var(0);
    let img = g.one.sub(&g.one.pow(&g.one.add(&g.one.one(), &y), 2), &g.one.one());
    assert!(is_hopf_map(&g, &g, &[img.clone()]));
    assert!(is_bijective(&g, &g, &[img]));
    assert!(!is_hopf_map(&g, &g, &[g.one.scale(&y, 2)]));
}

#[test]
fn small_cohomology() {
    let k = Coeffs::Field(3);
    let a = law::alpha_p(k);
    let cx = Complex::trivial(&a);
    assert!(cx.is_comodule());
    assert_eq!(cx.cohomology_dim(0), 1);
    assert_eq!(cx.cohomology_dim(1), 1);
    let m = law::mu(k, 1);
    let cx = Complex::trivial(&m);
    assert_eq!(cx.cohomology_dim(1), 0);
    for n in 0..2 {
        for idx in 0..cx.dim(n) {
            let c = cx.basis_cochain(n, idx);
            assert!(cx.is_cocycle(n + 1, &cx.d(n, &c)));
        }
    }
}
