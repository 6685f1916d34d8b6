"""Smoke test for the pyffgs extension module."""

import json

import pyffgs

k = pyffgs.BaseRing.fp_pi(2, 2)
f2 = pyffgs.BaseRing.prime_field(2)

g = pyffgs.g_lambda(k, 1, 1)
assert g.axioms_pass(), g.check_axioms()
assert g.exponent() == 2
assert not g.is_killed_by(2) and g.is_killed_by(4)

# killed by p^m exactly when p divides lambda
assert pyffgs.g_lambda(f2, 2, 2).is_killed_by(4)
assert not pyffgs.g_lambda(f2, 2, 1).is_killed_by(4)

a = pyffgs.alpha_p(pyffgs.BaseRing.prime_field(3))
assert pyffgs.trivial(a).cohomology_dim(2) == 1

ad = pyffgs.adjoint(pyffgs.g_lambda(f2, 2, 2))
assert ad.rank == 2 and ad.cohomology_dim(2) == 1
assert pyffgs.vbar(f2, 1, 1).cohomology_dim(1) == 0

src = """
ring R = Fp_pi(p=2, e=2);
algebra A over R = gens x^2 -> 0, y^2 -> 0;
comul x = (1 + y@1)*x@2 + x@1;
comul y = y@1 + y@2 + y@1*y@2;
"""
h, comodules = pyffgs.load(src)
assert h.axioms_pass() and h.order == 4 and comodules == []

try:
    pyffgs.load("ring R = Fp(p=4);")
except ValueError as e:
    assert "E00" in str(e)
else:
    raise AssertionError("bad ring accepted")

report = json.loads(pyffgs.reproduce(points=[(2, 1)]))
assert report["claims"], report
print(f"pyffgs smoke test ok: {len(report['claims'])} claims at (2,1)")
