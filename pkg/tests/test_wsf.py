import random

import pytest

from weylsplit import build_diagram, wsf
from weylsplit.cartan import wadd, wneg
from weylsplit.errors import NotInvariant

from conftest import brute_partition_count, load_fixture

G2FIX = load_fixture("g2_reference.json")


def chi(d, lam):
    return wsf.freudenthal(d, tuple(lam))


def test_ring_ops():
    a2 = build_diagram("A2")
    e = wsf.WeylSymFn.monomial
    assert e(a2, (1, 0)) * e(a2, (0, 1)) == e(a2, (1, 1))
    assert (e(a2, (1, 0)) * wsf.WeylSymFn(a2)) == wsf.WeylSymFn(a2)
    g2 = build_diagram("G2")
    c1 = chi(g2, (1, 0))
    assert c1.w_action((2,)) == c1
    assert c1.w_action((1,)) == c1
    with pytest.raises(Exception):
        e(a2, (1, 0)) + e(g2, (1, 0))


def test_weight_diagram_examples():
    g2 = build_diagram("G2")
    pi = wsf.weight_diagram(g2, (1, 0))
    assert len(pi.weights) == 7 and (0, 0) in pi.weights
    pi0 = wsf.weight_diagram(g2, (0, 0))
    assert set(pi0.weights) == {(0, 0)}
    a2 = build_diagram("A2")
    pi1 = wsf.weight_diagram(a2, (1, 0))
    assert set(pi1.weights) == {(1, 0), (-1, 1), (0, -1)}


def test_weight_diagram_structure(diagrams):
    for name in ["A2", "C2", "G2"]:
        d = diagrams[name]
        lam = tuple(1 for _ in range(d.rank))
        pi = wsf.weight_diagram(d, lam)
        # saturation: mu - k*alpha stays inside for 0 <= k <= <mu,alpha_vee>
        for mu in pi.weights:
            for r in d.positive_roots():
                pairing = d.coroot_pairing(mu, r.root)
                k = 0
                while k <= pairing:
                    assert tuple(a - k * b for a, b in zip(mu, r.root)) in pi.weights
                    k += 1
        # unique max lam, unique min w0(lam)
        tops = [m for m in pi.weights
                if not any((m, i, n) in set(pi.edges) for i in range(1, d.rank + 1)
                           for n in pi.weights)]
        srcs = {e[0] for e in pi.edges}
        dsts = {e[2] for e in pi.edges}
        assert [m for m in pi.weights if m not in srcs] == [lam]
        assert [m for m in pi.weights if m not in dsts] == [d.w0_weight(lam)]
        # color classes are chains: in/out degree per color <= 1
        for mu in pi.weights:
            for i in range(1, d.rank + 1):
                assert sum(1 for e in pi.edges if e[0] == mu and e[1] == i) <= 1
                assert sum(1 for e in pi.edges if e[2] == mu and e[1] == i) <= 1


def test_kostant_partition():
    a2 = build_diagram("A2")
    assert wsf.kostant_partition(a2, (0, 0)) == 1
    # alpha1 + alpha2 has omega coordinates (1,1)
    assert wsf.kostant_partition(a2, (1, 1)) == 2
    assert wsf.kostant_partition(a2, wneg(a2.alpha(1))) == 0
    roots = [r.root for r in a2.positive_roots()]
    rng = random.Random(6)
    for d in [a2, build_diagram("C2"), build_diagram("G2")]:
        roots = [r.root for r in d.positive_roots()]
        for _ in range(25):
            mu = tuple(rng.randint(-2, 4) for _ in range(d.rank))
            assert wsf.kostant_partition(d, mu) == \
                brute_partition_count(d, mu, roots)


def test_freudenthal_g2_reference_values():
    g2 = build_diagram("G2")
    c1 = chi(g2, (1, 0))
    assert sorted(c1.terms) == [tuple(w) for w in G2FIX["chi_w1_weights"]]
    assert set(c1.terms.values()) == {1}
    c2 = chi(g2, (0, 1))
    want = {tuple(w): m for w, m in G2FIX["chi_w2_terms"]}
    assert c2.terms == want
    assert sum(c2.terms.values()) == 14
    assert chi(g2, (0, 0)) == wsf.WeylSymFn.unit(g2)


def test_kostant_equals_freudenthal_small(diagrams):
    for name in ["A2", "C2", "G2"]:
        d = diagrams[name]
        for lam in [(1, 0), (0, 1), (1, 1), (2, 0)]:
            f = chi(d, lam)
            pi = wsf.weight_diagram(d, lam)
            for mu in pi.weights:
                assert wsf.kostant_multiplicity(d, lam, mu) == f.coeff(mu)
            # vanishing off Pi(lambda)
            outside = wadd(lam, d.alpha(1))
            assert wsf.kostant_multiplicity(d, lam, outside) == 0
            assert wsf.kostant_multiplicity(d, lam, lam) == 1


def test_alternant():
    a1 = build_diagram("A1")
    alt = wsf.alternant(a1, (1,))
    assert alt.terms == {(1,): 1, (-1,): -1}
    a2 = build_diagram("A2")
    assert not wsf.alternant(a2, (1, 0))    # boundary-dominant vanishes
    # denominator formula, expanded brute force
    rho = a2.rho()
    prod = wsf.WeylSymFn.monomial(a2, rho)
    for r in a2.positive_roots():
        prod = prod * (wsf.WeylSymFn.unit(a2)
                       - wsf.WeylSymFn.monomial(a2, wneg(r.root)))
    assert wsf.alternant(a2, rho) == prod
    assert len(wsf.alternant(a2, rho).terms) == 6


def test_defining_identity(diagrams):
    for name in ["A1", "A2", "C2", "G2", "A3", "B3", "C3"]:
        d = diagrams[name]
        rho = d.rho()
        arho = wsf.alternant(d, rho)
        lams = [lam for lam in _dominant_weights(d.rank, 4)]
        for lam in lams:
            assert arho * chi(d, lam) == wsf.alternant(d, wadd(lam, rho))


def _dominant_weights(rank, total):
    if rank == 0:
        yield ()
        return
    for head in range(total + 1):
        for rest in _dominant_weights(rank - 1, total - head):
            yield (head,) + rest


def test_denominator_formula(diagrams):
    for d in diagrams.values():
        rho = d.rho()
        prod = wsf.WeylSymFn.monomial(d, rho)
        for r in d.positive_roots():
            prod = prod * (wsf.WeylSymFn.unit(d)
                           - wsf.WeylSymFn.monomial(d, wneg(r.root)))
        assert wsf.alternant(d, rho) == prod


def test_expand_in_bialternants():
    g2 = build_diagram("G2")
    c1 = chi(g2, (1, 0))
    assert wsf.expand_in_bialternants(c1) == {(1, 0): 1}
    exp = wsf.expand_in_bialternants(c1 * c1)
    assert exp == {(2, 0): 1, (0, 1): 1, (1, 0): 1, (0, 0): 1}
    dims = [wsf.specialize(g2, lam).dimension for lam in exp]
    assert sum(dims) == 49
    # monomial function has top coefficient 1 at lambda
    z = wsf.monomial_wsf(g2, (1, 1))
    assert wsf.expand_in_bialternants(z)[(1, 1)] == 1
    with pytest.raises(NotInvariant):
        wsf.expand_in_bialternants(wsf.WeylSymFn.monomial(g2, (1, 0)))


def test_expand_reconstruct_roundtrip(diagrams):
    rng = random.Random(7)
    for name in ["A2", "C2", "G2"]:
        d = diagrams[name]
        for _ in range(5):
            combo = {}
            for _ in range(3):
                lam = (rng.randint(0, 2), rng.randint(0, 2))
                combo[lam] = rng.randint(-3, 3)
            combo = {k: v for k, v in combo.items() if v}
            fn = wsf.reconstruct(d, combo)
            assert wsf.expand_in_bialternants(fn) == combo


def test_monomial_and_elementary():
    g2 = build_diagram("G2")
    zero = (0, 0)
    assert wsf.monomial_wsf(g2, zero) == wsf.WeylSymFn.unit(g2)
    assert wsf.elementary_wsf(g2, zero) == wsf.WeylSymFn.unit(g2)
    z1 = wsf.monomial_wsf(g2, (1, 0))
    assert len(z1.terms) == 6
    assert chi(g2, (1, 0)) == z1 + wsf.monomial_wsf(g2, zero)
    a2 = build_diagram("A2")
    psi = wsf.elementary_wsf(a2, (1, 1))
    assert psi == chi(a2, (1, 0)) * chi(a2, (0, 1))
    assert wsf.expand_in_bialternants(psi) == {(1, 1): 1, (0, 0): 1}


def test_involutions_and_restrict():
    g2 = build_diagram("G2")
    f = chi(g2, (0, 1)) + 2 * wsf.WeylSymFn.monomial(g2, (1, 2))
    assert f.star().star() == f
    for lam in [(1, 0), (0, 1), (1, 1)]:
        assert chi(g2, lam).bowtie() == chi(g2, lam)
    a2 = build_diagram("A2")
    # chi*(lambda) = chi(-w0 lambda)
    assert chi(a2, (1, 0)).star() == chi(a2, (0, 1))
    r = chi(a2, (1, 0)).restrict((1,))
    a1 = build_diagram("A1")
    assert r == chi(a1, (1,)) + chi(a1, (0,))


def test_specialize_g2():
    g2 = build_diagram("G2")
    s1 = wsf.specialize(g2, (1, 0))
    assert list(s1.dynkin_polynomial) == G2FIX["dynkin_poly_w1"]
    assert s1.dimension == 7
    s2 = wsf.specialize(g2, (0, 1))
    assert list(s2.dynkin_polynomial) == G2FIX["dynkin_poly_w2"]
    assert s2.dimension == 14
    s0 = wsf.specialize(g2, (0, 0))
    assert s0.dynkin_polynomial == (1,) and s0.dimension == 1


def test_g2_dimension_formula():
    g2 = build_diagram("G2")
    for a in range(4):
        for b in range(3):
            want = ((2 * a + 3 * b + 5) * (a + 3 * b + 4) * (a + 2 * b + 3)
                    * (a + b + 2) * (b + 1) * (a + 1)) // 120
            assert wsf.specialize(g2, (a, b)).dimension == want


def test_dynkin_polynomial_symmetry(diagrams):
    from weylsplit import qpoly
    for name in ["A3", "B3", "C2", "G2"]:
        d = diagrams[name]
        for lam in _dominant_weights(d.rank, 2):
            poly = wsf.specialize(d, lam).dynkin_polynomial
            assert qpoly.is_palindromic(list(poly))
            assert qpoly.is_unimodal(list(poly))


def test_chi_positive_exactly_on_pi(diagrams):
    for name in ["A2", "G2", "B3"]:
        d = diagrams[name]
        lam = tuple(1 for _ in range(d.rank))
        f = chi(d, lam)
        pi = wsf.weight_diagram(d, lam)
        assert set(f.terms) == set(pi.weights)
        assert all(c > 0 for c in f.terms.values())


def test_w_invariance_of_characters(diagrams):
    for d in diagrams.values():
        lam = tuple(1 if i == 0 else 0 for i in range(d.rank))
        f = chi(d, lam)
        assert f.is_invariant()
        for i in range(1, d.rank + 1):
            assert f.w_action((i,)) == f


def test_reducible_diagram_characters():
    d = build_diagram("A2+A1")
    f = chi(d, (1, 0, 1))
    a2 = build_diagram("A2")
    a1 = build_diagram("A1")
    dim = wsf.specialize(d, (1, 0, 1)).dimension
    assert dim == wsf.specialize(a2, (1, 0)).dimension \
        * wsf.specialize(a1, (1,)).dimension
    assert sum(f.terms.values()) == dim
