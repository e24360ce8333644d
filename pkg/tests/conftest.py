"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's own derivations: the
Weyl group is closed as a set of exact matrices, partition counts come
from bounded enumeration, and positive roots from reflection closure.
"""

import json
from fractions import Fraction
from importlib import resources

import pytest

from weylsplit import build_diagram


@pytest.fixture(scope="session")
def diagrams():
    names = ["A1", "A2", "A3", "B3", "C2", "C3", "G2"]
    return {name: build_diagram(name) for name in names}


def load_fixture(name):
    return json.loads(resources.files("weylsplit.fixtures").joinpath(name).read_text())


# ---------------------------------------------------------------------------
# brute-force Weyl group as exact matrices on omega coordinates

def reflection_matrix(d, i):
    """Matrix of s_i acting on column vectors of omega coordinates."""
    n = d.rank
    m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    # s_i(e_j) has coordinates e_j - delta_{ij,...}: column j is s_i(omega_j)
    cols = [d.simple_reflection(i, tuple(int(j == c) for j in range(n)))
            for c in range(n)]
    for r in range(n):
        for c in range(n):
            m[r][c] = Fraction(cols[c][r])
    return tuple(tuple(row) for row in m)


def mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n))
                 for r in range(n))


def mat_det(a):
    m = [list(row) for row in a]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def brute_weyl_group(d):
    """All group elements as matrices, by closure under the generators."""
    gens = [reflection_matrix(d, i) for i in range(1, d.rank + 1)]
    ident = tuple(tuple(Fraction(int(r == c)) for c in range(d.rank))
                  for r in range(d.rank))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mat_mul(s, g)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def apply_mat(m, v):
    return tuple(sum(m[r][c] * v[c] for c in range(len(v))) for r in range(len(v)))


def brute_positive_roots(d):
    """Reflection closure of the simple roots, intersected with the cone."""
    group = brute_weyl_group(d)
    roots = set()
    for i in range(1, d.rank + 1):
        a = d.alpha(i)
        for g in group:
            roots.add(tuple(int(x) for x in apply_mat(g, a)))
    pos = []
    for r in roots:
        coords = d.to_root_coords(r)
        if all(c >= 0 for c in coords):
            pos.append(r)
    return pos


def brute_partition_count(d, mu, roots):
    """Direct enumeration of nonnegative combinations of positive roots."""
    coords = d.to_root_coords(mu)
    if any(c.denominator != 1 or c < 0 for c in coords):
        return 0
    target = tuple(int(c) for c in coords)
    vecs = [tuple(int(c) for c in d.to_root_coords(r)) for r in roots]

    def count(idx, rest):
        if not any(rest):
            return 1
        if idx == len(vecs):
            return 0
        total, cur = 0, rest
        while True:
            total += count(idx + 1, cur)
            cur = tuple(a - b for a, b in zip(cur, vecs[idx]))
            if any(x < 0 for x in cur):
                break
        return total

    return count(0, target)
