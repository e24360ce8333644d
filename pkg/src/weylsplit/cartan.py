"""Dynkin diagrams, exact weight/root coordinate algebra, and Weyl orbits.

Conventions used throughout the package:

* A weight is a tuple of ints: coefficients on the fundamental weights
  (omega coordinates).  Node indices are 1-based, matching the classical
  numbering of Dynkin diagram nodes; the B series starts
  at rank 3 and the C series at rank 2, so the two-node double-bond diagram
  classifies as C2.
* The i-th simple root, in omega coordinates, is row i of the Cartan matrix.
* All arithmetic is exact: ints and fractions.Fraction, never floats.
* Short simple roots are normalized to squared length 2 in each connected
  component.
"""

import json
import os
import re
from fractions import Fraction

from .errors import NotFiniteType, NotGCM, OrbitTooLarge

DEFAULT_ORBIT_CAP = 10 ** 6


def orbit_cap():
    cap = os.environ.get("WEYL_ORBIT_CAP")
    return int(cap) if cap else DEFAULT_ORBIT_CAP


# ---------------------------------------------------------------------------
# weight helpers (weights are plain int tuples in omega coordinates)

def wadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def wsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def wneg(u):
    return tuple(-a for a in u)


def wscale(k, u):
    return tuple(k * a for a in u)


def zero_weight(n):
    return (0,) * n


# ---------------------------------------------------------------------------
# seed Cartan matrices with classical node numbering

def seed_cartan(letter, rank):
    """Cartan matrix for one irreducible type, nodes numbered classically."""
    n = rank
    ok = {
        "A": n >= 1, "B": n >= 3, "C": n >= 2, "D": n >= 4,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
    }.get(letter, False)
    if not ok:
        raise NotFiniteType("no finite type %s%d" % (letter, rank))
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, mij=-1, mji=-1):
        m[i - 1][j - 1] = mij
        m[j - 1][i - 1] = mji

    if letter in ("A", "B", "C"):
        for i in range(1, n):
            bond(i, i + 1)
        if letter == "B":
            bond(n - 1, n, -2, -1)   # alpha_{n-1} long, alpha_n short
        if letter == "C":
            bond(n - 1, n, -1, -2)   # alpha_{n-1} short, alpha_n long
    elif letter == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        m[n - 1][n - 2] = m[n - 2][n - 1] = 0
        bond(n - 2, n)
    elif letter == "E":
        chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(2, 4)
    elif letter == "F":
        bond(1, 2)
        bond(2, 3, -2, -1)           # alpha_2 long, alpha_3 short
        bond(3, 4)
    elif letter == "G":
        bond(1, 2, -1, -3)           # alpha_1 short, alpha_2 long
    return tuple(tuple(row) for row in m)


def _candidate_types(size):
    cands = [("A", size)]
    if size >= 3:
        cands.append(("B", size))
    if size >= 2:
        cands.append(("C", size))
    if size >= 4:
        cands.append(("D", size))
    if size in (6, 7, 8):
        cands.append(("E", size))
    if size == 4:
        cands.append(("F", size))
    if size == 2:
        cands.append(("G", size))
    return cands


def _match_component(cartan, nodes):
    """Classify one connected component against the finite-type seeds.

    Returns (letter, rank, numbering) where numbering[t] is the 0-based node
    of the component playing the role of classical node t+1.  Matching is a
    small backtracking search on matrix equality.
    """
    k = len(nodes)
    sub = [[cartan[a][b] for b in nodes] for a in nodes]
    for letter, rank in _candidate_types(k):
        tmpl = seed_cartan(letter, rank)
        assign = [None] * k        # template slot -> component-local index
        used = [False] * k

        def rows_consistent(t, c):
            for t2 in range(t + 1):
                c2 = assign[t2] if t2 < t else c
                if tmpl[t][t2] != sub[c][c2] or tmpl[t2][t] != sub[c2][c]:
                    return False
            return True

        def backtrack(t):
            if t == k:
                return True
            for c in range(k):
                if used[c]:
                    continue
                assign[t] = c
                if rows_consistent(t, c):
                    used[c] = True
                    if backtrack(t + 1):
                        return True
                    used[c] = False
            assign[t] = None
            return False

        if backtrack(0):
            return letter, rank, tuple(nodes[c] for c in assign)
    return None


def _invert_exact(m):
    """Exact inverse of an integer matrix via Fraction Gauss-Jordan."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise NotFiniteType("Cartan matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(a[i][n + j] for j in range(n)) for i in range(n))


_MIJ_FROM_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


class DynkinDiagram:
    """A validated finite-type GCM graph; the single source of Cartan data.

    Immutable after construction and safe to share.  Derived root-system
    constants (positive roots, longest word, sigma_0, Weyl order) are
    computed lazily through the numbers-game engine and cached.
    """

    def __init__(self, cartan):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        n = len(cartan)
        if n == 0 or any(len(row) != n for row in cartan):
            raise NotGCM("Cartan matrix must be square and nonempty")
        for i in range(n):
            if cartan[i][i] != 2:
                raise NotGCM("diagonal entries must equal 2")
            for j in range(n):
                if i != j:
                    if cartan[i][j] > 0:
                        raise NotGCM("off-diagonal entries must be <= 0")
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                        raise NotGCM("M_ij = 0 must imply M_ji = 0")
        self.cartan = cartan
        self.rank = n

        # connected components of the underlying graph
        seen, comps = [False] * n, []
        for s in range(n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in range(n):
                    if w != v and cartan[v][w] != 0 and not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))

        self.components = []      # (letter, rank, nodes 1-based in classical order)
        comp_of = [None] * n
        for ci, comp in enumerate(comps):
            match = _match_component(cartan, comp)
            if match is None:
                raise NotFiniteType("component %s is not of finite type"
                                    % [v + 1 for v in comp])
            letter, rk, numbering = match
            self.components.append((letter, rk, tuple(v + 1 for v in numbering)))
            for v in comp:
                comp_of[v] = ci
        self.component_of = tuple(comp_of)

        self.inverse_cartan = _invert_exact(cartan)

        # squared root lengths, normalized so short = 2 in each component
        lengths = [None] * n
        for comp in comps:
            lengths[comp[0]] = Fraction(1)
            stack = [comp[0]]
            while stack:
                v = stack.pop()
                for w in range(n):
                    if w != v and cartan[v][w] != 0 and lengths[w] is None:
                        # M_wv * <a_v,a_v> = M_vw * <a_w,a_w>
                        lengths[w] = lengths[v] * Fraction(cartan[w][v], cartan[v][w])
                        stack.append(w)
            shortest = min(lengths[v] for v in comp)
            for v in comp:
                lengths[v] = 2 * lengths[v] / shortest
        self.root_lengths = tuple(lengths)

        self.coxeter_exponents = tuple(
            tuple(1 if i == j else _MIJ_FROM_PRODUCT[cartan[i][j] * cartan[j][i]]
                  for j in range(n))
            for i in range(n))

        # <omega_i, omega_j> = Q_ji * <a_i,a_i> / 2
        q = self.inverse_cartan
        self._gram = tuple(tuple(q[j][i] * self.root_lengths[i] / 2 for j in range(n))
                           for i in range(n))

        hts = [sum(q[i]) for i in range(n)]        # <omega_i, rho_vee>
        self._fund_heights = tuple(hts)
        prod = 1
        for h in hts:
            prod *= h.denominator
        self.mesh_size = Fraction(1, prod)

        self._constants = None

        # sanity: M * Q = identity exactly
        for i in range(n):
            for j in range(n):
                s = sum(Fraction(cartan[i][k]) * q[k][j] for k in range(n))
                assert s == (1 if i == j else 0)

    # -- basic data -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, DynkinDiagram) and self.cartan == other.cartan

    def __hash__(self):
        return hash(self.cartan)

    def __repr__(self):
        return "DynkinDiagram(%s)" % self.type_string()

    def type_string(self):
        return "+".join("%s%d" % (letter, rk) for letter, rk, _ in self.components)

    def alpha(self, i):
        """Simple root alpha_i in omega coordinates (row i of M)."""
        return self.cartan[i - 1]

    def omega(self, i):
        return tuple(int(i == j + 1) for j in range(self.rank))

    def rho(self):
        return (1,) * self.rank

    def is_dominant(self, mu):
        return all(c >= 0 for c in mu)

    def is_strongly_dominant(self, mu):
        return all(c > 0 for c in mu)

    # -- exact coordinate algebra ------------------------------------------

    def simple_reflection(self, i, mu):
        """s_i(mu) = mu - mu_i * alpha_i; identical to firing node i."""
        c = mu[i - 1]
        if c == 0:
            return tuple(mu)
        row = self.cartan[i - 1]
        return tuple(mu[j] - c * row[j] for j in range(self.rank))

    def act(self, word, mu):
        """Apply s_{i_k} ... s_{i_1} for word = (i_1, ..., i_k)."""
        for i in word:
            mu = self.simple_reflection(i, mu)
        return mu

    def to_root_coords(self, mu):
        """Coefficients of mu on the simple roots: Q^T applied to mu, exact."""
        q = self.inverse_cartan
        n = self.rank
        return tuple(sum(Fraction(mu[j]) * q[j][k] for j in range(n)) for k in range(n))

    def height(self, mu):
        """ht(mu) = <mu, rho_vee> = sum of the root coordinates of mu."""
        return sum(m * h for m, h in zip(mu, self._fund_heights))

    def inner_product(self, u, v):
        g = self._gram
        n = self.rank
        return sum(u[i] * v[j] * g[i][j] for i in range(n) for j in range(n)
                   if u[i] and v[j])

    def norm2(self, u):
        return self.inner_product(u, u)

    def coroot_pairing(self, mu, alpha):
        """<mu, alpha_vee> = 2<mu,alpha>/<alpha,alpha> for a root alpha (as weight)."""
        return 2 * self.inner_product(mu, alpha) / self.norm2(alpha)

    def dominant_rep(self, mu):
        """The unique dominant weight in the W-orbit of mu."""
        mu = tuple(mu)
        while True:
            i = next((i for i, c in enumerate(mu) if c < 0), None)
            if i is None:
                return mu
            mu = self.simple_reflection(i + 1, mu)

    # -- orbits -------------------------------------------------------------

    def weyl_orbit(self, mu, cap=None):
        """Orbit of mu with det(w) parities.

        Returns dict weight -> parity in {1, -1, None}; parity is None
        (Indeterminate) for every element when two generation paths of
        opposite parity meet, which happens exactly when mu is non-regular.
        """
        cap = cap or orbit_cap()
        mu = tuple(mu)
        parities = {mu: 1}
        frontier = [mu]
        indeterminate = False
        while frontier:
            nxt = []
            for v in frontier:
                pv = parities[v]
                for i in range(1, self.rank + 1):
                    w = self.simple_reflection(i, v)
                    if w == v:
                        indeterminate = True      # stabilized by a reflection
                        continue
                    if w in parities:
                        if pv is not None and parities[w] == pv:
                            indeterminate = True
                        continue
                    parities[w] = None if pv is None else -pv
                    nxt.append(w)
                    if len(parities) > cap:
                        raise OrbitTooLarge("orbit of %s exceeds cap %d" % (mu, cap))
            frontier = nxt
        if indeterminate:
            return {w: None for w in parities}
        return parities

    def orbit_size(self, mu):
        return len(self.weyl_orbit(mu))

    # -- derived constants (delegating to the numbers game) ------------------

    def constants(self):
        if self._constants is None:
            from . import numbersgame
            self._constants = numbersgame.diagram_constants(self)
        return self._constants

    def positive_roots(self):
        return self.constants().positive_roots

    def sigma0(self):
        return self.constants().sigma0

    def w0_weight(self, mu):
        """w_0(mu), computed from sigma_0."""
        s = self.sigma0()
        out = [0] * self.rank
        for i in range(self.rank):
            out[s[i + 1] - 1] = -mu[i]
        return tuple(out)

    def weyl_order(self):
        return self.constants().weyl_order

    # -- subdiagrams ----------------------------------------------------------

    def sub_diagram(self, nodes):
        """Diagram on a subset of nodes (1-based, sorted); returns (diagram, nodes)."""
        nodes = tuple(sorted(set(nodes)))
        if any(not 1 <= j <= self.rank for j in nodes):
            raise NotGCM("node subset out of range")
        sub = [[self.cartan[a - 1][b - 1] for b in nodes] for a in nodes]
        return DynkinDiagram(sub), nodes

    def project(self, mu, nodes):
        """Projection of mu onto the sub-lattice for the given nodes."""
        return tuple(mu[j - 1] for j in nodes)


# ---------------------------------------------------------------------------
# diagram spec parsing: "G2", "A3+A1", or "cartan:[[2,-1],[-3,2]]"

_TYPE_RE = re.compile(r"^([A-G])(\d+)$")


def build_diagram(spec):
    """Build a diagram from a type string, (letter, rank) pairs, or a matrix."""
    if isinstance(spec, DynkinDiagram):
        return spec
    if isinstance(spec, str):
        spec = spec.strip()
        if spec.startswith("cartan:"):
            return DynkinDiagram(json.loads(spec[len("cartan:"):]))
        parts = []
        for piece in spec.split("+"):
            m = _TYPE_RE.match(piece.strip())
            if not m:
                raise ValueError("cannot parse diagram spec %r" % spec)
            parts.append((m.group(1), int(m.group(2))))
        spec = parts
    if spec and isinstance(spec[0], (tuple, list)) and spec and \
            all(len(p) == 2 and isinstance(p[0], str) for p in spec):
        blocks = [seed_cartan(letter, int(rk)) for letter, rk in spec]
        n = sum(len(b) for b in blocks)
        m = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            k = len(b)
            for i in range(k):
                for j in range(k):
                    m[off + i][off + j] = b[i][j]
            off += k
        return DynkinDiagram(m)
    return DynkinDiagram(spec)


def parse_weight(text, rank):
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != rank:
        raise ValueError("weight %r has wrong length for rank %d" % (text, rank))
    return tuple(int(p) for p in parts)
