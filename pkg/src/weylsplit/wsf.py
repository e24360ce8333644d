"""The group ring Z[Lambda] and the ring of Weyl symmetric functions.

Weight diagrams, Kostant's partition function, Weyl bialternants through
the Freudenthal recurrence and through the Kostant multiplicity formula,
expansion in the bialternant basis, involutions, restriction to
subdiagrams, and Dynkin polynomial / dimension specializations.

Everything is exact; characters are finite dicts from weight tuples to
nonzero ints.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import numbersgame, qpoly
from .cartan import wadd, wneg, wscale, wsub, zero_weight
from .errors import DiagramMismatch, NotInvariant, OrbitTooLarge

# Orbit-sum routes (alternant, Kostant multiplicity) stay desk scale; F4's
# group is the largest allowed.  Freudenthal has no such cap.
WEYL_GROUP_CAP = 1152


class WeylSymFn:
    """An element of Z[Lambda]: finite map weight -> nonzero integer."""

    __slots__ = ("d", "terms")

    def __init__(self, d, terms=()):
        self.d = d
        self.terms = {tuple(m): int(c) for m, c in dict(terms).items() if c}

    @classmethod
    def monomial(cls, d, mu, coeff=1):
        return cls(d, {tuple(mu): coeff})

    @classmethod
    def unit(cls, d):
        return cls.monomial(d, zero_weight(d.rank))

    def _check(self, other):
        if self.d != other.d:
            raise DiagramMismatch("operands live over different diagrams")

    def __eq__(self, other):
        return isinstance(other, WeylSymFn) and self.d == other.d \
            and self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return WeylSymFn(self.d, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return WeylSymFn(self.d, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return WeylSymFn(self.d, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = wadd(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return WeylSymFn(self.d, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        bits = ["%+d*e%s" % (c, list(m)) for m, c in self.sorted_terms()]
        return "WeylSymFn(" + " ".join(bits[:8]) + (" ..." if len(bits) > 8 else "") + ")"

    def sorted_terms(self):
        return sorted(self.terms.items())

    def coeff(self, mu):
        return self.terms.get(tuple(mu), 0)

    def power(self, k):
        out = WeylSymFn.unit(self.d)
        for _ in range(k):
            out = out * self
        return out

    def w_action(self, word):
        """Transport coefficients along w = s_{i_k} ... s_{i_1}."""
        out = {}
        for m, c in self.terms.items():
            out[self.d.act(word, m)] = c
        return WeylSymFn(self.d, out)

    def is_invariant(self):
        """Full check that every coefficient is constant on simple reflections."""
        for m, c in self.terms.items():
            for i in range(1, self.d.rank + 1):
                if self.terms.get(self.d.simple_reflection(i, m), 0) != c:
                    return False
        return True

    def star(self):
        """Dualizing involution e^mu -> e^(-mu)."""
        return WeylSymFn(self.d, {wneg(m): c for m, c in self.terms.items()})

    def bowtie(self):
        """Bow tie involution e^mu -> e^(w0(mu))."""
        return WeylSymFn(self.d, {self.d.w0_weight(m): c for m, c in self.terms.items()})

    def restrict(self, nodes):
        """Project each weight onto the subdiagram for the given nodes."""
        sub, sel = self.d.sub_diagram(nodes)
        out = {}
        for m, c in self.terms.items():
            key = self.d.project(m, sel)
            out[key] = out.get(key, 0) + c
        return WeylSymFn(sub, out)

    def height(self):
        return max(self.d.height(m) for m in self.terms)


# ---------------------------------------------------------------------------
# weight diagrams Pi(lambda)

@dataclass
class WeightDiagram:
    d: object
    weights: frozenset
    edges: tuple            # (mu, i, nu) with mu + alpha_i = nu
    dominant_members: tuple
    rank_of: dict           # weight -> int, zero at w0(lambda)
    top: tuple


def dominant_weights_below(d, lam):
    """All dominant nu <= lam: bounded search over alpha-coordinate boxes."""
    assert d.is_dominant(lam)
    n = d.rank
    box = [int(c) for c in d.to_root_coords(lam)]  # floor, entries nonneg
    out = []
    k = [0] * n

    def descend(i):
        if i == n:
            nu = tuple(lam[j] - sum(k[a] * d.cartan[a][j] for a in range(n))
                       for j in range(n))
            if all(c >= 0 for c in nu):
                out.append(nu)
            return
        for v in range(box[i] + 1):
            k[i] = v
            descend(i + 1)
        k[i] = 0

    descend(0)
    return out


def weight_diagram(d, lam):
    """Pi(lambda): union of the orbits of the dominant weights below lambda."""
    lam = tuple(lam)
    weights = set()
    for nu in dominant_weights_below(d, lam):
        weights.update(d.weyl_orbit(nu))
    alphas = [d.alpha(i) for i in range(1, d.rank + 1)]
    edges = []
    for mu in weights:
        for i, a in enumerate(alphas, start=1):
            nu = wadd(mu, a)
            if nu in weights:
                edges.append((mu, i, nu))
    base = d.height(wadd(lam, lam))
    rank_of = {mu: _as_int(d.height(mu) + d.height(lam)) for mu in weights}
    assert all(0 <= r <= base for r in rank_of.values())
    doms = tuple(sorted(m for m in weights if d.is_dominant(m)))
    return WeightDiagram(d, frozenset(weights), tuple(sorted(edges)), doms,
                         rank_of, lam)


def _as_int(x):
    assert isinstance(x, int) or x.denominator == 1
    return int(x)


# ---------------------------------------------------------------------------
# Kostant partition function

_kostant_memo = {}


def kostant_partition(d, mu):
    """Number of ways mu = sum k_alpha * alpha over positive roots, k >= 0."""
    rc = d.to_root_coords(mu)
    if any(c.denominator != 1 or c < 0 for c in rc):
        return 0
    vec = tuple(int(c) for c in rc)
    roots = tuple(r.alpha_coords for r in d.positive_roots())
    memo = _kostant_memo.setdefault(d, {})

    def f(j, v):
        if not any(v):
            return 1
        if j < 0:
            return 0
        key = (j, v)
        got = memo.get(key)
        if got is not None:
            return got
        total = 0
        cur = v
        while True:
            total += f(j - 1, cur)
            nxt = tuple(x - y for x, y in zip(cur, roots[j]))
            if any(x < 0 for x in nxt):
                break
            cur = nxt
        memo[key] = total
        return total

    return f(len(roots) - 1, vec)


# ---------------------------------------------------------------------------
# Weyl bialternants

_freudenthal_memo = {}


def dominant_multiplicities(d, lam):
    """Freudenthal's recurrence: d_{lam,mu} for dominant mu in Pi(lambda).

    Multiplicities are computed by induction on depth(mu) = ht(lam) - ht(mu),
    with the inner sum over mu + k*alpha truncated at the first weight
    outside Pi(lambda).
    """
    lam = tuple(lam)
    key = (d, lam)
    got = _freudenthal_memo.get(key)
    if got is not None:
        return got
    assert d.is_dominant(lam)
    doms = dominant_weights_below(d, lam)
    doms.sort(key=lambda m: (-d.height(m), m))   # by depth, ties lexicographic
    rho = d.rho()
    top_norm = d.norm2(wadd(lam, rho))
    pos_roots = [r.root for r in d.positive_roots()]
    mult = {lam: 1}
    members = set(doms)
    for mu in doms:
        if mu == lam:
            continue
        total = Fraction(0)
        for alpha in pos_roots:
            k = 1
            while True:
                nu = wadd(mu, wscale(k, alpha))
                rep = d.dominant_rep(nu)
                if rep not in members:
                    break
                m_rep = mult.get(rep)
                assert m_rep is not None    # shallower depth, already done
                total += d.inner_product(alpha, nu) * m_rep
                k += 1
        denom = top_norm - d.norm2(wadd(mu, rho))
        val = 2 * total / denom
        assert val.denominator == 1 and val > 0
        mult[mu] = int(val)
    _freudenthal_memo[key] = mult
    return mult


def freudenthal(d, lam):
    """chi_lambda via the Freudenthal recurrence, expanded W-invariantly."""
    mult = dominant_multiplicities(d, lam)
    out = {}
    for rep, c in mult.items():
        for w in d.weyl_orbit(rep):
            out[w] = c
    return WeylSymFn(d, out)


def kostant_multiplicity(d, lam, mu):
    """d_{lam,mu} by the Kostant multiplicity formula.

    Sums det(w) * P(w(lam + rho) - (mu + rho)) over the parity-tagged orbit
    of the regular weight lam + rho.
    """
    assert d.is_dominant(lam)
    _check_group_cap(d)
    rho = d.rho()
    shifted = wadd(lam, rho)
    target = wadd(mu, rho)
    total = 0
    for w, parity in d.weyl_orbit(shifted).items():
        assert parity is not None
        total += parity * kostant_partition(d, wsub(w, target))
    return total


def _check_group_cap(d):
    if d.weyl_order() > WEYL_GROUP_CAP:
        raise OrbitTooLarge("|W| = %d exceeds the orbit-sum cap %d; "
                            "use freudenthal" % (d.weyl_order(), WEYL_GROUP_CAP))


def alternant(d, lam):
    """A(e^lambda) = sum det(w) e^{w(lambda)}; zero unless strongly dominant."""
    assert d.is_dominant(lam)
    _check_group_cap(d)
    if not d.is_strongly_dominant(lam):
        return WeylSymFn(d)
    return WeylSymFn(d, dict(d.weyl_orbit(lam).items()))


def monomial_wsf(d, lam):
    """zeta_lambda: the orbit indicator function."""
    assert d.is_dominant(lam)
    return WeylSymFn(d, {w: 1 for w in d.weyl_orbit(lam)})


def elementary_wsf(d, lam):
    """psi_lambda: product of fundamental bialternant powers."""
    assert d.is_dominant(lam)
    out = WeylSymFn.unit(d)
    for i, a in enumerate(lam, start=1):
        if a:
            out = out * freudenthal(d, d.omega(i)).power(a)
    return out


def expand_in_bialternants(f):
    """Expand a W-invariant element as sum of c_lambda chi_lambda.

    Peels the top-height dominant terms round by round; terminates by the
    mesh-size height argument.  Raises NotInvariant when the input fails
    the (full) orbit-constancy check.
    """
    if not isinstance(f, WeylSymFn):
        raise TypeError("expected WeylSymFn")
    if f and not f.is_invariant():
        raise NotInvariant("input is not W-invariant")
    d = f.d
    out = {}
    rem = f
    while rem:
        top = max(d.height(m) for m in rem.terms)
        layer = [m for m in rem.terms if d.height(m) == top]
        if not all(d.is_dominant(m) for m in layer):
            raise NotInvariant("top-height support is not dominant")
        for m in layer:
            c = rem.coeff(m)
            if c:
                out[m] = out.get(m, 0) + c
                rem = rem - c * freudenthal(d, m)
    return {m: c for m, c in out.items() if c}


def reconstruct(d, expansion):
    """Inverse of expand_in_bialternants: sum c_lambda chi_lambda."""
    out = WeylSymFn(d)
    for lam, c in expansion.items():
        out = out + c * freudenthal(d, lam)
    return out


@dataclass
class Specialization:
    dynkin_polynomial: tuple     # coefficient list, index = exponent
    dimension: int


def specialize(d, lam):
    """Dynkin polynomial and dimension, each computed two independent ways.

    Route one sums d_{lam,mu} q^<mu+lam, rho_vee>; route two is the quotient
    of products with exponents read off the numbers game.  The two must
    agree exactly.
    """
    lam = tuple(lam)
    assert d.is_dominant(lam)
    ht_lam = d.height(lam)
    deg = _as_int(2 * ht_lam)
    coeffs = [0] * (deg + 1)
    for rep, c in dominant_multiplicities(d, lam).items():
        for w in d.weyl_orbit(rep):
            coeffs[_as_int(d.height(w) + ht_lam)] += c
    nums = numbersgame.rgf_exponents(d, lam)
    dens = numbersgame.rgf_exponents(d, zero_weight(d.rank))
    quot = qpoly.quotient_rgf(nums, dens)
    assert quot == coeffs, "Dynkin polynomial routes disagree"
    dim = qpoly.eval_at_one(coeffs)
    prod_dim = Fraction(1)
    for c in nums:
        prod_dim *= c
    for e in dens:
        prod_dim /= e
    assert prod_dim == dim
    return Specialization(tuple(coeffs), dim)
