"""The numbers game on Dynkin diagrams.

Firing, game sequences, convergence, reduced words for the longest Weyl
group element, positive-root enumeration on the transpose diagram, rank
generating function exponents, and the Weyl group order.

Positions come in two modes: numeric (ints or Fractions) and generic-linear
(LinForm values, exact linear forms in formal symbols).  Generic play only
ever replays a word already known to be legal, so no positivity tests are
needed in that mode.  Linear forms carry one symbol per node: reading off
the alpha-coordinates of a positive root from the fired-node expression
needs n independent symbols once the rank exceeds two.
"""

from dataclasses import dataclass
from fractions import Fraction

from .cartan import DynkinDiagram
from .errors import IllegalFire, NotGCM, NotIrreducible

DEFAULT_FIRING_CAP = 10_000


class RawGCMGraph:
    """A GCM graph without the finite-type requirement.

    Diagnostics-only: fire/play accept it, so the admissibility experiment
    (convergence from a nonzero dominant position iff finite type) can be
    run on arbitrary GCM graphs.  No convergence guarantee.
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


class LinForm:
    """Exact linear form c_1*x_1 + ... + c_k*x_k + const."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs, const=0):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.const = Fraction(const)

    @classmethod
    def symbol(cls, k, index, const=0):
        return cls(tuple(int(i == index) for i in range(k)), const)

    def __add__(self, other):
        return LinForm([a + b for a, b in zip(self.coeffs, other.coeffs)],
                       self.const + other.const)

    def __sub__(self, other):
        return LinForm([a - b for a, b in zip(self.coeffs, other.coeffs)],
                       self.const - other.const)

    def __neg__(self):
        return LinForm([-a for a in self.coeffs], -self.const)

    def scaled(self, f):
        return LinForm([f * a for a in self.coeffs], f * self.const)

    def __eq__(self, other):
        return (isinstance(other, LinForm) and self.coeffs == other.coeffs
                and self.const == other.const)

    def __repr__(self):
        names = "abcdefgh"
        bits = []
        for c, nm in zip(self.coeffs, names):
            if c:
                bits.append("%s%s" % ("" if c == 1 else str(c), nm))
        if self.const or not bits:
            bits.append(str(self.const))
        return "+".join(bits).replace("+-", "-")


def generic_position(d):
    """One independent symbol per node."""
    n = d.rank
    return tuple(LinForm.symbol(n, i) for i in range(n))


@dataclass
class GameRecord:
    initial: tuple
    fired: tuple
    trace: tuple           # positions, length == len(fired) + 1
    terminal: tuple        # final position (last trace entry)
    diverged: bool = False
    cap: int = 0

    def fired_numbers(self):
        """Number at each fired node at the moment it was fired."""
        return tuple(self.trace[j][self.fired[j] - 1] for j in range(len(self.fired)))

    def to_json_dict(self):
        def plain(pos):
            return [x if isinstance(x, int) else str(x) for x in pos]
        out = {
            "initial": plain(self.initial),
            "fired": list(self.fired),
            "trace": [plain(p) for p in self.trace],
            "terminal": plain(self.terminal),
        }
        if self.diverged:
            out["diverged"] = self.cap
        return out


def fire(d, position, i, check=True):
    """Fire node i: lambda_j -> lambda_j - M_ij * lambda_i."""
    row = d.cartan[i - 1]
    v = position[i - 1]
    if isinstance(v, LinForm):
        return tuple(p - v.scaled(row[j]) if row[j] else p
                     for j, p in enumerate(position))
    if check and v <= 0:
        raise IllegalFire("node %d has nonpositive number %s" % (i, v))
    return tuple(p - row[j] * v for j, p in enumerate(position))


def _positive_nodes(d, position):
    return [i for i in range(1, d.rank + 1)
            if not isinstance(position[i - 1], LinForm) and position[i - 1] > 0]


def play(d, position, strategy="first", cap=DEFAULT_FIRING_CAP):
    """Play the numbers game.

    strategy: "first" (lowest positive node), a sequence of nodes, or "all"
    (exhaustive enumeration of every maximal legal play; returns a list of
    GameRecords in deterministic order).  Divergence is reported via the
    record's diverged flag, never as an error.
    """
    position = tuple(position)
    if strategy == "all":
        records = []

        def descend(pos, fired, trace):
            if len(fired) >= cap:
                records.append(GameRecord(position, tuple(fired), tuple(trace),
                                          pos, True, cap))
                return
            nodes = _positive_nodes(d, pos)
            if not nodes:
                records.append(GameRecord(position, tuple(fired), tuple(trace), pos))
                return
            for i in nodes:
                nxt = fire(d, pos, i)
                descend(nxt, fired + [i], trace + [nxt])

        descend(position, [], [position])
        return records

    fired, trace = [], [position]
    pos = position
    if strategy == "first":
        while True:
            nodes = _positive_nodes(d, pos)
            if not nodes:
                return GameRecord(position, tuple(fired), tuple(trace), pos)
            if len(fired) >= cap:
                return GameRecord(position, tuple(fired), tuple(trace), pos, True, cap)
            i = nodes[0]
            pos = fire(d, pos, i)
            fired.append(i)
            trace.append(pos)
    # explicit firing sequence; generic entries are assumed positive
    for i in strategy:
        pos = fire(d, pos, i)
        fired.append(i)
        trace.append(pos)
    return GameRecord(position, tuple(fired), tuple(trace), pos)


def _primes(n):
    out, p = [], 2
    while len(out) < n:
        if all(p % q for q in out):
            out.append(p)
        p += 1
    return out


@dataclass
class LongestWord:
    word: tuple
    sigma0: dict           # 1-based node permutation
    length: int


def longest_word(d):
    """Reduced word for w_0 from the distinct-prime strongly dominant game.

    The terminal position satisfies w_0(sum m_i omega_i) = -sum m_i
    omega_{sigma0(i)}, so distinct primes let sigma_0 be read off
    unambiguously.
    """
    start = tuple(_primes(d.rank))
    rec = play(d, start)
    assert not rec.diverged
    sigma = {}
    for j in range(1, d.rank + 1):
        val = -rec.terminal[j - 1]
        i = start.index(val) + 1
        sigma[i] = j
    return LongestWord(rec.fired, sigma, len(rec.fired))


def _is_short_node(d, i):
    ci = d.component_of[i - 1]
    shortest = min(d.root_lengths[v] for v in range(d.rank)
                   if d.component_of[v] == ci)
    return d.root_lengths[i - 1] == shortest


@dataclass(frozen=True)
class PositiveRoot:
    root: tuple            # omega coordinates
    alpha_coords: tuple    # integer coefficients on the simple roots
    length_class: str      # "short" or "long"


def enumerate_positive_roots(d):
    """Positive roots via the generic game on the transpose diagram.

    Playing a w_0 word on M^T from a generic position, the fired-node form
    sum(k_i mu_i) at step j exposes beta_j = sum(k_i alpha_i); beta_j is
    short exactly when the fired node is long in M^T, i.e. short in the
    original diagram.  In a simply-laced component every root is "short".
    """
    dT = DynkinDiagram(tuple(zip(*d.cartan)))
    word = longest_word(dT).word
    pos = generic_position(dT)
    roots = []
    for i in word:
        form = pos[i - 1]
        assert form.const == 0 and all(c.denominator == 1 for c in form.coeffs)
        k = tuple(int(c) for c in form.coeffs)
        omega = tuple(sum(k[a] * d.cartan[a][j] for a in range(d.rank) if k[a])
                      for j in range(d.rank))
        cls = "short" if _is_short_node(d, i) else "long"
        roots.append(PositiveRoot(omega, k, cls))
        pos = fire(dT, pos, i, check=False)
    assert len({r.alpha_coords for r in roots}) == len(roots)
    return roots


def rgf_exponents(d, lam):
    """Fired-node numbers of the w_0 word played from (lambda_i + 1).

    These are the exponents <lambda + rho, beta_j_vee> appearing in rank
    generating function and dimension formulas.
    """
    assert d.is_dominant(lam)
    word = longest_word(d).word
    pos = tuple(c + 1 for c in lam)
    out = []
    for i in word:
        out.append(pos[i - 1])
        pos = fire(d, pos, i)
    return out


def weyl_order(d):
    """|W| by recursion on the stabilizer of the highest-root orbit."""
    order = 1
    for letter, rk, nodes in d.components:
        sub, _ = d.sub_diagram(nodes)
        order *= _weyl_order_connected(sub)
    return order


def _weyl_order_connected(d):
    if d.rank == 0:
        return 1
    roots = enumerate_positive_roots(d)
    longs = [r for r in roots if r.length_class == "long"] or roots
    highest = max(longs, key=lambda r: sum(r.alpha_coords))
    n_long = 2 * len(longs)
    j = tuple(i + 1 for i, c in enumerate(highest.root) if c == 0)
    if not j:
        return n_long
    sub, _ = d.sub_diagram(j)
    return n_long * weyl_order(sub)


class DiagramConstants:
    """Exact derived constants for a diagram; built once, then cached.

    For reducible diagrams highest_root and highest_short_root are None;
    the per-component values are kept in the *_by_component lists.
    """

    def __init__(self, d):
        self.rho = d.rho()
        self.positive_roots = tuple(enumerate_positive_roots(d))
        self.mesh_size = d.mesh_size
        lw = longest_word(d)
        self.longest_word = lw.word
        self.sigma0 = lw.sigma0
        self.weyl_order = weyl_order(d)

        self.highest_root_by_component = []
        self.highest_short_root_by_component = []
        for ci in range(len(d.components)):
            comp = [r for r in self.positive_roots
                    if d.component_of[_support_node(r)] == ci]
            longs = [r for r in comp if r.length_class == "long"] or comp
            shorts = [r for r in comp if r.length_class == "short"]
            self.highest_root_by_component.append(
                max(longs, key=lambda r: sum(r.alpha_coords)).root)
            self.highest_short_root_by_component.append(
                max(shorts, key=lambda r: sum(r.alpha_coords)).root)
        if len(d.components) == 1:
            self.highest_root = self.highest_root_by_component[0]
            self.highest_short_root = self.highest_short_root_by_component[0]
        else:
            self.highest_root = None
            self.highest_short_root = None


def _support_node(root):
    return next(a for a, k in enumerate(root.alpha_coords) if k)


def diagram_constants(d):
    return DiagramConstants(d)


def highest_short_root(d):
    if len(d.components) != 1:
        raise NotIrreducible("highest short root needs an irreducible diagram")
    return d.constants().highest_short_root
