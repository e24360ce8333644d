"""Crystalline splitting posets.

Minuscule and quasi-minuscule building blocks, the crystal product of
fibrous posets with its raising/lowering operators, product expressions
over the minuscule/quasi-minuscule alphabet, lazy construction of the
connected component R(lambda), (J,nu)-colorings of products of primary
posets, tensor/branching decomposition, and the saturation tables.
"""

from dataclasses import dataclass

from . import ecposet, wsf
from .cartan import wadd, wsub, zero_weight
from .errors import (NoExpression, NotFibrous, NotIrreducible, NotMinuscule,
                     NotPrimaryFactor, DiagramMismatch)


# ---------------------------------------------------------------------------
# building blocks

def is_minuscule_weight(d, lam):
    """Dominant, nonzero, and all coroot pairings lie in {0, +-1}."""
    lam = tuple(lam)
    if not d.is_dominant(lam) or not any(lam):
        return False
    return all(d.coroot_pairing(lam, r.root) <= 1 for r in d.positive_roots())


def minuscule_poset(d, lam):
    """R(lambda) = Pi(lambda) for dominant minuscule lambda."""
    lam = tuple(lam)
    if not is_minuscule_weight(d, lam):
        raise NotMinuscule("%s is not dominant minuscule" % (lam,))
    orbit = sorted(d.weyl_orbit(lam))
    ids = {w: i for i, w in enumerate(orbit)}
    edges = []
    for w in orbit:
        for i in range(1, d.rank + 1):
            v = wadd(w, d.alpha(i))
            if v in ids:
                edges.append((ids[w], ids[v], i))
    return ecposet.ColoredPoset(len(orbit), edges, diagram=d, labels=orbit)


def quasi_minuscule_poset(d):
    """Short roots plus one middle-rank vertex per short simple root."""
    if len(d.components) != 1:
        raise NotIrreducible("quasi-minuscule poset needs an irreducible diagram")
    lam = d.constants().highest_short_root
    shorts = sorted(r.root for r in d.positive_roots() if r.length_class == "short")
    verts = sorted(shorts + [tuple(-c for c in r) for r in shorts])
    short_simple = [i for i in range(1, d.rank + 1)
                    if d.alpha(i) in set(verts)]
    labels = list(verts) + [("bar", i) for i in short_simple]
    ids = {v: k for k, v in enumerate(labels)}
    edges = []
    root_set = set(verts)
    for w in verts:
        for i in range(1, d.rank + 1):
            v = wadd(w, d.alpha(i))
            if v in root_set and any(v):
                edges.append((ids[w], ids[v], i))
    for i in short_simple:
        neg = tuple(-c for c in d.alpha(i))
        edges.append((ids[neg], ids[("bar", i)], i))
        edges.append((ids[("bar", i)], ids[d.alpha(i)], i))
    return ecposet.ColoredPoset(len(labels), edges, diagram=d, labels=labels)


def quasi_minuscule_tau_kappa(d, poset):
    """The explicit splitting witness for a quasi-minuscule poset.

    Pairs each -alpha_i with its middle-rank vertex, fixes the remaining
    short roots, and colors a fixed vertex by any edge above it; S is the
    top vertex.  Feeds ecposet.verify_tau_kappa directly.
    """
    top = max(range(poset.n), key=poset.global_rank)
    s_set = frozenset([top])
    by_label = {poset.labels[v]: v for v in range(poset.n)}
    tau, kappa = {}, {}
    for v in range(poset.n):
        if v == top:
            continue
        lab = poset.labels[v]
        if isinstance(lab, tuple) and lab and lab[0] == "bar":
            i = lab[1]
            tau[v] = by_label[tuple(-c for c in d.alpha(i))]
            kappa[v] = i
            continue
        neg_simple = next((i for i in range(1, d.rank + 1)
                           if tuple(-c for c in d.alpha(i)) == lab), None)
        if neg_simple is not None and ("bar", neg_simple) in by_label:
            tau[v] = by_label[("bar", neg_simple)]
            kappa[v] = neg_simple
        else:
            tau[v] = v
            kappa[v] = next(c for _, c in poset.out[v])
    return ecposet.ColoringWitness(S=s_set, kappa=kappa, tau=tau)


# ---------------------------------------------------------------------------
# crystal product machinery (flat-tuple index formulas)

class TensorOps:
    """Raising/lowering operators on a flat tuple of fibrous factors."""

    def __init__(self, factors):
        if not factors:
            raise NotFibrous("need at least one factor")
        d = factors[0].d
        for f in factors:
            if f.d != d:
                raise DiagramMismatch("factors over different diagrams")
            if not f.is_fibrous():
                raise NotFibrous("crystal product factors must be fibrous")
        self.factors = list(factors)
        self.d = d

    def wt(self, x):
        out = zero_weight(self.d.rank)
        for f, v in zip(self.factors, x):
            out = wadd(out, f.wt[v])
        return out

    def delta_data(self, i, x):
        """delta_i of the tuple and the smallest index attaining the max."""
        best, arg, pref = None, None, 0
        for q, (f, v) in enumerate(zip(self.factors, x)):
            val = -pref + f.delta(i, v)
            if best is None or val > best:
                best, arg = val, q
            pref += f.m(i, v)
        return best, arg

    def rho_data(self, i, x):
        """rho_i of the tuple and the largest index attaining the max."""
        suffixes = [0] * (len(x) + 1)
        for r in range(len(x) - 1, -1, -1):
            suffixes[r] = suffixes[r + 1] + self.factors[r].m(i, x[r])
        best, arg = None, None
        for r, (f, v) in enumerate(zip(self.factors, x)):
            val = f.rho[i][v] + suffixes[r + 1]
            if best is None or val >= best:
                best, arg = val, r
        return best, arg

    def raising(self, i, x):
        dl, q = self.delta_data(i, x)
        if dl <= 0:
            return None
        w = self.factors[q].up(i, x[q])
        assert w is not None
        return x[:q] + (w,) + x[q + 1:]

    def lowering(self, i, x):
        rh, r = self.rho_data(i, x)
        if rh <= 0:
            return None
        w = self.factors[r].down(i, x[r])
        assert w is not None
        return x[:r] + (w,) + x[r + 1:]

    def closure(self, seeds):
        """Connected component(s) of the seed tuples under raising/lowering."""
        seen = set(seeds)
        frontier = list(seeds)
        edges = []
        while frontier:
            x = frontier.pop()
            for i in range(1, self.d.rank + 1):
                y = self.raising(i, x)
                if y is not None:
                    edges.append((x, y, i))
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
                z = self.lowering(i, x)
                if z is not None:
                    if z not in seen:
                        seen.add(z)
                        frontier.append(z)
        verts = sorted(seen)
        ids = {v: k for k, v in enumerate(verts)}
        return ecposet.ColoredPoset(
            len(verts), [(ids[a], ids[b], i) for a, b, i in edges],
            diagram=self.d, labels=verts)


def crystal_product(*factors):
    """The full crystal product, materialized over all factor tuples."""
    ops = TensorOps(list(factors))
    tuples = [()]
    for f in ops.factors:
        tuples = [t + (v,) for t in tuples for v in range(f.n)]
    poset = ops.closure(tuples)
    poset.tensor_ops = ops
    return poset


def raising(product, x, i):
    """Raising operator on a product vertex (factor tuple); None if undefined."""
    return product.tensor_ops.raising(i, tuple(x))


def lowering(product, x, i):
    """Lowering operator on a product vertex (factor tuple); None if undefined."""
    return product.tensor_ops.lowering(i, tuple(x))


# ---------------------------------------------------------------------------
# the Omega alphabet and product expressions

@dataclass
class OmegaExpr:
    terms: tuple            # mu_1, ..., mu_p (full-rank weights)
    dominant_reps: tuple    # \hat{mu}_q
    flavor: str             # "minuscule" | "quasi-minuscule"


def minuscule_dominant_weights(d):
    """Dominant minuscule weights of an irreducible diagram (fundamental)."""
    return [d.omega(k) for k in range(1, d.rank + 1)
            if is_minuscule_weight(d, d.omega(k))]


def _alphabet(d, flavor):
    """Letters in the fixed total order, with their dominant representatives."""
    if flavor == "minuscule":
        reps = minuscule_dominant_weights(d)
    else:
        reps = [d.constants().highest_short_root]
    reps.sort(key=lambda r: (d.height(r), r))
    letters = []
    for rep in reps:
        for w in sorted(d.weyl_orbit(rep)):
            letters.append((w, rep))
    return letters


def _in_root_lattice(d, mu):
    return all(c.denominator == 1 for c in d.to_root_coords(mu))


def omega_expression(d, lam, max_len=None):
    """Shortest, then letter-order-least, expression of lambda.

    The word (mu_1, ..., mu_p) has every partial sum dominant and all terms
    minuscule or all quasi-minuscule.  The flavor is minuscule exactly when
    the coset of lambda modulo the root lattice contains a minuscule class.
    """
    lam = tuple(lam)
    assert d.is_dominant(lam) and any(lam)
    if len(d.components) != 1:
        raise NotIrreducible("omega expressions are per irreducible component")
    minus = minuscule_dominant_weights(d)
    flavor = "quasi-minuscule"
    if any(_in_root_lattice(d, wsub(lam, m)) for m in minus):
        flavor = "minuscule"
    letters = _alphabet(d, flavor)
    if max_len is None:
        ht2 = d.height(wadd(lam, lam))
        max_len = max(4, 2 * int(ht2) + 2)
    for depth in range(1, max_len + 1):
        dead = set()
        word = _dfs_expression(d, lam, letters, zero_weight(d.rank), depth, dead)
        if word is not None:
            return OmegaExpr(tuple(w for w, _ in word),
                             tuple(rep for _, rep in word), flavor)
    raise NoExpression("no %s expression for %s within %d letters"
                       % (flavor, lam, max_len))


def _dfs_expression(d, target, letters, acc, depth, dead):
    if depth == 0:
        return [] if acc == target else None
    key = (acc, depth)
    if key in dead:
        return None
    for w, rep in letters:
        nxt = wadd(acc, w)
        if not d.is_dominant(nxt):
            continue
        tail = _dfs_expression(d, target, letters, nxt, depth - 1, dead)
        if tail is not None:
            return [(w, rep)] + tail
    dead.add(key)
    return None


# ---------------------------------------------------------------------------
# R(lambda)

def _component_factors(d, lam):
    """Per component, primary-plus factor posets and the seed element ids."""
    factors, seeds = [], []
    for letter, rk, nodes in d.components:
        sub, sel = d.sub_diagram(nodes)
        lam_sub = d.project(lam, sel)
        if not any(lam_sub):
            continue
        expr = omega_expression(sub, lam_sub)
        for mu, rep in zip(expr.terms, expr.dominant_reps):
            if expr.flavor == "minuscule":
                fsub = minuscule_poset(sub, rep)
            else:
                fsub = quasi_minuscule_poset(sub)
            f = _inflate(fsub, d, sel)
            mu_full = _lift(mu, d.rank, sel)
            seed = next(v for v in range(f.n) if f.wt[v] == mu_full)
            factors.append(f)
            seeds.append(seed)
    return factors, seeds


def _lift(mu, rank, sel):
    out = [0] * rank
    for t, node in enumerate(sel):
        out[node - 1] = mu[t]
    return tuple(out)


def _inflate(p, d, sel):
    """View a subdiagram poset as a full-diagram poset (colors relabeled)."""
    edges = [(u, v, sel[c - 1]) for u, v, c in p.edges]
    return ecposet.ColoredPoset(p.n, edges, diagram=d, labels=p.labels)


_crystal_memo = {}


def build_crystal(d, lam):
    """The crystalline splitting poset R(lambda).

    Extracts the connected component of the seed maximal vertex by closing
    under the raising/lowering operators; the full product of the factors
    is never materialized.  Results are cached (posets are immutable).
    """
    lam = tuple(lam)
    got = _crystal_memo.get((d, lam))
    if got is not None:
        return got
    assert d.is_dominant(lam)
    if not any(lam):
        poset = ecposet.ColoredPoset(1, [], diagram=d, labels=[()])
    else:
        factors, seeds = _component_factors(d, lam)
        ops = TensorOps(factors)
        seed = tuple(seeds)
        assert ops.wt(seed) == lam
        poset = ops.closure([seed])
        poset.tensor_ops = ops
    _crystal_memo[(d, lam)] = poset
    return poset


# ---------------------------------------------------------------------------
# refined splitting data

def m_set(p, nodes, nu):
    """M_{J,nu}(p) = vertices with delta_j <= nu_j for all j in J."""
    nu_of = dict(zip(sorted(nodes), nu))
    return [x for x in range(p.n)
            if all(p.delta(j, x) <= nu_of[j] for j in nu_of)]


def decompose(d, nu, lam):
    """Expansion of chi_nu * chi_lambda from M_{I,nu}(R(lambda))."""
    nu = tuple(nu)
    assert d.is_dominant(nu)
    r = build_crystal(d, lam)
    nodes = tuple(range(1, d.rank + 1))
    out = {}
    for x in m_set(r, nodes, nu):
        w = wadd(nu, r.wt[x])
        out[w] = out.get(w, 0) + 1
    return out


def branch(d, lam, nodes):
    """Branching of chi_lambda to the subdiagram on the given nodes."""
    nodes = tuple(sorted(nodes))
    r = build_crystal(d, lam)
    out = {}
    for x in m_set(r, nodes, (0,) * len(nodes)):
        w = r.wt_restricted(x, nodes)
        out[w] = out.get(w, 0) + 1
    return out


# ---------------------------------------------------------------------------
# (J,nu)-colorings of crystal products of primary posets

def _primary_kappa(f, nodes, nu_of, v):
    """Coloring rule on a single primary factor; smallest color breaks ties."""
    k_set = [j for j in nodes if f.delta(j, v) > nu_of[j]]
    if not k_set:
        return None
    long_ones = [j for j in k_set if f.lng[j][v] >= 2]
    if long_ones:
        assert len(long_ones) == 1
        return long_ones[0]
    return min(k_set)


def jnu_coloring(factors, poset, nodes, nu):
    """kappa on poset minus M_{J,nu}, by the single-factor and product rules.

    poset must carry factor-tuple labels (as produced by crystal_product or
    build_crystal over the given factors).  Free choices are resolved as the
    smallest color.
    """
    nodes = tuple(sorted(nodes))
    nu_of = dict(zip(nodes, nu))
    for f in factors:
        if not f.is_primary():
            raise NotPrimaryFactor("all factors must be primary")
    def ops_delta(x, upto, j):
        best, arg, pref = None, None, 0
        for q in range(upto):
            f, v = factors[q], x[q]
            val = -pref + f.delta(j, v)
            if best is None or val > best:
                best, arg = val, q
            pref += f.m(j, v)
        return best, arg

    def ops_rho(x, upto, j):
        suff = [0] * (upto + 1)
        for r in range(upto - 1, -1, -1):
            suff[r] = suff[r + 1] + factors[r].m(j, x[r])
        best, arg = None, None
        for r in range(upto):
            val = factors[r].rho[j][x[r]] + suff[r + 1]
            if best is None or val >= best:
                best, arg = val, r
        return best, arg

    def kappa_prefix(x, upto):
        """kappa of the length-upto prefix, or None when it is in M_{J,nu}."""
        if upto == 1:
            return _primary_kappa(factors[0], nodes, nu_of, x[0])
        k_set = [j for j in nodes if ops_delta(x, upto, j)[0] > nu_of[j]]
        if not k_set:
            return None
        prev = kappa_prefix(x, upto - 1)
        if prev is not None:
            return prev
        f, v = factors[upto - 1], x[upto - 1]
        special = [j for j in k_set
                   if max(f.rho[j][v],
                          f.lng[j][v] - ops_rho(x, upto - 1, j)[0]) >= 2]
        if special:
            assert len(special) == 1
            return special[0]
        return min(k_set)

    out = {}
    for vid in range(poset.n):
        x = poset.labels[vid]
        k = kappa_prefix(x, len(factors))
        if k is not None:
            out[vid] = k
    return out


def tau_from_jnu_coloring(p, nodes, nu, kappa):
    """The pairing a (J,nu)-coloring induces on a fibrous M-structured poset.

    tau(x) is the element of the chain comp_j(x), j = kappa(x), at rank
    l_j - 1 - nu_j - rho_j(x); together with kappa it satisfies the
    tau/kappa splitting hypotheses, with S = M_{J,nu}(p).
    """
    nu_of = dict(zip(sorted(nodes), nu))
    tau = {}
    for x, j in kappa.items():
        want = p.lng[j][x] - 1 - nu_of[j] - p.rho[j][x]
        tau[x] = next(y for y in p.comp_members(j, x) if p.rho[j][y] == want)
    s_set = frozenset(set(range(p.n)) - set(kappa))
    return ecposet.ColoringWitness(S=s_set, kappa=dict(kappa), tau=tau)


def verify_jnu_coloring(p, nodes, nu, kappa):
    """Defining condition of a (J,nu)-coloring, checked literally."""
    nodes = tuple(sorted(nodes))
    nu_of = dict(zip(nodes, nu))
    mem = set(m_set(p, nodes, nu))
    if set(kappa) != set(range(p.n)) - mem:
        return False, "kappa domain is not the complement of M_{J,nu}"
    for x in kappa:
        j = kappa[x]
        if j not in nodes or p.delta(j, x) <= nu_of[j]:
            return False, "kappa(%d) is not in K_{J,nu}" % x
        comp = p.comp_members(j, x)
        chain = sorted(comp, key=lambda v: p.rho[j][v])
        top = set(chain[-(1 + nu_of[j]):])
        want = set(chain) - top
        got = {y for y in comp if y not in mem and kappa.get(y) == j}
        if got != want:
            return False, "coloring condition fails at vertex %d color %d" % (x, j)
    return True, None


# ---------------------------------------------------------------------------
# structure classifiers

def strongly_untangled(p, exhaustive_limit=4):
    """Every J-component has exactly one maximal element.

    All subsets are tested up to the given rank limit; beyond it, all pairs
    plus the full color set.
    """
    n = p.n_colors
    if n <= exhaustive_limit:
        subsets = []
        for mask in range(1, 1 << n):
            subsets.append([j + 1 for j in range(n) if mask >> j & 1])
    else:
        subsets = [[i, j] for i in range(1, n + 1) for j in range(i, n + 1)]
        subsets.append(list(range(1, n + 1)))
    for js in subsets:
        if not _unique_max_components(p, js):
            return False
    return True


def _unique_max_components(p, js):
    jset = set(js)
    parent = list(range(p.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v, c in p.edges:
        if c in jset:
            parent[find(u)] = find(v)
    maxes = {}
    for x in range(p.n):
        if not any(c in jset for _, c in p.out[x]):
            r = find(x)
            maxes[r] = maxes.get(r, 0) + 1
    return all(v == 1 for v in maxes.values())


def classify_primary_plus(p):
    """Combinatorial classifier: minuscule / quasi-minuscule / neither."""
    neither = ("neither", None)
    if not (p.is_connected() and p.edges and p.is_fibrous()):
        return neither
    try:
        if not p.is_m_structured():
            return neither
    except Exception:
        return neither
    maxes = p.maximal_vertices()
    if len(maxes) != 1:
        return neither
    lam = p.wt[maxes[0]]
    d = p.d

    def cond2_zero_pairs():
        for i in range(1, p.n_colors + 1):
            for j in range(i + 1, p.n_colors + 1):
                if d.cartan[i - 1][j - 1] == 0 and d.cartan[j - 1][i - 1] == 0:
                    if not _unique_max_components(p, [i, j]):
                        return False
        return True

    if all(p.lng[i][x] <= 1 for i in range(1, p.n_colors + 1)
           for x in range(p.n)):
        if cond2_zero_pairs():
            return ("minuscule", lam)
        return neither

    # quasi-minuscule shape conditions
    for x in range(p.n):
        for i in range(1, p.n_colors + 1):
            if p.lng[i][x] < 2:
                continue
            if p.lng[i][x] != 2:
                return neither
            comp = p.comp_members(i, x)
            x0 = next(v for v in comp if p.rho[i][v] == 0)
            x1 = next(v for v in comp if p.rho[i][v] == 1)
            x2 = next(v for v in comp if p.rho[i][v] == 2)
            for j in range(1, p.n_colors + 1):
                if j == i:
                    continue
                if p.delta(j, x0) != 0 or p.rho[j][x2] != 0:
                    return neither
                if p.lng[j][x1] != 0:
                    return neither
    if not cond2_zero_pairs():
        return neither
    for i in range(1, p.n_colors + 1):
        for j in range(i + 1, p.n_colors + 1):
            if d.cartan[i - 1][j - 1] == -1 and d.cartan[j - 1][i - 1] == -1:
                if not _unique_max_components(p, [i, j]):
                    return neither
    return ("quasi-minuscule", lam)


# ---------------------------------------------------------------------------
# saturation tables

def u_table(d):
    """u_i^(k): longest i-component length in Pi(omega_k), as max coordinate."""
    if len(d.components) != 1:
        raise NotIrreducible("u-tables are per irreducible diagram")
    out = {}
    for k in range(1, d.rank + 1):
        pi = wsf.weight_diagram(d, d.omega(k))
        out[k] = tuple(max(w[i] for w in pi.weights) for i in range(d.rank))
    return out


def saturation_predicate(d, lam, nu, nodes=None):
    """M_{J,nu}(R(lambda)) fills R(lambda) iff sum a_k u_j^(k) <= nu_j on J."""
    table = u_table(d)
    nodes = tuple(sorted(nodes)) if nodes else tuple(range(1, d.rank + 1))
    nu_of = dict(zip(nodes, nu))
    for j in nodes:
        total = sum(a * table[k][j - 1] for k, a in enumerate(lam, start=1) if a)
        if total > nu_of[j]:
            return False
    return True
