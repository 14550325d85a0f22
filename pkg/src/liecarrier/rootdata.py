"""Root systems of types A-G, Chevalley structure constants, and Weyl groups.

Roots are integer coefficient vectors in the simple-root basis, ordered with
positive roots first (by height, then lexicographically) and their negatives
following in matching order. Weyl groups act as permutations of the root list;
membership uses a stabilizer chain, which keeps |W(E6)| = 51840 tractable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class UnsupportedType(ValueError):
    """Simple type outside families A-G with rank 1..8."""


class NotARoot(ValueError):
    pass


class NotASubgroupElement(ValueError):
    pass


_FAMILY_RANKS = {"A": range(1, 9), "B": range(2, 9), "C": range(2, 9),
                 "D": range(3, 9), "E": range(6, 9), "F": (4,), "G": (2,)}


def cartan_matrix(family: str, rank: int):
    """Cartan matrix with entries A[i][j] = <alpha_i, alpha_j> = 2(ai,aj)/(aj,aj)."""
    if family not in _FAMILY_RANKS or rank not in _FAMILY_RANKS[family]:
        raise UnsupportedType(f"{family}{rank}")
    n = rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def edge(i, j, vij=-1, vji=-1):
        a[i][j] = vij
        a[j][i] = vji

    if family == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif family == "B":
        # last simple root short
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 2, n - 1, -2, -1)
    elif family == "C":
        # last simple root long
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 2, n - 1, -1, -2)
    elif family == "D":
        for i in range(n - 3):
            edge(i, i + 1)
        edge(n - 3, n - 2)
        edge(n - 3, n - 1)
    elif family == "E":
        # chain 1-3-4-5-6(-7-8), node 2 attached to node 4 (1-indexed)
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for x, y in zip(chain, chain[1:]):
            edge(x, y)
        edge(1, 3)
    elif family == "F":
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
    elif family == "G":
        edge(0, 1, -1, -3)
    return a


def _simple_lengths(a):
    """Squared lengths of simple roots, consistent with the Cartan matrix.

    Solves (ai,aj) symmetry: A[i][j]*d_j = A[j][i]*d_i with d_i = |alpha_i|^2/2.
    """
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] and d[j] is None:
                    d[j] = d[i] * a[j][i] / a[i][j]
                    stack.append(j)
    return [2 * x for x in d]


@dataclass(frozen=True)
class RootSystem:
    """A (possibly reducible) crystallographic root system."""

    type: tuple
    cartan: tuple
    roots: tuple          # coefficient vectors over the simple basis
    npos: int
    simple_indices: tuple
    lengths: tuple        # squared length of each root, as Fraction
    _index: dict = field(hash=False, compare=False, repr=False, default=None)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def nroots(self) -> int:
        return len(self.roots)

    def index(self, root) -> int:
        i = self._index.get(tuple(root))
        if i is None:
            raise NotARoot(str(root))
        return i

    def index_or_none(self, root):
        return self._index.get(tuple(root))

    def neg(self, i: int) -> int:
        return i + self.npos if i < self.npos else i - self.npos

    def is_positive(self, i: int) -> bool:
        return i < self.npos

    def height(self, i: int) -> int:
        return sum(self.roots[i])

    def pairing(self, i: int, j: int) -> int:
        """<roots[i], roots[j]> via the symmetrized bilinear form."""
        return self._pair(i, j)

    def _pair(self, i, j):
        ri, rj = self.roots[i], self.roots[j]
        lj = self.lengths[j]
        tot = Fraction(0)
        for k, ck in enumerate(ri):
            if ck:
                for t, ct in enumerate(rj):
                    if ct:
                        tot += ck * ct * self._gram[k][t]
        v = 2 * tot / lj
        assert v.denominator == 1
        return int(v)

    @property
    def _gram(self):
        g = getattr(self, "_gram_cache", None)
        if g is None:
            n = self.rank
            d = _simple_lengths([list(r) for r in self.cartan])
            g = [[Fraction(self.cartan[i][j]) * d[j] / 2 for j in range(n)] for i in range(n)]
            object.__setattr__(self, "_gram_cache", g)
        return g

    def sum_index(self, i: int, j: int):
        """Index of roots[i] + roots[j], or None."""
        s = tuple(x + y for x, y in zip(self.roots[i], self.roots[j]))
        return self._index.get(s)

    def chain_down(self, j: int, i: int) -> int:
        """Largest r with roots[j] - r*roots[i] a root."""
        r = 0
        cur = list(self.roots[j])
        ri = self.roots[i]
        while True:
            cur = [x - y for x, y in zip(cur, ri)]
            if tuple(cur) in self._index:
                r += 1
            else:
                return r

    def simple_reflection(self, k: int):
        """Reflection in the k-th simple root, as a permutation of root indices."""
        i = self.simple_indices[k]
        return self.reflection(i)

    def reflection(self, i: int):
        out = []
        for j in range(self.nroots):
            c = cartan_int(self, j, i)
            img = tuple(x - c * y for x, y in zip(self.roots[j], self.roots[i]))
            out.append(self._index[img])
        return tuple(out)

    def weyl_group(self) -> "WeylGroup":
        w = getattr(self, "_weyl_cache", None)
        if w is None:
            gens = [self.simple_reflection(k) for k in range(self.rank)]
            w = WeylGroup(gens, self.nroots)
            object.__setattr__(self, "_weyl_cache", w)
        return w


def root_system(typ) -> RootSystem:
    """Build the root system for a type given as "E6", ("E", 6), or a list of
    simple components [("A", 1), ("A", 1)]."""
    comps = _normalize_type(typ)
    blocks = []
    for fam, rk in comps:
        blocks.append(cartan_matrix(fam, rk))
    n = sum(len(b) for b in blocks)
    a = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                a[off + i][off + j] = b[i][j]
        off += len(b)
    return root_system_from_cartan(a, tuple(comps))


def _normalize_type(typ):
    if isinstance(typ, str):
        return [(typ[0].upper(), int(typ[1:]))]
    if isinstance(typ, tuple) and len(typ) == 2 and isinstance(typ[0], str) \
            and not isinstance(typ[1], str) and len(typ[0]) == 1:
        return [(typ[0].upper(), int(typ[1]))]
    out = []
    for item in typ:
        out.extend(_normalize_type(item))
    return out


def root_system_from_cartan(a, comps) -> RootSystem:
    n = len(a)
    pos = {tuple(int(i == j) for j in range(n)) for i in range(n)}
    # closure by height: beta + alpha_i is a root iff q = r - <beta, alpha_i> > 0
    frontier = list(pos)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(c * a[k][i] for k, c in enumerate(beta))
                r = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in pos or all(x == 0 for x in cur):
                        if all(x == 0 for x in cur):
                            break
                        r += 1
                    else:
                        break
                # the alpha_i-chain through beta ends q steps up
                q = r - pairing
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    t = tuple(up)
                    if t not in pos:
                        pos.add(t)
                        new.append(t)
        frontier = new
    plist = sorted(pos, key=lambda v: (sum(v), v))
    roots = tuple(plist + [tuple(-x for x in v) for v in plist])
    index = {r: i for i, r in enumerate(roots)}
    simple = tuple(index[tuple(int(i == j) for j in range(n))] for i in range(n))
    d = _simple_lengths(a)
    gram = [[Fraction(a[i][j]) * d[j] / 2 for j in range(n)] for i in range(n)]
    lengths = []
    for r in roots:
        s = Fraction(0)
        for i, ci in enumerate(r):
            if ci:
                for j, cj in enumerate(r):
                    if cj:
                        s += ci * cj * gram[i][j]
        lengths.append(s)
    rs = RootSystem(tuple(comps), tuple(tuple(row) for row in a), roots,
                    len(plist), simple, tuple(lengths), index)
    return rs


def cartan_int(rs: RootSystem, j, i) -> int:
    """<roots[j], roots[i]> = r - q from the alpha-chain through beta.

    Accepts root indices or coefficient vectors.
    """
    if not isinstance(j, int):
        j = rs.index(j)
    if not isinstance(i, int):
        i = rs.index(i)
    if not (0 <= j < rs.nroots and 0 <= i < rs.nroots):
        raise NotARoot(f"index {j},{i}")
    if j == i:
        return 2
    if j == rs.neg(i):
        return -2
    r = rs.chain_down(j, i)
    q = _chain_up(rs, j, i)
    return r - q


def _chain_up(rs, j, i):
    q = 0
    cur = list(rs.roots[j])
    ri = rs.roots[i]
    while True:
        cur = [x + y for x, y in zip(cur, ri)]
        if tuple(cur) in rs._index:
            q += 1
        else:
            return q


# ---------------------------------------------------------------------------
# Chevalley structure constants
# ---------------------------------------------------------------------------


@dataclass
class StructureConstants:
    """N(alpha,beta) on pairs of root indices with alpha + beta a root.

    Signs follow the extraspecial-pair convention: N(alpha,beta) = r + 1 > 0
    whenever (alpha,beta) is the extraspecial pair for alpha + beta.
    """

    rs: RootSystem
    n: dict

    def value(self, i: int, j: int) -> int:
        return self.n.get((i, j), 0)


def structure_constants(rs: RootSystem) -> StructureConstants:
    npos = rs.npos
    extra = {}
    # extraspecial pair of each non-simple positive root: minimal first member
    for e in range(npos):
        if rs.height(e) < 2:
            continue
        best = None
        for i in range(npos):
            if i >= e:
                break
            rest = tuple(x - y for x, y in zip(rs.roots[e], rs.roots[i]))
            j = rs.index_or_none(rest)
            if j is not None and j < npos and i < j:
                best = (i, j)
                break
        extra[e] = best

    memo = {}

    def ratio(i, j):
        return rs.lengths[i] / rs.lengths[j]

    def n(i, j):
        """Structure constant N(roots[i], roots[j]); 0 when the sum is not a root."""
        s = rs.sum_index(i, j)
        if s is None:
            return 0
        key = (i, j)
        if key in memo:
            return memo[key]
        memo[key] = None  # cycle guard
        pi, pj = rs.is_positive(i), rs.is_positive(j)
        if pi and pj:
            if i > j:
                v = -n(j, i)
            else:
                gam, delt = extra[s]
                if (gam, delt) == (i, j):
                    v = rs.chain_down(j, i) + 1
                else:
                    # Jacobi relation against the extraspecial pair (gam, delt):
                    # N(i,j) = [N(delt,-i)N(delt-i,gam) + N(-i,gam)N(gam-i,delt)]
                    #          * |e|^2 / (N(gam,delt) |j|^2)
                    mi = rs.neg(i)
                    t1 = 0
                    dmi = rs.sum_index(delt, mi)
                    if dmi is not None:
                        t1 = n(delt, mi) * n(dmi, gam)
                    t2 = 0
                    gmi = rs.sum_index(gam, mi)
                    if gmi is not None:
                        t2 = n(mi, gam) * n(gmi, delt)
                    num = (t1 + t2) * ratio(s, j)
                    v = num / n(gam, delt)
                    assert v.denominator == 1, (i, j)
                    v = int(v)
        elif not pi and not pj:
            v = -n(rs.neg(i), rs.neg(j))
        else:
            # rotate with c = -(a+b): N(a,b) = N(b,c) |c|^2 / |a|^2
            c = rs.neg(s)
            v = n(j, c) * ratio(c, i)
            assert v.denominator == 1, (i, j)
            v = int(v)
        memo[key] = v
        return v

    table = {}
    for i in range(rs.nroots):
        for j in range(rs.nroots):
            if i != j and rs.sum_index(i, j) is not None:
                table[(i, j)] = n(i, j)
    for (i, j), v in table.items():
        assert v != 0 and table[(j, i)] == -v
    return StructureConstants(rs, table)


# ---------------------------------------------------------------------------
# Permutation machinery
# ---------------------------------------------------------------------------


def perm_mul(p, q):
    """Composition: apply q first, then p."""
    return tuple(p[x] for x in q)


def perm_inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_identity(n):
    return tuple(range(n))


class WeylGroup:
    """A permutation group on root indices with a stabilizer chain.

    Supports order, membership, element enumeration, canonical coset labels and
    right-coset representative enumeration.
    """

    def __init__(self, generators, degree):
        self.degree = degree
        self.identity = perm_identity(degree)
        self.generators = [tuple(g) for g in generators if tuple(g) != self.identity]
        self.base = []
        self.strong_gens = []     # per level: generators fixing base[:k]
        self.transversals = []    # per level: point -> perm mapping base[k] to point
        self._build()

    # -- stabilizer chain (incremental Schreier-Sims) ----------------------

    def _orbit_transversal(self, point, gens):
        tr = {point: self.identity}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g[x]
                    if y not in tr:
                        tr[y] = perm_mul(g, tr[x])
                        nxt.append(y)
            frontier = nxt
        return tr

    def _build(self):
        self.base = []
        self.strong_gens = []
        self.transversals = []
        for g in self.generators:
            self._add_generator(g)

    def _sift(self, p):
        for k in range(len(self.base)):
            x = p[self.base[k]]
            t = self.transversals[k].get(x)
            if t is None:
                return p, k
            p = perm_mul(perm_inv(t), p)
        return p, len(self.base)

    def _add_generator(self, g, level=0):
        rem, k = self._sift(g)
        if rem == self.identity:
            return
        if k == len(self.base):
            pt = next(i for i, x in enumerate(rem) if x != i)
            self.base.append(pt)
            self.strong_gens.append([])
            self.transversals.append({pt: self.identity})
        self.strong_gens[k].append(rem)
        for lvl in range(k, -1, -1):
            gens = [h for lv in range(lvl, len(self.strong_gens)) for h in self.strong_gens[lv]]
            old = self.transversals[lvl]
            new = self._orbit_transversal(self.base[lvl], gens)
            self.transversals[lvl] = new
            # verify Schreier generators sift through deeper levels
            for x, t in list(new.items()):
                for h in gens:
                    sg = perm_mul(perm_inv(new[h[x]]), perm_mul(h, t))
                    if sg != self.identity:
                        rem2, k2 = self._sift(sg)
                        if rem2 != self.identity:
                            self._add_generator(rem2)

    def order(self) -> int:
        o = 1
        for t in self.transversals:
            o *= len(t)
        return o

    def __contains__(self, p):
        rem, _ = self._sift(tuple(p))
        return rem == self.identity

    def elements(self):
        """All elements; only for small groups."""
        out = [self.identity]
        for t in reversed(self.transversals):
            out = [perm_mul(u, w) for u in t.values() for w in out]
        return out

    def canonical_left_coset(self, v):
        """Canonical element of the left coset v*self, for coset labelling."""
        v = tuple(v)
        for k in range(len(self.base)):
            b = self.base[k]
            tr = self.transversals[k]
            best_pt = min(tr, key=lambda x: v[x])
            v = perm_mul(v, tr[best_pt])
        return v


def coset_reps(group: WeylGroup, sub_generators):
    """Right-coset representatives of the subgroup generated by sub_generators.

    Every w in the group factors uniquely as h * rep. Raises
    NotASubgroupElement if a claimed subgroup generator is outside the group.
    """
    h = WeylGroup(list(sub_generators), group.degree)
    for g in h.generators:
        if g not in group:
            raise NotASubgroupElement(str(g))
    # right coset H*w is labelled by the canonical element of w^{-1}*H
    reps = {}
    ident = group.identity
    reps[h.canonical_left_coset(ident)] = ident
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in group.generators:
                wg = perm_mul(w, g)
                key = h.canonical_left_coset(perm_inv(wg))
                if key not in reps:
                    reps[key] = wg
                    nxt.append(wg)
        frontier = nxt
    out = list(reps.values())
    assert len(out) * h.order() == group.order()
    return out


# ---------------------------------------------------------------------------
# Subsystem machinery and Borel-de Siebenthal enumeration
# ---------------------------------------------------------------------------


def close_subsystem(rs: RootSystem, seed):
    """Smallest symmetric closed subsystem containing the seed root indices."""
    s = set()
    for i in seed:
        s.add(i)
        s.add(rs.neg(i))
    changed = True
    while changed:
        changed = False
        cur = list(s)
        for a in cur:
            for b in cur:
                t = rs.sum_index(a, b)
                if t is not None and t not in s:
                    s.add(t)
                    s.add(rs.neg(t))
                    changed = True
    return frozenset(s)


def subsystem_base(rs: RootSystem, sub):
    """Simple system of a closed symmetric subsystem w.r.t. ambient positivity."""
    pos = sorted(i for i in sub if rs.is_positive(i))
    posset = set(pos)
    base = []
    for i in pos:
        decomposable = False
        for a in pos:
            if a == i:
                continue
            rest = tuple(x - y for x, y in zip(rs.roots[i], rs.roots[a]))
            j = rs.index_or_none(rest)
            if j is not None and j in posset:
                decomposable = True
                break
        if not decomposable:
            base.append(i)
    return tuple(base)


def _component_split(rs, base):
    """Connected components of the Dynkin diagram on the given base indices."""
    comps = []
    left = set(base)
    while left:
        comp = [left.pop()]
        grew = True
        while grew:
            grew = False
            for x in list(left):
                if any(cartan_int(rs, x, y) != 0 for y in comp):
                    comp.append(x)
                    left.discard(x)
                    grew = True
        comps.append(sorted(comp))
    return comps


def identify_component(rs, comp):
    """(family, rank) of one connected base component."""
    n = len(comp)
    if n == 1:
        return ("A", 1)
    pair = {(i, j): cartan_int(rs, comp[i], comp[j]) for i in range(n) for j in range(n) if i != j}
    deg = [sum(1 for j in range(n) if i != j and pair[(i, j)]) for i in range(n)]
    double = [(i, j) for (i, j), v in pair.items() if v == -2]
    triple = [(i, j) for (i, j), v in pair.items() if v == -3]
    if triple:
        return ("G", 2)
    if double:
        if n == 2:
            return ("B", 2)
        # F4 has the double edge in the middle, B/C at the end
        i, j = double[0]
        if deg[i] == 2 and deg[j] == 2 and n == 4:
            return ("F", 4)
        # <alpha_i, alpha_j> = -2 means alpha_j short; C has a long end root
        short_end = j if deg[j] == 1 else i
        if deg[short_end] == 1 and pair[(short_end, [x for x in range(n) if x != short_end and pair[(short_end, x)]][0])] == -1:
            return ("B", n)
        return ("C", n)
    if max(deg) == 3:
        branch = deg.index(3)
        arms = sorted(_arm_lengths(pair, n, branch))
        if arms == [1, 1, n - 3]:
            return ("D", n)
        return ("E", n)
    return ("A", n)


def _arm_lengths(pair, n, branch):
    adj = {i: [j for j in range(n) if j != i and pair[(i, j)]] for i in range(n)}
    arms = []
    for start in adj[branch]:
        ln = 1
        prev, cur = branch, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            ln += 1
        arms.append(ln)
    return arms


_TYPE_CANON = {("B", 1): ("A", 1), ("C", 1): ("A", 1), ("D", 1): ("A", 1),
               ("C", 2): ("B", 2), ("D", 2): None, ("D", 3): ("A", 3)}


def subsystem_type(rs: RootSystem, sub) -> str:
    """Canonical type string of a closed symmetric subsystem, e.g. "2A1+A3"."""
    base = subsystem_base(rs, sub)
    comps = _component_split(rs, base)
    names = []
    for comp in comps:
        fam, rk = identify_component(rs, comp)
        canon = _TYPE_CANON.get((fam, rk), (fam, rk))
        if canon is None:            # D2 = A1 + A1
            names.extend([("A", 1), ("A", 1)])
        else:
            names.append(canon)
    return type_string(names)


def type_string(names) -> str:
    names = sorted(names, key=lambda t: (t[0], t[1]))
    out = []
    i = 0
    while i < len(names):
        j = i
        while j < len(names) and names[j] == names[i]:
            j += 1
        fam, rk = names[i]
        mult = j - i
        out.append((f"{mult}" if mult > 1 else "") + f"{fam}{rk}")
        i = j
    return "+".join(out)


def highest_root_index(rs: RootSystem, comp_base):
    """Highest root of the subsystem component generated by comp_base."""
    comp_sub = close_subsystem(rs, comp_base)
    best = None
    best_ht = -1
    base_vecs = [rs.roots[i] for i in comp_base]
    for i in comp_sub:
        coeffs = _coords_in(rs.roots[i], base_vecs)
        if coeffs is None or any(c < 0 for c in coeffs):
            continue
        ht = sum(coeffs)
        if ht > best_ht:
            best_ht = ht
            best = i
    return best


def _coords_in(vec, basis):
    from .exactmath import solve_linear
    rows = [[Fraction(b[k]) for b in basis] for k in range(len(vec))]
    sol = solve_linear(rows, [Fraction(x) for x in vec])
    return sol


def closed_subsystems(rs: RootSystem):
    """Proper nonempty closed symmetric subsystems up to Weyl conjugacy.

    Iterated Borel-de Siebenthal steps (extended-diagram node removal) plus
    plain subdiagram deletion, with exact conjugacy dedup by orbit membership.
    """
    w_gens = [rs.simple_reflection(k) for k in range(rs.rank)]
    full = frozenset(range(rs.nroots))

    seen_bases = set()
    candidates = []

    def visit(base):
        base = tuple(sorted(base))
        if not base or base in seen_bases:
            return
        seen_bases.add(base)
        sub = close_subsystem(rs, base)
        if sub != full:
            candidates.append(sub)
        comps = _component_split(rs, base)
        # extended-diagram step per component: adjoin the lowest root, drop a node
        for comp in comps:
            hi = highest_root_index(rs, comp)
            low = rs.neg(hi)
            if low in base:
                continue
            ext = list(base) + [low]
            for drop in comp:
                nb = tuple(sorted(x for x in ext if x != drop))
                visit(nb)
        # subdiagram deletion
        for drop in base:
            visit(tuple(x for x in base if x != drop))

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(100000)
    try:
        visit(tuple(rs.simple_indices))
    finally:
        sys.setrecursionlimit(old)

    # dedup by W-orbit: exact membership via orbit enumeration, memoized
    orbit_of = {}
    classes = []
    for sub in candidates:
        if sub in orbit_of:
            continue
        orbit = {sub}
        frontier = [sub]
        while frontier:
            nxt = []
            for s in frontier:
                for g in w_gens:
                    img = frozenset(g[i] for i in s)
                    if img not in orbit:
                        orbit.add(img)
                        nxt.append(img)
            frontier = nxt
        for s in orbit:
            orbit_of[s] = len(classes)
        classes.append(sub)
    return classes


@lru_cache(maxsize=None)
def cached_root_system(key) -> RootSystem:
    return root_system(key)
