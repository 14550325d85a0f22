"""Gradings of split real semisimple Lie algebras.

Two constructions are provided.  A Z-grading assigns a nonnegative integer
degree to every simple root and grades the root spaces by the induced linear
functional on roots.  A Z_m-grading comes from a finite-order automorphism
phi = pi . eta, where pi is a diagram automorphism of order 1 or 2 and eta
scales the root vector x_alpha by omega^(sum_j a_j k_j) for a primitive m-th
root of unity omega and chosen weights k_j.  Every graded component is a
rational subspace of the split form; omega itself is never materialized.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import GaussianRational, I, kernel_basis, solve_linear
from .liecore import LieAlgebra, LinearMap, Subspace, is_nilpotent_element
from .realstruct import SplitAlgebra, simultaneous_eigenspaces


class OrderMismatch(ValueError):
    """The requested automorphism does not have the requested order."""


class NoSolution(ValueError):
    """No element of the degree-zero part acts as the degree on each part."""


class NotNormalized(ValueError):
    """The proposed Cartan subalgebra does not normalize every component."""


class NotNilpotent(ValueError):
    """A nonzero nilpotent element is required."""


class NotHomogeneous(ValueError):
    """The element does not lie in the degree-one component."""


# ---------------------------------------------------------------------------
# Graded algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """A split real semisimple Lie algebra with a Z- or Z_m-grading.

    ``m`` is None for a Z-grading and the modulus otherwise.  ``degree``
    lists, per basis index, the degree of the basis vector, or None where the
    basis vector is not homogeneous (this happens only for an outer diagram
    automorphism).  ``components`` maps each occurring degree to the
    corresponding subspace of the split form.  ``phi`` is the grading
    automorphism whenever its eigenvalue scalars lie in Q(i), i.e. for
    m in {1, 2, 4}; each component then sits inside the omega^i-eigenspace.
    """

    ctx: SplitAlgebra
    m: int | None
    degree: tuple
    components: dict
    phi: LinearMap | None = None

    @property
    def g(self) -> LieAlgebra:
        return self.ctx.g

    @property
    def theta(self) -> LinearMap:
        return self.ctx.theta

    @property
    def sigma(self) -> LinearMap:
        return self.ctx.sigma

    def normalize_degree(self, i: int) -> int:
        return i if self.m is None else i % self.m

    def component(self, i: int) -> Subspace:
        sub = self.components.get(self.normalize_degree(i))
        if sub is None:
            sub = Subspace(self.ctx.g, [])
        return sub

    def degrees(self):
        return sorted(self.components)


def _component_subspaces(g: LieAlgebra, buckets) -> dict:
    return {i: Subspace(g, vecs) for i, vecs in sorted(buckets.items())}


def _check_graded(ga: GradedAlgebra) -> GradedAlgebra:
    """Structural invariants: direct sum, degree reversal under theta, and
    (when the grading automorphism is stored) the eigenspace property."""
    g = ga.ctx.g
    assert sum(s.dim for s in ga.components.values()) == g.dim
    for i, sub in ga.components.items():
        image = Subspace(g, [ga.theta.apply(list(v)) for v in sub.basis])
        assert image == ga.component(-i)
    if ga.phi is not None:
        omega = {1: Fraction(1), 2: Fraction(-1), 4: I}[ga.m]
        for i, sub in ga.components.items():
            scale = omega ** i
            for v in sub.basis:
                assert ga.phi.apply(list(v)) == [scale * x for x in v]
    return ga


def grade_by_degrees(ctx: SplitAlgebra, d) -> GradedAlgebra:
    """Z-grading from nonnegative integer degrees on the simple roots.

    ``d`` maps simple root positions to degrees (a sequence or a mapping;
    missing positions default to 0).  The Cartan subalgebra has degree 0 and
    the root space of alpha = sum_i a_i alpha_i has degree sum_i a_i d_i.
    """
    rs = ctx.rs
    l = rs.rank
    if isinstance(d, dict):
        d = [d.get(i, 0) for i in range(l)]
    d = [int(x) for x in d]
    if len(d) != l or any(x < 0 for x in d):
        raise ValueError("need one nonnegative degree per simple root")
    deg = [0] * l
    for a in range(rs.nroots):
        deg.append(sum(c * dk for c, dk in zip(rs.roots[a], d)))
    buckets = defaultdict(list)
    for j, dj in enumerate(deg):
        buckets[dj].append(ctx.g.basis_vector(j))
    ga = GradedAlgebra(ctx, None, tuple(deg), _component_subspaces(ctx.g, buckets))
    return _check_graded(ga)


def _root_permutation(rs, pi):
    """Action of a simple-root permutation on all root indices."""
    out = []
    for a in range(rs.nroots):
        img = [0] * rs.rank
        for i, c in enumerate(rs.roots[a]):
            img[pi[i]] = c
        out.append(rs.index(img))
    return tuple(out)


def _diagram_signs(ctx: SplitAlgebra, pstar):
    """Scalars c_a with pi(x_a) = c_a x_(pi a) for the automorphism extending
    x_i -> x_(pi i) on the simple generators; computed by induction on height
    from bracket compatibility."""
    rs, g = ctx.rs, ctx.g
    l = rs.rank
    sign = [None] * rs.nroots
    for i in rs.simple_indices:
        sign[i] = Fraction(1)

    def constant(b, s, a):
        v = g.bracket(g.basis_vector(l + b), g.basis_vector(l + s))
        assert any(v)
        return v[l + a]

    for a in sorted(range(rs.npos), key=rs.height):
        if sign[a] is not None:
            continue
        for s in rs.simple_indices:
            b = rs.index_or_none([x - y for x, y in zip(rs.roots[a], rs.roots[s])])
            if b is not None:
                break
        n1 = constant(b, s, a)
        n2 = constant(pstar[b], pstar[s], pstar[a])
        assert abs(n1) == abs(n2)
        sign[a] = sign[b] * sign[s] * n2 / n1
    for a in range(rs.npos):
        sign[a + rs.npos] = sign[a]
    for a, c in enumerate(sign):
        assert c in (1, -1) and c * sign[pstar[a]] == 1
    return sign


def _diagram_map(ctx: SplitAlgebra, pi, pstar, sign) -> LinearMap:
    rs, g = ctx.rs, ctx.g
    l = rs.rank
    n = g.dim

    def image(idx):
        """Basis index -> (image index, scalar) under the extended map."""
        if idx < l:
            return pi[idx], Fraction(1)
        return l + pstar[idx - l], sign[idx - l]

    mat = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        i, c = image(j)
        mat[i][j] = c
    # the extension is an automorphism: checked sparsely on the whole table
    for (i, j), entries in g.table.items():
        ii, ci = image(i)
        jj, cj = image(j)
        rhs = {k: ci * cj * c for k, c in g.bracket_basis(ii, jj).items() if c}
        lhs = {}
        for k, c in entries.items():
            if c:
                kk, ck = image(k)
                lhs[kk] = ck * c
        assert lhs == rhs
    return LinearMap(tuple(tuple(r) for r in mat), is_automorphism=True)


def grade_by_automorphism(ctx: SplitAlgebra, pi, k, m: int) -> GradedAlgebra:
    """Z_m-grading from phi = pi . eta.

    ``pi`` is a diagram automorphism given as a permutation of simple root
    positions (None for the identity) and must have order 1 or 2; ``k`` lists
    one nonnegative integer weight per simple root, constant on pi-orbits;
    eta scales x_alpha by omega^(sum_j a_j k_j).  Raises OrderMismatch unless
    phi has order exactly m (for an outer pi this forces m even).
    """
    rs = ctx.rs
    l = rs.rank
    m = int(m)
    if m < 1:
        raise ValueError("the modulus must be a positive integer")
    pi = tuple(range(l)) if pi is None else tuple(pi)
    if sorted(pi) != list(range(l)):
        raise ValueError("pi must be a permutation of the simple root positions")
    for i in range(l):
        for j in range(l):
            if rs.cartan[pi[i]][pi[j]] != rs.cartan[i][j]:
                raise ValueError("pi is not a diagram automorphism")
    if any(pi[pi[i]] != i for i in range(l)):
        raise ValueError("pi must have order 1 or 2")
    k = [int(x) for x in k]
    if len(k) != l or any(x < 0 for x in k):
        raise ValueError("need one nonnegative weight per simple root")
    if any(k[i] != k[pi[i]] for i in range(l)):
        raise ValueError("the weights must be constant on pi-orbits")

    rdeg = [sum(c * kj for c, kj in zip(rs.roots[a], k)) % m for a in range(rs.nroots)]
    order_eta = m // math.gcd(m, *k)
    outer = pi != tuple(range(l))
    order_phi = math.lcm(2, order_eta) if outer else order_eta
    if order_phi != m:
        raise OrderMismatch(f"pi.eta has order {order_phi}, not {m}")

    g = ctx.g
    buckets = defaultdict(list)
    if not outer:
        deg = [0] * l + rdeg
        for j, dj in enumerate(deg):
            buckets[dj].append(g.basis_vector(j))
        phi = None
        if m in (1, 2, 4):
            omega = {1: Fraction(1), 2: Fraction(-1), 4: I}[m]
            n = g.dim
            mat = [[omega ** deg[i] if i == j else Fraction(0) for j in range(n)]
                   for i in range(n)]
            phi = LinearMap(tuple(tuple(r) for r in mat), is_automorphism=True)
        ga = GradedAlgebra(ctx, m, tuple(deg), _component_subspaces(g, buckets), phi)
        return _check_graded(ga)

    half = m // 2
    pstar = _root_permutation(rs, pi)
    assert all(rdeg[pstar[a]] == rdeg[a] for a in range(rs.nroots))
    sign = _diagram_signs(ctx, pstar)
    pmap = _diagram_map(ctx, pi, pstar, sign)
    deg = [None] * g.dim
    for j in range(l):
        if pi[j] == j:
            deg[j] = 0
            buckets[0].append(g.basis_vector(j))
        elif j < pi[j]:
            plus = [Fraction(0)] * g.dim
            minus = [Fraction(0)] * g.dim
            plus[j] = plus[pi[j]] = Fraction(1)
            minus[j], minus[pi[j]] = Fraction(1), Fraction(-1)
            buckets[0].append(plus)
            buckets[half].append(minus)
    for a in range(rs.nroots):
        b = pstar[a]
        if b == a:
            deg[l + a] = rdeg[a] if sign[a] == 1 else (rdeg[a] + half) % m
            buckets[deg[l + a]].append(g.basis_vector(l + a))
        elif a < b:
            plus = [Fraction(0)] * g.dim
            minus = [Fraction(0)] * g.dim
            plus[l + a], plus[l + b] = Fraction(1), sign[a]
            minus[l + a], minus[l + b] = Fraction(1), -sign[a]
            buckets[rdeg[a]].append(plus)
            buckets[(rdeg[a] + half) % m].append(minus)
    phi = None
    if m in (2, 4):
        omega = Fraction(-1) if m == 2 else I
        scales = [Fraction(1)] * l + [omega ** rdeg[a] for a in range(rs.nroots)]
        mat = [[pmap.matrix[i][j] * scales[j] for j in range(g.dim)]
               for i in range(g.dim)]
        phi = LinearMap(tuple(tuple(r) for r in mat), is_automorphism=True)
    ga = GradedAlgebra(ctx, m, tuple(deg), _component_subspaces(g, buckets), phi)
    return _check_graded(ga)


def bracket_degree_additive(ga: GradedAlgebra) -> bool:
    """Exhaustive check that [g_i, g_j] lies in g_(i+j) for basis pairs.

    When every basis vector is homogeneous the check reads degrees off the
    sparse bracket table; otherwise it falls back to subspace containment
    over component basis pairs.
    """
    g = ga.ctx.g
    if all(d is not None for d in ga.degree):
        for i in range(g.dim):
            for j in range(g.dim):
                want = ga.normalize_degree(ga.degree[i] + ga.degree[j])
                for r, x in g.bracket_basis(i, j).items():
                    if x and ga.degree[r] != want:
                        return False
        return True
    for i, si in ga.components.items():
        for j, sj in ga.components.items():
            target = ga.component(i + j)
            for u in si.basis:
                for v in sj.basis:
                    if not target.contains(g.bracket(list(u), list(v))):
                        return False
    return True


# ---------------------------------------------------------------------------
# Defining elements and weight systems
# ---------------------------------------------------------------------------


def defining_element(components: dict):
    """The element h0 of the degree-0 part with [h0, x] = i*x on each part.

    ``components`` maps integer degrees to subspaces of a common algebra and
    must describe a graded subalgebra.  Raises NoSolution when no such
    element exists; the element is unique whenever the degree-0 part contains
    no central directions, and uniqueness is asserted.
    """
    comps = {int(i): s for i, s in components.items()}
    subs = [s for s in comps.values() if s.dim]
    if not subs:
        raise NoSolution("empty grading")
    g = subs[0].ambient
    s0 = comps.get(0)
    cols = [list(v) for v in s0.basis] if s0 is not None else []
    rows = []
    rhs = []
    for i, sub in sorted(comps.items()):
        for v in sub.basis:
            v = list(v)
            imgs = [g.bracket(b, v) for b in cols]
            for r in range(g.dim):
                rows.append([img[r] for img in imgs])
                rhs.append(i * v[r])
    if not cols:
        if any(rhs):
            raise NoSolution("the degree-0 part is trivial")
        return g.zero()
    sol = solve_linear(rows, rhs)
    if sol is None:
        raise NoSolution("no element of the degree-0 part acts by the degree")
    assert not kernel_basis(rows, len(cols)), "defining element is not unique"
    h0 = g.zero()
    for c, b in zip(sol, cols):
        h0 = [x + c * y for x, y in zip(h0, b)]
    return h0


@dataclass(frozen=True)
class WeightSystem:
    """Nonzero ad-weights of a Cartan subalgebra h0 of the degree-0 part.

    Entries are (degree, weight) pairs, the weight listing the eigenvalues on
    the echelon basis of h0; nonzero weight spaces are one-dimensional.
    """

    h0: Subspace
    entries: frozenset

    def degrees(self):
        return sorted({k for k, _ in self.entries})

    def weights_at(self, k):
        return {wt for kk, wt in self.entries if kk == k}


def weight_system(ga: GradedAlgebra, h0: Subspace, components: dict | None = None) -> WeightSystem:
    """Weights of h0 on a graded subalgebra (default: the whole algebra).

    h0 must normalize every component (NotNormalized otherwise) and act
    semisimply with eigenvalues in Q(i).  The zero weight is omitted; every
    nonzero weight space must be one-dimensional.
    """
    comps = ga.components if components is None else components
    g, gc = ga.ctx.g, ga.ctx.gc
    for i, sub in comps.items():
        for t in h0.basis:
            for v in sub.basis:
                if not sub.contains(g.bracket(list(t), list(v))):
                    raise NotNormalized(f"h0 does not normalize the degree-{i} part")
    entries = set()
    zero = tuple([Fraction(0)] * h0.dim)
    for i, sub in sorted(comps.items()):
        if not sub.dim:
            continue
        blocks = simultaneous_eigenspaces(gc, [list(v) for v in sub.basis], h0.basis)
        for wt, vecs in blocks:
            if wt == zero:
                continue
            assert len(vecs) == 1, "nonzero weight space of dimension > 1"
            entries.add((i, wt))
    return WeightSystem(h0, frozenset(entries))


# ---------------------------------------------------------------------------
# Homogeneous sl2-triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SL2Triple:
    """An sl2-triple with h of degree 0, e of degree 1 and f of degree -1."""

    h: tuple
    e: tuple
    f: tuple


def homogeneous_sl2(ga: GradedAlgebra, e) -> SL2Triple:
    """Extend a nonzero nilpotent e in g_1 to an sl2-triple (h, e, f) with
    h in g_0 and f in g_(-1).

    Raises NotHomogeneous if e is outside g_1 and NotNilpotent for zero or
    non-nilpotent e.  Given (h, e), the third member f is unique.
    """
    g = ga.ctx.g
    e = [Fraction(x) if not isinstance(x, (Fraction, GaussianRational)) else x
         for x in e]
    if not any(e):
        raise NotNilpotent("a nonzero element is required")
    if not ga.component(1).contains(e):
        raise NotHomogeneous("e must lie in the degree-1 component")
    if not is_nilpotent_element(g, e):
        raise NotNilpotent("e is not nilpotent")
    ys = [list(v) for v in ga.component(-1).basis]
    cols = [g.bracket(e, y) for y in ys]
    colse = [g.bracket(c, e) for c in cols]
    rows = [[col[r] for col in colse] for r in range(g.dim)]
    c = solve_linear(rows, [2 * x for x in e])
    assert c is not None, "no defining element in [e, g_-1]"
    h = g.zero()
    for cj, col in zip(c, cols):
        h = [x + cj * y for x, y in zip(h, col)]
    hy = [g.bracket(h, y) for y in ys]
    rows = [[col[r] for col in cols] for r in range(g.dim)]
    rows += [[hy[j][r] + 2 * ys[j][r] for j in range(len(ys))] for r in range(g.dim)]
    d = solve_linear(rows, list(h) + g.zero())
    assert d is not None, "no opposite nilpotent completes the triple"
    assert not kernel_basis(rows, len(ys)), "opposite nilpotent is not unique"
    f = g.zero()
    for dj, y in zip(d, ys):
        f = [x + dj * yy for x, yy in zip(f, y)]
    assert g.bracket(h, e) == [2 * x for x in e]
    assert g.bracket(h, f) == [-2 * x for x in f]
    assert g.bracket(e, f) == h
    return SL2Triple(tuple(h), tuple(e), tuple(f))
