"""Real structure of split semisimple Lie algebras.

Cartan decompositions, theta-stable Cartan subalgebras with adapted root
data, Cayley transforms, real rank, and the enumeration of Cartan
subalgebras up to conjugacy via strongly orthogonal root sets.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import sympy

from .exactmath import (
    GaussianRational,
    conj,
    is_rational_scalar,
    kernel_basis,
    matvec,
    nth_root,
    real_part,
    rref,
    solve_linear,
)
from .liecore import (
    LieAlgebra,
    LinearMap,
    Subspace,
    _coroot,
    _solve_membership_conditions,
    centralizer,
    complexify,
    derived_subalgebra,
    maximal_toral,
    minimal_polynomial,
    split_form,
)
from .rootdata import (
    RootSystem,
    StructureConstants,
    close_subsystem,
    root_system,
    structure_constants,
    subsystem_base,
    subsystem_type,
)


class NotThetaStable(ValueError):
    """Raised when an operation requires a theta-stable subspace."""


class NotRealRoot(ValueError):
    """Raised when a Cayley transform is attempted along a non-real root."""


# ---------------------------------------------------------------------------
# Bundled split form
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SplitAlgebra:
    """A split real form together with its Chevalley data and involutions."""

    rs: RootSystem
    sc: StructureConstants
    g: LieAlgebra
    theta: LinearMap
    gc: LieAlgebra
    sigma: LinearMap

    def root_vector(self, a):
        """The Chevalley basis vector x_a, as an ambient coordinate vector."""
        return self.g.basis_vector(self.rs.rank + a)


@lru_cache(maxsize=None)
def split_algebra(typ) -> SplitAlgebra:
    rs = root_system(typ)
    sc = structure_constants(rs)
    g, theta = split_form(rs, sc)
    gc, sigma = complexify(g)
    return SplitAlgebra(rs, sc, g, theta, gc, sigma)


@dataclass(frozen=True)
class CartanDecomposition:
    k: Subspace
    p: Subspace
    theta: LinearMap


def cartan_decomposition(g: LieAlgebra, theta: LinearMap) -> CartanDecomposition:
    """Eigenspace decomposition g = k + p of a Cartan involution."""
    n = g.dim
    k = Subspace(g, kernel_basis(_shifted(theta, Fraction(1), n), n))
    p = Subspace(g, kernel_basis(_shifted(theta, Fraction(-1), n), n))
    assert k.dim + p.dim == n
    return CartanDecomposition(k, p, theta)


def _shifted(theta: LinearMap, ev, n):
    return [[theta.matrix[i][j] - (ev if i == j else 0) for j in range(n)]
            for i in range(n)]


def _require_theta_stable(s: Subspace, theta: LinearMap):
    for b in s.basis:
        if not s.contains(theta.apply(list(b))):
            raise NotThetaStable("subspace is not stable under the involution")


def _intersect_eigenspace(s: Subspace, theta: LinearMap, sign) -> Subspace:
    conds = []
    for b in s.basis:
        img = theta.apply(list(b))
        conds.append([x - sign * y for x, y in zip(img, b)])
    return _solve_membership_conditions(s, conds)


def toral_split(t: Subspace, theta: LinearMap):
    """Split a theta-stable toral subspace as (t cap k, t cap p)."""
    _require_theta_stable(t, theta)
    return (_intersect_eigenspace(t, theta, Fraction(1)),
            _intersect_eigenspace(t, theta, Fraction(-1)))


# ---------------------------------------------------------------------------
# Real rank and maximally noncompact Cartan subalgebras
# ---------------------------------------------------------------------------


def _maximal_abelian_in_p(d: Subspace, theta: LinearMap) -> Subspace:
    """Greedy maximal abelian subspace of d cap p.

    Every element of p is ad-semisimple, so the result is toral; all maximal
    abelian subspaces of d cap p share one dimension, which makes the greedy
    extension exact.
    """
    g = d.ambient
    dp = _intersect_eigenspace(d, theta, Fraction(-1))
    v = Subspace(g, [])
    while True:
        c = centralizer(dp, v)
        if c.dim == v.dim:
            return v
        for b in c.basis:
            if not v.contains(list(b)):
                v = Subspace(g, [list(r) for r in v.basis] + [list(b)])
                break


def real_rank(a: Subspace, theta: LinearMap) -> int:
    """Noncompact dimension of a maximally noncompact Cartan subalgebra of a."""
    _require_theta_stable(a, theta)
    d = derived_subalgebra(a)
    z = centralizer(a, a)
    _, z_p = toral_split(z, theta)
    return _maximal_abelian_in_p(d, theta).dim + z_p.dim


def maximally_noncompact_csa(a: Subspace, theta: LinearMap) -> Subspace:
    """A theta-stable Cartan subalgebra of a of maximal noncompact dimension.

    Built as (maximal abelian subspace of [a,a] cap p) + centre, extended by
    a maximal toral subalgebra of the compact part of its centralizer.
    """
    _require_theta_stable(a, theta)
    g = a.ambient
    d = derived_subalgebra(a)
    ap = _maximal_abelian_in_p(d, theta)
    z = centralizer(a, a)
    seed = Subspace(g, [list(r) for r in ap.basis] + [list(r) for r in z.basis])
    c = centralizer(a, seed) if seed.dim else a
    t = maximal_toral(_intersect_eigenspace(c, theta, Fraction(1)))
    h = Subspace(g, [list(r) for r in seed.basis] + [list(r) for r in t.basis])
    assert (centralizer(a, h) if h.dim else a).dim == h.dim
    return h


# ---------------------------------------------------------------------------
# Adapted root data for a theta-stable Cartan subalgebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Chevalley data adapted to a theta-stable Cartan subalgebra.

    Entry a (an ambient root-system index) holds the root functional as its
    values on the echelon basis of h, a root vector x_a of the
    complexification normalized by [x_a, x_{-a}] = h_a, the coroot h_a, and
    the action scalars theta(x_a) = mu_a x_{theta_perm[a]} and
    sigma(x_a) = s_a x_{sigma_perm[a]}.
    """

    h: Subspace
    functionals: tuple
    vectors: tuple
    coroots: tuple
    theta_perm: tuple
    mu: tuple
    sigma_perm: tuple
    s: tuple


@dataclass(frozen=True, eq=False)
class CartanSubalgebraRecord:
    """A theta-stable Cartan subalgebra with its classification data.

    root_classification is the triple of index sets (real, imaginary,
    compact imaginary); strongly_orthogonal_set lists the roots whose
    iterated Cayley transforms produced h from the split Cartan subalgebra
    (ambient-system indices when produced by the enumeration).
    """

    ctx: SplitAlgebra
    h: Subspace
    noncompact_dim: int
    root_classification: tuple
    strongly_orthogonal_set: tuple
    datum: RootDatum

    @property
    def real_roots(self):
        return self.root_classification[0]

    @property
    def imaginary_roots(self):
        return self.root_classification[1]

    @property
    def compact_imaginary_roots(self):
        return self.root_classification[2]

    def real_type(self) -> str:
        return subsystem_type(self.ctx.rs, self.real_roots)

    def imaginary_type(self) -> str:
        return subsystem_type(self.ctx.rs, self.imaginary_roots)

    def compact_imaginary_type(self) -> str:
        return subsystem_type(self.ctx.rs, self.compact_imaginary_roots)


def _gaussian_parts(c):
    if isinstance(c, GaussianRational):
        return c.re, c.im
    return Fraction(c), Fraction(0)


def _gaussian_roots(f):
    """Roots in Q(i) of a monic polynomial (coefficients lowest-first), or
    None when an irreducible factor of higher degree remains."""
    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for k, c in enumerate(f):
        re, im = _gaussian_parts(c)
        expr += (sympy.Rational(re.numerator, re.denominator)
                 + sympy.Rational(im.numerator, im.denominator) * sympy.I) * x**k
    roots = []
    for fac, _ in sympy.Poly(expr, x, domain="QQ_I").factor_list()[1]:
        if fac.degree() != 1:
            return None
        lead, const = fac.all_coeffs()
        re, im = (-const / lead).as_real_imag()
        re, im = Fraction(re.p, re.q), Fraction(im.p, im.q)
        roots.append(GaussianRational(re, im) if im else re)
    return roots


def _express(red, piv, v):
    """Coefficients of v over reduced rows red (raises if v is outside)."""
    w = list(v)
    out = []
    for i, pc in enumerate(piv):
        c = w[pc]
        out.append(c)
        if c:
            ri = red[i]
            w = [a - c * b for a, b in zip(w, ri)]
    assert not any(w)
    return out


def _eigensplit_matrix(mat):
    """Eigenvalues with eigenvector coefficient bases of a semisimple exact
    matrix whose spectrum lies in Q(i)."""
    m = len(mat)
    if m == 1:
        return [(mat[0][0], [[Fraction(1)]])]
    evs = _gaussian_roots(minimal_polynomial(mat))
    if evs is None:
        raise ArithmeticError("matrix eigenvalue outside Q(i)")
    out = []
    total = 0
    for ev in evs:
        rows = [[mat[i][j] - (ev if i == j else 0) for j in range(m)]
                for i in range(m)]
        kb = kernel_basis(rows, m)
        out.append((ev, kb))
        total += len(kb)
    assert total == m
    return out


def _lincomb(coeffs, rows, n):
    out = [Fraction(0)] * n
    for c, row in zip(coeffs, rows):
        if c:
            for k, x in enumerate(row):
                if x:
                    out[k] = out[k] + c * x
    return out


def simultaneous_eigenspaces(gc: LieAlgebra, vectors, csa_vectors):
    """Common refinement of the ad-eigenspace decompositions of commuting
    semisimple elements, starting from the span of `vectors`.

    Returns (weight tuple, basis vectors) pairs; the weight tuple lists the
    ad-eigenvalues for the given elements in order. All eigenvalues must lie
    in Q(i).
    """
    n = gc.dim
    blocks = [((), [list(v) for v in vectors])]
    for t in csa_vectors:
        ad_t = gc.ad(list(t))
        refined = []
        for wt, vecs in blocks:
            red, piv = rref(vecs, n)
            m = len(red)
            cols = [_express(red, piv, matvec(ad_t, list(v))) for v in red]
            mat = [[cols[j][i] for j in range(m)] for i in range(m)]
            for ev, kvecs in _eigensplit_matrix(mat):
                refined.append((wt + (ev,), [_lincomb(kv, red, n) for kv in kvecs]))
        blocks = refined
    return blocks


def _weight_spaces(ctx: SplitAlgebra, h: Subspace):
    """Simultaneous ad-eigenspaces of the complexification for the echelon
    basis of h: a list of (weight tuple, vector); all nonzero weight spaces
    must be one-dimensional and the zero space must be h itself."""
    gc = ctx.gc
    n = gc.dim
    basis = [gc.basis_vector(j) for j in range(n)]
    zero = tuple([Fraction(0)] * h.dim)
    out = []
    for wt, vecs in simultaneous_eigenspaces(gc, basis, h.basis):
        if wt == zero:
            zred, _ = rref(vecs, n)
            assert [list(r) for r in zred] == [list(r) for r in h.basis]
            continue
        assert len(vecs) == 1
        out.append((wt, vecs[0]))
    return out


def _positivity_scale(weights):
    """A deterministic integer scale making Sum re_j t^2j + im_j t^(2j+1)
    nonzero on every weight."""
    t = 2
    while True:
        ok = True
        for wt in weights:
            v = Fraction(0)
            for j, c in enumerate(wt):
                re, im = _gaussian_parts(c)
                v += re * t ** (2 * j) + im * t ** (2 * j + 1)
            if not v:
                ok = False
                break
        if ok:
            return t
        t += 1


def _height_value(wt, t):
    v = Fraction(0)
    for j, c in enumerate(wt):
        re, im = _gaussian_parts(c)
        v += re * t ** (2 * j) + im * t ** (2 * j + 1)
    return v


def _cartan_isomorphism(c_from, c_to):
    """A permutation p with c_from[i][j] == c_to[p[i]][p[j]], by backtracking."""
    l = len(c_from)
    perm = [None] * l
    used = [False] * l

    def place(i):
        if i == l:
            return True
        for j in range(l):
            if used[j]:
                continue
            if any(c_from[i][k] != c_to[j][perm[k]]
                   or c_from[k][i] != c_to[perm[k]][j] for k in range(i)):
                continue
            perm[i] = j
            used[j] = True
            if place(i + 1):
                return True
            used[j] = False
            perm[i] = None
        return False

    assert place(0), "weight system does not match the ambient root system"
    return perm


def _build_datum(ctx: SplitAlgebra, h: Subspace) -> RootDatum:
    """Adapted root datum of a theta-stable Cartan subalgebra, by exact
    simultaneous eigenspace splitting over Q(i)."""
    rs, gc = ctx.rs, ctx.gc
    l = rs.rank
    assert h.dim == l
    spaces = _weight_spaces(ctx, h)
    assert len(spaces) == rs.nroots

    hred = [list(r) for r in h.basis]
    hpiv = list(h.pivots)
    by_weight = {wt: i for i, (wt, _) in enumerate(spaces)}
    raw_coroot = {}
    coroot_coords = {}
    for wt, v in spaces:
        neg_wt = tuple(-x for x in wt)
        u = spaces[by_weight[neg_wt]][1]
        cand = gc.bracket(v, u)
        coords = _express(hred, hpiv, cand)
        val = sum((c * w for c, w in zip(coords, wt)), Fraction(0))
        assert val
        raw_coroot[wt] = [2 / val * x for x in cand]
        coroot_coords[wt] = [2 / val * x for x in coords]

    def pairing(wt_a, wt_b):
        n = sum((c * w for c, w in zip(coroot_coords[wt_b], wt_a)), Fraction(0))
        re, im = _gaussian_parts(n)
        assert im == 0 and re.denominator == 1
        return int(re)

    weights = [wt for wt, _ in spaces]
    t = _positivity_scale(weights)
    pos = [wt for wt in weights if _height_value(wt, t) > 0]
    assert len(pos) == rs.npos
    sums = {tuple(a + b for a, b in zip(x, y)) for x in pos for y in pos}
    simples = sorted((wt for wt in pos if wt not in sums),
                     key=lambda w: tuple(_gaussian_parts(c) for c in w))
    assert len(simples) == l
    cmat = [[pairing(a, b) for b in simples] for a in simples]
    perm = _cartan_isomorphism(cmat, rs.cartan)

    # coefficients over the simple functionals identify each weight
    srows = [[simples[i][j] for i in range(l)] for j in range(l)]
    abstract_index = {}
    for wt in weights:
        coeffs = solve_linear(srows, list(wt))
        tup = [0] * l
        for i, c in enumerate(coeffs):
            re, im = _gaussian_parts(c)
            assert im == 0 and re.denominator == 1
            tup[perm[i]] = int(re)
        idx = rs.index_or_none(tuple(tup))
        assert idx is not None
        abstract_index[wt] = idx
    assert sorted(abstract_index.values()) == list(range(rs.nroots))

    vectors = [None] * rs.nroots
    functionals = [None] * rs.nroots
    coroots = [None] * rs.nroots
    for wt, v in spaces:
        functionals[abstract_index[wt]] = tuple(wt)
    for wt, v in spaces:
        a = abstract_index[wt]
        if not rs.is_positive(a):
            continue
        na = rs.neg(a)
        neg_wt = tuple(-x for x in wt)
        u = spaces[by_weight[neg_wt]][1]
        cand = gc.bracket(v, u)
        coords = _express(hred, hpiv, cand)
        val = sum((c * w for c, w in zip(coords, wt)), Fraction(0))
        vectors[a] = tuple(v)
        vectors[na] = tuple(2 / val * x for x in u)
        coroots[a] = tuple(raw_coroot[wt])
        coroots[na] = tuple(-x for x in raw_coroot[wt])

    theta_perm, mu = _action_scalars(ctx, vectors, ctx.theta.apply)
    sigma_perm, s = _action_scalars(ctx, vectors, ctx.sigma.apply)
    for a in range(rs.nroots):
        assert mu[a] * mu[theta_perm[a]] == 1
        assert s[a] * conj(s[sigma_perm[a]]) == 1
    return RootDatum(h, tuple(functionals), tuple(vectors), tuple(coroots),
                     tuple(theta_perm), tuple(mu), tuple(sigma_perm), tuple(s))


def _action_scalars(ctx, vectors, apply_map):
    """Permutation and scalars of an involution permuting the root vectors."""
    nroots = ctx.rs.nroots
    perm = [None] * nroots
    scal = [None] * nroots
    for a in range(nroots):
        img = apply_map(list(vectors[a]))
        k0 = next(k for k, x in enumerate(img) if x)
        for b in range(nroots):
            vb = vectors[b]
            if not vb[k0]:
                continue
            coeff = img[k0] / vb[k0]
            if all(x == coeff * y for x, y in zip(img, vb)):
                perm[a] = b
                scal[a] = coeff
                break
        assert perm[a] is not None
    return perm, scal


def _classify(rs: RootSystem, datum: RootDatum):
    real, imaginary, compact = [], [], []
    for a in range(rs.nroots):
        if datum.theta_perm[a] == rs.neg(a):
            real.append(a)
        elif datum.theta_perm[a] == a:
            imaginary.append(a)
            if datum.mu[a] == 1:
                compact.append(a)
    return (tuple(real), tuple(imaginary), tuple(compact))


def build_csa_record(ctx: SplitAlgebra, h: Subspace,
                     strongly_orthogonal=()) -> CartanSubalgebraRecord:
    """Record for a theta-stable Cartan subalgebra given as a subspace."""
    datum = _build_datum(ctx, h)
    _, h_p = toral_split(h, ctx.theta)
    return CartanSubalgebraRecord(ctx, h, h_p.dim, _classify(ctx.rs, datum),
                                  tuple(strongly_orthogonal), datum)


@lru_cache(maxsize=None)
def split_csa_record(ctx: SplitAlgebra) -> CartanSubalgebraRecord:
    """The split Cartan subalgebra with its (trivial) adapted datum."""
    rs, g, gc = ctx.rs, ctx.g, ctx.gc
    l = rs.rank
    h = Subspace(g, [g.basis_vector(i) for i in range(l)])
    functionals = []
    vectors = []
    coroots = []
    for a in range(rs.nroots):
        beta = rs.roots[a]
        functionals.append(tuple(
            Fraction(sum(c * rs.cartan[k][i] for k, c in enumerate(beta)))
            for i in range(l)))
        vectors.append(tuple(gc.basis_vector(l + a)))
        cr = _coroot(rs, a)
        coroots.append(tuple([Fraction(x) for x in cr] + [Fraction(0)] * rs.nroots))
    datum = RootDatum(
        h, tuple(functionals), tuple(vectors), tuple(coroots),
        tuple(rs.neg(a) for a in range(rs.nroots)),
        tuple(Fraction(-1) for _ in range(rs.nroots)),
        tuple(range(rs.nroots)),
        tuple(Fraction(1) for _ in range(rs.nroots)))
    return CartanSubalgebraRecord(ctx, h, l, _classify(rs, datum), (), datum)


# ---------------------------------------------------------------------------
# Cayley transforms
# ---------------------------------------------------------------------------


def cayley_transform(record: CartanSubalgebraRecord, beta: int) -> CartanSubalgebraRecord:
    """Cayley transform of a theta-stable Cartan subalgebra along a real root.

    Replaces the noncompact direction dual to beta by the compact direction
    x_beta - x_{-beta} (after rescaling the root pair so that
    theta(x_beta) = -x_{-beta} and the new generator is fixed by the real
    structure); the noncompact dimension drops by exactly one.
    """
    ctx = record.ctx
    rs = ctx.rs
    datum = record.datum
    if beta not in record.real_roots:
        raise NotRealRoot("Cayley transform needs a real root")
    nb = rs.neg(beta)
    c = nth_root(-1 / _lift(datum.mu[beta]), 2)
    if c is None:
        raise ArithmeticError("Cayley rescaling has no square root in Q(i)")
    if conj(c) * datum.s[beta] != c:
        raise ArithmeticError("Cayley rescaling is incompatible with the real form")
    cinv = c.inverse()
    u = [c * x - cinv * y for x, y in zip(datum.vectors[beta], datum.vectors[nb])]
    assert all(is_rational_scalar(x) for x in u)
    u = [real_part(x) for x in u]

    wt = datum.functionals[beta]
    row = []
    for v in wt:
        re, im = _gaussian_parts(v)
        assert im == 0
        row.append(re)
    hvecs = [_lincomb(kv, [list(r) for r in record.h.basis], ctx.g.dim)
             for kv in kernel_basis([row], len(row))]
    h2 = Subspace(ctx.g, hvecs + [u])
    assert h2.dim == rs.rank
    out = build_csa_record(ctx, h2, record.strongly_orthogonal_set + (beta,))
    assert out.noncompact_dim == record.noncompact_dim - 1
    return out


def _lift(x):
    return x if isinstance(x, GaussianRational) else GaussianRational(x)


# ---------------------------------------------------------------------------
# Enumeration up to conjugacy
# ---------------------------------------------------------------------------


def _strongly_orthogonal(rs: RootSystem, a, b):
    return rs.sum_index(a, b) is None and rs.sum_index(a, rs.neg(b)) is None


def _set_orbit(rs: RootSystem, key, gens):
    """Weyl orbit of an unordered set of root pairs {beta, -beta}."""
    seen = {key}
    frontier = [key]
    while frontier:
        k = frontier.pop()
        for gp in gens:
            img = frozenset(min(gp[b], rs.neg(gp[b])) for b in k)
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    return seen


def _transform_along(record: CartanSubalgebraRecord, gamma: int):
    """Cayley transform driven by an ambient root index whose original
    Chevalley vector is still a weight vector of the record's Cartan
    subalgebra (automatic along strongly orthogonal chains)."""
    ctx = record.ctx
    rs = ctx.rs
    xg = ctx.gc.basis_vector(rs.rank + gamma)
    k0 = rs.rank + gamma
    wt = []
    for tvec in record.h.basis:
        img = ctx.gc.bracket(list(tvec), xg)
        coeff = img[k0]
        assert all(x == coeff * y for x, y in zip(img, xg))
        wt.append(coeff)
    wt = tuple(wt)
    a = next(i for i, f in enumerate(record.datum.functionals) if f == wt)
    out = cayley_transform(record, a)
    return replace(out, strongly_orthogonal_set=record.strongly_orthogonal_set + (gamma,))


def enumerate_theta_stable_csas(ctx: SplitAlgebra, root_subset=None):
    """Theta-stable Cartan subalgebras up to conjugacy, as records.

    Iterated Cayley transforms of the split Cartan subalgebra along strongly
    orthogonal root sets, one per Weyl orbit; with root_subset (a closed
    symmetric set of root indices, e.g. the grade-zero part of a grading)
    the transforms and the conjugacy are restricted to that subsystem.
    """
    subset = None if root_subset is None else tuple(sorted(root_subset))
    return list(_enumerate_cached(ctx, subset))


@lru_cache(maxsize=None)
def _enumerate_cached(ctx: SplitAlgebra, subset):
    rs = ctx.rs
    if subset is None:
        pos = list(range(rs.npos))
        gens = [rs.simple_reflection(k) for k in range(rs.rank)]
    else:
        assert set(subset) == close_subsystem(rs, subset), \
            "root subset must be closed and symmetric"
        pos = [a for a in subset if rs.is_positive(a)]
        gens = [rs.reflection(b) for b in subsystem_base(rs, subset)]
    start = split_csa_record(ctx)
    records = [start]
    seen = {frozenset(): 0}
    queue = [((), start)]
    while queue:
        so, rec = queue.pop(0)
        for gamma in pos:
            if any(not _strongly_orthogonal(rs, gamma, b) for b in so):
                continue
            key = frozenset({min(b, rs.neg(b)) for b in so} | {min(gamma, rs.neg(gamma))})
            if key in seen:
                continue
            cid = len(records)
            for k in _set_orbit(rs, key, gens):
                seen[k] = cid
            rec2 = _transform_along(rec, gamma)
            records.append(rec2)
            queue.append((so + (gamma,), rec2))
    return tuple(records)
