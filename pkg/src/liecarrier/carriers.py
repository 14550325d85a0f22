"""Carrier subalgebras of graded real semisimple Lie algebras.

A carrier of a Z- or Z_m-graded semisimple algebra g is a graded semisimple
subalgebra c that is regular (normalized by a Cartan subalgebra h0 of the
degree-zero part), locally flat (dim c_0 = dim c_1), and complete (not a
proper graded subalgebra of a regular reductive graded subalgebra of the
same rank).  It is principal when c_0 is a torus.  Carriers organize the
nonzero nilpotent orbits of the degree-one part: every such nilpotent lies
in general position inside the degree-one part of a carrier, conjugate
nilpotents have conjugate carriers, and over the complex numbers the
correspondence between carrier classes and nilpotent orbits is a bijection.

The constructions revolve around g(t, lambda), the sum over integers k of
{x in g_(k mod m) : [u, x] = k*lambda(u)*x for all u in t} for a toral
subalgebra t of g_0 and a rational form lambda on t.  A graded sl2-triple
(h, e, f) through a nilpotent e, together with a maximally noncompact
Cartan subalgebra h_z of the centralizer of the triple in g_0, produces the
carrier of e as the derived subalgebra of g(t, lambda) with t spanned by h
and h_z, lambda(h) = 2 and lambda vanishing on h_z.  Completeness of an
arbitrary candidate is decided by the same reconstruction: a regular graded
semisimple subalgebra equals the derived subalgebra built from its own
defining element and a Cartan subalgebra of its degree-zero centralizer
exactly when it is complete.

Whether a carrier c is the carrier of a concrete nilpotent e in general
position in c_1 comes down to a real-rank comparison: it is precisely when
a maximally noncompact Cartan subalgebra of the centralizer of c in g_0
stays maximally noncompact inside the centralizer of the triple of e.  The
real ranks involved are computed without a global Cartan involution, from
the classification of the derived ideal (a table of real forms keyed by
Killing signatures) and the ambient trace form on the centre.

Complex carrier classes are enumerated through root combinatorics.  A
carrier is generated by its components of degrees 0 and +-1, so it has a
simple system B0 u B1 of pairwise obtuse, linearly independent ambient
roots with B0 of intrinsic degree 0 and B1 of degree 1.  Conjugating by the
degree-zero Weyl group W0 moves B0 onto a fixed base of one representative
per W0-class of closed subsystems of the degree-zero root system, so the
search runs over those bases extended by obtuse independent sets of
degree-one roots, pruned through the additive closure of the chosen roots.
Survivors of the locally-flat count and the full carrier test are
deduplicated by W0-orbits of weight systems.  Real carriers then fall out
of the strongly regular subalgebra classification, run for every
theta-stable Cartan class and every complex class.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import kernel_basis, rref, in_row_space, reduce_against, solve_linear, symmetric_signature
from .grading import GradedAlgebra, NoSolution, defining_element, homogeneous_sl2
from .liecore import (
    Subspace,
    _coroot,
    _rational_roots,
    centralizer,
    derived_subalgebra,
    is_subalgebra,
    is_toral,
    killing_form,
    maximal_toral,
    minimal_polynomial,
    real_form_fingerprint,
    real_form_name,
)
from .realstruct import CartanSubalgebraRecord, maximally_noncompact_csa
from .regsub import (
    GradedWeightSet,
    _graded_weyl,
    _record_degrees,
    graded_cartan_classes,
    strongly_regular_subalgebras,
    weight_set,
    weight_sets_equivalent,
)
from .rootdata import (
    WeylGroup,
    _component_split,
    close_subsystem,
    highest_root_index,
    subsystem_base,
    subsystem_type,
)


class NotGeneralPosition(ValueError):
    """The element is not in general position: [c_0, e] != c_1."""


# ---------------------------------------------------------------------------
# Real ranks without a Cartan involution
# ---------------------------------------------------------------------------

# (complexified type, realness class, Killing signature) -> real rank, on the
# same key set as the real-form name table of liecore.  Isomorphic forms
# reached through several constructions must agree, which _put asserts.
_REAL_RANKS = {}


def _install_real_ranks():
    def put(ctype, realness, sig, rr):
        key = (ctype, realness, sig)
        prev = _REAL_RANKS.get(key)
        assert prev is None or prev == rr, key
        _REAL_RANKS[key] = rr

    # sp(2n, R): k = u(n), real rank n
    for n in range(2, 5):
        dim = n * (2 * n + 1)
        k = n * n
        typ = f"C{n}" if n >= 3 else "B2"
        put(typ, "real", (dim - k, k, 0), n)
    # sp(p, q): k = sp(p) + sp(q), real rank min(p, q)
    for n in range(2, 5):
        dim = n * (2 * n + 1)
        for p in range(0, n // 2 + 1):
            q = n - p
            k = p * (2 * p + 1) + q * (2 * q + 1)
            typ = f"C{n}" if n >= 3 else "B2"
            put(typ, "real", (dim - k, k, 0), min(p, q))
    # so*(2n): k = u(n), real rank floor(n/2)
    for n in range(3, 9):
        dim = n * (2 * n - 1)
        k = n * n
        typ = f"D{n}" if n > 3 else "A3"
        put(typ, "real", (dim - k, k, 0), n // 2)
    # su(p, q): k = s(u(p) + u(q)), real rank min(p, q)
    for n in range(2, 9):
        for p in range(0, n // 2 + 1):
            q = n - p
            k = p * p + q * q - 1
            put(f"A{n-1}", "real", (2 * p * q, k, 0), min(p, q))
    # so(p, q): real rank min(p, q)
    for total in range(5, 17):
        n = total // 2
        fam = "D" if total % 2 == 0 else "B"
        if fam == "D" and n < 3:
            continue
        dim = total * (total - 1) // 2
        for p in range(0, total // 2 + 1):
            q = total - p
            k = p * (p - 1) // 2 + q * (q - 1) // 2
            typ = f"{fam}{n}"
            if (fam, n) == ("D", 3):
                typ = "A3"
            put(typ, "real", (dim - k, k, 0), min(p, q))
    # sl(m, H): k = sp(m), real rank m - 1
    for m in range(1, 5):
        n = 2 * m
        dim = n * n - 1
        k = m * (2 * m + 1)
        put(f"A{n-1}", "real", (dim - k, k, 0), m - 1)
    # sl(n, R): k = so(n), real rank n - 1
    for n in range(2, 9):
        dim = n * n - 1
        k = n * (n - 1) // 2
        put(f"A{n-1}", "real", (dim - k, k, 0), n - 1)
    # complex simple viewed as real: real rank = complex rank
    from .liecore import _CHEVALLEY_DIMS

    for (fam, rk), d in _CHEVALLEY_DIMS.items():
        cf, cr = fam, rk
        if (cf, cr) == ("D", 3):
            cf, cr = "A", 3
        if (cf, cr) == ("C", 2):
            cf, cr = "B", 2
        put(f"2{cf}{cr}", "complex", (d, d, 0), rk)
    # exceptional real forms
    put("G2", "real", (8, 6, 0), 2)
    put("G2", "real", (0, 14, 0), 0)
    put("F4", "real", (28, 24, 0), 4)
    put("F4", "real", (16, 36, 0), 1)
    put("F4", "real", (0, 52, 0), 0)
    put("E6", "real", (42, 36, 0), 6)
    put("E6", "real", (40, 38, 0), 4)
    put("E6", "real", (32, 46, 0), 2)
    put("E6", "real", (26, 52, 0), 2)
    put("E6", "real", (0, 78, 0), 0)
    put("E7", "real", (70, 63, 0), 7)
    put("E7", "real", (64, 69, 0), 4)
    put("E7", "real", (54, 79, 0), 3)
    put("E7", "real", (0, 133, 0), 0)
    put("E8", "real", (128, 120, 0), 8)
    put("E8", "real", (112, 136, 0), 4)
    put("E8", "real", (0, 248, 0), 0)


_install_real_ranks()


def real_rank_of_fingerprint(fingerprint) -> int:
    """Real rank of a semisimple algebra from its per-ideal fingerprint."""
    total = 0
    for ideal_fp in fingerprint:
        rr = _REAL_RANKS.get(ideal_fp)
        if rr is None:
            raise KeyError(f"real rank not tabulated for the form {ideal_fp}")
        total += rr
    return total


def _trace_gram(sub: Subspace):
    """Gram matrix of the ambient trace form tr(ad x ad y) on the basis."""
    g = sub.ambient
    mats = [g.ad(list(v)) for v in sub.basis]
    n = g.dim
    sparse = []
    for m in mats:
        rows = []
        for r in range(n):
            row = m[r]
            rows.append([(c, x) for c, x in enumerate(row) if x])
        sparse.append(rows)
    gram = [[Fraction(0)] * sub.dim for _ in range(sub.dim)]
    for i in range(sub.dim):
        mi = mats[i]
        for j in range(i, sub.dim):
            sj = sparse[j]
            tr = Fraction(0)
            for r in range(n):
                for c, x in sj[r]:
                    y = mi[c][r]
                    if y:
                        tr += x * y
            gram[i][j] = gram[j][i] = tr
    return gram


def toral_noncompact_dim(t: Subspace) -> int:
    """Noncompact dimension of a toral subalgebra closed under real and
    imaginary parts.

    On such a subalgebra the ambient trace form is positive definite on the
    split part, negative definite on the compact part, and the two parts
    are orthogonal, so the noncompact dimension is the positive index.
    """
    if t.dim == 0:
        return 0
    pos, neg, zero = symmetric_signature(_trace_gram(t))
    assert zero == 0, "trace form degenerate on a toral subalgebra"
    return pos


def real_rank_reductive(z: Subspace) -> int:
    """Real rank of a subalgebra that is reductive in the ambient algebra.

    No Cartan involution is needed: the derived ideal is looked up in the
    real-form table through its Killing-signature fingerprint, the centre
    contributes the positive index of the ambient trace form.
    """
    if z.dim == 0:
        return 0
    cen = centralizer(z, z)
    d = derived_subalgebra(z)
    total = toral_noncompact_dim(cen)
    if d.dim:
        total += real_rank_of_fingerprint(real_form_fingerprint(d))
    return total


def _csa_noncompact_dim(z: Subspace, h: Subspace) -> int:
    """Noncompact dimension of the derived part of a Cartan subalgebra h of
    a reductive subalgebra z: the positive index of z's own Killing form on
    h.  The centre of z lies in every Cartan subalgebra and contributes
    zeros, so only h intersected with the derived ideal is measured; the
    count is conjugation-invariant and needs no Cartan involution.
    """
    if h.dim == 0:
        return 0
    gram = killing_form(z)
    n = z.dim
    coords = []
    for v in h.basis:
        c = z.coords(list(v))
        assert c is not None, "h is not contained in z"
        coords.append(c)
    sub = []
    for ci in coords:
        row = []
        for cj in coords:
            tot = Fraction(0)
            for r in range(n):
                if ci[r]:
                    gr = gram[r]
                    tot += ci[r] * sum(gr[t] * cj[t] for t in range(n) if cj[t])
            row.append(tot)
        sub.append(row)
    pos, neg, zero = symmetric_signature(sub)
    return pos


# ---------------------------------------------------------------------------
# g(t, lambda)
# ---------------------------------------------------------------------------


def _restricted_ad(g, u, comp: Subspace):
    """Matrix of ad(u) on a component it stabilizes, in component coordinates."""
    cols = []
    for b in comp.basis:
        w = g.bracket(u, list(b))
        c = comp.coords(w)
        assert c is not None, "the element does not stabilize the component"
        cols.append(c)
    return [[cols[j][i] for j in range(comp.dim)] for i in range(comp.dim)]


def _eigen_membership(g, comp: Subspace, conditions) -> Subspace:
    """{x in comp : [u, x] = s*x for every (u, s) in conditions}."""
    if comp.dim == 0 or not conditions:
        return comp
    rows = []
    for u, s in conditions:
        mat = _restricted_ad(g, u, comp)
        for r in range(comp.dim):
            row = list(mat[r])
            row[r] = row[r] - s
            rows.append(row)
    vecs = []
    for coeffs in kernel_basis(rows, comp.dim):
        v = g.zero()
        for c, b in zip(coeffs, comp.basis):
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        vecs.append(v)
    return Subspace(g, vecs)


def g_t_lambda(ga: GradedAlgebra, t: Subspace, lam) -> dict:
    """The graded subalgebra g(t, lambda) as a map {degree k: subspace}.

    ``lam`` lists the rational values of a linear form on ``t.basis``.  The
    degree-k part collects the x in the ambient component of degree k mod m
    with [u, x] = k*lambda(u)*x for all u in t.  For a nonzero form the
    occurring integers k are read off from the eigenvalues of a basis
    element on which the form does not vanish; the zero form contributes
    the centralizer of t in every ambient component, indexed by the ambient
    degree.  Only nonzero parts are reported.
    """
    g = ga.g
    lam = [Fraction(x) for x in lam]
    assert len(lam) == t.dim, "one value per basis vector is required"
    out = {}
    if not any(lam):
        for j in ga.degrees():
            comp = ga.component(j)
            piece = _eigen_membership(
                g, comp, [(list(u), Fraction(0)) for u in t.basis])
            if piece.dim:
                out[j] = piece
        return out
    star = next(i for i, x in enumerate(lam) if x)
    ustar = list(t.basis[star])
    for j in ga.degrees():
        comp = ga.component(j)
        if comp.dim == 0:
            continue
        minp = minimal_polynomial(_restricted_ad(g, ustar, comp))
        for ev in _rational_roots(minp):
            k = ev / lam[star]
            if k.denominator != 1:
                continue
            k = int(k)
            if (k != j) if ga.m is None else (k % ga.m != j):
                continue
            piece = _eigen_membership(
                g, comp,
                [(list(u), k * lv) for u, lv in zip(t.basis, lam)])
            if piece.dim:
                assert k not in out
                out[k] = piece
    return out


def _derived_components(g, comps: dict) -> dict:
    """Components of the derived subalgebra of a graded reductive
    subalgebra on which some degree-zero element acts by a nonzero multiple
    of the degree.

    Every nonzero degree then lies in the image of that element's adjoint
    action, hence in the derived subalgebra; only the degree-zero part
    shrinks, to the span of the brackets landing in degree zero.
    """
    out = {k: sk for k, sk in comps.items() if k != 0 and sk.dim}
    n = g.dim
    red, piv = [], []
    batch = []

    def flush():
        nonlocal red, piv, batch
        if batch:
            red, piv = rref(red + batch, n)
            batch = []

    def feed(v):
        nonlocal batch
        if any(v):
            batch.append(list(v))
            if len(batch) >= 96:
                flush()

    pairs = []
    for k in comps:
        if k > 0 and -k in comps:
            pairs.append((k, -k))
    if 0 in comps:
        pairs.append((0, 0))
    for i, j in pairs:
        si, sj = comps[i], comps[j]
        for a in range(si.dim):
            va = list(si.basis[a])
            start = a + 1 if i == j else 0
            for b in range(start, sj.dim):
                feed(g.bracket(va, list(sj.basis[b])))
    flush()
    if red:
        out[0] = Subspace(g, [list(r) for r in red])
    return out


def _intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.dim == 0 or b.dim == 0:
        return Subspace(a.ambient, [])
    n = len(a.basis[0])
    rows = [[(a.basis[i][r] if i < a.dim else -b.basis[i - a.dim][r])
             for i in range(a.dim + b.dim)] for r in range(n)]
    vecs = []
    for coeffs in kernel_basis(rows, a.dim + b.dim):
        v = a.ambient.zero()
        for c, row in zip(coeffs[:a.dim], a.basis):
            if c:
                v = [x + c * y for x, y in zip(v, row)]
        vecs.append(v)
    return Subspace(a.ambient, vecs)


def _form_on_echelon(t: Subspace, gens, values):
    """Values of the form on t's echelon basis, given values on spanning
    vectors (which must be independent)."""
    assert t.dim == len(gens), "spanning vectors are dependent"
    n = len(gens[0])
    rows = [[gen[r] for gen in gens] for r in range(n)]
    out = []
    for v in t.basis:
        coeffs = solve_linear(rows, list(v))
        assert coeffs is not None
        out.append(sum((c * val for c, val in zip(coeffs, values)),
                       Fraction(0)))
    return out


# ---------------------------------------------------------------------------
# The carrier test and the carrier of a nilpotent element
# ---------------------------------------------------------------------------


def _split_csa(ga: GradedAlgebra) -> Subspace:
    g = ga.g
    return Subspace(g, [g.basis_vector(i) for i in range(ga.ctx.rs.rank)])


def _resolve_csa(ga, h) -> Subspace:
    if h is None:
        return _split_csa(ga)
    if isinstance(h, CartanSubalgebraRecord):
        return h.h
    return h


def _carrier_test(ga: GradedAlgebra, comps: dict, h0: Subspace):
    """(flag, defining element) for the carrier axioms of a graded candidate.

    Checks regularity (h0 normalizes every component), local flatness, the
    existence of the defining element, bracket closure, and completeness by
    reconstruction: the candidate must equal the derived subalgebra of
    g(t, lambda) for t spanned by twice the defining element and a Cartan
    subalgebra of the degree-zero centralizer, with lambda = 2 on the
    doubled defining element and zero on the rest.
    """
    g = ga.g
    comps = {int(k): sk for k, sk in comps.items() if sk.dim}
    if not comps:
        return False, None
    for k, sk in comps.items():
        for u in h0.basis:
            for v in sk.basis:
                if not sk.contains(g.bracket(list(u), list(v))):
                    return False, None
    dim0 = comps[0].dim if 0 in comps else 0
    dim1 = comps[1].dim if 1 in comps else 0
    if dim0 != dim1:
        return False, None
    try:
        y = defining_element(comps)
    except NoSolution:
        return False, None
    s = Subspace(g, [list(v) for sk in comps.values() for v in sk.basis])
    if not is_subalgebra(s):
        return False, None
    z = centralizer(ga.component(0), s)
    if z.dim:
        seed = _intersect(z, h0)
        hz = maximal_toral(z, seed if seed.dim else None)
    else:
        hz = Subspace(g, [])
    h2 = [2 * x for x in y]
    gens = [h2] + [list(v) for v in hz.basis]
    t = Subspace(g, gens)
    lam = _form_on_echelon(t, gens, [Fraction(2)] + [Fraction(0)] * hz.dim)
    der = _derived_components(g, g_t_lambda(ga, t, lam))
    if set(der) != set(comps):
        return False, None
    for k in der:
        if der[k] != comps[k]:
            return False, None
    return True, y


def is_carrier(ga: GradedAlgebra, components, h=None) -> bool:
    """Whether a graded subalgebra, presented by its integer-degree
    components, is a carrier: regular for the Cartan subalgebra h (the
    split one by default), locally flat, and complete."""
    comps = dict(components)
    ok, _ = _carrier_test(ga, comps, _resolve_csa(ga, h))
    return ok


def _theta_stable(sub: Subspace, theta) -> bool:
    return all(sub.contains(theta.apply(list(v))) for v in sub.basis)


def _noncompact_csa_of(ga: GradedAlgebra, z: Subspace) -> Subspace:
    """A maximally noncompact Cartan subalgebra of a reductive degree-zero
    centralizer.

    Centralizers stable under the Cartan involution go through the exact
    involution-based construction.  Otherwise a greedily grown Cartan
    subalgebra is accepted only when its noncompact dimension provably
    meets the real rank of the derived ideal, which certifies maximal
    noncompactness; failing that certificate is a hard error rather than a
    silent wrong answer.
    """
    g = z.ambient
    if z.dim == 0:
        return Subspace(g, [])
    if _theta_stable(z, ga.theta):
        return maximally_noncompact_csa(z, ga.theta)
    cen = centralizer(z, z)
    hz = maximal_toral(z, cen if cen.dim else None)
    d = derived_subalgebra(z)
    want = real_rank_of_fingerprint(real_form_fingerprint(d)) if d.dim else 0
    if _csa_noncompact_dim(z, hz) != want:
        raise ArithmeticError(
            "no certified maximally noncompact Cartan subalgebra: the "
            "centralizer is not stable under the Cartan involution and the "
            "greedy Cartan subalgebra is not maximally noncompact")
    return hz


@dataclass(frozen=True, eq=False)
class ComplexCarrierClass:
    """One degree-zero-Weyl-class of complex carrier subalgebras, presented
    as a weight system over the split Cartan subalgebra.

    ``entries`` is a frozenset of (intrinsic degree, ambient root index)
    pairs; ``base0`` and ``base1`` list the degree-zero and degree-one
    simple roots of the representative; ``dims`` is (dim c, dim c_0,
    dim c_1); the defining element is a vector of the split form.
    """

    label: str
    ctype: str
    entries: frozenset
    base0: tuple
    base1: tuple
    dims: tuple
    principal: bool
    defining_element: tuple


@dataclass(frozen=True, eq=False)
class CarrierRecord:
    """One real carrier subalgebra up to conjugacy by the degree-zero group.

    Records produced by the classification carry the theta-stable Cartan
    record they are strongly regular for, their weight system, and their
    provenance (complex class label, transporting Weyl permutation).
    Records produced by the pointwise construction carry None for these.
    """

    algebra: GradedAlgebra
    csa: CartanSubalgebraRecord | None
    weight_system: GradedWeightSet | None
    s: Subspace
    components: tuple
    fingerprint: tuple
    defining_element: tuple
    principal: bool
    provenance: tuple

    def real_form(self) -> str:
        return real_form_name(self.fingerprint)

    def component(self, k: int) -> Subspace:
        comps = dict(self.components)
        return comps.get(k, Subspace(self.s.ambient, []))


def carrier_of(ga: GradedAlgebra, e) -> CarrierRecord:
    """The carrier of a nonzero nilpotent element of the degree-one part.

    Builds the graded sl2-triple through e, a maximally noncompact Cartan
    subalgebra h_z of the triple's centralizer in g_0, and the derived
    subalgebra of g(t, lambda) with t = span(h) + h_z, lambda(h) = 2 and
    lambda zero on h_z.  The defining element is h/2.
    """
    triple = homogeneous_sl2(ga, e)
    g = ga.g
    h = list(triple.h)
    a = Subspace(g, [h, list(triple.e), list(triple.f)])
    z = centralizer(ga.component(0), a)
    hz = _noncompact_csa_of(ga, z)
    gens = [h] + [list(v) for v in hz.basis]
    t = Subspace(g, gens)
    lam = _form_on_echelon(t, gens, [Fraction(2)] + [Fraction(0)] * hz.dim)
    comps = _derived_components(g, g_t_lambda(ga, t, lam))
    y = defining_element(comps)
    assert [2 * x for x in y] == h, "defining element differs from h/2"
    assert comps[1].contains(list(triple.e))
    assert comps[0].dim == comps[1].dim, "carrier is not locally flat"
    s = Subspace(g, [list(v) for sk in comps.values() for v in sk.basis])
    return CarrierRecord(
        algebra=ga,
        csa=None,
        weight_system=None,
        s=s,
        components=tuple(sorted(comps.items())),
        fingerprint=real_form_fingerprint(s),
        defining_element=tuple(y),
        principal=is_toral(comps[0]),
        provenance=("construction", None),
    )


def _opposite_nilpotent(ga: GradedAlgebra, e, h):
    """The unique f in the degree-minus-one part with [e, f] = h and
    [h, f] = -2f."""
    g = ga.g
    ys = [list(v) for v in ga.component(-1).basis]
    cols = [g.bracket(e, y) for y in ys]
    hy = [g.bracket(h, y) for y in ys]
    rows = [[col[r] for col in cols] for r in range(g.dim)]
    rows += [[hy[j][r] + 2 * ys[j][r] for j in range(len(ys))]
             for r in range(g.dim)]
    sol = solve_linear(rows, list(h) + g.zero())
    if sol is None:
        raise NotGeneralPosition("no opposite nilpotent completes the triple")
    assert not kernel_basis(rows, len(ys)), "opposite nilpotent is not unique"
    f = g.zero()
    for c, y in zip(sol, ys):
        if c:
            f = [x + c * yy for x, yy in zip(f, y)]
    assert g.bracket(e, f) == list(h)
    return f


def is_carrier_of(c: CarrierRecord, e) -> bool:
    """Whether the carrier c is the carrier of the nilpotent e, for e in
    general position in c_1.

    The triple (h, e, f) with h twice the defining element is completed,
    and the test compares real ranks: a maximally noncompact Cartan
    subalgebra of the centralizer of c in g_0 is automatically a Cartan
    subalgebra of the centralizer of the triple, and c is the carrier of e
    exactly when it is still maximally noncompact there — equivalently,
    when its noncompact dimension meets the real rank of that centralizer's
    derived ideal.
    """
    ga = c.algebra
    g = ga.g
    comps = dict(c.components)
    c0 = comps.get(0, Subspace(g, []))
    c1 = comps.get(1, Subspace(g, []))
    e = [x if isinstance(x, Fraction) else Fraction(x) for x in e]
    if not c1.dim or not c1.contains(e):
        raise NotGeneralPosition("the element must lie in the degree-one part")
    image = Subspace(g, [g.bracket(list(u), e) for u in c0.basis])
    if image.dim != c1.dim:
        raise NotGeneralPosition("[c_0, e] does not fill c_1")
    h = [2 * x for x in c.defining_element]
    f = _opposite_nilpotent(ga, e, h)
    a = Subspace(g, [h, e, f])
    g0 = ga.component(0)
    hz = _noncompact_csa_of(ga, centralizer(g0, c.s))
    z_a = centralizer(g0, a)
    if hz.dim == 0:
        assert z_a.dim == 0, "a rank-zero centralizer grew under the triple"
        return True
    assert centralizer(z_a, hz).dim == hz.dim, \
        "the Cartan subalgebra does not stay one in the triple's centralizer"
    d = derived_subalgebra(z_a)
    want = real_rank_of_fingerprint(real_form_fingerprint(d)) if d.dim else 0
    return _csa_noncompact_dim(z_a, hz) == want


# ---------------------------------------------------------------------------
# Enumeration of the complex carrier classes
# ---------------------------------------------------------------------------


def _zero_subsystem_class_bases(rs, zero_idx):
    """Bases of the closed subsystems of the degree-zero subsystem, one per
    orbit of its Weyl group, including the empty and the full subsystem.

    Iterated extended-diagram node removal plus subdiagram deletion, with
    orbit dedup under the reflections of the degree-zero base; the same
    search as for closed subsystems of a whole system, run inside the
    degree-zero subsystem.
    """
    if not zero_idx:
        return [()]
    base_full = subsystem_base(rs, frozenset(zero_idx))
    gens = [rs.reflection(b) for b in base_full]
    seen = set()
    candidates = []

    stack = [tuple(sorted(base_full))]
    while stack:
        base = stack.pop()
        if not base or base in seen:
            continue
        seen.add(base)
        candidates.append(close_subsystem(rs, base))
        comps = _component_split(rs, base)
        for comp in comps:
            low = rs.neg(highest_root_index(rs, comp))
            if low in base:
                continue
            ext = list(base) + [low]
            for drop in comp:
                stack.append(tuple(sorted(x for x in ext if x != drop)))
        for drop in base:
            stack.append(tuple(x for x in base if x != drop))

    orbit_of = set()
    classes = []
    for sub in candidates:
        if sub in orbit_of:
            continue
        orbit = {sub}
        frontier = [sub]
        while frontier:
            nxt = []
            for s in frontier:
                for gperm in gens:
                    img = frozenset(gperm[i] for i in s)
                    if img not in orbit:
                        orbit.add(img)
                        nxt.append(img)
            frontier = nxt
        orbit_of |= orbit
        classes.append(sub)
    return [()] + [subsystem_base(rs, sub) for sub in classes]


def _saturate(rs, clo, frontier):
    """Additive closure of a symmetric coefficient-tracked root set.

    Returns False as soon as a closure root has mixed expansion signs over
    the chosen roots, in which case they are not a base of the subsystem
    they generate; the presentation with the actual base is visited by the
    search as well, so such branches are safely discarded.
    """
    while frontier:
        nxt = []
        for a in frontier:
            ca, fa = clo[a]
            for b, (cb, fb) in list(clo.items()):
                s = rs.sum_index(a, b)
                if s is None:
                    continue
                cs = tuple(x + y for x, y in zip(ca, cb))
                if s in clo:
                    assert clo[s][0] == cs
                    continue
                if any(x > 0 for x in cs) and any(x < 0 for x in cs):
                    return False
                clo[s] = (cs, fa + fb)
                ns = rs.neg(s)
                assert ns not in clo
                clo[ns] = (tuple(-x for x in cs), -(fa + fb))
                nxt.append(s)
                nxt.append(ns)
        frontier = nxt
    return True


def _base_closure(rs, base):
    """Coefficient-tracked closure of a degree-zero base (all degrees 0)."""
    clo = {}
    k = len(base)
    frontier = []
    for i, b in enumerate(base):
        unit = tuple(1 if j == i else 0 for j in range(k))
        clo[b] = (unit, 0)
        clo[rs.neg(b)] = (tuple(-x for x in unit), 0)
        frontier.extend([b, rs.neg(b)])
    ok = _saturate(rs, clo, frontier)
    assert ok, "a subsystem base closed with mixed signs"
    return clo


def _search_candidates(rs, base0, ones, found):
    """Depth-first search over obtuse independent degree-one extensions of
    a fixed degree-zero base, reporting every locally flat candidate."""
    coords0 = [[Fraction(x) for x in rs.roots[b]] for b in base0]
    red0, piv0 = rref(coords0, rs.rank) if coords0 else ([], [])
    assert len(red0) == len(base0), "degree-zero base is dependent"
    clo0 = _base_closure(rs, base0)

    def record(chosen, clo):
        n0 = sum(1 for _, phi in clo.values() if phi == 0)
        n1 = sum(1 for _, phi in clo.values() if phi == 1)
        if len(base0) + len(chosen) + n0 != n1:
            return
        entries = frozenset((phi, a) for a, (_, phi) in clo.items())
        found.setdefault(entries, (base0, chosen))

    def rec(chosen, clo, red, piv, start):
        if chosen:
            record(chosen, clo)
        nb = len(base0) + len(chosen)
        for pos in range(start, len(ones)):
            beta = ones[pos]
            if beta in clo or rs.neg(beta) in clo:
                continue
            if any(rs.pairing(beta, x) > 0 for x in base0):
                continue
            if any(rs.pairing(beta, x) > 0 for x in chosen):
                continue
            w = reduce_against(red, piv, [Fraction(x) for x in rs.roots[beta]])
            if not any(w):
                continue
            nred, npiv = rref(red + [w], rs.rank)
            nclo = {a: (c + (0,), phi) for a, (c, phi) in clo.items()}
            unit = tuple(0 for _ in range(nb)) + (1,)
            nclo[beta] = (unit, 1)
            nclo[rs.neg(beta)] = (tuple(-x for x in unit), -1)
            if _saturate(rs, nclo, [beta, rs.neg(beta)]):
                rec(chosen + (beta,), nclo, nred, npiv, pos + 1)

    rec((), clo0, red0, piv0, 0)


def _coroot_vector(g, rs, a):
    v = g.zero()
    for i, c in enumerate(_coroot(rs, a)):
        v[i] = Fraction(c)
    return v


def _candidate_components(ga: GradedAlgebra, entries, base, record) -> dict:
    """Subspace components of a candidate spanned by root spaces and the
    coroots of its simple roots, over the split Cartan subalgebra (record
    None) or over a Cartan record's root datum."""
    g = ga.g
    rs = ga.ctx.rs
    if record is None:
        def root_vec(a):
            return g.basis_vector(rs.rank + a)

        def coroot_vec(b):
            return _coroot_vector(g, rs, b)
    else:
        def root_vec(a):
            return list(record.datum.vectors[a])

        def coroot_vec(b):
            return list(record.datum.coroots[b])
    by_k = {}
    for k, a in entries:
        by_k.setdefault(k, []).append(a)
    comps = {}
    toral = [coroot_vec(b) for b in base]
    for k in sorted(by_k):
        vecs = [root_vec(a) for a in sorted(by_k[k])]
        if k == 0:
            vecs = toral + vecs
        comps[k] = Subspace(g, vecs)
    if 0 not in by_k and toral:
        comps[0] = Subspace(g, toral)
    return comps


def _fast_class_test(ga: GradedAlgebra, degmap, entries, base, record):
    """Root-combinatorial carrier test for split-regular candidates.

    Works entirely on root indices and pairings when the Cartan part of the
    degree-zero centralizer is a Cartan subalgebra of it, which holds
    unless some centralizer root is a rational combination of the base.
    Returns (flag, defining element), or None when the fast route does not
    apply and the general test must run.
    """
    rs = ga.ctx.rs
    g = ga.g
    m = ga.m
    degs = {a: k for k, a in entries}
    roots = sorted(degs)
    # the defining element y in the coroot span of the base
    mat = [[Fraction(rs.pairing(bi, bj)) for bj in base] for bi in base]
    rhs = [Fraction(degs[b]) for b in base]
    coeffs = solve_linear(mat, rhs)
    assert coeffs is not None and not kernel_basis(mat, len(base))
    if record is None:
        corvecs = [_coroot_vector(g, rs, b) for b in base]
    else:
        corvecs = [list(record.datum.coroots[b]) for b in base]
    y = g.zero()
    for c, cv in zip(coeffs, corvecs):
        if c:
            y = [x + c * z for x, z in zip(y, cv)]

    def val(a):
        return sum((c * rs.pairing(a, b) for c, b in zip(coeffs, base)), Fraction(0))

    bred, bpiv = rref([[Fraction(x) for x in rs.roots[b]] for b in base],
                      rs.rank)
    in_base_span = {}

    def spanned(a):
        got = in_base_span.get(a)
        if got is None:
            got = in_row_space(bred, bpiv, [Fraction(x) for x in rs.roots[a]])
            in_base_span[a] = got
        return got

    # fall back when a centralizer root vanishes on the Cartan part of the
    # centralizer, i.e. lies in the span of the base
    rootset = set(roots)
    for gam in range(rs.nroots):
        if degmap[gam] != 0 or gam in rootset:
            continue
        if any(rs.pairing(gam, b) for b in base):
            continue
        if any(rs.sum_index(gam, d) is not None or gam == rs.neg(d)
               for d in roots):
            continue
        if spanned(gam):
            return None
    # membership in g(t, lambda) and its derived subalgebra
    member = {}
    for a in range(rs.nroots):
        if not spanned(a):
            continue
        k = val(a)
        if k.denominator != 1:
            continue
        k = int(k)
        if (k != degmap[a]) if m is None else (k % m != degmap[a]):
            continue
        member[a] = k
    return member == degs, y


def _class_sort_key(rs, item):
    entries, base0, base1, _ = item
    dim = len(base0) + len(base1) + len(entries)
    return (dim, subsystem_type(rs, [a for _, a in entries]),
            sorted(entries))


def _enumerate_classes(ga: GradedAlgebra, degmap, record) -> tuple:
    """Carrier classes of the complexified grading for one root degree map.

    ``degmap`` lists the degree of each root space of the relevant Cartan
    subalgebra (the split one for record None, the record's otherwise); the
    classes come out up to the Weyl group of the degree-zero subsystem.
    """
    rs = ga.ctx.rs
    m = ga.m
    zero_idx = tuple(a for a in range(rs.nroots) if degmap[a] == 0)
    ones = tuple(a for a in range(rs.nroots)
                 if ((degmap[a] == 1) if m is None
                     else (degmap[a] % m == 1 % m)))
    found = {}
    for base0 in _zero_subsystem_class_bases(rs, zero_idx):
        _search_candidates(rs, base0, ones, found)
    survivors = []
    for entries, (base0, base1) in found.items():
        base = base0 + base1
        fast = _fast_class_test(ga, degmap, entries, base, record)
        if fast is None:
            h0 = _split_csa(ga) if record is None else record.h
            ok, y = _carrier_test(
                ga, _candidate_components(ga, entries, base, record), h0)
        else:
            ok, y = fast
        if ok:
            survivors.append((entries, base0, base1, y))
    if zero_idx:
        w0 = WeylGroup([rs.reflection(b)
                        for b in subsystem_base(rs, frozenset(zero_idx))],
                       rs.nroots)
    else:
        w0 = WeylGroup([], rs.nroots)
    kept = []
    for cand in survivors:
        if any(weight_sets_equivalent(w0, cand[0], old[0]) for old in kept):
            continue
        kept.append(cand)
    kept.sort(key=lambda item: _class_sort_key(rs, item))
    out = []
    for i, (entries, base0, base1, y) in enumerate(kept):
        dim = len(base0) + len(base1) + len(entries)
        dim0 = len(base0) + len(base1) + sum(1 for k, _ in entries if k == 0)
        dim1 = sum(1 for k, _ in entries if k == 1)
        typ = subsystem_type(rs, [a for _, a in entries])
        out.append(ComplexCarrierClass(
            label=f"{i:02d}-{typ}",
            ctype=typ,
            entries=entries,
            base0=base0,
            base1=base1,
            dims=(dim, dim0, dim1),
            principal=not any(k == 0 for k, _ in entries),
            defining_element=tuple(y),
        ))
    return tuple(out)


@lru_cache(maxsize=None)
def complex_carriers(ga: GradedAlgebra) -> tuple:
    """The classes of complex carrier subalgebras of the complexified
    grading, up to the degree-zero Weyl group, as weight systems over the
    split Cartan subalgebra.

    Candidates are generated from a degree-adapted simple system: a fixed
    base per Weyl-class of closed subsystems of the degree-zero roots,
    extended by obtuse independent degree-one roots; locally flat survivors
    of the additive-closure bookkeeping pass through the carrier test and
    are deduplicated by Weyl orbits of their weight systems.
    """
    rs = ga.ctx.rs
    if any(d is None for d in ga.degree):
        raise ValueError("carrier enumeration requires a grading in which "
                         "every root vector is homogeneous")
    degmap = tuple(ga.degree[rs.rank + a] for a in range(rs.nroots))
    return _enumerate_classes(ga, degmap, None)


@lru_cache(maxsize=None)
def _record_classes(ga: GradedAlgebra, record) -> tuple:
    """Carrier classes presented over one Cartan record's root indexing.

    A Cartan record of the degree-zero part indexes its roots through its
    own datum, under which the grading becomes a possibly different degree
    map on the same abstract root system; the classes are re-enumerated for
    that map.  Conjugating the record's Cartan subalgebra onto the split
    one carries one list onto the other, so the counts must agree.
    """
    degmap = _record_degrees(ga, record)
    classes = _enumerate_classes(ga, degmap, record)
    assert len(classes) == len(complex_carriers(ga)), \
        "per-record class count differs from the split count"
    return classes


# ---------------------------------------------------------------------------
# Real carriers
# ---------------------------------------------------------------------------


def _matching_coset(ga, record, class_entries, target_entries):
    _, _, reps = _graded_weyl(ga, record)
    for w in reps:
        if frozenset((k, w[a]) for k, a in class_entries) == target_entries:
            return w
    raise AssertionError("no coset representative reproduces the transport")


def _carrier_record(ga, record, cls, reg) -> CarrierRecord:
    comps = dict(reg.components)
    y = defining_element(comps)
    assert record.h.contains(list(y)), \
        "defining element escapes the Cartan subalgebra"
    coset = _matching_coset(ga, record, cls.entries,
                            reg.weight_system.entries)
    ok, _ = _carrier_test(ga, comps, record.h)
    assert ok, "classification output fails the carrier test"
    return CarrierRecord(
        algebra=ga,
        csa=record,
        weight_system=reg.weight_system,
        s=reg.s,
        components=reg.components,
        fingerprint=reg.fingerprint,
        defining_element=tuple(y),
        principal=not any(k == 0 for k, _ in reg.weight_system.entries),
        provenance=(cls.label, coset),
    )


@lru_cache(maxsize=None)
def real_carriers(ga: GradedAlgebra) -> tuple:
    """All real carrier subalgebras up to conjugacy by the degree-zero
    group: the strongly regular real forms of every complex carrier class,
    collected over every theta-stable Cartan class of the degree-zero part.
    Every record passes the carrier test for its own Cartan subalgebra."""
    out = []
    for record in graded_cartan_classes(ga):
        for cls in _record_classes(ga, record):
            ws = weight_set(record, cls.entries)
            for reg in strongly_regular_subalgebras(ga, record, ws):
                out.append(_carrier_record(ga, record, cls, reg))
    return tuple(out)
