"""Regular semisimple subalgebras of graded real forms.

A graded semisimple subalgebra s of a graded real form g that is normalized
by a theta-stable Cartan subalgebra h0 of the degree-zero part is determined
by its weight set: the pairs (degree, root) whose one-dimensional weight
spaces span s over the Cartan part.  Working with weight sets turns the
classification into combinatorics on root indices: the degree-zero Weyl
group W0 permutes them, conjugation acts by the sigma permutation of the
record, and two strongly regular subalgebras are conjugate under the real
group exactly when their weight sets lie in one orbit of the real Weyl group
W0(h0).

The classification per Cartan subalgebra therefore runs over coset
representatives of W0(h0) in W0, keeps the conjugation-stable transports,
takes real points, and filters by strong regularity; the union over the
Cartan classes of the degree-zero part is a complete irredundant list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import kernel_basis
from .grading import GradedAlgebra
from .liecore import (
    Subspace,
    centralizer,
    is_subalgebra,
    real_form_fingerprint,
    real_form_name,
)
from .realstruct import (
    CartanSubalgebraRecord,
    _gaussian_parts,
    _intersect_eigenspace,
    build_csa_record,
    enumerate_theta_stable_csas,
)
from .realweyl import subsystem_real_weyl_group
from .rootdata import (
    WeylGroup,
    closed_subsystems,
    coset_reps,
    perm_mul,
    subsystem_base,
    subsystem_type,
)


class NotSigmaStable(ValueError):
    """The weight set is not stable under complex conjugation."""


# ---------------------------------------------------------------------------
# Graded weight sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedWeightSet:
    """Weight set of a graded regular subalgebra over a Cartan record.

    ``entries`` is a frozenset of (degree, ambient root index) pairs; the
    subalgebra it presents is spanned by the listed root spaces together
    with the coroots of the listed roots.
    """

    record: CartanSubalgebraRecord
    entries: frozenset

    def degrees(self):
        return sorted({k for k, _ in self.entries})

    def roots_at(self, k: int):
        return tuple(sorted(a for l, a in self.entries if l == k))


def weight_set(record: CartanSubalgebraRecord, entries) -> GradedWeightSet:
    """Validated graded weight set over a Cartan subalgebra record.

    Entries are (degree, ambient root index) pairs.  Each root may carry
    only one degree, (-k, -a) must accompany (k, a), and whenever the sum
    of two member roots is a root it must be a member with the summed
    degree; these closure rules make the span a graded subalgebra with
    reductive complexification.
    """
    rs = record.ctx.rs
    out = frozenset((int(k), int(a)) for k, a in entries)
    if not out:
        raise ValueError("a weight set needs at least one entry")
    bydeg = {}
    for k, a in out:
        if not 0 <= a < rs.nroots:
            raise ValueError(f"root index {a} out of range")
        if a in bydeg:
            raise ValueError(f"root index {a} carries two degrees")
        bydeg[a] = k
    for k, a in out:
        if bydeg.get(rs.neg(a)) != -k:
            raise ValueError("weight set is not symmetric under negation")
        for l, b in out:
            c = rs.sum_index(a, b)
            if c is not None and bydeg.get(c) != k + l:
                raise ValueError("weight set is not closed under addition")
    return GradedWeightSet(record, out)


def w_dot(w, ws: GradedWeightSet) -> GradedWeightSet:
    """Transport of a weight set by a Weyl permutation of the root indices."""
    w = tuple(w)
    return GradedWeightSet(ws.record, frozenset((k, w[a]) for k, a in ws.entries))


def is_sigma_stable(ws: GradedWeightSet) -> bool:
    """Whether conjugation permutes the entries among themselves."""
    sp = ws.record.datum.sigma_perm
    return all((k, sp[a]) in ws.entries for k, a in ws.entries)


def _real_imaginary_parts(vec):
    re, im = [], []
    for x in vec:
        r, i = _gaussian_parts(x)
        re.append(r)
        im.append(i)
    return re, im


def complex_span(ws: GradedWeightSet) -> Subspace:
    """Span of the entry root spaces and coroots in the complexification."""
    datum = ws.record.datum
    gc = ws.record.ctx.gc
    vecs = [list(datum.coroots[a]) for _, a in sorted(ws.entries)]
    vecs += [list(datum.vectors[a]) for _, a in sorted(ws.entries)]
    s = Subspace(gc, vecs)
    crank = Subspace(gc, vecs[:len(ws.entries)]).dim
    assert s.dim == len(ws.entries) + crank
    return s


def real_points(ws: GradedWeightSet):
    """Real points of the complex span of a conjugation-stable weight set.

    Returns (s, components) where s is the real form of the presented
    subalgebra inside g and components maps each entry degree to its graded
    piece (the Cartan part of s sits in degree zero).  Raises
    NotSigmaStable when conjugation moves the weight set.
    """
    if not is_sigma_stable(ws):
        raise NotSigmaStable("the weight set is not closed under conjugation")
    record = ws.record
    g = record.ctx.g
    datum = record.datum
    buckets = {}
    toral = buckets.setdefault(0, [])
    for _, a in sorted(ws.entries):
        re, im = _real_imaginary_parts(datum.coroots[a])
        if any(re):
            toral.append(re)
        if any(im):
            toral.append(im)
    for k, a in sorted(ws.entries):
        re, im = _real_imaginary_parts(datum.vectors[a])
        bucket = buckets.setdefault(k, [])
        if any(re):
            bucket.append(re)
        if any(im):
            bucket.append(im)
    components = {k: Subspace(g, vecs) for k, vecs in sorted(buckets.items()) if vecs}
    s = Subspace(g, [v for k in sorted(buckets) for v in buckets[k]])
    gc = record.ctx.gc
    crank = Subspace(gc, [list(datum.coroots[a]) for _, a in ws.entries]).dim
    # a real structure halves nothing: each weight space contributes one
    # real dimension and the Cartan part contributes the subsystem rank
    assert s.dim == len(ws.entries) + crank
    assert sum(c.dim for c in components.values()) == s.dim
    return s, components


# ---------------------------------------------------------------------------
# Degrees and Weyl data attached to one Cartan record
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _record_degrees(ga: GradedAlgebra, record: CartanSubalgebraRecord):
    """Ambient degree of each root space of the record's Cartan subalgebra.

    For a Cartan subalgebra of the degree-zero part, every root space of
    the complexification is homogeneous; the returned tuple lists the
    degree of the root space of each ambient root index.
    """
    rs = ga.ctx.rs
    zero = ga.component(0)
    for v in record.h.basis:
        if not zero.contains(list(v)):
            raise ValueError("the Cartan subalgebra does not have degree zero")
    if ga.m is None and not any(ga.degree):
        return (0,) * rs.nroots
    degs = []
    for a in range(rs.nroots):
        re, im = _real_imaginary_parts(record.datum.vectors[a])
        hit = None
        for k in ga.degrees():
            comp = ga.component(k)
            if (not any(re) or comp.contains(re)) and (not any(im) or comp.contains(im)):
                assert hit is None, "root space meets two components"
                hit = k
        if hit is None:
            raise ValueError("a root space is not homogeneous for the grading")
        degs.append(hit)
    return tuple(degs)


@lru_cache(maxsize=None)
def _graded_weyl(ga: GradedAlgebra, record: CartanSubalgebraRecord):
    """Degree-zero Weyl group, its real subgroup, and coset representatives."""
    rs = ga.ctx.rs
    degs = _record_degrees(ga, record)
    zero = tuple(a for a in range(rs.nroots) if degs[a] == 0)
    gens = [rs.reflection(b) for b in subsystem_base(rs, zero)]
    w0 = WeylGroup(gens, rs.nroots)
    rwg = subsystem_real_weyl_group(record, zero)
    reps = coset_reps(w0, list(rwg.generators))
    return w0, rwg, tuple(reps)


@lru_cache(maxsize=None)
def _zp_part(ga: GradedAlgebra, record: CartanSubalgebraRecord):
    """h0 cap p and the ambient space z_{g0}(h0 cap p) cap p of the test."""
    theta = ga.ctx.theta
    hp = _intersect_eigenspace(record.h, theta, Fraction(-1))
    g0 = ga.component(0)
    if hp.dim == 0:
        z = g0
    else:
        z = centralizer(g0, hp)
    return hp, _intersect_eigenspace(z, theta, Fraction(-1))


# ---------------------------------------------------------------------------
# Strong regularity
# ---------------------------------------------------------------------------


def is_strongly_regular(ga: GradedAlgebra, s: Subspace, h) -> bool:
    """Whether h is maximally noncompact among Cartan subalgebras normalizing s.

    The criterion is the subspace identity
    z_{g0}(h cap p) cap n_{g0}(s) cap p = h cap p.
    """
    ctx = ga.ctx
    record = h if isinstance(h, CartanSubalgebraRecord) else build_csa_record(ctx, h)
    hp, ambient = _zp_part(ga, record)
    if ambient.dim == hp.dim:
        return True
    g = ctx.g
    residuals = []
    for v in ambient.basis:
        per_v = []
        for b in s.basis:
            per_v.append(s.reduce(g.bracket(list(v), list(b))))
        residuals.append(per_v)
    rows = []
    for j in range(len(s.basis)):
        for r in range(g.dim):
            row = [residuals[i][j][r] for i in range(len(ambient.basis))]
            if any(row):
                rows.append(row)
    ker = kernel_basis(rows, len(ambient.basis))
    vecs = []
    for c in ker:
        vecs.append([sum(ci * bi[r] for ci, bi in zip(c, ambient.basis))
                     for r in range(g.dim)])
    normp = Subspace(g, vecs)
    assert all(normp.contains(list(v)) for v in hp.basis)
    return normp.dim == hp.dim


# ---------------------------------------------------------------------------
# Weight-set equivalence under a permutation group
# ---------------------------------------------------------------------------


def _transport_orbit(entry_set, gens):
    """Orbit of a frozenset of (degree, index) entries under permutations."""
    seen = {entry_set}
    frontier = [entry_set]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                img = frozenset((k, g[a]) for k, a in e)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def _search_transporter(group: WeylGroup, lay1, lay2):
    """Backtrack over the stabilizer chain for a degree-preserving transport."""
    base = group.base

    def search(level, prefix):
        if level == len(base):
            return all(lay2.get(prefix[a]) == k for a, k in lay1.items())
        b = base[level]
        want = lay1.get(b)
        for t in group.transversals[level].values():
            g = perm_mul(prefix, t)
            if lay2.get(g[b]) != want:
                continue
            if search(level + 1, g):
                return True
        return False

    return search(0, group.identity)


_ORBIT_LIMIT = 20000


def weight_sets_equivalent(group: WeylGroup, e1, e2) -> bool:
    """Whether a group element transports one entry set onto the other."""
    e1 = e1.entries if isinstance(e1, GradedWeightSet) else frozenset(e1)
    e2 = e2.entries if isinstance(e2, GradedWeightSet) else frozenset(e2)
    if e1 == e2:
        return True
    if sorted(k for k, _ in e1) != sorted(k for k, _ in e2):
        return False
    if group.order() <= _ORBIT_LIMIT:
        return e2 in _transport_orbit(e1, list(group.generators))
    return _search_transporter(group, dict((a, k) for k, a in e1),
                               dict((a, k) for k, a in e2))


# ---------------------------------------------------------------------------
# The classification per Cartan subalgebra and in total
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RegularSubalgebraRecord:
    """One strongly regular semisimple subalgebra of a graded real form."""

    csa: CartanSubalgebraRecord
    weight_system: GradedWeightSet
    s: Subspace
    components: tuple
    fingerprint: tuple
    strongly_regular: bool

    def real_form(self) -> str:
        return real_form_name(self.fingerprint)

    def component(self, k: int) -> Subspace:
        return dict(self.components)[k]


def _finish(ga, record, ws, s, comps) -> RegularSubalgebraRecord:
    assert is_subalgebra(s)
    for k, piece in comps.items():
        target = ga.component(k if ga.m is None else ga.normalize_degree(k))
        assert all(target.contains(list(v)) for v in piece.basis)
    return RegularSubalgebraRecord(
        csa=record,
        weight_system=ws,
        s=s,
        components=tuple(sorted(comps.items())),
        fingerprint=real_form_fingerprint(s),
        strongly_regular=True,
    )


def strongly_regular_subalgebras(ga: GradedAlgebra, h, sc) -> list:
    """Strongly regular real forms of one complex class at one Cartan record.

    ``sc`` presents the complex subalgebra as a graded weight set over the
    record.  Its transports by coset representatives of the real Weyl group
    W0(h0) inside the degree-zero Weyl group W0 sweep out all candidates;
    conjugation-stable transports are realified, tested for strong
    regularity, and reported once per W0(h0)-orbit.
    """
    ctx = ga.ctx
    record = h if isinstance(h, CartanSubalgebraRecord) else build_csa_record(ctx, h)
    ws = sc if isinstance(sc, GradedWeightSet) and sc.record is record \
        else weight_set(record, sc.entries if isinstance(sc, GradedWeightSet) else sc)
    degs = _record_degrees(ga, record)
    for k, a in ws.entries:
        want = degs[a]
        if (k != want) if ga.m is None else (ga.normalize_degree(k) != want):
            raise ValueError("entry degrees do not match the ambient grading")
    w0, rwg, reps = _graded_weyl(ga, record)
    sub_gens = list(rwg.generators)
    small = rwg.order <= _ORBIT_LIMIT
    out = []
    covered = set()
    kept = []
    for w in reps:
        e = frozenset((k, w[a]) for k, a in ws.entries)
        if e in covered:
            continue
        tws = GradedWeightSet(record, e)
        if not is_sigma_stable(tws):
            covered.add(e)
            continue
        if len(reps) > 1 and sub_gens and small:
            covered |= _transport_orbit(e, sub_gens)
        else:
            covered.add(e)
            if kept and any(weight_sets_equivalent(_real_weyl_perm_group(ga, record), e, k2)
                            for k2 in kept):
                continue
        kept.append(e)
        s, comps = real_points(tws)
        if not is_strongly_regular(ga, s, record):
            continue
        out.append(_finish(ga, record, tws, s, comps))
    return out


@lru_cache(maxsize=None)
def _real_weyl_perm_group(ga, record) -> WeylGroup:
    _, rwg, _ = _graded_weyl(ga, record)
    return WeylGroup(list(rwg.generators), ga.ctx.rs.nroots)


def graded_cartan_classes(ga: GradedAlgebra):
    """Theta-stable Cartan subalgebra classes of the degree-zero part."""
    return _graded_cartan_classes(ga)


@lru_cache(maxsize=None)
def _graded_cartan_classes(ga):
    ctx = ga.ctx
    rs = ctx.rs
    if any(ga.degree[:rs.rank]):
        raise ValueError("the split Cartan subalgebra must have degree zero")
    zero = frozenset(a for a in range(rs.nroots) if ga.degree[rs.rank + a] == 0)
    if len(zero) == rs.nroots:
        return tuple(enumerate_theta_stable_csas(ctx))
    return tuple(enumerate_theta_stable_csas(ctx, zero))


def all_regular_subalgebras(ga: GradedAlgebra, sc) -> list:
    """Strongly regular forms of one complex class over all Cartan classes.

    Unions the per-record classifications over representatives of the
    theta-stable Cartan classes of the degree-zero part.  Each regular
    subalgebra is strongly regular with respect to exactly one Cartan
    class, so the union is complete and free of repetitions.
    """
    entries = sc.entries if isinstance(sc, GradedWeightSet) else \
        frozenset((int(k), int(a)) for k, a in sc)
    out = []
    for record in graded_cartan_classes(ga):
        out.extend(strongly_regular_subalgebras(ga, record, weight_set(record, entries)))
    return out


def complex_regular_classes(ctx):
    """Proper regular semisimple complex classes as degree-zero entry sets.

    One (type string, entries) pair per Weyl orbit of proper nonempty
    symmetric closed subsystems of the root system; over any Cartan record
    the entries present a representative of the corresponding class of
    regular semisimple subalgebras of the complexification.
    """
    rs = ctx.rs
    out = [(subsystem_type(rs, sub), frozenset((0, a) for a in sub))
           for sub in closed_subsystems(rs)]
    out.sort(key=lambda t: (len(t[1]), t[0], sorted(t[1])))
    return tuple(out)
