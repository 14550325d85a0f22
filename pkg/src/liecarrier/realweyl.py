"""Real Weyl groups of theta-stable Cartan subalgebras.

For a theta-stable Cartan subalgebra h of a split real form, the real Weyl
group W(h) = N_G(h)/Z_G(h) (G the real points of the adjoint group) embeds
into the full Weyl group W.  A candidate w that commutes with the theta
action on roots lies in W(h) exactly when a multiplicative system in the
theta scalars mu and the transporter scalars nu is solvable; solvability is
decided over the integers by Hermite normal forms.  The group itself is
assembled from the decomposition W(h) = (W_r x W_i^R) : W_c^theta, so only
coset representatives of the compact-imaginary Weyl group inside the
imaginary one need the scalar test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import solve_multiplicative
from .liecore import Subspace, centralizer, is_toral
from .realstruct import (
    CartanSubalgebraRecord,
    NotThetaStable,
    SplitAlgebra,
    build_csa_record,
)
from .rootdata import (
    WeylGroup,
    cartan_int,
    coset_reps,
    perm_identity,
    perm_inv,
    perm_mul,
    subsystem_base,
)


class NotCartan(ValueError):
    """The given subspace is not a theta-stable Cartan subalgebra."""


class NotInWTheta(ValueError):
    """The Weyl element does not commute with the theta action on roots."""


# ---------------------------------------------------------------------------
# Root classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootClassification:
    """Partition of the roots of h^c by their behaviour under theta.

    A root a is real if a∘theta = -a and imaginary if a∘theta = a; an
    imaginary root is compact if theta fixes its root vector.  h_r and h_i
    are the sums of the positive real and positive imaginary coroots, and
    phi_c collects the roots vanishing on both.
    """

    real_roots: tuple
    imaginary_roots: tuple
    compact_imaginary_roots: tuple
    h_r: tuple
    h_i: tuple
    phi_c: tuple


def _coroot_sum(record: CartanSubalgebraRecord, indices):
    n = record.ctx.g.dim
    total = [Fraction(0)] * n
    for a in indices:
        total = [x + y for x, y in zip(total, record.datum.coroots[a])]
    return tuple(total)


def classify_roots(ctx: SplitAlgebra, h) -> RootClassification:
    """Classify the roots of a theta-stable Cartan subalgebra.

    ``h`` may be a Subspace of the split form or an already-built Cartan
    subalgebra record.  Raises NotCartan if the subspace is not a
    theta-stable Cartan subalgebra.
    """
    if isinstance(h, CartanSubalgebraRecord):
        record = h
    else:
        g = ctx.g
        full = Subspace(g, [g.basis_vector(i) for i in range(g.dim)])
        if not is_toral(h) or centralizer(full, h) != h:
            raise NotCartan("not a self-centralizing toral subalgebra")
        if Subspace(g, [ctx.theta.apply(list(v)) for v in h.basis]) != h:
            raise NotCartan("not stable under the Cartan involution")
        try:
            record = build_csa_record(ctx, h)
        except NotThetaStable as exc:
            raise NotCartan(str(exc)) from exc
    rs = ctx.rs
    real = record.real_roots
    imag = record.imaginary_roots
    h_r = _coroot_sum(record, [a for a in real if rs.is_positive(a)])
    h_i = _coroot_sum(record, [a for a in imag if rs.is_positive(a)])
    pos_real = [a for a in real if rs.is_positive(a)]
    pos_imag = [a for a in imag if rs.is_positive(a)]
    phi_c = tuple(
        a for a in range(rs.nroots)
        if sum(cartan_int(rs, a, b) for b in pos_real) == 0
        and sum(cartan_int(rs, a, b) for b in pos_imag) == 0
    )
    return RootClassification(
        real_roots=real,
        imaginary_roots=imag,
        compact_imaginary_roots=record.compact_imaginary_roots,
        h_r=h_r,
        h_i=h_i,
        phi_c=phi_c,
    )


def subsystem_classification(record: CartanSubalgebraRecord, indices) -> RootClassification:
    """Classification of a theta-stable closed symmetric root subsystem.

    Restricts the record's real/imaginary/compact-imaginary partition to
    the subsystem; h_r, h_i and phi_c are formed from the subsystem's own
    positive real and imaginary roots.
    """
    rs = record.ctx.rs
    members = tuple(sorted(set(indices)))
    inset = set(members)
    tp = record.datum.theta_perm
    assert all(tp[a] in inset for a in members), "subsystem is not theta-stable"
    real = tuple(a for a in record.real_roots if a in inset)
    imag = tuple(a for a in record.imaginary_roots if a in inset)
    ci = tuple(a for a in record.compact_imaginary_roots if a in inset)
    pos_real = [a for a in real if rs.is_positive(a)]
    pos_imag = [a for a in imag if rs.is_positive(a)]
    phi_c = tuple(
        a for a in members
        if sum(cartan_int(rs, a, b) for b in pos_real) == 0
        and sum(cartan_int(rs, a, b) for b in pos_imag) == 0
    )
    return RootClassification(
        real_roots=real,
        imaginary_roots=imag,
        compact_imaginary_roots=ci,
        h_r=_coroot_sum(record, pos_real),
        h_i=_coroot_sum(record, pos_imag),
        phi_c=phi_c,
    )


# ---------------------------------------------------------------------------
# Scalar systems
# ---------------------------------------------------------------------------


def _pair_constant(record: CartanSubalgebraRecord, a, b):
    """Scalar N with [x_a, x_b] = N * x_(a+b) in the adapted root basis."""
    rs = record.ctx.rs
    c = rs.sum_index(a, b)
    assert c is not None
    u = record.ctx.gc.bracket(list(record.datum.vectors[a]), list(record.datum.vectors[b]))
    target = record.datum.vectors[c]
    k0 = next(k for k, x in enumerate(target) if x)
    n = u[k0] / target[k0]
    assert n != 0
    return n


def mu_nu_scalars(record: CartanSubalgebraRecord, w):
    """Scalars (mu, nu) on the adapted root basis x_a of the record.

    theta(x_a) = mu_a x_(theta a) is read off the record; the transporter
    eta_w, defined on the canonical generators by x_i -> x_(w(i)), satisfies
    eta_w(x_a) = nu_a x_(w(a)) with nu = 1 on the simple roots,
    nu_(a+b) = nu_a nu_b N_(wa,wb)/N_(a,b), and nu_(-a) = 1/nu_a.
    """
    rs = record.ctx.rs
    w = tuple(w)
    nu = [None] * rs.nroots
    for i in rs.simple_indices:
        nu[i] = Fraction(1)
    for a in sorted(range(rs.npos), key=rs.height):
        if nu[a] is not None:
            continue
        for s in rs.simple_indices:
            b = rs.index_or_none([x - y for x, y in zip(rs.roots[a], rs.roots[s])])
            if b is not None:
                break
        nu[a] = nu[b] * nu[s] * _pair_constant(record, w[b], w[s]) \
            / _pair_constant(record, b, s)
    for a in range(rs.npos):
        nu[a + rs.npos] = 1 / nu[a]
    return record.datum.mu, tuple(nu)


def _subsystem_coords(rs, indices):
    """Base of a closed symmetric subsystem and root coordinates over it."""
    members = set(indices)
    base = subsystem_base(rs, members)
    width = len(base)
    coords = {b: tuple(1 if j == pos else 0 for j in range(width))
              for pos, b in enumerate(base)}
    positives = sorted((a for a in members if rs.is_positive(a)), key=rs.height)
    for a in positives:
        if a in coords:
            continue
        for pos, s in enumerate(base):
            d = rs.index_or_none([x - y for x, y in zip(rs.roots[a], rs.roots[s])])
            if d is not None and d in coords:
                coords[a] = tuple(c + (1 if j == pos else 0)
                                  for j, c in enumerate(coords[d]))
                break
        else:
            raise AssertionError("subsystem is not closed under addition")
    for a in positives:
        coords[rs.neg(a)] = tuple(-c for c in coords[a])
    assert len(coords) == len(members)
    return base, coords


def _subsystem_nu(record: CartanSubalgebraRecord, w, base, coords):
    """nu scalars of the transporter eta_w on a closed subsystem.

    Same recursion as mu_nu_scalars, but the generators carrying nu = 1 are
    the subsystem's base and sums are decomposed inside the subsystem.
    """
    rs = record.ctx.rs
    nu = {b: Fraction(1) for b in base}
    positives = [a for a in coords if sum(coords[a]) > 0]
    for a in sorted(positives, key=lambda x: sum(coords[x])):
        if a in nu:
            continue
        for s in base:
            d = rs.index_or_none([x - y for x, y in zip(rs.roots[a], rs.roots[s])])
            if d is not None and d in nu:
                nu[a] = nu[d] * nu[s] * _pair_constant(record, w[d], w[s]) \
                    / _pair_constant(record, d, s)
                break
        else:
            raise AssertionError("positive subsystem root with no base summand")
    for a in positives:
        nu[rs.neg(a)] = 1 / nu[a]
    return nu


def in_real_weyl(record: CartanSubalgebraRecord, w, indices=None) -> bool:
    """Scalar criterion for membership of w in the real Weyl group.

    Requires w to commute with the theta action on roots (NotInWTheta
    otherwise).  Membership holds iff the multiplicative system
    lambda^(E) = u is solvable, where row i of E expands
    alpha_i∘theta - alpha_i over the simple roots and
    u_i = nu_(alpha_i) nu_(alpha_i∘theta)^(-1) mu_(alpha_i)^(-1) mu_(w alpha_i).

    With ``indices`` the same criterion is evaluated for the reductive
    regular subalgebra whose root system is that closed symmetric
    subsystem: the base of the subsystem replaces the simple roots and the
    free scaling parameters run over the subsystem's canonical generators.
    """
    rs = record.ctx.rs
    tp = record.datum.theta_perm
    w = tuple(w)
    if perm_mul(w, tp) != perm_mul(tp, w):
        raise NotInWTheta("w does not commute with the theta action on roots")
    if indices is None:
        base = rs.simple_indices
        mu, nu_flat = mu_nu_scalars(record, w)
        nu = dict(enumerate(nu_flat))
        coords = {a: rs.roots[a] for a in range(rs.nroots)}
    else:
        base, coords = _subsystem_coords(rs, indices)
        assert all(w[a] in coords for a in coords), "w does not preserve the subsystem"
        mu = record.datum.mu
        nu = _subsystem_nu(record, w, base, coords)
    rows = []
    rhs = []
    for pos, a in enumerate(base):
        ta = tp[a]
        rows.append([coords[ta][j] - (1 if j == pos else 0) for j in range(len(base))])
        rhs.append(nu[a] / nu[ta] / mu[a] * mu[w[a]])
    solvable, _ = solve_multiplicative(rows, rhs)
    return solvable


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


def _conjugation_stabilizer(group: WeylGroup, point):
    """Generators and order of the centralizer of a fixed permutation.

    Schreier's lemma on the orbit of ``point`` under conjugation by the
    group; the returned generators all commute with ``point``.
    """
    p = tuple(point)
    ident = group.identity
    gens = list(group.generators)
    orbit = {p: ident}
    frontier = [p]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                q = perm_mul(g, perm_mul(x, perm_inv(g)))
                if q not in orbit:
                    orbit[q] = perm_mul(g, orbit[x])
                    nxt.append(q)
        frontier = nxt
    stab = []
    seen = set()
    for x, t in orbit.items():
        for g in gens:
            q = perm_mul(g, perm_mul(x, perm_inv(g)))
            s = perm_mul(perm_inv(orbit[q]), perm_mul(g, t))
            if s != ident and s not in seen:
                seen.add(s)
                stab.append(s)
    assert all(perm_mul(s, p) == perm_mul(p, s) for s in stab)
    order = group.order() // len(orbit)
    assert WeylGroup(stab, group.degree).order() == order
    return tuple(stab), order


@dataclass(frozen=True)
class RealWeylGroup:
    """The real Weyl group W(h) with its semidirect decomposition.

    ``decomposition`` holds generator triples for the real factor W_r, the
    imaginary-real factor W_i^R, and the theta-fixed complex factor
    W_c^theta; ``generators`` is their union and ``order`` the product of
    the factor orders.
    """

    generators: tuple
    order: int
    decomposition: tuple
    classification: RootClassification


def real_weyl_group(ctx: SplitAlgebra, h) -> RealWeylGroup:
    """Real Weyl group of a theta-stable Cartan subalgebra.

    ``h`` may be a Subspace or a Cartan subalgebra record.  W_r and W_i are
    the Weyl groups of the real and imaginary subsystems; W_i^R is found by
    running the scalar membership test over coset representatives of the
    compact-imaginary Weyl group inside W_i; W_c^theta is the centralizer
    of the theta action inside the Weyl group of phi_c.
    """
    record = h if isinstance(h, CartanSubalgebraRecord) else None
    cls = classify_roots(ctx, h)
    if record is None:
        record = build_csa_record(ctx, h)
    return _assemble(record, cls, None)


def subsystem_real_weyl_group(record: CartanSubalgebraRecord, indices) -> RealWeylGroup:
    """Real Weyl group of a theta-stable closed symmetric subsystem.

    This is the real Weyl group of the reductive regular subalgebra spanned
    by the Cartan subalgebra and the root spaces of the subsystem, relative
    to that same Cartan subalgebra; its center contributes nothing, so the
    group is computed entirely inside the subsystem.  For the subsystem of
    all roots this coincides with real_weyl_group.
    """
    indices = tuple(sorted(set(indices)))
    cls = subsystem_classification(record, indices)
    full = len(indices) == record.ctx.rs.nroots
    return _assemble(record, cls, None if full else indices)


def _assemble(record: CartanSubalgebraRecord, cls: RootClassification,
              scalar_indices) -> RealWeylGroup:
    rs = record.ctx.rs
    ident = perm_identity(rs.nroots)

    def reflections(indices):
        return [rs.reflection(b) for b in subsystem_base(rs, indices)]

    wr_gens = reflections(cls.real_roots)
    wi_gens = reflections(cls.imaginary_roots)
    wci_gens = reflections(cls.compact_imaginary_roots)
    wr_order = WeylGroup(wr_gens, rs.nroots).order()
    wci_order = WeylGroup(wci_gens, rs.nroots).order()
    if wi_gens:
        reps = coset_reps(WeylGroup(wi_gens, rs.nroots), wci_gens)
    else:
        reps = [ident]
    passing = [r for r in reps if in_real_weyl(record, r, scalar_indices)]
    assert ident in reps and any(r == ident for r in passing)
    wir_order = wci_order * len(passing)
    wir_gens = list(wci_gens) + [r for r in passing if r != ident]
    # the passing cosets form a group between W_ci and W_i
    assert WeylGroup(wir_gens, rs.nroots).order() == wir_order
    wc_gens = reflections(cls.phi_c)
    if wc_gens:
        wctheta_gens, wctheta_order = _conjugation_stabilizer(
            WeylGroup(wc_gens, rs.nroots), record.datum.theta_perm)
    else:
        wctheta_gens, wctheta_order = (), 1
    gens = []
    for g in list(wr_gens) + wir_gens + list(wctheta_gens):
        if g != ident and g not in gens:
            gens.append(g)
    return RealWeylGroup(
        generators=tuple(gens),
        order=wr_order * wir_order * wctheta_order,
        decomposition=(tuple(wr_gens), tuple(wir_gens), tuple(wctheta_gens)),
        classification=cls,
    )
