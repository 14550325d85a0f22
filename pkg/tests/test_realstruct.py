"""Tests for Cartan decompositions, theta-stable Cartan subalgebras, Cayley
transforms, and real rank."""

from fractions import Fraction

import pytest

from liecarrier.exactmath import GaussianRational, I
from liecarrier.liecore import (
    LinearMap,
    Subspace,
    centralizer,
    is_toral,
    realify,
)
from liecarrier.realstruct import (
    CartanSubalgebraRecord,
    NotRealRoot,
    NotThetaStable,
    build_csa_record,
    cartan_decomposition,
    cayley_transform,
    enumerate_theta_stable_csas,
    maximally_noncompact_csa,
    real_rank,
    split_algebra,
    split_csa_record,
    toral_split,
)
from liecarrier.rootdata import close_subsystem


def full(ctx):
    g = ctx.g
    return Subspace(g, [g.basis_vector(i) for i in range(g.dim)])


def sl2_triple_span(ctx, a):
    g, l = ctx.g, ctx.rs.rank
    h_a = g.bracket(g.basis_vector(l + a), g.basis_vector(l + ctx.rs.neg(a)))
    return Subspace(g, [h_a, g.basis_vector(l + a), g.basis_vector(l + ctx.rs.neg(a))])


def realified_with_involution(typ):
    """A complex split algebra viewed over Q, with the compact involution."""
    ctx = split_algebra(typ)
    tau = LinearMap(ctx.theta.matrix, is_automorphism=True).compose(ctx.sigma)
    gr, embed = realify(ctx.gc)
    cols = []
    n = ctx.gc.dim
    for j in range(n):
        cols.append(embed(tau.apply(ctx.gc.basis_vector(j))))
    for j in range(n):
        v = [GaussianRational(0)] * n
        v[j] = I
        cols.append(embed(tau.apply(v)))
    mat = tuple(tuple(cols[j][i] for j in range(2 * n)) for i in range(2 * n))
    theta_r = LinearMap(mat, is_automorphism=True)
    ident = [[Fraction(int(i == j)) for j in range(2 * n)] for i in range(2 * n)]
    assert [list(r) for r in theta_r.compose(theta_r).matrix] == ident
    return ctx, gr, embed, theta_r


class TestCartanDecomposition:
    def test_dimensions(self):
        for typ, kdim in [("A1", 1), ("A2", 3), ("B2", 4), ("G2", 6)]:
            ctx = split_algebra(typ)
            dec = cartan_decomposition(ctx.g, ctx.theta)
            assert dec.k.dim == kdim
            assert dec.k.dim + dec.p.dim == ctx.g.dim
            assert dec.p.dim == ctx.rs.rank + ctx.rs.npos

    def test_bracket_relations(self):
        ctx = split_algebra("A2")
        dec = cartan_decomposition(ctx.g, ctx.theta)
        g = ctx.g
        for i in range(dec.k.dim):
            for j in range(dec.k.dim):
                assert dec.k.contains(g.bracket(list(dec.k.basis[i]), list(dec.k.basis[j])))
        for i in range(dec.k.dim):
            for j in range(dec.p.dim):
                assert dec.p.contains(g.bracket(list(dec.k.basis[i]), list(dec.p.basis[j])))
        for i in range(dec.p.dim):
            for j in range(dec.p.dim):
                assert dec.k.contains(g.bracket(list(dec.p.basis[i]), list(dec.p.basis[j])))


class TestToralSplit:
    def test_split_csa_is_noncompact(self):
        ctx = split_algebra("B2")
        h = Subspace(ctx.g, [ctx.g.basis_vector(0), ctx.g.basis_vector(1)])
        t_i, t_r = toral_split(h, ctx.theta)
        assert t_i.dim == 0
        assert t_r == h

    def test_compact_direction(self):
        ctx = split_algebra("A1")
        x, y = ctx.g.basis_vector(1), ctx.g.basis_vector(2)
        t = Subspace(ctx.g, [[a - b for a, b in zip(x, y)]])
        t_i, t_r = toral_split(t, ctx.theta)
        assert t_i == t
        assert t_r.dim == 0

    def test_mixed(self):
        ctx = split_algebra(("A1", "A1"))
        g, l = ctx.g, 2
        u = [a - b for a, b in zip(g.basis_vector(l + 1), g.basis_vector(l + 3))]
        t = Subspace(g, [g.basis_vector(0), u])
        t_i, t_r = toral_split(t, ctx.theta)
        assert (t_i.dim, t_r.dim) == (1, 1)
        assert t_r.contains(g.basis_vector(0))

    def test_zero(self):
        ctx = split_algebra("A1")
        t_i, t_r = toral_split(Subspace(ctx.g, []), ctx.theta)
        assert (t_i.dim, t_r.dim) == (0, 0)

    def test_not_stable(self):
        ctx = split_algebra("A1")
        h, x = ctx.g.basis_vector(0), ctx.g.basis_vector(1)
        t = Subspace(ctx.g, [[a + b for a, b in zip(h, x)]])
        with pytest.raises(NotThetaStable):
            toral_split(t, ctx.theta)


class TestRealRank:
    def test_split_forms(self):
        for typ in ["A1", "A2", "B2", "G2"]:
            ctx = split_algebra(typ)
            assert real_rank(full(ctx), ctx.theta) == ctx.rs.rank

    def test_compact_subalgebra(self):
        ctx = split_algebra("A2")
        dec = cartan_decomposition(ctx.g, ctx.theta)
        assert real_rank(dec.k, ctx.theta) == 0

    def test_sl2_subalgebra(self):
        ctx = split_algebra("B2")
        assert real_rank(sl2_triple_span(ctx, 0), ctx.theta) == 1

    def test_complex_algebra_as_real(self):
        ctx, gr, embed, theta_r = realified_with_involution("A1")
        a = Subspace(gr, [gr.basis_vector(i) for i in range(gr.dim)])
        assert real_rank(a, theta_r) == 1

    def test_compact_form_inside_realification(self):
        ctx, gr, embed, theta_r = realified_with_involution("A1")
        h, x, y = (ctx.gc.basis_vector(i) for i in range(3))
        su2 = Subspace(gr, [
            embed([I * c for c in h]),
            embed([a - b for a, b in zip(x, y)]),
            embed([I * (a + b) for a, b in zip(x, y)]),
        ])
        assert real_rank(su2, theta_r) == 0

    def test_respan_invariance(self):
        ctx = split_algebra("B2")
        a = full(ctx)
        rows = [list(r) for r in a.basis]
        mixed = [[x + y for x, y in zip(rows[i], rows[(i + 3) % len(rows)])]
                 for i in range(len(rows))]
        b = Subspace(ctx.g, list(reversed(mixed)) + rows)
        assert b == a
        assert real_rank(b, ctx.theta) == real_rank(a, ctx.theta) == 2

    def test_not_stable(self):
        ctx = split_algebra("A1")
        borel = Subspace(ctx.g, [ctx.g.basis_vector(0), ctx.g.basis_vector(1)])
        with pytest.raises(NotThetaStable):
            real_rank(borel, ctx.theta)


class TestMaximallyNoncompactCsa:
    def test_split_form_gives_split_csa(self):
        for typ in ["A2", "B2"]:
            ctx = split_algebra(typ)
            h = maximally_noncompact_csa(full(ctx), ctx.theta)
            assert h == Subspace(ctx.g, [ctx.g.basis_vector(i) for i in range(ctx.rs.rank)])

    def test_split_e6(self):
        ctx = split_algebra("E6")
        h = maximally_noncompact_csa(full(ctx), ctx.theta)
        assert h == Subspace(ctx.g, [ctx.g.basis_vector(i) for i in range(6)])
        _, h_p = toral_split(h, ctx.theta)
        assert h_p.dim == 6

    def test_compact_subalgebra(self):
        ctx = split_algebra("A2")
        dec = cartan_decomposition(ctx.g, ctx.theta)
        h = maximally_noncompact_csa(dec.k, ctx.theta)
        assert h.dim == 1
        assert is_toral(h)
        t_i, t_r = toral_split(h, ctx.theta)
        assert (t_i.dim, t_r.dim) == (1, 0)

    def test_self_centralizing(self):
        ctx = split_algebra("B2")
        a = full(ctx)
        h = maximally_noncompact_csa(a, ctx.theta)
        assert centralizer(a, h) == h


class TestSplitRecord:
    def test_all_roots_real(self):
        ctx = split_algebra("G2")
        rec = split_csa_record(ctx)
        assert rec.noncompact_dim == 2
        assert rec.real_roots == tuple(range(ctx.rs.nroots))
        assert rec.imaginary_roots == ()
        assert rec.compact_imaginary_roots == ()
        assert rec.real_type() == "G2"

    def test_datum_identities(self):
        ctx = split_algebra("B2")
        rec = split_csa_record(ctx)
        d = rec.datum
        g = ctx.gc
        for a in range(ctx.rs.nroots):
            for j, t in enumerate(rec.h.basis):
                img = g.bracket(list(t), list(d.vectors[a]))
                assert img == [d.functionals[a][j] * x for x in d.vectors[a]]
            pair = g.bracket(list(d.vectors[a]), list(d.vectors[ctx.rs.neg(a)]))
            assert pair == list(d.coroots[a])


class TestCayleyTransform:
    def test_sl2(self):
        ctx = split_algebra("A1")
        rec = cayley_transform(split_csa_record(ctx), 0)
        assert rec.h == Subspace(ctx.g, [[Fraction(0), Fraction(1), Fraction(-1)]])
        assert rec.noncompact_dim == 0
        assert rec.real_roots == ()
        assert rec.imaginary_roots == (0, 1)
        assert rec.compact_imaginary_roots == ()

    def test_not_real_root(self):
        ctx = split_algebra("A1")
        rec = cayley_transform(split_csa_record(ctx), 0)
        with pytest.raises(NotRealRoot):
            cayley_transform(rec, 0)

    def test_chain_preserves_rank_and_drops_noncompact_dim(self):
        ctx = split_algebra("G2")
        rec = split_csa_record(ctx)
        first = cayley_transform(rec, 0)
        assert first.noncompact_dim == 1
        assert first.h.dim == 2
        assert is_toral(first.h)
        beta = next(iter(first.real_roots))
        second = cayley_transform(first, beta)
        assert second.noncompact_dim == 0
        assert second.h.dim == 2
        assert is_toral(second.h)

    def test_split_e6_simple_root(self):
        ctx = split_algebra("E6")
        rec = cayley_transform(split_csa_record(ctx), 0)
        assert rec.noncompact_dim == 5
        assert rec.real_type() == "A5"
        assert rec.imaginary_type() == "A1"

    def test_transformed_datum_identities(self):
        ctx = split_algebra("B2")
        rec = cayley_transform(split_csa_record(ctx), 0)
        d = rec.datum
        g = ctx.gc
        rs = ctx.rs
        for a in range(rs.nroots):
            for j, t in enumerate(rec.h.basis):
                img = g.bracket(list(t), list(d.vectors[a]))
                assert img == [d.functionals[a][j] * x for x in d.vectors[a]]
            pair = g.bracket(list(d.vectors[a]), list(d.vectors[rs.neg(a)]))
            assert pair == list(d.coroots[a])
            # the defining property of the coroot: [h_a, x_a] = 2 x_a
            img = g.bracket(list(d.coroots[a]), list(d.vectors[a]))
            assert img == [2 * x for x in d.vectors[a]]
        for a in range(rs.nroots):
            assert d.mu[a] * d.mu[d.theta_perm[a]] == 1

    def test_classification_partitions(self):
        ctx = split_algebra("B2")
        rec = cayley_transform(split_csa_record(ctx), 0)
        real, imaginary, compact = rec.root_classification
        assert set(compact) <= set(imaginary)
        assert not set(real) & set(imaginary)
        n_complex = ctx.rs.nroots - len(real) - len(imaginary)
        assert n_complex >= 0 and n_complex % 2 == 0


class TestEnumerate:
    def test_sl2(self):
        recs = enumerate_theta_stable_csas(split_algebra("A1"))
        assert [r.noncompact_dim for r in recs] == [1, 0]

    def test_a2(self):
        recs = enumerate_theta_stable_csas(split_algebra("A2"))
        assert [r.noncompact_dim for r in recs] == [2, 1]
        assert [r.imaginary_type() for r in recs] == ["", "A1"]

    def test_b2(self):
        ctx = split_algebra("B2")
        recs = enumerate_theta_stable_csas(ctx)
        assert [r.noncompact_dim for r in recs] == [2, 1, 1, 0]
        # the two middle classes come from a long and a short root
        lens = sorted(ctx.rs.lengths[r.strongly_orthogonal_set[0]] for r in recs[1:3])
        assert lens[0] != lens[1]
        assert recs[3].imaginary_type() == "B2"
        assert recs[3].compact_imaginary_type() == "A1"

    def test_g2(self):
        recs = enumerate_theta_stable_csas(split_algebra("G2"))
        assert [r.noncompact_dim for r in recs] == [2, 1, 1, 0]
        assert recs[3].compact_imaginary_type() == "2A1"

    def test_records_are_cartan_subalgebras(self):
        ctx = split_algebra("B2")
        a = full(ctx)
        for rec in enumerate_theta_stable_csas(ctx):
            assert is_toral(rec.h)
            assert centralizer(a, rec.h) == rec.h
            t_i, t_r = toral_split(rec.h, ctx.theta)
            assert t_r.dim == rec.noncompact_dim
            assert t_i.dim + t_r.dim == rec.h.dim

    def test_restricted_to_subsystem(self):
        ctx = split_algebra("B2")
        rs = ctx.rs
        long_root = max(range(rs.npos), key=lambda a: (rs.height(a), rs.lengths[a]))
        sub = close_subsystem(rs, [long_root])
        recs = enumerate_theta_stable_csas(ctx, sub)
        assert [r.noncompact_dim for r in recs] == [2, 1]

    def test_rejects_non_closed_subset(self):
        ctx = split_algebra("B2")
        with pytest.raises(AssertionError):
            enumerate_theta_stable_csas(ctx, (0,))


class TestSplitE6:
    def test_five_classes_with_published_invariants(self):
        recs = enumerate_theta_stable_csas(split_algebra("E6"))
        table = [(r.noncompact_dim, r.real_type(), r.imaginary_type(),
                  r.compact_imaginary_type()) for r in recs]
        assert table == [
            (6, "E6", "", ""),
            (5, "A5", "A1", ""),
            (4, "A3", "2A1", ""),
            (3, "A1", "3A1", ""),
            (2, "", "D4", "4A1"),
        ]

    def test_root_count_partition(self):
        ctx = split_algebra("E6")
        for rec in enumerate_theta_stable_csas(ctx):
            real, imaginary, _ = rec.root_classification
            n_complex = ctx.rs.nroots - len(real) - len(imaginary)
            assert len(real) % 2 == 0 and len(imaginary) % 2 == 0
            assert n_complex % 4 == 0  # complex roots come in quadruples

    def test_strongly_orthogonal_sets_grow_by_one(self):
        recs = enumerate_theta_stable_csas(split_algebra("E6"))
        assert [len(r.strongly_orthogonal_set) for r in recs] == [0, 1, 2, 3, 4]
