"""Structure-constant Lie algebras over Q and Q(i).

Provides split real forms with their Cartan involution, complexification with
the conjugation map, subalgebra linear algebra (centralizers, normalizers,
derived algebras, Killing forms), toral subalgebras, and real-form
fingerprints used to render subalgebra names such as "sl3(R)" or "su(1,2)".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    GaussianRational,
    in_row_space,
    is_rational_scalar,
    kernel_basis,
    matvec,
    reduce_against,
    rref,
    solve_linear,
    symmetric_signature,
)
from .rootdata import RootSystem, StructureConstants


class AmbientMismatch(ValueError):
    pass


class NotASubalgebra(ValueError):
    pass


class SeedNotToral(ValueError):
    pass


class NotSemisimple(ValueError):
    pass


def _fr(x):
    return x if isinstance(x, (Fraction, GaussianRational)) else Fraction(x)


class LieAlgebra:
    """Lie algebra given by structure constants on a fixed basis."""

    def __init__(self, dim, table, basis_labels, field="Q"):
        self.dim = dim
        self.table = table              # dict (i, j) -> dict k -> scalar
        self.basis_labels = tuple(basis_labels)
        self.field = field

    def bracket_basis(self, i, j):
        return self.table.get((i, j), {})

    def bracket(self, u, v):
        out = [Fraction(0)] * self.dim
        for i, ci in enumerate(u):
            if not ci:
                continue
            for j, cj in enumerate(v):
                if not cj:
                    continue
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = out[k] + ci * cj * c
        return out

    def ad(self, u):
        """Matrix of x -> [u, x] on the basis (columns indexed by basis)."""
        cols = []
        for j in range(self.dim):
            col = [Fraction(0)] * self.dim
            for i, ci in enumerate(u):
                if not ci:
                    continue
                for k, c in self.table.get((i, j), {}).items():
                    col[k] = col[k] + ci * c
            cols.append(col)
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def basis_vector(self, i):
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def zero(self):
        return [Fraction(0)] * self.dim


@dataclass(frozen=True)
class LinearMap:
    matrix: tuple
    is_automorphism: bool = False
    is_conjugate_linear: bool = False

    def apply(self, vec):
        if self.is_conjugate_linear:
            vec = [x.conjugate() if isinstance(x, GaussianRational) else x for x in vec]
        return matvec([list(r) for r in self.matrix], list(vec))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.is_conjugate_linear:
            m = [[x.conjugate() if isinstance(x, GaussianRational) else x for x in row]
                 for row in self.matrix]
        else:
            m = [list(r) for r in self.matrix]
        n = len(m)
        om = other.matrix
        prod = [[sum((m[i][k] * om[k][j] for k in range(n)), Fraction(0))
                 for j in range(n)] for i in range(n)]
        return LinearMap(tuple(tuple(r) for r in prod),
                         is_automorphism=self.is_automorphism and other.is_automorphism,
                         is_conjugate_linear=self.is_conjugate_linear != other.is_conjugate_linear)


class Subspace:
    """Subspace of a Lie algebra, canonicalized by reduced row echelon form."""

    def __init__(self, ambient: LieAlgebra, vectors):
        self.ambient = ambient
        red, piv = rref([list(v) for v in vectors], ambient.dim)
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        return in_row_space([list(r) for r in self.basis], list(self.pivots), list(vec))

    def reduce(self, vec):
        return reduce_against([list(r) for r in self.basis], list(self.pivots), list(vec))

    def coords(self, vec):
        """Coordinates of vec in the echelon basis, or None."""
        if not self.basis:
            return [] if not any(vec) else None
        # the basis is fully reduced, so coefficients sit in the pivot columns
        cs = [vec[p] for p in self.pivots]
        res = list(vec)
        for c, b in zip(cs, self.basis):
            if c:
                res = [x - c * y for x, y in zip(res, b)]
        return cs if not any(res) else None

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient is other.ambient \
            and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim})"


def _check_same_ambient(a, s):
    if a.ambient is not s.ambient:
        raise AmbientMismatch("subspaces of different algebras")


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def split_form(rs: RootSystem, sc: StructureConstants):
    """Split real form on basis h_1..h_l, x_alpha, with its Cartan involution.

    Brackets: [h_i,h_j]=0, [h_i,x_a]=<a,a_i>x_a, [x_a,x_-a]=h_a,
    [x_a,x_b]=N(a,b)x_{a+b}; theta(h)=-h, theta(x_a)=-x_{-a}.
    """
    l, nr = rs.rank, rs.nroots
    dim = l + nr
    table = {}

    def put(i, j, k, c):
        if c:
            table.setdefault((i, j), {})[k] = _fr(c)

    for a in range(nr):
        beta = rs.roots[a]
        for i in range(l):
            c = sum(cc * rs.cartan[k][i] for k, cc in enumerate(beta))
            put(i, l + a, l + a, c)
            put(l + a, i, l + a, -c)
    for a in range(nr):
        for b in range(nr):
            if b == rs.neg(a):
                for k, c in enumerate(_coroot(rs, a)):
                    put(l + a, l + b, k, c)
            else:
                s = rs.sum_index(a, b)
                if s is not None:
                    put(l + a, l + b, l + s, sc.value(a, b))
    labels = [f"h{i+1}" for i in range(l)] + [f"x{a}" for a in range(nr)]
    g = LieAlgebra(dim, table, labels, field="Q")
    th = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(l):
        th[i][i] = Fraction(-1)
    for a in range(nr):
        th[l + rs.neg(a)][l + a] = Fraction(-1)
    theta = LinearMap(tuple(tuple(r) for r in th), is_automorphism=True)
    return g, theta


def _coroot(rs: RootSystem, a):
    la = rs.lengths[a]
    out = []
    for k, c in enumerate(rs.roots[a]):
        v = Fraction(c) * rs.lengths[rs.simple_indices[k]] / la
        assert v.denominator == 1
        out.append(int(v))
    return out


def complexify(g: LieAlgebra):
    """Same structure table viewed over Q(i), with the conjugation fixing g."""
    gc = LieAlgebra(g.dim, g.table, g.basis_labels, field="Qi")
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(g.dim)) for i in range(g.dim))
    sigma = LinearMap(ident, is_automorphism=True, is_conjugate_linear=True)
    return gc, sigma


def realify(gc: LieAlgebra):
    """View a Q(i)-algebra as a Q-algebra of doubled dimension.

    Basis order: b_1..b_n, i*b_1..i*b_n. Returns the real algebra and the
    coordinate embedding Q(i)^n -> Q^{2n}. Real subalgebras (e.g. compact
    forms, sigma-fixed points) keep their real structure only here; over
    Q(i) their span collapses to the complex subalgebra.
    """
    n = gc.dim
    table = {}

    def parts(c):
        if isinstance(c, GaussianRational):
            return c.re, c.im
        return Fraction(c), Fraction(0)

    for (j, k), entry in gc.table.items():
        for t, c in entry.items():
            a, b = parts(c)
            # [e_j, e_k] = a e_t + b f_t ; [e_j, f_k] = [f_j, e_k] = -b e_t + a f_t
            # [f_j, f_k] = -a e_t - b f_t
            for (r, s, ea, fa) in ((j, k, a, b), (j, n + k, -b, a),
                                   (n + j, k, -b, a), (n + j, n + k, -a, -b)):
                if ea:
                    table.setdefault((r, s), {})[t] = table.setdefault((r, s), {}).get(t, Fraction(0)) + ea
                if fa:
                    table.setdefault((r, s), {})[n + t] = table.setdefault((r, s), {}).get(n + t, Fraction(0)) + fa
    for key in list(table):
        table[key] = {t: c for t, c in table[key].items() if c}
        if not table[key]:
            del table[key]
    labels = list(gc.basis_labels) + [f"i*{x}" for x in gc.basis_labels]
    gr = LieAlgebra(2 * n, table, labels, field="Q")

    def embed(vec):
        re, im = [], []
        for c in vec:
            a, b = parts(c)
            re.append(a)
            im.append(b)
        return re + im

    return gr, embed


# ---------------------------------------------------------------------------
# Subalgebra linear algebra
# ---------------------------------------------------------------------------


def _solve_membership_conditions(a: Subspace, condition_vectors):
    """Kernel of c -> sum_k c_k * condition_vectors[k], as a subspace of a.

    condition_vectors[k] is the concatenated condition evaluated on the k-th
    basis vector of a; the kernel coefficients are recombined into ambient
    vectors.
    """
    if a.dim == 0:
        return Subspace(a.ambient, [])
    ncond = len(condition_vectors[0])
    eqs = [[condition_vectors[k][t] for k in range(a.dim)] for t in range(ncond)]
    sols = kernel_basis(eqs, a.dim) if ncond else \
        [[Fraction(int(i == k)) for i in range(a.dim)] for k in range(a.dim)]
    return Subspace(a.ambient, [_combine(a, c) for c in sols])


def centralizer(a: Subspace, s: Subspace) -> Subspace:
    """Elements of a whose bracket with all of s vanishes."""
    _check_same_ambient(a, s)
    g = a.ambient
    conds = []
    for k in range(a.dim):
        col = []
        for j in range(s.dim):
            col.extend(g.bracket(list(a.basis[k]), list(s.basis[j])))
        conds.append(col)
    return _solve_membership_conditions(a, conds)


def normalizer(a: Subspace, s: Subspace) -> Subspace:
    """Elements x of a with [x, s] contained in s."""
    _check_same_ambient(a, s)
    g = a.ambient
    conds = []
    for k in range(a.dim):
        col = []
        for j in range(s.dim):
            col.extend(s.reduce(g.bracket(list(a.basis[k]), list(s.basis[j]))))
        conds.append(col)
    return _solve_membership_conditions(a, conds)


def _combine(sub: Subspace, coeffs):
    g = sub.ambient
    out = g.zero()
    for c, row in zip(coeffs, sub.basis):
        if c:
            for k, x in enumerate(row):
                if x:
                    out[k] = out[k] + c * x
    return out


def is_subalgebra(s: Subspace) -> bool:
    for i in range(s.dim):
        for j in range(i + 1, s.dim):
            if not s.contains(s.ambient.bracket(list(s.basis[i]), list(s.basis[j]))):
                return False
    return True


def derived_subalgebra(s: Subspace) -> Subspace:
    if not is_subalgebra(s):
        raise NotASubalgebra("input is not bracket-closed")
    g = s.ambient
    vecs = []
    for i in range(s.dim):
        for j in range(i + 1, s.dim):
            vecs.append(g.bracket(list(s.basis[i]), list(s.basis[j])))
    return Subspace(g, vecs)


def _adjoint_rep(s: Subspace):
    """ad matrices of the basis of s acting on s in its own coordinates."""
    g = s.ambient
    mats = []
    for i in range(s.dim):
        cols = []
        for j in range(s.dim):
            v = g.bracket(list(s.basis[i]), list(s.basis[j]))
            c = s.coords(v)
            if c is None:
                raise NotASubalgebra("input is not bracket-closed")
            cols.append(c)
        mats.append([[cols[j][k] for j in range(s.dim)] for k in range(s.dim)])
    return mats


def killing_form(s: Subspace):
    """Killing form of s as an algebra in its own right, on its echelon basis."""
    mats = _adjoint_rep(s)
    n = s.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            tr = Fraction(0)
            mi, mj = mats[i], mats[j]
            for r in range(n):
                for c in range(n):
                    tr = tr + mi[r][c] * mj[c][r]
            out[i][j] = out[j][i] = tr
    return out


def killing_signature(s: Subspace):
    kf = killing_form(s)
    rows = []
    for row in kf:
        out = []
        for x in row:
            if not is_rational_scalar(x):
                raise NotASubalgebra("signature requires a rational Killing form")
            out.append(Fraction(x.re) if isinstance(x, GaussianRational) else Fraction(x))
        rows.append(out)
    return symmetric_signature(rows)


def subalgebra_closure(g: LieAlgebra, gens) -> Subspace:
    cur = Subspace(g, [list(v) for v in gens])
    while True:
        new = []
        for i in range(cur.dim):
            for j in range(i + 1, cur.dim):
                v = g.bracket(list(cur.basis[i]), list(cur.basis[j]))
                if not cur.contains(v):
                    new.append(v)
        if not new:
            return cur
        cur = Subspace(g, [list(b) for b in cur.basis] + new)


def is_nilpotent_element(g: LieAlgebra, e) -> bool:
    """True iff ad(e) is nilpotent, by the image-chain of ad powers."""
    a = g.ad(list(e))
    space = [g.basis_vector(i) for i in range(g.dim)]
    red, piv = rref(space, g.dim)
    while red:
        img = [matvec(a, list(v)) for v in red]
        red2, piv2 = rref(img, g.dim)
        if (tuple(map(tuple, red2)), tuple(piv2)) == (tuple(map(tuple, red)), tuple(piv)):
            return False
        red, piv = red2, piv2
    return True


# -- polynomial helpers over Q / Q(i) (coefficient lists, low degree first) --


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse() if isinstance(b[-1], GaussianRational) else Fraction(1) / b[-1]
    while len(a) >= len(b) and any(a):
        _poly_trim(a)
        if len(a) < len(b):
            break
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] = a[k + i] - c * bc
        _poly_trim(a)
    return q, a


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_trim(r)
    if a:
        inv = a[-1].inverse() if isinstance(a[-1], GaussianRational) else Fraction(1) / a[-1]
        a = [c * inv for c in a]
    return a


def _poly_deriv(p):
    return [c * k for k, c in enumerate(p)][1:]


def _poly_eval_matrix(p, m):
    n = len(m)
    out = [[Fraction(0)] * n for _ in range(n)]
    power = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in p:
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] = out[i][j] + c * power[i][j]
        power = _matmul(power, m)
    return out


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(m):
            c = ai[k]
            if c:
                bk = b[k]
                oi = out[i]
                for j in range(p):
                    if bk[j]:
                        oi[j] = oi[j] + c * bk[j]
    return out


def minimal_polynomial(m):
    """Monic minimal polynomial of an exact matrix, by Krylov iteration."""
    n = len(m)
    if n == 0:
        return [Fraction(0), Fraction(1)]
    f = [Fraction(1)]
    for start in range(n):
        v = [Fraction(int(i == start)) for i in range(n)]
        w = _apply_poly(f, m, v)
        if not any(w):
            continue
        seq = [w]
        rows = [list(w)]
        red, piv = rref([list(w)], n)
        while True:
            w = matvec(m, list(seq[-1]))
            if in_row_space(red, piv, list(w)):
                break
            seq.append(w)
            rows.append(list(w))
            red, piv = rref([list(r) for r in rows], n)
        # dependence: w = sum c_k seq[k]
        mat = [[seq[k][i] for k in range(len(seq))] for i in range(n)]
        sol = solve_linear(mat, list(w))
        ann = [-c for c in sol] + [Fraction(1)]
        f = _poly_mul(f, ann)
    return f


def _apply_poly(p, m, v):
    out = [Fraction(0)] * len(v)
    cur = list(v)
    for c in p:
        if c:
            out = [o + c * x for o, x in zip(out, cur)]
        cur = matvec(m, cur)
    return out


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def is_semisimple_matrix(m) -> bool:
    f = minimal_polynomial(m)
    g = _poly_gcd(f, _poly_deriv(f))
    return len(g) == 1


def semisimple_part(m):
    """Semisimple part of the Jordan decomposition, by Newton iteration on the
    squarefree part of the minimal polynomial (no factorization required)."""
    f = minimal_polynomial(m)
    g0 = _poly_gcd(f, _poly_deriv(f))
    g, _ = _poly_divmod(f, g0)
    if len(g0) == 1:
        return [list(r) for r in m]
    b = [list(r) for r in m]
    n = len(m)
    while True:
        gb = _poly_eval_matrix(g, b)
        if not any(any(row) for row in gb):
            return b
        dgb = _poly_eval_matrix(_poly_deriv(g), b)
        # b -= g(b) * dg(b)^-1 ; solve dgb * X = gb
        x = _matrix_solve(dgb, gb)
        b = [[b[i][j] - x[i][j] for j in range(n)] for i in range(n)]


def _matrix_solve(a, rhs):
    """Solve a X = rhs for X (a invertible), columnwise."""
    n = len(a)
    cols = []
    for j in range(n):
        col = solve_linear([list(r) for r in a], [rhs[i][j] for i in range(n)])
        assert col is not None
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Toral subalgebras
# ---------------------------------------------------------------------------


def is_toral(t: Subspace) -> bool:
    """Abelian with every element ad-semisimple (basis check suffices for
    commuting families: squarefree minimal polynomial certifies each)."""
    g = t.ambient
    for i in range(t.dim):
        for j in range(i + 1, t.dim):
            if any(g.bracket(list(t.basis[i]), list(t.basis[j]))):
                return False
    for i in range(t.dim):
        if not is_semisimple_matrix(g.ad(list(t.basis[i]))):
            return False
    return True


def maximal_toral(a: Subspace, seed: Subspace | None = None) -> Subspace:
    """Cartan subalgebra of a reductive-in-g subalgebra a, containing seed."""
    g = a.ambient
    if seed is None:
        t = Subspace(g, [])
    else:
        _check_same_ambient(a, seed)
        t = seed
        if not is_toral(t):
            raise SeedNotToral("seed is not toral")
    while True:
        c = centralizer(a, t) if t.dim else a
        if c.dim == t.dim:
            return t
        # the center of c extends t whenever it is bigger and semisimple-acting
        z = centralizer(c, c)
        grown = None
        if z.dim > t.dim:
            for b in z.basis:
                if t.contains(list(b)):
                    continue
                if is_semisimple_matrix(g.ad(list(b))):
                    t2 = Subspace(g, [list(r) for r in t.basis] + [list(b)])
                    if is_toral(t2):
                        grown = t2
                        break
        if grown is None:
            m = derived_subalgebra(c)
            grown = _grow_toral_from_semisimple(t, m)
        if grown is None:
            return t
        t = grown


def _grow_toral_from_semisimple(t: Subspace, m: Subspace):
    """Extend t by a semisimple element of the semisimple subalgebra m.

    Works in m's own coordinates: takes candidate elements, extracts the
    semisimple part of the intrinsic adjoint Jordan decomposition, and maps
    it back to the ambient algebra.
    """
    if m.dim == 0:
        return None
    g = m.ambient
    ads = _adjoint_rep(m)
    n = m.dim
    cands = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = [Fraction(0)] * n
            v[i] = v[j] = Fraction(1)
            cands.append(v)
    for c in cands:
        mat = [[sum((c[k] * ads[k][r][col] for k in range(n) if c[k]), Fraction(0))
                for col in range(n)] for r in range(n)]
        s_mat = semisimple_part(mat)
        if not any(any(row) for row in s_mat):
            continue
        # solve sum y_k ad_m(b_k) = s_mat for intrinsic coordinates y
        rows, rhs = [], []
        for r in range(n):
            for col in range(n):
                row = [ads[k][r][col] for k in range(n)]
                if any(row) or s_mat[r][col]:
                    rows.append(row)
                    rhs.append(s_mat[r][col])
        y = solve_linear(rows, rhs)
        if y is None:
            continue
        vec = _combine(m, y)
        if not any(vec) or t.contains(vec):
            continue
        t2 = Subspace(g, [list(b) for b in t.basis] + [vec])
        if is_toral(t2):
            return t2
    return None


# ---------------------------------------------------------------------------
# Ideal decomposition and real-form fingerprints
# ---------------------------------------------------------------------------


def ideal_closure(s: Subspace, vec) -> Subspace:
    """Smallest ideal of s containing vec."""
    g = s.ambient
    cur = Subspace(g, [list(vec)])
    while True:
        new = []
        for i in range(cur.dim):
            for j in range(s.dim):
                w = g.bracket(list(s.basis[j]), list(cur.basis[i]))
                if not cur.contains(w):
                    new.append(w)
        if not new:
            return cur
        cur = Subspace(g, [list(b) for b in cur.basis] + new)


def _killing_orthogonal(s: Subspace, i_sub: Subspace) -> Subspace:
    """Killing-orthogonal complement of the ideal i_sub inside s."""
    kf = killing_form(s)
    eqs = []
    for b in i_sub.basis:
        ic = s.coords(list(b))
        eqs.append([sum((ic[k] * kf[k][j] for k in range(s.dim)), Fraction(0))
                    for j in range(s.dim)])
    sols = kernel_basis(eqs, s.dim)
    return Subspace(s.ambient, [_combine(s, c) for c in sols])


def _centroid_dimension_and_witness(s: Subspace):
    """Dimension of the commutant of ad(s) on s, with a non-scalar witness.

    Propagates J from a single ideal-generator: J(b1) = v free, and
    J([x, u]) = [x, J(u)] extends J while collecting linear constraints on v.
    Returns (dim, witness_matrix_or_None); witness maps s-coords to s-coords.
    """
    g = s.ambient
    n = s.dim
    gen = None
    for i in range(n):
        if ideal_closure(s, list(s.basis[i])).dim == n:
            gen = i
            break
    if gen is None:
        for i in range(n):
            for j in range(i + 1, n):
                v = [x + y for x, y in zip(s.basis[i], s.basis[j])]
                if ideal_closure(s, v).dim == n:
                    gen = ("sum", i, j)
                    break
            if gen is not None:
                break
    assert gen is not None, "no single ideal-generator found"
    if isinstance(gen, int):
        g0 = list(s.basis[gen])
    else:
        _, i, j = gen
        g0 = [x + y for x, y in zip(s.basis[i], s.basis[j])]

    ads = []
    for k in range(n):
        cols = [s.coords(g.bracket(list(s.basis[k]), list(s.basis[j]))) for j in range(n)]
        ads.append([[cols[j][r] for j in range(n)] for r in range(n)])

    # known span, carried as s-coordinate rows with attached J-matrices M (J(u) = M v)
    g0c = s.coords(g0)
    span_rows = [list(g0c)]
    span_mats = [[[Fraction(int(p == q)) for q in range(n)] for p in range(n)]]
    red, piv = rref([list(g0c)], n)
    constraints = []
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            u = span_rows[idx]
            mu = span_mats[idx]
            for k in range(n):
                w = matvec(ads[k], list(u))
                mw = _matmul(ads[k], mu)
                coeffs = _express(span_rows, w, n)
                if coeffs is not None:
                    comb = [[Fraction(0)] * n for _ in range(n)]
                    for c, mat in zip(coeffs, span_mats):
                        if c:
                            for p in range(n):
                                for q in range(n):
                                    comb[p][q] = comb[p][q] + c * mat[p][q]
                    for p in range(n):
                        row = [mw[p][q] - comb[p][q] for q in range(n)]
                        if any(row):
                            constraints.append(row)
                else:
                    span_rows.append(list(w))
                    span_mats.append(mw)
                    nxt.append(len(span_rows) - 1)
                    red, piv = rref([list(r) for r in span_rows], n)
        frontier = nxt
    sols = kernel_basis(constraints, n) if constraints else \
        [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    dim = len(sols)
    witness = None
    for v in sols:
        j_mat = _assemble_j(span_rows, span_mats, v, n)
        if j_mat is not None and not _is_scalar_matrix(j_mat):
            witness = j_mat
            break
    return dim, witness


def _express(rows, w, n):
    mat = [[rows[k][i] for k in range(len(rows))] for i in range(n)]
    return solve_linear(mat, list(w))


def _assemble_j(span_rows, span_mats, v, n):
    """Matrix of J on s-coordinates given the free vector v."""
    cols = {}
    red, piv = rref([list(r) for r in span_rows], n)
    for u, mu in zip(span_rows, span_mats):
        ju = matvec(mu, list(v))
        cols[tuple(u)] = ju
    # solve J on the standard basis: express e_i in span_rows
    jm = []
    for i in range(n):
        e = [Fraction(int(k == i)) for k in range(n)]
        coeffs = _express(span_rows, e, n)
        if coeffs is None:
            return None
        col = [Fraction(0)] * n
        for c, u in zip(coeffs, span_rows):
            if c:
                ju = cols[tuple(u)]
                col = [a + c * b for a, b in zip(col, ju)]
        jm.append(col)
    return [[jm[j][i] for j in range(n)] for i in range(n)]


def _is_scalar_matrix(m):
    n = len(m)
    d = m[0][0]
    for i in range(n):
        for j in range(n):
            if m[i][j] != (d if i == j else 0):
                return False
    return True


def simple_ideals(s: Subspace):
    """Decomposition of a semisimple subalgebra into its minimal ideals."""
    kf = killing_form(s)
    if len(kernel_basis([list(r) for r in kf], s.dim)) != 0:
        raise NotSemisimple("Killing form is degenerate")
    blocks = [s]
    # cheap refinement: ideals generated by basis vectors split most inputs
    changed = True
    while changed:
        changed = False
        out = []
        for b in blocks:
            split = _try_split(b)
            if split is None:
                out.append(b)
            else:
                out.extend(split)
                changed = True
        blocks = out
    # certify the remaining blocks via the centroid
    final = []
    todo = list(blocks)
    while todo:
        b = todo.pop()
        cdim, witness = _centroid_dimension_and_witness(b)
        if cdim == 1:
            final.append((b, "real"))
            continue
        if witness is None:
            final.append((b, "real"))
            continue
        f = minimal_polynomial(witness)
        pieces = _split_by_eigenvalues(b, witness, f)
        if pieces is None:
            # irreducible quadratic: negative discriminant <=> complex structure
            if len(f) == 3:
                disc = f[1] * f[1] - 4 * f[2] * f[0]
                if disc < 0:
                    final.append((b, "complex"))
                    continue
            raise NotSemisimple("unrecognized centroid structure")
        todo.extend(pieces)
    final.sort(key=lambda p: (-p[0].dim, p[0].basis))
    return final


def _try_split(b: Subspace):
    if b.dim <= 3:
        return None
    for i in range(b.dim):
        ic = ideal_closure(b, list(b.basis[i]))
        if 0 < ic.dim < b.dim:
            comp = _killing_orthogonal(b, ic)
            assert ic.dim + comp.dim == b.dim
            return [ic, comp]
    return None


def _split_by_eigenvalues(b: Subspace, witness, f):
    """Split b along rational eigenvalues of a centroid element, if any."""
    roots = _rational_roots(f)
    if not roots:
        return None
    lam = roots[0]
    n = b.dim
    shifted = [[witness[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    ker = kernel_basis([list(r) for r in shifted], n)
    e1 = Subspace(b.ambient, [_combine(b, c) for c in ker])
    e2 = _killing_orthogonal(b, e1)
    if e1.dim == 0 or e1.dim == n:
        return None
    return [e1, e2]


def _rational_roots(f):
    from sympy import Poly, Rational, Symbol
    x = Symbol("x")
    p = Poly(sum(Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(f)), x)
    out = []
    for r in p.all_roots():
        if r.is_rational:
            out.append(Fraction(int(r.p), int(r.q)))
    return out


_CHEVALLEY_DIMS = {
    ("A", n): n * (n + 2) for n in range(1, 9)
}
_CHEVALLEY_DIMS.update({("B", n): n * (2 * n + 1) for n in range(2, 9)})
_CHEVALLEY_DIMS.update({("C", n): n * (2 * n + 1) for n in range(2, 9)})
_CHEVALLEY_DIMS.update({("D", n): n * (2 * n - 1) for n in range(3, 9)})
_CHEVALLEY_DIMS.update({("E", 6): 78, ("E", 7): 133, ("E", 8): 248,
                        ("F", 4): 52, ("G", 2): 14})


def _complex_type_from_dim_rank(dim, rank):
    hits = [t for t, d in _CHEVALLEY_DIMS.items()
            if d == dim and t[1] == rank]
    # canonical identifications: D3 = A3, B2 = C2
    canon = set()
    for fam, rk in hits:
        if (fam, rk) == ("D", 3):
            fam, rk = "A", 3
        if (fam, rk) == ("C", 2):
            fam, rk = "B", 2
        canon.add((fam, rk))
    if len(canon) == 1:
        fam, rk = canon.pop()
        return f"{fam}{rk}"
    return None


def real_form_fingerprint(s: Subspace, theta: LinearMap | None = None):
    """Per-ideal (complexified type, realness class, Killing signature).

    The complexified type of a complex-as-real ideal doubles, e.g. sl2(C)
    reports "2A1". Unknown types are reported as "dim<d>rank<r>".
    """
    ideals = simple_ideals(s)
    out = []
    for ideal, realness in ideals:
        sig = killing_signature(ideal)
        t = maximal_toral(ideal)
        rank = t.dim
        if realness == "complex":
            base = _complex_type_from_dim_rank(ideal.dim // 2, rank // 2)
            ctype = f"2{base}" if base else f"dim{ideal.dim}rank{rank}"
        else:
            base = _complex_type_from_dim_rank(ideal.dim, rank)
            ctype = base if base else f"dim{ideal.dim}rank{rank}"
        out.append((ctype, realness, sig))
    return tuple(sorted(out))


# name lookup: (complexified type, realness, signature) -> standard label
_FORM_NAMES = {}


def _install_names():
    # Later entries override earlier ones: several classical real forms are
    # isomorphic (su(1,1) = sl2(R), so(5,1) = sl2(H), so(3,3) = sl4(R), ...)
    # and the preferred table-style name must win.
    def put(ctype, realness, sig, name):
        _FORM_NAMES[(ctype, realness, sig)] = name

    # sp(2n, R): k = u(n)
    for n in range(2, 5):
        dim = n * (2 * n + 1)
        k = n * n
        typ = f"C{n}" if n >= 3 else "B2"
        put(typ, "real", (dim - k, k, 0), f"sp({2*n},R)")
    # sp(p, q): k = sp(p) + sp(q)
    for n in range(2, 5):
        dim = n * (2 * n + 1)
        for p in range(0, n // 2 + 1):
            q = n - p
            k = p * (2 * p + 1) + q * (2 * q + 1)
            typ = f"C{n}" if n >= 3 else "B2"
            put(typ, "real", (dim - k, k, 0),
                f"sp({n})" if p == 0 else f"sp({p},{q})")
    # so*(2n): k = u(n)
    for n in range(3, 9):
        dim = n * (2 * n - 1)
        k = n * n
        typ = f"D{n}" if n > 3 else "A3"
        put(typ, "real", (dim - k, k, 0), f"so*({2*n})")
    # su(p, q): k = s(u(p) + u(q))
    for n in range(2, 9):
        for p in range(0, n // 2 + 1):
            q = n - p
            k = p * p + q * q - 1
            put(f"A{n-1}", "real", (2 * p * q, k, 0),
                f"su({n})" if p == 0 else f"su({p},{q})")
    # so(p, q), p + q odd (type B) and even (type D)
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
            put(typ, "real", (dim - k, k, 0),
                f"so({total})" if p == 0 else f"so({p},{q})")
    # sl(n, H) = su*(2n): k = sp(n)
    for m in range(1, 5):
        n = 2 * m
        dim = n * n - 1
        k = m * (2 * m + 1)
        put(f"A{n-1}", "real", (dim - k, k, 0), f"sl{m}(H)" if m > 1 else "su(2)")
    # sl(n, R): k = so(n)
    for n in range(2, 9):
        dim = n * n - 1
        k = n * (n - 1) // 2
        put(f"A{n-1}", "real", (dim - k, k, 0), f"sl{n}(R)")
    # complex simple viewed as real: signature (d, d) with d the complex dim
    for (fam, rk), d in _CHEVALLEY_DIMS.items():
        cf, cr = fam, rk
        if (cf, cr) == ("D", 3):
            cf, cr = "A", 3
        if (cf, cr) == ("C", 2):
            cf, cr = "B", 2
        label = {"A": f"sl{rk+1}(C)", "B": f"so{2*rk+1}(C)", "C": f"sp{2*rk}(C)",
                 "D": f"so{2*rk}(C)", "E": f"e{rk}(C)", "F": "f4(C)",
                 "G": "g2(C)"}[fam]
        _FORM_NAMES.setdefault((f"2{cf}{cr}", "complex", (d, d, 0)), label)
    # exceptional real forms
    put("G2", "real", (8, 6, 0), "g2(2)")
    put("G2", "real", (0, 14, 0), "g2(-14)")
    put("F4", "real", (28, 24, 0), "f4(4)")
    put("F4", "real", (16, 36, 0), "f4(-20)")
    put("F4", "real", (0, 52, 0), "f4(-52)")
    put("E6", "real", (42, 36, 0), "e6(6)")
    put("E6", "real", (40, 38, 0), "e6(2)")
    put("E6", "real", (32, 46, 0), "e6(-14)")
    put("E6", "real", (26, 52, 0), "e6(-26)")
    put("E6", "real", (0, 78, 0), "e6(-78)")
    put("E7", "real", (70, 63, 0), "e7(7)")
    put("E7", "real", (64, 69, 0), "e7(-5)")
    put("E7", "real", (54, 79, 0), "e7(-25)")
    put("E7", "real", (0, 133, 0), "e7(-133)")
    put("E8", "real", (128, 120, 0), "e8(8)")
    put("E8", "real", (112, 136, 0), "e8(-24)")
    # rank-three unitary forms keep their unitary names over the so(p,6-p)
    # aliases installed above
    put("A3", "real", (8, 7, 0), "su(2,2)")
    put("A3", "real", (6, 9, 0), "su(1,3)")
    put("E8", "real", (0, 248, 0), "e8(-248)")


_install_names()


def real_form_name(fingerprint) -> str:
    """Standard label for a fingerprint tuple; raw triples when unknown."""
    names = []
    for ideal_fp in fingerprint:
        names.append(_FORM_NAMES.get(ideal_fp, str(ideal_fp)))
    names.sort()
    out = []
    i = 0
    while i < len(names):
        j = i
        while j < len(names) and names[j] == names[i]:
            j += 1
        mult = j - i
        out.append((f"{mult}" if mult > 1 else "") + names[i])
        i = j
    return "+".join(out)
