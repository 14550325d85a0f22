"""Exact field arithmetic over Q and Q(i), and integer-lattice linear algebra.

Every computation in this package is carried out over the rationals or the
Gaussian rationals; no floating point anywhere. Rational numbers are stdlib
``fractions.Fraction`` (already reduced, positive denominator). ``GaussianRational``
adds the imaginary unit. Matrices are exact, with rank / kernel / solve and a row
Hermite normal form that returns the unimodular transform.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Rational = Fraction


class ZeroEntry(ValueError):
    """A multiplicative system was given a zero right-hand side entry."""


class GaussianRational:
    """An element a + b*i of Q(i), with a, b exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    # -- comparisons and hashing ------------------------------------------

    def __eq__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"

    def is_rational(self) -> bool:
        return self.im == 0


I = GaussianRational(0, 1)


def _lift(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


def conj(x):
    """Complex conjugation; the identity on rationals."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def real_part(x):
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x):
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def is_rational_scalar(x) -> bool:
    return not isinstance(x, GaussianRational) or x.im == 0


def _nth_root_int(m: int, n: int):
    """Exact integer n-th root of m >= 0, or None."""
    if m < 0:
        return None
    if m in (0, 1):
        return m
    lo, hi = 0, 1
    while hi**n <= m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**n == m else None


def nth_root(x, n: int):
    """An n-th root of x inside Q(i), or None when no such root exists.

    Used only for witness extraction; the solvability flag never needs it.
    """
    if n <= 0:
        raise ValueError("root order must be positive")
    x = _lift(x) if not isinstance(x, GaussianRational) else x
    if x is NotImplemented:
        raise TypeError("not a Q(i) scalar")
    if n == 1:
        return x
    if not x:
        return GaussianRational(0)
    if x.im == 0:
        r = x.re
        pn = _nth_root_int(abs(r.numerator), n)
        pd = _nth_root_int(r.denominator, n)
        if pn is not None and pd is not None:
            root = Fraction(pn, pd)
            if r > 0:
                return GaussianRational(root)
            if n % 2 == 1:
                return GaussianRational(-root)
            if n % 4 == 2:
                # (i*root)^n = i^n * root^n = -root^n for n = 2 mod 4
                return GaussianRational(0, root)
        if r > 0 or n % 2 == 1:
            return None
    # General Gaussian case: a root r must satisfy N(r)^n = N(x); recover r by
    # factoring the candidate norm as a sum of two squares over a common
    # denominator and testing each representative exactly.
    d = (x.re.denominator * x.im.denominator) // gcd(
        x.re.denominator, x.im.denominator
    )
    num = x * GaussianRational(d**n)
    norm2 = num.re * num.re + num.im * num.im
    s = _nth_root_int(norm2.numerator, n)
    if s is None or norm2.denominator != 1:
        return None
    for a in range(isqrt(s) + 1):
        b2 = s - a * a
        b = isqrt(b2)
        if b * b != b2:
            continue
        for ra, rb in ((a, b), (a, -b), (-a, b), (-a, -b), (b, a), (b, -a), (-b, a), (-b, -a)):
            cand = GaussianRational(Fraction(ra, d), Fraction(rb, d))
            if cand**n == x:
                return cand
    return None


# ---------------------------------------------------------------------------
# Dense exact linear algebra on lists of lists
# ---------------------------------------------------------------------------


def rref(rows, ncols=None):
    """Reduced row echelon form of a list of row vectors.

    Returns (reduced nonzero rows, pivot column indices). Input rows are not
    modified. Works over Q and Q(i) alike.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    if ncols is None:
        ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], GaussianRational) else m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                mr = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], mr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[0])


def kernel_basis(rows, ncols):
    """Basis of the right kernel {v : M v = 0} of the matrix with given rows."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def solve_linear(rows, rhs):
    """One exact solution x of M x = b, or None if inconsistent.

    rows: rows of M; rhs: right-hand-side vector (same length as rows).
    """
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x


def in_row_space(red, pivots, v):
    """Whether v lies in the span of reduced rows (from rref); reduces v."""
    w = list(v)
    for i, pc in enumerate(pivots):
        if w[pc]:
            f = w[pc]
            ri = red[i]
            w = [a - f * b for a, b in zip(w, ri)]
    return all(not x for x in w)


def reduce_against(red, pivots, v):
    """Remainder of v after eliminating the pivot coordinates of a reduced basis."""
    w = list(v)
    for i, pc in enumerate(pivots):
        if w[pc]:
            f = w[pc]
            ri = red[i]
            w = [a - f * b for a, b in zip(w, ri)]
    return w


def matmul(a, b):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(cols):
            s = 0
            for t in range(k):
                if ai[t]:
                    s = s + ai[t] * b[t][j]
            row.append(s if s else Fraction(0))
        out.append(row)
    return out


def matvec(a, v):
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s if s else Fraction(0))
    return out


def symmetric_signature(m):
    """Signature (n+, n-, n0) of a symmetric rational matrix, by exact
    congruence diagonalization."""
    a = [list(r) for r in m]
    n = len(a)
    pos = neg = zero = 0
    idx = list(range(n))
    k = 0
    while k < n:
        # choose a nonzero diagonal entry, manufacturing one if needed
        p = None
        for i in range(k, n):
            if a[i][i]:
                p = i
                break
        if p is None:
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j]:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += n - k
                break
            i, j = off
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            p = i
        if p != k:
            a[k], a[p] = a[p], a[k]
            for t in range(n):
                a[t][k], a[t][p] = a[t][p], a[t][k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / d
                for t in range(k, n):
                    a[i][t] -= f * a[k][t]
                for t in range(k, n):
                    a[t][i] -= f * a[t][k]
        k += 1
    return pos, neg, zero


class ExactMatrix:
    """A dense exact matrix over Q or Q(i)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return ExactMatrix(matmul(self.rows, other.rows))
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def transpose(self):
        return ExactMatrix([list(c) for c in zip(*self.rows)]) if self.rows else ExactMatrix([])

    def rank(self) -> int:
        return rank(self.rows, self.ncols)

    def kernel(self):
        return kernel_basis(self.rows, self.ncols)

    def solve(self, rhs):
        return solve_linear(self.rows, rhs)

    def rref(self):
        return rref(self.rows, self.ncols)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


# ---------------------------------------------------------------------------
# Integer-lattice linear algebra
# ---------------------------------------------------------------------------


def hnf_row(m):
    """Row Hermite normal form with unimodular transform.

    Returns (H, P) with H = P*M, det(P) = +-1, pivot entries positive, and
    entries above each pivot reduced into [0, pivot).
    """
    h = [[int(x) for x in row] for row in m]
    n = len(h)
    ncols = len(h[0]) if h else 0
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    r = 0
    for c in range(ncols):
        # clear below row r in column c by gcd steps
        piv = None
        for i in range(r, n):
            if h[i][c]:
                piv = i
                break
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        p[r], p[piv] = p[piv], p[r]
        for i in range(r + 1, n):
            while h[i][c]:
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    p[i] = [a - q * b for a, b in zip(p[i], p[r])]
                if h[i][c]:
                    h[r], h[i] = h[i], h[r]
                    p[r], p[i] = p[i], p[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            p[r] = [-x for x in p[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                p[i] = [a - q * b for a, b in zip(p[i], p[r])]
        r += 1
        if r == n:
            break
    return h, p


def is_hermite_shape(h) -> bool:
    """Predicate: pivots positive and strictly right-moving, entries above each
    pivot in [0, pivot), zero rows at the bottom."""
    last = -1
    seen_zero = False
    for row in h:
        nz = next((j for j, x in enumerate(row) if x), None)
        if nz is None:
            seen_zero = True
            continue
        if seen_zero or nz <= last:
            return False
        if row[nz] <= 0:
            return False
        last = nz
    # column condition
    hh = list(h)
    last = -1
    for i, row in enumerate(hh):
        nz = next((j for j, x in enumerate(row) if x), None)
        if nz is None:
            continue
        for k in range(i):
            if not (0 <= hh[k][nz] < row[nz]):
                return False
    return True


def det_unimodular(p) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [[Fraction(x) for x in row] for row in p]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    assert det.denominator == 1
    return int(det)


def solve_multiplicative(e, u, want_witness=False):
    """Decide solvability of prod_j lambda_j^{E[i][j]} = u_i over C*.

    e: integer matrix (l x l'), u: nonzero scalars, one per row of e. The system
    has a solution over C iff, with H = P*E, the products v_i = prod_j u_j^{P[i][j]}
    equal 1 whenever row i of H is zero. With want_witness, additionally returns
    a witness vector when all required roots lie in Q(i), else None.
    """
    uu = [x if isinstance(x, GaussianRational) else GaussianRational(x) for x in u]
    for x in uu:
        if not x:
            raise ZeroEntry("zero entry in multiplicative system right-hand side")
    h, p = hnf_row(e)
    n = len(h)
    v = []
    for i in range(n):
        acc = GaussianRational(1)
        for j, exp in enumerate(p[i]):
            if exp:
                acc = acc * uu[j] ** exp
        v.append(acc)
    solvable = True
    for i in range(n):
        if all(x == 0 for x in h[i]) and v[i] != 1:
            solvable = False
            break
    if not want_witness:
        return solvable, None
    if not solvable:
        return False, None
    ncols = len(e[0]) if e else 0
    lam = [None] * ncols
    ok = True
    for i in range(n - 1, -1, -1):
        nz = next((j for j, x in enumerate(h[i]) if x), None)
        if nz is None:
            continue
        rest = GaussianRational(1)
        for j in range(nz + 1, ncols):
            if h[i][j]:
                if lam[j] is None:
                    lam[j] = GaussianRational(1)
                rest = rest * lam[j] ** h[i][j]
        target = v[i] * rest.inverse()
        root = nth_root(target, h[i][nz])
        if root is None or not root:
            ok = False
            break
        lam[nz] = root
    if not ok:
        return True, None
    lam = [x if x is not None else GaussianRational(1) for x in lam]
    return True, lam


def lattice_annihilator(vectors, n=None):
    """Z-basis of {d in Z^n : sum_j d_j e_j = 0 for every input vector e}.

    The inputs are integer vectors of length n. When the inputs have rank r the
    output has n - r elements.
    """
    vecs = [list(v) for v in vectors]
    if n is None:
        if not vecs:
            raise ValueError("dimension required for empty input")
        n = len(vecs[0])
    if not vecs:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    # columns of the stacked matrix are the constraints; the annihilator is the
    # set of integer rows d with d . e_k = 0, i.e. the left kernel of [e_k]^T,
    # obtained from the zero rows of the HNF transform of the transpose source.
    mat = [[vecs[k][j] for k in range(len(vecs))] for j in range(n)]
    h, p = hnf_row(mat)
    out = []
    for i in range(n):
        if all(x == 0 for x in h[i]):
            out.append(list(p[i]))
    return out
