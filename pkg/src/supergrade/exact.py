"""Exact rational linear algebra kernel.

All arithmetic is over the rationals via fractions.Fraction; there is no
floating point anywhere.  Canonical forms are fixed once and for all so
that higher layers can compare bases by plain equality:

* RREF pivots are the leftmost nonzero columns, pivot entries are 1 and
  pivot columns are cleared above and below;
* kernel bases set one free variable to 1 at a time, in increasing column
  order;
* particular solutions set all free variables to 0.

Dense matrices are adequate at the target scale (dims <= ~150); the
incremental SparseRref class covers the larger structured solves (span
closures, stacked kernels, cocycle systems).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch, NonSplitSpectrum

Vec = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def add_vec(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub_vec(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale_vec(c, a: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def dense_to_sparse(a: Sequence) -> dict:
    return {i: Fraction(x) for i, x in enumerate(a) if x != 0}


def sparse_to_dense(row: dict, n: int) -> Vec:
    return tuple(row.get(i, ZERO) for i in range(n))


class Matrix:
    """Dense row-major matrix over Fraction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        self.data = [[Fraction(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.data = [[ZERO] * cols for _ in range(rows)]
        m.rows = rows
        m.cols = cols
        return m

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence]) -> "Matrix":
        n = len(cols[0]) if cols else 0
        return cls([[col[i] for col in cols] for i in range(n)])

    def row(self, i: int) -> Vec:
        return tuple(self.data[i])

    def col(self, j: int) -> Vec:
        return tuple(self.data[i][j] for i in range(self.rows))

    def mul_vec(self, v: Sequence) -> Vec:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matrix cols {self.cols} != vector length {len(v)}")
        return tuple(
            sum((row[j] * v[j] for j in range(self.cols) if v[j] != 0), ZERO)
            for row in self.data
        )

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matmul shape mismatch")
        out = Matrix.zeros(self.rows, other.cols)
        for i, row in enumerate(self.data):
            orow = out.data[i]
            for k, c in enumerate(row):
                if c == 0:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    if brow[j] != 0:
                        orow[j] += c * brow[j]
        return out

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self) -> Fraction:
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def copy(self) -> "Matrix":
        return Matrix(self.data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot column list.  rank = len(pivots)."""
    a = [row[:] for row in m.data]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = Matrix.__new__(Matrix)
    out.data = a
    out.rows = nrows
    out.cols = ncols
    return out, pivots


def kernel_from_rref(rdata: Sequence[Sequence], pivots: Sequence[int], ncols: int) -> list[Vec]:
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rdata[r][f]
        basis.append(tuple(v))
    return basis


def kernel(m: Matrix) -> list[Vec]:
    """Canonical null-space basis (free variables set to 1 in column order)."""
    r, pivots = rref(m)
    return kernel_from_rref(r.data, pivots, m.cols)


def solve_linear(a: Matrix, b: Sequence) -> Vec | None:
    """One particular solution of a x = b with free variables 0, or None."""
    if len(b) != a.rows:
        raise DimensionMismatch("rhs length != row count")
    aug = Matrix([list(row) + [b[i]] for i, row in enumerate(a.data)])
    r, pivots = rref(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [ZERO] * a.cols
    for i, p in enumerate(pivots):
        x[p] = r.data[i][a.cols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Polynomials over Q, represented as ascending coefficient lists.
# ---------------------------------------------------------------------------


def poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_degree(p: Sequence) -> int:
    return len(p) - 1


def poly_eval(p: Sequence, x) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(p: Sequence, q: Sequence) -> list:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b != 0:
                out[i + j] += a * b
    return out


def poly_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    q = list(q)
    poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [ZERO] * max(len(rem) - len(q) + 1, 1)
    dq = len(q) - 1
    lead = q[-1]
    while len(rem) - 1 >= dq and poly_trim(rem):
        d = len(rem) - 1
        if d < dq:
            break
        c = rem[-1] / lead
        quot[d - dq] = c
        for i in range(len(q)):
            rem[d - dq + i] -= c * q[i]
        poly_trim(rem)
    return poly_trim(quot), rem


def poly_monic(p: Sequence) -> list:
    p = poly_trim(list(p))
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(p: Sequence, q: Sequence) -> list:
    a, b = poly_trim(list(p)), poly_trim(list(q))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def poly_lcm(p: Sequence, q: Sequence) -> list:
    g = poly_gcd(p, q)
    if not g:
        return []
    quot, rem = poly_divmod(poly_mul(p, q), g)
    assert not rem
    return poly_monic(quot)


def poly_derivative(p: Sequence) -> list:
    return [i * c for i, c in enumerate(p)][1:]


def char_poly(m: Matrix) -> list:
    """Characteristic polynomial via the Faddeev-LeVerrier recurrence."""
    n = m.rows
    if n != m.cols:
        raise DimensionMismatch("characteristic polynomial needs a square matrix")
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = m.copy()
    for k in range(1, n + 1):
        ck = mk.trace() / k
        coeffs[n - k] = -ck
        if k == n:
            break
        for i in range(n):
            mk.data[i][i] -= ck
        mk = m.matmul(mk)
    return coeffs


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def primitive_integer_poly(p: Sequence) -> list[int]:
    """Clear denominators and content; sign of the leading coefficient is kept."""
    from math import gcd, lcm

    p = poly_trim(list(p))
    if not p:
        return []
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(c * den) for c in p]
    content = 0
    for c in ints:
        content = gcd(content, c)
    return [c // content for c in ints]


def rational_roots(p: Sequence) -> tuple[list[tuple[Fraction, int]], list]:
    """All rational roots with multiplicities, plus the rootless cofactor.

    Roots come from the rational-root theorem applied to the primitive
    integer form of p; the returned cofactor has no rational roots.
    """
    work = poly_monic(p)
    if not work:
        raise ZeroDivisionError("zero polynomial has no well-defined roots")
    roots: list[tuple[Fraction, int]] = []
    mult0 = 0
    while len(work) > 1 and work[0] == 0:
        work = work[1:]
        mult0 += 1
    if mult0:
        roots.append((ZERO, mult0))
    ints = primitive_integer_poly(work)
    candidates: set[Fraction] = set()
    if len(ints) > 1:
        for num in _int_divisors(ints[0]):
            for den in _int_divisors(ints[-1]):
                candidates.add(Fraction(num, den))
                candidates.add(Fraction(-num, den))
    for cand in sorted(candidates):
        mult = 0
        while len(work) > 1 and poly_eval(work, cand) == 0:
            work, rem = poly_divmod(work, [-cand, ONE])
            assert not rem
            mult += 1
        if mult:
            roots.append((cand, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots, work


def rational_eigenvalues(m: Matrix) -> list[tuple[Fraction, int]]:
    """Eigenvalues of a square matrix, all of which must be rational.

    Returns (eigenvalue, algebraic multiplicity) pairs sorted by eigenvalue;
    multiplicities sum to the dimension.  Raises NonSplitSpectrum if the
    characteristic polynomial has an irrational (or complex) root.
    """
    p = char_poly(m)
    roots, cofactor = rational_roots(p)
    if poly_degree(cofactor) > 0:
        raise NonSplitSpectrum(
            f"irrational eigenvalues: characteristic polynomial has a degree-"
            f"{poly_degree(cofactor)} factor without rational roots"
        )
    return roots


# ---------------------------------------------------------------------------
# Incremental sparse reduced echelon form.
# ---------------------------------------------------------------------------


class SparseRref:
    """Reduced row-echelon basis of a growing set of sparse rows.

    Rows are dicts {column: Fraction}.  Columns >= npivot are "augmented":
    they are carried through eliminations but never chosen as pivots, which
    supports augmented solves (coordinate tracking, minimal polynomials,
    homomorphism transport).
    """

    def __init__(self, ncols: int, npivot: int | None = None):
        self.ncols = ncols
        self.npivot = ncols if npivot is None else npivot
        self._rows: dict[int, dict] = {}  # pivot column -> row
        self._sorted: list[int] | None = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        if self._sorted is None:
            self._sorted = sorted(self._rows)
        return self._sorted

    def reduce(self, row: dict) -> dict:
        """Fully reduce a row against the current basis (row is not consumed)."""
        out = dict(row)
        # Pivot rows only touch their own pivot and non-pivot columns, so a
        # single pass over the initially present pivot columns is complete.
        for c in [c for c in out if c in self._rows]:
            f = out.get(c)
            if not f:
                continue
            for k, v in self._rows[c].items():
                newval = out.get(k, ZERO) - f * v
                if newval:
                    out[k] = newval
                else:
                    out.pop(k, None)
        return out

    def _leading(self, row: dict) -> int | None:
        cols = [c for c in row if c < self.npivot]
        return min(cols) if cols else None

    def insert(self, row: dict) -> int | None:
        """Insert a row; returns its pivot column, or None if dependent."""
        red = self.reduce(row)
        lead = self._leading(red)
        if lead is None:
            return None
        inv = ONE / red[lead]
        red = {k: v * inv for k, v in red.items()}
        for other in self._rows.values():
            f = other.get(lead)
            if f:
                for k, v in red.items():
                    newval = other.get(k, ZERO) - f * v
                    if newval:
                        other[k] = newval
                    else:
                        other.pop(k, None)
        self._rows[lead] = red
        self._sorted = None
        return lead

    def basis(self) -> list[dict]:
        return [dict(self._rows[c]) for c in self.pivots()]

    def basis_dense(self) -> list[Vec]:
        return [sparse_to_dense(r, self.ncols) for r in self.basis()]

    def contains(self, row: dict) -> bool:
        return self._leading(self.reduce(row)) is None

    def coordinates(self, row: dict) -> list | None:
        """Coordinates of a vector over basis() order, or None if outside."""
        out = dict(row)
        coeffs: dict[int, Fraction] = {}
        for c in [c for c in out if c in self._rows]:
            f = out.get(c)
            if not f:
                continue
            coeffs[c] = f
            for k, v in self._rows[c].items():
                newval = out.get(k, ZERO) - f * v
                if newval:
                    out[k] = newval
                else:
                    out.pop(k, None)
        if any(c < self.npivot for c in out):
            return None
        return [coeffs.get(c, ZERO) for c in self.pivots()]


def rank_of_rows(rows: Iterable[dict], ncols: int) -> int:
    sr = SparseRref(ncols)
    for row in rows:
        sr.insert(row)
    return sr.rank


def kernel_from_rows(rows: Iterable[dict], ncols: int) -> list[Vec]:
    """Null space of the matrix whose rows are given sparsely; canonical basis."""
    sr = SparseRref(ncols)
    for row in rows:
        sr.insert(row)
    pivots = sr.pivots()
    rdata = sr.basis()
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rdata[r].get(f, ZERO)
        basis.append(tuple(v))
    return basis


def span_closure(seed: Iterable[Sequence], product: Callable[[Vec, Vec], Vec]) -> list[Vec]:
    """Canonical basis of the smallest product-closed subspace containing seed.

    The product is any bilinear map returning vectors in the same ambient
    space; termination follows from finite ambient dimension.
    """
    seeds = [vec(s) for s in seed]
    if not seeds:
        return []
    n = len(seeds[0])
    sr = SparseRref(n)
    elems: list[Vec] = []
    queue = list(seeds)
    while queue:
        cand = queue.pop()
        if sr.insert(dense_to_sparse(cand)) is None:
            continue
        for other in elems:
            queue.append(product(cand, other))
            queue.append(product(other, cand))
        queue.append(product(cand, cand))
        elems.append(cand)
    return sr.basis_dense()


def min_poly(apply: Callable[[Vec], Vec], dim: int) -> list:
    """Monic minimal polynomial of a linear operator given by its action."""
    best = [ONE]
    for i in range(dim):
        if poly_degree(best) >= dim:
            break
        seed = unit_vec(dim, i)
        if is_zero_vec(_poly_apply(best, apply, seed)):
            continue
        local = _local_min_poly(apply, seed, dim)
        best = poly_lcm(best, local)
    return best


def _poly_apply(p: Sequence, apply: Callable[[Vec], Vec], v: Vec) -> Vec:
    acc = scale_vec(p[-1], v)
    for c in reversed(p[:-1]):
        acc = add_vec(apply(acc), scale_vec(c, v))
    return acc


def _local_min_poly(apply: Callable[[Vec], Vec], seed: Vec, dim: int) -> list:
    sr = SparseRref(dim + dim + 1, npivot=dim)
    v = seed
    for k in range(dim + 1):
        row = dense_to_sparse(v)
        row[dim + k] = ONE
        red = sr.reduce(row)
        if all(c >= dim for c in red):
            coeffs = [ZERO] * (k + 1)
            for c, val in red.items():
                coeffs[c - dim] = val
            return poly_monic(coeffs)
        sr.insert(row)
        v = apply(v)
    raise AssertionError("Krylov iteration failed to terminate")  # pragma: no cover
