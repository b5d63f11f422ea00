"""Exhaustive axiom checks for structure tables.

Each check comes in two exact implementations that are verified against
each other in the test suite:

* a pure-Python sparse path used at small dimension, and
* an integer fast path built on scipy.sparse with int64 arithmetic.

The fast path clears denominators once (all structure constants share a
common scale) and proves an a-priori bound on every intermediate product,
falling back to the pure path if int64 could overflow.  Both paths check
the axioms on all basis tuples.

The super Jacobi identity is checked in derivation form,
ad([x,y]) = ad(x) ad(y) - (-1)^{|x||y|} ad(y) ad(x), which given
super-anticommutativity is equivalent to the cyclic form on every basis
triple (the matrix identity at pair (i,j) evaluated in column k is the
triple (i,j,k)).  The Jordan check uses the fully linearized identity in
operator form,
(-1)^{|x||z|}[L_{xy},L_z] + (-1)^{|y||x|}[L_{yz},L_x] + (-1)^{|z||y|}[L_{zx},L_y] = 0,
whose evaluation on basis columns covers all basis quadruples.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import AxiomViolation, MissingUnit

_FAST_DIM_THRESHOLD = 26
_INT64_BOUND = 1 << 62


def _entry_rows(table):
    """entries as {(i, j): {k: coeff}}."""
    return {key: dict(terms) for key, terms in table.entries.items()}


def _sign(p, q):
    return -1 if (p & q & 1) else 1


# ---------------------------------------------------------------------------
# pair-level checks (cheap, always pure Python)
# ---------------------------------------------------------------------------


def check_super_anticommutativity(table):
    par = table.space.parity
    ent = table.entries
    n = table.space.dim
    for i in range(n):
        for j in range(i, n):
            lhs = dict(ent.get((i, j), ()))
            rhs = dict(ent.get((j, i), ()))
            s = _sign(par[i], par[j])
            for k in set(lhs) | set(rhs):
                if lhs.get(k, 0) != -s * rhs.get(k, 0):
                    raise AxiomViolation("super_anticommutativity", (i, j, k))


def check_super_commutativity(table):
    par = table.space.parity
    ent = table.entries
    n = table.space.dim
    for i in range(n):
        for j in range(i, n):
            lhs = dict(ent.get((i, j), ()))
            rhs = dict(ent.get((j, i), ()))
            s = _sign(par[i], par[j])
            for k in set(lhs) | set(rhs):
                if lhs.get(k, 0) != s * rhs.get(k, 0):
                    raise AxiomViolation("super_commutativity", (i, j, k))


def check_unit(table):
    if table.unit is None:
        raise MissingUnit("table has no unit element")
    from . import superalg

    n = table.space.dim
    unit = table.unit
    for j in range(n):
        ej = tuple(Fraction(int(t == j)) for t in range(n))
        left = superalg.table_product(table, unit, ej)
        right = superalg.table_product(table, ej, unit)
        if left != ej or right != ej:
            raise MissingUnit(f"unit axiom fails on basis element {j}")


# ---------------------------------------------------------------------------
# shared fast-path plumbing
# ---------------------------------------------------------------------------


def _common_scale(table):
    s = 1
    for terms in table.entries.values():
        for _, c in terms:
            s = lcm(s, c.denominator)
    return s


def _int64_safe(table, scale):
    n = table.space.dim
    maxc = 1
    for terms in table.entries.values():
        for _, c in terms:
            maxc = max(maxc, abs(int(c * scale)))
    return n * maxc * maxc < _INT64_BOUND


def _scaled_left_mult_csr(table, scale):
    """Left-multiplication matrices scale*L_i as scipy int64 csr, for all i."""
    import numpy as np
    from scipy.sparse import csr_matrix

    n = table.space.dim
    cells = [([], [], []) for _ in range(n)]  # (data, row, col) per i
    for (i, j), terms in table.entries.items():
        data, rows, cols = cells[i]
        for k, c in terms:
            data.append(int(c * scale))
            rows.append(k)
            cols.append(j)
    return [
        csr_matrix((np.array(d, dtype=np.int64), (r, c)), shape=(n, n), dtype=np.int64)
        for d, r, c in cells
    ]


def _first_nonzero(mat):
    coo = mat.tocoo()
    best = None
    for r, c, v in zip(coo.row, coo.col, coo.data):
        if v != 0 and (best is None or (c, r) < best):
            best = (c, r)
    return best  # (column, output row)


# ---------------------------------------------------------------------------
# super Jacobi
# ---------------------------------------------------------------------------


def check_super_jacobi(table, method="auto"):
    if method == "auto":
        method = "python" if table.space.dim <= _FAST_DIM_THRESHOLD else "fast"
    if method == "fast":
        scale = _common_scale(table)
        if _int64_safe(table, scale):
            return _jacobi_fast(table, scale)
    return _jacobi_python(table)


def _jacobi_python(table):
    from . import superalg

    n = table.space.dim
    par = table.space.parity
    ent = _entry_rows(table)
    partners = [set() for _ in range(n)]
    for (i, j) in ent:
        partners[i].add(j)

    def ad_apply(i, sparse):
        out = {}
        for m, c in sparse.items():
            for k, d in ent.get((i, m), {}).items():
                v = out.get(k, 0) + c * d
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    for i in range(n):
        for j in range(i, n):
            bij = ent.get((i, j), {})
            ks = set(partners[i]) | set(partners[j])
            for m in bij:
                ks |= partners[m]
            s = _sign(par[i], par[j])
            for k in sorted(ks):
                lhs = {}
                for m, c in bij.items():
                    for t, d in ent.get((m, k), {}).items():
                        v = lhs.get(t, 0) + c * d
                        if v:
                            lhs[t] = v
                        else:
                            lhs.pop(t, None)
                rhs = ad_apply(i, ent.get((j, k), {}))
                for t, d in ad_apply(j, ent.get((i, k), {})).items():
                    v = rhs.get(t, 0) - s * d
                    if v:
                        rhs[t] = v
                    else:
                        rhs.pop(t, None)
                if lhs != rhs:
                    raise AxiomViolation("super_jacobi", (i, j, k))


def _jacobi_fast(table, scale):
    n = table.space.dim
    par = table.space.parity
    ads = _scaled_left_mult_csr(table, scale)  # ad_i = left bracket by b_i
    for i in range(n):
        for j in range(i, n):
            s = _sign(par[i], par[j])
            lhs = ads[i] @ ads[j]
            lhs = lhs - s * (ads[j] @ ads[i])
            for k, c in table.entries.get((i, j), ()):
                lhs = lhs - int(c * scale) * ads[k]
            if lhs.count_nonzero():
                k, _ = _first_nonzero(lhs)
                raise AxiomViolation("super_jacobi", (i, j, k))


# ---------------------------------------------------------------------------
# associativity
# ---------------------------------------------------------------------------


def check_associativity(table, method="auto"):
    if method == "auto":
        method = "python" if table.space.dim <= _FAST_DIM_THRESHOLD else "fast"
    if method == "fast":
        scale = _common_scale(table)
        if _int64_safe(table, scale):
            return _assoc_fast(table, scale)
    return _assoc_python(table)


def _assoc_python(table):
    ent = _entry_rows(table)
    n = table.space.dim
    for i in range(n):
        for j in range(n):
            pij = ent.get((i, j), {})
            for k in range(n):
                lhs = {}
                for m, c in pij.items():
                    for t, d in ent.get((m, k), {}).items():
                        v = lhs.get(t, 0) + c * d
                        if v:
                            lhs[t] = v
                        else:
                            lhs.pop(t, None)
                rhs = {}
                for m, c in ent.get((j, k), {}).items():
                    for t, d in ent.get((i, m), {}).items():
                        v = rhs.get(t, 0) + c * d
                        if v:
                            rhs[t] = v
                        else:
                            rhs.pop(t, None)
                if lhs != rhs:
                    raise AxiomViolation("associativity", (i, j, k))


def _assoc_fast(table, scale):
    n = table.space.dim
    lm = _scaled_left_mult_csr(table, scale)
    for i in range(n):
        for j in range(n):
            diff = lm[i] @ lm[j]
            for k, c in table.entries.get((i, j), ()):
                diff = diff - int(c * scale) * lm[k]
            if diff.count_nonzero():
                k, _ = _first_nonzero(diff)
                raise AxiomViolation("associativity", (i, j, k))


# ---------------------------------------------------------------------------
# linearized super Jordan identity
# ---------------------------------------------------------------------------


def check_super_jordan(table, method="auto"):
    if method == "auto":
        method = "python" if table.space.dim <= 16 else "fast"
    if method == "fast":
        scale = _common_scale(table)
        # one extra multiplication depth in the Jordan identity
        if _int64_safe(table, scale * scale):
            return _jordan_fast(table, scale)
    return _jordan_python(table)


def _jordan_terms(i, j, k, par):
    """Cyclic (pair, operator, sign) pattern of the linearized identity."""
    return (
        ((i, j), k, _sign(par[i], par[k])),
        ((j, k), i, _sign(par[j], par[i])),
        ((k, i), j, _sign(par[k], par[j])),
    )


def _jordan_python(table):
    ent = _entry_rows(table)
    n = table.space.dim
    par = table.space.parity
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                for w in range(n):
                    acc = {}
                    for (a, b), z, s in _jordan_terms(i, j, k, par):
                        pab = ent.get((a, b), {})
                        opp = _sign(par[a] + par[b], par[z])
                        zw = ent.get((z, w), {})
                        # [L_{ab}, L_z] w = (ab).(z.w) - opp * z.((ab).w)
                        first = {}
                        for m, c in pab.items():
                            for u, e in zw.items():
                                for t, d in ent.get((m, u), {}).items():
                                    v = first.get(t, 0) + c * e * d
                                    if v:
                                        first[t] = v
                                    else:
                                        first.pop(t, None)
                        second = {}
                        for m, c in pab.items():
                            inner = ent.get((m, w), {})
                            for u, e in inner.items():
                                for t, d in ent.get((z, u), {}).items():
                                    v = second.get(t, 0) + c * e * d
                                    if v:
                                        second[t] = v
                                    else:
                                        second.pop(t, None)
                        for t in set(first) | set(second):
                            v = acc.get(t, 0) + s * (first.get(t, 0) - opp * second.get(t, 0))
                            if v:
                                acc[t] = v
                            else:
                                acc.pop(t, None)
                    if acc:
                        raise AxiomViolation("super_jordan", (i, j, k, w))


def _jordan_fast(table, scale):
    n = table.space.dim
    par = table.space.parity
    lm = _scaled_left_mult_csr(table, scale)
    # precompute scaled supercommutators [L_m, L_z] for all (m, z)
    comm = {}

    def get_comm(m, z):
        key = (m, z)
        if key not in comm:
            s = _sign(par[m], par[z])
            comm[key] = lm[m] @ lm[z] - s * (lm[z] @ lm[m])
        return comm[key]

    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                acc = None
                for (a, b), z, s in _jordan_terms(i, j, k, par):
                    for m, c in table.entries.get((a, b), ()):
                        term = (s * int(c * scale)) * get_comm(m, z)
                        acc = term if acc is None else acc + term
                if acc is not None and acc.count_nonzero():
                    w, _ = _first_nonzero(acc)
                    raise AxiomViolation("super_jordan", (i, j, k, w))
