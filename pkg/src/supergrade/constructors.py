"""Factories for the concrete algebras: gl(m,n), sl(m,n), psl(n+1,n+1),
coefficient superalgebras, sl_{m,n}(A), and the Jordan families.

Basis conventions are fixed here once:

* gl(m,n) uses matrix units e_ij ordered row-major over the index set
  I = (1..m, 1b..nb), unbarred before barred; parity(e_ij) = |i| + |j|.
* sl bases are the canonical RREF kernel of the supertrace functional.
* JP(n)/JQ(n) use explicit parameter-matrix bases: the a-part row-major,
  then the b-part upper triangle, then the c-part upper triangle.

Constructors return trusted algebra wrappers; the test suite re-validates
every constructed table through the axiom validators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParams, ValidationError, WrongAlgebra
from .exact import (
    Matrix,
    SparseRref,
    Vec,
    ZERO,
    ONE,
    kernel,
    unit_vec,
    vec,
)
from .superalg import (
    AssocSuperalgebra,
    Element,
    JordanSuperalgebra,
    LieSuperalgebra,
    StructureTable,
    SuperSpace,
    quotient_central,
    restricted_table,
    tensor_lie_assoc,
)

HALF = Fraction(1, 2)


@dataclass
class CartanBasis:
    """Pairwise-commuting even elements spanning a chosen Cartan subspace.

    diag_mats holds, per element, the diagonal entries of a representing
    diagonal matrix in the ambient gl(m,n); root functionals are evaluated
    against these representatives.
    """

    elements: list[Element]
    tag: str
    diag_mats: tuple | None = None

    def __len__(self):
        return len(self.elements)


def _check_cartan(l, cartan: CartanBasis):
    for x in cartan.elements:
        if x.parity != 0:
            raise ValidationError("Cartan elements must be even")
    for x, y in itertools.combinations(cartan.elements, 2):
        if any(l.product_vec(x.coords, y.coords)):
            raise ValidationError("Cartan elements must commute pairwise")


def _gl_index_labels(m: int, n: int) -> list[str]:
    return [str(i + 1) for i in range(m)] + [f"{i + 1}b" for i in range(n)]


def construct_gl(m: int, n: int) -> LieSuperalgebra:
    """gl(m,n): all (m+n) x (m+n) matrices with the supercommutator."""
    if m < 0 or n < 0 or m + n < 1:
        raise BadParams("gl(m,n) needs m+n >= 1")
    d = m + n
    idx_par = [0] * m + [1] * n
    names = _gl_index_labels(m, n)
    units = [(r, c) for r in range(d) for c in range(d)]
    pos = {u: t for t, u in enumerate(units)}
    unit_parity = [(idx_par[r] + idx_par[c]) % 2 for r, c in units]
    labels = tuple(f"E({names[r]},{names[c]})" for r, c in units)
    space = SuperSpace(d * d, tuple(unit_parity), labels)

    entries = {}
    for t1, (r1, c1) in enumerate(units):
        for t2, (r2, c2) in enumerate(units):
            acc = {}
            if c1 == r2:
                acc[pos[(r1, c2)]] = acc.get(pos[(r1, c2)], ZERO) + 1
            if c2 == r1:
                s = -1 if (unit_parity[t1] and unit_parity[t2]) else 1
                k = pos[(r2, c1)]
                acc[k] = acc.get(k, ZERO) - s
            acc = {k: Fraction(v) for k, v in acc.items() if v != 0}
            if acc:
                entries[(t1, t2)] = tuple(sorted(acc.items()))
    table = StructureTable(space, "lie", entries)

    z = [ZERO] * (d * d)
    diag_indices = [pos[(t, t)] for t in range(d)]
    for di in diag_indices:
        z[di] = ONE
    cartan = CartanBasis(
        elements=[Element(unit_vec(d * d, di), 0) for di in diag_indices],
        tag="diagonal",
        diag_mats=tuple(unit_vec(d, t) for t in range(d)),
    )
    prov = {
        "name": f"gl({m},{n})",
        "gl": {
            "m": m,
            "n": n,
            "units": units,
            "unit_parity": unit_parity,
            "z": tuple(z),
            "diag_indices": diag_indices,
        },
        "z": tuple(z),
        "cartan": cartan,
    }
    return LieSuperalgebra(table, prov)


def _diag_vec_to_gl(glinfo, diag) -> Vec:
    d = glinfo["m"] + glinfo["n"]
    out = [ZERO] * (d * d)
    for t, a in enumerate(diag):
        out[glinfo["diag_indices"][t]] = Fraction(a)
    return tuple(out)


def construct_sl(m: int, n: int) -> LieSuperalgebra:
    """sl(m,n): the supertrace-zero subalgebra of gl(m,n), dim (m+n)^2 - 1."""
    if m + n < 2:
        raise BadParams("sl(m,n) needs m+n >= 2")
    gl = construct_gl(m, n)
    info = gl.provenance["gl"]
    d = m + n
    str_row = [ZERO] * (d * d)
    for t in range(d):
        str_row[info["diag_indices"][t]] = ONE if t < m else -ONE
    basis = kernel(Matrix([str_row]))
    table, conv = restricted_table(gl, basis, "lie")

    labels = []
    hcount = 0
    gl_labels = gl.labels
    for b in basis:
        support = [(i, c) for i, c in enumerate(b) if c != 0]
        if len(support) == 1 and support[0][1] == 1:
            labels.append(gl_labels[support[0][0]])
        else:
            hcount += 1
            labels.append(f"H{hcount}")
    table = StructureTable(SuperSpace(table.space.dim, table.space.parity, tuple(labels)),
                           "lie", dict(table.entries))

    def to_sl(glvec) -> Vec:
        coords = conv.coords(glvec)
        if coords is None:
            raise ValidationError("vector is not supertrace-free")
        return coords

    # indices of sl basis vectors supported on the diagonal
    diag_positions = []
    diag_set = set(info["diag_indices"])
    for i, b in enumerate(basis):
        if all(c == 0 or idx in diag_set for idx, c in enumerate(b)):
            diag_positions.append(i)

    def diag_of(glvec) -> tuple:
        return tuple(glvec[info["diag_indices"][t]] for t in range(d))

    hprime = CartanBasis(
        elements=[Element(unit_vec(len(basis), i), 0) for i in diag_positions],
        tag="h_prime",
        diag_mats=tuple(diag_of(basis[i]) for i in diag_positions),
    )
    prov = {
        "name": f"sl({m},{n})",
        "m": m,
        "n": n,
        "ambient_gl": gl,
        "embedding": basis,
        "coords": conv,
        "cartan_hprime": hprime,
    }
    if m == n:
        prov["z"] = to_sl(gl.provenance["z"])
        # h: diagonal matrices whose unbarred and barred entry sums both vanish
        rows = Matrix([[ONE] * m + [ZERO] * n, [ZERO] * m + [ONE] * n])
        hdiags = kernel(rows)
        helems = []
        for hd in hdiags:
            helems.append(Element(to_sl(_diag_vec_to_gl(info, hd)), 0))
        prov["cartan_h"] = CartanBasis(helems, tag="h", diag_mats=tuple(hdiags))
    alg = LieSuperalgebra(table, prov)
    _check_cartan(alg, hprime)
    if m == n:
        _check_cartan(alg, prov["cartan_h"])
    return alg


def construct_psl(n: int) -> tuple[LieSuperalgebra, Matrix]:
    """psl(n+1,n+1) = sl(n+1,n+1)/<z>, with the projection from sl."""
    if n < 1:
        raise BadParams("psl(n+1,n+1) needs n >= 1")
    sl = construct_sl(n + 1, n + 1)
    psl, proj = quotient_central(sl, [sl.provenance["z"]])
    h_sl = sl.provenance["cartan_h"]
    helems = [Element(proj.mul_vec(e.coords), 0) for e in h_sl.elements]
    psl.provenance.update(
        {
            "name": f"psl({n + 1},{n + 1})",
            "n": n,
            "ambient_sl": sl,
            "projection": proj,
            "cartan_h": CartanBasis(helems, tag="h", diag_mats=h_sl.diag_mats),
        }
    )
    _check_cartan(psl, psl.provenance["cartan_h"])
    return psl, proj


def matrix_unit_in_sl(sl: LieSuperalgebra, r: int, c: int) -> Vec:
    """Coordinates of the off-diagonal matrix unit e_rc in the sl basis."""
    gl = sl.provenance["ambient_gl"]
    info = gl.provenance["gl"]
    t = info["units"].index((r, c))
    coords = sl.provenance["coords"].coords({t: ONE})
    if coords is None:
        raise ValidationError("matrix unit is not supertrace-free")
    return coords


def matrix_unit_in_psl(psl: LieSuperalgebra, r: int, c: int) -> Vec:
    sl = psl.provenance["ambient_sl"]
    return psl.provenance["projection"].mul_vec(matrix_unit_in_sl(sl, r, c))


# ---------------------------------------------------------------------------
# coefficient superalgebras
# ---------------------------------------------------------------------------


def construct_assoc(kind: str, params=None) -> AssocSuperalgebra:
    """Unital associative coefficient superalgebras.

    kind in {"field", "dual_numbers", "grassmann", "matrix_super"};
    grassmann takes k >= 1, matrix_super takes (p, q).
    """
    if kind == "field":
        space = SuperSpace(1, (0,), ("1",))
        table = StructureTable(space, "assoc", {(0, 0): ((0, ONE),)}, unit=(ONE,))
        return AssocSuperalgebra(table, {"name": "F"})
    if kind == "dual_numbers":
        space = SuperSpace(2, (0, 0), ("1", "t"))
        entries = {
            (0, 0): ((0, ONE),),
            (0, 1): ((1, ONE),),
            (1, 0): ((1, ONE),),
        }
        table = StructureTable(space, "assoc", entries, unit=(ONE, ZERO))
        return AssocSuperalgebra(table, {"name": "F[t]/(t^2)"})
    if kind == "grassmann":
        k = int(params)
        if k < 1:
            raise BadParams("grassmann(k) needs k >= 1")
        dim = 1 << k
        parity = tuple(bin(s).count("1") % 2 for s in range(dim))
        labels = tuple(
            "1" if s == 0 else "".join(f"x{i + 1}" for i in range(k) if s >> i & 1)
            for s in range(dim)
        )
        entries = {}
        for s in range(dim):
            for t in range(dim):
                if s & t:
                    continue
                # sign of sorting the concatenation (s-generators, t-generators)
                sign = 1
                for i in range(k):
                    if t >> i & 1:
                        higher = s >> (i + 1)
                        if bin(higher).count("1") % 2:
                            sign = -sign
                entries[(s, t)] = ((s | t, Fraction(sign)),)
        unit = tuple(ONE if s == 0 else ZERO for s in range(dim))
        table = StructureTable(SuperSpace(dim, parity, labels), "assoc", entries, unit=unit)
        return AssocSuperalgebra(table, {"name": f"Grassmann({k})", "k": k})
    if kind == "matrix_super":
        p, q = params
        if p < 0 or q < 0 or p + q < 1:
            raise BadParams("matrix_super(p,q) needs p+q >= 1")
        return _matrix_superalgebra(p, q)
    raise BadParams(f"unknown coefficient algebra kind {kind!r}")


def _matrix_superalgebra(p: int, q: int) -> AssocSuperalgebra:
    """M_{p,q}(F) on the basis (I, e_rc for (r,c) != (0,0))."""
    d = p + q
    idx_par = [0] * p + [1] * q
    names = _gl_index_labels(p, q)
    rest = [(r, c) for r in range(d) for c in range(d) if (r, c) != (0, 0)]
    basis_mats = [_ident_mat(d)] + [{(r, c): ONE} for r, c in rest]
    parity = (0,) + tuple((idx_par[r] + idx_par[c]) % 2 for r, c in rest)
    labels = ("1",) + tuple(f"E({names[r]},{names[c]})" for r, c in rest)

    def to_coords(mat: dict) -> list:
        a = mat.get((0, 0), ZERO)
        coords = [a]
        for r, c in rest:
            v = mat.get((r, c), ZERO)
            if r == c:
                v -= a
            coords.append(v)
        return coords

    entries = {}
    dim = len(basis_mats)
    for i in range(dim):
        for j in range(dim):
            prod = _mat_mul(basis_mats[i], basis_mats[j])
            terms = [(k, c) for k, c in enumerate(to_coords(prod)) if c != 0]
            if terms:
                entries[(i, j)] = tuple(terms)
    unit = tuple(ONE if i == 0 else ZERO for i in range(dim))
    space = SuperSpace(dim, parity, labels)
    table = StructureTable(space, "assoc", entries, unit=unit)
    prov = {"name": f"M({p},{q})", "p": p, "q": q, "basis_mats": basis_mats, "size": d}
    return AssocSuperalgebra(table, prov)


def _ident_mat(d: int) -> dict:
    return {(t, t): ONE for t in range(d)}


def _mat_mul(a: dict, b: dict) -> dict:
    out = {}
    by_row = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    for (r, c), v in a.items():
        for c2, v2 in by_row.get(c, ()):
            key = (r, c2)
            val = out.get(key, ZERO) + v * v2
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


# ---------------------------------------------------------------------------
# sl_{m,n}(A)
# ---------------------------------------------------------------------------


def construct_sl_A(m: int, n: int, a: AssocSuperalgebra) -> LieSuperalgebra:
    """sl_{m,n}(A) = [gl(m,n) (x) A, gl(m,n) (x) A] as a standalone algebra.

    The derived subalgebra is computed generically, so noncommutative
    coefficient algebras need no special case.  Provenance records the
    embedded copy of sl(m,n) (x) 1 and its Cartan bases.
    """
    if m < 1 or n < 1:
        raise BadParams("construct_sl_A needs m, n >= 1")
    gl = construct_gl(m, n)
    tensor = tensor_lie_assoc(gl, a)
    from .superalg import derived_subalgebra

    dbasis = derived_subalgebra(tensor)
    table, conv = restricted_table(tensor, dbasis, "lie")
    labels = []
    extra = 0
    for b in dbasis:
        support = [(i, c) for i, c in enumerate(b) if c != 0]
        if len(support) == 1 and support[0][1] == 1:
            labels.append(tensor.labels[support[0][0]])
        else:
            extra += 1
            labels.append(f"D{extra}")
    table = StructureTable(SuperSpace(table.space.dim, table.space.parity, tuple(labels)),
                           "lie", dict(table.entries))

    na = a.dim
    aunit = a.unit

    def tensor_with_unit(glvec) -> Vec:
        out = [ZERO] * tensor.dim
        for u, c in enumerate(glvec):
            if c != 0:
                for s, cs in enumerate(aunit):
                    if cs != 0:
                        out[u * na + s] = c * cs
        return tuple(out)

    def to_slA(tensor_vec) -> Vec:
        coords = conv.coords(tensor_vec)
        if coords is None:
            raise ValidationError("vector does not lie in the derived subalgebra")
        return coords

    sl = construct_sl(m, n)
    cover_images = [to_slA(tensor_with_unit(b)) for b in sl.provenance["embedding"]]
    prov = {
        "name": f"sl_{m},{n}({a.provenance.get('name', 'A')})",
        "m": m,
        "n": n,
        "coeff": a,
        "ambient_tensor": tensor,
        "basis_in_ambient": dbasis,
        "coords": conv,
        "cover_sl": sl,
        "cover_images": cover_images,
        "z_image": to_slA(tensor_with_unit(gl.provenance["z"])) if m == n else None,
    }
    return LieSuperalgebra(table, prov)


# ---------------------------------------------------------------------------
# Jordan families
# ---------------------------------------------------------------------------


def construct_jordan(kind: str, n: int | None = None) -> JordanSuperalgebra:
    """Mplus(n), JP(n), JQ(n), or the four-element M11 presentation."""
    if kind == "M11":
        return _m11()
    if n is None or n < 1:
        raise BadParams(f"{kind} needs n >= 1")
    if kind == "Mplus":
        from .jordan import symmetrized

        alg = symmetrized(construct_assoc("matrix_super", (n, n)))
        alg.provenance["name"] = f"M({n},{n})+"
        return alg
    if kind == "JP":
        mats, parity, labels, unit_sel = _jp_basis(n)
    elif kind == "JQ":
        mats, parity, labels, unit_sel = _jq_basis(n)
    else:
        raise BadParams(f"unknown Jordan family {kind!r}")
    return _jordan_from_matrices(kind, n, mats, parity, labels, unit_sel)


def _m11() -> JordanSuperalgebra:
    """M_{1,1}+ on the basis (e1, e2, x, y) with the normalized relations
    x.y = e1 - e2 = -y.x, e1.x = x/2 = e2.x, e1.y = y/2 = e2.y."""
    space = SuperSpace(4, (0, 0, 1, 1), ("e1", "e2", "x", "y"))
    e1 = (ONE, ZERO, ZERO, ZERO)
    e2 = (ZERO, ONE, ZERO, ZERO)
    entries = {
        (0, 0): ((0, ONE),),
        (1, 1): ((1, ONE),),
        (0, 2): ((2, HALF),),
        (2, 0): ((2, HALF),),
        (1, 2): ((2, HALF),),
        (2, 1): ((2, HALF),),
        (0, 3): ((3, HALF),),
        (3, 0): ((3, HALF),),
        (1, 3): ((3, HALF),),
        (3, 1): ((3, HALF),),
        (2, 3): ((0, ONE), (1, -ONE)),
        (3, 2): ((0, -ONE), (1, ONE)),
    }
    table = StructureTable(space, "jordan", entries, unit=(ONE, ONE, ZERO, ZERO))
    return JordanSuperalgebra(table, {"name": "M(1,1)+ basis e1,e2,x,y",
                                      "m11_elements": (0, 1, 2, 3)})


def _jp_basis(n: int):
    """JP(n): blocks (a, b; c, a^t) in M_{n,n}+ with b skew and c symmetric."""
    mats, parity, labels = [], [], []
    bar = lambda i: n + i
    for i in range(n):
        for j in range(n):
            mats.append({(i, j): ONE, (bar(j), bar(i)): ONE})
            parity.append(0)
            labels.append(f"a({i + 1},{j + 1})")
    for i in range(n):
        for j in range(i + 1, n):
            mats.append({(i, bar(j)): ONE, (j, bar(i)): -ONE})
            parity.append(1)
            labels.append(f"b({i + 1},{j + 1})")
    for i in range(n):
        for j in range(i, n):
            m = {(bar(i), j): ONE}
            if i != j:
                m[(bar(j), i)] = ONE
            mats.append(m)
            parity.append(1)
            labels.append(f"c({i + 1},{j + 1})")
    unit_sel = [i * n + i for i in range(n)]  # a = identity
    return mats, parity, labels, unit_sel


def _jq_basis(n: int):
    """JQ(n): blocks (a, b; b, a) in M_{n,n}+."""
    mats, parity, labels = [], [], []
    bar = lambda i: n + i
    for i in range(n):
        for j in range(n):
            mats.append({(i, j): ONE, (bar(i), bar(j)): ONE})
            parity.append(0)
            labels.append(f"a({i + 1},{j + 1})")
    for i in range(n):
        for j in range(n):
            mats.append({(i, bar(j)): ONE, (bar(i), j): ONE})
            parity.append(1)
            labels.append(f"b({i + 1},{j + 1})")
    unit_sel = [i * n + i for i in range(n)]
    return mats, parity, labels, unit_sel


def _jordan_from_matrices(kind, n, mats, parity, labels, unit_sel) -> JordanSuperalgebra:
    """Structure table from explicit matrices under the supersymmetrized
    product, with closure of the span verified rather than assumed."""
    d = 2 * n
    ncols = d * d

    def flat(mat):
        return {r * d + c: v for (r, c), v in mat.items()}

    sr = SparseRref(ncols)
    for mat in mats:
        if sr.insert(flat(mat)) is None:
            raise BadParams(f"{kind}({n}) basis is linearly dependent")
    coords_cols = [vec(sr.coordinates(flat(mat))) for mat in mats]
    cob = Matrix.from_cols(coords_cols)
    from .superalg import _invert

    inv = _invert(cob)
    dim = len(mats)
    entries = {}
    for i in range(dim):
        for j in range(dim):
            prod = _mat_mul(mats[i], mats[j])
            swap = _mat_mul(mats[j], mats[i])
            sgn = -1 if parity[i] and parity[j] else 1
            sym = {}
            for key, v in prod.items():
                sym[key] = sym.get(key, ZERO) + HALF * v
            for key, v in swap.items():
                val = sym.get(key, ZERO) + sgn * HALF * v
                if val:
                    sym[key] = val
                else:
                    sym.pop(key, None)
            coords = sr.coordinates({r * d + c: v for (r, c), v in sym.items()})
            if coords is None:
                raise ValidationError(
                    f"{kind}({n}) is not closed under the symmetrized product "
                    f"(basis pair {i},{j})"
                )
            given = inv.mul_vec(vec(coords))
            terms = [(k, c) for k, c in enumerate(given) if c != 0]
            if terms:
                entries[(i, j)] = tuple(terms)
    unit = [ZERO] * dim
    for s in unit_sel:
        unit[s] = ONE
    space = SuperSpace(dim, tuple(parity), tuple(labels))
    table = StructureTable(space, "jordan", entries, unit=tuple(unit))
    prov = {"name": f"{kind}({n})", "n": n, "basis_mats": mats, "size": d}
    return JordanSuperalgebra(table, prov)


def supertrace(l: LieSuperalgebra, x) -> Fraction:
    """Supertrace of a gl(m,n) element: unbarred diagonal sum minus barred."""
    info = l.provenance.get("gl")
    if info is None:
        raise WrongAlgebra("supertrace needs a gl(m,n) algebra")
    coords = x.coords if isinstance(x, Element) else vec(x)
    m = info["m"]
    out = ZERO
    for t, di in enumerate(info["diag_indices"]):
        out += coords[di] if t < m else -coords[di]
    return out
