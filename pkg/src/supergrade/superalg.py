"""Z2-graded vector spaces, structure tables and generic algebra operations.

A StructureTable is a sparse table of structure constants on a graded
basis; validators turn tables into typed algebra objects after checking
the relevant axioms exhaustively on basis tuples.  All operations are
pure functions of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _axioms
from .errors import (
    DimensionMismatch,
    MissingUnit,
    NotCentral,
    ValidationError,
    WrongAlgebra,
)
from .exact import (
    Matrix,
    SparseRref,
    Vec,
    ZERO,
    dense_to_sparse,
    kernel_from_rows,
    sparse_to_dense,
    unit_vec,
    vec,
)

KINDS = ("lie", "assoc", "jordan")


@dataclass(frozen=True)
class SuperSpace:
    """A finite-dimensional Z2-graded vector space with a fixed basis."""

    dim: int
    parity: tuple
    labels: tuple | None = None

    def __post_init__(self):
        if len(self.parity) != self.dim:
            raise ValidationError("parity vector length != dim")
        if any(p not in (0, 1) for p in self.parity):
            raise ValidationError("parities must be 0 or 1")
        if self.labels is not None:
            if len(self.labels) != self.dim:
                raise ValidationError("labels length != dim")
            if len(set(self.labels)) != self.dim:
                raise ValidationError("labels must be distinct")

    @property
    def even_dim(self) -> int:
        return sum(1 for p in self.parity if p == 0)

    @property
    def odd_dim(self) -> int:
        return self.dim - self.even_dim


def homogeneous_parity(space: SuperSpace, coords: Sequence) -> int | None:
    """Parity of a homogeneous vector, or None if mixed (0 counts as even)."""
    seen = {space.parity[i] for i, c in enumerate(coords) if c != 0}
    if len(seen) > 1:
        return None
    return seen.pop() if seen else 0


@dataclass(frozen=True)
class Element:
    """Algebra element: coordinate vector plus optional homogeneous parity."""

    coords: tuple
    parity: int | None = None


def _coords(x) -> tuple:
    if isinstance(x, Element):
        return x.coords
    return vec(x)


@dataclass
class StructureTable:
    """Sparse structure constants c_{ij}^k on a graded basis.

    entries maps (i, j) to a tuple of (k, coefficient) pairs sorted by k.
    Every entry must be parity-homogeneous: c_{ij}^k != 0 forces
    parity(k) = parity(i) + parity(j) mod 2.  The optional unit is stored
    as a coordinate vector (it need not be a basis element).
    """

    space: SuperSpace
    kind: str
    entries: dict = field(default_factory=dict)
    unit: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown table kind {self.kind!r}")
        n = self.space.dim
        par = self.space.parity
        canon = {}
        for (i, j), terms in self.entries.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"entry index ({i},{j}) out of range")
            cleaned = []
            seen = set()
            for k, c in terms:
                if not 0 <= k < n:
                    raise ValidationError(f"entry target {k} out of range")
                if k in seen:
                    raise ValidationError(f"duplicate entry ({i},{j},{k})")
                seen.add(k)
                c = Fraction(c)
                if c == 0:
                    continue
                if par[k] != (par[i] + par[j]) % 2:
                    raise ValidationError(
                        f"entry ({i},{j},{k}) violates parity homogeneity"
                    )
                cleaned.append((k, c))
            if cleaned:
                canon[(i, j)] = tuple(sorted(cleaned))
        self.entries = canon
        if self.unit is not None:
            u = vec(self.unit)
            if len(u) != n:
                raise ValidationError("unit vector has wrong length")
            if homogeneous_parity(self.space, u) != 0:
                raise ValidationError("unit element must be even")
            self.unit = u

    @property
    def dim(self) -> int:
        return self.space.dim


def table_product(table: StructureTable, x: Sequence, y: Sequence) -> Vec:
    """Bilinear extension of the structure table to coordinate vectors."""
    n = table.space.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch("element length != algebra dimension")
    xs = [(i, c) for i, c in enumerate(x) if c != 0]
    ys = [(j, c) for j, c in enumerate(y) if c != 0]
    acc = {}
    ent = table.entries
    for i, ci in xs:
        for j, cj in ys:
            terms = ent.get((i, j))
            if not terms:
                continue
            cij = ci * cj
            for k, c in terms:
                v = acc.get(k, ZERO) + cij * c
                if v:
                    acc[k] = v
                else:
                    acc.pop(k, None)
    return sparse_to_dense(acc, n)


class _AlgebraBase:
    """Shared behavior of validated algebra wrappers."""

    kind = None  # overridden

    def __init__(self, table: StructureTable, provenance: dict | None = None):
        if table.kind != self.kind:
            raise ValidationError(f"expected a {self.kind} table, got {table.kind}")
        self.table = table
        self.provenance = provenance or {}

    @property
    def space(self) -> SuperSpace:
        return self.table.space

    @property
    def dim(self) -> int:
        return self.table.space.dim

    @property
    def parity(self) -> tuple:
        return self.table.space.parity

    @property
    def labels(self):
        return self.table.space.labels

    def element(self, coords, parity="infer") -> Element:
        c = vec(coords)
        if len(c) != self.dim:
            raise DimensionMismatch("coordinate length != algebra dimension")
        if parity == "infer":
            parity = homogeneous_parity(self.space, c)
        elif parity is not None:
            support = {self.space.parity[i] for i, x in enumerate(c) if x != 0}
            if support - {parity}:
                raise ValidationError(
                    "declared parity does not match the coordinate support"
                )
        return Element(c, parity)

    def basis_element(self, i: int) -> Element:
        return Element(unit_vec(self.dim, i), self.parity[i])

    def basis_elements(self) -> list[Element]:
        return [self.basis_element(i) for i in range(self.dim)]

    def product_vec(self, x: Sequence, y: Sequence) -> Vec:
        return table_product(self.table, x, y)

    def __repr__(self):
        name = self.provenance.get("name", self.kind)
        return f"<{type(self).__name__} {name} dim {self.space.even_dim}|{self.space.odd_dim}>"


class LieSuperalgebra(_AlgebraBase):
    kind = "lie"


class AssocSuperalgebra(_AlgebraBase):
    kind = "assoc"

    @property
    def unit(self) -> Vec:
        return self.table.unit


class JordanSuperalgebra(_AlgebraBase):
    kind = "jordan"

    @property
    def unit(self) -> Vec:
        return self.table.unit


def validate_lie(table: StructureTable, provenance=None, method="auto") -> LieSuperalgebra:
    """Check super-anticommutativity and the super Jacobi identity on all
    basis triples; return the validated wrapper."""
    _axioms.check_super_anticommutativity(table)
    _axioms.check_super_jacobi(table, method=method)
    return LieSuperalgebra(table, provenance)


def validate_assoc(table: StructureTable, provenance=None, method="auto") -> AssocSuperalgebra:
    """Check associativity on all basis triples plus the two-sided unit law."""
    if table.unit is None:
        raise MissingUnit("associative tables must carry a unit")
    _axioms.check_unit(table)
    _axioms.check_associativity(table, method=method)
    return AssocSuperalgebra(table, provenance)


def validate_jordan(table: StructureTable, provenance=None, method="auto") -> JordanSuperalgebra:
    """Check super-commutativity, the unit law, and the fully linearized
    super Jordan identity on all homogeneous basis quadruples."""
    if table.unit is None:
        raise MissingUnit("jordan tables must carry a unit")
    _axioms.check_unit(table)
    _axioms.check_super_commutativity(table)
    _axioms.check_super_jordan(table, method=method)
    return JordanSuperalgebra(table, provenance)


def bracket(l: _AlgebraBase, x, y) -> Element:
    """Product of two elements under the algebra's structure table."""
    cx, cy = _coords(x), _coords(y)
    out = l.product_vec(cx, cy)
    px = x.parity if isinstance(x, Element) else homogeneous_parity(l.space, cx)
    py = y.parity if isinstance(y, Element) else homogeneous_parity(l.space, cy)
    if not any(out):
        parity = 0
    elif px is not None and py is not None:
        parity = (px + py) % 2
    else:
        parity = homogeneous_parity(l.space, out)
    return Element(out, parity)


def ad_matrix(l: _AlgebraBase, x) -> Matrix:
    """Matrix of y -> [x, y] in the algebra basis."""
    cx = _coords(x)
    n = l.dim
    cols = [l.product_vec(cx, unit_vec(n, j)) for j in range(n)]
    return Matrix.from_cols(cols)


def center(l: _AlgebraBase) -> list[Vec]:
    """Canonical basis of {x : x * b_j = 0 for every basis element b_j}."""
    n = l.dim
    rows: dict[tuple, dict] = {}
    for (i, j), terms in l.table.entries.items():
        for k, c in terms:
            rows.setdefault((j, k), {})[i] = c
    return kernel_from_rows(rows.values(), n)


def derived_subalgebra(l: _AlgebraBase) -> list[Vec]:
    """Canonical basis of span{[b_i, b_j]}."""
    n = l.dim
    sr = SparseRref(n)
    for (i, j), terms in sorted(l.table.entries.items()):
        if i <= j:  # the other order is proportional by (anti)commutativity
            sr.insert({k: c for k, c in terms})
    return sr.basis_dense()


def is_perfect(l: _AlgebraBase) -> bool:
    return len(derived_subalgebra(l)) == l.dim


def quotient_central(l: LieSuperalgebra, zbasis: Sequence) -> tuple[LieSuperalgebra, Matrix]:
    """Quotient by a central graded subspace, with the projection matrix.

    The complement is spanned by the basis vectors at non-pivot columns of
    the central subspace's RREF; centrality of every generator makes the
    induced bracket well-defined.
    """
    zvecs = [_coords(z) for z in zbasis]
    n = l.dim
    for z in zvecs:
        if homogeneous_parity(l.space, z) is None:
            raise NotCentral("central subspace generator is not parity-homogeneous")
        for j in range(n):
            if any(l.product_vec(z, unit_vec(n, j))):
                raise NotCentral(f"generator fails centrality against basis element {j}")
    zr = SparseRref(n)
    for z in zvecs:
        zr.insert(dense_to_sparse(z))
    pivots = set(zr.pivots())
    keep = [c for c in range(n) if c not in pivots]
    pos = {c: t for t, c in enumerate(keep)}

    def project(v: Sequence) -> Vec:
        red = zr.reduce(dense_to_sparse(v))
        return tuple(red.get(c, ZERO) for c in keep)

    new_space = SuperSpace(
        dim=len(keep),
        parity=tuple(l.parity[c] for c in keep),
        labels=tuple(l.labels[c] for c in keep) if l.labels else None,
    )
    entries = {}
    for a, ca in enumerate(keep):
        for b, cb in enumerate(keep):
            terms = l.table.entries.get((ca, cb))
            if not terms:
                continue
            img = project(sparse_to_dense(dict(terms), n))
            sparse = [(k, c) for k, c in enumerate(img) if c != 0]
            if sparse:
                entries[(a, b)] = tuple(sparse)
    table = StructureTable(new_space, "lie", entries)
    proj = Matrix.from_cols([project(unit_vec(n, j)) for j in range(n)])
    prov = {
        "name": f"{l.provenance.get('name', 'L')}/center",
        "base": l,
        "projection": proj,
        "kept_columns": tuple(keep),
    }
    return LieSuperalgebra(table, prov), proj


def tensor_lie_assoc(g0: LieSuperalgebra, a: AssocSuperalgebra) -> LieSuperalgebra:
    """gl(m,n) tensor A with the supercommutator bracket of M_{m,n}(F) (x) A.

    The basis is {e_ij (x) a_s} ordered by matrix unit then coefficient;
    on matrix units with homogeneous coefficients the bracket carries the
    Koszul sign (-1)^{|a|(|j|+|k|)} of the associative tensor product.
    """
    info = g0.provenance.get("gl")
    if info is None:
        raise WrongAlgebra("tensor_lie_assoc needs a gl(m,n) left factor")
    units = info["units"]  # list of (row_index, col_index) with parities
    unit_parity = info["unit_parity"]
    pos = {u: t for t, u in enumerate(units)}
    na = a.dim
    dim = len(units) * na

    def tidx(u: int, s: int) -> int:
        return u * na + s

    parity = []
    labels = []
    glabels = g0.labels
    alabels = a.labels or tuple(f"a{s}" for s in range(na))
    for u in range(len(units)):
        for s in range(na):
            parity.append((unit_parity[u] + a.parity[s]) % 2)
            labels.append(f"{glabels[u]}@{alabels[s]}")
    space = SuperSpace(dim, tuple(parity), tuple(labels))

    aent = a.table.entries
    entries = {}
    for u1, (i, j) in enumerate(units):
        for u2, (k, l_) in enumerate(units):
            acc: dict[tuple[int, int], dict] = {}
            for s in range(na):
                for t in range(na):
                    coeff_terms = []
                    if j == k:
                        sgn = -1 if (a.parity[s] & unit_parity[u2] & 1) else 1
                        target_u = pos[(i, l_)]
                        for r, c in aent.get((s, t), ()):
                            coeff_terms.append((tidx(target_u, r), sgn * c))
                    if l_ == i:
                        pxy = (unit_parity[u1] + a.parity[s]) * (unit_parity[u2] + a.parity[t])
                        sgn = -1 if (pxy % 2) else 1
                        sgn2 = -1 if (a.parity[t] & unit_parity[u1] & 1) else 1
                        target_u = pos[(k, j)]
                        for r, c in aent.get((t, s), ()):
                            coeff_terms.append((tidx(target_u, r), -sgn * sgn2 * c))
                    if coeff_terms:
                        key = (tidx(u1, s), tidx(u2, t))
                        row = acc.setdefault(key, {})
                        for tgt, c in coeff_terms:
                            v = row.get(tgt, ZERO) + c
                            if v:
                                row[tgt] = v
                            else:
                                row.pop(tgt, None)
            for key, row in acc.items():
                if row:
                    entries[key] = tuple(sorted(row.items()))
    table = StructureTable(space, "lie", entries)
    zg = info["z"]
    zvec = [ZERO] * dim
    for u, c in enumerate(zg):
        if c != 0:
            for s, cs in enumerate(a.unit):
                if cs != 0:
                    zvec[tidx(u, s)] = c * cs
    prov = {
        "name": f"{g0.provenance.get('name', 'gl')}(x){a.provenance.get('name', 'A')}",
        "tensor": {"gl": g0, "coeff": a, "na": na},
        "gl": info,
        "z": tuple(zvec),
    }
    return LieSuperalgebra(table, prov)


def subalgebra_from_generators(l: _AlgebraBase, gens: Iterable) -> list[Vec]:
    """Canonical basis of the subalgebra generated by gens under the product."""
    from .exact import span_closure

    seeds = [_coords(g) for g in gens]
    return span_closure(seeds, l.product_vec)


class SubspaceCoords:
    """Coordinate map of an ambient space onto a chosen subspace basis."""

    def __init__(self, sr: SparseRref, to_given: Matrix):
        self._sr = sr
        self._to_given = to_given
        self._is_identity = to_given == Matrix.identity(to_given.rows)

    @property
    def dim(self) -> int:
        return self._to_given.rows

    def coords(self, ambient) -> Vec | None:
        """Coordinates in the chosen basis, or None if outside the span."""
        sparse = ambient if isinstance(ambient, dict) else dense_to_sparse(ambient)
        s = self._sr.coordinates(sparse)
        if s is None:
            return None
        return vec(s) if self._is_identity else self._to_given.mul_vec(vec(s))


def restricted_table(
    l: _AlgebraBase, basis: Sequence, kind: str | None = None, unit=None
) -> tuple[StructureTable, SubspaceCoords]:
    """Structure table of a product-closed subspace on a given basis.

    Raises ValidationError if the subspace is not closed under the product
    or if some basis vector is not parity-homogeneous.  The returned
    SubspaceCoords maps ambient vectors to coordinates in the given basis.
    """
    vecs = [_coords(b) for b in basis]
    n = l.dim
    sr = SparseRref(n)
    for v in vecs:
        if sr.insert(dense_to_sparse(v)) is None:
            raise ValidationError("subalgebra basis is linearly dependent")
    # change of basis: sr's canonical rows -> the given basis
    cob = Matrix.from_cols([vec(sr.coordinates(dense_to_sparse(v))) for v in vecs])
    ident = Matrix.identity(len(vecs))
    conv = SubspaceCoords(sr, ident if cob == ident else _invert(cob))
    parities = []
    for v in vecs:
        p = homogeneous_parity(l.space, v)
        if p is None:
            raise ValidationError("subalgebra basis vector is not parity-homogeneous")
        parities.append(p)
    m = len(vecs)
    entries = {}
    for i in range(m):
        for j in range(m):
            prod = l.product_vec(vecs[i], vecs[j])
            given = conv.coords(prod)
            if given is None:
                raise ValidationError(
                    f"subspace not closed: product of basis {i} and {j} escapes the span"
                )
            terms = [(k, c) for k, c in enumerate(given) if c != 0]
            if terms:
                entries[(i, j)] = tuple(terms)
    space = SuperSpace(m, tuple(parities))
    table = StructureTable(space, kind or l.kind, entries, unit=unit)
    return table, conv


def _invert(m: Matrix) -> Matrix:
    from .exact import rref

    n = m.rows
    if m.cols != n:
        raise DimensionMismatch("inverse needs a square matrix")
    aug = Matrix([list(m.data[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValidationError("matrix is singular")
    return Matrix([row[n:] for row in r.data])
