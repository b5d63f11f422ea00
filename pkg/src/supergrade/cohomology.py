"""Second cohomology with trivial coefficients, universal central
extensions, cover-kernel checks, and central-isogeny fingerprints.

Cocycles are parametrized by independent pair coordinates (i < j plus the
odd diagonal); super-skewness means phi(x,y) = -(-1)^{|x||y|} phi(y,x)
uniformly, and the cocycle identity carries the same cyclic signs as the
super Jacobi identity.  The constraint system decomposes into independent
blocks along connected components of its unknown-interaction graph, which
for root-graded algebras recovers the weight-block structure for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constructors import CartanBasis
from .errors import NotPerfect, ValidationError
from .exact import (
    Matrix,
    SparseRref,
    ZERO,
    ONE,
    dense_to_sparse,
    kernel,
    kernel_from_rows,
    solve_linear,
    unit_vec,
    vec,
)
from .superalg import (
    Element,
    LieSuperalgebra,
    StructureTable,
    SuperSpace,
    center,
    derived_subalgebra,
    homogeneous_parity,
    quotient_central,
    restricted_table,
)


@dataclass
class Cocycle2:
    """A parity-homogeneous super-skew 2-form satisfying the cocycle identity."""

    parity: int
    form: Matrix  # full dim x dim matrix of values phi(b_i, b_j)

    def value(self, i: int, j: int) -> Fraction:
        return self.form.data[i][j]


def _pair_index(space: SuperSpace, parity: int):
    """Independent unknowns of the super-skew sector: ordered pairs i < j of
    the right parity, plus the odd diagonal (even sector only)."""
    pairs = []
    for i in range(space.dim):
        for j in range(i, space.dim):
            if (space.parity[i] + space.parity[j]) % 2 != parity:
                continue
            if i == j and space.parity[i] == 0:
                continue  # phi(x,x) = 0 for even x
            pairs.append((i, j))
    return pairs, {p: t for t, p in enumerate(pairs)}


def _pair_coeff(space: SuperSpace, pos: dict, m: int, c: int):
    """Unknown index and sign expressing phi(b_m, b_c)."""
    if m == c:
        idx = pos.get((m, m))
        return (idx, ONE) if idx is not None else (None, ZERO)
    if m < c:
        idx = pos.get((m, c))
        return (idx, ONE) if idx is not None else (None, ZERO)
    idx = pos.get((c, m))
    if idx is None:
        return (None, ZERO)
    sgn = -ONE if not (space.parity[m] and space.parity[c]) else ONE
    return (idx, sgn)


def _cocycle_rows(l: LieSuperalgebra, parity: int, pairs, pos):
    """Sparse constraint rows of the cocycle identity over canonical triples.

    The identity is super-symmetric under permutations up to sign, so
    i <= j <= k is exhaustive.
    """
    n = l.dim
    par = l.parity
    ent = l.table.entries
    rows = []
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                if (par[i] + par[j] + par[k]) % 2 != parity:
                    continue
                row: dict = {}
                for (a, b), c in (((i, j), k), ((j, k), i), ((k, i), j)):
                    s = -ONE if par[a] and par[c] else ONE
                    for m, coeff in ent.get((a, b), ()):
                        idx, sgn = _pair_coeff(l.space, pos, m, c)
                        if idx is None:
                            continue
                        v = row.get(idx, ZERO) + s * sgn * coeff
                        if v:
                            row[idx] = v
                        else:
                            row.pop(idx, None)
                if row:
                    rows.append(row)
    return rows


def _solve_blocks(rows, nunknowns):
    """Kernel basis of a sparse row system, solved per connected component."""
    parent = list(range(nunknowns))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for row in rows:
        cols = list(row)
        for c in cols[1:]:
            union(cols[0], c)
    groups: dict = {}
    for u in range(nunknowns):
        groups.setdefault(find(u), []).append(u)
    rows_by_root: dict = {}
    for row in rows:
        rows_by_root.setdefault(find(next(iter(row))), []).append(row)

    basis = []
    for root, cols in sorted(groups.items()):
        local = {c: t for t, c in enumerate(cols)}
        block_rows = [
            {local[c]: v for c, v in row.items()} for row in rows_by_root.get(root, [])
        ]
        for kv in kernel_from_rows(block_rows, len(cols)):
            out = {}
            for t, c in enumerate(cols):
                if kv[t]:
                    out[c] = kv[t]
            basis.append(out)
    sr = SparseRref(nunknowns)
    for b in sorted(basis, key=lambda d: sorted(d.items())):
        sr.insert(b)
    return sr.basis_dense()


def _materialize(l: LieSuperalgebra, parity: int, pairs, coords) -> Cocycle2:
    n = l.dim
    form = Matrix.zeros(n, n)
    for (i, j), v in zip(pairs, coords):
        if v == 0:
            continue
        form.data[i][j] = v
        if i != j:
            sgn = -ONE if not (l.parity[i] and l.parity[j]) else ONE
            form.data[j][i] = sgn * v
    return Cocycle2(parity, form)


def cocycle_space(l: LieSuperalgebra, parity: int) -> list[Cocycle2]:
    """Canonical basis of the space of 2-cocycles of the given parity."""
    pairs, pos = _pair_index(l.space, parity)
    rows = _cocycle_rows(l, parity, pairs, pos)
    basis = _solve_blocks(rows, len(pairs))
    return [_materialize(l, parity, pairs, b) for b in basis]


def coboundary_space(l: LieSuperalgebra, parity: int) -> list[Cocycle2]:
    """Canonical basis of the coboundaries phi_f(x, y) = f([x, y])."""
    pairs, pos = _pair_index(l.space, parity)
    sr = SparseRref(len(pairs))
    for s in range(l.dim):
        if l.parity[s] != parity:
            continue
        row = {}
        for t, (i, j) in enumerate(pairs):
            for m, c in l.table.entries.get((i, j), ()):
                if m == s:
                    v = row.get(t, ZERO) + c
                    if v:
                        row[t] = v
                    else:
                        row.pop(t, None)
        sr.insert(row)
    return [_materialize(l, parity, pairs, b) for b in sr.basis_dense()]


def _pair_coords(l, parity, pairs, cocycle: Cocycle2) -> dict:
    return {
        t: cocycle.form.data[i][j]
        for t, (i, j) in enumerate(pairs)
        if cocycle.form.data[i][j] != 0
    }


def h2_dims(l: LieSuperalgebra) -> tuple[int, int]:
    """dim H^2(L, F) = dim Z^2 - dim B^2, per parity."""
    out = []
    for parity in (0, 1):
        z = cocycle_space(l, parity)
        b = coboundary_space(l, parity)
        out.append(len(z) - len(b))
    return tuple(out)


def h2_representatives(l: LieSuperalgebra, parity: int) -> list[Cocycle2]:
    """Cocycles spanning a canonical complement of B^2 inside Z^2."""
    pairs, pos = _pair_index(l.space, parity)
    sr = SparseRref(len(pairs))
    for c in coboundary_space(l, parity):
        sr.insert(_pair_coords(l, parity, pairs, c))
    reps = []
    for z in cocycle_space(l, parity):
        if sr.insert(_pair_coords(l, parity, pairs, z)) is not None:
            reps.append(z)
    return reps


@dataclass
class CentralExtension:
    """A central extension of base with the added directions central.

    extended has dim(base) + len(cocycles); projection maps extended
    coordinates onto base coordinates and is a homomorphism whose kernel
    is the span of the added directions.
    """

    base: LieSuperalgebra
    cocycles: list
    extended: LieSuperalgebra
    projection: Matrix


def uce(l: LieSuperalgebra) -> CentralExtension:
    """Universal central extension of a perfect Lie superalgebra.

    The extension is built on L + H^2 directions with bracket
    [x,y]^ = [x,y] + sum_i phi_i(x,y) c_i, each c_i central of the parity
    of phi_i.
    """
    if len(derived_subalgebra(l)) != l.dim:
        raise NotPerfect("universal central extensions need a perfect algebra")
    reps = h2_representatives(l, 0) + h2_representatives(l, 1)
    n = l.dim
    k = len(reps)
    parity = tuple(l.parity) + tuple(c.parity for c in reps)
    labels = None
    if l.labels is not None:
        labels = tuple(l.labels) + tuple(f"c{t + 1}" for t in range(k))
    space = SuperSpace(n + k, parity, labels)
    entries = {}
    for i in range(n):
        for j in range(n):
            terms = [(m, c) for m, c in l.table.entries.get((i, j), ())]
            for t, coc in enumerate(reps):
                v = coc.form.data[i][j]
                if v:
                    terms.append((n + t, v))
            if terms:
                entries[(i, j)] = tuple(sorted(terms))
    table = StructureTable(space, "lie", entries)
    extended = LieSuperalgebra(
        table, {"name": f"uce({l.provenance.get('name', 'L')})", "base": l}
    )
    proj = Matrix.from_cols(
        [unit_vec(n, j) for j in range(n)] + [vec([0] * n) for _ in range(k)]
    )
    return CentralExtension(l, reps, extended, proj)


def extension_from_quotient(l: LieSuperalgebra, zbasis) -> CentralExtension:
    """Package an existing central quotient L -> L/<z> as a CentralExtension."""
    base, proj = quotient_central(l, zbasis)
    zsr = SparseRref(l.dim)
    zvecs = []
    for z in zbasis:
        zv = z.coords if isinstance(z, Element) else vec(z)
        zsr.insert(dense_to_sparse(zv))
    zrows = zsr.basis_dense()
    kept_cols = base.provenance["kept_columns"]
    lifted = [unit_vec(l.dim, c) for c in kept_cols]
    cocycles = []
    for t, zr in enumerate(zrows):
        form = Matrix.zeros(base.dim, base.dim)
        for a in range(base.dim):
            for b in range(base.dim):
                br = l.product_vec(lifted[a], lifted[b])
                lift_of_proj = [ZERO] * l.dim
                pv = base.product_vec(unit_vec(base.dim, a), unit_vec(base.dim, b))
                for s, c in enumerate(pv):
                    if c:
                        for idx, x in enumerate(lifted[s]):
                            lift_of_proj[idx] += c * x
                diff = tuple(p - q for p, q in zip(br, lift_of_proj))
                coords = zsr.coordinates(dense_to_sparse(diff))
                if coords is None:
                    raise ValidationError("quotient defect is not central")
                form.data[a][b] = coords[t]
        p = homogeneous_parity(l.space, zr)
        cocycles.append(Cocycle2(p, form))
    return CentralExtension(base, cocycles, l, proj)


@dataclass
class CoverKernelReport:
    passed: bool
    kernel_in_zero: bool
    per_root_iso: bool
    kernel_dim: int
    details: list


def cover_kernel_check(ext: CentralExtension, cartan: CartanBasis) -> CoverKernelReport:
    """Verify ker(pi) lies in the zero weight space of the extension and pi
    restricts to a linear isomorphism on every nonzero root space."""
    from .roots import weight_decomposition

    base, big, proj = ext.base, ext.extended, ext.projection
    lifted = []
    for h in cartan.elements:
        lift = solve_linear(proj, h.coords)
        if lift is None:
            raise ValidationError("Cartan element has no preimage under the projection")
        lifted.append(Element(lift, 0))
    lifted_cartan = CartanBasis(lifted, tag="lifted", diag_mats=cartan.diag_mats)
    datum_big = weight_decomposition(big, lifted_cartan)
    datum_base = weight_decomposition(base, cartan)

    zero_sr = SparseRref(big.dim)
    for v in datum_big.zero_component.basis:
        zero_sr.insert(dense_to_sparse(v))
    kern = kernel(proj)
    kernel_in_zero = all(zero_sr.contains(dense_to_sparse(v)) for v in kern)

    per_root = True
    details = []
    for comp in datum_base.components:
        big_comp = datum_big.component(comp.weight)
        ok = big_comp is not None and big_comp.dim == comp.dim
        if ok:
            base_sr = SparseRref(base.dim)
            for v in comp.basis:
                base_sr.insert(dense_to_sparse(v))
            rank_sr = SparseRref(base.dim)
            for v in big_comp.basis:
                img = proj.mul_vec(v)
                if not base_sr.contains(dense_to_sparse(img)):
                    ok = False
                    break
                rank_sr.insert(dense_to_sparse(img))
            ok = ok and rank_sr.rank == comp.dim
        per_root = per_root and ok
        details.append({"weight": comp.weight, "dim": comp.dim, "iso": ok})
    extra = [c.weight for c in datum_big.components if datum_base.component(c.weight) is None]
    per_root = per_root and not extra
    return CoverKernelReport(
        passed=kernel_in_zero and per_root,
        kernel_in_zero=kernel_in_zero,
        per_root_iso=per_root,
        kernel_dim=len(kern),
        details=details,
    )


@dataclass(frozen=True)
class Fingerprint:
    """Deterministic isogeny-invariant summary of an algebra."""

    dims: tuple  # (even, odd)
    derived_series: tuple
    center_dim: int
    h2: tuple
    root_multiset: tuple | None = None


def fingerprint(l: LieSuperalgebra, cartan: CartanBasis | None = None) -> Fingerprint:
    series = [l.dim]
    current = l
    while True:
        d = derived_subalgebra(current)
        if len(d) == current.dim:
            break
        series.append(len(d))
        if not d:
            break
        table, _ = restricted_table(current, d, "lie")
        current = LieSuperalgebra(table, {"name": "derived"})
    root_multiset = None
    if cartan is not None:
        from .roots import weight_decomposition

        datum = weight_decomposition(l, cartan)
        root_multiset = tuple(
            sorted(
                (tuple(str(x) for x in c.weight), c.even_dim, c.odd_dim)
                for c in datum.components
            )
        )
    return Fingerprint(
        dims=(l.space.even_dim, l.space.odd_dim),
        derived_series=tuple(series),
        center_dim=len(center(l)),
        h2=h2_dims(l),
        root_multiset=root_multiset,
    )


def isogenous(l1: LieSuperalgebra, l2: LieSuperalgebra) -> str:
    """Fingerprint comparison of the central quotients: 'equal' as far as
    the invariants see (not a proof of isomorphism), or 'different'
    (disproves central isogeny)."""
    prints = []
    for l in (l1, l2):
        z = center(l)
        q = quotient_central(l, z)[0] if z else l
        prints.append(fingerprint(q))
    return "equal" if prints[0] == prints[1] else "different"
