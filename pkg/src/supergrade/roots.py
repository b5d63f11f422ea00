"""Weight-space decompositions and A(n,n) root-grading verification.

Weights are coordinate vectors of functional values against a provided
Cartan basis, not abstract functionals; the A(n,n) pattern is generated
against the same basis through diagonal-matrix representatives, which
avoids any root-system isomorphism search.  Components are sorted by
lexicographic weight and carry canonical RREF bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constructors import CartanBasis, construct_psl, construct_sl, matrix_unit_in_psl
from .errors import (
    BadParams,
    NonSplitSpectrum,
    NotDiagonalizable,
    NotHomomorphism,
    NotThreeGraded,
    ValidationError,
)
from .exact import (
    Matrix,
    SparseRref,
    Vec,
    ZERO,
    ONE,
    dense_to_sparse,
    is_zero_vec,
    kernel,
    min_poly,
    poly_degree,
    rational_roots,
    scale_vec,
    unit_vec,
    vec,
)
from .superalg import (
    Element,
    LieSuperalgebra,
    SuperSpace,
    _coords,
    derived_subalgebra,
    homogeneous_parity,
)

TWO = Fraction(2)


@dataclass
class RootComponent:
    """One simultaneous eigenspace: weight, canonical basis, graded dims."""

    weight: tuple
    basis: list
    even_dim: int
    odd_dim: int

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim


@dataclass
class RootDatum:
    """Weight-space decomposition of an algebra against a Cartan basis."""

    cartan: CartanBasis
    components: list  # nonzero weights, sorted lexicographically
    zero_component: RootComponent

    def all_components(self) -> list:
        return [self.zero_component] + self.components

    def component(self, weight) -> RootComponent | None:
        for c in self.components:
            if c.weight == tuple(weight):
                return c
        if all(x == 0 for x in weight):
            return self.zero_component
        return None


def _eigen_split(m: Matrix, witness: str):
    """Eigenvalues and eigenspace bases of a diagonalizable rational matrix.

    Diagnoses the failure mode exactly: an irrational eigenvalue raises
    NonSplitSpectrum, a repeated root of the minimal polynomial raises
    NotDiagonalizable.
    """
    d = m.rows
    if d == 0:
        return []
    mp = min_poly(m.mul_vec, d)
    roots, cofactor = rational_roots(mp)
    if poly_degree(cofactor) > 0:
        raise NonSplitSpectrum(f"{witness} has an irrational eigenvalue")
    for lam, mult in roots:
        if mult > 1:
            raise NotDiagonalizable(
                f"{witness} is not diagonalizable at eigenvalue {lam}",
                eigenvalue=lam,
                witness=witness,
            )
    out = []
    for lam, _ in roots:
        shifted = Matrix(
            [[m.data[r][c] - (lam if r == c else ZERO) for c in range(d)] for r in range(d)]
        )
        out.append((lam, kernel(shifted)))
    return out


def weight_decomposition(l: LieSuperalgebra, cartan: CartanBasis) -> RootDatum:
    """Simultaneous rational-eigenspace decomposition of ad(h) for h in the
    Cartan basis.  Fails if some ad(h) has an irrational eigenvalue or is
    not diagonalizable on L."""
    from .constructors import _check_cartan

    _check_cartan(l, cartan)
    n = l.dim
    comps = [((), [unit_vec(n, i) for i in range(n)])]
    for t, h in enumerate(cartan.elements):
        witness = f"ad(cartan element {t})"
        refined = []
        for wt, basis in comps:
            sub = SparseRref(n)
            for v in basis:
                sub.insert(dense_to_sparse(v))
            rows = sub.basis_dense()
            cols = []
            for v in rows:
                img = l.product_vec(h.coords, v)
                c = sub.coordinates(dense_to_sparse(img))
                if c is None:
                    raise ValidationError(
                        f"{witness} does not preserve a previous eigenspace; "
                        "the Cartan basis is not closed under simultaneous refinement"
                    )
                cols.append(vec(c))
            restricted = Matrix.from_cols(cols)
            for lam, local in _eigen_split(restricted, witness):
                ambient = []
                for lv in local:
                    w = [ZERO] * n
                    for k, c in enumerate(lv):
                        if c:
                            for idx, x in enumerate(rows[k]):
                                if x:
                                    w[idx] += c * x
                    ambient.append(tuple(w))
                refined.append((wt + (lam,), ambient))
        comps = refined

    components = []
    zero = None
    zero_wt = (ZERO,) * len(cartan.elements)
    total = 0
    for wt, basis in sorted(comps, key=lambda p: p[0]):
        sub = SparseRref(n)
        for v in basis:
            sub.insert(dense_to_sparse(v))
        rows = sub.basis_dense()
        ev = od = 0
        for v in rows:
            p = homogeneous_parity(l.space, v)
            if p is None:
                raise ValidationError("weight-space basis vector is not homogeneous")
            ev += p == 0
            od += p == 1
        comp = RootComponent(wt, rows, ev, od)
        total += comp.dim
        if wt == zero_wt:
            zero = comp
        else:
            components.append(comp)
    if total != n:
        raise ValidationError("weight spaces do not fill the algebra")
    if zero is None:
        zero = RootComponent(zero_wt, [], 0, 0)
    return RootDatum(cartan, components, zero)


@dataclass
class ExpectedRoots:
    """The A(n,n) root pattern evaluated against given Cartan representatives."""

    n: int
    weights: dict  # weight -> [even_mult, odd_mult]
    pairs: dict  # weight -> list of (i, j) index pairs, unbarred < m <= barred

    def heights(self, weight) -> set:
        """Unbarred-versus-barred height in {-1, 0, 1} per matching pair."""
        m = self.n + 1
        out = set()
        for i, j in self.pairs[weight]:
            out.add((1 if i < m else 0) - (1 if j < m else 0))
        return out


def expected_ann_roots(n: int, diag_mats=None) -> ExpectedRoots:
    """The root system of psl(n+1,n+1): all e_i - e_j with i != j, under the
    relations sum(e_unbarred) = 0 = sum(e_barred).

    diag_mats gives the diagonal representatives of the Cartan basis the
    weights are evaluated against (entries per index of I, unbarred block
    then barred block, both block sums zero); default is the canonical
    Cartan of construct_psl(n).
    """
    if n < 1:
        raise BadParams("A(n,n) needs n >= 1")
    m = n + 1
    if diag_mats is None:
        diag_mats = construct_sl(m, m).provenance["cartan_h"].diag_mats
    for d in diag_mats:
        if len(d) != 2 * m:
            raise BadParams("diagonal representatives must have 2(n+1) entries")
        if sum(d[:m]) != 0 or sum(d[m:]) != 0:
            raise BadParams("diagonal representatives must have both block sums zero")
    weights: dict = {}
    pairs: dict = {}
    for i in range(2 * m):
        for j in range(2 * m):
            if i == j:
                continue
            wt = tuple(Fraction(d[i]) - Fraction(d[j]) for d in diag_mats)
            parity = ((i >= m) + (j >= m)) % 2
            if wt not in weights:
                weights[wt] = [0, 0]
                pairs[wt] = []
            weights[wt][parity] += 1
            pairs[wt].append((i, j))
    return ExpectedRoots(n, weights, pairs)


# ---------------------------------------------------------------------------
# cover embeddings
# ---------------------------------------------------------------------------


@dataclass
class CoverEmbedding:
    """A grading-subsuperalgebra candidate inside L.

    kind 'sl' or 'psl': images list the embedded basis of the reference
    copy of sl(n+1,n+1) or psl(n+1,n+1).  kind 'm11': images is a dict of
    the eight TKK generators e1, e2, x, y, e1~, e2~, x~, y~ of a certified
    M_{1,1}+ quadruple, from which a central cover of psl(2,2) is grown.
    """

    kind: str
    n: int
    images: object
    reference: LieSuperalgebra | None = None


def identity_cover(l: LieSuperalgebra) -> CoverEmbedding:
    """The algebra as a cover of itself (for psl(n+1,n+1) instances)."""
    n = l.provenance.get("n")
    if n is None:
        raise BadParams("identity_cover needs a psl(n+1,n+1) instance")
    return CoverEmbedding("psl", n, [unit_vec(l.dim, i) for i in range(l.dim)], l)


def slA_cover(l: LieSuperalgebra) -> CoverEmbedding:
    """The embedded sl(m,m) (x) 1 inside a construct_sl_A output."""
    sl = l.provenance.get("cover_sl")
    images = l.provenance.get("cover_images")
    if sl is None or sl.provenance["m"] != sl.provenance["n"]:
        raise BadParams("slA_cover needs sl_(n+1,n+1)(A) provenance")
    return CoverEmbedding("sl", sl.provenance["m"] - 1, images, sl)


def sl_in_gl_cover(gl: LieSuperalgebra) -> CoverEmbedding:
    """The supertrace-zero subalgebra embedded in a gl(n+1,n+1) instance."""
    info = gl.provenance.get("gl")
    if info is None or info["m"] != info["n"]:
        raise BadParams("sl_in_gl_cover needs gl(n+1,n+1)")
    sl = construct_sl(info["m"], info["n"])
    return CoverEmbedding("sl", info["m"] - 1, sl.provenance["embedding"], sl)


@dataclass
class CoverAnalysis:
    cartan: CartanBasis
    n: int
    z_image: tuple | None
    evidence: dict


def _analyze_sl_cover(l: LieSuperalgebra, cover: CoverEmbedding) -> CoverAnalysis:
    ref = cover.reference
    images = [vec(v) for v in cover.images]
    if len(images) != ref.dim:
        raise NotHomomorphism("embedding image count differs from the cover basis")
    sr = SparseRref(l.dim)
    for v in images:
        sr.insert(dense_to_sparse(v))
    if sr.rank != ref.dim:
        raise NotHomomorphism("cover embedding is not injective")
    for i in range(ref.dim):
        for j in range(i, ref.dim):
            expect = [ZERO] * l.dim
            for k, c in ref.table.entries.get((i, j), ()):
                for t, x in enumerate(images[k]):
                    if x:
                        expect[t] += c * x
            got = l.product_vec(images[i], images[j])
            if tuple(expect) != tuple(got):
                raise NotHomomorphism(
                    f"embedding fails the homomorphism law on cover basis pair ({i},{j})"
                )
    h_ref = ref.provenance["cartan_h"]

    def push(coords) -> Vec:
        out = [ZERO] * l.dim
        for k, c in enumerate(coords):
            if c:
                for t, x in enumerate(images[k]):
                    if x:
                        out[t] += c * x
        return tuple(out)

    cartan = CartanBasis(
        elements=[Element(push(e.coords), 0) for e in h_ref.elements],
        tag="hbar",
        diag_mats=h_ref.diag_mats,
    )
    zc = ref.provenance.get("z")
    evidence = {
        "cover": ref.provenance.get("name", "cover"),
        "cover_dim": ref.dim,
        "cover_perfect": len(derived_subalgebra(ref)) == ref.dim,
        "embedding_rank": sr.rank,
    }
    return CoverAnalysis(cartan, cover.n, push(zc) if zc is not None else None, evidence)


_M11_KEYS = ("e1", "e2", "x", "y", "e1~", "e2~", "x~", "y~")


def _m11_psl_targets() -> dict:
    """psl(2,2) images of the eight TKK generators of a certified quadruple.

    y and y~ carry a factor 2: the certified relations normalize x.y to
    e1 - e2, which corresponds to the matrix-unit basis with y doubled.
    """
    psl22, _ = construct_psl(1)
    u = lambda r, c: matrix_unit_in_psl(psl22, r, c)
    return psl22, {
        "e1": u(0, 1),
        "e2": u(2, 3),
        "x": u(0, 3),
        "y": scale_vec(TWO, u(2, 1)),
        "e1~": u(1, 0),
        "e2~": u(3, 2),
        "x~": u(1, 2),
        "y~": scale_vec(TWO, u(3, 0)),
    }


def _analyze_m11_cover(l: LieSuperalgebra, cover: CoverEmbedding) -> CoverAnalysis:
    images = {k: vec(v) for k, v in cover.images.items()}
    if set(images) != set(_M11_KEYS):
        raise BadParams(f"m11 cover needs generator images {_M11_KEYS}")
    psl22, targets = _m11_psl_targets()
    nl, np_ = l.dim, psl22.dim

    def aug_row(v: Vec, p: Vec) -> dict:
        row = dense_to_sparse(v)
        for t, c in enumerate(p):
            if c:
                row[nl + t] = c
        return row

    sr = SparseRref(nl + np_, npivot=nl)
    elems: list[tuple[Vec, Vec]] = []
    queue = [(images[k], targets[k]) for k in _M11_KEYS]
    while queue:
        v, p = queue.pop()
        red = sr.reduce(aug_row(v, p))
        if all(c >= nl for c in red):
            if red:
                raise NotHomomorphism(
                    "generated subalgebra has a relation that fails in psl(2,2); "
                    "the generators do not span a central cover"
                )
            continue
        sr.insert(aug_row(v, p))
        elems.append((v, p))
        for v2, p2 in elems:
            queue.append((l.product_vec(v, v2), psl22.product_vec(p, p2)))
            queue.append((l.product_vec(v2, v), psl22.product_vec(p2, p)))

    rows = sr.basis()
    s_dim = len(rows)
    l_parts = [tuple(r.get(t, ZERO) for t in range(nl)) for r in rows]
    psi_parts = [tuple(r.get(nl + t, ZERO) for t in range(np_)) for r in rows]

    psi_rank = SparseRref(np_)
    for p in psi_parts:
        psi_rank.insert(dense_to_sparse(p))
    if psi_rank.rank != np_:
        raise NotHomomorphism("generated cover does not map onto psl(2,2)")

    kern = kernel(Matrix.from_cols([vec(p) for p in psi_parts]))
    for kv in kern:
        zl = [ZERO] * nl
        for r, c in enumerate(kv):
            if c:
                for t, x in enumerate(l_parts[r]):
                    if x:
                        zl[t] += c * x
        for b in l_parts:
            if any(l.product_vec(zl, b)):
                raise NotHomomorphism("kernel of the cover map is not central")

    dsr = SparseRref(nl + np_, npivot=nl)
    for i, (va, pa) in enumerate(zip(l_parts, psi_parts)):
        for vb, pb in zip(l_parts[i:], psi_parts[i:]):
            dsr.insert(aug_row(l.product_vec(va, vb), psl22.product_vec(pa, pb)))
    if dsr.rank != s_dim:
        raise NotHomomorphism("generated cover is not perfect")

    h1 = l.product_vec(images["e1"], images["e1~"])
    h2 = l.product_vec(images["e2"], images["e2~"])
    cartan = CartanBasis(
        elements=[Element(vec(h1), 0), Element(vec(h2), 0)],
        tag="hbar",
        diag_mats=((ONE, -ONE, ZERO, ZERO), (ZERO, ZERO, ONE, -ONE)),
    )
    evidence = {
        "cover": "generated from M(1,1)+ quadruple",
        "cover_dim": s_dim,
        "cover_kernel_dim": len(kern),
        "cover_perfect": True,
        "maps_onto_psl22": True,
    }
    return CoverAnalysis(cartan, 1, None, evidence)


def analyze_cover(l: LieSuperalgebra, cover: CoverEmbedding) -> CoverAnalysis:
    if cover.kind in ("sl", "psl"):
        return _analyze_sl_cover(l, cover)
    if cover.kind == "m11":
        return _analyze_m11_cover(l, cover)
    raise BadParams(f"unknown cover kind {cover.kind!r}")


# ---------------------------------------------------------------------------
# grading verification
# ---------------------------------------------------------------------------


@dataclass
class GradingReport:
    verdict: str  # 'graded' | 'not_graded'
    conditions: dict  # per-condition evidence
    matched_root_system: str | None
    datum: RootDatum | None


def verify_delta_graded(l: LieSuperalgebra, cover: CoverEmbedding) -> GradingReport:
    """Check the three defining conditions of an A(n,n)-grading.

    (1) the cover embeds as a subsuperalgebra (homomorphism checked on all
    basis pairs, cover-ness certified); (2) L decomposes into weight
    spaces of the lifted Cartan with weights inside the A(n,n) pattern;
    (3) the zero component is spanned by brackets of opposite root spaces.
    """
    analysis = analyze_cover(l, cover)
    conditions = {"condition1": {"passed": True, **analysis.evidence}}
    datum = weight_decomposition(l, analysis.cartan)
    expected = expected_ann_roots(analysis.n, analysis.cartan.diag_mats)
    offenders = [c.weight for c in datum.components if c.weight not in expected.weights]
    conditions["condition2"] = {
        "passed": not offenders,
        "nonzero_weights": len(datum.components),
        "unexpected_weights": offenders,
    }

    n = l.dim
    span = SparseRref(n)
    for comp in datum.components:
        neg = datum.component(tuple(-x for x in comp.weight))
        if neg is None:
            continue
        for va in comp.basis:
            for vb in neg.basis:
                span.insert(dense_to_sparse(l.product_vec(va, vb)))
    zero_sr = SparseRref(n)
    for v in datum.zero_component.basis:
        zero_sr.insert(dense_to_sparse(v))
    deficit = [
        v
        for v in datum.zero_component.basis
        if not span.contains(dense_to_sparse(v))
    ]
    leak = [
        r for r in span.basis() if not zero_sr.contains(r)
    ]
    conditions["condition3"] = {
        "passed": not deficit and not leak,
        "zero_component_dim": datum.zero_component.dim,
        "bracket_span_dim": span.rank,
        "deficit_count": len(deficit),
    }
    passed = all(c["passed"] for c in conditions.values())
    return GradingReport(
        verdict="graded" if passed else "not_graded",
        conditions=conditions,
        matched_root_system=f"A({analysis.n},{analysis.n})" if passed else None,
        datum=datum,
    )


@dataclass
class ZTrivialReport:
    passed: bool
    vacuous: bool = False
    witness: int | None = None  # offending basis index


def check_z_trivial(l: LieSuperalgebra, cover) -> ZTrivialReport:
    """Verify that the image of the cover's central element z acts trivially.

    Accepts a CoverEmbedding (vacuously true for psl and m11 covers, which
    carry no distinguished z) or an explicit element of L.
    """
    if isinstance(cover, CoverEmbedding):
        if cover.kind != "sl":
            return ZTrivialReport(passed=True, vacuous=True)
        ref = cover.reference
        zc = ref.provenance.get("z")
        if zc is None:
            return ZTrivialReport(passed=True, vacuous=True)
        images = [vec(v) for v in cover.images]
        z = [ZERO] * l.dim
        for k, c in enumerate(zc):
            if c:
                for t, x in enumerate(images[k]):
                    if x:
                        z[t] += c * x
        z = tuple(z)
    else:
        z = _coords(cover)
    for j in range(l.dim):
        if any(l.product_vec(z, unit_vec(l.dim, j))):
            return ZTrivialReport(passed=False, witness=j)
    return ZTrivialReport(passed=True)


# ---------------------------------------------------------------------------
# 3-gradings
# ---------------------------------------------------------------------------


@dataclass
class ThreeGrading:
    """Bases of the parts of a short grading L(-1) + L(0) + L(1)."""

    minus: list
    zero: list
    plus: list

    def part(self, k: int) -> list:
        return {-1: self.minus, 0: self.zero, 1: self.plus}[k]

    def dims(self, space: SuperSpace) -> tuple:
        out = []
        for part in (self.minus, self.zero, self.plus):
            ev = sum(1 for v in part if homogeneous_parity(space, v) == 0)
            out.append((ev, len(part) - ev))
        return tuple(out)


def three_grading(l: LieSuperalgebra, datum: RootDatum, style: str, h=None) -> ThreeGrading:
    """Partition root components into a 3-grading and verify closure.

    style 'height' (n >= 2): L(1) collects the unbarred-minus-barred root
    spaces per the A(n,n) pattern.  style 'sl2': parts are the 0, +2, -2
    eigenspaces of a designated even element h.
    """
    parts = {-1: [], 0: list(datum.zero_component.basis), 1: []}
    if style == "height":
        rank = len(datum.cartan.elements)
        if rank % 2 or rank < 4:
            raise BadParams("height style needs the rank-2n Cartan of A(n,n), n >= 2")
        n = rank // 2
        expected = expected_ann_roots(n, datum.cartan.diag_mats)
        for comp in datum.components:
            if comp.weight not in expected.weights:
                raise NotThreeGraded(
                    f"weight {comp.weight} is outside the A({n},{n}) pattern"
                )
            hs = expected.heights(comp.weight)
            if len(hs) != 1:
                raise NotThreeGraded(f"ambiguous height for weight {comp.weight}")
            parts[hs.pop()].extend(comp.basis)
    elif style == "sl2":
        if h is None:
            raise BadParams("sl2 style needs the designated even element h")
        hc = _coords(h)
        for comp in datum.components + [datum.zero_component]:
            if not comp.basis:
                continue
            lam = None
            for v in comp.basis:
                img = l.product_vec(hc, v)
                for cand in (ZERO, TWO, -TWO):
                    if img == scale_vec(cand, v):
                        this = cand
                        break
                else:
                    raise NotThreeGraded(
                        "ad(h) does not act by 0, 2, -2 on a root component",
                        witness=comp.weight,
                    )
                if lam is None:
                    lam = this
                elif lam != this:
                    raise NotThreeGraded(
                        "ad(h) acts with mixed eigenvalues inside one component",
                        witness=comp.weight,
                    )
            key = 0 if lam == 0 else (1 if lam == TWO else -1)
            if comp is datum.zero_component:
                if key != 0:
                    raise NotThreeGraded("zero component escapes L(0)")
            else:
                parts[key].extend(comp.basis)
    else:
        raise BadParams(f"unknown three-grading style {style!r}")

    n = l.dim
    spans = {}
    for k in (-1, 0, 1):
        sr = SparseRref(n)
        for v in parts[k]:
            sr.insert(dense_to_sparse(v))
        spans[k] = sr
    if sum(s.rank for s in spans.values()) != n:
        raise NotThreeGraded("parts do not sum to the whole algebra")
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            target = a + b
            for va in parts[a]:
                for vb in parts[b]:
                    prod = l.product_vec(va, vb)
                    if is_zero_vec(prod):
                        continue
                    if target not in (-1, 0, 1):
                        raise NotThreeGraded(
                            f"[L({a}),L({b})] is nonzero", witness=(a, b)
                        )
                    if not spans[target].contains(dense_to_sparse(prod)):
                        raise NotThreeGraded(
                            f"[L({a}),L({b})] escapes L({target})", witness=(a, b)
                        )
    return ThreeGrading(minus=parts[-1], zero=parts[0], plus=parts[1])
