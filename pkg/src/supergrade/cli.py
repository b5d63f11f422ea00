"""Command-line surface: reproducible construction and verification runs.

Every command reads SCA structure-constant files, prints a compact JSON
result (or SCA text for constructions) to stdout, and optionally writes a
full report envelope with input digests via --out.  All output is
byte-deterministic: no timestamps, sorted keys, canonical rationals.

Exit codes: 0 verified/pass, 1 verified-negative (not_graded, failed
certificate, axiom violation, ...), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from fractions import Fraction

from . import cohomology, constructors, jordan, roots, sca, superalg
from .constructors import CartanBasis
from .errors import (
    AxiomViolation,
    BadParams,
    MissingUnit,
    NonSplitSpectrum,
    NotDiagonalizable,
    NotHomomorphism,
    NotPerfect,
    NotThreeGraded,
    SupergradeError,
    UnexpectedEigenvalue,
    UnitFailure,
)
from .exact import vec
from .superalg import Element

NEGATIVE_VERDICT_ERRORS = (
    AxiomViolation,
    MissingUnit,
    NotThreeGraded,
    UnexpectedEigenvalue,
    UnitFailure,
    NonSplitSpectrum,
    NotDiagonalizable,
    NotPerfect,
)

_WRAPPERS = {
    "lie": superalg.LieSuperalgebra,
    "assoc": superalg.AssocSuperalgebra,
    "jordan": superalg.JordanSuperalgebra,
}


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_algebra(path: str):
    table = sca.parse_sca(_read_text(path))
    return _WRAPPERS[table.kind](table, {"name": path})


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _parse_vector(spec: str, dim: int):
    if spec.startswith("@"):
        spec = _read_text(spec[1:]).replace(",", " ")
        parts = spec.split()
    else:
        parts = [p for p in spec.split(",") if p]
    if len(parts) != dim:
        raise BadParams(f"vector has {len(parts)} entries, expected {dim}")
    return vec(Fraction(p) for p in parts)


def _vec_json(v) -> list:
    return [str(c) for c in v]


def _weight_json(w) -> list:
    return [str(c) for c in w]


class _Output:
    """stdout result plus optional envelope report written to --out."""

    def __init__(self, argv, inputs):
        self.argv = list(argv)
        self.inputs = inputs

    def emit(self, result: dict, out: str | None, stdout_text: str | None = None) -> None:
        if stdout_text is not None:
            sys.stdout.write(stdout_text)
        else:
            sys.stdout.write(
                json.dumps(result, sort_keys=True, separators=(",", ":")) + "\n"
            )
        if out:
            envelope = {
                "schema": "supergrade-report/1",
                "command": self.argv,
                "inputs": {p: _digest(p) for p in self.inputs},
                "result": result,
            }
            with open(out, "w", encoding="utf-8") as fh:
                json.dump(envelope, fh, sort_keys=True, indent=2)
                fh.write("\n")


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def _coefficient_algebra(kind: str, params: list[str]):
    if kind in ("field", "dual_numbers"):
        if params:
            raise BadParams(f"{kind} takes no parameters")
        return constructors.construct_assoc(kind)
    if kind == "grassmann":
        if len(params) != 1:
            raise BadParams("grassmann takes one parameter k")
        return constructors.construct_assoc("grassmann", int(params[0]))
    if kind == "matrix_super":
        if len(params) != 2:
            raise BadParams("matrix_super takes two parameters p q")
        return constructors.construct_assoc("matrix_super", (int(params[0]), int(params[1])))
    raise BadParams(f"unknown coefficient algebra {kind!r}")


def _run_construct(args, out: _Output) -> int:
    what = args.what
    params = args.params
    cover_map = None
    if what == "gl":
        alg = constructors.construct_gl(int(params[0]), int(params[1]))
    elif what == "sl":
        alg = constructors.construct_sl(int(params[0]), int(params[1]))
    elif what == "psl":
        alg = constructors.construct_psl(int(params[0]))[0]
    elif what == "slA":
        m, n = int(params[0]), int(params[1])
        coeff = _coefficient_algebra(params[2], params[3:])
        alg = constructors.construct_sl_A(m, n, coeff)
        if m == n:
            cover_map = {
                "kind": "sl",
                "n": m - 1,
                "images": [_vec_json(v) for v in alg.provenance["cover_images"]],
            }
    elif what == "assoc":
        alg = _coefficient_algebra(params[0], params[1:])
    elif what == "mplus":
        alg = constructors.construct_jordan("Mplus", int(params[0]))
    elif what == "jp":
        alg = constructors.construct_jordan("JP", int(params[0]))
    elif what == "jq":
        alg = constructors.construct_jordan("JQ", int(params[0]))
    elif what == "m11":
        alg = constructors.construct_jordan("M11")
    else:
        raise BadParams(f"unknown construction {what!r}")
    if args.cover_out:
        if cover_map is None:
            raise BadParams("--cover-out is only available for construct slA with m == n")
        with open(args.cover_out, "w", encoding="utf-8") as fh:
            json.dump(cover_map, fh, sort_keys=True, indent=2)
            fh.write("\n")
    text = sca.write_sca(alg.table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.emit({"written": args.out, "dim": alg.dim, "kind": alg.kind}, None)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# cover resolution
# ---------------------------------------------------------------------------

_COVER_RE = re.compile(r"\A(p?sl)(\d)(\d)\Z")


def _resolve_cover(l, spec: str, cover_map_path: str | None) -> roots.CoverEmbedding:
    if spec == "m11":
        if not cover_map_path:
            raise BadParams("--cover m11 needs --cover-map with the eight generators")
        data = json.loads(_read_text(cover_map_path))
        images = {k: vec(Fraction(str(x)) for x in v) for k, v in data.get("images", data).items()}
        return roots.CoverEmbedding("m11", 1, images)
    match = _COVER_RE.match(spec)
    if not match:
        raise BadParams(f"unknown cover spec {spec!r}")
    family, m, n = match.group(1), int(match.group(2)), int(match.group(3))
    if m != n:
        raise BadParams("grading covers must be of type sl(n+1,n+1) or psl(n+1,n+1)")
    if family == "psl":
        ref = constructors.construct_psl(m - 1)[0]
    else:
        ref = constructors.construct_sl(m, m)
    if cover_map_path:
        data = json.loads(_read_text(cover_map_path))
        images = [vec(Fraction(str(x)) for x in row) for row in data["images"]]
        return roots.CoverEmbedding(family, m - 1, images, ref)

    file_labels = l.labels
    if file_labels is None:
        raise BadParams("cover resolution without --cover-map needs labeled bases")
    position = {name: i for i, name in enumerate(file_labels)}
    if ref.labels is not None and all(name in position for name in ref.labels):
        # the file is a relabeled copy of the reference (identity embedding)
        images = []
        for name in ref.labels:
            imgs = [Fraction(0)] * l.dim
            imgs[position[name]] = Fraction(1)
            images.append(tuple(imgs))
        return roots.CoverEmbedding(family, m - 1, images, ref)
    gl_labels = ref.provenance["ambient_gl"].labels if family == "sl" else None
    if gl_labels is not None and all(name in position for name in gl_labels):
        # file carries matrix-unit labels: push the sl basis through them
        images = []
        for bvec in ref.provenance["embedding"]:
            img = [Fraction(0)] * l.dim
            for t, c in enumerate(bvec):
                if c:
                    img[position[gl_labels[t]]] += c
            images.append(tuple(img))
        return roots.CoverEmbedding("sl", m - 1, images, ref)
    raise BadParams(
        "cannot resolve the cover embedding from labels; pass --cover-map"
    )


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _run_check(args, out: _Output) -> int:
    table = sca.parse_sca(_read_text(args.file))
    validators = {
        "lie": superalg.validate_lie,
        "assoc": superalg.validate_assoc,
        "jordan": superalg.validate_jordan,
    }
    try:
        validators[table.kind](table)
    except (AxiomViolation, MissingUnit) as exc:
        result = {"valid": False, "kind": table.kind, "dim": table.space.dim,
                  "reason": str(exc)}
        if isinstance(exc, AxiomViolation):
            result["axiom"] = exc.axiom
            result["indices"] = [i + 1 for i in exc.indices]
        out.emit(result, args.out)
        return 1
    out.emit({"valid": True, "kind": table.kind, "dim": table.space.dim}, args.out)
    return 0


def _cartan_from_args(l, specs) -> CartanBasis:
    elements = []
    for s in specs:
        v = _parse_vector(s, l.dim)
        p = superalg.homogeneous_parity(l.space, v)
        elements.append(Element(v, p))
    return CartanBasis(elements, tag="cli")


def _datum_json(datum) -> dict:
    return {
        "components": [
            {
                "weight": _weight_json(c.weight),
                "even_dim": c.even_dim,
                "odd_dim": c.odd_dim,
                "basis": [_vec_json(v) for v in c.basis],
            }
            for c in datum.components
        ],
        "zero_component": {
            "weight": _weight_json(datum.zero_component.weight),
            "even_dim": datum.zero_component.even_dim,
            "odd_dim": datum.zero_component.odd_dim,
            "basis": [_vec_json(v) for v in datum.zero_component.basis],
        },
    }


def _run_decompose(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    cartan = _cartan_from_args(l, args.cartan)
    datum = roots.weight_decomposition(l, cartan)
    out.emit(_datum_json(datum), args.out)
    return 0


def _grading_json(report, zreport) -> dict:
    conditions = {}
    for name, ev in report.conditions.items():
        conditions[name] = {
            k: (v if not isinstance(v, list) else [_weight_json(w) for w in v])
            for k, v in ev.items()
        }
    result = {
        "verdict": report.verdict,
        "matched_root_system": report.matched_root_system,
        "conditions": conditions,
        "z_action_trivial": zreport.passed if zreport else None,
    }
    if report.datum is not None:
        result["weights"] = [
            {"weight": _weight_json(c.weight), "even_dim": c.even_dim, "odd_dim": c.odd_dim}
            for c in report.datum.components
        ]
    return result


def _run_verify_grading(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    cover = _resolve_cover(l, args.cover, args.cover_map)
    try:
        report = roots.verify_delta_graded(l, cover)
    except NotHomomorphism as exc:
        result = {
            "verdict": "not_graded",
            "matched_root_system": None,
            "conditions": {"condition1": {"passed": False, "reason": str(exc)}},
            "z_action_trivial": None,
        }
        out.emit(result, args.out)
        return 1
    zreport = roots.check_z_trivial(l, cover)
    result = _grading_json(report, zreport)
    out.emit(result, args.out)
    return 0 if report.verdict == "graded" and zreport.passed else 1


def _run_three_grading(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    cover = _resolve_cover(l, args.cover, args.cover_map)
    analysis = roots.analyze_cover(l, cover)
    datum = roots.weight_decomposition(l, analysis.cartan)
    h = _parse_vector(args.h, l.dim) if args.h else None
    grading = roots.three_grading(l, datum, args.style, h=h)
    dims = grading.dims(l.space)
    result = {
        "style": args.style,
        "parts": {
            "minus": {"even_dim": dims[0][0], "odd_dim": dims[0][1]},
            "zero": {"even_dim": dims[1][0], "odd_dim": dims[1][1]},
            "plus": {"even_dim": dims[2][0], "odd_dim": dims[2][1]},
        },
    }
    out.emit(result, args.out)
    return 0


def _run_tkk(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    if l.kind != "jordan":
        raise BadParams("tkk needs a jordan SCA file")
    t = jordan.tkk(l)
    if args.m11:
        data = json.loads(_read_text(args.m11))
        quad = [vec(Fraction(str(x)) for x in data[k]) for k in ("e1", "e2", "x", "y")]
        cert = jordan.certify_m11(l, *quad)
        if not cert.passed:
            raise UnitFailure(
                f"the given elements fail the M(1,1)+ relations: {cert.failures()}"
            )
        gens = jordan.m11_tkk_generators(t, cert)
        if not args.cover_out:
            raise BadParams("--m11 needs --cover-out to store the generated cover")
        with open(args.cover_out, "w", encoding="utf-8") as fh:
            json.dump(
                {"kind": "m11", "images": {k: _vec_json(v) for k, v in gens.items()}},
                fh,
                sort_keys=True,
                indent=2,
            )
            fh.write("\n")
    elif args.cover_out:
        raise BadParams("--cover-out needs --m11")
    text = sca.write_sca(t.lie.table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.emit({"written": args.out, "dim": t.dim}, None)
    else:
        sys.stdout.write(text)
    return 0


def _run_jordan_from_grading(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    e = _parse_vector(args.e, l.dim)
    f = _parse_vector(args.f, l.dim)
    j = jordan.jordan_from_3grading(l, e, f)
    text = sca.write_sca(j.table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.emit({"written": args.out, "dim": j.dim}, None)
    else:
        sys.stdout.write(text)
    return 0


def _run_peirce(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    if l.kind != "jordan":
        raise BadParams("peirce needs a jordan SCA file")
    pd = jordan.peirce(l, _parse_vector(args.idempotent, l.dim))
    result = {
        "dims": list(pd.dims()),
        "parts": {
            name: [_vec_json(v) for v in part]
            for name, part in zip(("J0", "J1", "J2"), pd.parts)
        },
    }
    out.emit(result, args.out)
    return 0


def _run_certify_m11(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    if l.kind != "jordan":
        raise BadParams("certify-m11 needs a jordan SCA file")
    data = json.loads(_read_text(args.elements))
    quad = [vec(Fraction(str(x)) for x in data[k]) for k in ("e1", "e2", "x", "y")]
    cert = jordan.certify_m11(l, *quad)
    out.emit({"passed": cert.passed, "relations": dict(sorted(cert.results.items()))},
             args.out)
    return 0 if cert.passed else 1


def _run_h2(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    if l.kind != "lie":
        raise BadParams("h2 needs a lie SCA file")
    even, odd = cohomology.h2_dims(l)
    out.emit({"h2_even": even, "h2_odd": odd}, args.out)
    return 0


def _run_uce(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    if l.kind != "lie":
        raise BadParams("uce needs a lie SCA file")
    ext = cohomology.uce(l)
    text = sca.write_sca(ext.extended.table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.emit(
            {
                "written": args.out,
                "dim": ext.extended.dim,
                "added_central_dims": len(ext.cocycles),
            },
            None,
        )
    else:
        sys.stdout.write(text)
    return 0


def _run_fingerprint(args, out: _Output) -> int:
    l = _load_algebra(args.file)
    cartan = _cartan_from_args(l, args.cartan) if args.cartan else None
    fp = cohomology.fingerprint(l, cartan)
    result = {
        "dims": list(fp.dims),
        "derived_series": list(fp.derived_series),
        "center_dim": fp.center_dim,
        "h2": list(fp.h2),
        "root_multiset": (
            None
            if fp.root_multiset is None
            else [[list(w), e, o] for w, e, o in fp.root_multiset]
        ),
    }
    out.emit(result, args.out)
    return 0


def _run_isogenous(args, out: _Output) -> int:
    l1 = _load_algebra(args.file)
    l2 = _load_algebra(args.file2)
    verdict = cohomology.isogenous(l1, l2)
    out.emit({"verdict": verdict}, args.out)
    return 0 if verdict == "equal" else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supergrade",
        description="Exact computations with A(n,n)-graded Lie superalgebras, "
        "Jordan superalgebras and their central extensions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a named algebra as SCA")
    p.add_argument("what", choices=["gl", "sl", "psl", "slA", "assoc", "mplus", "jp", "jq", "m11"])
    p.add_argument("params", nargs="*")
    p.add_argument("--out")
    p.add_argument("--cover-out", help="write the embedded sl cover map (slA only)")
    p.set_defaults(func=_run_construct)

    p = sub.add_parser("check", help="run the axiom validator for the file's kind")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=_run_check)

    p = sub.add_parser("decompose", help="weight decomposition against a Cartan basis")
    p.add_argument("file")
    p.add_argument("--cartan", action="append", required=True,
                   help="comma-separated rationals or @file (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=_run_decompose)

    p = sub.add_parser("verify-grading", help="check the A(n,n)-grading conditions")
    p.add_argument("file")
    p.add_argument("--cover", required=True, help="slNN, pslNN, or m11")
    p.add_argument("--cover-map", help="JSON with explicit embedding images")
    p.add_argument("--out")
    p.set_defaults(func=_run_verify_grading)

    p = sub.add_parser("three-grading", help="compute a 3-grading and verify closure")
    p.add_argument("file")
    p.add_argument("--cover", required=True)
    p.add_argument("--cover-map")
    p.add_argument("--style", choices=["height", "sl2"], required=True)
    p.add_argument("--h", help="designated even element (sl2 style)")
    p.add_argument("--out")
    p.set_defaults(func=_run_three_grading)

    p = sub.add_parser("tkk", help="Tits-Kantor-Koecher algebra of a Jordan file")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--m11", help="JSON with a certified quadruple e1,e2,x,y")
    p.add_argument("--cover-out", help="write the generated A(1,1) cover map")
    p.set_defaults(func=_run_tkk)

    p = sub.add_parser("jordan-from-grading", help="recover a Jordan algebra from e, f")
    p.add_argument("file")
    p.add_argument("--e", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_run_jordan_from_grading)

    p = sub.add_parser("peirce", help="Peirce decomposition for an even idempotent")
    p.add_argument("file")
    p.add_argument("--idempotent", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_run_peirce)

    p = sub.add_parser("certify-m11", help="check the M(1,1)+ relations on four elements")
    p.add_argument("file")
    p.add_argument("--elements", required=True, help="JSON with e1, e2, x, y")
    p.add_argument("--out")
    p.set_defaults(func=_run_certify_m11)

    p = sub.add_parser("h2", help="second cohomology dimensions")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=_run_h2)

    p = sub.add_parser("uce", help="universal central extension as SCA")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=_run_uce)

    p = sub.add_parser("fingerprint", help="isogeny-invariant summary")
    p.add_argument("file")
    p.add_argument("--cartan", action="append")
    p.add_argument("--out")
    p.set_defaults(func=_run_fingerprint)

    p = sub.add_parser("isogenous", help="compare central-quotient fingerprints")
    p.add_argument("file")
    p.add_argument("file2")
    p.add_argument("--out")
    p.set_defaults(func=_run_isogenous)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    inputs = [
        getattr(args, name)
        for name in ("file", "file2", "cover_map", "elements", "m11")
        if getattr(args, name, None)
    ]
    out = _Output(["supergrade"] + argv, inputs)
    try:
        return args.func(args, out)
    except NEGATIVE_VERDICT_ERRORS as exc:
        sys.stdout.write(
            json.dumps(
                {"verdict": "negative", "error": type(exc).__name__, "message": str(exc)},
                sort_keys=True,
                separators=(",", ":"),
            )
            + "\n"
        )
        return 1
    except (SupergradeError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"supergrade: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
