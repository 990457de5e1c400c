"""``hermitia`` command-line interface.

Every subcommand prints one JSON object on standard output.  Exit codes:
0 success, 2 invalid input, 3 mathematical precondition failure.  Floats are
rounded to 12 significant digits and the seed is always echoed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import acceptance, bergmann, domains, jordan, lie, maslov, toledo
from .domains import DomainSpec
from .numeric import (
    HermitiaError,
    PreconditionError,
    Rng,
    ValidationError,
    herm_eigen,
    matrix_from_json,
    matrix_to_json,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


# ---------------------------------------------------------------------------
# JSON helpers


def _round(obj: Any) -> Any:
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        x = float(f"{x:.12g}")
        return 0.0 if x == 0 else x
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _emit(obj: dict, stream=None) -> None:
    stream = sys.stdout if stream is None else stream
    stream.write(json.dumps(_round(obj)) + "\n")


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc.msg}") from exc


def _parse_params(raw: str | None) -> Any:
    if raw is None:
        return None
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        try:
            return [int(x) for x in raw.split(",") if x.strip()]
        except ValueError as exc:
            raise ValidationError(f"cannot parse --params {raw!r}") from exc


def _spec_from_flags(args) -> DomainSpec | None:
    if getattr(args, "family", None) is None:
        return None
    params = _parse_params(getattr(args, "params", None))
    if params is None:
        if args.p is not None or args.q is not None:
            params = {"p": args.p, "q": args.q}
        elif args.n is not None:
            params = {"n": args.n}
        else:
            raise ValidationError("give --params or --p/--q or --n")
    return DomainSpec.parse(args.family, params)


def _spec_for(args, doc: Any = None) -> DomainSpec:
    """Family from the flags or the input document; both must agree."""
    flag_spec = _spec_from_flags(args)
    doc_spec = None
    if isinstance(doc, dict) and "family" in doc:
        doc_spec = DomainSpec.parse(doc["family"], doc.get("params"))
    if flag_spec is not None and doc_spec is not None and flag_spec != doc_spec:
        raise ValidationError(f"family flags ({flag_spec.label}) disagree with the input file ({doc_spec.label})")
    spec = flag_spec or doc_spec
    if spec is None:
        raise ValidationError("no family given")
    return spec


def _triple(args) -> tuple[DomainSpec, list[np.ndarray]]:
    doc = _load_json(args.triple)
    if not isinstance(doc, dict):
        raise ValidationError("triple JSON must be an object")
    spec = _spec_for(args, doc)
    pts = doc.get("points", doc.get("triple"))
    if not isinstance(pts, list) or len(pts) != 3:
        raise ValidationError('triple JSON needs "points": [Z1, Z2, Z3]')
    Z = [domains.validate_point(spec, matrix_from_json(m, f"points[{i}]")) for i, m in enumerate(pts)]
    return spec, Z


def _point(args, key: str = "point") -> tuple[DomainSpec, np.ndarray]:
    doc = _load_json(getattr(args, key))
    if not isinstance(doc, dict) or "Z" not in doc:
        raise ValidationError('point JSON needs {"family", "params", "Z"}')
    spec = _spec_for(args, doc)
    return spec, domains.validate_point(spec, matrix_from_json(doc["Z"], "Z"))


def _spec_json(spec: DomainSpec) -> dict:
    return {"family": spec.family, "params": spec.params, "label": spec.label}


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> dict:
    spec = _spec_for(args)
    rd = lie.root_data(spec.family, spec.params)
    return {**_spec_json(spec), "rank": spec.rank, "tube": spec.tube_type, "shilov_dim": lie.shilov_dim(rd)}


def cmd_point_test(args) -> dict:
    spec, Z = _point(args)
    pc = domains.interior_test(spec, Z)
    return {
        **_spec_json(spec),
        "class": str(pc),
        "orbit_index": pc.orbit_index,
        "shilov": pc.is_shilov,
        "defect_spectrum": [float(x) for x in domains.defect_spectrum(spec, Z)],
    }


def cmd_beta(args) -> dict:
    spec, (x, y, z) = _triple(args)
    v = bergmann.beta_value(spec, x, y, z)
    return {**_spec_json(spec), "value": v, "abs_over_pi": abs(v) / math.pi, "bound": math.pi * spec.rank}


def cmd_beta_probe(args) -> dict:
    spec = _spec_for(args)
    if args.samples < 1:
        raise ValidationError("--samples must be positive")
    vals = bergmann.beta_value_set_probe(spec, args.samples, Rng(args.seed))
    out = {
        **_spec_json(spec),
        "samples": args.samples,
        "histogram": bergmann.histogram(vals, spec, args.bins),
        "max_abs": max(abs(v) for v in vals),
        "values": vals,
    }
    if spec.tube_type:
        out["max_lattice_distance"] = max(bergmann.lattice_distance(spec, v) for v in vals)
    return out


def cmd_maslov(args) -> dict:
    spec, (x, y, z) = _triple(args)
    if args.model == "subspace":
        L = [domains.subspace_of_shilov(spec, p) for p in (x, y, z)]
        res = maslov.symplectic_triple_form(*L)
    else:
        res = maslov.maslov_extended(spec, x, y, z, seed=args.seed)
    pair_transverse = [domains.transverse(spec, a, b) for a, b in ((x, y), (y, z), (x, z))]
    return {
        **_spec_json(spec),
        "model": args.model,
        "value": res.value,
        "degenerate_dims": res.degenerate_dims,
        "pairwise_transverse": pair_transverse,
    }


def cmd_cayley(args) -> dict:
    spec, Z = _point(args)
    if args.base is not None:
        _, B = _point(args, "base")
        Y = jordan.cayley_based(spec, B, Z)
    else:
        Y = jordan.cayley_to_tube(spec, Z)
    im = Y.imag if spec.family == "sp" else (Y - Y.conj().T) / 2j
    w, _ = herm_eigen(0.5 * (im + im.conj().T))
    return {**_spec_json(spec), "image": matrix_to_json(Y), "im_spectrum": [float(v) for v in w]}


def _algebra_from_json(obj: Any, name: str) -> lie.LieAlgebraData:
    if not isinstance(obj, dict) or "family" not in obj:
        raise ValidationError(f"{name} needs a family")
    return lie.build_algebra(obj["family"], obj.get("params", ()), obj.get("realization"))


def cmd_tight_check(args) -> dict:
    doc = _load_json(args.hom)
    if not isinstance(doc, dict):
        raise ValidationError("hom JSON must be an object")
    src = _algebra_from_json(doc.get("source"), "source")
    tgt = _algebra_from_json(doc.get("target"), "target")
    imgs = doc.get("images")
    if not isinstance(imgs, list):
        raise ValidationError('hom JSON needs "images": [matrix, ...]')
    hom = lie.LieHom(src, tgt, tuple(matrix_from_json(m, f"images[{i}]") for i, m in enumerate(imgs)))
    v = lie.is_tight(hom)
    return {"source": src.describe(), "target": tgt.describe(), "verdict": v.verdict, "lambda": v.lam, "H2": lie.is_H2(hom)}


def cmd_irrep(args) -> dict:
    if args.n < 1:
        raise ValidationError("--n must be >= 1")
    h = lie.sl2_irrep(args.n)
    v = lie.is_tight(h)
    tr = np.trace(h.target.Z @ h(h.source.Z))
    return {
        "n": args.n,
        "lambda": v.lam,
        "verdict": v.verdict,
        "trace_Zg_image": float(tr.real),
        "homomorphism_residual": h.residual(),
        "images": [matrix_to_json(M) for M in h.images] if args.images else None,
    }


def cmd_rootdata(args) -> dict:
    spec = _spec_for(args)
    rd = lie.root_data(spec.family, spec.params)
    out = {
        **_spec_json(spec),
        "r": rd.r,
        "a": rd.a,
        "b": rd.b,
        "tube": rd.tube_type,
        "shilov_dim": lie.shilov_dim(rd),
        "bruhat_codims": [lie.bruhat_codim(rd, k) for k in range(rd.r + 1)],
        "triples_connected": lie.triples_connected(rd),
    }
    if not args.no_compute:
        m = lie.restricted_multiplicities(lie.build_algebra(spec.family, spec.params))
        out["computed"] = {"r": m.rank, "a": m.a, "b": m.b}
    return out


def cmd_toledo(args) -> dict:
    rep = toledo.SurfaceGroupRep.from_json(_load_json(args.rep))
    x0 = None
    if args.basepoint is not None:
        _, x0 = _point(args, "basepoint")
    res = toledo.toledo(rep, x0, winding=args.winding)
    return {
        **_spec_json(rep.spec),
        "genus": rep.genus,
        "value": res.value,
        "value_over_pi": res.value / math.pi,
        "bound": res.bound,
        "maximal": res.maximal,
        "winding": res.winding,
        "relator_residual": rep.relator_residual(),
    }


def cmd_fixture(args) -> dict:
    return toledo.fixture(args.name, args.target).to_json()


def cmd_selftest(args) -> dict:
    results = acceptance.run_all(args.seed, report=lambda line: print(line, file=sys.stderr))
    return {
        "passed": all(r.passed for r in results),
        "criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results],
    }


# ---------------------------------------------------------------------------


def _family_flags(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument("--family", required=required, help="su, sp, sostar or so2n")
    p.add_argument("--params", help='JSON object/list or comma list, e.g. "2,3"')
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hermitia", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="rank, tube type and Shilov dimension")
    _family_flags(p, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("point-test", help="Interior / Boundary(i) / Outside")
    _family_flags(p)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_point_test)

    p = sub.add_parser("beta", help="Bergmann cocycle of a triple")
    _family_flags(p)
    p.add_argument("--triple", required=True)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("beta-probe", help="cocycle values on random Shilov triples")
    _family_flags(p, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--bins", type=int, default=24)
    p.set_defaults(func=cmd_beta_probe)

    p = sub.add_parser("maslov", help="Maslov index of a Shilov triple")
    _family_flags(p)
    p.add_argument("--triple", required=True)
    p.add_argument("--model", choices=("subspace", "matrix"), default="matrix")
    p.set_defaults(func=cmd_maslov)

    p = sub.add_parser("cayley", help="tube-model image of a point")
    _family_flags(p)
    p.add_argument("--point", required=True)
    p.add_argument("--base", help="Shilov point sent to infinity (default i Id)")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("tight-check", help="tightness of a Lie algebra homomorphism")
    p.add_argument("--hom", required=True)
    p.set_defaults(func=cmd_tight_check)

    p = sub.add_parser("irrep", help="irreducible sl(2,R) -> sp(2n,R)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--images", action="store_true", help="include the basis images")
    p.set_defaults(func=cmd_irrep)

    p = sub.add_parser("rootdata", help="restricted root data (r, a, b)")
    _family_flags(p, required=True)
    p.add_argument("--no-compute", action="store_true", help="closed forms only")
    p.set_defaults(func=cmd_rootdata)

    p = sub.add_parser("toledo", help="Toledo invariant of a surface group representation")
    p.add_argument("--rep", required=True)
    p.add_argument("--winding", action="store_true")
    p.add_argument("--basepoint", help="interior point JSON (default 0)")
    p.set_defaults(func=cmd_toledo, family=None)

    p = sub.add_parser("fixture", help="emit a representation fixture")
    p.add_argument("--name", required=True)
    p.add_argument("--target")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(func=cmd_selftest)

    # a --seed given after the subcommand wins
    for sp in sub.choices.values():
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    return parser


def _error(exc: HermitiaError) -> dict:
    return {"error": exc.code, "detail": str(exc)}


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except ValidationError as exc:
        _emit(_error(exc), stdout)
        return EXIT_INPUT
    except PreconditionError as exc:
        _emit(_error(exc), stdout)
        return EXIT_PRECONDITION
    except np.linalg.LinAlgError as exc:
        _emit({"error": "singular", "detail": str(exc)}, stdout)
        return EXIT_PRECONDITION
    out["seed"] = args.seed
    _emit(out, stdout)
    if args.command == "selftest" and not out["passed"]:
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
