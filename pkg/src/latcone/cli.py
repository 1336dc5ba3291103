"""Command-line interface: JSON in, deterministic JSON or aligned text out.

Exit codes: 0 = success with affirmative verdicts, 1 = computation succeeded
but the verdict is negative (class not admissible, lift fails, cross-check
false), 2 = malformed input or precondition violation. Output is
byte-identical for identical input: every collection is canonically ordered
and JSON keys are sorted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .comb import CombData, VERDICT_LIFTS, lift_contact_vector, minimal_monoid, smoothing_profile
from .cones import Cone
from .dfchart import DFChart, contact_order, enumerate_admissible, is_admissible
from .fsmonoid import FsMonoid, MonoidDiagram, MonoidMorphism, fs_colimit, saturate
from .intlattice import IntMatrix, vec
from .wonderful import (
    ADJOINT,
    COLOR_TYPES,
    SIMPLY_CONNECTED,
    Color,
    SphericalData,
    build_root_system,
    check_hypotheses,
    classify_curve_classes,
    distinguished_chart,
    group_wonderful_data,
    isogeny_invariants,
    verify_group_classification,
)


class InputError(ValueError):
    """Malformed JSON input or bad flag value."""


# ---------------------------------------------------------------------------
# JSON (de)serialization


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise InputError(message)


def _int_list(value: Any, what: str) -> list[int]:
    _expect(isinstance(value, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in value),
            f"{what} must be a list of integers")
    return list(value)


def _int_matrix_rows(value: Any, what: str) -> list[list[int]]:
    _expect(isinstance(value, list), f"{what} must be a list of integer rows")
    return [_int_list(row, f"{what} row") for row in value]


def monoid_to_json(monoid: FsMonoid) -> dict:
    return {"rank": monoid.ambient_rank, "generators": [list(g) for g in monoid.generators]}


def monoid_from_json(obj: Any) -> FsMonoid:
    _expect(isinstance(obj, dict), "monoid must be an object")
    _expect(isinstance(obj.get("rank"), int), "monoid rank must be an integer")
    gens = _int_matrix_rows(obj.get("generators", []), "generators")
    try:
        return FsMonoid(obj["rank"], gens)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cone_to_json(cone: Cone) -> dict:
    return {"rank": cone.ambient_rank, "rays": [list(r) for r in cone.rays]}


def cone_from_json(obj: Any) -> Cone:
    _expect(isinstance(obj, dict), "cone must be an object")
    _expect(isinstance(obj.get("rank"), int), "cone rank must be an integer")
    rays = _int_matrix_rows(obj.get("rays", []), "rays")
    try:
        return Cone(obj["rank"], rays)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def chart_to_json(chart: DFChart) -> dict:
    return {
        "monoid": monoid_to_json(chart.monoid),
        "pic_rank": chart.pic_rank,
        "L": chart.L.row_list(),
    }


def chart_from_json(obj: Any) -> DFChart:
    _expect(isinstance(obj, dict), "chart must be an object")
    monoid = monoid_from_json(obj.get("monoid"))
    _expect(isinstance(obj.get("pic_rank"), int), "pic_rank must be an integer")
    rows = _int_matrix_rows(obj.get("L"), "L")
    _expect(len(rows) == obj["pic_rank"], "L must have pic_rank rows")
    try:
        matrix = IntMatrix.from_rows(rows, cols=monoid.ambient_rank)
        return DFChart(monoid, obj["pic_rank"], matrix)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def comb_from_json(obj: Any) -> tuple[CombData, Optional[list[int]]]:
    _expect(isinstance(obj, dict), "comb must be an object")
    for key in ("n", "m", "genus"):
        _expect(isinstance(obj.get(key), int), f"comb {key} must be an integer")
    teeth = _int_matrix_rows(obj.get("teeth", []), "teeth")
    _expect(len(teeth) == obj["m"], "m does not match the number of teeth")
    degrees = _int_list(obj.get("handle_normal_degrees"), "handle_normal_degrees")
    prescribed = None
    if "contact_at_infinity" in obj:
        prescribed = _int_list(obj["contact_at_infinity"], "contact_at_infinity")
    try:
        comb = CombData(n=obj["n"], genus=obj["genus"], teeth=tuple(map(tuple, teeth)),
                        handle_normal_degrees=tuple(degrees))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return comb, prescribed


def spherical_to_json(data: SphericalData) -> dict:
    out = {
        "lambda_rank": data.lambda_rank,
        "valuation_cone": cone_to_json(data.valuation_cone),
        "colors": [
            {"name": c.name, "valuation": list(c.valuation), "type": c.color_type}
            for c in data.colors
        ],
        "intersection_is_kronecker": data.intersection_is_kronecker,
        "hyp_knop_asserted": data.hyp_knop_asserted,
    }
    if data.boundary_valuations is not None:
        out["boundary_valuations"] = data.boundary_valuations.row_list()
    if data.coordinates:
        out["coordinates"] = data.coordinates
    return out


def spherical_from_json(obj: Any) -> SphericalData:
    _expect(isinstance(obj, dict), "spherical data must be an object")
    _expect(isinstance(obj.get("lambda_rank"), int), "lambda_rank must be an integer")
    cone = cone_from_json(obj.get("valuation_cone"))
    _expect(isinstance(obj.get("colors"), list) and obj["colors"],
            "colors must be a nonempty list")
    colors = []
    for entry in obj["colors"]:
        _expect(isinstance(entry, dict), "color must be an object")
        _expect(isinstance(entry.get("name"), str), "color name must be a string")
        _expect(entry.get("type") in COLOR_TYPES, "color type must be one of a, a', b")
        valuation = _int_list(entry.get("valuation"), "color valuation")
        colors.append(Color(entry["name"], tuple(valuation), entry["type"]))
    boundary = None
    if obj.get("boundary_valuations") is not None:
        rows = _int_matrix_rows(obj["boundary_valuations"], "boundary_valuations")
        boundary = IntMatrix.from_rows(rows, cols=obj["lambda_rank"])
    for key in ("intersection_is_kronecker", "hyp_knop_asserted"):
        _expect(isinstance(obj.get(key), bool), f"{key} must be a boolean")
    try:
        return SphericalData(
            lambda_rank=obj["lambda_rank"],
            valuation_cone=cone,
            colors=tuple(colors),
            boundary_valuations=boundary,
            intersection_is_kronecker=obj["intersection_is_kronecker"],
            hyp_knop_asserted=obj["hyp_knop_asserted"],
            coordinates=obj.get("coordinates", ""),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def diagram_from_json(obj: Any) -> MonoidDiagram:
    _expect(isinstance(obj, dict), "diagram must be an object")
    _expect(isinstance(obj.get("objects"), list) and obj["objects"],
            "objects must be a nonempty list")
    objects = [monoid_from_json(o) for o in obj["objects"]]
    arrows = []
    for entry in obj.get("arrows", []):
        _expect(isinstance(entry, dict), "arrow must be an object")
        src, tgt = entry.get("source"), entry.get("target")
        _expect(isinstance(src, int) and isinstance(tgt, int),
                "arrow endpoints must be integers")
        _expect(0 <= src < len(objects) and 0 <= tgt < len(objects),
                "arrow endpoint out of range")
        rows = _int_matrix_rows(entry.get("matrix"), "arrow matrix")
        try:
            matrix = IntMatrix.from_rows(rows, cols=objects[src].ambient_rank)
            _expect(matrix.rows == objects[tgt].ambient_rank,
                    "arrow matrix height does not match the target rank")
            morphism = MonoidMorphism(objects[src], objects[tgt], matrix)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        arrows.append((src, tgt, morphism))
    try:
        return MonoidDiagram(tuple(objects), tuple(arrows))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Output rendering


def _flatten(payload: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(payload, dict):
        rows: list[tuple[str, str]] = []
        for key in sorted(payload):
            path = f"{prefix}.{key}" if prefix else str(key)
            rows.extend(_flatten(payload[key], path))
        return rows
    if isinstance(payload, list) and any(isinstance(x, (dict, list)) for x in payload):
        rows = []
        for i, item in enumerate(payload):
            rows.extend(_flatten(item, f"{prefix}[{i}]"))
        return rows
    return [(prefix, json.dumps(payload, sort_keys=True))]


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    rows = _flatten(payload)
    width = max((len(path) for path, _ in rows), default=0)
    for path, value in rows:
        print(f"{path.ljust(width)}  {value}")


def _parse_vector(text: str, what: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")] if text.strip() else []
    try:
        return vec(int(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"{what} must be a comma-separated integer vector") from exc


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# Command handlers


def _cmd_monoid_saturate(args: argparse.Namespace) -> int:
    monoid = monoid_from_json(_load_json(args.input))
    saturated = saturate(monoid)
    _emit({
        "monoid": monoid_to_json(saturated),
        "is_sharp": saturated.is_sharp,
        "is_saturated": saturated.is_saturated,
    }, args.json)
    return 0


def _cmd_monoid_colimit(args: argparse.Namespace) -> int:
    diagram = diagram_from_json(_load_json(args.input))
    result = fs_colimit(diagram)
    _emit({
        "colimit": monoid_to_json(result.colimit),
        "structure_maps": [
            {"object": k, "matrix": morphism.matrix.row_list()}
            for k, morphism in enumerate(result.structure_maps)
        ],
        "group_torsion": list(result.group_torsion),
        "is_sharp": result.colimit.is_sharp,
        "is_saturated": result.colimit.is_saturated,
    }, args.json)
    return 0


def _cmd_chart_admissible(args: argparse.Namespace) -> int:
    chart = chart_from_json(_load_json(args.chart))
    curve_class = _parse_vector(args.curve_class, "--class")
    if len(curve_class) != chart.pic_rank:
        raise InputError("curve class length does not match the chart's Picard rank")
    contact = contact_order(chart, curve_class)
    admissible = is_admissible(chart, curve_class)
    _emit({
        "curve_class": list(curve_class),
        "contact_order": list(contact),
        "admissible": admissible,
    }, args.json)
    return 0 if admissible else 1


def _cmd_chart_enumerate(args: argparse.Namespace) -> int:
    chart = chart_from_json(_load_json(args.chart))
    height = _parse_vector(args.height, "--height")
    if args.effective is not None:
        effective = cone_from_json(_load_json(args.effective))
    else:
        s = chart.pic_rank
        effective = Cone(s, [tuple(1 if i == j else 0 for j in range(s)) for i in range(s)])
    if args.bound < 0:
        raise InputError("--bound must be nonnegative")
    classes = enumerate_admissible(chart, effective, height, args.bound)
    _emit({
        "bound": args.bound,
        "height": list(height),
        "classes": [
            {"curve_class": list(c.curve_class), "contact_order": list(c.contact)}
            for c in classes
        ],
        "count": len(classes),
    }, args.json)
    return 0


def _cmd_comb_check(args: argparse.Namespace) -> int:
    comb, prescribed = comb_from_json(_load_json(args.input))
    lift = lift_contact_vector(comb, prescribed)
    minimal = minimal_monoid(comb)
    profile = smoothing_profile(comb)
    _emit({
        "n": comb.n,
        "m": comb.m,
        "genus": comb.genus,
        "c_infty": list(lift.contact_at_infinity),
        "verdict": lift.verdict,
        "is_a1_curve": lift.is_a1_curve,
        "admissible": minimal.admissible,
        "minimal_monoid": monoid_to_json(minimal.monoid),
        "smoothing": {
            "rank": profile.rank,
            "transform_degree": profile.transform_degree,
            "spanning": profile.spanning,
        },
    }, args.json)
    return 0 if (lift.verdict == VERDICT_LIFTS and minimal.admissible) else 1


def _provenance(data: SphericalData) -> dict:
    return {
        "asserted": {
            "intersection_is_kronecker": data.intersection_is_kronecker,
            "hyp_knop_asserted": data.hyp_knop_asserted,
            "color_types": [c.color_type for c in data.colors],
        },
    }


def _spherical_input(args: argparse.Namespace) -> SphericalData:
    if getattr(args, "data", None):
        return spherical_from_json(_load_json(args.data))
    if not args.type:
        raise InputError("either --type or --data is required")
    rs = build_root_system(args.type)
    return group_wonderful_data(rs, args.isogeny)


def _cmd_wonderful_group(args: argparse.Namespace) -> int:
    rs = build_root_system(args.type)
    data = group_wonderful_data(rs, args.isogeny)
    chart = distinguished_chart(data)
    hypotheses = check_hypotheses(data)
    invariants = isogeny_invariants(data, chart)
    payload = {
        "type": rs.type_label,
        "isogeny": args.isogeny,
        "cartan": rs.cartan.row_list(),
        "data": spherical_to_json(data),
        "chart": chart_to_json(chart),
        "hypotheses": {
            "knop": hypotheses.knop,
            "cone": hypotheses.cone,
            "all_colors_type_b": hypotheses.all_colors_type_b,
        },
        "invariants": {
            "pi1_order": invariants.pi1_order,
            "primitive": invariants.primitive,
            "character_group": {
                "free_rank": invariants.character_group.free_rank,
                "torsion_factors": list(invariants.character_group.torsion_factors),
            },
        },
        "provenance": _provenance(data),
    }
    warnings = []
    if not hypotheses.all_colors_type_b:
        warnings.append("not all colors have type (b); the classification formula is unavailable")
    if warnings:
        payload["warnings"] = warnings
    _emit(payload, args.json)
    return 0


def _cmd_wonderful_classify(args: argparse.Namespace) -> int:
    data = _spherical_input(args)
    if args.bound < 0:
        raise InputError("--bound must be nonnegative")
    classes = classify_curve_classes(data, args.bound)
    _emit({
        "bound": args.bound,
        "classes": [
            {
                "class": list(c.curve_class),
                "contact_order": list(c.contact),
                "is_A1_class": c.is_a1_class,
            }
            for c in classes
        ],
        "count": len(classes),
        "provenance": _provenance(data),
    }, args.json)
    return 0


def _cmd_wonderful_verify(args: argparse.Namespace) -> int:
    rs = build_root_system(args.type)
    if args.bound < 0:
        raise InputError("--bound must be nonnegative")
    verified = verify_group_classification(rs, args.bound)
    _emit({
        "type": rs.type_label,
        "bound": args.bound,
        "classification_verified": verified,
    }, args.json)
    return 0 if verified else 1


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcone",
        description="Exact lattice, cone, and monoid computations for "
                    "boundary-marked curve classes.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    def with_json(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", action="store_true", help="emit machine-readable JSON")
        return p

    monoid = top.add_parser("monoid", help="saturation and colimits of monoids")
    monoid_sub = monoid.add_subparsers(dest="subcommand", required=True)
    p = with_json(monoid_sub.add_parser("saturate", help="saturate a sharp monoid"))
    p.add_argument("input", help="monoid JSON file")
    p.set_defaults(handler=_cmd_monoid_saturate)
    p = with_json(monoid_sub.add_parser("colimit", help="fs-sharp colimit of a diagram"))
    p.add_argument("input", help="diagram JSON file")
    p.set_defaults(handler=_cmd_monoid_colimit)

    chart = top.add_parser("chart", help="contact orders and admissibility")
    chart_sub = chart.add_subparsers(dest="subcommand", required=True)
    p = with_json(chart_sub.add_parser("admissible", help="test one curve class"))
    p.add_argument("--chart", required=True, help="chart JSON file")
    p.add_argument("--class", dest="curve_class", required=True,
                   help="curve class, e.g. 1,0")
    p.set_defaults(handler=_cmd_chart_admissible)
    p = with_json(chart_sub.add_parser("enumerate", help="enumerate admissible classes"))
    p.add_argument("--chart", required=True, help="chart JSON file")
    p.add_argument("--height", required=True, help="height covector, e.g. 1,1")
    p.add_argument("--bound", required=True, type=int, help="height bound")
    p.add_argument("--effective", help="effective cone JSON file (default: first orthant)")
    p.set_defaults(handler=_cmd_chart_enumerate)

    comb = top.add_parser("comb", help="comb admissibility and lift verdicts")
    comb_sub = comb.add_subparsers(dest="subcommand", required=True)
    p = with_json(comb_sub.add_parser("check", help="check a comb JSON file"))
    p.add_argument("input", help="comb JSON file")
    p.set_defaults(handler=_cmd_comb_check)

    wonderful = top.add_parser("wonderful", help="wonderful compactification reports")
    wonderful_sub = wonderful.add_subparsers(dest="subcommand", required=True)
    p = with_json(wonderful_sub.add_parser("group", help="group data, chart, invariants"))
    p.add_argument("--type", required=True, help="root system label, e.g. A2")
    p.add_argument("--isogeny", choices=[SIMPLY_CONNECTED, ADJOINT],
                   default=SIMPLY_CONNECTED)
    p.set_defaults(handler=_cmd_wonderful_group)
    p = with_json(wonderful_sub.add_parser("classify", help="classify curve classes"))
    p.add_argument("--type", help="root system label (group case)")
    p.add_argument("--isogeny", choices=[SIMPLY_CONNECTED, ADJOINT],
                   default=SIMPLY_CONNECTED)
    p.add_argument("--data", help="spherical data JSON file")
    p.add_argument("--bound", required=True, type=int, help="total degree bound")
    p.set_defaults(handler=_cmd_wonderful_classify)
    p = with_json(wonderful_sub.add_parser("verify", help="cross-check the group classification"))
    p.add_argument("--type", required=True, help="root system label, e.g. A2")
    p.add_argument("--bound", required=True, type=int, help="height bound")
    p.set_defaults(handler=_cmd_wonderful_verify)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
