"""Command line interface over JSON scene documents.

A scene is a JSON object with fields:

* "schema": always "lorentz-gram/1"
* "dimension": ambient hyperbolic dimension (Euclidean dimension for
  sphere scenes), an integer >= 2
* "theorem": one of "penner", "ptolemy1", "ptolemy2", "casey", "casey_e",
  "relation" (optional when the command's --theorem flag names it; the
  flag wins when both are present)
* "objects": homogeneous list of records; "ptolemy1" also takes "surface"
* "meta": optional free-form map, carried along but never interpreted
  beyond an integer "seed" echoed into reports

Records on the hyperboloid: {"type": "point", "coords": [...]},
{"type": "horosphere", "rep": [...]}, {"type": "hyperplane",
"normal": [...]}, {"type": "hypersphere", "centre": [...], "radius": r}
(surface only), and the Euclidean {"type": "sphere_e", "centre": [...],
"radius": r, "eps": +-1}.  Ball-model spellings are accepted
interchangeably: points as {"ball": [...]}, horospheres as
{"centre_dir": [...], "scale": s}, hyperplanes as {"pole": [...],
"orientation": +-1} or {"direction": [...]}, hyperspheres as
{"ball_centre": [...], "radius": r}.

Reports are emitted as canonical JSON (sorted keys, minimal separators)
on stdout.  Every report carries "command", "input_digest" (sha256 of
the scene bytes), "tol", and a nested "verdict" block {"degenerate",
"det", "sigma_min", "sigma_max"}; classify adds a "case" block {"name",
"witnesses", "residual"} where one applies, and the relation command
nests its quantities under "relation".  Passing --emit-disk to verify
or classify re-renders every object and witness in the report in
ball-model coordinates.  Exit status: 0 when the tested family is
degenerate, 1 when it is not, 2 on any error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import GeometryError, SchemaViolation
from .generators import Configuration, GenKind, GenSpec, default_count, generate
from .lorentz import DEFAULT_TOL, DegeneracyVerdict
from .models import ball_to_hyperboloid, hyperboloid_to_ball, sphere_lift
from .objects import (
    CoHyperplane,
    CoSphereE,
    EquidistantBranch,
    EuclideanPlane,
    Horosphere,
    HPoint,
    Hypersphere,
)
from .theorems import (
    CaseyCase,
    CaseyCaseKind,
    casey_test,
    casey_witness_check,
    corollary_d_test,
    four_term_relation,
    half_dist_matrix,
    lambda_sq_matrix,
    penner_test,
    ptolemy1_test,
    ptolemy2_classify,
    ptolemy2_test,
    tau,
)

SCHEMA = "lorentz-gram/1"

THEOREMS = ("penner", "ptolemy1", "ptolemy2", "casey", "casey_e", "relation")


# ---------------------------------------------------------------------------
# canonical JSON


def _jsonable(value):
    if value is None or isinstance(value, (str, bool)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        out = float(value)
        if not math.isfinite(out):
            raise GeometryError("report contains a non-finite number")
        return out
    if isinstance(value, (np.integer, int)):
        return int(value)
    raise GeometryError(f"cannot serialize {type(value).__name__}")


def canonical_json(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, separators=(",", ":"))


def _emit(doc: dict) -> None:
    sys.stdout.write(canonical_json(doc) + "\n")


# ---------------------------------------------------------------------------
# scene parsing


def _need(rec: dict, key: str, where: str):
    if key not in rec:
        raise SchemaViolation(f"{where}: missing field {key!r}")
    return rec[key]


def _floats(value, length: Optional[int], where: str) -> np.ndarray:
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise SchemaViolation(f"{where}: expected a list of numbers")
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise SchemaViolation(f"{where}: numbers must be finite")
    if length is not None and arr.shape[0] != length:
        raise SchemaViolation(f"{where}: expected length {length}, got {arr.shape[0]}")
    return arr


def _record_to_object(rec: dict, n: int, where: str):
    if not isinstance(rec, dict):
        raise SchemaViolation(f"{where}: record must be an object")
    kind = _need(rec, "type", where)
    try:
        if kind == "point":
            if "ball" in rec:
                return ball_to_hyperboloid(_floats(rec["ball"], n, where))
            return HPoint(_floats(_need(rec, "coords", where), n + 1, where))
        if kind == "horosphere":
            if "centre_dir" in rec:
                d = _floats(rec["centre_dir"], n, where)
                s = float(_need(rec, "scale", where))
                if s <= 0:
                    raise SchemaViolation(f"{where}: scale must be positive")
                return Horosphere(s * np.concatenate([d, [1.0]]))
            return Horosphere(_floats(_need(rec, "rep", where), n + 1, where))
        if kind == "hyperplane":
            if "pole" in rec:
                pole = _floats(rec["pole"], n, where)
                orient = int(_need(rec, "orientation", where))
                r2 = float(pole @ pole)
                if orient not in (1, -1) or r2 <= 1.0:
                    raise SchemaViolation(f"{where}: bad pole form")
                vt = orient / math.sqrt(r2 - 1.0)
                return CoHyperplane(np.concatenate([vt * pole, [vt]]))
            if "direction" in rec:
                d = _floats(rec["direction"], n, where)
                return CoHyperplane(np.concatenate([d, [0.0]]))
            return CoHyperplane(_floats(_need(rec, "normal", where), n + 1, where))
        if kind == "hypersphere":
            radius = float(_need(rec, "radius", where))
            if "ball_centre" in rec:
                centre = ball_to_hyperboloid(_floats(rec["ball_centre"], n, where))
            else:
                centre = HPoint(_floats(_need(rec, "centre", where), n + 1, where))
            return Hypersphere(centre, radius)
        if kind == "sphere_e":
            centre = _floats(_need(rec, "centre", where), n, where)
            radius = float(_need(rec, "radius", where))
            eps = int(_need(rec, "eps", where))
            return CoSphereE(centre, radius, eps)
    except SchemaViolation:
        raise
    except (GeometryError, ValueError, TypeError) as exc:
        raise SchemaViolation(f"{where}: {exc}") from exc
    raise SchemaViolation(f"{where}: unknown record type {kind!r}")


def object_to_record(obj, disk: bool = False) -> dict:
    if isinstance(obj, HPoint):
        if disk:
            return {"type": "point", "ball": hyperboloid_to_ball(obj.coords)}
        return {"type": "point", "coords": obj.coords}
    if isinstance(obj, Horosphere):
        if disk:
            return {
                "type": "horosphere",
                "centre_dir": obj.rep[:-1] / obj.rep[-1],
                "scale": float(obj.rep[-1]),
            }
        return {"type": "horosphere", "rep": obj.rep}
    if isinstance(obj, CoHyperplane):
        if disk:
            vt = float(obj.normal[-1])
            if abs(vt) > 1e-9:
                return {
                    "type": "hyperplane",
                    "pole": obj.normal[:-1] / vt,
                    "orientation": 1 if vt > 0 else -1,
                }
            return {"type": "hyperplane", "direction": obj.normal[:-1]}
        return {"type": "hyperplane", "normal": obj.normal}
    if isinstance(obj, Hypersphere):
        if disk:
            return {
                "type": "hypersphere",
                "ball_centre": hyperboloid_to_ball(obj.centre.coords),
                "radius": obj.radius,
            }
        return {"type": "hypersphere", "centre": obj.centre.coords, "radius": obj.radius}
    if isinstance(obj, CoSphereE):
        return {"type": "sphere_e", "centre": obj.centre, "radius": obj.radius, "eps": obj.eps}
    if isinstance(obj, EquidistantBranch):
        return {"type": "equidistant", "normal": obj.normal, "offset": obj.offset}
    if isinstance(obj, EuclideanPlane):
        return {"type": "plane_e", "normal": obj.normal, "offset": obj.offset}
    raise GeometryError(f"cannot emit {type(obj).__name__}")


_EXPECTED = {
    "penner": ("horosphere", lambda n: n + 1),
    "ptolemy1": ("point", lambda n: n + 1),
    "ptolemy2": ("point", lambda n: n + 2),
    "casey": ("hyperplane", lambda n: n + 1),
    "casey_e": ("sphere_e", lambda n: n + 2),
}


class Scene:
    def __init__(self, n: int, theorem: str, objects: list, surface, meta=None):
        self.n = n
        self.theorem = theorem
        self.objects = objects
        self.surface = surface
        self.meta = meta


def parse_scene(doc, theorem: Optional[str] = None) -> Scene:
    if not isinstance(doc, dict):
        raise SchemaViolation("scene must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaViolation(f"schema must be {SCHEMA!r}")
    n = doc.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise SchemaViolation("dimension must be an integer >= 2")
    # a --theorem flag overrides whatever the scene says about itself
    if theorem is None:
        theorem = doc.get("theorem")
    if theorem not in THEOREMS:
        raise SchemaViolation(f"theorem must be one of {', '.join(THEOREMS)}")
    meta = doc.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise SchemaViolation("meta must be a JSON object")
    records = doc.get("objects")
    if not isinstance(records, list) or not records:
        raise SchemaViolation("objects must be a non-empty list")
    objects = [
        _record_to_object(rec, n, f"objects[{i}]") for i, rec in enumerate(records)
    ]
    if theorem == "relation":
        if len(objects) != 4:
            raise SchemaViolation("relation scenes need exactly 4 objects")
        kinds = {type(o) for o in objects}
        if len(kinds) != 1 or kinds.pop() not in (HPoint, Horosphere, CoSphereE):
            raise SchemaViolation(
                "relation objects must be all points, all horospheres or all sphere_e"
            )
    else:
        want_type, want_count = _EXPECTED[theorem]
        got_types = {rec.get("type") for rec in records}
        allowed = {want_type, "point"} if want_type == "point" else {want_type}
        if not got_types <= allowed:
            raise SchemaViolation(f"{theorem} scenes hold {want_type} records only")
        if len(objects) != want_count(n):
            raise SchemaViolation(
                f"{theorem} at n={n} needs {want_count(n)} objects, got {len(objects)}"
            )
    surface = None
    if theorem == "ptolemy1":
        if "surface" not in doc:
            raise SchemaViolation("ptolemy1 scenes need a surface record")
        surface = _record_to_object(doc["surface"], n, "surface")
        if not isinstance(surface, (Horosphere, Hypersphere)):
            raise SchemaViolation("ptolemy1 surface must be a horosphere or hypersphere")
    elif "surface" in doc:
        raise SchemaViolation("only ptolemy1 scenes take a surface record")
    return Scene(n, theorem, objects, surface, meta)


def load_scene(path: str, theorem: Optional[str] = None) -> tuple[Scene, str]:
    raw = Path(path).read_bytes()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaViolation(f"not valid JSON: {exc}") from exc
    scene = parse_scene(doc, theorem)
    # hash the canonical form so reformatting a scene keeps its digest
    digest = hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()
    return scene, digest


# ---------------------------------------------------------------------------
# report assembly


def _verdict_doc(verdict: DegeneracyVerdict) -> dict:
    return {
        "verdict": {
            "degenerate": verdict.is_degenerate,
            "det": verdict.det_value,
            "sigma_min": verdict.sigma_min,
            "sigma_max": verdict.sigma_max,
        },
        "kernel": None if verdict.kernel is None else verdict.kernel,
    }


def _ball_boundary(vec: np.ndarray) -> list:
    # a lightlike class meets the ball boundary at its spatial direction
    return list(np.asarray(vec, dtype=float)[:-1] / float(vec[-1]))


def _case_doc(
    case: Optional[CaseyCase], residual: Optional[float], disk: bool
) -> Optional[dict]:
    if case is None:
        return None
    witnesses = {}
    if case.tangent_normal is not None:
        witnesses["tangent_normal"] = case.tangent_normal
    if case.ideal_point is not None:
        witnesses["ideal_point"] = case.ideal_point
    if case.orthogonal_normal is not None:
        witnesses["orthogonal_normal"] = case.orthogonal_normal
        witnesses["inclined_normal"] = case.inclined_normal
    doc = {"name": case.kind.value, "witnesses": witnesses, "residual": residual}
    if case.inclination is not None:
        doc["inclination"] = case.inclination
    if disk:
        ball = {}
        for key in ("tangent_normal", "orthogonal_normal", "inclined_normal"):
            vec = witnesses.get(key)
            if vec is not None:
                ball[key] = object_to_record(CoHyperplane(vec), disk=True)
        if case.ideal_point is not None:
            ball["ideal_point"] = _ball_boundary(case.ideal_point)
        doc["ball"] = ball
    return doc


def _base_report(command: str, scene: Scene, digest: str, tol: float) -> dict:
    doc = {
        "schema": SCHEMA,
        "command": command,
        "theorem": scene.theorem,
        "dimension": scene.n,
        "input_digest": digest,
        "tol": tol,
    }
    if scene.meta is not None:
        seed = scene.meta.get("seed")
        if isinstance(seed, int) and not isinstance(seed, bool):
            doc["seed"] = seed
    return doc


def _euclidean_doc(euc, disk: bool = False) -> Optional[dict]:
    if euc is None:
        return None
    doc = {"kind": euc.kind.value}
    if euc.tangent_surface is not None:
        doc["tangent_surface"] = object_to_record(euc.tangent_surface, disk=disk)
    if euc.kind.value == "common_intersection_point":
        doc["meeting_point"] = euc.meeting_point
        doc["at_infinity"] = euc.meeting_point_at_infinity
    if euc.orthogonal_surface is not None:
        doc["orthogonal_surface"] = object_to_record(euc.orthogonal_surface, disk=disk)
        doc["inclined_surface"] = object_to_record(euc.inclined_surface, disk=disk)
        doc["inclination"] = euc.inclination
    return doc


def cmd_verify(
    scene: Scene, digest: str, tol: float, search: bool, disk: bool = False
) -> tuple[dict, int]:
    doc = _base_report("verify", scene, digest, tol)
    if scene.theorem == "penner":
        res = penner_test(scene.objects, tol)
        doc.update(_verdict_doc(res.verdict))
        doc["same_centre"] = res.same_centre
        doc["witness"] = (
            None if res.witness is None else object_to_record(res.witness, disk=disk)
        )
        doc["witness_residual"] = res.residual
        degenerate = res.verdict.is_degenerate
    elif scene.theorem == "ptolemy1":
        res = ptolemy1_test(scene.objects, scene.surface, tol)
        doc.update(_verdict_doc(res.verdict))
        doc["witness"] = (
            None if res.witness is None else object_to_record(res.witness, disk=disk)
        )
        doc["witness_residual"] = res.residual
        degenerate = res.verdict.is_degenerate
    elif scene.theorem == "ptolemy2":
        verdict = ptolemy2_test(scene.objects, tol)
        doc.update(_verdict_doc(verdict))
        degenerate = verdict.is_degenerate
    elif scene.theorem == "casey":
        res = casey_test(scene.objects, tol, search=search)
        doc.update(_verdict_doc(res.verdict))
        doc["signs"] = list(res.signs)
        doc["case_kind"] = None if res.case is None else res.case.kind.value
        degenerate = res.verdict.is_degenerate
    elif scene.theorem == "casey_e":
        res = corollary_d_test(scene.objects, tol, search=search)
        doc.update(_verdict_doc(res.verdict))
        doc["signs"] = list(res.signs)
        doc["case_kind"] = None if res.case is None else res.case.kind.value
        degenerate = res.verdict.is_degenerate
    else:
        raise SchemaViolation("verify does not apply to relation scenes")
    return doc, 0 if degenerate else 1


def cmd_classify(
    scene: Scene, digest: str, tol: float, search: bool, disk: bool = False
) -> tuple[dict, int]:
    doc = _base_report("classify", scene, digest, tol)
    if scene.theorem in ("penner", "ptolemy1"):
        # verify already extracts the witness for these tests
        inner, code = cmd_verify(scene, digest, tol, search, disk)
        inner["command"] = "classify"
        return inner, code
    if scene.theorem == "ptolemy2":
        verdict = ptolemy2_test(scene.objects, tol)
        doc.update(_verdict_doc(verdict))
        if not verdict.is_degenerate:
            doc["fit"] = None
            doc["case"] = None
            return doc, 1
        fit = ptolemy2_classify(scene.objects, tol)
        doc["fit"] = {
            "kind": fit.kind.value,
            "datum": fit.datum,
            "offset": fit.offset,
            "residual": fit.residual,
            "surface": object_to_record(fit.surface(), disk=disk),
        }
        doc["case"] = {
            "name": fit.kind.value,
            "witnesses": {"datum": fit.datum, "offset": fit.offset},
            "residual": fit.residual,
        }
        return doc, 0
    if scene.theorem == "casey":
        res = casey_test(scene.objects, tol, search=search)
        doc.update(_verdict_doc(res.verdict))
        doc["signs"] = list(res.signs)
        residual = None
        if res.case is not None:
            flipped = [
                CoHyperplane(s * h.normal) for s, h in zip(res.signs, scene.objects)
            ]
            report = casey_witness_check(res.case, flipped)
            residual = report.residual
            doc["witness_check"] = {
                "residual": report.residual,
                "passed": report.passed,
                "failures": list(report.failures),
            }
        doc["case"] = _case_doc(res.case, residual, disk)
        return doc, 0 if res.verdict.is_degenerate else 1
    if scene.theorem == "casey_e":
        res = corollary_d_test(scene.objects, tol, search=search)
        doc.update(_verdict_doc(res.verdict))
        doc["signs"] = list(res.signs)
        residual = None
        if res.case is not None:
            # the witnesses certify the flipped hyperplane lifts
            flipped = [
                CoHyperplane(s * sphere_lift(sph).normal)
                for s, sph in zip(res.signs, scene.objects)
            ]
            report = casey_witness_check(res.case, flipped)
            residual = report.residual
            doc["witness_check"] = {
                "residual": report.residual,
                "passed": report.passed,
                "failures": list(report.failures),
            }
        doc["case"] = _case_doc(res.case, residual, disk)
        doc["euclidean"] = _euclidean_doc(res.euclidean, disk)
        return doc, 0 if res.verdict.is_degenerate else 1
    raise SchemaViolation("classify does not apply to relation scenes")


def cmd_relation(scene: Scene, digest: str, tol: float) -> tuple[dict, int]:
    from .lorentz import degeneracy

    objs = scene.objects
    if len(objs) != 4:
        raise SchemaViolation("the product relation needs exactly 4 objects")
    if all(isinstance(o, Horosphere) for o in objs):
        values = np.sqrt(lambda_sq_matrix(objs))
        quantity = "lambda_length"
    elif all(isinstance(o, HPoint) for o in objs):
        values = 2.0 * np.sqrt(half_dist_matrix(objs))
        quantity = "chord_length"
    elif all(isinstance(o, CoSphereE) for o in objs):
        values = np.zeros((4, 4))
        for i in range(4):
            for j in range(i + 1, 4):
                t2 = objs[i].eps * objs[j].eps * tau(objs[i], objs[j])
                if t2 < 0:
                    raise GeometryError("a sphere pair admits no common tangent line")
                values[i, j] = values[j, i] = math.sqrt(t2)
        quantity = "tangent_length"
    else:
        raise SchemaViolation("relation needs points, horospheres or sphere_e records")
    rel = four_term_relation(values, tol)
    verdict = degeneracy(values * values, tol)
    doc = _base_report("relation", scene, digest, tol)
    doc.update(_verdict_doc(verdict))
    doc["relation"] = {
        "quantity": quantity,
        "values": values,
        "products": list(rel.products),
        "which": None if rel.which is None else rel.which.value,
        "residual": rel.residual,
    }
    return doc, 0 if verdict.is_degenerate else 1


# ---------------------------------------------------------------------------
# generate


_KIND_THEOREM = {
    GenKind.HOROSPHERES_ON_HYPERPLANE_BOUNDARY: "penner",
    GenKind.GENERIC_HOROSPHERES: "penner",
    GenKind.HYPERPLANES_TANGENT_AT_INFINITY: "casey",
    GenKind.HYPERPLANES_COMMON_IDEAL_POINT: "casey",
    GenKind.HYPERPLANES_ORTH_EQUAL: "casey",
    GenKind.GENERIC_HYPERPLANES: "casey",
    GenKind.SPHERES_TANGENT_TO_CIRCLE: "casey_e",
    GenKind.SPHERES_THROUGH_POINT: "casey_e",
}


def config_to_scene_doc(
    config: Configuration, disk: bool = False, meta: Optional[dict] = None
) -> dict:
    kind = config.kind
    if kind in _KIND_THEOREM:
        theorem = _KIND_THEOREM[kind]
    else:
        count = len(config.objects)
        if count == config.n + 2:
            theorem = "ptolemy2"
        elif (
            count == config.n + 1
            and isinstance(config.surface, (Horosphere, Hypersphere))
        ):
            theorem = "ptolemy1"
        elif count == 4:
            theorem = "relation"
        else:
            raise GeometryError(
                f"no scene form for {kind.value} with {count} objects"
            )
    doc = {
        "schema": SCHEMA,
        "dimension": config.n,
        "theorem": theorem,
        "objects": [object_to_record(o, disk=disk) for o in config.objects],
    }
    if theorem == "ptolemy1":
        doc["surface"] = object_to_record(config.surface, disk=disk)
    if disk:
        doc["model"] = "ball"
    if meta is not None:
        doc["meta"] = meta
    return doc


_PARAM_KEYS = ("spread", "radius", "offset", "inclination")


def _parse_params(pairs) -> dict:
    params = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep or key not in _PARAM_KEYS:
            raise SchemaViolation(
                f"--params takes key=value with key in {', '.join(_PARAM_KEYS)}"
            )
        try:
            params[key] = float(value)
        except ValueError as exc:
            raise SchemaViolation(f"--params {key} needs a number, got {value!r}") from exc
    return params


def cmd_generate(args) -> tuple[dict, int]:
    params = _parse_params(args.params)
    for key in _PARAM_KEYS:
        # a dedicated flag wins over the same key given through --params
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    spec = GenSpec(kind=args.kind, n=args.n, seed=args.seed, count=args.count, params=params)
    config = generate(spec)
    meta = {"kind": args.kind, "seed": args.seed}
    return config_to_scene_doc(config, disk=args.emit_disk, meta=meta), 0


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorentzgram",
        description="Gram-determinant incidence tests for hyperbolic configurations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scene_optional=False):
        p.add_argument("scene", nargs="?" if scene_optional else None, help="scene JSON file")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument(
            "--theorem",
            choices=["penner", "ptolemy1", "ptolemy2", "casey", "casey-e", "casey_e"],
            default=None,
            help="override the scene's theorem field",
        )
        p.add_argument(
            "--search-signs",
            action=argparse.BooleanOptionalAction,
            default=True,
            help="search coorientation flips (casey and casey_e)",
        )
        p.add_argument(
            "--emit-disk",
            action="store_true",
            help="render report objects and witnesses in ball-model coordinates",
        )

    pv = sub.add_parser("verify", help="run the scene's degeneracy test")
    add_common(pv, scene_optional=True)
    pv.add_argument("--scenes-dir", help="verify every *.json scene in a directory")

    pc = sub.add_parser("classify", help="verify plus witness extraction")
    add_common(pc)

    pr = sub.add_parser("relation", help="four-term product relation on 4 objects")
    pr.add_argument("scene", help="scene JSON file")
    pr.add_argument("--tol", type=float, default=DEFAULT_TOL)

    pg = sub.add_parser("generate", help="emit a scene document")
    pg.add_argument("--kind", required=True, choices=[k.value for k in GenKind])
    pg.add_argument("--n", required=True, type=int)
    pg.add_argument("--count", type=int, default=None)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--spread", type=float, default=None)
    pg.add_argument("--radius", type=float, default=None)
    pg.add_argument("--offset", type=float, default=None)
    pg.add_argument("--inclination", type=float, default=None)
    pg.add_argument(
        "--params",
        action="append",
        metavar="KEY=VALUE",
        help="generator parameter; repeatable, dedicated flags take precedence",
    )
    pg.add_argument("--emit-disk", action="store_true", help="emit ball-model records")
    return parser


def _run_batch(args, theorem: Optional[str]) -> int:
    directory = Path(args.scenes_dir)
    if not directory.is_dir():
        raise SchemaViolation(f"not a directory: {directory}")
    reports = {}
    worst = 0
    for path in sorted(directory.glob("*.json")):
        try:
            scene, digest = load_scene(str(path), theorem)
            report, code = cmd_verify(
                scene, digest, args.tol, args.search_signs, args.emit_disk
            )
        except (GeometryError, OSError) as exc:
            report, code = {"error": type(exc).__name__, "message": str(exc)}, 2
        reports[path.name] = report
        worst = max(worst, code)
    _emit({"schema": SCHEMA, "command": "verify", "reports": reports})
    return worst


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        if args.command == "generate":
            doc, code = cmd_generate(args)
        else:
            # the flag accepts the hyphen spelling for the Euclidean variant
            flag = getattr(args, "theorem", None)
            theorem = flag.replace("-", "_") if flag else None
            if args.command == "verify" and args.scenes_dir is not None:
                if args.scene is not None:
                    raise SchemaViolation("pass a scene file or --scenes-dir, not both")
                return _run_batch(args, theorem)
            if args.scene is None:
                raise SchemaViolation("a scene file is required")
            if args.command == "relation":
                scene, digest = load_scene(args.scene)
                doc, code = cmd_relation(scene, digest, args.tol)
            else:
                scene, digest = load_scene(args.scene, theorem)
                if args.command == "verify":
                    doc, code = cmd_verify(
                        scene, digest, args.tol, args.search_signs, args.emit_disk
                    )
                else:
                    doc, code = cmd_classify(
                        scene, digest, args.tol, args.search_signs, args.emit_disk
                    )
        _emit(doc)
        return code
    except (GeometryError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
