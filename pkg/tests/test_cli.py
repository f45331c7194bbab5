"""End-to-end CLI contract: exit codes, canonical output, scene validation,
and the generate -> verify -> classify pipeline."""

import hashlib
import json
import subprocess
import sys

import pytest

from lorentzgram.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    assert out.endswith("\n")
    return code, out


def run_doc(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def write_scene(tmp_path, doc, name="scene.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def generate_scene(capsys, tmp_path, *argv, name="scene.json"):
    code, out = run(capsys, "generate", *argv)
    assert code == 0
    path = tmp_path / name
    path.write_text(out)
    return str(path)


class TestPipeline:
    def test_degenerate_penner_scene(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "horospheres_on_hyperplane_boundary",
            "--n", "3", "--seed", "5")
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 0
        assert doc["verdict"]["degenerate"] is True
        assert doc["theorem"] == "penner"
        assert doc["witness"]["type"] == "hyperplane"
        assert doc["witness_residual"] <= 1e-7
        assert doc["command"] == "verify"
        assert doc["seed"] == 5
        # classify reduces to verify here but must still name itself
        code, doc = run_doc(capsys, "classify", scene)
        assert code == 0
        assert doc["command"] == "classify"

    def test_generic_scene_exits_one(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "generic_horospheres", "--n", "3", "--seed", "5")
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 1
        assert doc["verdict"]["degenerate"] is False

    def test_classify_ptolemy2(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "points_on_hypersphere", "--n", "3", "--seed", "5")
        code, doc = run_doc(capsys, "classify", scene)
        assert code == 0
        assert doc["fit"]["kind"] == "hypersphere"
        assert doc["fit"]["surface"]["type"] == "hypersphere"
        assert doc["fit"]["residual"] <= 1e-8
        # the case block restates the fit in name/witnesses/residual form
        assert doc["case"]["name"] == "hypersphere"
        assert doc["case"]["witnesses"]["datum"] == doc["fit"]["datum"]

    def test_classify_casey_includes_witness_check(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "hyperplanes_common_ideal_point",
            "--n", "3", "--seed", "5")
        code, doc = run_doc(capsys, "classify", scene)
        assert code == 0
        assert doc["case"]["name"] in (
            "tangent_hyperplane_at_infinity", "common_ideal_point",
            "orthogonal_equally_inclined")
        assert doc["case"]["witnesses"]
        assert doc["case"]["residual"] == doc["witness_check"]["residual"]
        assert doc["witness_check"]["passed"] is True

    def test_classify_casey_e(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "spheres_through_point", "--n", "2", "--seed", "5")
        code, doc = run_doc(capsys, "classify", scene)
        assert code == 0
        assert doc["euclidean"]["kind"] == "common_intersection_point"
        assert doc["euclidean"]["at_infinity"] is False

    def test_relation_command(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "horospheres_on_hyperplane_boundary",
            "--n", "3", "--seed", "7")
        doc = json.loads((tmp_path / "scene.json").read_text())
        doc["theorem"] = "relation"
        scene = write_scene(tmp_path, doc, "relation.json")
        code, rep = run_doc(capsys, "relation", scene)
        assert code == 0
        rel = rep["relation"]
        assert rel["quantity"] == "lambda_length"
        assert rel["which"] in ("alt12_34", "alt13_24", "alt14_23")
        assert rel["residual"] <= 1e-9 * sum(rel["products"])

    def test_relation_modes_on_frozen_scenes(self, capsys, tmp_path):
        import math
        import lorentzgram as lg

        # four horospheres spaced a quarter turn apart: the diagonal
        # lambda product equals the sum of the other two exactly
        reps = [[0.0, math.cos(t), math.sin(t), 1.0]
                for t in (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)]
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 3, "theorem": "relation",
            "objects": [{"type": "horosphere", "rep": r} for r in reps],
        }, "circulant.json")
        code, rep = run_doc(capsys, "relation", scene)
        assert code == 0
        assert rep["relation"]["which"] == "alt13_24"
        assert rep["relation"]["products"] == pytest.approx([1.0, 2.0, 1.0])
        # the same four horospheres verify as a coplanar-centre family
        code, rep = run_doc(capsys, "verify", scene, "--theorem", "penner")
        assert code == 0
        assert abs(rep["verdict"]["det"]) <= 1e-12

        # a square drawn in a horosphere chart, as points: chord mode
        h = lg.Horosphere([0.0, 0.0, 1.0, 1.0])
        corners = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
        pts = [lg.horosphere_point(h, z) for z in corners]
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 3, "theorem": "relation",
            "objects": [{"type": "point", "coords": list(p.coords)} for p in pts],
        }, "square.json")
        code, rep = run_doc(capsys, "relation", scene)
        assert code == 0
        assert rep["relation"]["quantity"] == "chord_length"
        assert rep["relation"]["which"] == "alt13_24"

        # four circles internally tangent to the unit circle: tangent mode
        radii = (0.2, 0.3, 0.1, 0.25)
        angles = (0.0, 80.0, 170.0, 260.0)
        objs = []
        for r, a in zip(radii, angles):
            t = math.radians(a)
            objs.append({"type": "sphere_e", "radius": r, "eps": 1,
                         "centre": [(1 - r) * math.cos(t), (1 - r) * math.sin(t)]})
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 2, "theorem": "relation",
            "objects": objs,
        }, "tangent.json")
        code, rep = run_doc(capsys, "relation", scene)
        assert code == 0
        assert rep["relation"]["quantity"] == "tangent_length"
        assert rep["relation"]["which"] == "alt13_24"

    def test_ptolemy1_scene_with_surface(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "points_on_horosphere", "--n", "3",
            "--seed", "9", "--count", "4")
        doc = json.loads((tmp_path / "scene.json").read_text())
        assert doc["theorem"] == "ptolemy1"
        assert doc["surface"]["type"] == "horosphere"
        code, rep = run_doc(capsys, "verify", scene)
        # n+1 generic points on a horosphere are not hyperplane-degenerate
        assert code == 1


class TestDeterminism:
    def test_generate_is_byte_deterministic(self, capsys):
        _, out1 = run(capsys, "generate", "--kind", "generic_points", "--n", "3",
                      "--seed", "11")
        _, out2 = run(capsys, "generate", "--kind", "generic_points", "--n", "3",
                      "--seed", "11")
        assert out1 == out2

    def test_verify_is_byte_deterministic(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "hyperplanes_tangent_at_infinity",
            "--n", "3", "--seed", "11")
        _, out1 = run(capsys, "verify", scene)
        _, out2 = run(capsys, "verify", scene)
        assert out1 == out2

    def test_output_is_canonical_json(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "points_on_horosphere", "--n", "2", "--seed", "3")
        _, out = run(capsys, "verify", scene)
        doc = json.loads(out)
        assert json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n" == out

    def test_report_hash_matches_input(self, capsys, tmp_path):
        from lorentzgram.cli import canonical_json

        scene = generate_scene(
            capsys, tmp_path, "--kind", "generic_points", "--n", "2", "--seed", "3")
        with open(scene) as fh:
            doc_in = json.load(fh)
        digest = hashlib.sha256(canonical_json(doc_in).encode()).hexdigest()
        _, doc = run_doc(capsys, "verify", scene)
        assert doc["input_digest"] == digest
        # reformatting the scene must not change its digest
        pretty = tmp_path / "pretty.json"
        pretty.write_text(json.dumps(doc_in, indent=2))
        _, doc2 = run_doc(capsys, "verify", str(pretty))
        assert doc2["input_digest"] == digest


class TestDiskModel:
    def test_ball_records_round_trip(self, capsys, tmp_path):
        flat = generate_scene(
            capsys, tmp_path, "--kind", "points_on_equidistant", "--n", "3",
            "--seed", "13", name="flat.json")
        disk = generate_scene(
            capsys, tmp_path, "--kind", "points_on_equidistant", "--n", "3",
            "--seed", "13", "--emit-disk", name="disk.json")
        assert json.loads(open(disk).read())["model"] == "ball"
        code_f, doc_f = run_doc(capsys, "verify", flat)
        code_d, doc_d = run_doc(capsys, "verify", disk)
        vf, vd = doc_f["verdict"], doc_d["verdict"]
        assert (code_f, vf["degenerate"]) == (code_d, vd["degenerate"])
        assert vd["sigma_min"] == pytest.approx(vf["sigma_min"], rel=1e-6, abs=1e-9)

    def test_disk_casey_scene(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "hyperplanes_tangent_at_infinity",
            "--n", "2", "--seed", "13", "--emit-disk")
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 0

    def test_emit_disk_report_witnesses_round_trip(self, capsys, tmp_path):
        import numpy as np
        from lorentzgram.cli import parse_scene

        scene = generate_scene(
            capsys, tmp_path, "--kind", "hyperplanes_tangent_at_infinity",
            "--n", "3", "--seed", "23")
        code, doc = run_doc(capsys, "classify", scene, "--emit-disk")
        assert code == 0
        raw = np.array(doc["case"]["witnesses"]["tangent_normal"])
        ball = doc["case"]["ball"]["tangent_normal"]
        # feed the ball record back through the scene parser as a one-off
        probe = parse_scene({
            "schema": "lorentz-gram/1", "dimension": 3, "theorem": "casey",
            "objects": [ball, ball, ball, ball],
        })
        assert np.allclose(probe.objects[0].normal, raw, atol=1e-9)
        # penner witnesses are object records and swap representation too
        scene = generate_scene(
            capsys, tmp_path, "--kind", "horospheres_on_hyperplane_boundary",
            "--n", "2", "--seed", "23", name="penner.json")
        _, flat = run_doc(capsys, "verify", scene)
        _, disk = run_doc(capsys, "verify", scene, "--emit-disk")
        assert "normal" in flat["witness"]
        assert "pole" in disk["witness"] or "direction" in disk["witness"]


class TestTheoremFlag:
    def test_flag_supplies_missing_theorem(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "hyperplanes_common_ideal_point",
            "--n", "2", "--seed", "25")
        doc = json.loads(open(scene).read())
        del doc["theorem"]
        stripped = write_scene(tmp_path, doc, "stripped.json")
        code, rep = run_doc(capsys, "verify", stripped)
        assert code == 2  # no theorem anywhere
        code, rep = run_doc(capsys, "verify", stripped, "--theorem", "casey")
        assert code == 0
        assert rep["theorem"] == "casey"

    def test_flag_overrides_scene_field(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "points_on_hypersphere", "--n", "2",
            "--seed", "25")
        doc = json.loads(open(scene).read())
        doc["theorem"] = "casey"  # wrong on purpose: these are point records
        mislabeled = write_scene(tmp_path, doc, "mislabeled.json")
        code, rep = run_doc(capsys, "verify", mislabeled)
        assert code == 2
        code, rep = run_doc(capsys, "classify", mislabeled, "--theorem", "ptolemy2")
        assert code == 0
        assert rep["theorem"] == "ptolemy2"

    def test_hyphen_spelling_for_euclidean_variant(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "spheres_tangent_to_circle", "--n", "2",
            "--seed", "25")
        doc = json.loads(open(scene).read())
        del doc["theorem"]
        stripped = write_scene(tmp_path, doc, "stripped.json")
        code, rep = run_doc(capsys, "classify", stripped, "--theorem", "casey-e")
        assert code == 0
        assert rep["theorem"] == "casey_e"


class TestSearchFlag:
    def test_no_search_keeps_given_signs(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "hyperplanes_tangent_at_infinity",
            "--n", "3", "--seed", "15")
        doc = json.loads(open(scene).read())
        # flip one normal's coorientation; the fixed-sign test must miss
        doc["objects"][1]["normal"] = [-x for x in doc["objects"][1]["normal"]]
        flipped = write_scene(tmp_path, doc, "flipped.json")
        code, rep = run_doc(capsys, "verify", flipped, "--no-search-signs")
        assert code == 1
        assert rep["signs"] == [1, 1, 1, 1]
        code, rep = run_doc(capsys, "verify", flipped)
        assert code == 0
        assert rep["signs"] == [1, -1, 1, 1]


class TestErrors:
    def test_missing_file(self, capsys):
        code, doc = run_doc(capsys, "verify", "/nonexistent/scene.json")
        assert code == 2
        assert "error" in doc

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, doc = run_doc(capsys, "verify", str(path))
        assert code == 2
        assert doc["error"] == "SchemaViolation"

    def test_wrong_schema_tag(self, capsys, tmp_path):
        scene = write_scene(tmp_path, {"schema": "other/9", "dimension": 2, "theorem": "penner",
                                       "objects": []})
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 2

    def test_wrong_object_count(self, capsys, tmp_path):
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 2, "theorem": "penner",
            "objects": [{"type": "horosphere", "rep": [1.0, 0.0, 1.0]}] * 2,
        })
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 2

    def test_mixed_object_types(self, capsys, tmp_path):
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 2, "theorem": "penner",
            "objects": [
                {"type": "horosphere", "rep": [1.0, 0.0, 1.0]},
                {"type": "horosphere", "rep": [0.0, 1.0, 1.0]},
                {"type": "point", "coords": [0.0, 0.0, 1.0]},
            ],
        })
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 2

    def test_surface_only_for_ptolemy1(self, capsys, tmp_path):
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 2, "theorem": "penner",
            "surface": {"type": "horosphere", "rep": [1.0, 0.0, 1.0]},
            "objects": [
                {"type": "horosphere", "rep": [1.0, 0.0, 1.0]},
                {"type": "horosphere", "rep": [0.0, 1.0, 1.0]},
                {"type": "horosphere", "rep": [-1.0, 0.0, 1.0]},
            ],
        })
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 2

    def test_relation_needs_four(self, capsys, tmp_path):
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 3, "theorem": "relation",
            "objects": [{"type": "horosphere", "rep": [1.0, 0.0, 0.0, 1.0]}] * 3,
        })
        code, doc = run_doc(capsys, "relation", scene)
        assert code == 2

    def test_missing_dimension_field(self, capsys, tmp_path):
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "theorem": "penner",
            "objects": [{"type": "horosphere", "rep": [1.0, 0.0, 1.0]}] * 3,
        })
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 2
        assert doc["error"] == "SchemaViolation"
        assert "dimension" in doc["message"]

    def test_infeasible_generate_params(self, capsys):
        code, doc = run_doc(capsys, "generate", "--kind", "hyperplanes_orth_equal",
                            "--n", "3", "--inclination", "1.5")
        assert code == 2
        assert doc["error"] == "InfeasibleParams"

    def test_params_key_value_form(self, capsys):
        # same request through --params, including the failure mode
        code, doc = run_doc(capsys, "generate", "--kind", "hyperplanes_orth_equal",
                            "--n", "3", "--params", "inclination=1.5")
        assert code == 2
        assert doc["error"] == "InfeasibleParams"
        code, good = run_doc(capsys, "generate", "--kind", "hyperplanes_orth_equal",
                             "--n", "3", "--seed", "4", "--params", "inclination=0.5")
        assert code == 0
        code, same = run_doc(capsys, "generate", "--kind", "hyperplanes_orth_equal",
                             "--n", "3", "--seed", "4", "--inclination", "0.5")
        assert same == good

    def test_params_rejects_malformed_pairs(self, capsys):
        code, doc = run_doc(capsys, "generate", "--kind", "generic_points",
                            "--n", "2", "--params", "spread")
        assert code == 2
        assert doc["error"] == "SchemaViolation"
        code, doc = run_doc(capsys, "generate", "--kind", "generic_points",
                            "--n", "2", "--params", "spread=wide")
        assert code == 2
        assert doc["error"] == "SchemaViolation"

    def test_verify_rejects_relation_theorem(self, capsys, tmp_path):
        scene = write_scene(tmp_path, {
            "schema": "lorentz-gram/1", "dimension": 2, "theorem": "relation",
            "objects": [{"type": "point", "coords": [0.0, 0.0, 1.0]}] * 4,
        })
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 2

    def test_tolerance_flag_plumbs_through(self, capsys, tmp_path):
        scene = generate_scene(
            capsys, tmp_path, "--kind", "generic_horospheres", "--n", "2", "--seed", "17")
        code, doc = run_doc(capsys, "verify", scene)
        assert code == 1
        code, doc = run_doc(capsys, "verify", scene, "--tol", "1000")
        assert doc["tol"] == 1000.0
        assert code == 0  # an absurdly loose tolerance calls everything degenerate


class TestBatch:
    def test_directory_aggregate(self, capsys, tmp_path):
        good = generate_scene(
            capsys, tmp_path, "--kind", "horospheres_on_hyperplane_boundary",
            "--n", "2", "--seed", "19", name="a_good.json")
        generic = generate_scene(
            capsys, tmp_path, "--kind", "generic_horospheres", "--n", "2",
            "--seed", "19", name="b_generic.json")
        (tmp_path / "c_broken.json").write_text("nope")
        code, doc = run_doc(capsys, "verify", "--scenes-dir", str(tmp_path))
        assert code == 2  # worst of 0, 1, 2
        reports = doc["reports"]
        assert set(reports) == {"a_good.json", "b_generic.json", "c_broken.json"}
        assert reports["a_good.json"]["verdict"]["degenerate"] is True
        assert reports["b_generic.json"]["verdict"]["degenerate"] is False
        assert reports["c_broken.json"]["error"] == "SchemaViolation"

    def test_scene_and_dir_conflict(self, capsys, tmp_path):
        scene = generate_scene(capsys, tmp_path, "--kind", "generic_points",
                               "--n", "2", "--seed", "21")
        code, doc = run_doc(capsys, "verify", scene, "--scenes-dir", str(tmp_path))
        assert code == 2


class TestConsoleScript:
    def test_module_entry_point(self, tmp_path):
        out = subprocess.run(
            [sys.executable, "-m", "lorentzgram.cli", "generate", "--kind",
             "generic_points", "--n", "2", "--seed", "1"],
            capture_output=True, text=True)
        assert out.returncode == 0
        doc = json.loads(out.stdout)
        assert doc["schema"] == "lorentz-gram/1"
        path = tmp_path / "scene.json"
        path.write_text(out.stdout)
        check = subprocess.run(
            [sys.executable, "-m", "lorentzgram.cli", "verify", str(path)],
            capture_output=True, text=True)
        assert check.returncode == 1
        assert json.loads(check.stdout)["verdict"]["degenerate"] is False
