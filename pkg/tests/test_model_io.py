"""
Tests for JSON model files and CSV grid export
"""

import json
from pathlib import Path

import numpy as np
import pytest

from prefcalc.algebra.expr import Atom
from prefcalc.errors import ModelFileError, ModelValidationError
from prefcalc.storage.grid_csv import export_grid_csv, load_grid_csv
from prefcalc.storage.model_file import ModelFileSchema, load_model, model_to_schema, save_model
from prefcalc.utility.curves import CurveFamily
from prefcalc.utility.engine import eval_utility
from prefcalc.utility.model import TableJoint

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"


def write_json(path, document):
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


def table_document(values, levels=(0, 1)):
    return {
        "attributes": [{"name": "x", "levels": list(levels)}, {"name": "y", "levels": list(levels)}],
        "joint": {"type": "table", "values": values},
    }


class TestLoadModel:
    def test_product_file(self):
        model = load_model(MODELS_DIR / "npv_exponential.json")
        assert model.is_product
        assert model.context == "two-year profit"
        assert [c.family for c in model.joint.curves] == [CurveFamily.EXPONENTIAL, CurveFamily.EXPONENTIAL]
        assert model.joint_utility((50, 50)) == 1.0

    def test_table_file(self):
        model = load_model(MODELS_DIR / "table_3x3.json")
        assert isinstance(model.joint, TableJoint)
        assert model.joint_utility((1, 2)) == 0.5

    def test_default_context(self, tmp_path):
        model = load_model(write_json(tmp_path / "m.json", table_document([0, 0, 0, 1])))
        assert model.context == "default"

    def test_corner_violation_rejected_with_diagnostics(self, tmp_path):
        path = write_json(tmp_path / "m.json", table_document([0.1, 0.1, 0.1, 1]))
        with pytest.raises(ModelValidationError) as info:
            load_model(path)
        assert "corner-normalization" in {d.code for d in info.value.diagnostics}

    def test_unsorted_levels_rejected(self, tmp_path):
        path = write_json(tmp_path / "m.json", table_document([0, 0, 0, 0, 0, 0, 0, 0, 1], levels=(0, 2, 1)))
        with pytest.raises(ModelFileError, match="strictly increasing"):
            load_model(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFileError, match="not found"):
            load_model(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ModelFileError):
            load_model(path)

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.update(extra=1),
            lambda d: d["joint"].update(type="mixture"),
            lambda d: d["joint"].update(values=[0, 0, 1]),
            lambda d: d["attributes"][1].update(name="x"),
            lambda d: d["attributes"][0].update(levels=[0]),
        ],
    )
    def test_schema_violations(self, tmp_path, mutate):
        document = table_document([0, 0, 0, 1])
        mutate(document)
        with pytest.raises(ModelFileError):
            load_model(write_json(tmp_path / "m.json", document))

    def test_product_needs_every_curve(self, tmp_path):
        document = {
            "attributes": [
                {"name": "x", "levels": [0, 1], "curve": {"family": "linear"}},
                {"name": "y", "levels": [0, 1]},
            ],
            "joint": {"type": "product"},
        }
        with pytest.raises(ModelFileError, match="curve"):
            load_model(write_json(tmp_path / "m.json", document))

    def test_bad_curve_params(self, tmp_path):
        document = {
            "attributes": [{"name": "x", "levels": [0, 1], "curve": {"family": "power", "params": [-2]}}],
            "joint": {"type": "product"},
        }
        with pytest.raises(ModelFileError):
            load_model(write_json(tmp_path / "m.json", document))


class TestSaveModel:
    def test_product_round_trip(self, tmp_path, cube_model):
        loaded = load_model(save_model(cube_model, tmp_path / "cube.json"))
        assert loaded.joint.curves == cube_model.joint.curves
        np.testing.assert_array_equal(loaded.grid_values(), cube_model.grid_values())

    def test_table_round_trip(self, tmp_path, table_3x3):
        loaded = load_model(save_model(table_3x3, tmp_path / "t.json"))
        assert loaded.context == "assessed"
        np.testing.assert_array_equal(loaded.grid_values(), table_3x3.grid_values())

    def test_field_names(self, table_3x3):
        document = json.loads(model_to_schema(table_3x3).model_dump_json(exclude_none=True))
        assert set(document) == {"attributes", "joint", "context"}
        assert document["joint"]["type"] == "table"
        assert set(document["attributes"][0]) == {"name", "levels"}

    def test_schema_accepts_its_own_output(self, cube_model):
        text = model_to_schema(cube_model).model_dump_json()
        assert ModelFileSchema.model_validate_json(text).joint.type == "product"


class TestGridCsv:
    def test_layout(self, tmp_path, table_3x3):
        path = export_grid_csv(table_3x3, tmp_path / "grid.csv")
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == "x,y,utility"
        assert len(lines) == 10
        assert lines[5] == "1.0,1.0,0.2"
        assert lines[-1] == "2.0,2.0,1"

    def test_reimport_reproduces_conjunctions(self, tmp_path, npv_file_model):
        path = export_grid_csv(npv_file_model, tmp_path / "grid.csv")
        table = load_grid_csv(path, context="re-imported")
        assert table.context == "re-imported"
        for x in npv_file_model.space.attribute("x").levels:
            for y in npv_file_model.space.attribute("y").levels:
                e = Atom("x", x) & Atom("y", y)
                assert abs(eval_utility(e, table) - eval_utility(e, npv_file_model)) <= 1e-12

    def test_reimport_rejects_partial_grid(self, tmp_path, table_3x3):
        path = export_grid_csv(table_3x3, tmp_path / "grid.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
        with pytest.raises(ModelFileError):
            load_grid_csv(path)

    def test_reimport_rejects_bad_header(self, tmp_path):
        path = tmp_path / "grid.csv"
        path.write_text("x,y,value\n0,0,0\n", encoding="utf-8")
        with pytest.raises(ModelFileError, match="header"):
            load_grid_csv(path)

    def test_reimport_validates(self, tmp_path):
        path = tmp_path / "grid.csv"
        path.write_text("x,utility\n0,0.2\n1,1\n", encoding="utf-8")
        with pytest.raises(ModelValidationError):
            load_grid_csv(path)
