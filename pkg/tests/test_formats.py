import json
from fractions import Fraction

import pytest

from profinite_workbench.classes import analyze
from profinite_workbench.constructions import agw_transitivity_witness, rosendal_tower, zp_tower
from profinite_workbench.errors import CapExceeded, ParseError
from profinite_workbench.formats import (
    TOWER_FORMAT,
    FileFormatError,
    digest,
    dump_report,
    dump_tower,
    dumps,
    parse_matrices,
    parse_matrices_approx,
    parse_report,
    parse_tower,
)
from profinite_workbench.matrices import (
    GaussianRational,
    RationalMatrix,
    approx_dense_class_obstruction,
    dense_class_obstruction,
)
from profinite_workbench.tower import thread_validate, validate_tower


def tower_doc(**over):
    doc = {
        "format": TOWER_FORMAT,
        "levels": [
            {"domain_size": 2, "generators": [[1, 0]]},
            {"domain_size": 4, "generators": [[1, 2, 3, 0]]},
        ],
        "maps": [{"generator_images": [[1, 0]]}],
        "threads": {"gen": [[1, 0], [1, 2, 3, 0]]},
    }
    doc.update(over)
    return json.dumps(doc)


class TestTowerFiles:
    def test_parse(self):
        t, threads = parse_tower(tower_doc())
        assert [G.order for G in t.levels] == [2, 4]
        assert validate_tower(t).valid
        assert thread_validate(t, threads["gen"])

    def test_round_trip_rosendal(self):
        t, beta = rosendal_tower(3)
        t2, threads = parse_tower(dump_tower(t, {"beta": beta}))
        assert [G.elements for G in t2.levels] == [G.elements for G in t.levels]
        assert [h.table for h in t2.maps] == [h.table for h in t.maps]
        assert threads["beta"] == beta

    def test_round_trip_is_stable(self):
        t, g = zp_tower(2, 3)
        text = dump_tower(t, {"g": g})
        assert dump_tower(*parse_tower(text)) == text

    def test_elements_and_table(self):
        doc = tower_doc(
            levels=[{"domain_size": 2, "elements": [[0, 1], [1, 0]]},
                    {"domain_size": 4, "generators": [[1, 2, 3, 0]]}],
            maps=[{"table": [0, 1, 0, 1]}],
        )
        t, _ = parse_tower(doc)
        assert validate_tower(t).valid

    def test_ill_defined_map(self):
        doc = tower_doc(levels=[{"domain_size": 2, "generators": [[1, 0]]},
                                {"domain_size": 3, "generators": [[1, 2, 0]]}],
                        maps=[{"generator_images": [[1, 0]]}], threads=None)
        with pytest.raises(FileFormatError) as exc:
            parse_tower(doc)
        assert exc.value.level == 1
        assert "homomorphism" in str(exc.value)

    def test_bad_table_is_caught_by_validation(self):
        doc = tower_doc(maps=[{"table": [0, 1, 1, 0]}], threads=None)
        t, _ = parse_tower(doc)
        report = validate_tower(t)
        assert not report.valid
        assert report.violations[0].level == 1

    @pytest.mark.parametrize("over,needle", [
        ({"format": "other"}, "format"),
        ({"levels": []}, "levels"),
        ({"maps": []}, "maps"),
        ({"levels": [{"domain_size": 2, "generators": [[1, 1]]},
                     {"domain_size": 4, "generators": [[1, 2, 3, 0]]}]}, "levels[0].generators[0]"),
        ({"levels": [{"domain_size": 2, "generators": [[1, 0, 2]]},
                     {"domain_size": 4, "generators": [[1, 2, 3, 0]]}]}, "expected 2 images"),
        ({"levels": [{"generators": [[1, 0]]},
                     {"domain_size": 4, "generators": [[1, 2, 3, 0]]}]}, "domain_size"),
        ({"levels": [{"domain_size": 3, "elements": [[0, 1, 2], [1, 2, 0]]},
                     {"domain_size": 4, "generators": [[1, 2, 3, 0]]}]}, "not closed"),
        ({"maps": [{"generator_images": [[1, 0], [0, 1]]}]}, "generators but"),
        ({"maps": [{"table": [0, 1]}]}, "table"),
        ({"maps": [{}]}, "generator_images or table"),
        ({"threads": {"gen": [[1, 0]]}}, "one entry per level"),
        ({"threads": {"gen": [[1, 0], [1, 2, 3]]}}, "threads.gen[1]"),
    ])
    def test_malformed(self, over, needle):
        with pytest.raises(FileFormatError) as exc:
            parse_tower(tower_doc(**over))
        assert needle in str(exc.value)

    def test_level_index_reported(self):
        doc = tower_doc(levels=[{"domain_size": 2, "generators": [[1, 0]]},
                                {"domain_size": 4, "generators": [[1, 1, 3, 0]]}])
        with pytest.raises(FileFormatError) as exc:
            parse_tower(doc)
        assert exc.value.level == 1

    def test_syntax_error_has_line(self):
        with pytest.raises(FileFormatError) as exc:
            parse_tower('{\n  "format": "x",\n  oops\n}')
        assert exc.value.line == 3
        assert isinstance(exc.value, ParseError)

    def test_cap(self):
        doc = tower_doc(levels=[{"domain_size": 2, "generators": [[1, 0]]},
                                {"domain_size": 6, "generators": [[1, 2, 3, 4, 5, 0], [1, 0, 2, 3, 4, 5]]}])
        with pytest.raises(CapExceeded):
            parse_tower(doc, cap=100)


class TestMatrixFiles:
    def test_parse(self):
        text = json.dumps({"dimension": 2, "generators": [["2", 0, 0, "1/2"], ["1", "i", "0", "1-i"]]})
        A, B = parse_matrices(text)
        assert A == RationalMatrix([[2, 0], [0, Fraction(1, 2)]])
        assert B[0, 1] == GaussianRational(0, 1)

    @pytest.mark.parametrize("doc,needle", [
        ({"dimension": 2, "generators": [["1//2", 0, 0, 1]]}, "generators[0][0]"),
        ({"dimension": 2, "generators": [[1, 0, 0]]}, "4 row-major"),
        ({"dimension": 0, "generators": [[1]]}, "dimension"),
        ({"dimension": 1, "generators": []}, "generators"),
        ({"dimension": 1, "generators": [[1.5]]}, "generators[0][0]"),
        ({"dimension": 1, "generators": [[True]]}, "generators[0][0]"),
    ])
    def test_malformed(self, doc, needle):
        with pytest.raises(FileFormatError) as exc:
            parse_matrices(json.dumps(doc))
        assert needle in str(exc.value)

    def test_approx(self):
        text = json.dumps({"dimension": 1, "generators": [["0.5-2e-3i"], ["1/4"], [2]]})
        assert parse_matrices_approx(text) == [((0.5 - 0.002j,),), ((0.25,),), ((2,),)]
        with pytest.raises(FileFormatError):
            parse_matrices_approx(json.dumps({"dimension": 1, "generators": [["x"]]}))


class TestReports:
    def test_class_report(self):
        rep = analyze(*rosendal_tower(4), assumed_self_similar=1)
        back, env = parse_report(dump_report(rep, digest("x"), {"keylem_bound": True}))
        assert back == rep
        assert env["kind"] == "class_report"
        assert env["checks"] == {"keylem_bound": True}
        assert env["input_digest"] == digest("x")

    def test_measures_are_exact_strings(self):
        rep = analyze(*zp_tower(3, 3))
        body = json.loads(dump_report(rep, digest("x")))["report"]
        assert [x["measure"] for x in body["levels"]] == ["1/3", "1/9", "1/27"]

    def test_obstruction_report(self):
        gens = [RationalMatrix([[1, 1], [0, 1]]), RationalMatrix([[1, 0], [GaussianRational(0, 1), 1]])]
        rep = dense_class_obstruction(gens, 2)
        back, _ = parse_report(dump_report(rep, digest("m")))
        assert back == rep

    def test_approx_report(self):
        rep = approx_dense_class_obstruction([[[2.0, 0], [0, 0.5]]], 2)
        back, _ = parse_report(dump_report(rep, digest("m")))
        assert back == rep

    def test_witness(self):
        w = agw_transitivity_witness((1, 2, 3, 4), 1, [2, 0, 1], [0, 2, 1])
        back, env = parse_report(dump_report(w, digest("w")))
        assert back == w and back.verified
        assert env["kind"] == "transitivity_witness"

    def test_unknown_kind(self):
        with pytest.raises(FileFormatError):
            parse_report(json.dumps({"format": "profinite-workbench/report", "kind": "x", "report": {}}))
        with pytest.raises(FileFormatError):
            parse_report(json.dumps({"format": "profinite-workbench/report",
                                     "kind": "class_report", "report": {}}))

    def test_deterministic_bytes(self):
        a = dump_report(analyze(*rosendal_tower(3)), digest("x"))
        b = dump_report(analyze(*rosendal_tower(3)), digest("x"))
        assert a == b


def test_dumps_inlines_scalar_lists():
    text = dumps({"a": [1, 2], "b": [[1], [2]]})
    assert '"a": [1, 2]' in text
    assert json.loads(text) == {"a": [1, 2], "b": [[1], [2]]}


def test_digest_is_stable():
    assert digest("abc") == digest(b"abc")
    assert digest({"b": 1, "a": 2}) == digest({"a": 2, "b": 1})
