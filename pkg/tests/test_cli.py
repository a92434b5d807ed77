import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from numradius import cli
from numradius.cli import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PARTIAL,
    LiteralError,
    format_complex,
    main,
    parse_complex,
    run_batch,
)

SVG = "{http://www.w3.org/2000/svg}"
W11 = (1 + math.sqrt(2)) / 2
EXAMPLES = [
    '{"id": "jordan", "matrix": [["0", "1"], ["0", "0"]]}',
    '{"id": "diag", "matrix": [[1, 0], [0, 2]]}',
    '{"id": "rank1", "matrix": [["1", "1"], ["0", "0"]]}',
]

reals = st.floats(allow_nan=False, allow_infinity=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "text, z",
    [
        ("1", 1),
        ("-2.5i", -2.5j),
        ("3+4i", 3 + 4j),
        ("1e-3-2e2i", 1e-3 - 200j),
        ("i", 1j),
        ("-i", -1j),
        ("2-i", 2 - 1j),
        (".5", 0.5),
        ("+7.", 7),
        ("1E+2i", 100j),
    ],
)
def test_literal_grammar(text, z):
    assert parse_complex(text) == z


@pytest.mark.parametrize(
    "text, pos",
    [("", 0), ("1+", 2), ("3+4", 3), ("1 + 2i", 1), ("abc", 0), ("1e", 2), ("2i3", 2), ("1+2ix", 4)],
)
def test_literal_errors_carry_position(text, pos):
    with pytest.raises(LiteralError) as info:
        parse_complex(text)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


@given(reals, reals)
def test_literal_round_trip(x, y):
    z = complex(x, y)
    back = parse_complex(format_complex(z))
    assert back == z
    assert math.copysign(1, back.imag) == math.copysign(1, z.imag)


def test_radius_examples(capsys):
    code, out, _ = run(capsys, "radius", "0", "1", "0", "0")
    rec = json.loads(out)
    assert code == EXIT_OK and rec["w"] == 0.5 and rec["method"] == "DiskFast"
    assert "oracle_w" not in rec and "abs_err" not in rec
    code, out, _ = run(capsys, "radius", "1", "0", "0", "2")
    rec = json.loads(out)
    assert rec["w"] == 2.0 and rec["method"] == "SegmentFast"
    code, out, _ = run(capsys, "radius", "1", "1", "0", "0", "--check", "--time")
    rec = json.loads(out)
    assert rec["w"] == pytest.approx(W11, abs=1e-12)
    assert rec["abs_err"] <= 1e-6
    assert rec["abs_err"] == abs(rec["w"] - rec["oracle_w"])
    assert isinstance(rec["wall_time_ns"], int)
    assert out.count("\n") == 1


def test_radius_negative_literals(capsys):
    code, out, _ = run(capsys, "radius", "-1", "-2.5i", "0", "-i")
    assert code == EXIT_OK
    assert json.loads(out)["w"] > 0


def test_radius_from_json(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text(EXAMPLES[2])
    code, out, _ = run(capsys, "radius", "--input", str(f))
    rec = json.loads(out)
    assert code == EXIT_OK and rec["id"] == "rank1" and rec["method"] == "Pencil"


def test_radius_parse_errors(capsys, tmp_path):
    code, _, err = run(capsys, "radius", "1", "2+", "0", "0")
    assert code == EXIT_PARSE and "position 2" in err
    assert run(capsys, "radius", "1", "2")[0] == EXIT_PARSE
    assert run(capsys, "radius", "nan", "0", "0", "0")[0] == EXIT_PARSE
    assert run(capsys, "radius", "--input", str(tmp_path / "missing.json"))[0] == EXIT_PARSE
    bad = tmp_path / "bad.json"
    bad.write_text('{"matrix": [[1, 2]]}')
    assert run(capsys, "radius", "--input", str(bad))[0] == EXIT_PARSE
    assert run(capsys, "nonsense")[0] == EXIT_PARSE


def test_internal_failure_exit_code(capsys, monkeypatch):
    def boom(*_):
        raise RuntimeError("broken")

    monkeypatch.setattr(cli, "numerical_radius", boom)
    code, _, err = run(capsys, "radius", "1", "1", "0", "0")
    assert code == EXIT_INTERNAL and "internal" in err


def test_boundary_csv_jordan(capsys):
    code, out, _ = run(capsys, "boundary", "0", "1", "0", "0", "--samples", "4")
    lines = out.splitlines()
    assert code == EXIT_OK and lines[0] == "t,x,y" and len(lines) == 5
    ts = [float(ln.split(",")[0]) for ln in lines[1:]]
    assert ts == pytest.approx([0, math.pi / 2, math.pi, 3 * math.pi / 2])
    for ln in lines[1:]:
        _, x, y = map(float, ln.split(","))
        assert math.hypot(x, y) == pytest.approx(0.5, abs=1e-15)
    assert "\r" not in out


def test_boundary_csv_scalar_is_a_point(capsys):
    _, out, _ = run(capsys, "boundary", "2", "0", "0", "2", "--samples", "8")
    rows = {tuple(ln.split(",")[1:]) for ln in out.splitlines()[1:]}
    assert rows == {("2", "0")}


def test_boundary_default_samples(capsys):
    _, out, _ = run(capsys, "boundary", "1", "1", "0", "0")
    assert len(out.splitlines()) == 2001


def _svg(capsys, *entries, samples="2000"):
    code, out, _ = run(capsys, "boundary", *entries, "--format", "svg", "--samples", samples)
    assert code == EXIT_OK
    return out, ET.fromstring(out.encode())


def test_svg_structure_and_tangency(capsys):
    out, root = _svg(capsys, "1", "1", "0", "0")
    paths, circles = root.findall(SVG + "path"), root.findall(SVG + "circle")
    assert len(paths) == 1 and len(circles) == 1
    r = float(circles[0].get("r"))
    assert r == pytest.approx(W11, abs=1e-9)
    pts = [tuple(map(float, tok[1:].split(","))) for tok in paths[0].get("d").split() if tok != "Z"]
    assert len(pts) == 2000
    # the circle touches the ellipse at the real-axis vertex (SVG y is flipped)
    assert min(math.hypot(x - r, y) for x, y in pts) < 1e-6
    assert max(math.hypot(x, y) for x, y in pts) <= r + 1e-9
    vb = list(map(float, root.get("viewBox").split()))
    assert vb[0] <= -r and vb[0] + vb[2] >= r and vb[1] <= -r and vb[1] + vb[3] >= r


def test_svg_is_byte_stable(capsys):
    a, _ = _svg(capsys, "1+2i", "0.3", "-1i", "2")
    b, _ = _svg(capsys, "1+2i", "0.3", "-1i", "2")
    assert a == b


def test_svg_degenerate_inputs_are_valid(capsys):
    for entries in (("0", "0", "0", "0"), ("2", "0", "0", "2"), ("1", "0", "0", "3i")):
        _svg(capsys, *entries, samples="16")


def test_boundary_writes_file(tmp_path, capsys):
    f = tmp_path / "out.svg"
    code, out, _ = run(capsys, "boundary", "0", "1", "0", "0", "--format", "svg", "--output", str(f))
    assert code == EXIT_OK and out == ""
    ET.parse(f)


def test_boundary_rejects_bad_samples(capsys):
    assert run(capsys, "boundary", "0", "1", "0", "0", "--samples", "0")[0] == EXIT_PARSE


def test_batch_examples(tmp_path, capsys):
    f = tmp_path / "in.jsonl"
    f.write_text("\n".join(EXAMPLES) + "\n")
    code, out, err = run(capsys, "batch", "--input", str(f), "--check")
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert code == EXIT_OK
    assert [r["id"] for r in recs] == ["jordan", "diag", "rank1"]
    summary = json.loads(err)
    assert summary["count"] == 3 and summary["errors"] == 0
    assert summary["max_abs_err"] <= 1e-6


def test_batch_empty_file(tmp_path, capsys):
    f = tmp_path / "empty.jsonl"
    f.write_text("")
    code, out, err = run(capsys, "batch", "--input", str(f))
    assert code == EXIT_OK and out == ""
    assert json.loads(err)["count"] == 0


def test_batch_malformed_line(tmp_path, capsys):
    f = tmp_path / "bad.jsonl"
    f.write_text(EXAMPLES[0] + '\n{"id": "x", "matrix": [["1", "2+"], [0, 0]]}\n' + EXAMPLES[1] + "\n")
    code, out, err = run(capsys, "batch", "--input", str(f))
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert code == EXIT_PARTIAL
    assert len(recs) == 3
    assert recs[1]["line"] == 2 and recs[1]["id"] == "x" and "position 2" in recs[1]["error"]
    assert json.loads(err)["errors"] == 1


def test_batch_missing_file(tmp_path, capsys):
    assert run(capsys, "batch", "--input", str(tmp_path / "nope.jsonl"))[0] == EXIT_PARSE


def test_batch_order_under_jobs():
    lines = [json.dumps({"id": str(k), "matrix": [[k, 1], [0, -k / 3]]}) for k in range(40)]
    serial = run_batch(lines, jobs=1)
    for jobs in (2, 3):
        assert run_batch(lines, jobs=jobs) == serial
    assert [r["id"] for r in serial] == [str(k) for k in range(40)]


def test_bench_deterministic(capsys):
    reports = [run(capsys, "bench", "--n", "30", "--seed", "7")[1] for _ in range(2)]
    assert reports[0] == reports[1]
    rep = json.loads(reports[0])
    assert rep["n"] == 30 and sum(rep["methods"].values()) == 30
    assert rep["max_abs_err"] <= 1e-6
    assert 0.0 <= rep["fallback_rate"] <= 1.0


def test_bench_single_matrix_twice(capsys):
    a = run(capsys, "bench", "--n", "1", "--seed", "7")
    b = run(capsys, "bench", "--n", "1", "--seed", "7")
    assert a[0] == b[0] == EXIT_OK and a[1] == b[1]
    assert "wall_time_ns" in a[2]


def test_bench_empty(capsys):
    code, out, _ = run(capsys, "bench", "--n", "0")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["n"] == 0 and rep["max_abs_err"] is None and rep["fallback_rate"] is None


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "numradius", "radius", "0", "1", "0", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["w"] == 0.5
