import json
import subprocess
import sys

import pytest

from invturan import cache as ch
from invturan.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "--no-cache")
    return code, json.loads(out)


def test_ex_triangle_example(capsys):
    code, js = run_json(capsys, "ex", "g6:Bw", "C3")
    assert code == 0 and js["value"] == 2 and js["provenance"].startswith("exact:")


def test_ex_named_hosts(capsys):
    assert run_json(capsys, "ex", "K6", "P3")[1]["value"] == 6
    assert run_json(capsys, "ex", "T9,3", "P4")[1]["value"] == 10


def test_ex_witness_maps_back_to_input_labels(capsys):
    # a path labelled out of canonical order: the witness must use the caller's labels
    code, js = run_json(capsys, "ex", "g6:DQc", "P3")
    from invturan import graph as gc
    host = gc.decode("DQc")
    assert all(host.has_edge(u, v) for u, v in js["witness_edges"])


def test_invex_example(capsys):
    code, js = run_json(capsys, "invex", "3", "P3", "--max-vertices", "8")
    assert code == 0 and js["value"] == 4 and "C]" in js["hosts"]


def test_bounds_example(capsys):
    code, js = run_json(capsys, "bounds", "100", "C4")
    certified = [b for b in js["bounds"] if b.get("certified")]
    assert code == 0 and max(int(b["value"]) for b in certified if b["kind"] == "lower") == 520


def test_construct(capsys):
    code, js = run_json(capsys, "construct", "19", "P4")
    assert code == 0 and js["certified"]["certified"] and js["family"]["edges"] == 81
    assert js["certified"]["provenance"].startswith("certificate:")


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--no-cache")
    lines = out.strip().splitlines()
    assert code == 0 and lines and all(l.startswith("PASS") for l in lines)


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "5", "--filter", "connected", "--count")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 22 and lines[-1] == "# 21 graphs"


def test_exit_codes(capsys):
    assert run(capsys, "invex", "3", "P2", "--no-cache")[0] == 3
    assert run(capsys, "ex", "Q5", "P3", "--no-cache")[0] == 1
    assert run(capsys, "ex", "K12", "K4", "--no-cache")[0] == 1  # edge cap
    assert run(capsys, "invex", "5", "P3", "--max-vertices", "5", "--no-cache")[0] == 2
    assert run(capsys, "ex", "K5,5", "P4", "--budget", "3", "--no-cache")[0] == 2


def test_cache_is_transparent(tmp_path, capsys):
    path = tmp_path / "c.ndjson"
    argv = ["ex", "K3,4", "C4", "--json", "--cache", str(path)]
    first = run(capsys, *argv)[1]
    n_lines = len(path.read_text().splitlines())
    second = run(capsys, *argv)[1]
    assert first == second and n_lines >= 1
    assert len(path.read_text().splitlines()) == n_lines
    fresh = run(capsys, "ex", "K3,4", "C4", "--json", "--no-cache")[1]
    assert fresh == first


def test_cache_keys_ignore_labelling(tmp_path):
    c = ch.ResultCache(tmp_path / "x.ndjson")
    calls = []
    key = ch.make_key("Bw", "C3", "ex", {"budget": 1})
    assert c.get_or_compute(key, lambda: calls.append(1) or {"v": 2}) == {"v": 2}
    assert c.get_or_compute(key, lambda: calls.append(1) or {"v": 2}) == {"v": 2}
    assert c.hits >= 1
    assert ch.make_key("Bw", "C3", "ex", {"budget": 1}) != ch.make_key("Bw", "C3", "ex", {"budget": 2})


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "invturan", "ex", "K4", "P3", "--no-cache"],
                         capture_output=True, text=True, check=True)
    assert "3" in out.stdout
