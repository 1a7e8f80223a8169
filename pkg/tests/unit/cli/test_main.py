import json
from io import StringIO
from pathlib import Path
from typing import List, Tuple

import pytest

from kacss.cli import main
from kacss.cli.main import EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE
from kacss.graph import parse_arc_set, parse_instance, write_instance
from tests.unit.graphs import bidirected, cycle, path


def _run(argv: List[str]) -> Tuple[int, str]:
    out = StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def _write(tmp_path: Path, name: str, text: str) -> str:
    target = tmp_path / name
    target.write_text(text, encoding="utf-8")
    return str(target)


def test_solve_writes_json_and_artifacts(tmp_path: Path) -> None:
    instance_file = _write(tmp_path, "cycle.kacss", write_instance(cycle(4)))
    arcs_file = tmp_path / "arcs.txt"
    dot_file = tmp_path / "out.dot"
    transcript_file = tmp_path / "transcript.json"
    code, output = _run(
        [
            "solve",
            instance_file,
            "--derandomize",
            "--json",
            "--output",
            str(arcs_file),
            "--dot",
            str(dot_file),
            "--transcript",
            str(transcript_file),
        ]
    )
    assert code == EXIT_OK
    payload = json.loads(output)
    assert payload["mode"] == "derandomized"
    assert payload["size"] == "4/1"
    assert payload["arcs"] == [0, 1, 2, 3]
    assert arcs_file.read_text(encoding="utf-8") == "0\n1\n2\n3\n"
    assert dot_file.read_bytes().startswith(b"digraph kacss {")
    assert "iterations" in json.loads(transcript_file.read_text(encoding="utf-8"))


def test_solve_sampled_text_output(tmp_path: Path) -> None:
    instance_file = _write(tmp_path, "triangle.kacss", write_instance(bidirected(3)))
    code, output = _run(["solve", instance_file, "--seed", "9"])
    assert code == EXIT_OK
    assert "mode: sampled" in output
    assert "seed: 9" in output


def test_solve_reports_infeasible_instances(tmp_path: Path) -> None:
    instance_file = _write(tmp_path, "path.kacss", write_instance(path(3)))
    code, _ = _run(["solve", instance_file])
    assert code == EXIT_INFEASIBLE


def test_malformed_instance_is_a_usage_error(tmp_path: Path) -> None:
    instance_file = _write(tmp_path, "broken.kacss", "p kacss 2 1 1\na 0 1 -1/1\n")
    assert _run(["solve", instance_file])[0] == EXIT_USAGE
    assert _run(["solve", str(tmp_path / "missing.kacss")])[0] == EXIT_USAGE


def test_bad_arguments() -> None:
    assert _run(["solve"])[0] == EXIT_USAGE
    assert _run(["gap", "--depth", "0", "--columns", "3"])[0] == EXIT_USAGE
    assert _run(["random", "--n", "4", "--k", "1", "--seed", "-3"])[0] == EXIT_USAGE


def test_verify_connected_and_disconnected(tmp_path: Path) -> None:
    instance_file = _write(tmp_path, "triangle.kacss", write_instance(bidirected(3)))
    good = _write(tmp_path, "good.txt", "0\n1\n2\n")
    bad = _write(tmp_path, "bad.txt", "0\n1\n")
    code, output = _run(["verify", instance_file, "--subgraph", good, "--json"])
    assert code == EXIT_OK
    assert json.loads(output)["k_arc_connected"] is True

    code, output = _run(["verify", instance_file, "--subgraph", bad, "--json"])
    assert code == EXIT_INFEASIBLE
    payload = json.loads(output)
    assert payload["k_arc_connected"] is False
    assert payload["cut_value"] == "0/1"


def test_decompose_prints_lambda_terms(tmp_path: Path) -> None:
    instance_file = _write(tmp_path, "cycle.kacss", write_instance(cycle(3)))
    code, output = _run(["decompose", instance_file, "--direction", "in"])
    assert code == EXIT_OK
    payload = json.loads(output)
    assert payload["direction"] == "in"
    assert payload["terms"] == [{"lambda": "1/1", "arcs": [1, 2]}]


def test_gap_emits_instance_and_levels(tmp_path: Path) -> None:
    prefix = tmp_path / "g1"
    code, output = _run(["gap", "--depth", "1", "--columns", "3", "--exact", "--emit", str(prefix), "--json"])
    assert code == EXIT_OK
    payload = json.loads(output)
    assert payload["lp_value"] == "1/2"
    assert payload["exact_opt"] == "1/2"
    assert payload["exact_status"] == "optimal"

    instance = parse_instance((tmp_path / "g1.kacss").read_text(encoding="utf-8"))
    assert instance.n == 4
    assert instance.m == 8
    sidecar = json.loads((tmp_path / "g1.levels.json").read_text(encoding="utf-8"))
    assert sidecar["levels"] == [1] * 8


def test_random_instance_to_stdout_and_file(tmp_path: Path) -> None:
    code, output = _run(["random", "--n", "5", "--k", "2", "--extra", "3", "--seed", "4"])
    assert code == EXIT_OK
    instance = parse_instance(output)
    assert (instance.n, instance.m, instance.k) == (5, 13, 2)

    target = tmp_path / "random.kacss"
    assert _run(["random", "--n", "5", "--k", "2", "--extra", "3", "--seed", "4", "--output", str(target)])[0] == 0
    assert parse_instance(target.read_text(encoding="utf-8")) == instance


def test_solved_arcs_verify(tmp_path: Path) -> None:
    instance_file = _write(tmp_path, "triangle.kacss", write_instance(bidirected(3, k=1)))
    arcs_file = tmp_path / "arcs.txt"
    assert _run(["solve", instance_file, "--output", str(arcs_file)])[0] == EXIT_OK
    assert parse_arc_set(arcs_file.read_text(encoding="utf-8"))
    assert _run(["verify", instance_file, "--subgraph", str(arcs_file)])[0] == EXIT_OK


@pytest.mark.parametrize("level", ["DEBUG", "warning"])
def test_log_level_override(tmp_path: Path, level: str) -> None:
    instance_file = _write(tmp_path, "cycle.kacss", write_instance(cycle(3)))
    assert _run(["--log-level", level, "solve", instance_file])[0] == EXIT_OK


def test_missing_config_file(tmp_path: Path) -> None:
    assert _run(["--config", str(tmp_path / "none.yaml"), "random", "--n", "3", "--k", "1"])[0] == EXIT_USAGE


@pytest.mark.parametrize("mode", [[], ["--derandomize"]])
def test_solve_output_is_byte_identical_across_runs(tmp_path: Path, mode: List[str]) -> None:
    instance_file = _write(tmp_path, "triangle.kacss", write_instance(bidirected(3)))
    argv = ["solve", instance_file, "--seed", "12345", "--json", *mode]
    first = _run(argv)
    second = _run(argv)
    assert first[0] == second[0] == EXIT_OK
    assert first[1] == second[1]
    assert first[1].encode("utf-8") == second[1].encode("utf-8")


@pytest.mark.parametrize(
    "argv",
    [
        ["random", "--n", "6", "--k", "2", "--extra", "3", "--seed", "77"],
        ["gap", "--depth", "1", "--columns", "3", "--exact", "--json"],
    ],
)
def test_seeded_verbs_are_deterministic(argv: List[str]) -> None:
    first = _run(argv)
    second = _run(argv)
    assert first[0] == EXIT_OK
    assert first == second
