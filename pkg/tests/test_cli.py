import json

import pytest

from pivotgrid.cli import EXIT_BREACH, EXIT_DOMAIN, EXIT_OK, main


@pytest.fixture
def shapes_dir(tmp_path):
    (tmp_path / "l.txt").write_text("#.\n##\n")
    (tmp_path / "line.txt").write_text("0 0\n1 0\n2 0\n")
    (tmp_path / "apart.txt").write_text("0 0\n2 0\n")
    (tmp_path / "ring.txt").write_text("###\n#.#\n###\n")
    return tmp_path


def test_validate_golden(shapes_dir, capsys):
    assert main(["validate", str(shapes_dir / "ring.txt")]) == EXIT_OK
    assert capsys.readouterr().out == "modules=8\nconnected=true\nholes=1\ncut_modules=0\n"
    assert main(["validate", str(shapes_dir / "apart.txt")]) == EXIT_DOMAIN


def test_missing_file(capsys):
    assert main(["validate", "/nonexistent/shape"]) == EXIT_DOMAIN
    assert "error:" in capsys.readouterr().err


def test_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["atlas"])
    assert err.value.code == 2


def test_moves_and_patterns(shapes_dir, capsys):
    assert main(["moves", str(shapes_dir / "l.txt"), "--set", "1"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out and all(line.startswith("MOVE ") and line.endswith("SET 1") for line in out)
    assert main(["patterns", str(shapes_dir / "apart.txt")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("I anchor=0,0") and out.endswith("admissible=false\n")


def test_shell(shapes_dir, capsys, tmp_path):
    svg = tmp_path / "shell.svg"
    assert main(["shell", str(shapes_dir / "line.txt"), "--svg", str(svg)]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 8
    assert svg.read_text().startswith("<svg")


def test_atlas(tmp_path, capsys):
    assert main(["atlas", "--n", "4", "--set", "1", "--out", str(tmp_path / "a")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "nodes=19\n" in out and "components=1\n" in out
    assert (tmp_path / "a" / "edges.txt").exists()
    assert main(["atlas", "--n", "20"]) == EXIT_DOMAIN


def test_reconfigure_then_replay(shapes_dir, tmp_path, capsys):
    trace = tmp_path / "t.trace"
    frames = tmp_path / "frames"
    rc = main(["reconfigure", str(shapes_dir / "l.txt"), str(shapes_dir / "line.txt"),
               "--trace", str(trace), "--svg-frames", str(frames)])
    assert rc == EXIT_OK
    assert "extras=" in capsys.readouterr().err
    assert main(["replay", str(shapes_dir / "l.txt"), str(trace)]) == EXIT_OK
    assert capsys.readouterr().out == "0 0\n1 0\n2 0\n"
    n_steps = sum(1 for line in trace.read_text().splitlines() if not line.startswith("#"))
    assert len(list(frames.iterdir())) == n_steps + 1
    # corrupt one move: replay names the step
    lines = trace.read_text().splitlines()
    k = next(i for i, line in enumerate(lines) if line.startswith("MOVE"))
    tok = lines[k].split()
    tok[2] = str(int(tok[2]) + 3)
    lines[k] = " ".join(tok)
    trace.write_text("\n".join(lines) + "\n")
    assert main(["replay", str(shapes_dir / "l.txt"), str(trace)]) == EXIT_BREACH
    assert "rejected at step" in capsys.readouterr().err


def test_reconfigure_rejects(shapes_dir):
    l_, line = str(shapes_dir / "l.txt"), str(shapes_dir / "line.txt")
    assert main(["reconfigure", l_, str(shapes_dir / "ring.txt")]) == EXIT_DOMAIN
    assert main(["reconfigure", l_, line, "--set", "1"]) == EXIT_DOMAIN


def test_fuzz_json(capsys):
    assert main(["fuzz", "--seed", "3", "--runs", "2", "--n-max", "12"]) == EXIT_OK
    rows = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert len(rows) == 2 and all(r["ok"] for r in rows)
    assert {"seed", "n", "extras_used", "total_moves", "bridge_invocations"} <= set(rows[0])


def test_render(shapes_dir, tmp_path):
    out = tmp_path / "l.svg"
    assert main(["render", str(shapes_dir / "l.txt"), "--out", str(out)]) == EXIT_OK
    assert out.read_text().count('class="module"') == 3
