import json
import math

import numpy as np
import pytest
from tornadotab import _hashing, _sketches, loads
from tornadotab.core.hashing import HashParams, read_golden
from tornadotab.harness.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, main
from tornadotab.harness.config import KINDS

HASHER = ["--c", "2", "--d", "2", "--char-bits", "8", "--range-bits", "32", "--seed", "0x11"]


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_experiment_list(capsys):
    code, out = _run(capsys, "experiment", "list")
    assert code == EXIT_OK
    assert [line.split()[0] for line in out.splitlines()] == list(KINDS)


def test_experiment_run(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("MASTER_SEED", raising=False)
    monkeypatch.delenv("THREADS", raising=False)
    config = tmp_path / "independence.json"
    config.write_text(
        json.dumps(
            {"kind": "independence", "c": 2, "d": 3, "char_bits": 8, "range_bits": 32,
             "n": 64, "t": 1, "trials": 20, "master_seed": 5}
        )
    )
    output = tmp_path / "out" / "independence.csv"
    code, out = _run(
        capsys, "-q", "experiment", "run", "--config", str(config), "--output", str(output)
    )
    assert code in (EXIT_OK, EXIT_FAILED)
    assert out.startswith("independence: regime=out-of-theorem config_sha256=")
    assert "consistent[d=1]" in out
    assert output.exists() and output.with_suffix(".json").exists()
    report = json.loads(output.with_suffix(".json").read_text())
    assert (code == EXIT_OK) == report["passed"]


def test_experiment_bad_config(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"kind": "independence", "trials": 0}))
    assert main(["experiment", "run", "--config", str(config)]) == EXIT_CONFIG
    config.write_text("{")
    assert main(["experiment", "run", "--config", str(config)]) == EXIT_CONFIG
    assert main(["experiment", "run", "--config", str(tmp_path / "none.json")]) == EXIT_CONFIG


def test_bounds_eval(capsys):
    args = ["bounds", "eval", "--formula", "classic_chernoff", "--delta", "0.5", "--mu", "12"]
    code, out = _run(capsys, *args)
    assert code == EXIT_OK
    assert float(out) == pytest.approx(2 * math.exp(-1))

    code, out = _run(capsys, *args, "--json")
    result = json.loads(out)
    assert result["formula"] == "classic_chernoff"
    assert result["raw"] == pytest.approx(2 * math.exp(-1))
    assert result["vacuous"] is False

    code, out = _run(capsys, *args, "--backend", "decimal")
    assert float(out) == pytest.approx(2 * math.exp(-1), rel=1e-15)

    assert main(["bounds", "eval", "--formula", "pretty1", "--delta", "0.1"]) == EXIT_CONFIG
    negative = ["bounds", "eval", "--formula", "upper_tail", "--delta", "-1", "--mu", "12"]
    assert main(negative) == EXIT_CONFIG


def test_bounds_ugly(capsys):
    code, out = _run(
        capsys, "bounds", "ugly", "--p", "1e-6", "--mu", "20000",
        "--sigma-size", "65536", "--c", "4", "--d", "8", "--sel-bits", "1",
    )
    assert code == EXIT_OK
    result = json.loads(out)
    assert 0 < result["deviation"] < 20000
    assert set(result) == {"deviation", "probability", "symbols"}
    assert result["symbols"]["s_all"] == 160


def test_hash(tmp_path, capsys):
    params = HashParams(2, 2, 8, 32)
    h = _hashing.tornado_new(0x11, params)
    code, out = _run(capsys, "hash", *HASHER, "1", "0x20", "300")
    assert code == EXIT_OK
    lines = out.splitlines()
    expected = _hashing.tornado_hash(h, np.array([1, 0x20, 300], dtype=np.uint64))
    assert [int(line.split()[1], 16) for line in lines] == expected.tolist()
    assert lines[0].split()[0] == "0001"

    keys_file = tmp_path / "keys.txt"
    keys_file.write_text("5\n# comment\n0x6  # six\n\n")
    golden = tmp_path / "golden.txt"
    assert main(["hash", *HASHER, "--keys-file", str(keys_file), "--golden", str(golden)]) == 0
    keys, hashes = read_golden(golden)
    assert keys.tolist() == [5, 6]
    assert hashes.tolist() == _hashing.tornado_hash(h, keys).tolist()

    assert main(["hash", *HASHER, "12x"]) == EXIT_CONFIG
    assert main(["hash", *HASHER, str(1 << 16)]) == EXIT_CONFIG


def test_hash_schemes(capsys):
    outputs = set()
    for scheme in ("tornado", "simple", "oracle"):
        code, out = _run(capsys, "hash", *HASHER, "--scheme", scheme, "7")
        assert code == EXIT_OK
        outputs.add(out)
    assert len(outputs) == 3


def test_sketch_commands(tmp_path, capsys):
    first, second, merged = (tmp_path / name for name in ("a.sk", "b.sk", "ab.sk"))
    build = ["sketch", "build", *HASHER, "--type", "bottom-k", "--k", "8"]
    assert main([*build, *map(str, range(0, 40)), "--out", str(first)]) == EXIT_OK
    assert main([*build, *map(str, range(20, 60)), "--out", str(second)]) == EXIT_OK
    assert main(["sketch", "merge", str(first), str(second), "--out", str(merged)]) == 0

    h = _hashing.tornado_new(0x11, HashParams(2, 2, 8, 32))
    expected = _sketches.bottomk_build(np.arange(60), h, 8)
    assert loads(merged.read_bytes()) == expected

    capsys.readouterr()
    code, out = _run(capsys, "sketch", "estimate", str(merged))
    assert code == EXIT_OK
    assert float(out) == pytest.approx(_sketches.bottomk_distinct_estimate(expected))

    code, out = _run(capsys, "sketch", "show", str(merged))
    shown = json.loads(out)
    assert shown["type"] == "bottom-k" and shown["k"] == 8
    assert len(shown["entries"]) == 8

    kpm = tmp_path / "kpm.sk"
    assert main(["sketch", "build", *HASHER, "--type", "kpm", "--k", "16",
                 *map(str, range(500)), "--out", str(kpm)]) == EXIT_OK
    code, out = _run(capsys, "sketch", "estimate", str(kpm))
    assert float(out) > 0

    assert main(["sketch", "merge", str(first), str(kpm), "--out", str(merged)]) == EXIT_CONFIG
    (tmp_path / "junk.sk").write_bytes(b"not a sketch at all")
    assert main(["sketch", "show", str(tmp_path / "junk.sk")]) == EXIT_CONFIG
    assert main(["sketch", "show", str(tmp_path / "missing.sk")]) == EXIT_CONFIG


def test_sketch_jaccard(tmp_path, capsys):
    a, b = tmp_path / "a.vk", tmp_path / "b.vk"
    build = ["sketch", "build", *HASHER, "--type", "vector-k", "--k", "4"]
    build += ["--target-error-p", "0.01"]
    assert main([*build, *map(str, range(0, 100)), "--out", str(a)]) == EXIT_OK
    assert main([*build, *map(str, range(0, 100)), "--out", str(b)]) == EXIT_OK
    capsys.readouterr()
    code, out = _run(capsys, "sketch", "estimate", str(a), "--other", str(b))
    assert code == EXIT_OK
    assert float(out) == 1.0
    assert main(["sketch", "estimate", str(a)]) == EXIT_CONFIG


def test_independence_check(tmp_path, capsys):
    rows = tmp_path / "rows.txt"
    rows.write_text("1 2\n1 4  # second\n3 2\n")
    code, out = _run(capsys, "independence", "--check", str(rows))
    assert code == EXIT_OK
    assert out.strip() == "independent: 3 keys"

    rows.write_text("1 2\n1 4\n3 2\n3 4\n")
    code, out = _run(capsys, "independence", "--check", str(rows))
    assert code == EXIT_FAILED
    assert out.strip() == "dependent: zero set of lines 1 2 3 4"

    rows.write_text("\n# nothing\n")
    code, out = _run(capsys, "independence", "--check", str(rows))
    assert code == EXIT_OK and out.strip() == "independent: 0 keys"

    rows.write_text("1 2\n3\n")
    assert main(["independence", "--check", str(rows)]) == EXIT_CONFIG
    rows.write_text("1 -2\n")
    assert main(["independence", "--check", str(rows)]) == EXIT_CONFIG
    assert main(["independence", "--check", str(tmp_path / "missing.txt")]) == EXIT_CONFIG


def test_usage_errors():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
    with pytest.raises(SystemExit):
        main(["bounds", "eval", "--formula", "nope"])
