import json
import subprocess
import sys
from pathlib import Path

import pytest

from discrete_tverberg.discrete_sets import LatticeBasis, difference_set, lattice_set
from discrete_tverberg.harness import (
    ExperimentConfig,
    SplitMix64,
    generate_instance,
    run_experiment,
    trial_rng,
)

Z1 = lattice_set(1)
Z2 = lattice_set(2)
ODD = difference_set(1, (LatticeBasis(((2,),), dim=1),))


def test_splitmix64_reference_sequence():
    # published test vectors for seed 0
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F


def test_below_is_bounded_and_deterministic():
    rng = SplitMix64(7)
    draws = [rng.below(10) for _ in range(200)]
    assert all(0 <= d < 10 for d in draws)
    rng2 = SplitMix64(7)
    assert draws == [rng2.below(10) for _ in range(200)]


def test_trial_streams_differ():
    a = trial_rng(5, 0).next_u64()
    b = trial_rng(5, 1).next_u64()
    assert a != b


def test_generate_instance_deterministic():
    cfg = ExperimentConfig(spec=Z2, m=2, k=1, n_points=9, box_bound=8,
                           trials=1, seed=13)
    one = generate_instance(cfg, 0)
    two = generate_instance(cfg, 0)
    assert one.points == two.points
    other = generate_instance(cfg, 1)
    assert other.points != one.points


def test_generate_instance_forced_and_overfull():
    cfg = ExperimentConfig(spec=ODD, m=2, k=1, n_points=4, box_bound=3,
                           trials=1, seed=1)
    inst = generate_instance(cfg, 0)
    assert sorted(inst.points) == [(-3,), (-1,), (1,), (3,)]
    bad = ExperimentConfig(spec=ODD, m=2, k=1, n_points=5, box_bound=3,
                           trials=1, seed=1)
    with pytest.raises(ValueError):
        generate_instance(bad, 0)


def test_run_experiment_csv_determinism():
    cfg = ExperimentConfig(spec=Z2, m=2, k=1, n_points=9, box_bound=8,
                           trials=6, seed=99, oracle_validate=True)
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    assert a.csv_text == b.csv_text
    assert a.summary == b.summary
    assert a.summary["theorem_violations"] == 0
    assert a.summary["oracle"]["disagreements"] == 0
    rows = a.csv_text.strip().split("\n")
    assert rows[0].startswith("trial_index,instance_digest,status")
    assert len(rows) == 7


def test_run_experiment_parallel_matches_sequential():
    cfg = ExperimentConfig(spec=Z2, m=2, k=1, n_points=9, box_bound=8,
                           trials=4, seed=31)
    seq = run_experiment(cfg)
    par_cfg = ExperimentConfig(spec=Z2, m=2, k=1, n_points=9, box_bound=8,
                               trials=4, seed=31, threads=2)
    par = run_experiment(par_cfg)
    assert seq.csv_text == par.csv_text


def test_run_experiment_forced_failure_box():
    # the only 4-point instance in [0,1]^2 is the unit square: no partition
    cfg = ExperimentConfig(spec=Z2, m=2, k=1, n_points=4, box_bound=1,
                           trials=2, seed=8, box=((0, 1), (0, 1)))
    rep = run_experiment(cfg)
    assert rep.summary["successes"] == 0
    assert rep.summary["no_partition_found"] == 2
    assert rep.summary["success_rate"] == "0/1"


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(spec=Z2, m=2, k=1, n_points=1, box_bound=5,
                         trials=1, seed=0)
    with pytest.raises(ValueError):
        ExperimentConfig(spec=Z2, m=2, k=1, n_points=4, box_bound=0,
                         trials=1, seed=0)


# ---------------------------------------------------------------------------
# command line


def run_cli(args, stdin_text=None):
    proc = subprocess.run(
        [sys.executable, "-m", "discrete_tverberg.cli"] + args,
        capture_output=True, text=True, input=stdin_text, timeout=120,
    )
    return proc


def write_json(tmp_path: Path, name: str, obj) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


INSTANCE_1D = {"set": {"variant": "lattice", "dim": 1}, "m": 2, "k": 1,
               "points": [[0], [1], [2]]}


def test_cli_tverberg_roundtrip(tmp_path):
    path = write_json(tmp_path, "inst.json", INSTANCE_1D)
    proc = run_cli(["tverberg", path])
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["status"] == "ok"
    assert out["witnesses"] == [["1/1"]]


def test_cli_reads_stdin(tmp_path):
    proc = run_cli(["tverberg", "-"], stdin_text=json.dumps(INSTANCE_1D))
    assert proc.returncode == 0


def test_cli_no_partition_is_still_verdict(tmp_path):
    inst = {"set": {"variant": "lattice", "dim": 2}, "m": 2, "k": 1,
            "points": [[0, 0], [1, 0], [0, 1], [1, 1]]}
    path = write_json(tmp_path, "square.json", inst)
    proc = run_cli(["tverberg", path])
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "no_partition_found"


def test_cli_usage_errors(tmp_path):
    assert run_cli(["tverberg"]).returncode == 1
    assert run_cli(["no-such-command"]).returncode == 1
    bad = write_json(tmp_path, "bad.json", {"set": {"variant": "lattice", "dim": 1}})
    assert run_cli(["tverberg", bad]).returncode == 1


def test_cli_cap_exit_code(tmp_path):
    inst = {"set": {"variant": "lattice", "dim": 1}, "m": 2, "k": 1,
            "points": [[i] for i in range(26)]}
    path = write_json(tmp_path, "big.json", inst)
    proc = run_cli(["oracle", "tverberg", path])
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["error_type"] == "CapExceededError"


def test_cli_radon_rejects_wrong_m(tmp_path):
    inst = dict(INSTANCE_1D, m=3)
    path = write_json(tmp_path, "m3.json", inst)
    proc = run_cli(["radon", path])
    assert proc.returncode == 1


def test_cli_depth_and_oracle_agree(tmp_path):
    pts = write_json(tmp_path, "pts.json",
                     {"points": [[1, 0], [-1, 0], [0, 1], [0, -1]]})
    eng = run_cli(["depth", "[0, 0]", pts])
    orc = run_cli(["oracle", "depth", "[0, 0]", pts])
    assert eng.returncode == 0 and orc.returncode == 0
    assert json.loads(eng.stdout)["depth"] == json.loads(orc.stdout)["depth"] == 2


def test_cli_bounds(tmp_path):
    spec = write_json(tmp_path, "z2.json", {"variant": "lattice", "dim": 2})
    proc = run_cli(["bounds", spec, "--m", "3", "--k", "1", "--mode", "paper"])
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["tverberg_upper_bound"] == 25
    assert out["helly_upper_bound"] == 6


def test_cli_experiment_writes_csv(tmp_path):
    cfg = {"set": {"variant": "lattice", "dim": 2}, "m": 2, "k": 1,
           "n_points": 9, "box_bound": 8, "trials": 3, "seed": 4}
    path = write_json(tmp_path, "cfg.json", cfg)
    csv_path = tmp_path / "rows.csv"
    proc = run_cli(["experiment", path, "--csv", str(csv_path)])
    assert proc.returncode == 0
    summary = json.loads(proc.stdout)
    assert summary["trials"] == 3
    rows = csv_path.read_text().strip().split("\n")
    assert len(rows) == 4


def test_cli_verify_failure_exit(tmp_path):
    inst_path = write_json(tmp_path, "inst.json", INSTANCE_1D)
    bogus = {"status": "ok", "parts": [[0, 1], [2]], "witnesses": [["1/1"]]}
    res_path = write_json(tmp_path, "res.json", bogus)
    proc = run_cli(["oracle", "verify", inst_path, res_path])
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["ok"] is False


def test_cli_hollow_search(tmp_path):
    spec = write_json(tmp_path, "z2.json", {"variant": "lattice", "dim": 2})
    proc = run_cli(["hollow-search", spec, "--box", "[[0,1],[0,1]]", "--k", "1"])
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["size"] == 4
