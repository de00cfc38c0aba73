import json
import math

import pytest
from confined_hydrogen import cli, golden
from confined_hydrogen.config import PRECISION_ENV, RunConfig, default_precision_bits
from confined_hydrogen.exact import Q, SymmetricExactMatrix
from confined_hydrogen.rrm import BasisSpec, assemble
from confined_hydrogen.verify import Settings, check_overlap_positive_definite, run_checks


def close9(cell, printed):
    """Exact comparison at one unit in the ninth significant digit."""
    return abs(Q(cell) - Q(printed)) <= Q(golden.ninth_digit_unit(printed))


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_run_config_validation():
    RunConfig()
    for bad in (dict(digits=0), dict(basis_size=4), dict(precision_bits=63), dict(format="xml")):
        with pytest.raises(ValueError):
            RunConfig(**bad)


def test_table1_values(capsys):
    code, out, _ = run(["table1", "--nu", "10", "25"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "nu,n0,n1,n2,n3"
    row10 = lines[1].split(",")
    row25 = lines[2].split(",")
    assert row10[0] == "10" and close9(row10[2], "6.196784392")
    assert row25[0] == "25" and close9(row25[3], "12.97594386")


def test_table2_values(capsys):
    code, out, _ = run(["table2", "--basis-size", "30"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,l,E"
    assert len(lines) == 28
    cells = {tuple(map(int, r.split(",")[:2])): r.split(",")[2] for r in lines[1:]}
    assert cells[(2, 0)] == "44.41321980"
    assert close9(cells[(0, 6)], "55.25985415")
    assert float(cells[(0, 0)]) == pytest.approx(math.pi**2 / 2, abs=1e-9)
    # ordered by shell n + l
    shells = [sum(k) for k in cells]
    assert shells == sorted(shells)


def test_table3_json(capsys):
    code, out, _ = run(["table3", "--format", "json", "--l", "1"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["beta"] == [6, 6]
    assert data["l"] == [1, 3]
    assert data["n0"][0] == -2
    assert data["n1"][0] == data["n0"][1]
    assert '"n0": [-2.000000000,' in out


def test_table4_row(capsys):
    code, out, _ = run(["table4", "--l", "1", "--n-max", "2"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "l,n0,n1,n2"
    row = out.splitlines()[1].split(",")
    assert row[0] == "1"
    assert close9(row[3], "21.17443122")


def test_fig1_small(capsys, tmp_path):
    out_file = tmp_path / "fig1.csv"
    args = ["fig1", "--l", "0", "--beta-max", "2", "--step", "1/2", "--n-max", "1", "--basis-size", "20", "--nu", "1"]
    code, out, _ = run(args + ["--out", str(out_file)], capsys)
    assert code == 0 and out == ""
    lines = out_file.read_text().splitlines()
    assert lines[0] == "beta,E0_0,E1_0,marker_l0"
    assert "2.000000000,-0.5000000000,13.31003663,-0.5000000000" in lines
    assert lines[1].startswith("0.000000000,4.934802201,")


def test_fig2_small(capsys):
    code, out, _ = run(["fig2", "--n-max", "0", "--nu", "5", "6"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "l,n,nu,beta_nu,beta_c,gap,log_gap"
    gaps = [float(r.split(",")[5]) for r in lines[1:]]
    assert gaps[0] > gaps[1] > 0
    assert float(lines[1].split(",")[6]) == pytest.approx(math.log(gaps[0]), rel=1e-9)


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert cli.main(["table1", "--nu", "4", "6", "--digits", "12", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    for line in a.read_text().splitlines()[1:]:
        for cell in line.split(",")[1:]:
            assert len(cell.replace("-", "").replace(".", "").lstrip("0")) == 12


@pytest.mark.parametrize(
    "args",
    [
        ["table1", "--digits", "0"],
        ["table1", "--basis-size", "3"],
        ["table1", "--precision-bits", "32"],
        ["table1", "--nu", "1", "--n-max", "3"],
        ["fig1", "--step", "0"],
        ["fig1", "--step", "abc"],
        ["table5"],
        ["table3", "--l", "-1"],
    ],
)
def test_invalid_arguments_exit_2(args, capsys):
    code, _, _ = run(args, capsys)
    assert code == cli.EXIT_ARGS


def test_precision_environment_override(monkeypatch, capsys):
    monkeypatch.setenv(PRECISION_ENV, "160")
    assert default_precision_bits() == 160
    seen = {}
    real = cli.build

    def spy(args, cfg):
        seen["bits"] = cfg.precision_bits
        return real(args, cfg)

    monkeypatch.setattr(cli, "build", spy)
    assert cli.main(["table1", "--nu", "2", "--n-max", "1"]) == 0
    assert seen["bits"] == 160
    assert cli.main(["table1", "--nu", "2", "--n-max", "1", "--precision-bits", "200"]) == 0
    assert seen["bits"] == 200
    monkeypatch.setenv(PRECISION_ENV, "many")
    assert cli.main(["table1", "--nu", "2"]) == cli.EXIT_ARGS
    capsys.readouterr()


def test_resource_failure_exit_3(monkeypatch, capsys):
    from confined_hydrogen.errors import ResourceError

    def boom(*args, **kwargs):
        raise ResourceError("did not stabilize")

    monkeypatch.setattr(cli, "critical_betas", boom)
    code, _, err = run(["table4", "--l", "0"], capsys)
    assert code == cli.EXIT_RESOURCE
    assert "did not stabilize" in err


def test_verify_quick_checks(capsys):
    code, out, _ = run(["verify", "--only", "kernel", "--only", "overlap", "--only", "recurrence"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert [l.split()[0] for l in lines[:3]] == ["PASS"] * 3
    assert all("residual=" in l for l in lines[:3])
    assert lines[-1] == "3/3 checks passed"


def test_verify_unknown_check(capsys):
    code, _, _ = run(["verify", "--only", "nonsense"], capsys)
    assert code == cli.EXIT_ARGS


def test_tampered_overlap_fails_positive_definiteness():
    S = assemble(BasisSpec(0, 1, 10)).S
    rows = S.rows()
    rows[0][0] = -rows[0][0]
    tampered = SymmetricExactMatrix.from_rows(rows)
    assert check_overlap_positive_definite(Settings(), [S]).passed
    result = check_overlap_positive_definite(Settings(), [tampered])
    assert not result.passed
    assert "inertia=(1," in result.detail


def test_tiny_basis_fails_golden_tables_but_stays_variational():
    results = {r.name: r for r in run_checks(Settings(basis_size=3), ["table2", "table3", "overlap"])}
    assert not results["golden_table2"].passed
    assert not results["golden_table3"].passed
    assert results["golden_table2"].residual > 1
    assert "not computed" in results["golden_table2"].detail
    assert results["overlap_positive_definite"].passed
    # the N = 3 Ritz values still bound the exact levels from above
    from confined_hydrogen.model import DimensionlessProblem
    from confined_hydrogen.oracles import particle_in_box_energy
    from confined_hydrogen.rrm import ritz_values

    for l in (0, 1):
        w = ritz_values(DimensionlessProblem(l, 0), 3, 3).values
        assert all(x.value > particle_in_box_energy(n, l).value for n, x in enumerate(w))


def test_table_json_null_for_empty_cells():
    t = cli.Table(["beta", "marker"], [["0.5000", ""], ["1.000", "-0.5000"]])
    assert json.loads(t.to_json()) == {"beta": [0.5, 1.0], "marker": [None, -0.5]}
    assert t.to_csv() == "beta,marker\n0.5000,\n1.000,-0.5000\n"


def test_table2_cells_order():
    assert cli.table2_cells(6, 2, 5) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert len(cli.table2_cells(6, 6, 5)) == 27
