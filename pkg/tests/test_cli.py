"""Command-line interface: subcommands, exit codes, file pipelines."""

import json

import numpy as np
import pytest

from deviatoric import isotropic_stiffness, save_tensor, save_voigt, tensor_to_voigt
from deviatoric.cli import main
from deviatoric.serialization import load_decomposition, load_tensor, save_decomposition


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_counts_table_row(capsys):
    code, out, _ = run(capsys, "counts", "--order", "6")
    assert code == 0
    assert out.strip() == "15 36 40 29 15 5 1"


def test_counts_json(capsys):
    code, out, _ = run(capsys, "counts", "--order", "4", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"order": 4, "counts": [3, 6, 6, 3, 1]}


def test_random_is_seed_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "random", "--order", "3", "--seed", "7", "--output", str(a))[0] == 0
    assert run(capsys, "random", "--order", "3", "--seed", "7", "--output", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(capsys, "random", "--order", "3", "--seed", "8", "--output", str(b))[0] == 0
    assert a.read_bytes() != b.read_bytes()


def test_decompose_reconstruct_verify_pipeline(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    d_path = tmp_path / "d.json"
    back_path = tmp_path / "back.json"
    assert run(capsys, "random", "--order", "4", "--seed", "1", "--output", str(t_path))[0] == 0

    code, out, _ = run(
        capsys, "decompose", "--input", str(t_path), "--output", str(d_path), "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["reconstruction_relative"] <= 1e-10

    code, _, _ = run(capsys, "reconstruct", "--input", str(d_path), "--output", str(back_path))
    assert code == 0
    t = load_tensor(t_path)
    back = load_tensor(back_path)
    assert np.linalg.norm((back - t).ravel()) <= 1e-10 * np.linalg.norm(t.ravel())

    code, out, _ = run(
        capsys,
        "verify",
        "--input",
        str(d_path),
        "--against",
        str(t_path),
        "--format",
        "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["passes"] is True
    assert report["counts_ok"] is True


def test_decompose_to_stdout(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    run(capsys, "random", "--order", "2", "--seed", "3", "--output", str(t_path))
    code, out, _ = run(capsys, "decompose", "--input", str(t_path))
    assert code == 0
    assert json.loads(out)["order"] == 2


def test_verify_catches_corruption(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    d_path = tmp_path / "d.json"
    run(capsys, "random", "--order", "3", "--seed", "2", "--output", str(t_path))
    run(capsys, "decompose", "--input", str(t_path), "--output", str(d_path))

    d = load_decomposition(d_path)
    bumped = d.parts[1].embedded.copy()
    bumped[0, 0, 0] += 1e-4
    parts = list(d.parts)
    parts[1] = type(parts[1])(
        s=parts[1].s, J=parts[1].J, deviator=parts[1].deviator, embedded=bumped
    )
    save_decomposition(d_path, type(d)(order=d.order, parts=tuple(parts)))

    code, out, _ = run(capsys, "verify", "--input", str(d_path), "--format", "json")
    assert code == 1
    assert json.loads(out)["passes"] is False
    code, _, _ = run(capsys, "verify", "--input", str(d_path), "--against", str(t_path))
    assert code == 1


def test_verify_order_mismatch_is_input_error(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    d_path = tmp_path / "d.json"
    run(capsys, "random", "--order", "2", "--seed", "4", "--output", str(t_path))
    run(capsys, "decompose", "--input", str(t_path), "--output", str(d_path))
    other = tmp_path / "other.json"
    run(capsys, "random", "--order", "3", "--seed", "4", "--output", str(other))
    code, _, err = run(capsys, "verify", "--input", str(d_path), "--against", str(other))
    assert code == 2
    assert "order mismatch" in err


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"order": 2, "components": [1, 2, 3]}')
    code, _, err = run(capsys, "decompose", "--input", str(bad))
    assert code == 2
    assert "expected 3^2 = 9" in err

    code, _, err = run(capsys, "decompose", "--input", str(tmp_path / "missing.json"))
    assert code == 2
    assert "missing.json" in err

    junk = tmp_path / "junk.json"
    junk.write_text("not json")
    code, _, err = run(capsys, "decompose", "--input", str(junk))
    assert code == 2
    assert "line 1 column 1" in err


def test_stiffness_command_all_input_forms(tmp_path, capsys):
    c = isotropic_stiffness(2.0, 1.0)
    m = tensor_to_voigt(c)
    voigt_json = tmp_path / "m.json"
    voigt_text = tmp_path / "m.txt"
    tensor_json = tmp_path / "c.json"
    save_voigt(voigt_json, m, fmt="json")
    save_voigt(voigt_text, m, fmt="text")
    save_tensor(tensor_json, c)

    for path in (voigt_json, voigt_text, tensor_json):
        out_path = tmp_path / "parts.json"
        code, out, _ = run(
            capsys,
            "stiffness",
            "--input",
            str(path),
            "--output",
            str(out_path),
            "--format",
            "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["lam"] == pytest.approx(2.0)
        assert report["mu"] == pytest.approx(1.0)
        assert report["norm_d4"] == pytest.approx(0.0, abs=1e-12)
        parts = json.loads(out_path.read_text())
        assert parts["lam"] == pytest.approx(2.0)
        assert parts["d1"]["order"] == 2
        assert parts["d4"]["order"] == 4


def test_stiffness_rejects_wrong_order_tensor(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    run(capsys, "random", "--order", "3", "--seed", "5", "--output", str(t_path))
    code, _, err = run(capsys, "stiffness", "--input", str(t_path))
    assert code == 2
    assert "order 4" in err


def test_coupling_command_variants(tmp_path, capsys):
    rng = np.random.default_rng(45)
    h = rng.standard_normal((3, 3, 3))
    h = 0.5 * (h + h.swapaxes(0, 1))
    h_path = tmp_path / "h.json"
    save_tensor(h_path, h)

    out_path = tmp_path / "parts.json"
    code, out, _ = run(
        capsys,
        "coupling",
        "--input",
        str(h_path),
        "--output",
        str(out_path),
        "--format",
        "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["coefficients"] == "fitted"
    assert report["reconstruction_residual"] <= 1e-10
    parts = json.loads(out_path.read_text())
    assert parts["alpha"] == 0.0
    assert parts["d3"]["order"] == 3

    code, out, _ = run(
        capsys,
        "coupling",
        "--input",
        str(h_path),
        "--coefficients",
        "printed",
        "--output",
        str(out_path),
        "--format",
        "json",
    )
    assert code == 0
    assert json.loads(out)["coefficients"] == "printed"


def test_coupling_rejects_wrong_order(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    run(capsys, "random", "--order", "4", "--seed", "6", "--output", str(t_path))
    code, _, err = run(capsys, "coupling", "--input", str(t_path))
    assert code == 2
    assert "order 3" in err


def test_coupling_rejects_asymmetric_tensor(tmp_path, capsys):
    h = np.zeros((3, 3, 3))
    h[0, 1, 0] = 1.0
    h_path = tmp_path / "h.json"
    save_tensor(h_path, h)
    code, _, err = run(capsys, "coupling", "--input", str(h_path))
    assert code == 2
    assert "symmetry" in err


def test_tolerance_flag(tmp_path, capsys):
    t_path = tmp_path / "t.json"
    d_path = tmp_path / "d.json"
    run(capsys, "random", "--order", "2", "--seed", "9", "--output", str(t_path))
    run(capsys, "decompose", "--input", str(t_path), "--output", str(d_path))
    code, out, _ = run(
        capsys, "verify", "--input", str(d_path), "--tolerance", "1e-6", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["tolerance"] == 1e-6
    # argparse rejects a nonpositive tolerance before any compute
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--input", str(d_path), "--tolerance", "0"])
    assert exc.value.code == 2
    capsys.readouterr()
