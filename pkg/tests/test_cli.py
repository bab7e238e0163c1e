import io
from contextlib import redirect_stdout

from hypharm import builders, groups, save_table
from hypharm.cli import run


def _run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


def test_verify_conj_s3_passes():
    code, out = _run(["verify", "--family", "conj", "--group", "s3"])
    assert code == 0
    assert "hypergroup axioms: pass" in out


def test_verify_bad_table_exits_one(tmp_path):
    p = tmp_path / "bad.hyp"
    p.write_text(
        "hypergroup v1\nname bad\nsize 2\nidentity 0\ninvolution 0 1\n"
        "commutative 1\ntruncated 0\nhaar 1 1\ntriples\n"
        "0 0 0 1\n0 1 1 1\n1 1 0 9/10\n1 1 1 1/10\nend\n"
    )
    code, out = _run(["verify", "--file", str(p)])
    assert code == 1


def test_usage_error_exit_two(capsys):
    code = run(["verify"])  # no table spec
    assert code == 2 or code is None


def test_missing_file_exit_two():
    code, _ = _run(["verify", "--file", "/nonexistent/table.hyp"])
    assert code == 2


def test_characters_structured_output():
    code, out = _run(
        ["characters", "--family", "conj", "--group", "s3", "--format", "structured"]
    )
    assert code == 0
    assert out.startswith("hypharm-report v1\n")
    assert out.rstrip().endswith("end")
    assert "char.0.values" in out


def test_norms_subcommand_passes():
    code, out = _run(
        ["norms", "--family", "irr", "--group", "s3", "--random", "3", "--mcb"]
    )
    assert code == 0
    assert "|u|_Mcb~" in out


def test_p2_tree_reports_fails_with_exit_zero():
    code, out = _run(
        ["p2", "--family", "tree_radial", "--q", "2", "--radius", "40"]
    )
    assert code == 0
    assert "fails" in out
    assert "0.9428" in out


def test_p2_jobs_flag_deterministic():
    argv = ["p2", "--family", "tree_radial", "--q", "2", "--radius", "30",
            "--format", "structured"]
    _, seq = _run(argv)
    _, par = _run(argv + ["--jobs", "3"])
    assert seq == par


def test_amenability_q8_exit_zero():
    code, out = _run(["amenability", "--family", "irr", "--group", "q8"])
    assert code == 0
    assert "|1_Delta|" in out


def test_amenability_radius_too_small_exit_two(capsys):
    code, _ = _run(
        ["amenability", "--family", "tree_radial", "--q", "2", "--radius", "40"]
    )
    assert code == 2


def test_norms_structured_includes_witness():
    code, out = _run(
        ["norms", "--family", "conj", "--group", "s3", "--random", "1",
         "--format", "structured"]
    )
    assert code == 0
    assert "u0.witness.xi" in out and "u0.witness.product_error" in out


def test_deform_tree():
    code, out = _run(
        ["deform", "--family", "tree_radial", "--q", "2", "--radius", "40"]
    )
    assert code == 0
    assert "holds" in out


def test_product_subcommand():
    code, out = _run(
        ["product", "--family", "conj", "--group", "s3",
         "--family2", "conj", "--group2", "s3"]
    )
    assert code == 0
    assert "pass" in out


def test_quantum_subcommand():
    code, out = _run(
        ["quantum", "--q", "1/2", "--radius", "12", "--format", "structured"]
    )
    assert code == 0
    assert "kac false" in out
    assert "d22.row 0.16 0.84" in out


def test_structured_reports_byte_identical():
    for argv in (
        ["p2", "--family", "tree_radial", "--q", "2", "--radius", "40",
         "--format", "structured"],
        ["characters", "--family", "irr", "--group", "d4", "--format", "structured"],
        ["norms", "--family", "conj", "--group", "s3", "--random", "5",
         "--format", "structured", "--seed", "123"],
        ["amenability", "--family", "conj", "--group", "a4",
         "--format", "structured"],
    ):
        _, first = _run(argv)
        _, second = _run(argv)
        assert first.encode() == second.encode()


def test_seed_changes_norm_report():
    argv = ["norms", "--family", "conj", "--group", "s3", "--random", "2",
            "--format", "structured"]
    _, a = _run(argv + ["--seed", "1"])
    _, b = _run(argv + ["--seed", "2"])
    assert a != b


def test_out_file(tmp_path):
    target = tmp_path / "report.txt"
    code, out = _run(
        ["verify", "--family", "cyclic", "--n", "4", "--format", "structured",
         "--out", str(target)]
    )
    assert code == 0
    assert target.read_text() == out


def test_group_file_input(tmp_path):
    G = groups.symmetric(3)
    p = tmp_path / "s3.cayley"
    groups.save_group(G, str(p))
    code, out = _run(["verify", "--file", str(p)])
    assert code == 0


def test_table_file_input(tmp_path):
    H = builders.conjugacy_hypergroup(groups.alternating(4))
    p = tmp_path / "a4.hyp"
    save_table(H, str(p))
    code, out = _run(["characters", "--file", str(p)])
    assert code == 0
