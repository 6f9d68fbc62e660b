import json

from wreathlab import group_to_json, load_group, regular_wreath, construct_named
from wreathlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- build -----------------------------------------------------------------------------


def test_build_d4(capsys):
    code, out, _ = run(capsys, "build", "--k", "C:2", "--h", "C:2", "--omega", "regular")
    assert code == 0
    assert out.strip() == "order 8, identified D:4"


def test_build_trivial_base(capsys):
    code, out, _ = run(capsys, "build", "--k", "C:1", "--h", "S:3", "--omega", "regular")
    assert code == 0
    assert out.strip() == "order 6, identified S:3"


def test_build_degree9_wreath(capsys):
    code, out, _ = run(capsys, "build", "--k", "S:3", "--h", "S:3", "--omega", "natural:3")
    assert code == 0
    assert out.strip() == "order 1296"


def test_build_writes_group_json(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, _, _ = run(capsys, "build", "--k", "C:2", "--h", "C:2",
                     "--omega", "regular", "--out", str(path))
    assert code == 0
    g = load_group(path)
    assert g.order == 8
    assert list(json.loads(path.read_text())) == ["order", "identity", "labels", "table"]


def test_build_from_action_file(capsys, tmp_path):
    from wreathlab import natural_action, save_action

    path = tmp_path / "omega.json"
    save_action(natural_action(3, construct_named("S:3")), path)
    code, out, _ = run(capsys, "build", "--k", "C:2", "--omega", f"file:{path}")
    assert code == 0
    # the 3-point hyperoctahedral group is C2 x S4
    assert out.strip() == "order 48, identified C:2 × S:4"


def test_build_json_schema_is_stable(capsys):
    for args in (("C:2", "C:2"), ("C:1", "S:3")):
        code, out, _ = run(capsys, "build", "--k", args[0], "--h", args[1],
                           "--omega", "regular", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert list(payload) == ["order", "identified", "base_order", "omega_size", "top_order"]


def test_build_size_cap_exit_code(capsys):
    code, _, err = run(capsys, "build", "--k", "C:10", "--h", "D:4",
                       "--omega", "regular")
    assert code == 3
    assert "resource limit" in err


def test_build_env_size_cap(capsys, monkeypatch):
    monkeypatch.setenv("WREATHLAB_SIZE_CAP", "4")
    code, _, err = run(capsys, "build", "--k", "C:2", "--h", "C:2", "--omega", "regular")
    assert code == 3
    monkeypatch.setenv("WREATHLAB_SIZE_CAP", "1000")
    code, out, _ = run(capsys, "build", "--k", "C:2", "--h", "C:2", "--omega", "regular")
    assert code == 0


# -- embed -----------------------------------------------------------------------------


def test_embed_tower_reproduces_the_biquadratic_table(capsys):
    code, out, _ = run(capsys, "embed", "--mode", "tower", "--field", "5,7",
                       "--K", "5", "--alpha", "7", "--section", "eta:rho1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[:4] == [
        "id -> (id,id; id)",
        "rho1 -> (id,id; eta)",
        "rho2 -> (rho2,rho2; id)",
        "rho3 -> (rho2,rho2; eta)",
    ]
    assert "image order 4 of 8" in lines[4]
    assert "full: False" in lines[4]
    assert lines[5] == "section_cross_check: agree"


def test_embed_kk_sign_extension(capsys):
    code, out, _ = run(capsys, "embed", "--mode", "kk", "--group", "S:3",
                       "--normal", "A:3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert list(payload) == ["phi", "report"]
    assert payload["report"]["is_injective"]
    assert payload["report"]["image_order"] == 6
    assert payload["report"]["wreath_order"] == 18


def test_embed_omega_stabilizer(capsys):
    code, out, _ = run(capsys, "embed", "--mode", "omega", "--group", "S:4",
                       "--subgroup", "stab:4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["wreath_order"] == 31104
    assert payload["report"]["is_injective"]


def test_embed_unknown_group_is_usage_error(capsys):
    code, _, err = run(capsys, "embed", "--mode", "kk", "--group", "Z:9",
                       "--normal", "A:3")
    assert code == 2
    assert "error" in err


def test_embed_bad_tower_is_usage_error(capsys):
    code, _, _ = run(capsys, "embed", "--mode", "tower", "--field", "4,7",
                     "--K", "4", "--alpha", "7")
    assert code == 2


# -- sizes ------------------------------------------------------------------------------


def test_sizes_figure_rows_match_plotted_values(capsys):
    code, out, _ = run(capsys, "sizes", "--kf", "3", "--group", "S3", "--m-max", "60")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "m,log_regular,log_omega,marker"
    assert len(lines) == 11
    assert lines[2] == "12,5.950642552587727,5.950642552587727,2kc"


def test_sizes_table1_kf2(capsys):
    code, out, _ = run(capsys, "sizes", "--emit", "table1", "--kf", "2")
    assert code == 0
    assert out.strip() == "C2: kc=2, regular=m^2/2, omega=m^2/2"


def test_sizes_s5_first_row(capsys):
    code, out, _ = run(capsys, "sizes", "--kf", "5", "--group", "S5", "--m-max", "120")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("120,4.787491742782046,")


def test_sizes_json_schema(capsys):
    code, out, _ = run(capsys, "sizes", "--kf", "3", "--group", "S3",
                       "--m-max", "12", "--format", "json")
    payload = json.loads(out)
    assert list(payload) == ["kf", "group", "rows"]
    assert list(payload["rows"][0]) == ["m", "log_regular", "log_omega", "marker"]


def test_sizes_requires_group_without_table_emit(capsys):
    code, _, _ = run(capsys, "sizes", "--kf", "3")
    assert code == 2


# -- verify ------------------------------------------------------------------------------


def test_verify_cocycle_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cocycle")
    assert code == 0
    assert "all passed" in out


def test_verify_json_output_sorted(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cocycle", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"]
    names = [v["property"] for v in payload["verdicts"]]
    assert names == sorted(names)


def test_verify_corrupted_group_json(capsys, tmp_path):
    w = regular_wreath(construct_named("C:2"), construct_named("C:2"))
    data = group_to_json(w.product)
    data["table"][2][3] = (data["table"][2][3] + 1) % 8
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--group-json", str(path))
    assert code == 1
    assert "FAIL" in out


def test_verify_valid_group_json(capsys, tmp_path):
    from wreathlab import save_group

    path = tmp_path / "good.json"
    save_group(construct_named("D:4"), path)
    code, out, _ = run(capsys, "verify", "--group-json", str(path))
    assert code == 0


def test_verify_sampled_depth(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theta",
                       "--depth", "sampled:50", "--seed", "1")
    assert code == 0
    assert "sampled:50" in out


def test_action_file_with_group_reference(capsys, tmp_path):
    from wreathlab import action_to_json, natural_action, save_group

    s3 = construct_named("S:3")
    gpath = tmp_path / "s3.json"
    save_group(s3, gpath)
    data = action_to_json(natural_action(3, s3))
    data["group"] = str(gpath)
    apath = tmp_path / "act.json"
    apath.write_text(json.dumps(data))
    code, out, _ = run(capsys, "build", "--k", "C:2", "--omega", f"file:{apath}")
    assert code == 0
    assert out.startswith("order 48")


def test_usage_error_exit_code(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
