import json

from digitopo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_info_table(capsys):
    code, out, _ = run(capsys, "info", "--image", "cycle:5")
    assert code == 0
    assert "size" in out and "5" in out


def test_info_json(capsys):
    payload = run_json(capsys, "info", "--image", "cube")
    assert payload["status"] == "ok"
    assert payload["result"]["size"] == 8
    assert payload["result"]["connected"] is True
    assert payload["result"]["dim"] == 3 and payload["result"]["t"] == 1


def test_continuity(capsys):
    payload = run_json(capsys, "continuity", "--image", "cycle:5", "--f", "rot:2")
    assert payload["result"]["continuous"] is True


def test_count_maps(capsys):
    payload = run_json(capsys, "count-maps", "--image", "cycle:5")
    assert payload["result"]["count"] == 265
    assert payload["stats"] == {"exhausted": True, "results_found": 265}


def test_spectrum_commands(capsys):
    fix = run_json(capsys, "spectrum", "fix", "--image", "cycle:5")
    assert fix["result"]["values"] == [0, 1, 2, 3, 5]
    cs = run_json(capsys, "spectrum", "cs", "--image", "cube")
    assert cs["result"]["values"] == list(range(9))
    cfs = run_json(capsys, "spectrum", "cfs", "--image", "cube")
    assert cfs["result"]["values"] == [0, 1, 2, 3, 4, 5, 6, 8]


def test_class_command(capsys):
    payload = run_json(capsys, "class", "--image", "cycle:5", "--f", "id")
    result = payload["result"]
    assert result["size"] == 5 and result["complete"] is True
    assert result["MF"] == 0 and result["XF"] == 5
    assert len(result["members"]) == 5


def test_hcs_star_flag(capsys):
    plain = run_json(capsys, "hcs", "--image", "cycle:5", "--f", "id", "--g", "const:0")
    star = run_json(capsys, "hcs", "--star", "--image", "cycle:5",
                    "--f", "id", "--g", "const:0")
    assert plain["result"]["values"] == [0, 1, 2, 3]
    assert star["result"]["values"] == [1]
    assert star["op"] == "hcs --star"


def test_hfs_and_min(capsys):
    hfs = run_json(capsys, "hfs", "--image", "cycle:5", "--f", "id", "--g", "id")
    assert hfs["result"]["values"] == [0, 5]
    mc = run_json(capsys, "min", "mc", "--image", "cycle:5", "--f", "id", "--g", "const:0")
    assert mc["result"]["value"] == 0
    mc_star = run_json(capsys, "min", "mc-star", "--image", "cycle:5",
                       "--f", "id", "--g", "const:0")
    assert mc_star["result"]["value"] == 1


def test_rigid_and_contractible(capsys):
    assert run_json(capsys, "rigid", "--image", "fig1")["result"]["rigid"] is True
    assert run_json(capsys, "rigid", "--image", "cycle:5")["result"]["rigid"] is False
    assert run_json(capsys, "contractible", "--image", "cube")["result"]["contractible"] is True
    assert run_json(capsys, "contractible", "--image", "cycle:5")["result"]["contractible"] is False


def test_retract_commands(capsys):
    payload = run_json(capsys, "retract", "--image", "cycle:5", "--subset", "0,1,2")
    assert payload["result"]["is_retract"] is True
    payload = run_json(capsys, "def-retract", "--image", "cycle:5", "--subset", "0,1,2")
    assert payload["result"]["is_deformation_retract"] is False
    payload = run_json(capsys, "def-retract", "--image", "interval:0:2", "--subset", "0")
    assert payload["result"]["is_deformation_retract"] is True


def test_iso_command(capsys):
    payload = run_json(capsys, "iso", "--image", "interval:0:3", "--target",
                       '{"kind": "graph", "size": 4, "edges": [[3,2],[2,1],[1,0]]}')
    assert payload["result"]["isomorphic"] is True
    payload = run_json(capsys, "iso", "--image", "fig1", "--target", "fig2")
    assert payload["result"]["isomorphic"] is False


def test_fpp_command(capsys):
    assert run_json(capsys, "fpp", "--image", "point")["result"]["has_fpp"] is True
    assert run_json(capsys, "fpp", "--image", "cube")["result"]["has_fpp"] is False


def test_divergence_command(capsys):
    payload = run_json(capsys, "divergence", "--image", "cube", "--point", "0")
    assert payload["result"]["divergence"] == 1
    f1, f2 = payload["result"]["witness"]
    assert sum(a != b for a, b in zip(f1, f2)) == 1


def test_divergence_family_comparison(capsys):
    payload = run_json(capsys, "divergence", "--image", "fig1",
                       "--point", "6", "--family", "paper")
    result = payload["result"]
    assert result["divergence"] == 3
    assert result["reported_value"] == 3
    assert result["agrees_with_report"] is True
    payload = run_json(capsys, "divergence", "--image", "fig1",
                       "--point", "2", "--family", "paper")
    result = payload["result"]
    assert result["reported_value"] == 14
    assert result["divergence"] <= 14
    assert result["agrees_with_report"] == (result["divergence"] == 14)


def test_suite_command(capsys):
    payload = run_json(capsys, "suite", "--image", "cycle:4")
    assert payload["result"]["ok"] is True


def test_error_exit_codes(capsys):
    code, _, err = run(capsys, "info", "--image", "no-such-image")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "continuity", "--image", "cycle:5", "--f", "wat")
    assert code == 2
    code, _, err = run(capsys, "--budget-nodes", "50", "count-maps", "--image", "cube")
    assert code == 3
    code, _, err = run(capsys, "info", "--image",
                       '{"kind": "graph", "size": 2, "edges": [[0,0]]}')
    assert code == 2


def test_json_deterministic_across_parallelism(capsys):
    outputs = []
    for workers in ("1", "2", "4"):
        code, out, _ = run(capsys, "--format", "json", "--parallelism", workers,
                           "spectrum", "fix", "--image", "cycle:5")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_rot_rejected_off_cycles(capsys):
    code, _, err = run(capsys, "continuity", "--image", "cube", "--f", "rot:1")
    assert code == 2 and "cycle" in err
