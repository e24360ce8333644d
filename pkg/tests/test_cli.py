import json

import pytest

from weylsplit.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_char_table_g2_w1(capsys):
    rc, out, _ = run(capsys, "char", "--diagram", "G2", "--weight", "1,0",
                     "--table")
    assert rc == 0
    lines = [l for l in out.splitlines() if l]
    assert len(lines) == 7
    assert all(l.endswith(" 1") for l in lines)


def test_char_json_sorted(capsys):
    rc, out, _ = run(capsys, "char", "--diagram", "G2", "--weight", "0,1",
                     "--json")
    data = json.loads(out)
    weights = [tuple(t["weight"]) for t in data["terms"]]
    assert weights == sorted(weights)
    assert sum(t["mult"] for t in data["terms"]) == 14


def test_char_methods_agree(capsys):
    rc1, out1, _ = run(capsys, "char", "--diagram", "B3", "--weight", "1,0,0",
                       "--method", "freudenthal", "--json")
    rc2, out2, _ = run(capsys, "char", "--diagram", "B3", "--weight", "1,0,0",
                       "--method", "kostant", "--json")
    assert rc1 == rc2 == 0 and out1 == out2


def test_numbers_game_all(capsys):
    rc, out, _ = run(capsys, "numbers-game", "--diagram", "C2",
                     "--position", "1,1", "--strategy", "all")
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert all("terminal -1,-1" in l for l in lines)


def test_numbers_game_json_schema(capsys):
    rc, out, _ = run(capsys, "numbers-game", "--diagram", "G2",
                     "--position", "1,1", "--strategy", "1,2,1,2,1,2", "--json")
    rec = json.loads(out)[0]
    assert rec["initial"] == [1, 1]
    assert rec["fired"] == [1, 2, 1, 2, 1, 2]
    assert len(rec["trace"]) == 7
    assert rec["terminal"] == [-1, -1]


def test_usage_error_exit_2(capsys):
    rc, _, err = run(capsys, "char", "--diagram", "X9", "--weight", "1,0")
    assert rc == 2
    rc, _, err = run(capsys, "char", "--diagram", "G2", "--weight", "1,0,0")
    assert rc == 2


def test_domain_error_exit_1(capsys):
    rc, _, err = run(capsys, "info", "--diagram", "cartan:[[2,-2],[-2,2]]")
    assert rc == 1
    assert "NotFiniteType" in err


def test_decompose_and_branch(capsys):
    rc, out, _ = run(capsys, "decompose", "--diagram", "G2",
                     "--lhs", "1,0", "--rhs", "1,0")
    assert rc == 0
    assert out.splitlines() == ["0,0  1", "0,1  1", "1,0  1", "2,0  1"]
    rc, out, _ = run(capsys, "branch", "--diagram", "A3",
                     "--weight", "1,0,1", "--subset", "1,2")
    assert rc == 0 and len(out.splitlines()) == 4


def test_crystal_export_roundtrip(capsys, tmp_path):
    rc, out, _ = run(capsys, "crystal", "--diagram", "G2", "--weight", "0,1",
                     "--export", "json")
    data = json.loads(out)
    assert len(data["vertices"]) == 14
    path = tmp_path / "poset.json"
    path.write_text(out)
    rc, out2, _ = run(capsys, "verify", "--diagram", "G2",
                      "--poset", str(path), "--targets", "0,1")
    assert rc == 0 and "splitting: ok" in out2
    rc, out3, _ = run(capsys, "verify", "--diagram", "G2",
                      "--poset", str(path), "--targets", "1,0")
    assert rc == 1 and "FAIL" in out3


def test_umax_dot(capsys):
    rc, out, _ = run(capsys, "umax", "--diagram", "G2", "--weight", "0,1",
                     "--export", "dot")
    assert rc == 0
    assert out.count("->") == 18 and out.count('label="') >= 14


def test_lattice_and_rgf(capsys):
    rc, out, _ = run(capsys, "lattice", "--family", "gt", "--n", "3",
                     "--weight", "1,2", "--verify", "--rgf")
    assert rc == 0
    assert "splitting: ok" in out and "subblock coloring: ok" in out
    assert "rgf: [1, 2, 3, 3, 3, 2, 1]" in out
    rc, out, _ = run(capsys, "rgf", "--diagram", "G2", "--weight", "0,1")
    assert out.strip() == "1 1 1 1 2 2 2 1 1 1 1"


def test_repeat_runs_identical(capsys):
    outs = set()
    for _ in range(3):
        rc, out, _ = run(capsys, "crystal", "--diagram", "C2",
                         "--weight", "1,1", "--export", "json")
        assert rc == 0
        outs.add(out)
    assert len(outs) == 1


def test_info_and_roots(capsys):
    rc, out, _ = run(capsys, "info", "--diagram", "A3+A1")
    assert rc == 0 and "weyl order: 48" in out
    rc, out, _ = run(capsys, "roots", "--diagram", "G2")
    assert rc == 0 and len(out.splitlines()) == 6
    assert sum(1 for l in out.splitlines() if l.endswith("short")) == 3


def test_expand_and_alternant(capsys):
    rc, out, _ = run(capsys, "expand", "--diagram", "G2",
                     "--weights", "1,0", "1,0")
    assert rc == 0 and len(out.splitlines()) == 4
    rc, out, _ = run(capsys, "alternant", "--diagram", "A2", "--weight", "1,1")
    assert rc == 0 and len(out.splitlines()) == 6
    rc, out, _ = run(capsys, "alternant", "--diagram", "A2", "--weight", "1,0")
    assert rc == 0 and out.strip() == ""


def test_experiment(capsys):
    rc, out, _ = run(capsys, "experiment", "--diagram", "A2", "--weight", "1,1")
    assert rc == 0 and "R(lambda): 8 vertices" in out


def test_orbit_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("WEYL_ORBIT_CAP", "2")
    rc, _, err = run(capsys, "char", "--diagram", "A3", "--weight", "1,0,1")
    assert rc == 1 and "OrbitTooLarge" in err


def test_verify_coloring_witness(capsys, tmp_path):
    import weylsplit.crystal as cr
    import weylsplit.ecposet as ec
    from weylsplit import build_diagram
    g2 = build_diagram("G2")
    q = cr.quasi_minuscule_poset(g2)
    pj = tmp_path / "qm.json"
    pj.write_text(ec.export_poset(q))
    w = cr.quasi_minuscule_tau_kappa(g2, q)
    wj = tmp_path / "wit.json"
    wj.write_text(json.dumps({
        "J": [1, 2], "nu": [0, 0], "S": sorted(w.S),
        "kappa": {str(k): v for k, v in w.kappa.items()},
        "tau": {str(k): v for k, v in w.tau.items()}}))
    rc, out, _ = run(capsys, "verify", "--diagram", "G2", "--poset", str(pj),
                     "--targets", "1,0", "--coloring", str(wj))
    assert rc == 0 and "splitting: ok" in out and "tau-kappa: ok" in out


def test_weyl_group_cap(capsys):
    import pytest as _pytest
    from weylsplit import build_diagram, wsf
    from weylsplit.errors import OrbitTooLarge
    e6 = build_diagram("E6")   # |W| = 51840 > 1152
    with _pytest.raises(OrbitTooLarge):
        wsf.alternant(e6, e6.rho())
    with _pytest.raises(OrbitTooLarge):
        wsf.kostant_multiplicity(e6, e6.omega(1), e6.omega(1))
    # freudenthal remains available beyond the cap
    f = wsf.freudenthal(e6, e6.omega(1))
    assert sum(f.terms.values()) == 27


def test_lattice_eo_cli(capsys):
    rc, out, _ = run(capsys, "lattice", "--family", "eo", "--n", "4",
                     "--m", "1", "--node", "n", "--verify")
    assert rc == 0 and "splitting: ok" in out
    rc, out, _ = run(capsys, "lattice", "--family", "oo", "--n", "3", "--m", "2")
    assert rc == 0 and "vertices" in out
    rc, _, err = run(capsys, "lattice", "--family", "oo", "--n", "2", "--m", "1")
    assert rc == 1 and "InvalidFamilyParams" in err


def test_verify_subblock_witness_cli(capsys, tmp_path):
    from weylsplit import patternlat as pl
    import weylsplit.ecposet as ec
    lat = pl.gt_lattice(3, (1, 2))
    pj = tmp_path / "gt.json"
    pj.write_text(ec.export_poset(lat.poset))
    kap = lat.slantwise_coloring()
    wj = tmp_path / "wit.json"
    wj.write_text(json.dumps({
        "J": [1, 2], "nu": [0, 0], "S": [lat.index[lat.max_pattern]],
        "kappa": {str(k): v for k, v in kap.items()}}))
    rc, out, _ = run(capsys, "verify", "--diagram", "A2", "--poset", str(pj),
                     "--coloring", str(wj))
    assert rc == 0 and "subblock coloring: ok" in out
