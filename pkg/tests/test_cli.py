import json

import pytest

from mathieuspaces.algebras import matrix_algebra, truncated_poly
from mathieuspaces.cli import main
from mathieuspaces.fields import GF, QQ
from mathieuspaces.serialize import (
    SchemaError,
    algebra_from_json,
    algebra_to_json,
    module_from_json,
    module_to_json,
    poly_from_json,
    poly_to_json,
    subspace_from_json,
)
from mathieuspaces.modules import natural_module
from mathieuspaces.polyspaces import Poly
from mathieuspaces.verify import CheckEntry, Profile, run_suite


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_json_round_trip():
    a = matrix_algebra(2, 2)
    again = algebra_from_json(algebra_to_json(a))
    assert again.structure == a.structure
    assert again.unit == a.unit
    assert again.field == a.field


def test_module_json_round_trip():
    m = natural_module(truncated_poly(3, 2))
    again = module_from_json(module_to_json(m))
    assert again.actions == m.actions
    assert again.algebra.structure == m.algebra.structure


def test_poly_json_round_trip():
    p = Poly(QQ, 2, {(1, 0): 2, (0, 3): QQ.parse_scalar("1/2")})
    assert poly_from_json(QQ, poly_to_json(p)) == p


def test_nonassociative_json_rejected_with_named_triple():
    t = truncated_poly(3, 2)
    obj = algebra_to_json(t)
    obj["structure"][1][2] = [1, 0, 0]  # x * x^2 must be zero
    with pytest.raises(SchemaError) as err:
        algebra_from_json(obj)
    assert "associativity" in str(err.value)
    assert "basis triple (" in str(err.value)


def test_subspace_json_defaults():
    s = subspace_from_json(GF(2), {"ambient": 3, "basis": [[1, 1, 0], [0, 1, 1]]})
    assert s.dim == 2
    assert subspace_from_json(GF(2), s.to_json()) == s


def test_gen_and_decide_round_trip(tmp_path, capsys):
    alg_path = tmp_path / "m2f2.json"
    code, out, _ = run_cli(capsys, "gen", "matrix", "--n", "2", "--p", "2",
                           "--out", str(alg_path))
    assert code == 0
    sub_path = tmp_path / "h.json"
    sub_path.write_text(json.dumps(
        {"ambient": 4, "basis": [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]]}))
    code, out, _ = run_cli(capsys, "is-mathieu", "--algebra", str(alg_path),
                           "--subspace", str(sub_path), "--theta", "two")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] is False
    assert payload["witness"]["kind"] == "mathieu"

    witness_path = tmp_path / "w.json"
    witness_path.write_text(json.dumps({
        "algebra_builder": ["matrix", 2, 2],
        "theta": "two",
        "subspace": json.loads(sub_path.read_text()),
        "witness": payload["witness"],
    }))
    code, out, _ = run_cli(capsys, "verify-witness", "--input", str(witness_path))
    assert code == 0
    assert json.loads(out)["result"] is True


def test_bogus_witness_is_rejected_with_exit_one(tmp_path, capsys):
    witness_path = tmp_path / "w.json"
    witness_path.write_text(json.dumps({
        "algebra_builder": ["matrix", 2, 2],
        "theta": "two",
        "subspace": {"ambient": 4, "basis": [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]]},
        "witness": {"kind": "mathieu", "a": [1, 0, 0, 1], "b": [0, 0, 1, 0],
                    "c": [0, 0, 0, 1], "power": 1},
    }))
    code, out, _ = run_cli(capsys, "verify-witness", "--input", str(witness_path))
    assert code == 1
    assert json.loads(out)["result"] is False


def test_schema_violation_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2}))
    sub = tmp_path / "s.json"
    sub.write_text(json.dumps({"ambient": 2, "basis": []}))
    code, _, err = run_cli(capsys, "is-mathieu", "--algebra", str(bad),
                           "--subspace", str(sub))
    assert code == 2
    assert "missing key" in err


def test_sigma_tau_cli(tmp_path, capsys):
    alg_path = tmp_path / "m2f2.json"
    run_cli(capsys, "gen", "matrix", "--n", "2", "--p", "2", "--out", str(alg_path))
    mod_path = tmp_path / "col.json"
    run_cli(capsys, "gen", "column-module", "--algebra", str(alg_path), "--n", "2",
            "--out", str(mod_path))
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps({"ambient": 2, "basis": []}))
    code, out, _ = run_cli(capsys, "tau", "--module", str(mod_path),
                           "--subspace", str(zero), "--theta", "right")
    assert code == 0
    assert json.loads(out)["result"]["members"] == [[0, 0]]
    code, out, _ = run_cli(capsys, "sigma", "--module", str(mod_path),
                           "--subspace", str(zero), "--theta", "pre")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["members"] == [[0, 0]]
    assert "note" in payload


def test_quasi_stable_cli(tmp_path, capsys):
    alg_path = tmp_path / "split.json"
    run_cli(capsys, "gen", "product", "--l", "2", "--p", "2", "--out", str(alg_path))
    code, out, _ = run_cli(capsys, "quasi-stable", "--algebra", str(alg_path))
    assert code == 0
    assert json.loads(out)["result"] is True
    bad_path = tmp_path / "m2.json"
    run_cli(capsys, "gen", "matrix", "--n", "2", "--p", "2", "--out", str(bad_path))
    code, out, _ = run_cli(capsys, "quasi-stable", "--algebra", str(bad_path))
    assert json.loads(out)["result"] is False
    assert "violation" in json.loads(out)


def test_omega_nba_nq_cli(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "omega", "--alpha", "[1, -1]")
    assert code == 0 and json.loads(out)["result"] is False
    code, out, _ = run_cli(capsys, "omega", "--alpha", "[1, 2]", "--field", "3")
    assert code == 0 and json.loads(out)["result"] is False

    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"field": "Q", "points": [[0], [1]], "alpha": [1, 1]}))
    one = tmp_path / "one.json"
    one.write_text(json.dumps({"vars": 1, "terms": [{"exp": [0], "coef": 1}]}))
    code, out, _ = run_cli(capsys, "nba", "tau", "--config", str(cfg), "--poly", str(one))
    assert code == 0 and json.loads(out)["result"] is True
    code, out, _ = run_cli(capsys, "nba", "sigma", "--config", str(cfg), "--poly", str(one))
    assert code == 0 and json.loads(out)["result"] is False

    icfg = tmp_path / "icfg.json"
    icfg.write_text(json.dumps({
        "a": "0", "b": "1", "q": {"vars": 1, "terms": [{"exp": [0], "coef": 1}]}}))
    half = tmp_path / "half.json"
    half.write_text(json.dumps(
        {"vars": 1, "terms": [{"exp": [0], "coef": "-1/2"}, {"exp": [1], "coef": 1}]}))
    code, out, _ = run_cli(capsys, "integral", "--config", str(icfg), "--poly", str(half))
    assert code == 0 and json.loads(out)["result"] == "0"
    code, out, _ = run_cli(capsys, "nq", "tau", "--config", str(icfg), "--poly", str(half))
    assert code == 0 and json.loads(out)["result"] is False


def test_report_failure_gives_exit_one(tmp_path, capsys):
    def failing_check(profile):
        return [CheckEntry(check="rigged", instance="always fails", claim="n/a",
                           expected=True, computed=False, passed=False)]

    report = run_suite(Profile(), checks=[("rigged", failing_check)])
    assert not report.passed
    assert report.to_json()["status"] == "fail"


def test_module_json_with_algebra_path_reference(tmp_path, capsys):
    alg_path = tmp_path / "alg.json"
    alg_path.write_text(json.dumps(algebra_to_json(truncated_poly(2, 2))))
    nat = natural_module(truncated_poly(2, 2))
    obj = module_to_json(nat)
    obj["algebra"] = "alg.json"  # relative reference
    mod_path = tmp_path / "mod.json"
    mod_path.write_text(json.dumps(obj))
    loaded = module_from_json(json.loads(mod_path.read_text()), base_dir=str(tmp_path))
    assert loaded.actions == nat.actions
    line = tmp_path / "line.json"
    line.write_text(json.dumps({"ambient": 2, "basis": [[0, 1]]}))
    code, out, _ = run_cli(capsys, "tau", "--module", str(mod_path),
                           "--subspace", str(line), "--theta", "two")
    assert code == 0


def test_empty_suite_is_an_empty_passing_report():
    report = run_suite(Profile(), checks=[])
    assert report.passed
    assert report.to_json()["entries"] == []
    assert report.to_json()["status"] == "pass"


def test_fail_entry_witnesses_round_trip_through_verify_witness(tmp_path, capsys):
    from mathieuspaces.verify import check_quasi_stable_classification

    entries = check_quasi_stable_classification(Profile())
    payloads = [e.witness for e in entries if e.witness is not None]
    assert payloads
    for payload in payloads:
        path = tmp_path / "w.json"
        path.write_text(json.dumps(payload))
        code, out, _ = run_cli(capsys, "verify-witness", "--input", str(path))
        assert code == 0
        assert json.loads(out)["result"] is True


def test_module_level_mathieu_with_reference_element(tmp_path, capsys):
    alg_path = tmp_path / "m2f2.json"
    run_cli(capsys, "gen", "matrix", "--n", "2", "--p", "2", "--out", str(alg_path))
    mod_path = tmp_path / "col.json"
    run_cli(capsys, "gen", "column-module", "--algebra", str(alg_path), "--n", "2",
            "--out", str(mod_path))
    line = tmp_path / "line.json"
    line.write_text(json.dumps({"ambient": 2, "basis": [[1, 0]]}))
    code, out, _ = run_cli(capsys, "is-mathieu", "--module", str(mod_path),
                           "--subspace", str(line), "--wrt", "[0, 1]", "--theta", "left")
    assert code == 0
    assert json.loads(out)["result"] is False
    code, out, _ = run_cli(capsys, "is-mathieu", "--module", str(mod_path),
                           "--subspace", str(line), "--wrt", "[0, 0]", "--theta", "left")
    assert code == 0
    assert json.loads(out)["result"] is True


def test_report_determinism_modulo_timing():
    profile = Profile(primes=(2,), subspace_samples=5, pair_samples=12,
                      hom_samples=4, eval_configs=4, integral_samples=5)
    a = run_suite(profile).to_json(with_timing=False)
    b = run_suite(profile).to_json(with_timing=False)
    assert a == b


def test_gen_opposite_and_quotient(tmp_path, capsys):
    alg_path = tmp_path / "t32.json"
    run_cli(capsys, "gen", "truncated", "--k", "3", "--p", "2", "--out", str(alg_path))
    code, out, _ = run_cli(capsys, "gen", "opposite", "--algebra", str(alg_path))
    assert code == 0
    opp = algebra_from_json(json.loads(out))
    assert opp.structure == truncated_poly(3, 2).structure  # commutative: self-opposite
    ideal = tmp_path / "ideal.json"
    ideal.write_text(json.dumps({"ambient": 3, "basis": [[0, 0, 1]]}))
    code, out, _ = run_cli(capsys, "gen", "quotient", "--algebra", str(alg_path),
                           "--ideal", str(ideal))
    assert code == 0
    quot = algebra_from_json(json.loads(out))
    assert quot.dim == 2
    # quotienting by a non-ideal is a usage error
    bad = tmp_path / "notideal.json"
    bad.write_text(json.dumps({"ambient": 3, "basis": [[1, 0, 0]]}))
    code, _, err = run_cli(capsys, "gen", "quotient", "--algebra", str(alg_path),
                           "--ideal", str(bad))
    assert code == 2
    assert "ideal" in err


def test_nba_over_prime_field(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(
        {"field": {"p": 3}, "points": [[0], [1]], "alpha": [1, 2]}))
    one = tmp_path / "one.json"
    one.write_text(json.dumps({"vars": 1, "terms": [{"exp": [0], "coef": 1}]}))
    code, out, _ = run_cli(capsys, "nba", "tau", "--config", str(cfg), "--poly", str(one))
    assert code == 0
    assert json.loads(out)["result"] is False  # 1 + 2 = 0 mod 3
    code, out, _ = run_cli(capsys, "nba", "member", "--config", str(cfg), "--poly", str(one))
    assert code == 0
    assert json.loads(out)["result"] is True


def test_rational_subspace_round_trip():
    s = subspace_from_json(QQ, {"ambient": 2, "basis": [["1/2", 1]]})
    assert s.basis == ((QQ.parse_scalar("1"), QQ.parse_scalar("2")),)
    assert subspace_from_json(QQ, s.to_json()) == s


def test_unknown_profile_keys_are_usage_errors(tmp_path, capsys):
    prof = tmp_path / "prof.json"
    prof.write_text(json.dumps({"primes": [2], "bogus_knob": 4}))
    code, _, err = run_cli(capsys, "verify-paper", "--profile", str(prof))
    assert code == 2
    assert "bogus_knob" in err


def test_max_submodule_and_radical_cli(tmp_path, capsys):
    alg_path = tmp_path / "t22.json"
    run_cli(capsys, "gen", "truncated", "--k", "2", "--p", "2", "--out", str(alg_path))
    line = tmp_path / "line.json"
    line.write_text(json.dumps({"ambient": 2, "basis": [[0, 1]]}))
    code, out, _ = run_cli(capsys, "max-submodule", "--algebra", str(alg_path),
                           "--subspace", str(line))
    assert code == 0
    assert json.loads(out)["result"]["basis"] == [[0, 1]]
    code, out, _ = run_cli(capsys, "radical", "--algebra", str(alg_path),
                           "--subspace", str(line))
    assert code == 0
    assert json.loads(out)["result"]["members"] == [[0, 0], [0, 1]]
