"""Command-line interface: reports, exit codes, determinism, coverage."""

import json

from mckaydeform.cli import OPERATION_COVERAGE, run


def test_fold_command(tmp_path):
    out = tmp_path / "fold.json"
    code, report = run(["fold", "--type", "D4", "--omega", "s3",
                        "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["checks"][0]["witness"]["folded"] == "G2"
    assert payload["checks"][0]["witness"]["omega_generators"]
    assert payload["version"]


def test_usage_error_exit_code():
    code, _ = run(["fold", "--type", "X9"])
    assert code == 2
    code, _ = run(["no-such-command"])
    assert code == 2


def test_budget_exit_code(monkeypatch):
    # an exhausted reduction budget surfaces as exit code 3
    import mckaydeform.cli as cli
    from mckaydeform.poly import BudgetExceeded

    def exhausted(args):
        raise BudgetExceeded("reduction budget exhausted")

    monkeypatch.setattr(cli, "cmd_fiber", exhausted)
    code, _ = run(["fiber", "analyze", "--label", "C3"])
    assert code == 3


def test_klein_command():
    code, report = run(["klein", "verify", "--type", "D4"])
    assert code == 0 and report.ok


def test_quiver_sample_command():
    code, report = run(["quiver", "sample", "--type", "D4",
                        "--mu", "1,1,-2,1,1", "--seed", "42",
                        "--trials", "10"])
    assert code == 0 and report.ok


def test_fiber_analyze_command():
    code, report = run(["fiber", "analyze", "--label", "B2",
                        "--params", "t2=1,t4=0"])
    assert code == 0
    witness = report.checks[0].witness
    assert witness["smooth"] in (True, False)


def test_family_show_payload(tmp_path):
    out = tmp_path / "family.json"
    code, _ = run(["family", "--label", "C3", "--show",
                   "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert "equation" in payload["payload"]


def test_suite_smoke_green():
    code, report = run(["suite", "smoke"])
    assert code == 0
    assert len(report.checks) >= 25
    assert all(c.status == "pass" for c in report.checks)


def test_suite_json_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["suite", "smoke", "--seed", "42", "--out", str(a)])[0] == 0
    assert run(["suite", "smoke", "--seed", "42", "--out", str(b)])[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_suite_full_json_byte_stable(tmp_path):
    a, b = tmp_path / "fa.json", tmp_path / "fb.json"
    assert run(["suite", "full", "--seed", "42", "--out", str(a)])[0] == 0
    assert run(["suite", "full", "--seed", "42", "--out", str(b)])[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_suite_fails_on_corrupted_table(monkeypatch):
    import mckaydeform.deform as deform
    original = deform.d4_mu_coefficients

    def corrupted():
        coeffs = original()
        coeffs["A"] = coeffs["A"] + 1  # poison one coefficient
        return coeffs

    monkeypatch.setattr(deform, "d4_mu_coefficients", corrupted)
    code, report = run(["suite", "smoke"])
    assert code == 1
    failed = [c.name for c in report.checks if c.status == "fail"]
    assert "d4_coefficients" in failed


def test_operation_coverage():
    spec_operations = [
        "exact.embed_complex", "exact.field_arith",
        "poly.substitute", "poly.partial_derivative",
        "poly.groebner_basis", "poly.quotient_dimension",
        "poly.normal_form", "poly.evaluate_numeric",
        "rootdata.build_root_system", "rootdata.fold",
        "rootdata.weyl_generators", "rootdata.vanishing_roots",
        "rootdata.omega_average", "rootdata.mckay_dimension_vector",
        "rootdata.fundamental_coweights",
        "klein.enumerate_group", "klein.klein_data",
        "klein.verify_invariance", "klein.verify_omega_action",
        "quiver.build_mckay_quiver", "quiver.symplectic_form",
        "quiver.moment_map", "quiver.check_action_admissible",
        "quiver.verify_symplectic_action", "quiver.sample_moment_fibre",
        "quiver.invariants_at_point",
        "quiver.verify_moment_equivariance_numeric",
        "flat.flat_coords_A", "flat.flat_coords_D", "flat.flat_coords_E6",
        "flat.epsilon_from_psi", "flat.verify_w_invariance",
        "deform.family", "deform.verify_equivariance",
        "deform.special_fibre_normal_form", "deform.analyze_fibre",
        "quotient.quotient_family",
        "quotient.verify_invariant_generators",
        "quotient.verify_quotient_pullback",
        "quotient.verify_singular_locus", "quotient.discriminant_B2",
        "quotient.non_semiuniversality_check",
        "cli.run", "cli.suite",
    ]
    for op in spec_operations:
        assert op in OPERATION_COVERAGE, op
