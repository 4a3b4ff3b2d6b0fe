"""Command-line front end: every construction and verification as a check.

Reports are deterministic for fixed (command, flags, seed): checks are
sorted by name and the JSON payload is byte-stable (serialized with sorted
keys; the per-check runtime field is zeroed in JSON output and only shown
in the human-readable text rendering).

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .exact import rat
from .poly import BudgetExceeded
from .rootdata import (DynkinType, UnsupportedType, fold, parse_type,
                       standard_omega, vanishing_roots, omega_average,
                       build_root_system)


class Check:
    def __init__(self, name, status, witness=None, runtime_ms=0):
        self.name = name
        self.status = status            # 'pass' | 'fail' | 'skipped'
        self.witness = witness
        self.runtime_ms = runtime_ms

    @staticmethod
    def of(name, ok, witness=None, runtime_ms=0):
        return Check(name, "pass" if ok else "fail", witness, runtime_ms)


class RunReport:
    def __init__(self, command, checks, seed=None):
        self.command = command
        self.checks = sorted(checks, key=lambda c: c.name)
        self.seed = seed
        self.version = __version__

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def to_json(self):
        return {
            "command": self.command,
            "checks": [{"name": c.name, "status": c.status,
                        "witness": c.witness, "runtime_ms": 0}
                       for c in self.checks],
            "seed": self.seed,
            "version": self.version,
        }

    def render_text(self):
        lines = [f"# {self.command} (v{self.version}"
                 + (f", seed {self.seed})" if self.seed is not None
                    else ")")]
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "skipped": "skip"}
            line = f"[{mark[c.status]}] {c.name}"
            if c.runtime_ms:
                line += f"  ({c.runtime_ms} ms)"
            if c.status == "fail" and c.witness is not None:
                line += f"  witness: {json.dumps(c.witness, sort_keys=True)}"
            lines.append(line)
        passed = sum(1 for c in self.checks if c.status == "pass")
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)


# -- command implementations --------------------------------------------------

def cmd_fold(args) -> RunReport:
    from .rootdata import cartan_matrix
    t = parse_type(args.type)
    omega = standard_omega(t, args.omega)
    folded = fold(t, omega)
    checks = [Check.of(
        f"fold_{t}_{args.omega}", True,
        {"folded": str(folded),
         "cartan": cartan_matrix(t),
         "omega_generators": sorted(
             list(g.vertex_perm) for g in omega
             if g.vertex_perm != tuple(range(1, t.rank + 1)))})]
    return RunReport(f"fold --type {t} --omega {args.omega}", checks)


def cmd_rootdata(args) -> RunReport:
    from .rootdata import mckay_dimension_vector
    t = parse_type(args.type)
    checks = []
    rs = build_root_system(t)
    checks.append(Check.of(
        f"positive_root_count_{t}", True,
        {"count": len(rs.positive_roots)}))
    if args.h:
        h = tuple(rat(v) for v in args.h.split(","))
        van = vanishing_roots(rs, h)
        avg = omega_average(rs, standard_omega(t, args.omega), h)
        checks.append(Check.of(
            f"vanishing_roots_{t}", True,
            {"roots": [[str(c) for c in v] for v in van],
             "average": [str(c) for c in avg]}))
    if t.homogeneous:
        checks.append(Check.of(
            f"dimension_vector_{t}", True,
            {"d": list(mckay_dimension_vector(t))}))
    return RunReport(f"rootdata --type {t}", checks)


def cmd_klein(args) -> RunReport:
    from .klein import klein_data, verify_invariance, verify_omega_action
    t = parse_type(args.type)
    kd = klein_data(t)
    checks = []
    inv = verify_invariance(kd)
    for c in inv["checks"]:
        checks.append(Check.of(f"klein_{kd.label}_{c['check']}", c["ok"]))
    act = verify_omega_action(kd)
    for c in act["checks"]:
        checks.append(Check.of(
            f"klein_{kd.label}_action_{c['generator']}_{c['polynomial']}",
            c["ok"]))
    checks.append(Check.of(
        f"klein_{kd.label}_gamma_order", kd.gamma.order() ==
        kd.gamma.order_expected, {"order": kd.gamma.order()}))
    return RunReport(f"klein verify --type {t}", checks)


def cmd_flat(args) -> RunReport:
    from .flat import (FRAME_GENERATOR_KEYS, flat_coords_A, flat_coords_D,
                       flat_coords_E6, frame_reflection_subs,
                       psi_E6_in_xy, pq_weighted_degrees,
                       verify_w_invariance)
    t = parse_type(args.type)
    checks = []
    if t.family == "A":
        fs = flat_coords_A((t.rank + 1) // 2)
        payload = {name: p.to_json() for _, name, p in fs.coords}
        checks.append(Check.of(f"flat_{t}_built", True,
                               {"degrees": [d for d, _, _ in fs.coords]}))
    elif t.family == "D":
        fs = flat_coords_D(t.rank - 1)
        payload = {name: p.to_json() for _, name, p in fs.coords}
        checks.append(Check.of(f"flat_{t}_built", True,
                               {"degrees": [d for d, _, _ in fs.coords]}))
    elif t == DynkinType("E", 6):
        fs = flat_coords_E6()
        payload = {name: p.to_json() for _, name, p in fs.coords}
        degs_ok = all(pq_weighted_degrees(p) == {d}
                      for d, _, p in fs.coords)
        checks.append(Check.of("flat_E6_homogeneous", degs_ok,
                               {"degrees": [d for d, _, _ in fs.coords]}))
        if args.full:
            xy = psi_E6_in_xy()
            gens = [(str(k), frame_reflection_subs(k))
                    for k in FRAME_GENERATOR_KEYS]
            rep = verify_w_invariance(fs, gens, expand=xy)
            checks.append(Check.of("flat_E6_frame_invariance", rep["ok"]))
    else:
        raise UnsupportedType(str(t))
    report = RunReport(f"flat --type {t}", checks)
    report.payload = payload
    return report


def cmd_quiver_verify(args) -> RunReport:
    from .quiver import (check_action_admissible, reference_action,
                         verify_moment_equivariance_numeric,
                         verify_symplectic_action)
    t = parse_type(args.type)
    gens = ("sigma",) if args.generator == "all" and t.family != "D" \
        else (("sigma", "rho") if t == DynkinType("D", 4)
              else (args.generator,) if args.generator != "all"
              else ("sigma",))
    checks = []
    for gen in gens:
        act = reference_action(t, gen)
        adm = check_action_admissible(act)
        for row in adm["rows"]:
            checks.append(Check.of(
                f"{t}_{gen}_admissible[{row['condition']}]", row["ok"]))
        checks.append(Check.of(f"{t}_{gen}_symplectic",
                               verify_symplectic_action(act)))
        eq = verify_moment_equivariance_numeric(act, seed=args.seed,
                                                trials=args.trials)
        checks.append(Check.of(f"{t}_{gen}_moment_equivariance",
                               eq["ok"],
                               {"max_residual": eq["max_residual"]}))
    return RunReport(f"quiver verify-action --type {t}", checks,
                     seed=args.seed)


def cmd_quiver_sample(args) -> RunReport:
    import numpy as np
    from .quiver import (fibre_residual, invariants_at_point,
                         lambda_from_central, sample_moment_fibre)
    t = parse_type(args.type)
    central = [complex(rat(v)) for v in args.mu.split(",")]
    checks = []
    worst_fibre = 0.0
    worst_family = 0.0
    for k in range(args.trials):
        sample = sample_moment_fibre(t, central, seed=args.seed + k)
        worst_fibre = max(worst_fibre, fibre_residual(sample))
        x, y, z = invariants_at_point(t, sample)
        if t.family == "A":
            lam = lambda_from_central(central)
            value = np.prod([z - l for l in lam]) - x * y
            scale = max(abs(x * y), 1.0)
            worst_family = max(worst_family, abs(value) / scale)
        else:
            worst_family = max(worst_family,
                               _d4_family_residual(central, x, y, z))
    checks.append(Check.of(f"{t}_moment_residual", worst_fibre < 1e-10,
                           {"max": worst_fibre}))
    checks.append(Check.of(f"{t}_family_equation_residual",
                           worst_family < 1e-8, {"max": worst_family}))
    return RunReport(
        f"quiver sample --type {t} --mu {args.mu} --trials {args.trials}",
        checks, seed=args.seed)


def _d4_family_residual(mu, x, y, z) -> float:
    mu0, mu1, mu2, mu3, mu4 = (complex(v) for v in mu)
    xi = (-mu1 - mu2 - (mu3 + mu4) / 2, -mu2 - (mu3 + mu4) / 2,
          -(mu3 + mu4) / 2, (mu3 - mu4) / 2)
    e1 = sum(v ** 2 for v in xi)
    e2 = sum(xi[i] ** 2 * xi[j] ** 2 for i in range(4)
             for j in range(i + 1, 4))
    e3 = sum(xi[i] ** 2 * xi[j] ** 2 * xi[k] ** 2
             for i in range(4) for j in range(i + 1, 4)
             for k in range(j + 1, 4))
    psi2 = e1
    psi4 = e2 - e1 ** 2 / 4
    psi6 = e3 - e1 * e2 / 6 + 7 * e1 ** 3 / 216
    psi = xi[0] * xi[1] * xi[2] * xi[3]
    rhs = x * y * (x + y) - psi2 * x * y / 2 - psi * y \
        - (psi + psi4 / 2) * x / 2 \
        + (psi6 + psi2 * psi4 / 6 + psi * psi2 + psi2 ** 3 / 108) / 4
    scale = max(abs(z * z), abs(rhs), 1.0)
    return abs(z * z - rhs) / scale


def cmd_family(args) -> RunReport:
    from .deform import (family, fixed_parameter_locus,
                         special_fibre_normal_form, verify_equivariance,
                         verify_parameter_actions)
    fam = family(args.label)
    checks = []
    eq = verify_equivariance(fam)
    for c in eq["checks"]:
        checks.append(Check.of(f"{fam.label}_{c['check']}", c["ok"]))
    pa = verify_parameter_actions(fam)
    for c in pa["checks"]:
        checks.append(Check.of(f"{fam.label}_base[{c['check']}]", c["ok"]))
    if fam.restricted or fam.label.startswith("A"):
        nf = special_fibre_normal_form(fam)
        checks.append(Check.of(f"{fam.label}_normal_form_relation",
                               nf["relation_match"]))
        checks.append(Check.of(f"{fam.label}_normal_form_action",
                               nf["action_match"]))
    report = RunReport(f"family --label {fam.label}", checks)
    if args.show:
        report.payload = {"equation": fam.equation.to_json(),
                          "fixed_locus": fixed_parameter_locus(fam)}
    return report


def cmd_fiber(args) -> RunReport:
    from .deform import analyze_fibre, family
    fam = family(args.label)
    values = {}
    if args.params:
        for item in args.params.split(","):
            k, v = item.split("=")
            values[k.strip()] = rat(v.strip())
    budget = args.budget or 10 ** 6
    rep = analyze_fibre(fam, values, budget=budget)
    checks = [Check.of(
        f"fiber_{fam.label}_analyzed", True, rep.to_json())]
    return RunReport(
        f"fiber analyze --label {fam.label} --params {args.params or ''}",
        checks)


def cmd_quotient(args) -> RunReport:
    from .quotient import (discriminant_B2, non_semiuniversality_check,
                           verify_invariant_generators,
                           verify_quotient_pullback, verify_singular_locus)
    label = args.label.upper()
    checks = []
    if args.action == "verify":
        gens = verify_invariant_generators(label)
        checks.append(Check.of(f"{label}_invariant_generators",
                               gens["ok"]))
        pull = verify_quotient_pullback(label)
        checks.append(Check.of(
            f"{label}_pullback", pull["ok"],
            {"map_status": pull["map_status"],
             "tier": pull.get("tier", "exact")}))
        if label in ("B2", "C3", "G2"):
            loc = verify_singular_locus(label)
            checks.append(Check.of(f"{label}_singular_locus", loc["ok"]))
        nsu = non_semiuniversality_check(label)
        checks.append(Check.of(
            f"{label}_not_semiuniversal", nsu["ok"],
            {"base_dim": nsu["base_dim"], "target": nsu["target"]}))
    elif args.action == "discriminant":
        if label != "B2":
            raise UnsupportedType("discriminant is computed for B2")
        rep = discriminant_B2()
        checks.append(Check.of(
            "B2_discriminant", rep["ok"],
            {"conditions": [str(c) for c in rep["conditions"]]}))
    return RunReport(f"quotient {args.action} --label {label}", checks)


def cmd_suite(args) -> RunReport:
    checks = []
    seed = args.seed

    def run(name, fn):
        start = time.monotonic()
        try:
            ok, witness = fn()
        except BudgetExceeded:
            raise
        ms = int((time.monotonic() - start) * 1000)
        checks.append(Check.of(name, ok, witness, ms))

    _suite_smoke(run, seed)
    if args.name == "full":
        _suite_full(run, seed)
    return RunReport(f"suite {args.name}", checks, seed=seed)


def _suite_smoke(run, seed):
    from .deform import (family, special_fibre_normal_form,
                         verify_d4_coefficients, verify_equivariance)
    from .klein import klein_data, verify_invariance, verify_omega_action
    from .quiver import reference_action, verify_symplectic_action
    from .quotient import (discriminant_B2, non_semiuniversality_check,
                           verify_invariant_generators,
                           verify_quotient_pullback, verify_singular_locus)

    folds = [("A3", "z2", "B2"), ("A5", "z2", "B3"), ("A4", "z2", "B2"),
             ("A6", "z2", "C3"), ("D4", "z2", "C3"), ("D5", "z2", "C4"),
             ("E6", "z2", "F4"), ("D4", "s3", "G2"), ("D4", "z3", "G2")]
    for tname, om, want in folds:
        t = parse_type(tname)
        run(f"fold[{tname},{om}]",
            lambda t=t, om=om, want=want:
            (str(fold(t, standard_omega(t, om))) == want,
             {"folded": str(fold(t, standard_omega(t, om)))}))

    for tname in ("A3", "A5", "D4", "D5", "E6"):
        t = parse_type(tname)
        kd = klein_data(t)
        run(f"klein_invariance[{tname}]",
            lambda kd=kd: (verify_invariance(kd)["ok"], None))
        run(f"klein_action[{tname}]",
            lambda kd=kd: (verify_omega_action(kd)["ok"], None))

    for label in ("A3", "B2", "B3", "D4", "C3", "G2", "E6", "F4"):
        run(f"family_equivariance[{label}]",
            lambda label=label:
            (verify_equivariance(family(label))["ok"], None))
    for label in ("B2", "B3", "C3", "G2", "F4"):
        run(f"normal_form[{label}]",
            lambda label=label:
            (special_fibre_normal_form(family(label))["ok"], None))

    run("d4_coefficients", lambda: (verify_d4_coefficients()["ok"], None))

    for t, gen in (("A3", "sigma"), ("D4", "sigma"), ("D4", "rho"),
                   ("E6", "sigma")):
        run(f"symplectic[{t},{gen}]",
            lambda t=t, gen=gen:
            (verify_symplectic_action(reference_action(parse_type(t), gen)),
             None))
    run("symplectic_perturbed_fails",
        lambda: (not verify_symplectic_action(
            reference_action(parse_type("A3"), "sigma", flip="a0")), None))

    for label in ("B2", "C3", "F4"):
        run(f"quotient_pullback[{label}]",
            lambda label=label:
            (verify_quotient_pullback(label)["ok"], None))
    for label in ("B2", "C3", "G2"):
        run(f"singular_locus[{label}]",
            lambda label=label:
            (verify_singular_locus(label)["ok"], None))
    run("discriminant_B2", lambda: (discriminant_B2()["ok"], None))
    for label in ("B2", "C3", "G2", "F4"):
        run(f"non_semiuniversal[{label}]",
            lambda label=label:
            (non_semiuniversality_check(label)["ok"], None))
    run("quotient_generators[G2]",
        lambda: (verify_invariant_generators("G2")["ok"], None))


def _suite_full(run, seed):
    import numpy as np
    from .deform import verify_e6_coefficients
    from .flat import (FRAME_GENERATOR_KEYS, flat_coords_E6,
                       frame_reflection_subs, psi_E6_in_xy,
                       verify_w_invariance)
    from .quiver import (fibre_residual, invariants_at_point,
                         lambda_from_central, reference_action,
                         sample_moment_fibre,
                         verify_moment_equivariance_numeric)
    from .quotient import verify_g2_intermediate, verify_quotient_pullback

    run("e6_frame_invariance", lambda: (
        verify_w_invariance(
            flat_coords_E6(),
            [(str(k), frame_reflection_subs(k))
             for k in FRAME_GENERATOR_KEYS],
            expand=psi_E6_in_xy())["ok"], None))
    run("e6_coefficients_weyl_invariant",
        lambda: (verify_e6_coefficients()["ok"], None))
    run("quotient_pullback[B3]",
        lambda: (verify_quotient_pullback("B3")["ok"], None))
    run("g2_intermediate", lambda: (verify_g2_intermediate()["ok"], None))
    run("g2_pullback",
        lambda: (verify_quotient_pullback("G2")["ok"], None))

    def mc_family(tname, central):
        t = parse_type(tname)
        worst = 0.0
        for k in range(100):
            s = sample_moment_fibre(t, central, seed=seed + k)
            worst = max(worst, fibre_residual(s))
            x, y, z = invariants_at_point(t, s)
            if t.family == "A":
                lam = lambda_from_central(central)
                val = abs(np.prod([z - l for l in lam]) - x * y)
                worst = max(worst, val / max(abs(x * y), 1.0))
            else:
                worst = max(worst,
                            _d4_family_residual(central, x, y, z))
        return worst < 1e-8, {"max_residual": worst}

    run("mc_fibres[A3]", lambda: mc_family(
        "A3", [1.5, -0.5, 0.25, -1.25]))
    run("mc_fibres[A5]", lambda: mc_family(
        "A5", [0.5, -0.25, 0.75, -1.0, 0.25, -0.25]))
    run("mc_fibres[D4]", lambda: mc_family("D4", [1, 1, -2, 1, 1]))
    for t, gen in (("A3", "sigma"), ("A5", "sigma"), ("D4", "sigma"),
                   ("D4", "rho")):
        run(f"mc_equivariance[{t},{gen}]",
            lambda t=t, gen=gen: (
                verify_moment_equivariance_numeric(
                    reference_action(parse_type(t), gen), seed=seed,
                    trials=100)["ok"], None))


# -- argument parsing -----------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="mckaydeform",
        description="exact verification workbench for simple-singularity "
                    "deformations built from McKay quivers")
    sub = p.add_subparsers(dest="cmd", required=True)

    f = sub.add_parser("fold", help="fold a simply laced type")
    f.add_argument("--type", required=True)
    f.add_argument("--omega", default="z2",
                   choices=("trivial", "z2", "z3", "s3"))
    f.set_defaults(fn=cmd_fold)

    rd = sub.add_parser("rootdata", help="root system reports")
    rd.add_argument("--type", required=True)
    rd.add_argument("--h", default=None,
                    help="comma-separated Cartan vector")
    rd.add_argument("--omega", default="z2")
    rd.set_defaults(fn=cmd_rootdata)

    k = sub.add_parser("klein", help="Klein invariant verification")
    k.add_argument("action", choices=("verify",))
    k.add_argument("--type", required=True)
    k.set_defaults(fn=cmd_klein)

    fl = sub.add_parser("flat", help="flat coordinate systems")
    fl.add_argument("--type", required=True)
    fl.add_argument("--full", action="store_true",
                    help="include the E6 Frame-invariance verification")
    fl.set_defaults(fn=cmd_flat)

    q = sub.add_parser("quiver", help="McKay quiver checks")
    qs = q.add_subparsers(dest="quiver_cmd", required=True)
    qv = qs.add_parser("verify-action")
    qv.add_argument("--type", required=True)
    qv.add_argument("--generator", default="all")
    qv.add_argument("--seed", type=int, default=0)
    qv.add_argument("--trials", type=int, default=25)
    qv.set_defaults(fn=cmd_quiver_verify)
    qp = qs.add_parser("sample")
    qp.add_argument("--type", required=True)
    qp.add_argument("--mu", required=True)
    qp.add_argument("--seed", type=int, default=0)
    qp.add_argument("--trials", type=int, default=100)
    qp.set_defaults(fn=cmd_quiver_sample)

    fa = sub.add_parser("family", help="deformation families")
    fa.add_argument("--label", required=True)
    fa.add_argument("--show", action="store_true")
    fa.set_defaults(fn=cmd_family)

    fb = sub.add_parser("fiber", help="fibre singularity analysis")
    fb.add_argument("action", choices=("analyze",))
    fb.add_argument("--label", required=True)
    fb.add_argument("--params", default="")
    fb.set_defaults(fn=cmd_fiber)

    qt = sub.add_parser("quotient", help="quotient family verification")
    qt.add_argument("action", choices=("verify", "discriminant"))
    qt.add_argument("--label", required=True)
    qt.set_defaults(fn=cmd_quotient)

    su = sub.add_parser("suite", help="bundled check suites")
    su.add_argument("name", choices=("smoke", "full"))
    su.add_argument("--seed", type=int, default=0)
    su.set_defaults(fn=cmd_suite)

    for parser in (f, rd, k, fl, qv, qp, fa, fb, qt, su):
        parser.add_argument("--out", default=None,
                            help="write the JSON report to this path")
        parser.add_argument("--budget", type=int, default=None,
                            help="reduction budget override")
    return p


# spec-operation -> subcommand coverage (asserted by the test suite)
OPERATION_COVERAGE = {
    "exact.embed_complex": "quiver sample",
    "exact.field_arith": "all (coefficient arithmetic)",
    "poly.substitute": "family",
    "poly.partial_derivative": "fiber analyze",
    "poly.groebner_basis": "fiber analyze",
    "poly.quotient_dimension": "fiber analyze",
    "poly.normal_form": "quotient verify",
    "poly.evaluate_numeric": "quiver sample",
    "rootdata.build_root_system": "rootdata",
    "rootdata.fold": "fold",
    "rootdata.weyl_generators": "flat --full",
    "rootdata.vanishing_roots": "rootdata --h",
    "rootdata.omega_average": "rootdata --h",
    "rootdata.mckay_dimension_vector": "rootdata",
    "rootdata.fundamental_coweights": "family (coefficient identities)",
    "klein.enumerate_group": "klein verify",
    "klein.klein_data": "klein verify",
    "klein.verify_invariance": "klein verify",
    "klein.verify_omega_action": "klein verify",
    "quiver.build_mckay_quiver": "quiver verify-action",
    "quiver.symplectic_form": "quiver verify-action",
    "quiver.moment_map": "quiver verify-action",
    "quiver.check_action_admissible": "quiver verify-action",
    "quiver.verify_symplectic_action": "quiver verify-action",
    "quiver.sample_moment_fibre": "quiver sample",
    "quiver.invariants_at_point": "quiver sample",
    "quiver.verify_moment_equivariance_numeric": "quiver verify-action",
    "flat.flat_coords_A": "flat --type A3",
    "flat.flat_coords_D": "flat --type D4",
    "flat.flat_coords_E6": "flat --type E6",
    "flat.epsilon_from_psi": "family --label B2",
    "flat.verify_w_invariance": "flat --type E6 --full",
    "deform.family": "family",
    "deform.verify_equivariance": "family",
    "deform.special_fibre_normal_form": "family",
    "deform.analyze_fibre": "fiber analyze",
    "quotient.quotient_family": "quotient verify",
    "quotient.verify_invariant_generators": "quotient verify",
    "quotient.verify_quotient_pullback": "quotient verify",
    "quotient.verify_singular_locus": "quotient verify",
    "quotient.discriminant_B2": "quotient discriminant",
    "quotient.non_semiuniversality_check": "quotient verify",
    "cli.run": "(entry point)",
    "cli.suite": "suite",
}


def run(argv) -> tuple:
    """Parse and execute; returns (exit_code, RunReport | None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code not in (0, None) else 0), None
    try:
        report = args.fn(args)
    except BudgetExceeded:
        return 3, None
    except (UnsupportedType, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    payload = report.to_json()
    if getattr(report, "payload", None) is not None:
        payload["payload"] = report.payload
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
            fh.write("\n")
    print(report.render_text())
    return (0 if report.ok else 1), report


def main():
    code, _ = run(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
