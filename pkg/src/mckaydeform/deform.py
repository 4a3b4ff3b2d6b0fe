"""Explicit deformation families, their symmetries, and fibre analysis.

The three family presentations:

* type A_{2r-1}: z^(2r) + sum (-1)^i f_i(t) z^(2r-i) = x y with the f_i the
  elementary symmetric functions written in flat coordinates;
* type D4: z^2 = xy(x+y) - t2/2 xy - t y - (t + t4/2)/2 x + (t6 + t2 t4/6
  + t t2 + t2^3/108)/4;
* type E6: the degree-12 normal form with sqrt(6)-normalised coefficients.

Restricting to the symmetry-fixed parameters yields the B_r, C3, G2, F4
families.  ``analyze_fibre`` locates singular points of a fibre through the
Jacobian ideal, computes local Tjurina numbers by translating each point to
the origin and saturating with powers of the maximal ideal, and classifies
ADE type by Hessian corank plus the root multiplicities of the restricted
cubic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .exact import (QQ, Cyclo, Radical, embed_complex, imag_unit, is_rat,
                    rat, scalar_to_json, sqrt6, sqrt_rational)
from .flat import (MU_VARS, epsilon_from_psi, psi_D_in_xi,
                   psi_E6_of_mu, xi_table)
from .poly import (Ideal, MPoly, VarTable, monomials_of_degree, quotient_basis)
from .rootdata import DynkinType, coweight_reflection_subs


class UnsupportedLabel(ValueError):
    pass


class NormalFormMismatch(AssertionError):
    pass


class UnclassifiedSingularity(Exception):
    pass


@dataclass
class DeformationFamily:
    label: str
    ambient_vars: tuple
    param_vars: tuple
    equation: MPoly               # fibre equation, = 0 on the family
    omega_action: dict            # generator -> substitution dict
    restricted: bool
    # generators that act on the base but whose printed ambient formula
    # only holds on the restricted locus (the D4 three-cycle)
    param_actions: dict = field(default_factory=dict)
    vars: VarTable = field(init=False)

    def __post_init__(self):
        self.vars = self.equation.vars

    def fibre_equation(self, values: dict) -> MPoly:
        """Equation of the fibre at exact parameter values."""
        subs = {}
        for v in self.param_vars:
            subs[v] = _exactify(values.get(v, QQ(0)))
        return self.equation.substitute(subs)

    def special_fibre(self) -> MPoly:
        return self.fibre_equation({})


def _exactify(v):
    if isinstance(v, float):
        from fractions import Fraction
        fr = Fraction(v).limit_denominator(10 ** 12)
        return QQ(fr.numerator, fr.denominator)
    if isinstance(v, (Cyclo, Radical)):
        return v
    if isinstance(v, str):
        return rat(v)
    return QQ(v)


def _variables(V, names):
    return [MPoly.variable(V, n) for n in names]


# -- family constructors -------------------------------------------------------

def family_A(r: int) -> DeformationFamily:
    """The full A_{2r-1} family over flat coordinates t_2 .. t_{2r}."""
    tnames = tuple(f"t{i}" for i in range(2, 2 * r + 1))
    V = VarTable(("x", "y", "z") + tnames)
    x, y, z = _variables(V, ("x", "y", "z"))
    eqn = z ** (2 * r) - x * y
    rename = {f"psi{i}": f"t{i}" for i in range(2, 2 * r + 1)}
    for i, _, f in epsilon_from_psi(r):
        fi = f.rename(rename).extend(V)
        eqn = eqn + fi * (QQ(-1) ** i) * z ** (2 * r - i)
    sgn = QQ(-1) ** r
    sigma = {"x": MPoly.variable(V, "y") * sgn,
             "y": MPoly.variable(V, "x") * sgn,
             "z": -MPoly.variable(V, "z")}
    for i in range(2, 2 * r + 1):
        sigma[f"t{i}"] = MPoly.variable(V, f"t{i}") * (QQ(-1) ** i)
    return DeformationFamily(f"A{2 * r - 1}", ("x", "y", "z"), tnames, eqn,
                             {"sigma": sigma}, restricted=False)


def family_B(r: int) -> DeformationFamily:
    """Restriction of A_{2r-1} to the fixed parameters (odd t's zero)."""
    base = family_A(r)
    tnames = tuple(f"t{i}" for i in range(2, 2 * r + 1, 2))
    V = VarTable(("x", "y", "z") + tnames)
    kill = {f"t{i}": QQ(0) for i in range(3, 2 * r + 1, 2)}
    eqn = base.equation.substitute(kill).extend(V)
    sgn = QQ(-1) ** r
    sigma = {"x": MPoly.variable(V, "y") * sgn,
             "y": MPoly.variable(V, "x") * sgn,
             "z": -MPoly.variable(V, "z")}
    return DeformationFamily(f"B{r}", ("x", "y", "z"), tnames, eqn,
                             {"sigma": sigma}, restricted=True)


def family_D4() -> DeformationFamily:
    tnames = ("t2", "t4", "t6", "t")
    V = VarTable(("x", "y", "z") + tnames)
    x, y, z = _variables(V, ("x", "y", "z"))
    t2, t4, t6, t = _variables(V, tnames)
    eqn = z ** 2 - x * y * (x + y) + t2 * x * y * QQ(1, 2) + t * y \
        + (t + t4 * QQ(1, 2)) * x * QQ(1, 2) \
        - (t6 + t2 * t4 * QQ(1, 6) + t * t2 + t2 ** 3 * QQ(1, 108)) * QQ(1, 4)
    sigma = {"x": x, "y": -x - y + t2 * QQ(1, 2), "z": -z, "t": -t}
    # the ambient three-cycle formula is exact only on the t4 = t = 0
    # locus; on the full base only its parameter part is carried
    rho_params = {"t4": t4 * QQ(-1, 2) - 3 * t,
                  "t": t4 * QQ(1, 4) - t * QQ(1, 2)}
    return DeformationFamily("D4", ("x", "y", "z"), tnames, eqn,
                             {"sigma": sigma}, restricted=False,
                             param_actions={"rho": rho_params})


def family_C3() -> DeformationFamily:
    base = family_D4()
    tnames = ("t2", "t4", "t6")
    V = VarTable(("x", "y", "z") + tnames)
    eqn = base.equation.substitute({"t": QQ(0)}).extend(V)
    x, y, z = _variables(V, ("x", "y", "z"))
    t2 = MPoly.variable(V, "t2")
    sigma = {"x": x, "y": -x - y + t2 * QQ(1, 2), "z": -z}
    return DeformationFamily("C3", ("x", "y", "z"), tnames, eqn,
                             {"sigma": sigma}, restricted=True)


def family_G2() -> DeformationFamily:
    base = family_D4()
    tnames = ("t2", "t6")
    V = VarTable(("x", "y", "z") + tnames)
    eqn = base.equation.substitute({"t": QQ(0), "t4": QQ(0)}).extend(V)
    x, y, z = _variables(V, ("x", "y", "z"))
    t2 = MPoly.variable(V, "t2")
    sigma = {"x": x, "y": -x - y + t2 * QQ(1, 2), "z": -z}
    rho = {"x": y, "y": -x - y + t2 * QQ(1, 2), "z": z}
    return DeformationFamily("G2", ("x", "y", "z"), tnames, eqn,
                             {"sigma": sigma, "rho": rho}, restricted=True)


def family_E6() -> DeformationFamily:
    tnames = ("t2", "t5", "t6", "t8", "t9", "t12")
    V = VarTable(("x", "y", "z") + tnames)
    x, y, z = _variables(V, ("x", "y", "z"))
    t2, t5, t6, t8, t9, t12 = _variables(V, tnames)
    r6 = sqrt6()
    eqn = x ** 4 * QQ(-1, 4) + y ** 3 + z ** 2 \
        - t2 * x ** 2 * y * QQ(1, 4) \
        + t5 * x * y * (r6 / 12) \
        + (t6 - t2 ** 3 * QQ(1, 8)) * x ** 2 * QQ(1, 48) \
        + (-t8 + t6 * t2 * QQ(1, 4) - t2 ** 4 * QQ(1, 192)) * y * QQ(1, 48) \
        + (-t9 + t5 * t2 ** 2 * QQ(1, 4)) * x * (r6 / 144) \
        + (t12 - t8 * t2 ** 2 * QQ(1, 8) - t6 ** 2 * QQ(1, 8)
           + t6 * t2 ** 3 * QQ(1, 96) - t5 ** 2 * t2) * QQ(1, 576)
    sigma = {"x": -x, "z": -z, "t5": -t5, "t9": -t9}
    return DeformationFamily("E6", ("x", "y", "z"), tnames, eqn,
                             {"sigma": sigma}, restricted=False)


def family_F4() -> DeformationFamily:
    base = family_E6()
    tnames = ("t2", "t6", "t8", "t12")
    V = VarTable(("x", "y", "z") + tnames)
    eqn = base.equation.substitute({"t5": QQ(0), "t9": QQ(0)}).extend(V)
    x, y, z = _variables(V, ("x", "y", "z"))
    sigma = {"x": -x, "z": -z}
    return DeformationFamily("F4", ("x", "y", "z"), tnames, eqn,
                             {"sigma": sigma}, restricted=True)


def family(label: str) -> DeformationFamily:
    label = label.upper()
    if label.startswith("A") and int(label[1:]) % 2 == 1:
        return family_A((int(label[1:]) + 1) // 2)
    if label.startswith("B"):
        return family_B(int(label[1:]))
    builders = {"D4": family_D4, "C3": family_C3, "G2": family_G2,
                "E6": family_E6, "F4": family_F4}
    if label in builders:
        return builders[label]()
    raise UnsupportedLabel(label)


# -- equivariance ---------------------------------------------------------------

def _full_subs(fam: DeformationFamily, gen: str) -> dict:
    subs = dict(fam.omega_action[gen])
    for name in fam.vars.names:
        subs.setdefault(name, MPoly.variable(fam.vars, name))
    return subs


def verify_equivariance(fam: DeformationFamily) -> dict:
    """The equation is exactly preserved and the generators satisfy their
    group relations on coordinates."""
    checks = []
    for gen in fam.omega_action:
        subs = _full_subs(fam, gen)
        residual = fam.equation.substitute(subs) - fam.equation
        checks.append({"check": f"{gen} preserves equation",
                       "ok": residual.is_zero(),
                       "residual_terms": len(residual.terms)})
        order = 2 if gen == "sigma" else 3
        current = {n: MPoly.variable(fam.vars, n) for n in fam.vars.names}
        for _ in range(order):
            current = {n: current[n].substitute(subs) for n in current}
        ok = all(current[n] == MPoly.variable(fam.vars, n)
                 for n in fam.vars.names)
        checks.append({"check": f"{gen}^{order} is the identity", "ok": ok})
    if {"sigma", "rho"} <= set(fam.omega_action):
        s = _full_subs(fam, "sigma")
        r = _full_subs(fam, "rho")

        def compose(outer, inner):
            return {n: inner[n].substitute(outer) for n in fam.vars.names}

        srs = compose(s, compose(r, s))
        rr = compose(r, r)
        checks.append({"check": "sigma rho sigma == rho^-1",
                       "ok": all(srs[n] == rr[n] for n in fam.vars.names)})
    return {"label": fam.label, "checks": checks,
            "ok": all(c["ok"] for c in checks)}


def parameter_action_matrix(fam: DeformationFamily, gen: str):
    """Linear action on the parameters (rows indexed like param_vars)."""
    source = {}
    if gen in fam.omega_action:
        source.update({k: v for k, v in fam.omega_action[gen].items()
                       if k in fam.param_vars})
    if gen in fam.param_actions:
        source.update(fam.param_actions[gen])
    n = len(fam.param_vars)
    M = [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)]
    for i, name in enumerate(fam.param_vars):
        if name not in source:
            continue
        p = source[name]
        row = [QQ(0)] * n
        for j, other in enumerate(fam.param_vars):
            row[j] = _linear_coeff(p, other)
        M[i] = row
    return M


def fixed_parameter_locus(fam: DeformationFamily):
    """Parameters forced to zero on the common fixed locus of the actions.

    Returns the sorted list of coordinate names when the fixed space is a
    coordinate subspace (all cases here), else the raw constraint rows.
    """
    gens = set(fam.omega_action) | set(fam.param_actions)
    n = len(fam.param_vars)
    rows = []
    for gen in gens:
        M = parameter_action_matrix(fam, gen)
        for i in range(n):
            row = [M[i][j] - (QQ(1) if i == j else QQ(0)) for j in range(n)]
            if any(row):
                rows.append(row)
    # exact RREF
    rp = 0
    pivots = []
    for col in range(n):
        piv = next((i for i in range(rp, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rp], rows[piv] = rows[piv], rows[rp]
        inv = rows[rp][col]
        rows[rp] = [x / inv for x in rows[rp]]
        for i in range(len(rows)):
            if i != rp and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rp])]
        pivots.append(col)
        rp += 1
    unit = all(
        sum(1 for x in rows[k] if x) == 1 for k in range(rp))
    if unit:
        return sorted(fam.param_vars[c] for c in pivots)
    return rows[:rp]


def verify_parameter_actions(fam: DeformationFamily) -> dict:
    """The stated linear parameter actions hold exactly upstairs on h.

    Checked by substituting the Cartan-space action into the flat
    coordinates: reversal-negation for type A, the order-3 map on the xi
    for D4, the vertex swap on mu for E6.
    """
    label = fam.label
    checks = []
    if label[0] in ("A", "B"):
        r = (int(label[1:]) + 1) // 2 if label[0] == "A" else int(label[1:])
        from .flat import psi_A_in_lambda
        psis = psi_A_in_lambda(r)
        LV = next(iter(psis.values())).vars
        n = 2 * r
        subs = {f"lam{i}": -MPoly.variable(LV, f"lam{n - 1 - i}")
                for i in range(n)}
        for i in range(2, n + 1):
            p = psis[f"psi{i}"]
            ok = (p.substitute(subs) - p * QQ(-1) ** i).is_zero()
            checks.append({"check": f"psi{i} -> (-1)^{i} psi{i}", "ok": ok})
    elif label in ("D4", "C3", "G2"):
        psis = psi_D_in_xi(3)
        XV = next(iter(psis.values())).vars
        xi = [MPoly.variable(XV, f"xi{i}") for i in range(1, 5)]
        half = QQ(1, 2)
        rho = {
            "xi1": (xi[0] + xi[1] + xi[2] + xi[3]) * half,
            "xi2": (xi[0] + xi[1] - xi[2] - xi[3]) * half,
            "xi3": (xi[0] - xi[1] + xi[2] - xi[3]) * half,
            "xi4": (-xi[0] + xi[1] + xi[2] - xi[3]) * half,
        }
        sigma = {"xi4": -xi[3]}
        p2, p4, p6, pp = (psis["psi2"], psis["psi4"], psis["psi6"],
                          psis["psi"])
        expect_rho = {
            "psi2": p2, "psi6": p6,
            "psi4": p4 * QQ(-1, 2) - pp * 3,
            "psi": p4 * QQ(1, 4) - pp * half,
        }
        for name, want in expect_rho.items():
            ok = (psis[name].substitute(rho) - want).is_zero()
            checks.append({"check": f"rho: {name}", "ok": ok})
        expect_sigma = {"psi2": p2, "psi4": p4, "psi6": p6, "psi": -pp}
        for name, want in expect_sigma.items():
            ok = (psis[name].substitute(sigma) - want).is_zero()
            checks.append({"check": f"sigma: {name}", "ok": ok})
    elif label in ("E6", "F4"):
        psis = psi_E6_of_mu()
        swap = {"mu1": MPoly.variable(MU_VARS, "mu2"),
                "mu2": MPoly.variable(MU_VARS, "mu1"),
                "mu4": MPoly.variable(MU_VARS, "mu5"),
                "mu5": MPoly.variable(MU_VARS, "mu4")}
        signs = {"psi2": 1, "psi5": -1, "psi6": 1, "psi8": 1, "psi9": -1,
                 "psi12": 1}
        from .poly import equal_mod_vars
        for name, q in psis.items():
            ok = True
            for part in (q.ev, q.od):
                if part.is_zero():
                    continue
                ok = ok and equal_mod_vars(part.substitute(swap),
                                           part * QQ(signs[name]))
            checks.append({"check": f"sigma: {name} -> "
                           f"{signs[name]:+d} {name}", "ok": ok})
    else:
        raise UnsupportedLabel(label)
    return {"label": label, "checks": checks,
            "ok": all(c["ok"] for c in checks)}


# -- special fibre normal forms ---------------------------------------------------

def special_fibre_normal_form(fam: DeformationFamily) -> dict:
    """Exact change of variables onto the Klein relation, plus the
    transported symmetry action compared with the printed action matrices.
    """
    from .klein import klein_data

    KV = VarTable(("X", "Y", "Z"))
    X, Y, Z = _variables(KV, ("X", "Y", "Z"))
    fam_fibre = fam.special_fibre()
    label = fam.label

    if label.startswith("B") or (label.startswith("A")
                                 and not fam.restricted):
        r = int(label[1:]) if label.startswith("B") else \
            (int(label[1:]) + 1) // 2
        klein = klein_data(DynkinType("A", 2 * r - 1))
        V = fam.vars
        # identity change up to slot names: (X, Y, Z) = (z, x, y)
        fwd = {"X": MPoly.variable(V, "z"), "Y": MPoly.variable(V, "x"),
               "Z": MPoly.variable(V, "y")}
        inv = {"z": X, "x": Y, "y": Z}
        image = klein.relation.substitute(fwd)
        match = (image - fam_fibre.extend(image.vars)).is_zero()
        zero_t = {n: QQ(0) for n in fam.param_vars}
        subs0 = {k: (v.substitute(zero_t) if isinstance(v, MPoly) else v)
                 for k, v in _full_subs(fam, "sigma").items()}
        got = _transport_linear(fwd, inv, subs0, V, KV)
        want = klein.omega_action["h"][1]
        ok_action = got is not None and _matrix_eq(got, want)
        return {"label": label, "change": "(X, Y, Z) = (z, x, y)",
                "relation_match": match, "action_match": ok_action,
                "ok": match and ok_action}

    if label in ("C3", "G2", "D4"):
        klein = klein_data(DynkinType("D", 4))
        u = Radical.generator(3, QQ(2))          # u = 2^(1/3)
        half_u = u * QQ(1, 2)                    # 4^(-1/3) = u/2
        V = fam.vars
        x, y, z = _variables(V, ("x", "y", "z"))
        fwd = {"X": -(x * half_u), "Y": -((y + x * QQ(1, 2)) * u),
               "Z": z}
        # inverse: x = -u^2 X, y = -(u^2/2) Y + (u^2/2) X
        u2 = u * u
        inv = {"x": X * (-u2),
               "y": Y * (u2 * QQ(-1, 2)) + X * (u2 * QQ(1, 2)),
               "z": Z}
        image = klein.relation.substitute(
            {k: v.extend(V) for k, v in
             {"X": fwd["X"], "Y": fwd["Y"], "Z": fwd["Z"]}.items()})
        match = (image - fam_fibre.extend(image.vars)).is_zero()
        gens = {"sigma": "h", "rho": "g"} if label != "C3" else {
            "sigma": "h"}
        action_ok = True
        details = {}
        for gen, klein_gen in gens.items():
            if gen not in fam.omega_action:
                continue
            zero_t = {n: QQ(0) for n in fam.param_vars}
            subs0 = {k: (v.substitute(zero_t) if isinstance(v, MPoly) else v)
                     for k, v in _full_subs(fam, gen).items()}
            got = _transport_linear(fwd, inv, subs0, V, KV)
            want = klein.omega_action[klein_gen][1]
            same = got is not None and _matrix_eq(got, want)
            details[gen] = same
            action_ok = action_ok and same
        return {"label": label, "change": "X=-4^(-1/3) x, "
                "Y=-4^(1/6) (y+x/2), Z=z",
                "relation_match": match, "action_match": action_ok,
                "per_generator": details, "ok": match and action_ok}

    if label in ("F4", "E6"):
        klein = klein_data(DynkinType("E", 6))
        i = imag_unit()
        one_i = QQ(1) + i    # (1+i)^4 = -4
        V = fam.vars
        fwd = {"X": MPoly.variable(V, "x") * (QQ(1) / one_i),
               "Y": MPoly.variable(V, "y"), "Z": MPoly.variable(V, "z")}
        inv = {"x": X * one_i, "y": Y, "z": Z}
        image = klein.relation.substitute(
            {"X": fwd["X"], "Y": fwd["Y"], "Z": fwd["Z"]})
        match = (image - fam_fibre.extend(image.vars)).is_zero()
        zero_t = {n: QQ(0) for n in fam.param_vars}
        subs0 = {k: (v.substitute(zero_t) if isinstance(v, MPoly) else v)
                 for k, v in _full_subs(fam, "sigma").items()}
        got = _transport_linear(fwd, inv, subs0, V, KV)
        want = klein.omega_action["g"][1]
        ok_action = got is not None and _matrix_eq(got, want)
        return {"label": label, "change": "x = (1+i) X",
                "relation_match": match, "action_match": ok_action,
                "ok": match and ok_action}

    raise UnsupportedLabel(label)


def _transport_linear(fwd, inv, action_subs, V, KV):
    """Matrix of P o alpha o P^-1 on (X, Y, Z); None if not linear."""
    out = []
    for name in ("X", "Y", "Z"):
        p = fwd[name].extend(V) if isinstance(fwd[name], MPoly) else fwd[name]
        moved = p.substitute(action_subs)
        back = moved.substitute(inv)
        row = []
        for target in ("X", "Y", "Z"):
            row.append(_linear_coeff(back, target))
        rest = back
        for target, c in zip(("X", "Y", "Z"), row):
            rest = rest - MPoly.variable(rest.vars, target) * c
        if not rest.is_zero():
            return None
        out.append(tuple(row))
    return tuple(out)


def _linear_coeff(p: MPoly, name: str):
    if name not in p.vars.index:
        return QQ(0)
    i = p.vars.index[name]
    total = QQ(0)
    for e, c in p.terms.items():
        if e[i] == 1 and sum(e) == 1:
            total = total + c
    return total


def _matrix_eq(A, B):
    return all(
        (QQ(A[i][j]) == QQ(B[i][j])) if (is_rat(A[i][j]) and is_rat(B[i][j]))
        else (A[i][j] == B[i][j])
        for i in range(3) for j in range(3))


# -- the D4 coefficient identities -----------------------------------------------

D4_MU = VarTable(("mu1", "mu2", "mu3", "mu4"))


def d4_mu_coefficients() -> dict:
    """The quartic-family coefficients as polynomials in mu_1..mu_4."""
    m1, m2, m3, m4 = _variables(D4_MU, D4_MU.names)
    A = -m1 * m2 - m2 * m3 - m2 * m4 - m2 ** 2 \
        - (m1 * m4 + m1 * m3 + m3 * m4 + m1 ** 2 + m3 ** 2 + m4 ** 2) \
        * QQ(1, 2)
    B = (m3 - m4) * (m3 + m4) * (2 * m2 + m3 + m4) \
        * (2 * m1 + 2 * m2 + m3 + m4) * QQ(1, 16)
    C = (m1 - m4) * (m1 + m4) * (2 * m2 + m1 + m4) \
        * (2 * m3 + 2 * m2 + m1 + m4) * QQ(1, 16)
    D = (2 * m1 * m2 + m1 * m3 + m1 * m4 + 2 * m2 ** 2 + 2 * m2 * m3
         + 2 * m2 * m4 + m3 * m4 + m4 ** 2) \
        * (m1 * m3 + m1 * m4 + 2 * m2 * m4 + m3 * m4 + m4 ** 2) \
        * (m1 * m3 - m1 * m4 - 2 * m2 * m4 - m3 * m4 - m4 ** 2) * QQ(-1, 32)
    return {"A": A, "B": B, "C": C, "D": D}


def d4_xi_of_mu() -> dict:
    """xi_k(mu) from mu <-> -sum mu_i Lambda_i^vee (D4 coweights)."""
    XV = xi_table(3)
    m = {f"mu{i}": MPoly.variable(D4_MU, f"mu{i}") for i in (1, 2, 3, 4)}
    half = QQ(1, 2)
    return {
        "xi1": -m["mu1"] - m["mu2"] - (m["mu3"] + m["mu4"]) * half,
        "xi2": -m["mu2"] - (m["mu3"] + m["mu4"]) * half,
        "xi3": -(m["mu3"] + m["mu4"]) * half,
        "xi4": (m["mu3"] - m["mu4"]) * half,
    }


def verify_d4_coefficients() -> dict:
    """W-invariance of the mu-coefficients and their flat-coordinate match."""
    coeffs = d4_mu_coefficients()
    checks = []
    D4 = DynkinType("D", 4)
    for j in (1, 2, 3, 4):
        subs = coweight_reflection_subs(D4, j, D4_MU.names)
        for name, p in coeffs.items():
            ok = (p.substitute(subs) - p).is_zero()
            checks.append({"check": f"{name} invariant under r_{j}",
                           "ok": ok})
    # flat-coordinate match through xi(mu)
    psis = psi_D_in_xi(3)
    ximu = d4_xi_of_mu()
    psimu = {name: p.substitute(ximu) for name, p in psis.items()}
    p2, p4, p6, pp = (psimu["psi2"], psimu["psi4"], psimu["psi6"],
                      psimu["psi"])
    expected = {
        "A": p2 * QQ(-1, 2),
        "B": -pp,
        "C": (pp + p4 * QQ(1, 2)) * QQ(-1, 2),
        "D": (p6 + p2 * p4 * QQ(1, 6) + pp * p2 + p2 ** 3 * QQ(1, 108))
        * QQ(1, 4),
    }
    for name in "ABCD":
        ok = (coeffs[name].extend(expected[name].vars)
              - expected[name]).is_zero()
        checks.append({"check": f"{name} matches its flat form", "ok": ok})
    return {"checks": checks, "ok": all(c["ok"] for c in checks)}


# -- the E6 coefficient identities -------------------------------------------------

PSI_E6_VARS = VarTable(("psi2", "psi5", "psi6", "psi8", "psi9", "psi12"))


def e6_flat_coefficients() -> dict:
    """The six E6 family coefficients as polynomials in the flat coordinates.

    A_x and A_xy carry a factor sqrt(6); they are stored as the rational
    polynomial multiplying sqrt(6)/144 resp. 1/(2 sqrt(6)) exactly as in
    the family equation.
    """
    p2, p5, p6, p8, p9, p12 = _variables(PSI_E6_VARS, PSI_E6_VARS.names)
    return {
        "A0": (p12 - p8 * p2 ** 2 * QQ(1, 8) - p6 ** 2 * QQ(1, 8)
               + p6 * p2 ** 3 * QQ(1, 96) - p5 ** 2 * p2) * QQ(1, 576),
        "Ax": (-p9 + p5 * p2 ** 2 * QQ(1, 4)),      # times sqrt(6)/144
        "Ay": (-p8 + p6 * p2 * QQ(1, 4) - p2 ** 4 * QQ(1, 192)) * QQ(1, 48),
        "Ax2": (p6 - p2 ** 3 * QQ(1, 8)) * QQ(1, 48),
        "Axy": p5,                                   # times 1/(2 sqrt(6))
        "Ax2y": p2 * QQ(-1, 4),
    }


def e6_mu_coefficients() -> dict:
    """The six coefficients as rational polynomials in mu_1..mu_6.

    psi5 and psi9 are sqrt(6) times rational polynomials, so every
    coefficient of the family is rational in mu after the normalisations.
    """
    psi = psi_E6_of_mu()
    E = {n: q.ev for n, q in psi.items()}
    O = {n: q.od for n, q in psi.items()}
    one = MPoly.constant(MU_VARS, QQ(1))
    out = {}
    out["A0"] = (E["psi12"] - E["psi8"] * E["psi2"] ** 2 * QQ(1, 8)
                 - E["psi6"] ** 2 * QQ(1, 8)
                 + E["psi6"] * E["psi2"] ** 3 * QQ(1, 96)
                 - O["psi5"] ** 2 * E["psi2"] * 6) * QQ(1, 576)
    # sqrt6/144 * (-psi9 + psi5 psi2^2 / 4) with psi_odd = sqrt6 * O
    out["Ax"] = (-O["psi9"] + O["psi5"] * E["psi2"] ** 2 * QQ(1, 4)) \
        * QQ(6, 144)
    out["Ay"] = (-E["psi8"] + E["psi6"] * E["psi2"] * QQ(1, 4)
                 - E["psi2"] ** 4 * QQ(1, 192)) * QQ(1, 48)
    out["Ax2"] = (E["psi6"] - E["psi2"] ** 3 * QQ(1, 8)) * QQ(1, 48)
    out["Axy"] = O["psi5"] * QQ(1, 2)     # (1/(2 sqrt6)) sqrt6 O5
    out["Ax2y"] = E["psi2"] * QQ(-1, 4)
    return out


def verify_e6_coefficients() -> dict:
    """Exact W-invariance of the six coefficients in mu coordinates."""
    coeffs = e6_mu_coefficients()
    E6 = DynkinType("E", 6)
    names = MU_VARS.names
    checks = []
    for j in range(1, 7):
        subs = coweight_reflection_subs(E6, j, names)
        for name, p in coeffs.items():
            ok = (p.substitute(subs) - p).is_zero()
            checks.append({"check": f"{name} invariant under r_{j}",
                           "ok": ok})
    return {"checks": checks, "ok": all(c["ok"] for c in checks)}


# -- singularity analysis -----------------------------------------------------------

@dataclass
class SingularPoint:
    coords_exact: tuple | None
    coords_numeric: tuple
    tjurina: int
    ade: str
    exact: bool

    def to_json(self):
        return {
            "coords": [scalar_to_json(c) for c in self.coords_exact]
            if self.coords_exact else None,
            "coords_numeric": [[z.real, z.imag] for z in
                               self.coords_numeric],
            "tjurina": self.tjurina, "ade": self.ade, "exact": self.exact,
        }


@dataclass
class SingularityReport:
    singular_points: list
    global_tjurina: object
    is_smooth: bool

    def to_json(self):
        return {"points": [p.to_json() for p in self.singular_points],
                "global_tjurina": self.global_tjurina,
                "smooth": self.is_smooth}


def _eval_exact(p: MPoly, point: dict):
    total = QQ(0)
    for e, c in p.terms.items():
        term = c
        for i, k in enumerate(e):
            if k:
                v = point[p.vars.names[i]]
                for _ in range(k):
                    term = term * v
        total = total + term
    return total


def _multiplication_matrix(ideal: Ideal, basis, name: str):
    V = ideal.vars
    lookup = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    M = np.zeros((n, n), dtype=complex)
    for j, e in enumerate(basis):
        mono = MPoly(V)
        e2 = list(e)
        e2[V.index[name]] += 1
        mono.terms[tuple(e2)] = QQ(1)
        nf = ideal.normal_form(mono)
        for e3, c in nf.terms.items():
            M[lookup[e3], j] = embed_complex(c)
    return M


def _cluster(values, radius=1e-6):
    out = []
    for v in sorted(values, key=lambda z: (z.real, z.imag)):
        for c in out:
            if abs(v - c[0]) < radius:
                c[1].append(v)
                break
        else:
            out.append([v, [v]])
    return [(sum(vs) / len(vs), len(vs)) for _, vs in
            ((c[0], c[1]) for c in out)]


def _reconstruct_scalar(z: complex, conductor: int = 24):
    """Recognise a complex number as an exact scalar, or return None.

    Tried in order: small rational, purely imaginary rational, square root
    of a rational that lies in Q(zeta_24), and i times such a root.
    """
    from fractions import Fraction

    def near_rat(x):
        # small denominators only, else irrationals sneak in as convergents
        fr = Fraction(x).limit_denominator(10 ** 4)
        return QQ(fr.numerator, fr.denominator) \
            if abs(x - float(fr)) < 1e-9 else None

    if abs(z.imag) < 1e-9:
        r = near_rat(z.real)
        if r is not None:
            return r
    if abs(z.real) < 1e-9:
        r = near_rat(z.imag)
        if r is not None and r == 0:
            return QQ(0)
        if r is not None:
            cand = imag_unit() * r
            if abs(embed_complex(cand) - z) < 1e-8:
                return cand
    sq = near_rat((z * z).real) if abs((z * z).imag) < 1e-9 else None
    if sq is not None:
        root = sqrt_rational(sq)
        if root is not None:
            for cand in (root, -root):
                if abs(embed_complex(cand) - z) < 1e-8:
                    return cand
    return None


def _hessian_rank_and_kernel(f2: MPoly, names):
    """Rank and kernel basis of the quadratic-part Gram matrix, exact."""
    V = f2.vars
    n = len(names)
    G = [[QQ(0)] * n for _ in range(n)]
    for e, c in f2.terms.items():
        support = [(i, e[V.index[nm]]) for i, nm in enumerate(names)
                   if e[V.index[nm]]]
        if sum(k for _, k in support) != 2:
            continue
        if len(support) == 1:
            i = support[0][0]
            G[i][i] = G[i][i] + c
        else:
            (i, _), (j, _) = support
            half = c * QQ(1, 2)
            G[i][j] = G[i][j] + half
            G[j][i] = G[j][i] + half
    # exact row reduction
    rows = [list(r) for r in G]
    pivots = []
    rp = 0
    cols = list(range(n))
    for col in cols:
        piv = None
        for i in range(rp, n):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rp], rows[piv] = rows[piv], rows[rp]
        inv = rows[rp][col]
        rows[rp] = [x / inv for x in rows[rp]]
        for i in range(n):
            if i != rp and rows[i][col]:
                fct = rows[i][col]
                rows[i] = [x - fct * y for x, y in zip(rows[i], rows[rp])]
        pivots.append(col)
        rp += 1
    rank = rp
    kernel = []
    free = [c for c in cols if c not in pivots]
    for fc in free:
        v = [QQ(0)] * n
        v[fc] = QQ(1)
        for k, pc in enumerate(pivots):
            v[pc] = -rows[k][fc]
        kernel.append(tuple(v))
    return rank, kernel


def _binary_cubic_class(c3, c2, c1, c0) -> str:
    """'distinct', 'double', 'triple', or 'zero' roots of a binary cubic."""
    if not any((c3, c2, c1, c0)):
        return "zero"
    disc = 18 * c3 * c2 * c1 * c0 - 4 * c2 ** 3 * c0 + c2 ** 2 * c1 ** 2 \
        - 4 * c3 * c1 ** 3 - 27 * c3 ** 2 * c0 ** 2
    if disc:
        return "distinct"
    # triple root iff the Hessian covariant vanishes identically
    h0 = c2 ** 2 - 3 * c3 * c1
    h1 = c2 * c1 - 9 * c3 * c0
    h2 = c1 ** 2 - 3 * c2 * c0
    if not any((h0, h1, h2)):
        return "triple"
    return "double"


def _local_tjurina(f: MPoly, names, max_n: int = 24) -> int:
    """Stabilised dimension of (f, df) + m^N at the origin."""
    V = f.vars
    gens = [f] + [f.diff(nm) for nm in names]
    prev = None
    for N in range(1, max_n):
        mN = monomials_of_degree(VarTable(names), N)
        mN = [m.extend(V) for m in mN]
        ideal = Ideal([g for g in gens if g] + mN)
        dim = ideal.quotient_dimension()
        if dim == prev:
            return dim
        prev = dim
    raise UnclassifiedSingularity("local dimension did not stabilise")


def _classify_point(f_local: MPoly, names, tjurina: int) -> str:
    """Hessian corank + restricted-cubic classifier (normal-form facts)."""
    f2 = f_local.homogeneous_part(2)
    rank, kernel = _hessian_rank_and_kernel(f2, names)
    corank = len(names) - rank
    if corank == 0:
        return "A1" if tjurina == 1 else "unclassified"
    if corank == 1:
        return f"A{tjurina}"
    if corank == 2:
        f3 = f_local.homogeneous_part(3)
        UV = VarTable(("u", "v"))
        u, v = _variables(UV, ("u", "v"))
        subs = {}
        k1, k2 = kernel[0], kernel[1]
        for i, nm in enumerate(names):
            subs[nm] = u * k1[i] + v * k2[i]
        cubic = f3.substitute(subs)
        coeffs = [QQ(0)] * 4
        for e, c in cubic.terms.items():
            coeffs[e[cubic.vars.index["u"]]] = c
        kind = _binary_cubic_class(coeffs[3], coeffs[2], coeffs[1],
                                   coeffs[0])
        if kind == "distinct":
            return "D4"
        if kind == "double":
            return f"D{tjurina}"
        if kind == "triple" and tjurina in (6, 7, 8):
            return f"E{tjurina}"
        return "unclassified"
    return "unclassified"


def analyze_hypersurface(f: MPoly, ambient_names=("x", "y", "z"),
                         budget: int = 10 ** 6) -> SingularityReport:
    """Singular points of the hypersurface f = 0 with local data.

    Points come from the Jacobian ideal: the quotient algebra of (f, df)
    is split numerically by the multiplication operators (coordinates =
    clustered eigenvalue combinations checked by residuals), then each
    point is reconstructed exactly if it lies in Q(zeta_24) possibly with
    one square root, verified by exact normal-form evaluation.
    """
    names = list(ambient_names)
    gens = [f] + [f.diff(nm) for nm in names]
    ideal = Ideal([g for g in gens if g], budget=budget)
    dim = ideal.quotient_dimension()
    if dim == 0:
        return SingularityReport([], 0, True)
    if dim == "infinite":
        return SingularityReport([], "infinite", False)
    basis = quotient_basis(ideal)
    mats = {nm: _multiplication_matrix(ideal, basis, nm) for nm in names}
    combo = (0.7548776662 * mats[names[0]]
             + 0.5695432530 * mats[names[1]]
             + 0.3256890013 * mats[names[2]])
    w = np.linalg.eigvals(combo)
    clusters = _cluster(list(w))
    coord_values = {nm: _cluster(list(np.linalg.eigvals(mats[nm])))
                    for nm in names}
    points = []
    for wc, mult in clusters:
        best = None
        for triple in itertools.product(*(coord_values[nm]
                                          for nm in names)):
            vals = [t[0] for t in triple]
            key = 0.7548776662 * vals[0] + 0.5695432530 * vals[1] \
                + 0.3256890013 * vals[2]
            if abs(key - wc) < 1e-6:
                res = max(abs(g.evaluate_numeric(dict(zip(names, vals))))
                          for g in gens if g)
                if res < 1e-8 and (best is None or res < best[1]):
                    best = (vals, res)
        if best is None:
            raise UnclassifiedSingularity(
                "eigenvalue clusters do not pair into points")
        points.append((best[0], mult))

    out = []
    total = 0
    for vals, mult in points:
        exact_coords = []
        for v in vals:
            e = _reconstruct_scalar(v)
            exact_coords.append(e)
        have_exact = all(e is not None for e in exact_coords)
        if have_exact:
            point = dict(zip(names, exact_coords))
            if any(_eval_exact(g, point) for g in gens if g):
                have_exact = False
        if have_exact:
            shift = {nm: MPoly.variable(f.vars, nm)
                     + MPoly.constant(f.vars, c)
                     for nm, c in zip(names, exact_coords)}
            f_loc = f.substitute(shift)
            tj = _local_tjurina(f_loc, names)
            label = _classify_point(f_loc, names, tj)
            out.append(SingularPoint(tuple(exact_coords),
                                     tuple(complex(v) for v in vals),
                                     tj, label, True))
            total += tj
        else:
            out.append(SingularPoint(None,
                                     tuple(complex(v) for v in vals),
                                     mult, "unclassified", False))
            total += mult
    if total != dim:
        # local data must add up to the global quotient dimension
        raise UnclassifiedSingularity(
            f"local dimensions {total} != global {dim}")
    out.sort(key=lambda p: (p.coords_numeric[0].real,
                            p.coords_numeric[0].imag))
    return SingularityReport(out, dim, False)


def analyze_fibre(fam: DeformationFamily, values: dict,
                  budget: int = 10 ** 6) -> SingularityReport:
    """Singularity report of the fibre of a family at parameter values."""
    return analyze_hypersurface(fam.fibre_equation(values),
                                fam.ambient_vars, budget=budget)
