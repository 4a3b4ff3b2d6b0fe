"""Flat coordinate systems on h/W for types A_{2r-1}, D_{r+1} and E6.

Type A flat coordinates are polynomials in the elementary symmetric
functions eps_i of the eigenvalue coordinates; type D uses the elementary
symmetric functions x_{2i} of the squares plus the odd product coordinate;
type E6 is generated from the two differential operators on the invariants
p_i = x_i^2 + y_i^2, q_i = x_i^3/3 - x_i y_i^2 of the 27-line model.

The series coefficients use the rising factorial (a, n) = a (a+1) ...
(a+n-1) and never truncate: for fixed degree i only finitely many
compositions contribute.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import QQ, Cyclo
from .poly import MPoly, VarTable
from .rootdata import DynkinType


def pochhammer(a, n: int):
    out = QQ(1)
    for k in range(n):
        out = out * (a + k)
    return out


def _compositions(total: int, parts):
    """Ordered tuples from ``parts`` summing to ``total``."""
    if total == 0:
        yield ()
        return
    for p in parts:
        if p <= total:
            for rest in _compositions(total - p, parts):
                yield (p,) + rest


@dataclass
class FlatSystem:
    dtype: DynkinType
    coxeter_number: int
    coords: list          # ordered (degree, name, MPoly in natural vars)
    natural_vars: VarTable

    def by_degree(self, d):
        for deg, name, p in self.coords:
            if deg == d:
                return p
        raise KeyError(d)

    def names(self):
        return [name for _, name, _ in self.coords]


def _saito_series(i: int, h: int, gens: dict, vars: VarTable) -> MPoly:
    """psi_i = sum_d (-1)^(d-1) ((h-i+1)/h, d-1)/d! * X_i^d."""
    total = MPoly(vars)
    parts = sorted(gens)
    max_d = i // min(parts)
    fact = QQ(1)
    for d in range(1, max_d + 1):
        fact = fact * d
        coeff = QQ(-1) ** (d - 1) * pochhammer(QQ(h - i + 1, h), d - 1) / fact
        comp_sum = MPoly(vars)
        for comp in _compositions(i, parts):
            if len(comp) != d:
                continue
            term = MPoly.constant(vars, QQ(1))
            for j in comp:
                term = term * gens[j]
            comp_sum = comp_sum + term
        if comp_sum:
            total = total + comp_sum * coeff
    return total


def flat_coords_A(r: int) -> FlatSystem:
    """Flat coordinates psi_2 .. psi_2r of A_{2r-1} in the eps variables."""
    if r < 2:
        raise ValueError("need r >= 2")
    h = 2 * r
    names = tuple(f"eps{i}" for i in range(2, 2 * r + 1))
    V = VarTable(names)
    gens = {i: MPoly.variable(V, f"eps{i}") for i in range(2, 2 * r + 1)}
    coords = []
    for i in range(2, 2 * r + 1):
        coords.append((i, f"psi{i}", _saito_series(i, h, gens, V)))
    return FlatSystem(DynkinType("A", 2 * r - 1), h, coords, V)


def flat_coords_D(r: int) -> FlatSystem:
    """Flat coordinates psi_2, psi_4, ..., psi_2r, psi of D_{r+1}.

    Natural variables are x_{2i} (elementary symmetric in the xi^2) and the
    coordinate ``psi`` = prod(xi) itself.
    """
    if r < 3:
        raise ValueError("need r >= 3")
    h = 2 * r
    names = tuple(f"x{2 * i}" for i in range(1, r + 1)) + ("psi",)
    V = VarTable(names)
    gens = {2 * i: MPoly.variable(V, f"x{2 * i}") for i in range(1, r + 1)}
    coords = []
    for i in range(1, r + 1):
        coords.append((2 * i, f"psi{2 * i}",
                       _saito_series(2 * i, h, gens, V)))
    coords.append((r + 1, "psi", MPoly.variable(V, "psi")))
    return FlatSystem(DynkinType("D", r + 1), h, coords, V)


def epsilon_from_psi(r: int) -> list:
    """eps_i as polynomials f_i in the flat coordinates psi_2 .. psi_2r."""
    h = 2 * r
    names = tuple(f"psi{i}" for i in range(2, 2 * r + 1))
    V = VarTable(names)
    gens = {i: MPoly.variable(V, f"psi{i}") for i in range(2, 2 * r + 1)}
    out = []
    for i in range(2, 2 * r + 1):
        total = MPoly(V)
        fact = QQ(1)
        for d in range(1, i // 2 + 1):
            fact = fact * d
            coeff = pochhammer(QQ(h - i + 1), d - 1) / (fact * QQ(h) ** (d - 1))
            comp_sum = MPoly(V)
            for comp in _compositions(i, sorted(gens)):
                if len(comp) != d:
                    continue
                term = MPoly.constant(V, QQ(1))
                for j in comp:
                    term = term * gens[j]
                comp_sum = comp_sum + term
            if comp_sum:
                total = total + comp_sum * coeff
        out.append((i, f"eps{i}", total))
    return out


# -- expansions into eigenvalue coordinates ----------------------------------

def elementary_symmetric(vars: VarTable, k: int) -> MPoly:
    names = vars.names
    out = MPoly(vars)
    for combo in itertools.combinations(range(len(names)), k):
        e = [0] * len(names)
        for i in combo:
            e[i] = 1
        out.terms[tuple(e)] = QQ(1)
    return out


def lambda_table(r: int) -> VarTable:
    return VarTable(tuple(f"lam{i}" for i in range(2 * r)))


def psi_A_in_lambda(r: int) -> dict:
    """psi_i expanded in the 2r eigenvalue variables lam0..lam{2r-1}."""
    fs = flat_coords_A(r)
    LV = lambda_table(r)
    eps = {f"eps{i}": elementary_symmetric(LV, i) for i in range(2, 2 * r + 1)}
    return {name: p.substitute(eps) for _, name, p in fs.coords}


def xi_table(r: int) -> VarTable:
    return VarTable(tuple(f"xi{i}" for i in range(1, r + 2)))


def psi_D_in_xi(r: int) -> dict:
    """D_{r+1} flat coordinates expanded in xi_1 .. xi_{r+1}."""
    fs = flat_coords_D(r)
    XV = xi_table(r)
    sq = {f"xi{i}": MPoly.variable(XV, f"xi{i}") ** 2
          for i in range(1, r + 2)}
    subs = {}
    for i in range(1, r + 1):
        subs[f"x{2 * i}"] = elementary_symmetric(XV, i).substitute(sq)
    prod = MPoly.constant(XV, QQ(1))
    for i in range(1, r + 2):
        prod = prod * MPoly.variable(XV, f"xi{i}")
    subs["psi"] = prod
    return {name: p.substitute(subs) for _, name, p in fs.coords}


# -- E6 ------------------------------------------------------------------------

PQ_VARS = VarTable(("p1", "p2", "p3", "q1", "q2", "q3"))
XY_VARS = VarTable(("x1", "y1", "x2", "y2", "x3", "y3"))

_CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


def _pq(name, i):
    return MPoly.variable(PQ_VARS, f"{name}{i}")


def theta_operator(f: MPoly) -> MPoly:
    """First Saito operator on polynomials in (p_i, q_i); degree +3."""
    out = MPoly(PQ_VARS)
    for i, j, k in _CYCLIC:
        cp = 3 * _pq("q", i) * (_pq("p", j) - _pq("p", k)) \
            - 2 * _pq("p", i) * (_pq("q", j) - _pq("q", k))
        cq = _pq("p", i) ** 2 * (_pq("p", j) - _pq("p", k)) * QQ(1, 2) \
            - 3 * _pq("q", i) * (_pq("q", j) - _pq("q", k))
        out = out + cp * f.diff(f"p{i}") + cq * f.diff(f"q{i}")
    return out


def delta_operator(f: MPoly) -> MPoly:
    """Second Saito operator; degree -2."""
    out = MPoly(PQ_VARS)
    for i in (1, 2, 3):
        pi, qi = f"p{i}", f"q{i}"
        out = out + 4 * (_pq("p", i) * f.diff(pi)).diff(pi)
        out = out + 12 * _pq("q", i) * f.diff(pi).diff(qi)
        out = out + _pq("p", i) ** 2 * f.diff(qi).diff(qi)
    return out


def e6_tower() -> dict:
    """The ladder A, B, H, C, J, K in the (p, q) variables."""
    A = _pq("p", 1) + _pq("p", 2) + _pq("p", 3)
    B = theta_operator(A) * QQ(1, 5)
    H = theta_operator(B)
    C = delta_operator(H) * QQ(1, 16)
    J = (theta_operator(C) - 3 * A ** 2 * B) * QQ(1, 9)
    K = theta_operator(J) * QQ(2, 3)
    return {"A": A, "B": B, "H": H, "C": C, "J": J, "K": K}


def flat_coords_E6() -> FlatSystem:
    t = e6_tower()
    A, B, H, C, J, K = (t[k] for k in "ABHCJK")
    coords = [
        (2, "psi2", A),
        (5, "psi5", B),
        (6, "psi6", C - A ** 3 * QQ(1, 8)),
        (8, "psi8", H - A * C * QQ(1, 4) + A ** 4 * QQ(5, 192)),
        (9, "psi9", J),
        (12, "psi12", K - A ** 2 * H * QQ(1, 8) - C ** 2 * QQ(1, 8)
         + A ** 3 * C * QQ(5, 96) - A * B ** 2 - A ** 6 * QQ(1, 256)),
    ]
    return FlatSystem(DynkinType("E", 6), 12, coords, PQ_VARS)


def pq_in_xy() -> dict:
    """p_i = x_i^2 + y_i^2 and q_i = x_i^3/3 - x_i y_i^2."""
    subs = {}
    for i in (1, 2, 3):
        x = MPoly.variable(XY_VARS, f"x{i}")
        y = MPoly.variable(XY_VARS, f"y{i}")
        subs[f"p{i}"] = x ** 2 + y ** 2
        subs[f"q{i}"] = x ** 3 * QQ(1, 3) - x * y ** 2
    return subs


def psi_E6_in_xy() -> dict:
    subs = pq_in_xy()
    fs = flat_coords_E6()
    return {name: p.substitute(subs) for _, name, p in fs.coords}


def pq_weighted_degrees(p: MPoly):
    """Set of (x,y)-degrees of a (p,q)-polynomial (p wt 2, q wt 3)."""
    weights = (2, 2, 2, 3, 3, 3)
    return {sum(w * k for w, k in zip(weights, e)) for e in p.terms}


def frame_reflection_subs(normal_key) -> dict:
    """The Frame reflection s_k = Id - 2 D_k D_k^T as a substitution."""
    from .rootdata import _frame_normals
    D = _frame_normals()[normal_key]
    names = XY_VARS.names
    subs = {}
    for i in range(6):
        p = MPoly(XY_VARS)
        for j in range(6):
            coef = (QQ(1) if i == j else QQ(0)) - 2 * D[i] * D[j]
            if isinstance(coef, Cyclo):
                coef = coef.reduce_rat()
            if coef:
                p = p + MPoly.variable(XY_VARS, names[j]) * coef
        subs[names[i]] = p
    return subs


FRAME_GENERATOR_KEYS = ((1, 0, 0), (0, 1, 0), (0, 0, 1),
                        (3, 0, 0), (0, 0, 3), (3, 3, 3))


def verify_w_invariance(fs: FlatSystem, generator_subs, expand=None) -> dict:
    """Exact invariance of each flat coordinate under each generator.

    ``generator_subs`` is a list of (label, substitution dict); ``expand``
    optionally maps the system into the variables the substitutions act on
    (e.g. the eigenvalue coordinates).
    """
    checks = []
    coords = [(name, (expand[name] if expand else p))
              for _, name, p in fs.coords]
    for label, subs in generator_subs:
        for name, p in coords:
            moved = p.substitute(subs)
            checks.append({"generator": label, "coordinate": name,
                           "ok": (moved - p).is_zero()})
    return {"checks": checks, "ok": all(c["ok"] for c in checks)}


# -- E6 flat coordinates in the coweight (mu) variables -----------------------

MU_VARS = VarTable(tuple(f"mu{i}" for i in range(1, 7)))


class Q6Poly:
    """Pair (even, odd) representing even + sqrt(6) * odd, both rational."""

    __slots__ = ("ev", "od")

    def __init__(self, ev=None, od=None):
        self.ev = ev if ev is not None else MPoly(MU_VARS)
        self.od = od if od is not None else MPoly(MU_VARS)

    def __add__(self, other):
        return Q6Poly(self.ev + other.ev, self.od + other.od)

    def __mul__(self, other):
        if isinstance(other, Q6Poly):
            return Q6Poly(self.ev * other.ev + self.od * other.od * 6,
                          self.ev * other.od + self.od * other.ev)
        return Q6Poly(self.ev * other, self.od * other)

    def is_rational(self):
        return self.od.is_zero()

    def is_sqrt6_multiple(self):
        return self.ev.is_zero()


def e6_xy_of_mu():
    """The linear map mu -> (x, y) of the 27-line model, split over sqrt(6).

    Returns (x_parts, y_parts): x_i = sqrt(6) * x_parts[i], y_i = sqrt(2) *
    y_parts[i] with rational linear forms in mu (mu_i = -lambda_i).
    """
    mu = [MPoly.variable(MU_VARS, f"mu{i}") for i in range(1, 7)]
    lam = [-m for m in mu]
    x1 = lam[0] * QQ(-1, 6) + lam[3] * QQ(-1, 3)
    y1 = lam[0] * QQ(1, 2)
    x2 = lam[0] * QQ(1, 6) + lam[1] * QQ(1, 6) + lam[3] * QQ(1, 3) \
        + lam[4] * QQ(1, 3) + lam[5] * QQ(1, 2)
    y2 = (lam[0] + lam[1]) * QQ(-1, 2) - lam[2] - lam[3] - lam[4] \
        - lam[5] * QQ(3, 2)
    x3 = lam[1] * QQ(-1, 6) + lam[4] * QQ(-1, 3)
    y3 = lam[1] * QQ(1, 2)
    return (x1, x2, x3), (y1, y2, y3)


def pq_of_mu():
    """p_i(mu), q_i(mu) as Q6Poly (p rational, q a sqrt(6) multiple)."""
    xs, ys = e6_xy_of_mu()
    out = {}
    for i in (1, 2, 3):
        x, y = xs[i - 1], ys[i - 1]
        # p = 6 x~^2 + 2 y~^2 ; q = sqrt6 (2 x~^3 - 2 x~ y~^2)
        out[f"p{i}"] = Q6Poly(x * x * 6 + y * y * 2)
        out[f"q{i}"] = Q6Poly(None, x ** 3 * QQ(2) - x * (y * y) * 2)
    return out


def psi_E6_of_mu() -> dict:
    """Each flat coordinate as a Q6Poly in mu1..mu6.

    Even-q-degree terms are rational; odd ones are sqrt(6) multiples (so
    psi5 and psi9 come out as pure sqrt(6) * rational).
    """
    pq = pq_of_mu()
    fs = flat_coords_E6()
    out = {}
    for _, name, poly in fs.coords:
        total = Q6Poly()
        power_cache = {}

        def powered(var, k):
            if (var, k) not in power_cache:
                base = pq[var]
                acc = Q6Poly(MPoly.constant(MU_VARS, QQ(1)))
                for _ in range(k):
                    acc = acc * base
                power_cache[(var, k)] = acc
            return power_cache[(var, k)]

        for e, c in poly.terms.items():
            term = Q6Poly(MPoly.constant(MU_VARS, QQ(1)))
            for idx, k in enumerate(e):
                if k:
                    term = term * powered(PQ_VARS.names[idx], k)
            total = total + term * c
        out[name] = total
    return out
