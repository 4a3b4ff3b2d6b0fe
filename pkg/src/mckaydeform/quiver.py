"""McKay quiver representation spaces, moment maps and symmetry actions.

The doubled quiver on the extended Dynkin diagram carries an orientation
eps with eps(a) = -eps(abar) = 1 on the chosen positive arrows.  The
symplectic form is sum_a eps(a) Tr(phi_a psi_abar) and the moment map has
vertex-v entry sum_{t(a)=v} eps(a) phi_a phi_abar.  Symmetry actions are
stored as an arrow bijection with scalar factors; admissibility couples
those scalars to the orientation (symplecticity) and to the central-fibre
conditions of the special fibre.

Symbolic identities run over MPoly symbol matrices; moment-map fibres are
sampled numerically (complex float shadow) for types A and D4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import QQ
from .poly import MPoly, VarTable
from .rootdata import (DynkinType, UnsupportedType, extended_edges,
                       mckay_dimension_vector)


class ShapeMismatch(ValueError):
    pass


class SingularSystem(RuntimeError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


class McKayQuiver:
    """Doubled quiver on the extended diagram with a signed orientation."""

    def __init__(self, base_type: DynkinType):
        self.base_type = base_type
        self.dims = mckay_dimension_vector(base_type)
        self.arrows = []
        self.orientation = {}
        self.reverse = {}
        pos = _positive_arrows(base_type)
        for name, src, tgt in pos:
            bar = "b" + name[1:] if name[0] == "a" else "pb" + name[2:]
            self.arrows.append(Arrow(name, src, tgt))
            self.arrows.append(Arrow(bar, tgt, src))
            self.orientation[name] = 1
            self.orientation[bar] = -1
            self.reverse[name] = bar
            self.reverse[bar] = name
        self.by_name = {a.name: a for a in self.arrows}

    def shape(self, arrow_name: str):
        a = self.by_name[arrow_name]
        return (self.dims[a.tgt], self.dims[a.src])

    def positive_arrows(self):
        return [a for a in self.arrows if self.orientation[a.name] == 1]

    def vertex_count(self):
        return len(self.dims)


def _positive_arrows(t: DynkinType):
    fam, r = t.family, t.rank
    if fam == "A":
        n = r + 1
        if r == 1:
            return [("a0", 0, 1), ("a1", 1, 0)]
        return [(f"a{i}", i, (i + 1) % n) for i in range(n)]
    if fam == "D":
        out = [("pa0", 0, 2), ("pa1", 1, 2)]
        out += [(f"pa{i}", i, i + 1) for i in range(2, r - 2)]
        out += [(f"pa{r - 1}", r - 1, r - 2), (f"pa{r}", r, r - 2)]
        return out
    if fam == "E" and r == 6:
        return [("pa0", 0, 3), ("pa3", 3, 6), ("pa1", 1, 4), ("pa4", 4, 6),
                ("pa2", 2, 5), ("pa5", 5, 6)]
    if fam == "E":
        edges = extended_edges(t)
        d = mckay_dimension_vector(t)
        # orient every edge toward the larger dimension (toward the centre)
        out = []
        for i, j in edges:
            src, tgt = (i, j) if d[i] <= d[j] else (j, i)
            out.append((f"pa{src}", src, tgt))
        return out
    raise UnsupportedType(f"no McKay quiver for {t}")


def build_mckay_quiver(t: DynkinType) -> McKayQuiver:
    return McKayQuiver(t)


# -- symbolic representations -------------------------------------------------

class SymbolicRep:
    """One MPoly matrix per arrow, entries fresh symbols."""

    def __init__(self, quiver: McKayQuiver, prefix: str = ""):
        self.quiver = quiver
        names = []
        for a in quiver.arrows:
            rows, cols = quiver.shape(a.name)
            if rows == 1 and cols == 1:
                names.append(f"{prefix}{a.name}")
            else:
                names.extend(f"{prefix}{a.name}_{i + 1}{j + 1}"
                             for i in range(rows) for j in range(cols))
        self.vars = VarTable(tuple(names))
        self.matrices = {}
        for a in quiver.arrows:
            rows, cols = quiver.shape(a.name)
            if rows == 1 and cols == 1:
                mat = ((MPoly.variable(self.vars, f"{prefix}{a.name}"),),)
            else:
                mat = tuple(
                    tuple(MPoly.variable(
                        self.vars, f"{prefix}{a.name}_{i + 1}{j + 1}")
                        for j in range(cols)) for i in range(rows))
            self.matrices[a.name] = mat


def _mat_mul_poly(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    if len(A[0]) != inner:
        raise ShapeMismatch("matrix product shape")
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = A[i][0] * B[0][j]
            for k in range(1, inner):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_trace(A):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def symplectic_form(quiver: McKayQuiver, phi: SymbolicRep,
                    psi: SymbolicRep) -> MPoly:
    """<phi, psi> = sum_a eps(a) Tr(phi_a psi_abar), an exact polynomial."""
    merged = VarTable(tuple(sorted(set(phi.vars.names) | set(psi.vars.names))))
    total = MPoly(merged)
    for a in quiver.arrows:
        P = tuple(tuple(x.extend(merged) for x in row)
                  for row in phi.matrices[a.name])
        Q = tuple(tuple(x.extend(merged) for x in row)
                  for row in psi.matrices[quiver.reverse[a.name]])
        term = _mat_trace(_mat_mul_poly(P, Q))
        total = total + term * QQ(quiver.orientation[a.name])
    return total


def moment_map(quiver: McKayQuiver, phi: SymbolicRep) -> dict:
    """Vertex v -> sum over arrows a with target v of eps(a) phi_a phi_abar."""
    out = {}
    for v in range(quiver.vertex_count()):
        d = quiver.dims[v]
        acc = tuple(tuple(MPoly(phi.vars) for _ in range(d))
                    for _ in range(d))
        for a in quiver.arrows:
            if a.tgt != v:
                continue
            prod = _mat_mul_poly(phi.matrices[a.name],
                                 phi.matrices[quiver.reverse[a.name]])
            sgn = QQ(quiver.orientation[a.name])
            acc = tuple(
                tuple(acc[i][j] + prod[i][j] * sgn for j in range(d))
                for i in range(d))
        out[v] = acc
    return out


def moment_trace(quiver: McKayQuiver, phi: SymbolicRep) -> MPoly:
    mm = moment_map(quiver, phi)
    total = MPoly(phi.vars)
    for v, mat in mm.items():
        total = total + _mat_trace(mat)
    return total


# -- symmetry actions ----------------------------------------------------------

@dataclass
class OmegaActionOnM:
    """(sigma phi)_slot = scalar * phi_source for each arrow slot."""
    label: str
    quiver: McKayQuiver
    vertex_perm: tuple            # pi[v] = image vertex
    arrow_map: dict               # slot name -> (source arrow name, scalar)

    def orientation_behavior(self) -> str:
        eps = self.quiver.orientation
        kinds = {eps[src] * eps[slot]
                 for slot, (src, _) in self.arrow_map.items()}
        if kinds == {1}:
            return "preserves"
        if kinds == {-1}:
            return "reverses"
        return "mixed"

    def apply_symbolic(self, rep: SymbolicRep) -> dict:
        """Matrices of sigma.rep, on rep's symbol table."""
        out = {}
        for slot, (src, scalar) in self.arrow_map.items():
            mat = rep.matrices[src]
            out[slot] = tuple(tuple(x * scalar for x in row) for row in mat)
        for a in self.quiver.arrows:
            if a.name not in out:
                out[a.name] = rep.matrices[a.name]
        return out

    def apply_numeric(self, rep: dict) -> dict:
        out = {}
        for a in self.quiver.arrows:
            if a.name in self.arrow_map:
                src, scalar = self.arrow_map[a.name]
                out[a.name] = complex(QQ(scalar)) * rep[src]
            else:
                out[a.name] = rep[a.name]
        return out

    def scalar(self, slot: str):
        if slot in self.arrow_map:
            return QQ(self.arrow_map[slot][1])
        return QQ(1)

    def pair_products(self) -> dict:
        """Product of the two slot scalars on each positive-arrow pair."""
        out = {}
        for a in self.quiver.positive_arrows():
            bar = self.quiver.reverse[a.name]
            out[a.name] = self.scalar(a.name) * self.scalar(bar)
        return out


def symbolic_action_order(act: OmegaActionOnM, cap: int = 6) -> int:
    rep = SymbolicRep(act.quiver)
    current = {a.name: rep.matrices[a.name] for a in act.quiver.arrows}
    for k in range(1, cap + 1):
        moved = {}
        for slot, (src, scalar) in act.arrow_map.items():
            moved[slot] = tuple(tuple(x * scalar for x in row)
                                for row in current[src])
        for a in act.quiver.arrows:
            moved.setdefault(a.name, current[a.name])
        current = moved
        if all(current[a.name] == rep.matrices[a.name]
               for a in act.quiver.arrows):
            return k
    raise ValueError(f"action order exceeds {cap}")


def check_action_admissible(act: OmegaActionOnM) -> dict:
    """Orientation/scalar conditions for a symplectic, fibre-compatible action.

    Rows: (1) per-pair symplectic compatibility s_c s_cbar =
    eps(image)/eps(slot); (2) the central-fibre scalar conditions of the
    action table for the quiver's type; (3) the required orientation
    behavior (reversed exactly for odd-A involutions); (4) the group
    relation on symbols.
    """
    q = act.quiver
    t = q.base_type
    rows = []
    eps = q.orientation
    sympl_ok = True
    for slot, (src, scalar) in act.arrow_map.items():
        bar_slot = q.reverse[slot]
        bar_src, bar_scalar = act.arrow_map.get(bar_slot, (bar_slot, QQ(1)))
        want = QQ(eps[src] * eps[slot])
        have = QQ(scalar) * QQ(bar_scalar)
        if q.reverse[src] != bar_src:
            sympl_ok = False
        if have != want:
            sympl_ok = False
    rows.append({"condition": "symplectic_orientation_compatibility",
                 "ok": sympl_ok})

    pair = act.pair_products()
    if t.family == "A" and t.rank % 2 == 1:
        r = (t.rank + 1) // 2
        lam = QQ(1)
        delta = QQ(1)
        for a in q.positive_arrows():
            lam = lam * act.scalar(a.name)
            delta = delta * act.scalar(q.reverse[a.name])
        prods_ok = all(v == -1 for v in pair.values())
        rows.append({"condition": "lambda_i*delta_i == -1", "ok": prods_ok})
        rows.append({"condition": "prod(lambda) == prod(delta) == (-1)^r",
                     "ok": lam == delta == QQ(-1) ** r})
        want_behavior = "reverses"
    else:
        moved_pairs = {slot for slot in act.arrow_map
                       if act.arrow_map[slot][0] != slot}
        prods_ok = all(
            pair[a.name] == 1 for a in q.positive_arrows()
            if a.name in moved_pairs or q.reverse[a.name] in moved_pairs)
        rows.append({"condition": "moved-pair scalar products == 1",
                     "ok": prods_ok})
        want_behavior = "preserves"
    rows.append({"condition": f"orientation behavior == {want_behavior}",
                 "ok": act.orientation_behavior() == want_behavior})
    try:
        order = symbolic_action_order(act)
        rows.append({"condition": "finite order on M(Gamma)", "ok": True,
                     "order": order})
    except ValueError:
        rows.append({"condition": "finite order on M(Gamma)", "ok": False})
    return {"label": act.label, "rows": rows,
            "ok": all(r["ok"] for r in rows)}


def verify_symplectic_action(act: OmegaActionOnM) -> bool:
    """<sigma phi, sigma psi> == <phi, psi> as an exact symbolic identity."""
    q = act.quiver
    phi = SymbolicRep(q, "f_")
    psi = SymbolicRep(q, "g_")
    base = symplectic_form(q, phi, psi)
    moved_phi = act.apply_symbolic(phi)
    moved_psi = act.apply_symbolic(psi)

    class _View:
        def __init__(self, vars, matrices):
            self.vars = vars
            self.matrices = matrices

    form = symplectic_form(q, _View(phi.vars, moved_phi),
                           _View(psi.vars, moved_psi))
    return (form - base).is_zero()


# -- reference actions ---------------------------------------------------------

def reference_action(t: DynkinType, generator: str = "sigma",
                     flip: str | None = None) -> OmegaActionOnM:
    """The concrete admissible actions used throughout the computations.

    ``flip`` names an arrow slot whose scalar is negated, producing the
    deliberately broken variant used to exercise the failure paths.
    """
    q = build_mckay_quiver(t)
    fam, r = t.family, t.rank
    arrow_map = {}
    if fam == "A" and r % 2 == 1 and generator == "sigma":
        n = r + 1
        half = n // 2
        perm = tuple((-v) % n for v in range(n))
        for i in range(n):
            j = n - 1 - i
            s_a = QQ(-1) if i < half else QQ(1)
            s_b = QQ(1) if i < half else QQ(-1)
            arrow_map[f"a{i}"] = (f"b{j}", s_a)
            arrow_map[f"b{i}"] = (f"a{j}", s_b)
    elif t == DynkinType("D", 4) and generator == "sigma":
        perm = (0, 1, 2, 4, 3)
        for i, j in ((3, 4), (4, 3)):
            arrow_map[f"pa{i}"] = (f"pa{j}", QQ(1))
            arrow_map[f"pb{i}"] = (f"pb{j}", QQ(1))
    elif t == DynkinType("D", 4) and generator == "rho":
        perm = (0, 4, 2, 1, 3)  # vertices 1 -> 4 -> 3 -> 1
        source = {1: 3, 3: 4, 4: 1}
        for i, j in source.items():
            arrow_map[f"pa{i}"] = (f"pa{j}", QQ(1))
            arrow_map[f"pb{i}"] = (f"pb{j}", QQ(1))
    elif t == DynkinType("E", 6) and generator == "sigma":
        perm = (0, 2, 1, 3, 5, 4, 6)
        for i, j in ((1, 2), (2, 1), (4, 5), (5, 4)):
            arrow_map[f"pa{i}"] = (f"pa{j}", QQ(1))
            arrow_map[f"pb{i}"] = (f"pb{j}", QQ(1))
    elif fam == "D" and r >= 5 and generator == "sigma":
        perm = tuple(range(r - 1)) + (r, r - 1)
        for i, j in ((r - 1, r), (r, r - 1)):
            arrow_map[f"pa{i}"] = (f"pa{j}", QQ(1))
            arrow_map[f"pb{i}"] = (f"pb{j}", QQ(1))
    else:
        raise UnsupportedType(f"no reference action for {t}/{generator}")
    if flip is not None:
        src, sc = arrow_map[flip]
        arrow_map[flip] = (src, -sc)
    return OmegaActionOnM(f"{t}:{generator}", q, perm, arrow_map)


# -- numeric shadow -------------------------------------------------------------

def _rng_annulus(rng, shape=()):
    """Complex numbers with modulus in [0.5, 2] (conditioning control)."""
    mod = rng.uniform(0.5, 2.0, size=shape)
    arg = rng.uniform(0.0, 2 * np.pi, size=shape)
    return mod * np.exp(1j * arg)


def random_numeric_rep(quiver: McKayQuiver, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    out = {}
    for a in quiver.arrows:
        out[a.name] = _rng_annulus(rng, quiver.shape(a.name))
    return out


def numeric_moment_map(quiver: McKayQuiver, rep: dict) -> list:
    out = []
    for v in range(quiver.vertex_count()):
        d = quiver.dims[v]
        acc = np.zeros((d, d), dtype=complex)
        for a in quiver.arrows:
            if a.tgt != v:
                continue
            acc += quiver.orientation[a.name] * (
                rep[a.name] @ rep[quiver.reverse[a.name]])
        out.append(acc)
    return out


def verify_moment_equivariance_numeric(act: OmegaActionOnM, seed: int = 0,
                                       trials: int = 100) -> dict:
    """mu(sigma.phi) equals the vertex-permuted mu(phi) on random points."""
    q = act.quiver
    worst = 0.0
    inv = [0] * len(act.vertex_perm)
    for v, w in enumerate(act.vertex_perm):
        inv[w] = v
    for k in range(trials):
        rep = random_numeric_rep(q, seed + k)
        mm = numeric_moment_map(q, rep)
        mm2 = numeric_moment_map(q, act.apply_numeric(rep))
        for v in range(q.vertex_count()):
            delta = np.max(np.abs(mm2[v] - mm[inv[v]]))
            worst = max(worst, float(delta))
    return {"label": act.label, "trials": trials, "max_residual": worst,
            "ok": worst < 1e-9}


# -- moment-map fibre sampling ---------------------------------------------------

def sample_moment_fibre(t: DynkinType, central, seed: int = 0) -> dict:
    """One numeric point of the moment-map fibre over a central value.

    Type A: the cycle telescopes, so the products c_i = a_i b_i are fixed
    by c_0 and the central value; a_i is drawn, b_i = c_i / a_i.  Type D4:
    the four columns are drawn and the four rows solve the (rank 7) linear
    system given by the outer-vertex scalars and the centre 2x2 block.
    """
    q = build_mckay_quiver(t)
    rng = np.random.default_rng(seed)
    z = [complex(v) for v in central]
    total = sum(d * m for d, m in zip(q.dims, z))
    if abs(total) > 1e-12:
        raise ValueError("central value must satisfy sum d_i z_i = 0")
    if t.family == "A":
        n = t.rank + 1
        if len(z) != n:
            raise ValueError("central value arity")
        c0 = complex(_rng_annulus(rng))
        c = [c0]
        for i in range(1, n):
            c.append(c[i - 1] - z[i])
        a = [complex(_rng_annulus(rng)) for _ in range(n)]
        rep = {}
        for i in range(n):
            rep[f"a{i}"] = np.array([[a[i]]])
            rep[f"b{i}"] = np.array([[c[i] / a[i]]])
        return {"rep": rep, "quiver": q, "central": z}
    if t == DynkinType("D", 4):
        if len(z) != 5:
            raise ValueError("central value arity")
        outer = (0, 1, 3, 4)
        for attempt in range(10):
            cols = {i: _rng_annulus(rng, (2, 1)) for i in outer}
            # unknowns: rows r0, r1, r3, r4 stacked as an 8-vector
            A = np.zeros((8, 8), dtype=complex)
            rhs = np.zeros(8, dtype=complex)
            for idx, i in enumerate(outer):
                A[idx, 2 * idx: 2 * idx + 2] = cols[i][:, 0]
                rhs[idx] = -z[_vertex_index_d4(i)]
            # centre block: sum_i cols_i rows_i = z_2 * Id
            eq = 4
            for p in range(2):
                for qq in range(2):
                    for idx, i in enumerate(outer):
                        A[eq, 2 * idx + qq] += cols[i][p, 0]
                    rhs[eq] = z[2] if p == qq else 0.0
                    eq += 1
            sol, residuals, rank, _ = np.linalg.lstsq(A, rhs, rcond=None)
            rep = {}
            for idx, i in enumerate(outer):
                rep[f"pa{i}"] = cols[i]
                rep[f"pb{i}"] = sol[2 * idx: 2 * idx + 2].reshape(1, 2)
            mm = numeric_moment_map(q, rep)
            res = _fibre_residual_d4(mm, z)
            if res <= 1e-10:
                return {"rep": rep, "quiver": q, "central": z}
        raise SingularSystem("no well-conditioned sample in 10 attempts")
    raise UnsupportedType(f"no sampler for {t}")


def _vertex_index_d4(i):
    return i


def _fibre_residual_d4(mm, z):
    res = 0.0
    for v in (0, 1, 3, 4):
        res = max(res, abs(mm[v][0, 0] - z[v]))
    res = max(res, float(np.max(np.abs(mm[2] - z[2] * np.eye(2)))))
    return res


def fibre_residual(sample: dict) -> float:
    """Largest moment-map equation residual of a sample."""
    q = sample["quiver"]
    mm = numeric_moment_map(q, sample["rep"])
    z = sample["central"]
    res = 0.0
    for v in range(q.vertex_count()):
        d = q.dims[v]
        res = max(res, float(np.max(np.abs(mm[v] - z[v] * np.eye(d)))))
    return res


def invariants_at_point(t: DynkinType, sample: dict):
    """The invariant coordinates (x, y, z) of a sampled fibre point."""
    rep = sample["rep"]
    if t.family == "A":
        n = t.rank + 1
        a = [rep[f"a{i}"][0, 0] for i in range(n)]
        b = [rep[f"b{i}"][0, 0] for i in range(n)]
        x = np.prod(a)
        y = np.prod(b)
        zc = sum(ai * bi for ai, bi in zip(a, b)) / n
        return complex(x), complex(y), complex(zc)
    if t == DynkinType("D", 4):
        mu = sample["central"]
        m = {i: rep[f"pa{i}"] @ rep[f"pb{i}"] for i in (0, 1, 3, 4)}
        p03 = complex(np.trace(m[0] @ m[3]))
        p34 = complex(np.trace(m[3] @ m[4]))
        q034 = complex(np.trace(m[4] @ m[3] @ m[0]))
        mu0, mu1, mu2, mu3, mu4 = mu
        x = p34 + (mu3 - mu4) ** 2 / 4
        y = p03 + (mu3 - mu0) ** 2 / 4
        zc = q034 - (p03 * (mu3 - mu4) + p34 * (mu3 - mu0)
                     + mu3 * (mu2 + mu3) * (mu1 + mu2 + mu3)) / 2
        return complex(x), complex(y), complex(zc)
    raise UnsupportedType(f"no invariants for {t}")


def d4_trace_invariants(sample: dict) -> dict:
    """Raw cycle traces of a D4 sample (for the trace-identity checks)."""
    rep = sample["rep"]
    m = {i: rep[f"pa{i}"] @ rep[f"pb{i}"] for i in (0, 1, 3, 4)}
    out = {}
    for i in (0, 1, 3, 4):
        for j in (0, 1, 3, 4):
            if i < j:
                out[f"p{i}{j}"] = complex(np.trace(m[i] @ m[j]))
    out["q034"] = complex(np.trace(m[4] @ m[3] @ m[0]))
    out["q030"] = complex(np.trace(m[0] @ m[3] @ m[0]))
    out["q343"] = complex(np.trace(m[3] @ m[4] @ m[3]))
    return out


def lambda_from_central(central) -> list:
    """Eigenvalue parameters from a type-A central value.

    tau sends the central value to h with alpha_i(h) = -z_i; for the cycle
    this pins lambda_i - lambda_{i-1} = z_i with sum(lambda) = 0.
    """
    z = [complex(v) for v in central]
    lam = [0j]
    for i in range(1, len(z)):
        lam.append(lam[i - 1] + z[i])
    mean = sum(lam) / len(lam)
    return [v - mean for v in lam]
