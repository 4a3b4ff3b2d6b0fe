"""Root systems, diagram automorphisms, foldings and McKay dimension data.

Types A_r and D_r live in Bourbaki orthonormal coordinates over Q.  Type E6
uses the six-dimensional model in which the Weyl group is the symmetry group
of the 27-vertex polytope: simple roots are sqrt(2) times the unit normals
of six reflection hyperplanes, with coordinates in Q(zeta_24) (they involve
sqrt(2), sqrt(3), sqrt(6)).  The E6 vertex numbering follows the deformation
computations, not the reference-book order; ``E6_TO_BOURBAKI`` translates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import QQ, Cyclo, embed_complex, is_rat, sqrt2, sqrt3


class UnsupportedType(ValueError):
    pass


class InvalidAutomorphism(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        fam, r = self.family, self.rank
        ok = (fam == "A" and r >= 1) or (fam == "B" and r >= 2) \
            or (fam == "C" and r >= 3) or (fam == "D" and r >= 4) \
            or (fam == "E" and r in (6, 7, 8)) or (fam == "F" and r == 4) \
            or (fam == "G" and r == 2)
        if not ok:
            raise UnsupportedType(f"invalid Dynkin type {fam}{r}")

    @property
    def homogeneous(self) -> bool:
        return self.family in ("A", "D", "E")

    def __str__(self):
        return f"{self.family}{self.rank}"


def parse_type(text: str) -> DynkinType:
    return DynkinType(text[0].upper(), int(text[1:]))


# Paper numbering of the E6 diagram: chain 1-4-6-5-2 with 3 on the centre 6.
E6_EDGES = ((1, 4), (4, 6), (6, 3), (6, 5), (5, 2))
E6_TO_BOURBAKI = {1: 1, 4: 3, 6: 4, 3: 2, 5: 5, 2: 6}


def dynkin_edges(t: DynkinType):
    """Unordered edges of the Dynkin diagram, vertices 1..rank."""
    fam, r = t.family, t.rank
    if fam == "A":
        return tuple((i, i + 1) for i in range(1, r))
    if fam == "D":
        # alpha_i = e_i - e_{i+1} (i < r), alpha_r = e_{r-1} + e_r:
        # chain 1..r-1 plus r attached to r-2.
        return tuple((i, i + 1) for i in range(1, r - 1)) + ((r - 2, r),)
    if fam == "E" and r == 6:
        return E6_EDGES
    if fam == "E" and r == 7:
        return ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4))
    if fam == "E" and r == 8:
        return ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))
    raise UnsupportedType(f"no simply laced diagram for {t}")


def cartan_matrix(t: DynkinType):
    """Cartan matrix for the package's vertex numbering (A/D/E only)."""
    r = t.rank
    edges = dynkin_edges(t)
    C = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for i, j in edges:
        C[i - 1][j - 1] = C[j - 1][i - 1] = -1
    return C


# -- root systems ------------------------------------------------------------

class RootSystem:
    """Simple and positive roots in orthonormal coordinates (exact)."""

    def __init__(self, dtype, ambient_dim, simple_roots, positive_roots):
        self.dtype = dtype
        self.ambient_dim = ambient_dim
        self.simple_roots = simple_roots
        self.positive_roots = positive_roots
        self.cartan = [[_as_int(2 * _dot(a, b) / _dot(b, b))
                        for b in simple_roots] for a in simple_roots]

    def simple_coordinates(self, vector):
        """Coefficients of ``vector`` over the simple roots."""
        cols = list(self.simple_roots)
        return _linsolve_overdetermined(cols, vector)


def _as_int(x):
    if is_rat(x):
        q = QQ(x)
        if q.denominator == 1:
            return int(q.numerator)
    if isinstance(x, Cyclo):
        r = x.reduce_rat()
        if is_rat(r) and QQ(r).denominator == 1:
            return int(QQ(r).numerator)
    raise ValueError(f"expected integer, got {x!r}")


def _dot(u, v):
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def _linsolve_overdetermined(basis, target):
    """Solve sum c_i basis_i = target exactly; raise if inconsistent."""
    m = len(target)
    n = len(basis)
    rows = [[basis[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    piv_cols = []
    rp = 0
    for col in range(n):
        piv = None
        for i in range(rp, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rp], rows[piv] = rows[piv], rows[rp]
        inv = rows[rp][col]
        rows[rp] = [x / inv for x in rows[rp]]
        for i in range(m):
            if i != rp and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rp])]
        piv_cols.append(col)
        rp += 1
        if rp == m:
            break
    coeffs = [QQ(0)] * n
    for k, col in enumerate(piv_cols):
        coeffs[col] = rows[k][n]
    for i in range(rp, m):
        if rows[i][n]:
            raise DimensionMismatch("vector outside the root span")
    return coeffs


def _frame_normals():
    """The 36 unit normals of the E6 mirror arrangement, over Q(zeta_24)."""
    one = Cyclo.from_rat(1, 24)
    zero = Cyclo.from_rat(0, 24)
    half = Cyclo.from_rat(QQ(1, 2), 24)
    r3 = sqrt3().lift(24)
    cos = {1: -half, 2: -half, 3: one}
    sin = {1: r3 * half, 2: -(r3 * half), 3: zero}
    inv_r3 = (r3 / 3)

    normals = {}
    for k in (1, 2, 3):
        normals[(k, 0, 0)] = (-sin[k], cos[k], zero, zero, zero, zero)
        normals[(0, k, 0)] = (zero, zero, -sin[k], cos[k], zero, zero)
        normals[(0, 0, k)] = (zero, zero, zero, zero, -sin[k], cos[k])
    for k, l, m in itertools.product((1, 2, 3), repeat=3):
        normals[(k, l, m)] = tuple(
            inv_r3 * c for c in
            (cos[k], sin[k], cos[l], sin[l], cos[m], sin[m]))
    return normals


E6_SIMPLE_NORMALS = {1: (3, 0, 0), 2: (0, 0, 3), 3: (0, 1, 0),
                     4: (1, 0, 0), 5: (0, 0, 1), 6: (3, 3, 3)}


def build_root_system(t: DynkinType) -> RootSystem:
    fam, r = t.family, t.rank
    if fam == "A":
        ambient = r + 1
        simples = [_unit_diff(ambient, i, i + 1) for i in range(r)]
        positives = [_unit_diff(ambient, i, j)
                     for i in range(ambient) for j in range(ambient) if i < j]
        return RootSystem(t, ambient, simples, positives)
    if fam == "D":
        simples = [_unit_diff(r, i, i + 1) for i in range(r - 1)]
        simples.append(_unit_sum(r, r - 2, r - 1))
        positives = []
        for i in range(r):
            for j in range(i + 1, r):
                positives.append(_unit_diff(r, i, j))
                positives.append(_unit_sum(r, i, j))
        return RootSystem(t, r, simples, positives)
    if fam == "E" and r == 6:
        normals = _frame_normals()
        s2 = sqrt2().lift(24)
        simples = [tuple(s2 * c for c in normals[E6_SIMPLE_NORMALS[i]])
                   for i in range(1, 7)]
        rs = RootSystem(t, 6, simples, [])
        positives = _closure_positive(rs)
        rs.positive_roots = positives
        return rs
    raise UnsupportedType(f"root system not built for {t}")


def _unit_diff(n, i, j):
    v = [QQ(0)] * n
    v[i], v[j] = QQ(1), QQ(-1)
    return tuple(v)


def _unit_sum(n, i, j):
    v = [QQ(0)] * n
    v[i], v[j] = QQ(1), QQ(1)
    return tuple(v)


def _vec_key(v):
    return tuple(round(embed_complex(c).real, 9) for c in v)


def _closure_positive(rs: RootSystem):
    """All roots by reflection closure; keep those >= 0 over the simples."""
    seen = {}
    frontier = list(rs.simple_roots)
    for v in frontier:
        seen[_vec_key(v)] = v
    while frontier:
        nxt = []
        for v in frontier:
            for a in rs.simple_roots:
                coef = 2 * _dot(v, a) / _dot(a, a)
                w = tuple(x - coef * y for x, y in zip(v, a))
                key = _vec_key(w)
                if key not in seen:
                    seen[key] = w
                    nxt.append(w)
        frontier = nxt
    positives = []
    for v in seen.values():
        coords = rs.simple_coordinates(v)
        vals = [embed_complex(c).real for c in coords]
        if all(x > -1e-9 for x in vals) and any(x > 1e-9 for x in vals):
            positives.append(v)
    positives.sort(key=_vec_key)
    return positives


# -- diagram automorphisms ---------------------------------------------------

@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation of {1..rank} preserving the Cartan matrix."""
    vertex_perm: tuple

    def __call__(self, i: int) -> int:
        return self.vertex_perm[i - 1]

    @property
    def order(self) -> int:
        k, p = 1, self
        ident = tuple(range(1, len(self.vertex_perm) + 1))
        current = self.vertex_perm
        while current != ident:
            current = tuple(self.vertex_perm[i - 1] for i in current)
            k += 1
        return k

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        return DiagramAutomorphism(
            tuple(self.vertex_perm[j - 1] for j in other.vertex_perm))


def validate_automorphism(t: DynkinType, sigma: DiagramAutomorphism):
    C = cartan_matrix(t)
    r = t.rank
    p = sigma.vertex_perm
    if sorted(p) != list(range(1, r + 1)):
        raise InvalidAutomorphism(f"not a permutation of 1..{r}")
    for i in range(r):
        for j in range(r):
            if C[p[i] - 1][p[j] - 1] != C[i][j]:
                raise InvalidAutomorphism(
                    f"permutation {p} breaks the Cartan matrix")


def automorphism_group(t: DynkinType):
    """All diagram automorphisms, by exhaustive search."""
    C = cartan_matrix(t)
    r = t.rank
    out = []
    for p in itertools.permutations(range(1, r + 1)):
        if all(C[p[i] - 1][p[j] - 1] == C[i][j]
               for i in range(r) for j in range(r)):
            out.append(DiagramAutomorphism(p))
    return out


def close_group(gens):
    """Close a list of DiagramAutomorphism under composition."""
    if not gens:
        return []
    r = len(gens[0].vertex_perm)
    ident = DiagramAutomorphism(tuple(range(1, r + 1)))
    elems = {ident.vertex_perm: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = g.compose(e)
                if h.vertex_perm not in elems:
                    elems[h.vertex_perm] = h
                    nxt.append(h)
        frontier = nxt
    return list(elems.values())


STANDARD_OMEGAS = {"trivial": (), "z2": None, "z3": None, "s3": None}


def standard_omega(t: DynkinType, name: str):
    """Named symmetry groups: 'trivial', 'z2', 'z3' (D4), 's3' (D4)."""
    r = t.rank
    ident = tuple(range(1, r + 1))
    if name == "trivial":
        return [DiagramAutomorphism(ident)]
    if name == "z2":
        if t.family == "A":
            perm = tuple(r + 1 - i for i in range(1, r + 1))
        elif t.family == "D":
            perm = ident[: r - 2] + (r, r - 1)
        elif t == DynkinType("E", 6):
            swap = {1: 2, 2: 1, 4: 5, 5: 4, 3: 3, 6: 6}
            perm = tuple(swap[i] for i in range(1, 7))
        else:
            raise UnsupportedType(f"no involution for {t}")
        gens = [DiagramAutomorphism(perm)]
    elif name == "z3":
        if t != DynkinType("D", 4):
            raise UnsupportedType("z3 symmetry needs D4")
        gens = [DiagramAutomorphism((3, 2, 4, 1))]  # 1 -> 3 -> 4 -> 1
    elif name == "s3":
        if t != DynkinType("D", 4):
            raise UnsupportedType("s3 symmetry needs D4")
        gens = [DiagramAutomorphism((3, 2, 4, 1)),
                DiagramAutomorphism((1, 2, 4, 3))]
    else:
        raise UnsupportedType(f"unknown symmetry name {name!r}")
    for g in gens:
        validate_automorphism(t, g)
    return close_group(gens)


# -- folding -----------------------------------------------------------------

def _candidate_cartans(k: int):
    out = {}
    if k >= 1:
        C = [[2 if i == j else 0 for j in range(k)] for i in range(k)]
        for i in range(k - 1):
            C[i][i + 1] = C[i + 1][i] = -1
        out[f"A{k}"] = [row[:] for row in C]
    if k >= 2:
        B = [row[:] for row in out[f"A{k}"]]
        B[k - 2][k - 1] = -2
        out[f"B{k}"] = B
    if k >= 3:
        Cm = [row[:] for row in out[f"A{k}"]]
        Cm[k - 1][k - 2] = -2
        out[f"C{k}"] = Cm
    if k == 4:
        out["F4"] = [[2, -1, 0, 0], [-1, 2, -2, 0],
                     [0, -1, 2, -1], [0, 0, -1, 2]]
    if k == 2:
        out["G2"] = [[2, -1], [-3, 2]]
    if k >= 4:
        D = [[2 if i == j else 0 for j in range(k)] for i in range(k)]
        for i in range(k - 2):
            D[i][i + 1] = D[i + 1][i] = -1
        D[k - 3][k - 1] = D[k - 1][k - 3] = -1
        out[f"D{k}"] = D
    return out


def fold(t: DynkinType, omega) -> DynkinType:
    """Type of the invariant root lattice Q^Omega.

    ``omega`` is a list of DiagramAutomorphism (any generating set).  The
    folded Cartan matrix is computed from orbit sums of simple roots; an
    orbit of adjacent vertices (the even-A case) folds to type C by the
    standard convention for that degenerate orbit geometry.
    """
    if not t.homogeneous:
        raise UnsupportedType(f"can only fold simply laced types, got {t}")
    group = close_group(list(omega))
    for g in group:
        validate_automorphism(t, g)
    r = t.rank
    orbits = []
    seen = set()
    for i in range(1, r + 1):
        if i in seen:
            continue
        orbit = sorted({g(i) for g in group})
        orbits.append(orbit)
        seen.update(orbit)
    if len(orbits) == r:
        return t
    C = cartan_matrix(t)
    adjacent_orbit = any(
        C[i - 1][j - 1] == -1
        for orbit in orbits for i in orbit for j in orbit if i < j)
    k = len(orbits)
    if adjacent_orbit:
        # Even-A folding: an orbit of two adjacent vertices.  The invariant
        # lattice is isometric to the odd case, but the folded root system
        # is type C (B2 stands in for C2, A1 for C1).
        if k == 1:
            return DynkinType("A", 1)
        return DynkinType("C", k) if k >= 3 else DynkinType("B", 2)
    gram = [[sum(QQ(C[i - 1][j - 1]) for i in P for j in Q)
             for Q in orbits] for P in orbits]
    cartan = [[_as_int(2 * gram[a][b] / gram[b][b]) for b in range(k)]
              for a in range(k)]
    candidates = _candidate_cartans(k)
    for label, M in candidates.items():
        for p in itertools.permutations(range(k)):
            if all(cartan[p[i]][p[j]] == M[i][j]
                   for i in range(k) for j in range(k)):
                return DynkinType(label[0], int(label[1:]))
    raise InvalidAutomorphism("folded lattice is not of B/C/F/G/ADE type")


# -- Weyl group action -------------------------------------------------------

def weyl_reflections(rs: RootSystem):
    """Simple reflections as exact matrices on the ambient space."""
    mats = []
    n = rs.ambient_dim
    for a in rs.simple_roots:
        norm = _dot(a, a)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                delta = QQ(1) if i == j else QQ(0)
                row.append(delta - 2 * a[i] * a[j] / norm)
            rows.append(row)
        mats.append(rows)
    return mats


def apply_matrix(M, v):
    return tuple(_dot(row, v) for row in M)


def coweight_reflection(t: DynkinType, j: int):
    """r_{alpha_j^vee} on coweight coordinates: mu_i -> mu_i - C_ij mu_j."""
    C = cartan_matrix(t)
    r = t.rank

    def act(mu):
        return tuple(mu[i] - C[i][j - 1] * mu[j - 1] for i in range(r))
    return act


def coweight_reflection_subs(t: DynkinType, j: int, names):
    """The same reflection as an MPoly substitution dict on ``names``."""
    from .poly import MPoly, VarTable
    C = cartan_matrix(t)
    r = t.rank
    V = VarTable(names)
    subs = {}
    for i in range(r):
        p = MPoly.variable(V, names[i]) - C[i][j - 1] * MPoly.variable(
            V, names[j - 1])
        subs[names[i]] = p
    return subs


def vanishing_roots(rs: RootSystem, h):
    """Positive roots alpha with alpha(h) = 0, as simple-root coefficients."""
    if len(h) != rs.ambient_dim:
        raise DimensionMismatch(
            f"expected ambient dim {rs.ambient_dim}, got {len(h)}")
    out = []
    for alpha in rs.positive_roots:
        if not _dot(alpha, h):
            coeffs = rs.simple_coordinates(alpha)
            out.append(tuple(coeffs))
    return sorted(out)


def omega_action_on_cartan(rs: RootSystem, sigma: DiagramAutomorphism, h):
    """sigma . h through the coroot basis (alpha_i^vee = alpha_i here)."""
    coeffs = rs.simple_coordinates(h)
    r = len(rs.simple_roots)
    new = [QQ(0)] * rs.ambient_dim
    new = list(new)
    for i in range(r):
        target = rs.simple_roots[sigma(i + 1) - 1]
        new = [x + coeffs[i] * y for x, y in zip(new, target)]
    return tuple(new)


def omega_average(rs: RootSystem, omega, h):
    """p(h) = |Omega|^-1 sum_sigma sigma.h on the Cartan space."""
    group = close_group(list(omega))
    if len(h) != rs.ambient_dim:
        raise DimensionMismatch("bad vector arity")
    total = [QQ(0)] * rs.ambient_dim
    for g in group:
        moved = omega_action_on_cartan(rs, g, h)
        total = [x + y for x, y in zip(total, moved)]
    return tuple(x / len(group) for x in total)


# -- McKay data --------------------------------------------------------------

def extended_edges(t: DynkinType):
    """Edges of the extended (affine) diagram; vertex 0 is the affine one."""
    fam, r = t.family, t.rank
    if not t.homogeneous:
        raise UnsupportedType(f"{t} has no McKay quiver")
    if fam == "A":
        if r == 1:
            return ((0, 1), (0, 1))
        return tuple((i, i + 1) for i in range(r)) + ((r, 0),)
    if fam == "D":
        # paper numbering for the quiver: 0 and 1 fork into 2, spine
        # 2..r-2, fork r-1 and r on vertex r-2.
        edges = [(0, 2), (1, 2)]
        edges += [(i, i + 1) for i in range(2, r - 2)]
        edges += [(r - 2, r - 1), (r - 2, r)]
        return tuple(edges)
    if fam == "E" and r == 6:
        return ((0, 3), (3, 6), (1, 4), (4, 6), (2, 5), (5, 6))
    if fam == "E" and r == 7:
        return ((0, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4))
    if fam == "E" and r == 8:
        return ((0, 8), (8, 7), (7, 6), (6, 5), (5, 4), (4, 3), (3, 1),
                (2, 4))
    raise UnsupportedType(str(t))


def mckay_dimension_vector(t: DynkinType):
    """Minimal imaginary root on the extended diagram (entry 0 affine)."""
    fam, r = t.family, t.rank
    if not t.homogeneous:
        raise UnsupportedType(f"{t} has no McKay quiver")
    if fam == "A":
        return (1,) * (r + 1)
    if fam == "D":
        return (1, 1) + (2,) * (r - 3) + (1, 1)
    if fam == "E" and r == 6:
        return (1, 1, 1, 2, 2, 2, 3)
    if fam == "E" and r == 7:
        return (1, 2, 2, 3, 4, 3, 2, 1)
    if fam == "E" and r == 8:
        return (1, 2, 3, 4, 6, 5, 4, 3, 2)
    raise UnsupportedType(str(t))


def validate_dimension_vector(t: DynkinType):
    """2 d_v = sum of neighbour d's: the defining balance of delta."""
    d = mckay_dimension_vector(t)
    edges = extended_edges(t)
    n = len(d)
    for v in range(n):
        s = sum(d[j] for i, j in edges if i == v) + \
            sum(d[i] for i, j in edges if j == v)
        if 2 * d[v] != s:
            return False
    return True


# -- fundamental coweights ---------------------------------------------------

# Columns of the inverse Cartan matrix: Lambda_j = sum_i combo[i] alpha_i.
# The j = 6 row is symmetric under the diagram involution (1<->2, 4<->5),
# as duality forces.
E6_WEIGHT_COMBOS = {
    1: (QQ(4, 3), QQ(2, 3), QQ(1), QQ(5, 3), QQ(4, 3), QQ(2)),
    2: (QQ(2, 3), QQ(4, 3), QQ(1), QQ(4, 3), QQ(5, 3), QQ(2)),
    3: (QQ(1), QQ(1), QQ(2), QQ(2), QQ(2), QQ(3)),
    4: (QQ(5, 3), QQ(4, 3), QQ(2), QQ(10, 3), QQ(8, 3), QQ(4)),
    5: (QQ(4, 3), QQ(5, 3), QQ(2), QQ(8, 3), QQ(10, 3), QQ(4)),
    6: (QQ(2), QQ(2), QQ(3), QQ(4), QQ(4), QQ(6)),
}


class CoweightBasis:
    def __init__(self, dtype, vectors):
        self.dtype = dtype
        self.fundamental_coweights = vectors


def fundamental_coweights(t: DynkinType) -> CoweightBasis:
    """Lambda_i^vee in orthonormal coordinates, <alpha_i, L_j^vee> = d_ij."""
    fam, r = t.family, t.rank
    if fam == "A":
        # Lambda_i = e_1 + .. + e_i - (i/(r+1)) * sum(e)
        n = r + 1
        vecs = []
        for i in range(1, r + 1):
            v = [QQ(1) - QQ(i, n) if k < i else -QQ(i, n) for k in range(n)]
            vecs.append(tuple(v))
        return CoweightBasis(t, vecs)
    if t == DynkinType("D", 4):
        h = QQ(1, 2)
        vecs = [
            (QQ(1), QQ(0), QQ(0), QQ(0)),
            (QQ(1), QQ(1), QQ(0), QQ(0)),
            (h, h, h, -h),
            (h, h, h, h),
        ]
        return CoweightBasis(t, vecs)
    if t == DynkinType("E", 6):
        rs = build_root_system(t)
        vecs = []
        for i in range(1, 7):
            combo = E6_WEIGHT_COMBOS[i]
            v = [Cyclo.from_rat(0, 24)] * 6
            for j, c in enumerate(combo):
                alpha = rs.simple_roots[j]
                v = [x + c * y for x, y in zip(v, alpha)]
            vecs.append(tuple(v))
        return CoweightBasis(t, vecs)
    raise UnsupportedType(f"no coweight table for {t}")


def duality_matrix(t: DynkinType):
    """<alpha_i, Lambda_j^vee> as an integer matrix (should be identity)."""
    rs = build_root_system(t)
    cw = fundamental_coweights(t)
    out = []
    for a in rs.simple_roots:
        out.append([_as_int(_dot(a, v)) for v in cw.fundamental_coweights])
    return out
