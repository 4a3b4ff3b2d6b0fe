"""Sparse multivariate polynomials over exact scalars, plus ideal machinery.

``MPoly`` stores a map from exponent tuples to nonzero exact coefficients
(rational, ``Cyclo`` or ``Radical``).  ``Ideal`` carries a monomial order
and caches its reduced Groebner basis, computed by Buchberger's algorithm
with the product and chain pair-elimination criteria.  Zero-dimensional
quotient dimensions are counted from the staircase of leading terms.
"""

from __future__ import annotations

import itertools

from .exact import QQ, Cyclo, Radical, embed_complex, is_rat, scalar_to_json


class VariableMismatch(KeyError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class VarTable:
    """Ordered, unique variable names; fixes exponent-vector positions."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {v: i for i, v in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarTable{self.names}"


# -- monomial orders --------------------------------------------------------

def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e):
    return e


def weighted_key(weights):
    def key(e):
        return (sum(w * x for w, x in zip(weights, e)), grevlex_key(e))
    return key


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


def order_key(order):
    if callable(order):
        return order
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


class MPoly:
    """Sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VarTable, terms=None):
        self.vars = vars
        self.terms = {}
        if terms:
            n = len(vars)
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if len(e) != n:
                    raise VariableMismatch(f"exponent arity {len(e)} != {n}")
                if c:
                    e = tuple(e)
                    acc = self.terms.get(e)
                    c = c if acc is None else acc + c
                    if c:
                        self.terms[e] = c
                    elif acc is not None:
                        del self.terms[e]

    # -- constructors --------------------------------------------------
    @staticmethod
    def zero(vars: VarTable) -> "MPoly":
        return MPoly(vars)

    @staticmethod
    def constant(vars: VarTable, c) -> "MPoly":
        p = MPoly(vars)
        if c:
            p.terms[(0,) * len(vars)] = c
        return p

    @staticmethod
    def variable(vars: VarTable, name: str) -> "MPoly":
        if name not in vars.index:
            raise VariableMismatch(name)
        e = [0] * len(vars)
        e[vars.index[name]] = 1
        p = MPoly(vars)
        p.terms[tuple(e)] = QQ(1)
        return p

    @staticmethod
    def monomial(vars: VarTable, exps: dict, c=1) -> "MPoly":
        e = [0] * len(vars)
        for name, k in exps.items():
            e[vars.index[name]] = k
        p = MPoly(vars)
        if c:
            p.terms[tuple(e)] = c
        return p

    def _check(self, other):
        if self.vars != other.vars:
            raise VariableMismatch(
                f"{self.vars.names} vs {other.vars.names}")

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            return self + MPoly.constant(self.vars, _coeff(other))
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            c = c if acc is None else acc + c
            if c:
                out[e] = c
            elif acc is not None:
                del out[e]
        p = MPoly(self.vars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly(self.vars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            return self + MPoly.constant(self.vars, -_coeff(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c0 = _coeff(other)
            if not c0:
                return MPoly(self.vars)
            p = MPoly(self.vars)
            p.terms = {e: c * c0 for e, c in self.terms.items()}
            return p
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                c = c if acc is None else acc + c
                if c:
                    out[e] = c
                elif acc is not None:
                    del out[e]
        p = MPoly(self.vars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.constant(self.vars, QQ(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("MPoly is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ---------------------------------------------------------
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index[name]
        return max((e[i] for e in self.terms), default=-1)

    def leading(self, key):
        """(exponent, coefficient) of the leading term for an order key."""
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self, key=grevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]),
                      reverse=True)

    def coefficient_of(self, name: str, k: int) -> "MPoly":
        """Coefficient of name**k, a polynomial in the remaining variables."""
        i = self.vars.index[name]
        p = MPoly(self.vars)
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                p.terms[tuple(e2)] = c
        return p

    def homogeneous_part(self, d: int) -> "MPoly":
        p = MPoly(self.vars)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) == d}
        return p

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), QQ(0))

    # -- calculus ------------------------------------------------------------
    def diff(self, name: str) -> "MPoly":
        if name not in self.vars.index:
            raise VariableMismatch(name)
        i = self.vars.index[name]
        p = MPoly(self.vars)
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                p.terms[tuple(e2)] = c * e[i]
        return p

    # -- substitution ----------------------------------------------------------
    def substitute(self, bindings: dict) -> "MPoly":
        """Exact composition; unbound variables pass through.

        ``bindings`` maps variable names to MPoly (over any VarTable) or
        scalars.  The result lives on the union table of the passthrough
        variables and all binding tables, in first-seen order.
        """
        for v in bindings:
            if v not in self.vars.index:
                raise VariableMismatch(v)
        norm = {}
        out_names = [v for v in self.vars.names if v not in bindings]
        for v, b in bindings.items():
            if isinstance(b, MPoly):
                norm[v] = b
                for name in b.vars.names:
                    if name not in out_names:
                        out_names.append(name)
            else:
                norm[v] = _coeff(b)
        out_vars = VarTable(out_names)
        binding_polys = {
            v: (_retable(b, out_vars) if isinstance(b, MPoly) else b)
            for v, b in norm.items()}
        power_cache = {v: {0: MPoly.constant(out_vars, QQ(1))}
                       for v in binding_polys}

        def bound_power(v, k):
            cache = power_cache[v]
            if k in cache:
                return cache[k]
            base = binding_polys[v]
            if not isinstance(base, MPoly):
                value = base ** k if k else QQ(1)
                cache[k] = value
                return value
            best = max(j for j in cache if j <= k)
            value = cache[best]
            for j in range(best, k):
                value = value * base
                cache[j + 1] = value
            return value

        total = MPoly(out_vars)
        for e, c in self.terms.items():
            passthrough = [0] * len(out_vars)
            factors = []
            for i, k in enumerate(e):
                if not k:
                    continue
                name = self.vars.names[i]
                if name in binding_polys:
                    factors.append((name, k))
                else:
                    passthrough[out_vars.index[name]] = k
            term = MPoly(out_vars)
            term.terms[tuple(passthrough)] = c
            for name, k in factors:
                term = term * bound_power(name, k)
            total = total + term
        return total

    def rename(self, mapping: dict) -> "MPoly":
        """Rename variables (bijective on the used names)."""
        names = tuple(mapping.get(v, v) for v in self.vars.names)
        out = MPoly(VarTable(names))
        out.terms = dict(self.terms)
        return out

    def extend(self, vars: VarTable) -> "MPoly":
        """Re-express on a larger variable table."""
        return _retable(self, vars)

    # -- numeric shadow -------------------------------------------------------
    def evaluate_numeric(self, point: dict) -> complex:
        for v in self.vars.names:
            if v not in point:
                raise VariableMismatch(f"unbound variable {v}")
        values = [complex(point[v]) for v in self.vars.names]
        maxdeg = [0] * len(self.vars)
        for e in self.terms:
            maxdeg = [max(m, k) for m, k in zip(maxdeg, e)]
        powers = [[1.0 + 0j] for _ in values]
        for i, v in enumerate(values):
            for _ in range(maxdeg[i]):
                powers[i].append(powers[i][-1] * v)
        total = 0j
        for e, c in self.terms.items():
            m = embed_complex(c)
            for i, k in enumerate(e):
                if k:
                    m *= powers[i][k]
            total += m
        return total

    # -- io ------------------------------------------------------------------
    def to_json(self):
        terms = [{"c": scalar_to_json(c), "e": list(e)}
                 for e, c in self.sorted_terms()]
        return {"vars": list(self.vars.names), "terms": terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms()[:12]:
            mono = "*".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(self.vars.names, e) if k)
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        tail = " + ..." if len(self.terms) > 12 else ""
        return " + ".join(bits) + tail


def _coeff(x):
    if is_rat(x) or isinstance(x, (Cyclo, Radical)):
        return QQ(x) if isinstance(x, int) else x
    raise TypeError(f"not an exact scalar: {x!r}")


def _retable(p: MPoly, vars: VarTable) -> MPoly:
    if p.vars == vars:
        return p
    pos = []
    for v in p.vars.names:
        if v not in vars.index:
            raise VariableMismatch(v)
        pos.append(vars.index[v])
    out = MPoly(vars)
    n = len(vars)
    for e, c in p.terms.items():
        e2 = [0] * n
        for i, k in enumerate(e):
            e2[pos[i]] = k
        out.terms[tuple(e2)] = c
    return out


def equal_mod_vars(a: MPoly, b: MPoly) -> bool:
    """Equality after aligning the two variable tables (sorted union)."""
    union = VarTable(tuple(sorted(set(a.vars.names) | set(b.vars.names))))
    return (_retable(a, union) - _retable(b, union)).is_zero()


def poly_from_json(data) -> MPoly:
    from .exact import rat
    vars = VarTable(data["vars"])
    p = MPoly(vars)
    for t in data["terms"]:
        c = t["c"]
        if isinstance(c, str):
            coeff = rat(c)
        elif "conductor" in c:
            coeff = Cyclo(c["conductor"], [rat(x) for x in c["coords"]])
        else:
            raise ValueError("unsupported coefficient payload")
        p.terms[tuple(t["e"])] = coeff
    return p


# -- division and Groebner bases ---------------------------------------------

def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def _ediff(e2, e1):
    return tuple(b - a for a, b in zip(e1, e2))


def _elcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


class _Budget:
    __slots__ = ("left",)

    def __init__(self, steps):
        self.left = steps

    def spend(self, n=1):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded("reduction budget exhausted")


DEFAULT_BUDGET = 10 ** 6


def reduce_poly(p: MPoly, basis, key, budget=None) -> MPoly:
    """Full remainder of p on division by ``basis`` (complete reduction)."""
    budget = budget or _Budget(DEFAULT_BUDGET)
    leads = [(g.leading(key), g) for g in basis if g]
    remainder = MPoly(p.vars)
    work = dict(p.terms)
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        if not c:
            continue
        for (le, lc), g in leads:
            if _divides(le, e):
                budget.spend()
                shift = _ediff(e, le)
                factor = c / lc
                for ge, gc in g.terms.items():
                    e2 = tuple(x + y for x, y in zip(ge, shift))
                    if e2 == e:
                        continue
                    acc = work.get(e2)
                    delta = -(factor * gc)
                    val = delta if acc is None else acc + delta
                    if val:
                        work[e2] = val
                    elif acc is not None:
                        del work[e2]
                break
        else:
            remainder.terms[e] = c
    return remainder


def _spoly(f: MPoly, g: MPoly, key) -> MPoly:
    (ef, cf) = f.leading(key)
    (eg, cg) = g.leading(key)
    l = _elcm(ef, eg)
    tf = MPoly(f.vars)
    tf.terms[_ediff(l, ef)] = _inv(cf)
    tg = MPoly(g.vars)
    tg.terms[_ediff(l, eg)] = _inv(cg)
    return tf * f - tg * g


def _inv(c):
    if is_rat(c):
        return QQ(1) / c
    return c.inverse()


def buchberger(gens, key, budget=None):
    """Reduced Groebner basis by Buchberger with both standard criteria."""
    budget = budget or _Budget(DEFAULT_BUDGET)
    basis = [g for g in gens if g]
    if not basis:
        return []
    # interreduce the input a little for stability
    basis = [g * _inv(g.leading(key)[1]) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}

    def lead(i):
        return basis[i].leading(key)[0]

    while pairs:
        # normal selection strategy: smallest lcm in the order
        i, j = min(pairs, key=lambda ij: key(_elcm(lead(ij[0]), lead(ij[1]))))
        pairs.discard((i, j))
        li, lj = lead(i), lead(j)
        l = _elcm(li, lj)
        # product criterion
        if l == tuple(a + b for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(lead(k), l):
                p1 = (max(i, k), min(i, k))
                p2 = (max(j, k), min(j, k))
                if p1 not in pairs and p2 not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], key)
        r = reduce_poly(s, basis, key, budget)
        if r:
            r = r * _inv(r.leading(key)[1])
            basis.append(r)
            t = len(basis) - 1
            for k in range(t):
                pairs.add((t, k))
    # minimize: drop elements whose leading term another one divides
    basis.sort(key=lambda g: key(g.leading(key)[0]))
    minimal = []
    for g in basis:
        lg = g.leading(key)[0]
        if any(_divides(h.leading(key)[0], lg) for h in minimal):
            continue
        minimal.append(g)
    # tail-reduce each against the others (leading terms are now stable)
    final = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = reduce_poly(g, others, key, budget)
        final.append(r * _inv(r.leading(key)[1]))
    final.sort(key=lambda g: key(g.leading(key)[0]))
    return final


class Ideal:
    """Polynomial ideal with a monomial order and a cached reduced basis."""

    def __init__(self, generators, order="grevlex", budget=DEFAULT_BUDGET):
        gens = [g for g in generators if isinstance(g, MPoly)]
        if not gens:
            raise ValueError("need at least one generator")
        vars = gens[0].vars
        for g in gens:
            if g.vars != vars:
                raise VariableMismatch("generators on different tables")
        self.generators = gens
        self.vars = vars
        self.order = order
        self.budget = budget
        self._gb = None

    def groebner_basis(self):
        if self._gb is None:
            key = order_key(self.order)
            gb = buchberger(self.generators, key, _Budget(self.budget))
            # ideal-membership self-check: every generator reduces to zero
            for g in self.generators:
                if g and reduce_poly(g, gb, key, _Budget(self.budget)):
                    raise AssertionError("generator fails self-reduction")
            self._gb = gb
        return self._gb

    def normal_form(self, p: MPoly) -> MPoly:
        key = order_key(self.order)
        return reduce_poly(_retable(p, self.vars), self.groebner_basis(),
                           key, _Budget(self.budget))

    def contains(self, p: MPoly) -> bool:
        return self.normal_form(p).is_zero()

    def leading_exponents(self):
        key = order_key(self.order)
        return [g.leading(key)[0] for g in self.groebner_basis()]

    def quotient_dimension(self):
        """Number of standard monomials, or the string 'infinite'."""
        leads = self.leading_exponents()
        n = len(self.vars)
        if any(not any(e) for e in leads):
            return 0  # the ideal is (1)
        # finiteness: every variable needs a pure power among the leads
        bounds = [None] * n
        for e in leads:
            support = [i for i in range(n) if e[i]]
            if len(support) == 1:
                i = support[0]
                if bounds[i] is None or e[i] < bounds[i]:
                    bounds[i] = e[i]
        if any(b is None for b in bounds):
            return "infinite"
        count = 0
        for mono in itertools.product(*(range(b) for b in bounds)):
            if not any(_divides(e, mono) for e in leads):
                count += 1
        return count

    def is_zero_dimensional(self) -> bool:
        return self.quotient_dimension() != "infinite"


def quotient_basis(ideal: Ideal):
    """Standard monomials (exponent tuples) of a zero-dimensional ideal."""
    leads = ideal.leading_exponents()
    n = len(ideal.vars)
    bounds = [None] * n
    for e in leads:
        support = [i for i in range(n) if e[i]]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or e[i] < bounds[i]:
                bounds[i] = e[i]
    if any(b is None for b in bounds):
        raise ValueError("ideal is not zero-dimensional")
    out = []
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(e, mono) for e in leads):
            out.append(mono)
    out.sort(key=grevlex_key)
    return out


def monomials_of_degree(vars: VarTable, d: int):
    """All monomials of total degree exactly d, as MPoly list."""
    n = len(vars)
    out = []
    if n == 1:
        exps = [(d,)]
    else:
        exps = []
        for bars in itertools.combinations(range(d + n - 1), n - 1):
            e = []
            prev = -1
            for b in bars:
                e.append(b - prev - 1)
                prev = b
            e.append(d + n - 2 - prev)
            exps.append(tuple(e))
    for e in exps:
        p = MPoly(vars)
        p.terms[e] = QQ(1)
        out.append(p)
    return out
