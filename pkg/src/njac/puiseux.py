"""Newton-Puiseux expansion of analytic branches at the origin.

Branches are computed per conjugacy class over ℚ (Duval-style rational
expansions): one PuiseuxBranch carries a parametrization x = γ·s^e,
y = Σ c_k s^k with coefficients in an algebraic tower, together with the
class size `conj` = [tower : ℚ].  Conjugate analytic branches share orders
and characteristic data, so consumers scale by `conj`.

Orders of composed series are certified exactly: a computed order is
accepted only when it lies below the truncation horizon; otherwise
precision is doubled, and membership of a branch inside a curve is decided
algebraically (divisibility of defining factors), never by truncation.
"""

from dataclasses import dataclass
from math import gcd

from . import algebraic as alg
from .algebraic import TowerField
from .diagram import NewtonDiagram
from .errors import NotVanishingAtOrigin, PrecisionExhausted, ZeroPolynomial
from .polynomials import MPoly, div_exact, gcd as mgcd, squarefree_decomposition
from .rationals import INF, ExtNat, Q, rat_den, rat_num, rat_str


@dataclass
class TruncationPolicy:
    """Working-precision schedule for series expansions."""

    start: int | None = None
    cap: int = 512
    hard_abort: int = 32768

    def initial(self, total_degree):
        if self.start is not None:
            return min(self.start, self.cap)
        return min(max(2 * total_degree * total_degree, 16), 48)


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class CharacteristicSequence:
    """Puiseux characteristic: multiplicity m0 and characteristic exponents."""

    m0: int
    exponents: tuple

    def key(self):
        return (self.m0, tuple((rat_num(b), rat_den(b)) for b in self.exponents))

    def delta2(self):
        """Twice the delta invariant, from the exponents in parameter units."""
        e = self.m0
        total = 0
        for b in self.exponents:
            beta = rat_num(b) * (self.m0 // rat_den(b))
            e_next = gcd(e, beta)
            total += (e - e_next) * (beta - 1)
            e = e_next
        return total

    def to_json(self):
        return {"multiplicity": self.m0, "exponents": [rat_str(b) for b in self.exponents]}


class PuiseuxBranch:
    """One conjugacy class of analytic branches at the origin.

    Non-axis: x = gamma·s^e, y = Σ c_k s^k.  Axis branch: x = 0, y = s.
    `mult` is the exponent of the class in the expanded polynomial, `conj`
    the number of ℚ-conjugate analytic branches the class represents.
    """

    def __init__(self, *, axis, field, stages, tail, mult, conj, defining_factor):
        self.axis = axis
        self.field = field
        self.stages = stages  # [(q, p, a, b, rho)], outermost first
        self.tail = tail  # ("zero",) | ("ift", Gdict) | ("axis",)
        self.mult = mult
        self.conj = conj
        self.defining_factor = defining_factor
        self._series_cache = {"order": -1, "gamma": None, "e": None, "coeffs": None}
        self._char = None

    @property
    def exact(self):
        return self.axis or self.tail[0] == "zero"

    def ramification(self):
        if self.axis:
            return 1
        e = 1
        for q, _p, _a, _b, _rho in self.stages:
            e *= q
        return e

    def _exact_span(self):
        """Largest y-series exponent an exact branch can carry."""
        span = 0
        E = 1
        for q, p, _a, _b, _rho in reversed(self.stages):
            span = p * E + span
            E *= q
        return span + 1

    def series(self, order):
        """(gamma, e, coeffs dict k→element), coefficients exact for k ≤ order."""
        if self.axis:
            raise ValueError("axis branch has no y-series parametrization")
        if self.exact:
            order = max(order, self._exact_span())
        cache = self._series_cache
        if cache["order"] >= order:
            return cache["gamma"], cache["e"], cache["coeffs"]
        K = self.field
        r = len(self.stages)
        E = [0] * (r + 1)
        G = [None] * (r + 1)
        E[r] = 1
        G[r] = K.one()
        for i in range(r, 0, -1):
            q, _p, a, _b, rho = self.stages[i - 1]
            E[i - 1] = q * E[i]
            G[i - 1] = K.mul(K.pow(rho, a), K.pow(G[i], q))
        if self.tail[0] == "zero":
            y_series = {}
        else:
            y_series = _ift_tail(K, self.tail[1], order)
        for i in range(r, 0, -1):
            _q, p, _a, b, rho = self.stages[i - 1]
            shift = p * E[i]
            coeff = K.mul(K.pow(rho, b), K.pow(G[i], p))
            new = {shift: coeff}
            for k, c in y_series.items():
                kk = k + shift
                if kk <= order:
                    new[kk] = _fadd(K, new.get(kk), K.mul(coeff, c))
            y_series = {k: c for k, c in new.items() if not K.is_zero(c)}
        cache.update(order=order, gamma=G[0], e=E[0], coeffs=y_series)
        return G[0], E[0], y_series

    def y_order(self):
        """Smallest exponent of the y-series (INF for y ≡ 0)."""
        if self.axis:
            return ExtNat(1)
        if self.exact:
            _g, _e, coeffs = self.series(self._exact_span())
            return ExtNat(min(coeffs)) if coeffs else INF
        # a non-exact branch has ≥ 1 stage, so the series starts with the
        # outermost stage monomial
        _g, _e, coeffs = self.series(max(self._exact_span(), 4))
        return ExtNat(min(coeffs))

    def line_order(self):
        """Order of a generic line through 0 along one branch of the class."""
        if self.axis:
            return 1
        e = self.ramification()
        yo = self.y_order()
        return e if yo.is_infinite else min(e, yo.value)

    def characteristic(self, policy=DEFAULT_POLICY):
        """Puiseux characteristic (m0; exponents), certified by the gcd chain."""
        if self._char is not None:
            return self._char
        e = self.ramification()
        if self.axis or e == 1:
            self._char = CharacteristicSequence(1, ())
            return self._char
        T = max(policy.initial(e), 2 * e)
        while True:
            _gamma, _e, coeffs = self.series(T)
            g = e
            exps = []
            for k in sorted(coeffs):
                if k % g:
                    exps.append(k)
                    g = gcd(g, k)
                    if g == 1:
                        break
            if g == 1:
                self._char = CharacteristicSequence(e, tuple(Q(k, e) for k in exps))
                return self._char
            if self.exact:
                raise PrecisionExhausted("exact branch with imprimitive parametrization")
            if T >= policy.hard_abort:
                raise PrecisionExhausted("characteristic sequence not certified below abort bound")
            T *= 2

    def delta2(self, policy=DEFAULT_POLICY):
        return self.characteristic(policy).delta2()

    # -- presentation ----------------------------------------------------

    def printed(self, order=12):
        if self.axis:
            return "x = 0, y = s"
        gamma, e, coeffs = self.series(order)
        shown = [(k, c) for k, c in sorted(coeffs.items()) if k <= order]
        terms = " + ".join(f"{_elem_str(self.field, c)}*s^{k}" for k, c in shown)
        tail = "" if self.exact else f" (+O(s^{order + 1}))"
        return f"x = {_elem_str(self.field, gamma)}*s^{e}, y = {terms or '0'}{tail}"

    def __repr__(self):
        return f"PuiseuxBranch({self.printed(8)}, mult={self.mult}, conj={self.conj})"

    def to_json(self, order=12):
        data = {
            "axis": self.axis,
            "multiplicity": self.mult,
            "conjugates": self.conj,
            "tower": self.field.to_json(),
        }
        if self.axis:
            data["parametrization"] = {"x": "0", "y": "s"}
        else:
            gamma, e, coeffs = self.series(order)
            data["parametrization"] = {
                "x": f"{_elem_str(self.field, gamma)}*s^{e}",
                "y": {str(k): _elem_str(self.field, c) for k, c in sorted(coeffs.items()) if k <= order},
                "exact": self.exact,
                "truncation_order": order,
            }
        return data


def _elem_str(field, elem):
    q = field.as_rational(elem)
    if q is not None:
        return rat_str(q)
    name = f"a{field.level}"
    sub = TowerField(field.levels[:-1])
    parts = []
    for k, c in enumerate(elem):
        if sub.is_zero(c) if sub.level else c == 0:
            continue
        cs = _elem_str(sub, c)
        if k == 0:
            parts.append(cs)
        else:
            mono = name if k == 1 else f"{name}^{k}"
            parts.append(mono if cs == "1" else f"({cs})*{mono}")
    return " + ".join(parts) if parts else "0"


def _fadd(K, a, b):
    return b if a is None else K.add(a, b)


# -- series helpers over a tower field ----------------------------------------


def _s_mul(K, a, b, order):
    out = {}
    for i, c in a.items():
        if i > order:
            continue
        for j, d in b.items():
            k = i + j
            if k > order:
                continue
            out[k] = _fadd(K, out.get(k), K.mul(c, d))
    return {k: c for k, c in out.items() if not K.is_zero(c)}


def _s_add(K, a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = _fadd(K, out.get(k), c)
    return {k: c for k, c in out.items() if not K.is_zero(c)}


def _s_inverse(K, a, order):
    c0 = a.get(0)
    if c0 is None or K.is_zero(c0):
        raise ZeroDivisionError("series inverse needs a unit constant term")
    inv0 = K.inv(c0)
    out = {0: inv0}
    for k in range(1, order + 1):
        acc = None
        for j, c in a.items():
            if 1 <= j <= k and (k - j) in out:
                acc = _fadd(K, acc, K.mul(c, out[k - j]))
        if acc is not None and not K.is_zero(acc):
            out[k] = K.neg(K.mul(inv0, acc))
    return out


def _eval_poly_at_series(K, G, w, order):
    """G(x, w(x)) mod x^(order+1) for G a dict {(i,j): element}."""
    dy = max((j for _i, j in G), default=0)
    rows = [dict() for _ in range(dy + 1)]
    for (i, j), c in G.items():
        if i <= order:
            rows[j][i] = _fadd(K, rows[j].get(i), c)
    acc = {}
    for j in range(dy, -1, -1):
        acc = _s_mul(K, acc, w, order)
        acc = _s_add(K, acc, rows[j])
    return acc


def _ift_tail(K, G, order):
    """Solve G(x, w(x)) = 0, w(0) = 0, by Newton iteration; needs G_y(0,0) ≠ 0."""
    Gy = {}
    for (i, j), c in G.items():
        if j >= 1:
            key = (i, j - 1)
            Gy[key] = _fadd(K, Gy.get(key), K.mul_rat(c, j))
    w = {}
    t = 0
    while t < order:
        t = min(2 * t + 1, order)
        num = _eval_poly_at_series(K, G, w, t)
        den = _eval_poly_at_series(K, Gy, w, t)
        correction = _s_mul(K, num, _s_inverse(K, den, t), t)
        w = _s_add(K, w, {k: K.neg(c) for k, c in correction.items()})
    return {k: c for k, c in w.items() if k <= order}


# -- the Newton-Puiseux recursion ---------------------------------------------


def _strip_y_factor(G):
    if G and all(j >= 1 for _i, j in G):
        return True, {(i, j - 1): c for (i, j), c in G.items()}
    return False, G


def _transform(K, G, qh, ph, a, b, rho):
    """Substitute x = rho^a·x1^qh, y = rho^b·x1^ph·(1+y1), divide by x1^N."""
    N = min(qh * i + ph * j for i, j in G)
    out = {}
    rho_pow = {}

    def rpow(n):
        if n not in rho_pow:
            rho_pow[n] = K.pow(rho, n)
        return rho_pow[n]

    binom_cache = {}

    def binoms(j):
        if j not in binom_cache:
            row = [1] * (j + 1)
            for l in range(1, j + 1):
                row[l] = row[l - 1] * (j - l + 1) // l
            binom_cache[j] = row
        return binom_cache[j]

    for (i, j), c in G.items():
        w = qh * i + ph * j - N
        base = K.mul(c, rpow(a * i + b * j))
        row = binoms(j)
        for l in range(j + 1):
            key = (w, l)
            out[key] = _fadd(K, out.get(key), K.mul_rat(base, row[l]))
    return {k: c for k, c in out.items() if not K.is_zero(c)}


def _bezout_for_edge(ph, qh):
    """(a, b) ≥ 0 with a·ph − b·qh = 1."""
    if qh == 1:
        return 1, ph - 1
    a = pow(ph, -1, qh)
    return a, (a * ph - 1) // qh


class _RawBranch:
    __slots__ = ("field", "stages", "tail")

    def __init__(self, field, stages, tail):
        self.field = field
        self.stages = stages
        self.tail = tail


def _expand(K, G, depth=0):
    """All branch constructions of G = 0 through the origin (y-direction)."""
    if depth > 64:
        raise PrecisionExhausted("Newton-Puiseux recursion too deep (non-squarefree input?)")
    out = []
    had_y, G = _strip_y_factor(G)
    if had_y:
        out.append(_RawBranch(K, [], ("zero",)))
        if G and all(j >= 1 for _i, j in G):
            raise RuntimeError("repeated y factor in a squarefree transform")
    if not G or (0, 0) in G:
        return out
    polygon = NewtonDiagram.from_points(G.keys())
    for (i0, j0), (i1, j1) in zip(polygon.vertices, polygon.vertices[1:]):
        di, dj = i1 - i0, j0 - j1
        d = gcd(di, dj)
        ph, qh = di // d, dj // d
        a, b = _bezout_for_edge(ph, qh)
        psi = [G.get((i0 + k * ph, j0 - k * qh), K.zero()) for k in range(d + 1)]
        for sq_factor, multiplicity in alg.psquarefree_levels(K, psi):
            for phi in alg.factor_squarefree(K, sq_factor):
                if alg.pdeg(K, phi) == 1:
                    K2 = K
                    rho = K.neg(phi[0])
                    G2 = G
                else:
                    K2 = K.extend(phi)
                    rho = K2.generator()
                    G2 = {e: K2.embed(c) for e, c in G.items()}
                G1 = _transform(K2, G2, qh, ph, a, b, rho)
                if multiplicity == 1:
                    subs = [_RawBranch(K2, [], ("ift", G1))]
                else:
                    subs = _expand(K2, G1, depth + 1)
                for rb in subs:
                    rho_l = rho
                    for lvl in range(K2.level, rb.field.level):
                        rho_l = TowerField(rb.field.levels[: lvl + 1]).embed(rho_l)
                    out.append(_RawBranch(rb.field, [(qh, ph, a, b, rho_l)] + rb.stages, rb.tail))
    return out


def branches_at_origin(f, policy=DEFAULT_POLICY):
    """One PuiseuxBranch per conjugacy class of analytic branches of f = 0 at 0.

    Multiplicities come from the squarefree decomposition; the expansion is
    certified by Σ mult·conj·(generic line order) = multiplicity of f.
    """
    if f.is_zero:
        raise ZeroPolynomial("cannot expand the zero polynomial")
    if (0,) * len(f.vars) in f.terms:
        raise NotVanishingAtOrigin("f(0,0) ≠ 0: no branches at the origin")
    branches = []
    for factor, mult in squarefree_decomposition(f):
        factor = factor.primitive_normal()
        work = factor
        if work.order_wrt("x") >= 1:
            branches.append(
                PuiseuxBranch(
                    axis=True,
                    field=TowerField(),
                    stages=[],
                    tail=("axis",),
                    mult=mult,
                    conj=1,
                    defining_factor=factor,
                )
            )
            work = work.shift_exp("x", -work.order_wrt("x"))
        if work.order_wrt("y") >= 1:
            branches.append(
                PuiseuxBranch(
                    axis=False,
                    field=TowerField(),
                    stages=[],
                    tail=("zero",),
                    mult=mult,
                    conj=1,
                    defining_factor=factor,
                )
            )
            work = work.shift_exp("y", -work.order_wrt("y"))
        if work.is_constant or (0,) * len(work.vars) in work.terms:
            continue
        ix, iy = work.vars.index("x"), work.vars.index("y")
        G = {(e[ix], e[iy]): Q(c) for e, c in work.terms.items()}
        for rb in _expand(TowerField(), G):
            branches.append(
                PuiseuxBranch(
                    axis=False,
                    field=rb.field,
                    stages=rb.stages,
                    tail=rb.tail,
                    mult=mult,
                    conj=rb.field.degree(),
                    defining_factor=factor,
                )
            )
    _certify_multiplicity(f, branches)
    return branches


def _certify_multiplicity(f, branches):
    expected = min(sum(e) for e in f.terms)
    got = sum(b.mult * b.conj * b.line_order() for b in branches)
    if got != expected:
        raise RuntimeError(
            f"branch expansion certificate failed: Σ mult·conj·(line order) = {got}, "
            f"multiplicity of f = {expected}"
        )


# -- orders along branches ------------------------------------------------------


def _substitute_branch(f, branch, order):
    """Series of f(x(s), y(s)) mod s^(order+1); exact for exact branches."""
    ix, iy = f.vars.index("x"), f.vars.index("y")
    if branch.axis:
        K0 = TowerField()
        out = {}
        for e, c in f.terms.items():
            if e[ix] == 0:
                out[e[iy]] = out.get(e[iy], Q(0)) + Q(c)
        return {k: c for k, c in out.items() if c != 0}, K0
    K = branch.field
    gamma, e, coeffs = branch.series(order)
    y_series = {k: c for k, c in coeffs.items() if k <= order}
    dy = max((ee[iy] for ee in f.terms), default=0)
    rows = [dict() for _ in range(dy + 1)]
    for ee, c in f.terms.items():
        i, j = ee[ix], ee[iy]
        k = e * i
        if k > order:
            continue
        rows[j][k] = _fadd(K, rows[j].get(k), K.mul_rat(K.pow(gamma, i), c))
    acc = {}
    for j in range(dy, -1, -1):
        acc = _s_mul(K, acc, y_series, order)
        acc = _s_add(K, acc, rows[j])
    return acc, K


def _raw_order_at(f, branch, order):
    series, K = _substitute_branch(f, branch, order)
    vals = [k for k, c in series.items() if not K.is_zero(c)]
    if vals and min(vals) <= order:
        return min(vals)
    return None


def order_along_branch(f, branch, policy=DEFAULT_POLICY):
    """ord_s f(x(s), y(s)) as an ExtNat, exact; INF iff the branch lies in f=0."""
    if f.is_zero:
        return INF
    if branch.axis:
        series, _K = _substitute_branch(f, branch, 0)
        return INF if not series else ExtNat(min(series))
    if branch.exact:
        gamma, e, coeffs = branch.series(1)
        top = max(coeffs, default=1)
        bound = (f.total_degree() + 1) * (e + top)
        v = _raw_order_at(f, branch, bound)
        return INF if v is None else ExtNat(v)
    T = policy.initial(max(f.total_degree(), 2))
    checked_membership = False
    while True:
        v = _raw_order_at(f, branch, T)
        if v is not None:
            return ExtNat(v)
        if T >= policy.cap and not checked_membership:
            checked_membership = True
            if _branch_inside_curve(f, branch, policy):
                return INF
        if T >= policy.hard_abort:
            raise PrecisionExhausted(
                "order did not materialize below the abort bound for a provably finite order"
            )
        T *= 2


def _branch_inside_curve(f, branch, policy):
    """Exact membership of the branch inside f = 0 via defining-factor splits."""
    from .invariants import i0_resultant  # invariants does not import puiseux

    F = branch.defining_factor
    g = mgcd(f, F)
    if g.is_constant:
        return False
    h = div_exact(F, g).primitive_normal()
    if h.is_constant:
        return True
    bound = i0_resultant(g, h)
    if bound.is_infinite:
        raise RuntimeError("squarefree factor split produced non-coprime parts")
    horizon = bound.value + 2
    v_g = _raw_order_at(g, branch, horizon)
    v_h = _raw_order_at(h, branch, horizon)
    if v_g is None and v_h is not None and v_h <= bound.value:
        return True
    if v_h is None and v_g is not None and v_g <= bound.value:
        return False
    raise RuntimeError("membership protocol could not attribute the branch to a factor")


# -- characteristic exponents / pair intersections -----------------------------


def characteristic_exponents(branch, policy=DEFAULT_POLICY):
    """CharacteristicSequence of the branch (certified past its conductor)."""
    return branch.characteristic(policy)


def _branch_equation_over_field(branch, order):
    """Equation of one conjugate: det(y·I − M) over K[x], y-monic of degree e.

    M is multiplication by the truncated y-series on K[x][u]/(u^e − x/γ).
    """
    K = branch.field
    gamma, e, coeffs = branch.series(order)
    inv_gamma = K.inv(gamma)
    cols = [[dict() for _r in range(e)] for _j in range(e)]
    for k, c in coeffs.items():
        if k > order:
            continue
        quo, rem = divmod(k, e)
        for j in range(e):
            extra, row = divmod(j + rem, e)
            xexp = quo + extra
            entry = cols[j][row]
            entry[xexp] = _fadd(K, entry.get(xexp), K.mul(c, K.pow(inv_gamma, xexp)))
    matrix = [
        [{(xe, 0): K.neg(c) for xe, c in cols[j][r].items()} for j in range(e)]
        for r in range(e)
    ]
    for r in range(e):
        matrix[r][r] = _b_add(K, matrix[r][r], {(0, 1): K.one()})
    return _b_det(K, matrix)


def _b_add(K, A, B):
    out = dict(A)
    for k, c in B.items():
        out[k] = _fadd(K, out.get(k), c)
    return {k: c for k, c in out.items() if not K.is_zero(c)}


def _b_mul(K, A, B):
    out = {}
    for (i1, j1), c in A.items():
        for (i2, j2), d in B.items():
            k = (i1 + i2, j1 + j2)
            out[k] = _fadd(K, out.get(k), K.mul(c, d))
    return {k: c for k, c in out.items() if not K.is_zero(c)}


def _b_det(K, matrix):
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    acc = {}
    for col in range(n):
        entry = matrix[0][col]
        if not entry:
            continue
        minor = [[row[c] for c in range(n) if c != col] for row in matrix[1:]]
        term = _b_mul(K, entry, _b_det(K, minor))
        if col % 2:
            term = {k: K.neg(c) for k, c in term.items()}
        acc = _b_add(K, acc, term)
    return acc


def _norm_bipoly_to_rational(field, B):
    """Norm of a {(i,j): element} polynomial down the whole tower."""
    while field.level > 0:
        sub = TowerField(field.levels[:-1])
        d = field.degrees[-1]
        m = field.levels[-1]
        cols = [[dict() for _r in range(d)] for _j in range(d)]
        for (i, j), c in B.items():
            for r in range(d):
                comp = c[r]
                if sub.is_zero(comp) if sub.level else comp == 0:
                    continue
                for jj in range(d):
                    wpow = alg._wpower_mod(sub, m, r + jj, d)
                    for rr in range(d):
                        if sub.is_zero(wpow[rr]) if sub.level else wpow[rr] == 0:
                            continue
                        entry = cols[jj][rr]
                        entry[(i, j)] = _fadd(sub, entry.get((i, j)), sub.mul(comp, wpow[rr]))
        matrix = [[cols[jj][rr] for jj in range(d)] for rr in range(d)]
        B = _b_det(sub, matrix)
        field = sub
    return B


def class_equation(branch, order):
    """Equation of the full conjugacy class as an MPoly over ℚ (truncation-accurate)."""
    eq = _branch_equation_over_field(branch, order)
    if branch.field.level:
        eq = _norm_bipoly_to_rational(branch.field, eq)
    return MPoly(("x", "y"), {k: Q(c) for k, c in eq.items() if c != 0})


def branch_pair_intersection(b1, b2, policy=DEFAULT_POLICY):
    """Total intersection multiplicity over all conjugate pairs of two classes.

    For rational classes (conj = 1 both sides) this is the plain pairwise
    intersection multiplicity.  INF iff the classes coincide; symmetric.
    """
    if b1 is b2:
        return INF
    if b1.axis and b2.axis:
        return INF
    if b1.axis or b2.axis:
        other = b2 if b1.axis else b1
        v = order_along_branch(MPoly.var(("x", "y"), "x"), other, policy)
        return INF if v.is_infinite else ExtNat(v.value * other.conj)
    eq_side, sub_side = (b2, b1) if b2.conj <= b1.conj else (b1, b2)
    bound = _pair_bound(eq_side, sub_side, policy)
    v = _class_order_of_equation(eq_side, sub_side, bound, policy)
    if v is None:
        return INF
    return ExtNat(v * sub_side.conj)


def _pair_bound(eq_side, sub_side, policy):
    """Certified bound on Σ_{b in eq class} i₀(rep_sub, b) for distinct classes."""
    F_eq = eq_side.defining_factor
    v0 = order_along_branch(F_eq, sub_side, policy)
    if not v0.is_infinite:
        return v0.value
    # same defining factor: the y-derivative separates branches of a squarefree curve
    probe = F_eq.derivative("y")
    if not probe.is_zero:
        v0 = order_along_branch(probe, sub_side, policy)
        if not v0.is_infinite:
            return v0.value
    probe = F_eq.derivative("x")
    v0 = order_along_branch(probe, sub_side, policy)
    if v0.is_infinite:
        raise RuntimeError("no finite probe order for the branch-pair bound")
    return v0.value


def _class_order_of_equation(eq_side, sub_side, bound, policy):
    """ord_s along one conjugate of sub_side of eq_side's class equation.

    None when the order exceeds the distinct-class bound, i.e. the classes
    are equal.
    """
    e1 = sub_side.ramification()
    e2 = eq_side.ramification()
    needed = bound + 1
    T2 = e2 * (needed + 2)
    T1 = max(needed + 1, 4)
    eq = class_equation(eq_side, T2)
    series, K = _substitute_branch(eq, sub_side, T1)
    h2 = (T2 + 1) // e2
    horizon = min(e1 * h2, T1 + 1) - 1
    if horizon < bound:
        raise RuntimeError("pair-intersection horizon below the certified bound")
    vals = [k for k, c in series.items() if not K.is_zero(c)]
    v = min(vals) if vals else None
    if v is None:
        return None
    if v > bound:
        raise RuntimeError("pair intersection exceeded its certified distinct-class bound")
    return v
