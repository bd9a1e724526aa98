"""Sparse exact polynomials over ℚ in named variables.

One class covers every polynomial the package needs: germs in (x, y),
resultant outputs in x, pencils carrying the symbolic parameter t, and the
auxiliary variables used for norms of algebraic numbers.  Values are
immutable after construction; every operation is a pure function.

Coefficient arithmetic is exact (gmpy2 rationals).  Resultants use the
subresultant PRS, not naive determinant expansion; gcds use primitive PRS
with subresultant damping.
"""

from .errors import SingularMatrix, ZeroPolynomial
from .rationals import Q, QONE, QZERO, rat_gcd, rat_str

# Preferred display/processing order for the variables this package uses.
_VAR_PRIORITY = {"x": 0, "y": 1, "t": 2, "z": 3, "w": 4}


def _var_sort_key(name):
    return (_VAR_PRIORITY.get(name, 99), name)


class MPoly:
    """Immutable sparse polynomial: map from exponent tuples to nonzero rationals."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms):
        self.vars = tuple(variables)
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(variables):
        return MPoly(variables, {})

    @staticmethod
    def const(variables, value):
        value = Q(value)
        if value == 0:
            return MPoly.zero(variables)
        return MPoly(variables, {(0,) * len(variables): value})

    @staticmethod
    def var(variables, name):
        i = tuple(variables).index(name)
        e = tuple(1 if k == i else 0 for k in range(len(variables)))
        return MPoly(variables, {e: QONE})

    # -- basic structure ----------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return all(all(v == 0 for v in e) for e in self.terms)

    def constant_value(self):
        if self.is_zero:
            return QZERO
        ((e, c),) = self.terms.items()
        if any(e):
            raise ValueError("not a constant polynomial")
        return c

    def degree(self, name):
        if self.is_zero:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def order_wrt(self, name):
        """Smallest exponent of `name`; None for the zero polynomial."""
        if self.is_zero:
            return None
        i = self.vars.index(name)
        return min(e[i] for e in self.terms)

    def uses(self, name):
        i = self.vars.index(name)
        return any(e[i] for e in self.terms)

    def key(self):
        if self._hash is None:
            self._hash = (self.vars, tuple(sorted(self.terms.items())))
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = align(self, other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic ----------------------------------------------------

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        a, b = align(self, _coerce(other, self.vars))
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, QZERO) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(a.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other, self.vars))

    def __rsub__(self, other):
        return _coerce(other, self.vars) - self

    def __mul__(self, other):
        other = _coerce(other, self.vars)
        a, b = align(self, other)
        if a.is_zero or b.is_zero:
            return MPoly.zero(a.vars)
        if b.is_constant:
            c0 = b.constant_value()
            return MPoly(a.vars, {e: c * c0 for e, c in a.terms.items()})
        if a.is_constant:
            c0 = a.constant_value()
            return MPoly(a.vars, {e: c * c0 for e, c in b.terms.items()})
        out = {}
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(i + j for i, j in zip(ea, eb))
                s = out.get(e)
                out[e] = ca * cb if s is None else s + ca * cb
        return MPoly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = Q(c)
        if c == 0:
            return MPoly.zero(self.vars)
        return MPoly(self.vars, {e: v * c for e, v in self.terms.items()})

    # -- calculus / substitution ---------------------------------------

    def derivative(self, name):
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            out[ne] = out.get(ne, QZERO) + c * e[i]
        return MPoly(self.vars, out)

    def substitute(self, mapping):
        """Substitute polynomials (or rationals) for variables, exactly."""
        poly_map = dict(mapping)
        target_vars = None
        for val in poly_map.values():
            if isinstance(val, MPoly):
                target_vars = val.vars if target_vars is None else _union_vars(target_vars, val.vars)
        if target_vars is None:
            target_vars = self.vars
        else:
            leftover = tuple(v for v in self.vars if v not in poly_map)
            target_vars = _union_vars(target_vars, leftover)

        images = []
        for name in self.vars:
            if name in poly_map:
                val = poly_map[name]
                img = val if isinstance(val, MPoly) else MPoly.const(target_vars, val)
                images.append(_extend(img, target_vars))
            else:
                images.append(MPoly.var(target_vars, name))

        pow_cache = [dict() for _ in images]

        def power(i, n):
            cache = pow_cache[i]
            got = cache.get(n)
            if got is None:
                got = images[i] ** n
                cache[n] = got
            return got

        acc = MPoly.zero(target_vars)
        for e, c in sorted(self.terms.items()):
            term = MPoly.const(target_vars, c)
            for i, n in enumerate(e):
                if n:
                    term = term * power(i, n)
            acc = acc + term
        return acc

    def eval_at(self, assignment):
        """Evaluate some variables at rationals, returning a polynomial in the rest."""
        idx = {self.vars.index(n): Q(v) for n, v in assignment.items()}
        keep = [i for i in range(len(self.vars)) if i not in idx]
        new_vars = tuple(self.vars[i] for i in keep)
        out = {}
        for e, c in self.terms.items():
            val = c
            for i, q in idx.items():
                if e[i]:
                    val = val * q ** e[i]
            if val == 0:
                continue
            ne = tuple(e[i] for i in keep)
            s = out.get(ne, QZERO) + val
            if s == 0:
                out.pop(ne, None)
            else:
                out[ne] = s
        return MPoly(new_vars, out)

    # -- views along one variable --------------------------------------

    def dense_in(self, name):
        """Coefficient list [c_0, ..., c_d] wrt `name`; coefficients keep all vars."""
        if self.is_zero:
            return []
        i = self.vars.index(name)
        d = self.degree(name)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1 :]
            buckets[e[i]][ne] = c
        return [MPoly(self.vars, b) for b in buckets]

    @staticmethod
    def from_dense(variables, name, coeffs):
        i = tuple(variables).index(name)
        out = {}
        for k, poly in enumerate(coeffs):
            if poly is None or poly.is_zero:
                continue
            for e, c in _extend(poly, variables).terms.items():
                ne = e[:i] + (e[i] + k,) + e[i + 1 :]
                out[ne] = out.get(ne, QZERO) + c
        return MPoly(variables, {e: c for e, c in out.items() if c != 0})

    def leading_coeff(self, name):
        d = self.degree(name)
        if d < 0:
            return MPoly.zero(self.vars)
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == d:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return MPoly(self.vars, out)

    def coeff_wrt(self, name, k):
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return MPoly(self.vars, out)

    def shift_exp(self, name, k):
        """Multiply by name**k (k ≥ 0) or divide exactly by name**-k (k < 0)."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            ne = e[i] + k
            if ne < 0:
                raise ValueError("inexact monomial division")
            out[e[:i] + (ne,) + e[i + 1 :]] = c
        return MPoly(self.vars, out)

    # -- canonical form -------------------------------------------------

    def rational_content(self):
        """Positive rational content (zero polynomial → 0)."""
        return rat_gcd(self.terms.values())

    def leading_term_key(self):
        return max((sum(e), e) for e in self.terms)

    def primitive_normal(self):
        """Integer-primitive scalar multiple with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.rational_content()
        lead = max((sum(e), e) for e in self.terms)[1]
        if self.terms[lead] < 0:
            c = -c
        return MPoly(self.vars, {e: v / c for e, v in self.terms.items()})


def _coerce(value, variables):
    if isinstance(value, MPoly):
        return value
    return MPoly.const(variables, value)


def _union_vars(a, b):
    merged = set(a) | set(b)
    return tuple(sorted(merged, key=_var_sort_key))


def _extend(p, variables):
    if p.vars == tuple(variables):
        return p
    positions = []
    for name in p.vars:
        if name not in variables:
            raise ValueError(f"variable {name} missing from target tuple")
        positions.append(tuple(variables).index(name))
    n = len(variables)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for pos, exp in zip(positions, e):
            ne[pos] = exp
        out[tuple(ne)] = c
    return MPoly(variables, out)


def align(a, b):
    if a.vars == b.vars:
        return a, b
    u = _union_vars(a.vars, b.vars)
    return _extend(a, u), _extend(b, u)


# -- division ------------------------------------------------------------


def div_exact(f, g):
    """Exact division f / g; raises ValueError when g does not divide f."""
    f, g = align(f, g)
    if g.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if g.is_constant:
        return f.scale(QONE / g.constant_value())
    quot = {}
    rem = dict(f.terms)
    g_lead = max((sum(e), e) for e in g.terms)[1]
    g_lc = g.terms[g_lead]
    g_items = list(g.terms.items())
    while rem:
        lead = max((sum(e), e) for e in rem)[1]
        diff = tuple(a - b for a, b in zip(lead, g_lead))
        if any(d < 0 for d in diff):
            raise ValueError("inexact polynomial division")
        c = rem[lead] / g_lc
        quot[diff] = quot.get(diff, QZERO) + c
        for eg, cg in g_items:
            e = tuple(a + b for a, b in zip(diff, eg))
            s = rem.get(e, QZERO) - c * cg
            if s == 0:
                rem.pop(e, None)
            else:
                rem[e] = s
    return MPoly(f.vars, quot)


def divides(g, f):
    try:
        div_exact(f, g)
        return True
    except ValueError:
        return False


def prem(f, g, name):
    """Pseudo-remainder of f by g wrt `name`: lc(g)^(df-dg+1) f = q g + prem."""
    f, g = align(f, g)
    df, dg = f.degree(name), g.degree(name)
    if dg < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if df < dg:
        return f
    fc = f.dense_in(name)
    gc = g.dense_in(name)
    lc_g = gc[-1]
    r = list(fc)
    zero = MPoly.zero(f.vars)
    for k in range(df - dg, -1, -1):
        lead = r[dg + k]
        r = [c * lc_g for c in r]
        if not lead.is_zero:
            for j in range(dg + 1):
                r[j + k] = r[j + k] - lead * gc[j]
        r[dg + k] = zero
    while r and r[-1].is_zero:
        r.pop()
    return MPoly.from_dense(f.vars, name, r)


# -- content / gcd ---------------------------------------------------------


def content_wrt(f, name):
    """Gcd of the coefficients of f viewed in `name` (canonical primitive form)."""
    coeffs = [c for c in f.dense_in(name) if not c.is_zero]
    if not coeffs:
        return MPoly.zero(f.vars)
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = gcd(acc, c)
        if acc.is_constant:
            break
    return acc.primitive_normal()


def _main_var(f, g):
    for name in sorted(set(f.vars) | set(g.vars), key=_var_sort_key):
        fu = name in f.vars and f.uses(name)
        gu = name in g.vars and g.uses(name)
        if fu or gu:
            return name
    return None


def gcd(f, g):
    """Canonical gcd over ℚ (integer-primitive, positive leading coefficient)."""
    f, g = align(f, g)
    if f.is_zero:
        return g.primitive_normal()
    if g.is_zero:
        return f.primitive_normal()
    if f.is_constant or g.is_constant:
        return MPoly.const(f.vars, 1)
    name = _main_var(f, g)
    if not f.uses(name) or not g.uses(name):
        # `name` appears in only one argument: it cannot divide the other,
        # so reduce to gcd of that argument's coefficients and the other poly.
        if f.uses(name):
            return gcd(content_wrt(f, name), g)
        return gcd(f, content_wrt(g, name))
    cf = content_wrt(f, name)
    cg = content_wrt(g, name)
    a = div_exact(f, cf)
    b = div_exact(g, cg)
    if a.degree(name) < b.degree(name):
        a, b = b, a
    # primitive PRS with subresultant damping
    gg = MPoly.const(f.vars, 1)
    hh = MPoly.const(f.vars, 1)
    while True:
        delta = a.degree(name) - b.degree(name)
        r = prem(a, b, name)
        if r.is_zero:
            break
        if r.degree(name) == 0:
            b = MPoly.const(f.vars, 1)
            break
        a, b = b, div_exact(r, gg * hh**delta)
        gg = a.leading_coeff(name)
        if delta >= 1:
            hh = div_exact(gg**delta, hh ** (delta - 1))
        elif delta == 0:
            pass
        else:  # pragma: no cover
            raise RuntimeError("degree sequence not decreasing")
    if b.degree(name) == 0:
        prim = MPoly.const(f.vars, 1)
    else:
        prim = div_exact(b, content_wrt(b, name))
    return (gcd(cf, cg) * prim).primitive_normal()


def gcd_many(polys):
    acc = None
    for p in polys:
        acc = p if acc is None else gcd(acc, p)
        if acc is not None and acc.is_constant and not acc.is_zero:
            return MPoly.const(p.vars, 1)
    return acc


# -- resultant (subresultant PRS) ------------------------------------------


def resultant(f, g, name):
    """Exact resultant of f and g wrt `name` (zero iff common factor in `name`).

    Subresultant PRS (Cohen, Algorithm 3.3.7); all divisions are exact in the
    coefficient ring, so intermediate coefficient growth stays polynomial.
    """
    f, g = align(f, g)
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("resultant with the zero polynomial")
    df, dg = f.degree(name), g.degree(name)
    if df == 0 and dg == 0:
        return MPoly.const(f.vars, 1)
    if df == 0:
        return f**dg
    if dg == 0:
        return g**df
    sign = 1
    if df < dg:
        f, g = g, f
        df, dg = dg, df
        if (df * dg) % 2:
            sign = -sign
    ca = f.rational_content()
    cb = g.rational_content()
    a = f.scale(QONE / ca)
    b = g.scale(QONE / cb)
    scalar = ca**dg * cb**df
    one = MPoly.const(f.vars, 1)
    gg, hh = one, one
    while True:
        da, db = a.degree(name), b.degree(name)
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = prem(a, b, name)
        if r.is_zero:
            return MPoly.zero(f.vars)
        a = b
        b = div_exact(r, gg * hh**delta)
        gg = a.leading_coeff(name)
        if delta == 1:
            hh = gg
        elif delta > 1:
            hh = div_exact(gg**delta, hh ** (delta - 1))
        if b.degree(name) == 0:
            da = a.degree(name)
            final = b if da == 0 else div_exact(b**da, hh ** (da - 1))
            res = final.scale(scalar)
            return res if sign == 1 else -res


# -- squarefree decomposition (Yun) ----------------------------------------


def squarefree_decomposition(f):
    """[(factor, multiplicity)] with pairwise-coprime squarefree factors.

    The product of factor**multiplicity equals f up to a rational constant.
    Factors are grouped per multiplicity level and canonically normalized.
    """
    if f.is_zero:
        raise ZeroPolynomial("squarefree decomposition of 0")
    if f.is_constant:
        return []
    levels = {}

    def add_level(p, m):
        if p.is_constant:
            return
        p = p.primitive_normal()
        levels[m] = levels[m] * p if m in levels else p

    def yun(p, name):
        dp = p.derivative(name)
        g = gcd(p, dp)
        b = div_exact(p, g)
        c = div_exact(dp, g)
        i = 1
        while b.degree(name) > 0 or b.uses(name):
            d = c - b.derivative(name)
            a = gcd(b, d)
            if not a.is_constant:
                add_level(a, i)
            b = div_exact(b, a)
            c = div_exact(d, a)
            i += 1

    work = f
    for name in sorted(f.vars, key=_var_sort_key, reverse=True):
        if not work.uses(name):
            continue
        cont = content_wrt(work, name)
        prim = div_exact(work, cont)
        yun(prim, name)
        work = cont
        if work.is_constant:
            break
    return sorted(((p, m) for m, p in levels.items()), key=lambda it: (it[1], it[0].key()))


def squarefree_part(f):
    acc = MPoly.const(f.vars, 1)
    for p, _m in squarefree_decomposition(f):
        acc = acc * p
    return acc


def is_reduced(f):
    return all(m == 1 for _p, m in squarefree_decomposition(f))


# -- linear coordinate changes ---------------------------------------------


def apply_linear(f, m11, m12, m21, m22, xname="x", yname="y"):
    """f(m11·x + m12·y, m21·x + m22·y); the matrix must be invertible."""
    m11, m12, m21, m22 = Q(m11), Q(m12), Q(m21), Q(m22)
    if m11 * m22 - m12 * m21 == 0:
        raise SingularMatrix("linear change with zero determinant")
    xv = MPoly.var(f.vars, xname)
    yv = MPoly.var(f.vars, yname)
    return f.substitute({xname: xv.scale(m11) + yv.scale(m12), yname: xv.scale(m21) + yv.scale(m22)})


# -- canonical printing (exact-algebra external interface) ------------------


def format_poly(f, xname="x", yname="y"):
    """Canonical text form: graded lexicographic by (i+j, i), parseable back."""
    if f.is_zero:
        return "0"
    ix = f.vars.index(xname) if xname in f.vars else None
    iy = f.vars.index(yname) if yname in f.vars else None

    def term_key(e):
        i = e[ix] if ix is not None else 0
        j = e[iy] if iy is not None else 0
        return (i + j, i)

    pieces = []
    for e, c in sorted(f.terms.items(), key=lambda item: term_key(item[0])):
        i = e[ix] if ix is not None else 0
        j = e[iy] if iy is not None else 0
        extra = [(name, e[k]) for k, name in enumerate(f.vars) if k not in (ix, iy) and e[k]]
        mono = []
        if i:
            mono.append(f"{xname}^{i}" if i > 1 else xname)
        if j:
            mono.append(f"{yname}^{j}" if j > 1 else yname)
        for name, k in extra:
            mono.append(f"{name}^{k}" if k > 1 else name)
        coeff = c
        sign = "-" if coeff < 0 else "+"
        coeff = abs(coeff)
        if mono and coeff == 1:
            body = "*".join(mono)
        elif mono:
            body = rat_str(coeff) + "*" + "*".join(mono)
        else:
            body = rat_str(coeff)
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
