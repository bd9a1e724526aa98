"""Exact arithmetic in towers of simple algebraic extensions of ℚ.

A field is a tower ℚ(α₁)(α₂)…(α_k); each level stores the monic squarefree
minimal polynomial of its generator over the previous level.  Elements are
nested tuples: a level-k element is a tuple of level-(k−1) elements of fixed
length deg(m_k); level-0 elements are plain rationals.  All arithmetic is
exact; inversion uses the extended Euclidean algorithm one level down.

Univariate polynomials over a tower are dense coefficient lists (ascending).
Irreducible factorization over a tower runs Trager's norm descent, with
sympy supplying the base factorization over ℚ.
"""

import sympy

from .rationals import Q, QONE, QZERO, rat_den, rat_num


class TowerField:
    """Immutable tower of simple extensions over ℚ."""

    __slots__ = ("levels", "_degrees")

    def __init__(self, levels=()):
        self.levels = tuple(tuple(m) for m in levels)
        self._degrees = tuple(len(m) - 1 for m in self.levels)

    @property
    def level(self):
        return len(self.levels)

    @property
    def degrees(self):
        return self._degrees

    def degree(self):
        d = 1
        for k in self._degrees:
            d *= k
        return d

    def __eq__(self, other):
        return isinstance(other, TowerField) and self.levels == other.levels

    def __hash__(self):
        return hash(("TowerField", self.levels))

    def __repr__(self):
        return f"TowerField(level={self.level}, degrees={self._degrees})"

    # -- element constructors -----------------------------------------

    def zero(self):
        return self.from_rat(QZERO)

    def one(self):
        return self.from_rat(QONE)

    def from_rat(self, q):
        e = Q(q)
        for lvl in range(self.level):
            d = self._degrees[lvl]
            pad = _zero_raw(self, lvl)
            e = (e,) + (pad,) * (d - 1)
        return e

    def generator(self):
        """The top generator α_k as an element (level ≥ 1)."""
        if self.level == 0:
            raise ValueError("ℚ has no generator")
        d = self._degrees[-1]
        lower_zero = _zero_raw(self, self.level - 1)
        lower_one = _one_raw(self, self.level - 1)
        return (lower_zero, lower_one) + (lower_zero,) * (d - 2)

    def embed(self, elem):
        """Lift an element of the immediate subfield into this field."""
        if self.level == 0:
            raise ValueError("ℚ has no subfield to embed from")
        d = self._degrees[-1]
        pad = _zero_raw(self, self.level - 1)
        return (elem,) + (pad,) * (d - 1)

    def extend(self, minpoly):
        """New tower with one more level; minpoly: monic coeff list over self."""
        if len(minpoly) < 3:
            raise ValueError("extensions of degree < 2 should be resolved to elements")
        if not _is_one(self, minpoly[-1], self.level):
            raise ValueError("minimal polynomial must be monic")
        return TowerField(self.levels + (tuple(minpoly),))

    # -- element arithmetic ---------------------------------------------

    def add(self, a, b):
        return _add(self, a, b, self.level)

    def sub(self, a, b):
        return _add(self, a, _neg(self, b, self.level), self.level)

    def neg(self, a):
        return _neg(self, a, self.level)

    def mul(self, a, b):
        return _mul(self, a, b, self.level)

    def mul_rat(self, a, q):
        return _scale(self, a, Q(q), self.level)

    def inv(self, a):
        return _inv(self, a, self.level)

    def div(self, a, b):
        return _mul(self, a, _inv(self, b, self.level), self.level)

    def is_zero(self, a):
        return _is_zero(self, a, self.level)

    def is_rational(self, a):
        return self.as_rational(a) is not None

    def as_rational(self, a):
        """The rational value of the element, or None when not in ℚ."""
        lvl = self.level
        while lvl > 0:
            if any(not _is_zero(self, c, lvl - 1) for c in a[1:]):
                return None
            a = a[0]
            lvl -= 1
        return a

    def pow(self, a, n):
        acc = self.one()
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return acc

    def to_json(self):
        return {"tower_degrees": list(self._degrees), "minimal_polynomials": _levels_json(self)}


# -- raw recursive element helpers -------------------------------------------


def _zero_raw(field, lvl):
    e = QZERO
    for k in range(lvl):
        e = (e,) + (_zero_raw(field, k),) * (field.degrees[k] - 1)
    return e


def _one_raw(field, lvl):
    e = QONE
    for k in range(lvl):
        e = (e,) + (_zero_raw(field, k),) * (field.degrees[k] - 1)
    return e


def _is_zero(field, a, lvl):
    if lvl == 0:
        return a == 0
    return all(_is_zero(field, c, lvl - 1) for c in a)


def _is_one(field, a, lvl):
    if lvl == 0:
        return a == 1
    return _is_one(field, a[0], lvl - 1) and all(_is_zero(field, c, lvl - 1) for c in a[1:])


def _add(field, a, b, lvl):
    if lvl == 0:
        return a + b
    return tuple(_add(field, x, y, lvl - 1) for x, y in zip(a, b))


def _neg(field, a, lvl):
    if lvl == 0:
        return -a
    return tuple(_neg(field, c, lvl - 1) for c in a)


def _scale(field, a, q, lvl):
    if lvl == 0:
        return a * q
    return tuple(_scale(field, c, q, lvl - 1) for c in a)


def _mul(field, a, b, lvl):
    if lvl == 0:
        return a * b
    d = len(a)
    prod = [_zero_raw(field, lvl - 1) for _ in range(2 * d - 1)]
    for i, ai in enumerate(a):
        if _is_zero(field, ai, lvl - 1):
            continue
        for j, bj in enumerate(b):
            if _is_zero(field, bj, lvl - 1):
                continue
            prod[i + j] = _add(field, prod[i + j], _mul(field, ai, bj, lvl - 1), lvl - 1)
    m = field.levels[lvl - 1]
    # reduce modulo the monic minimal polynomial
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k]
        if _is_zero(field, c, lvl - 1):
            continue
        for j in range(d):
            prod[k - d + j] = _add(
                field, prod[k - d + j], _neg(field, _mul(field, c, m[j], lvl - 1), lvl - 1), lvl - 1
            )
        prod[k] = _zero_raw(field, lvl - 1)
    return tuple(prod[:d])


def _inv(field, a, lvl):
    if lvl == 0:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return QONE / a
    if _is_zero(field, a, lvl):
        raise ZeroDivisionError("inverse of zero element")
    sub = TowerField(field.levels[: lvl - 1])
    m = list(field.levels[lvl - 1])
    # extended Euclid in K_{lvl-1}[w]: u·a + v·m = 1
    r0, r1 = m, list(a)
    s0, s1 = [sub.zero()], [sub.one()]
    while True:
        r1 = _ptrim(sub, r1)
        if len(r1) == 0:
            raise ZeroDivisionError("element not invertible (minimal polynomial not irreducible?)")
        if len(r1) == 1:
            c = sub.inv(r1[0])
            return _pad_tuple(field, [sub.mul(c, x) for x in s1], lvl)
        q, r = _pdivmod(sub, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(sub, s0, _pmul(sub, q, s1))


def _pad_tuple(field, coeffs, lvl):
    d = field.degrees[lvl - 1]
    out = list(coeffs[:d])
    while len(out) < d:
        out.append(_zero_raw(field, lvl - 1))
    return tuple(out)


def _levels_json(field):
    out = []
    for lvl, m in enumerate(field.levels):
        sub = TowerField(field.levels[:lvl])
        out.append([_elem_json(sub, c) for c in m])
    return out


def _elem_json(field, a):
    q = field.as_rational(a)
    if q is not None:
        n, d = rat_num(q), rat_den(q)
        return str(n) if d == 1 else f"{n}/{d}"
    return [_elem_json(TowerField(field.levels[:-1]), c) for c in a]


# -- dense univariate polynomials over a tower field -------------------------


def _ptrim(field, p):
    p = list(p)
    while p and field.is_zero(p[-1]):
        p.pop()
    return p


def pdeg(field, p):
    return len(_ptrim(field, p)) - 1


def padd(field, p, q):
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        a = p[k] if k < len(p) else field.zero()
        b = q[k] if k < len(q) else field.zero()
        out.append(field.add(a, b))
    return _ptrim(field, out)


def _psub(field, p, q):
    return padd(field, p, [field.neg(c) for c in q])


def _pmul(field, p, q):
    if not p or not q:
        return []
    out = [field.zero()] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if field.is_zero(a):
            continue
        for j, b in enumerate(q):
            if field.is_zero(b):
                continue
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return _ptrim(field, out)


def pmul(field, p, q):
    return _pmul(field, p, q)


def _pdivmod(field, p, q):
    q = _ptrim(field, q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = field.inv(q[-1])
    rem = list(p)
    quot = [field.zero()] * max(0, len(rem) - len(q) + 1)
    while len(_ptrim(field, rem)) >= len(q):
        rem = _ptrim(field, rem)
        shift = len(rem) - len(q)
        c = field.mul(rem[-1], inv_lc)
        quot[shift] = field.add(quot[shift], c)
        for j, b in enumerate(q):
            rem[shift + j] = field.sub(rem[shift + j], field.mul(c, b))
    return _ptrim(field, quot), _ptrim(field, rem)


def pdivmod(field, p, q):
    return _pdivmod(field, p, q)


def pmonic(field, p):
    p = _ptrim(field, p)
    if not p:
        return p
    inv_lc = field.inv(p[-1])
    return [field.mul(c, inv_lc) for c in p]


def pgcd(field, p, q):
    a, b = _ptrim(field, p), _ptrim(field, q)
    while b:
        _, r = _pdivmod(field, a, b)
        a, b = b, _ptrim(field, r)
    return pmonic(field, a)


def pderiv(field, p):
    return _ptrim(field, [field.mul_rat(c, k) for k, c in enumerate(p)][1:])


def peval(field, p, x):
    acc = field.zero()
    for c in reversed(_ptrim(field, p)):
        acc = field.add(field.mul(acc, x), c)
    return acc


def pshift(field, p, c):
    """p(z + c) by Horner-style synthetic substitution."""
    out = []
    for coeff in reversed(_ptrim(field, p)):
        out = padd(field, _pmul(field, out, [c, field.one()]), [coeff])
    return out


def psquarefree_levels(field, p):
    """[(squarefree factor, multiplicity)] for a monic polynomial over the field."""
    p = pmonic(field, p)
    out = []
    i = 1
    g = pgcd(field, p, pderiv(field, p))
    c, _ = _pdivmod(field, p, g)
    while pdeg(field, c) > 0:
        g_next = pgcd(field, g, c)
        piece, _ = _pdivmod(field, c, g_next)
        if pdeg(field, piece) > 0:
            out.append((pmonic(field, piece), i))
        c = g_next
        g, _ = _pdivmod(field, g, g_next)
        i += 1
    return out


# -- norms and Trager factorization ------------------------------------------


def norm_to_subfield(field, p):
    """Norm of p ∈ K[z] down one level: resultant with the top minimal polynomial.

    Computed as det of the multiplication-by-p(z,·) matrix on the module
    K_{k-1}[z]^d, via cofactor expansion (top degrees are small).
    """
    sub = TowerField(field.levels[:-1])
    d = field.degrees[-1]
    m = field.levels[-1]
    # p coefficients are level-k elements = tuples of d level-(k-1) elements.
    # Build the d×d matrix over K_{k-1}[z]: column j = coefficients of w^j·p mod m.
    zero_poly = []
    cols = []
    basis = [sub.zero()] * d
    for j in range(d):
        wj = list(basis)
        wj[j] = sub.one()
        # multiply by p: entry rows r: Σ_i p_i(z)·(w^j reduced) — we need w^j * p mod m
        # p as polynomial in w with K_{k-1}[z] coefficients:
        # p = Σ_r (Σ_i p[i][r] z^i) w^r
        col = [[] for _ in range(d)]  # col[r] = K_{k-1}[z] polynomial
        for r in range(d):
            coeff_poly = [c[r] for c in p]  # z-coefficients at w^r
            if all(sub.is_zero(c) for c in coeff_poly):
                continue
            # multiply w^r by w^j and reduce mod m(w)
            wpow = _wpower_mod(sub, m, r + j, d)
            for rr in range(d):
                if sub.is_zero(wpow[rr]):
                    continue
                col[rr] = padd(sub, col[rr], [sub.mul(c, wpow[rr]) for c in coeff_poly])
        cols.append(col)
    matrix = [[cols[j][r] for j in range(d)] for r in range(d)]
    return _pdet(sub, matrix)


def _wpower_mod(sub, m, n, d):
    """Coefficients of w^n mod m(w) over the subfield."""
    out = [sub.zero()] * d
    if n < d:
        out[n] = sub.one()
        return out
    acc = [sub.zero()] * (d + 1)
    acc[d] = sub.one()  # w^d
    acc = _reduce_once(sub, m, acc, d)
    for _ in range(n - d):
        acc = [sub.zero()] + acc
        acc = _reduce_once(sub, m, acc, d)
    return acc[:d] + [sub.zero()] * (d - len(acc[:d]))


def _reduce_once(sub, m, acc, d):
    while len(acc) > d:
        c = acc[-1]
        if not sub.is_zero(c):
            for j in range(d):
                acc[len(acc) - 1 - d + j] = sub.sub(acc[len(acc) - 1 - d + j], sub.mul(c, m[j]))
        acc.pop()
    while len(acc) < d:
        acc.append(sub.zero())
    return acc


def _pdet(field, matrix):
    """Determinant of a matrix of K[z] polynomials by cofactor expansion."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    acc = []
    for col in range(n):
        entry = matrix[0][col]
        if not entry:
            continue
        minor = [[row[c] for c in range(n) if c != col] for row in matrix[1:]]
        term = _pmul(field, entry, _pdet(field, minor))
        acc = padd(field, acc, term) if col % 2 == 0 else _psub(field, acc, term)
    return acc


def factor_rational_poly(coeffs):
    """Monic irreducible factors (with multiplicities) of a ℚ[z] polynomial via sympy."""
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(rat_num(c), rat_den(c)) * z**k for k, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, z, domain="QQ"))
    out = []
    for poly, mult in sorted(factors, key=lambda fm: (fm[0].degree(), fm[0].all_coeffs())):
        monic = poly.monic()
        cs = [Q(c.p, c.q) for c in reversed(monic.all_coeffs())]
        out.append((cs, mult))
    return out


_TRAGER_SHIFTS = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 7, -7, 11]


def factor_squarefree(field, p):
    """Monic irreducible factors of a monic squarefree p over the tower field."""
    p = pmonic(field, p)
    deg = pdeg(field, p)
    if deg <= 0:
        return []
    if deg == 1:
        return [p]
    if field.level == 0:
        out = []
        for cs, mult in factor_rational_poly(p):
            if mult != 1:  # pragma: no cover - input squarefree
                raise ValueError("squarefree factorization expected multiplicity 1")
            out.append(cs)
        return out
    sub = TowerField(field.levels[:-1])
    theta = field.generator()
    for s in _TRAGER_SHIFTS:
        shift = field.mul_rat(theta, s)
        shifted = pshift(field, p, shift) if s else list(p)
        norm = norm_to_subfield(field, shifted)
        dn = pgcd(sub, norm, pderiv(sub, norm))
        if pdeg(sub, dn) != 0:
            continue  # norm not squarefree; try the next shift
        out = []
        total = 0
        for factor_sub in factor_squarefree(sub, pmonic(sub, norm)):
            lifted = [field.embed(c) for c in factor_sub]
            if s:
                lifted = pshift(field, lifted, field.neg(shift))
            h = pgcd(field, p, lifted)
            dh = pdeg(field, h)
            if dh >= 1:
                out.append(pmonic(field, h))
                total += dh
        if total != deg:  # pragma: no cover - Trager guarantee
            raise RuntimeError("Trager factorization lost degrees")
        return sorted(out, key=lambda f: (len(f), str(f)))
    raise RuntimeError("no squarefree norm found; minimal polynomial may be reducible")
