"""Local invariants at the origin: intersection multiplicity, Milnor number,
finiteness of map germs, and the generic pencil Milnor number μ₀(fⁿ − t·gᵐ).

Two exact engines coexist.  The public intersection_multiplicity follows the
regularized-resultant recipe (shared random linear change, x-order of the
resultant, recomputed with a second change and required to agree).  The
internal fulton_i0 computes the same number by the axiomatic Euclidean
reduction, needs no coordinate change, and carries the pencil parameter t
symbolically: a coefficient is nonzero iff it is a nonzero polynomial in t,
so results hold for all but finitely many t.
"""

import random
from dataclasses import dataclass
from math import gcd as int_gcd

from .errors import (
    CommonComponent,
    Disagreement,
    NjacError,
    NonGenericFailure,
    NotVanishingAtOrigin,
    ZeroPolynomial,
)
from .polynomials import MPoly, _extend, apply_linear, div_exact, gcd as mgcd, prem, resultant
from .rationals import INF, ExtNat, Q, QONE


def _origin_unit(p):
    """True when p(0,0) ≠ 0 (a nonzero polynomial in t counts as nonzero)."""
    ix = p.vars.index("x") if "x" in p.vars else None
    iy = p.vars.index("y") if "y" in p.vars else None
    for e, _c in p.terms.items():
        if (ix is None or e[ix] == 0) and (iy is None or e[iy] == 0):
            return True
    return False


def _vanishes_at_origin(p):
    return not p.is_zero and not _origin_unit(p)


def _y_order_at_x0(p):
    """ord_y p(0, y), treating t-coefficients as nonzero polynomials; None if ≡ 0."""
    ix = p.vars.index("x")
    iy = p.vars.index("y")
    vals = [e[iy] for e in p.terms if e[ix] == 0]
    return min(vals) if vals else None


def multiplicity(p):
    """Order of the germ: the lowest (x,y)-degree of a nonzero term."""
    if p.is_zero:
        raise ZeroPolynomial("multiplicity of 0 is undefined")
    ix = p.vars.index("x")
    iy = p.vars.index("y")
    return min(e[ix] + e[iy] for e in p.terms)


# -- Fulton-style exact local intersection number ------------------------------


_fulton_cache = {}


def fulton_i0(f, g):
    """Local intersection multiplicity at the origin by axiomatic reduction.

    Exact in any coordinates; INF iff f and g share a component through 0.
    With a t variable present the result is the value for generic t.
    """
    key = (f.key(), g.key())
    hit = _fulton_cache.get(key)
    if hit is not None:
        return hit
    val = _fulton(f, g)
    _fulton_cache[key] = val
    return val


def _fulton(f, g):
    if f.is_zero:
        return ExtNat(0) if _origin_unit(g) else INF
    if g.is_zero:
        return ExtNat(0) if _origin_unit(f) else INF
    acc = 0
    # Subresultant damping: each pseudo-remainder is divided exactly by
    # gg·hh^δ (Cohen's recurrence), keeping coefficient growth polynomial.
    # Divisors and leading coefficients are y-free, so after stripping their
    # x-power they are units at the origin: every correction is
    # (x-order)·ord_y(g(0,·)).  The damping state resets whenever the pair is
    # modified outside the PRS recurrence (swap, x-strip, gcd division).
    gg = hh = None
    while True:
        if _origin_unit(f) or _origin_unit(g):
            return ExtNat(acc) if acc >= 0 else _overshoot()
        ax = f.order_wrt("x")
        bx = g.order_wrt("x")
        if ax >= 1 and bx >= 1:
            return INF
        if ax >= 1:
            f = f.shift_exp("x", -ax)
            oy = _y_order_at_x0(g)
            if oy is None:  # x | g would contradict bx == 0
                return INF
            acc += ax * oy
            gg = hh = None
            continue
        if bx >= 1:
            g = g.shift_exp("x", -bx)
            oy = _y_order_at_x0(f)
            if oy is None:
                return INF
            acc += bx * oy
            gg = hh = None
            continue
        df, dg = f.degree("y"), g.degree("y")
        if df == 0 or dg == 0:
            # x-free and y-free and non-unit is impossible for a nonzero
            # polynomial (its value at the origin is a nonzero t-polynomial)
            return ExtNat(acc)
        if df < dg:
            f, g = g, f
            df, dg = dg, df
            gg = hh = None
        lc = g.leading_coeff("y")
        delta = df - dg
        r = prem(f, g, "y")
        if r.is_zero:
            common = mgcd(f, g)
            if _vanishes_at_origin(common):
                return INF
            f = div_exact(f, common)
            g = div_exact(g, common)
            gg = hh = None
            continue
        oy = _y_order_at_x0(g)
        # I(f,g) = I(g, prem) − (δ+1)·I(g, lc)
        acc -= (delta + 1) * lc.order_wrt("x") * oy
        if gg is not None:
            divisor = gg * hh**delta
            r = div_exact(r, divisor)
            acc += divisor.order_wrt("x") * oy
        cont = r.rational_content()
        if cont != 1:
            r = r.scale(QONE / cont)
        gg = lc
        if hh is None:
            hh = gg**delta if delta >= 1 else MPoly.const(f.vars, 1)
        elif delta == 1:
            hh = gg
        elif delta > 1:
            hh = div_exact(gg**delta, hh ** (delta - 1))
        f, g = g, r


def _overshoot():  # pragma: no cover - guarded by theory
    raise NjacError("negative intersection bookkeeping; implementation fault")


# -- regularized resultant route (the public operation) ------------------------


@dataclass
class RegularizedPair:
    """Shared linear change putting a pair of germs in resultant position."""

    original_f: MPoly
    original_g: MPoly
    matrix: tuple
    f: MPoly
    g: MPoly


def _regular_for(p, q):
    """Whether q = p∘(linear change) is y-general with constant top coefficient."""
    oy = _y_order_at_x0(q)
    if oy is None or oy != multiplicity(p):
        return False
    return q.leading_coeff("y").is_constant


def regularize_pair(f, g, rng, max_tries=64):
    for _ in range(max_tries):
        entries = [rng.randint(-9, 9) for _ in range(4)]
        m11, m12, m21, m22 = entries
        if m11 * m22 - m12 * m21 == 0:
            continue
        f2 = apply_linear(f, m11, m12, m21, m22)
        g2 = apply_linear(g, m11, m12, m21, m22)
        if _regular_for(f, f2) and _regular_for(g, g2):
            return RegularizedPair(f, g, tuple(entries), f2, g2)
    raise NjacError("could not regularize the pair with random linear changes")


def _resultant_order(pair):
    r = resultant(pair.f, pair.g, "y")
    if r.is_zero:
        raise ZeroDivisionError("resultant vanished for a coprime pair")
    return r.order_wrt("x")


def intersection_multiplicity(f, g, seed=0):
    """i₀ of the germs at the origin (spec route: regularize + x-order of Res_y).

    Computed twice with independent random changes; the two runs must agree
    (resampled up to 5 times, then Disagreement).  ∞ iff a common component
    passes through the origin; 0 when either germ is a unit.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("intersection multiplicity needs nonzero germs")
    if _origin_unit(f) or _origin_unit(g):
        return ExtNat(0)
    common = mgcd(f, g)
    if _vanishes_at_origin(common):
        return INF
    if not common.is_constant:
        f = div_exact(f, common)
        g = div_exact(g, common)
        if _origin_unit(f) or _origin_unit(g):
            return ExtNat(0)
    rng = random.Random(seed)
    for _attempt in range(5):
        a = _resultant_order(regularize_pair(f, g, rng))
        b = _resultant_order(regularize_pair(f, g, rng))
        if a == b:
            return ExtNat(a)
    raise Disagreement("independent linear changes kept disagreeing on i₀")


def i0_resultant(f, g, seed=0):
    """Resultant-route i₀ with unit conventions; internal cross-check helper."""
    return intersection_multiplicity(f, g, seed=seed)


def milnor_number(h, seed=0):
    """μ₀(h) = i₀(∂h/∂x, ∂h/∂y) at the origin; ∞ iff a multiple component passes through 0."""
    if h.is_zero:
        raise ZeroPolynomial("Milnor number of 0 is undefined")
    if not _vanishes_at_origin(h):
        raise NotVanishingAtOrigin("Milnor number at the origin needs h(0,0) = 0")
    hx = h.derivative("x")
    hy = h.derivative("y")
    if _origin_unit(hx) or _origin_unit(hy):
        return ExtNat(0)
    if hx.is_zero or hy.is_zero:
        return INF
    return intersection_multiplicity(hx, hy, seed=seed)


def finiteness_check(f, g):
    """True iff f(0,0) = g(0,0) = 0 and the germs share no component through 0."""
    if f.is_zero or g.is_zero:
        return False
    if not (_vanishes_at_origin(f) and _vanishes_at_origin(g)):
        return False
    return not _vanishes_at_origin(mgcd(f, g))


# -- generic pencil Milnor number ----------------------------------------------


_PVARS = ("x", "y", "t")


def _lift3(p):
    return _extend(p, _PVARS)


def _pencil_parts(f, g, n, m):
    f3 = _lift3(f)
    g3 = _lift3(g)
    t = MPoly.var(_PVARS, "t")
    F = f3**n - t * g3**m
    return f3, g3, F.derivative("x"), F.derivative("y")


def generic_pencil_milnor(f, g, n, m, seed=0):
    """μ₀(fⁿ − t·gᵐ) for generic t, exactly (t carried symbolically).

    Requires coprime (n, m) and a finite pair.  Large powers are reduced by
    exact i₀ identities (modular reduction and multiplicativity) before the
    Euclidean engine runs; every reduction is validated and the direct
    computation is the fallback.
    """
    if n < 1 or m < 1 or int_gcd(n, m) != 1:
        raise NjacError(f"pencil exponents must be coprime positive integers, got {(n, m)}")
    if not finiteness_check(f, g):
        raise CommonComponent("generic pencil needs a finite pair (f,g)")
    f3, g3, Fx, Fy = _pencil_parts(f, g, n, m)
    if _origin_unit(Fx) or _origin_unit(Fy):
        return ExtNat(0)
    val = _pencil_structured(f3, g3, n, m, Fx, Fy)
    if val is None:
        val = fulton_i0(Fx, Fy)
    if val.is_infinite:
        return _pencil_sampling_fallback(f, g, n, m, seed)
    return val


def _pencil_structured(f3, g3, n, m, Fx, Fy):
    """i₀(Fx, Fy) via the exact pencil identities; None when none applies.

      f_y·Fx − f_x·Fy = t·m·g^(m−1)·J      g_y·Fx − g_x·Fy = n·f^(n−1)·J
    with J = f_x·g_y − f_y·g_x, so modulo Fx (all terms finite):
      i₀(Fx,Fy) = (m−1)·i₀(Fx,g) + i₀(Fx,J) − i₀(Fx,f_x)
      i₀(Fx,Fy) = (n−1)·i₀(Fx,f) + i₀(Fx,J) − i₀(Fx,g_x)
    and the mirrored versions with Fy as the fixed side.
    """
    if max(n, m) < 2:
        return None
    fx, fy = f3.derivative("x"), f3.derivative("y")
    gx, gy = g3.derivative("x"), g3.derivative("y")
    J = fx * gy - fy * gx
    if J.is_zero:
        return None
    candidates = [
        (Fx, m - 1, g3, fx),
        (Fx, n - 1, f3, gx),
        (Fy, m - 1, g3, fy),
        (Fy, n - 1, f3, gy),
    ]
    for fixed, weight, curve, partial in candidates:
        if partial.is_zero:
            continue
        tJ = fulton_i0(fixed, J)
        if tJ.is_infinite:
            continue
        tP = fulton_i0(fixed, partial)
        if tP.is_infinite:
            continue
        if weight:
            tC = fulton_i0(fixed, curve)
            if tC.is_infinite:
                continue
            total = weight * tC.value + tJ.value - tP.value
        else:
            total = tJ.value - tP.value
        if total < 0:  # pragma: no cover - identity violated
            raise NjacError("pencil identity produced a negative Milnor number")
        return ExtNat(total)
    return None


def _pencil_sampling_fallback(f, g, n, m, seed):
    rng = random.Random(seed)
    samples = []
    for _ in range(5):
        t0 = Q(rng.randint(1, 9999), rng.randint(1, 99))
        F = f**n - (g**m).scale(t0)
        Fx, Fy = F.derivative("x"), F.derivative("y")
        if _origin_unit(Fx) or _origin_unit(Fy):
            samples.append(ExtNat(0))
            continue
        samples.append(fulton_i0(Fx, Fy))
    finite = [s for s in samples if not s.is_infinite]
    if not finite:
        raise NonGenericFailure(
            f"pencil f^{n} − t·g^{m} degenerate for every sampled t: {samples}"
        )
    return min(finite)
