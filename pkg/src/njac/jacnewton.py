"""The jacobian Newton diagram Nj(f,g) of a finite map germ, by two routes.

Route A (branches): expand the jacobian curve into branches and sum the
elementary diagrams Teis{i₀(g,h)}{i₀(f,h)} over branches h.  Route B
(support): reconstruct the diagram from its support function, whose values
come from generic pencil Milnor numbers via the exact relation

    l((m,n), Nj(f,g)) = μ₀(fⁿ − t·gᵐ) − i₀(f,g)·[(m−1)(n−1)−1] − 1.

The two routes share no machinery beyond exact polynomial arithmetic, so
their agreement is a strong correctness certificate.
"""

from dataclasses import dataclass

from .diagram import NewtonDiagram, reconstruct_from_support, sum_of_teis
from .errors import (
    CertificateMismatch,
    CommonComponent,
    DegenerateJacobian,
    NonReducedInput,
    NotVanishingAtOrigin,
    RouteMismatch,
)
from .invariants import (
    finiteness_check,
    generic_pencil_milnor,
    intersection_multiplicity,
    _vanishes_at_origin,
)
from .polynomials import MPoly, is_reduced
from .puiseux import DEFAULT_POLICY, PuiseuxBranch, branches_at_origin, order_along_branch
from .rationals import INF, ExtNat, Q


class MapGerm:
    """Finite polynomial map germ (C²,0) → (C²,0), (x,y) = (f(u,v), g(u,v)).

    Source coordinates are stored internally as (x, y).  Finiteness
    ((f,g)⁻¹(0,0) = {(0,0)}) is validated at construction.
    """

    def __init__(self, f, g, policy=DEFAULT_POLICY, seed=0):
        if f.is_zero or g.is_zero:
            raise NotVanishingAtOrigin("map germ components must be nonzero")
        if not (_vanishes_at_origin(f) and _vanishes_at_origin(g)):
            raise NotVanishingAtOrigin("map germ components must vanish at the origin")
        if not finiteness_check(f, g):
            raise CommonComponent("f and g share a component through the origin")
        self.f = f
        self.g = g
        self.policy = policy
        self.seed = seed
        self._cache = {}

    def __repr__(self):
        from .polynomials import format_poly

        return f"MapGerm(f={format_poly(self.f)}, g={format_poly(self.g)})"

    def is_reduced_pair(self):
        key = "reduced"
        if key not in self._cache:
            self._cache[key] = is_reduced(self.f) and is_reduced(self.g)
        return self._cache[key]


@dataclass(frozen=True)
class BranchContribution:
    """One jacobian branch class with a = i₀(g,·), b = i₀(f,·) per branch.

    `multiplicity` counts analytic branches: class multiplicity in the
    jacobian times the conjugacy size of the class.
    """

    branch: PuiseuxBranch
    a: ExtNat
    b: ExtNat
    multiplicity: int


@dataclass(frozen=True)
class HironakaGroup:
    """Branches grouped by a common jacobian quotient q = a/b (group sums)."""

    q: object  # Rational, 0, or INF
    a: ExtNat
    b: ExtNat

    def to_json(self):
        from .rationals import rat_str

        q = "inf" if self.q is INF else rat_str(self.q)
        return {"q": q, "a": self.a.to_json(), "b": self.b.to_json()}


def jacobian(germ):
    """Exact jacobian determinant ∂f/∂u·∂g/∂v − ∂f/∂v·∂g/∂u."""
    jac = germ.f.derivative("x") * germ.g.derivative("y") - germ.f.derivative("y") * germ.g.derivative("x")
    if jac.is_zero:
        raise DegenerateJacobian("jacobian is identically zero")
    return jac


def _quotient(a, b):
    """The paper's convention: ∞/b = ∞, a/∞ = 0."""
    if a.is_infinite:
        return INF
    if b.is_infinite:
        return Q(0)
    return Q(a.value, b.value)


def branch_contributions(germ):
    """Per-branch data of jac = 0, certified against resultant-route totals."""
    if "contributions" in germ._cache:
        return germ._cache["contributions"]
    jac = jacobian(germ)
    if not _vanishes_at_origin(jac):
        germ._cache["contributions"] = []
        return []
    policy = germ.policy
    out = []
    for branch in branches_at_origin(jac, policy):
        a = order_along_branch(germ.g, branch, policy)
        b = order_along_branch(germ.f, branch, policy)
        if a.is_infinite and b.is_infinite:
            raise CommonComponent("a jacobian branch lies inside both f=0 and g=0")
        out.append(BranchContribution(branch, a, b, branch.mult * branch.conj))
    total_b = sum((ExtNat(c.multiplicity) * c.b for c in out), ExtNat(0))
    total_a = sum((ExtNat(c.multiplicity) * c.a for c in out), ExtNat(0))
    expect_b = intersection_multiplicity(germ.f, jac, seed=germ.seed)
    expect_a = intersection_multiplicity(germ.g, jac, seed=germ.seed)
    if total_b != expect_b or total_a != expect_a:
        raise CertificateMismatch(
            f"branch totals (Σ mult·b, Σ mult·a) = ({total_b}, {total_a}) "
            f"≠ resultant totals ({expect_b}, {expect_a})"
        )
    germ._cache["contributions"] = out
    return out


def njac_branches(germ):
    """Route A: Minkowski sum of Teis{a}{b} over jacobian branch contributions."""
    if "njac_branches" not in germ._cache:
        contributions = branch_contributions(germ)
        germ._cache["njac_branches"] = sum_of_teis(
            (c.a, c.b, c.multiplicity) for c in contributions
        )
    return germ._cache["njac_branches"]


def _support_oracle(germ):
    i0_fg = intersection_multiplicity(germ.f, germ.g, seed=germ.seed)
    i0v = i0_fg.value

    def oracle(v):
        m, n = v.v1, v.v2
        mu = generic_pencil_milnor(germ.f, germ.g, n, m, seed=germ.seed)
        return mu.value - i0v * ((m - 1) * (n - 1) - 1) - 1

    return oracle


def njac_support(germ):
    """Route B: reconstruct Nj from pencil Milnor numbers (reduced f, g only)."""
    if "njac_support" in germ._cache:
        return germ._cache["njac_support"]
    if not germ.is_reduced_pair():
        raise NonReducedInput("support route needs reduced f and g")
    jac = jacobian(germ)
    if not _vanishes_at_origin(jac):
        diagram = NewtonDiagram.unit()
    else:
        height = intersection_multiplicity(germ.f, jac, seed=germ.seed)
        width = intersection_multiplicity(germ.g, jac, seed=germ.seed)
        if height.is_infinite or width.is_infinite:
            raise NonReducedInput("jacobian shares a branch with f·g = 0")
        diagram = reconstruct_from_support(
            _support_oracle(germ),
            width.value,
            height.value,
            known_left=(0, height.value),
            known_right=(width.value, 0),
        )
    germ._cache["njac_support"] = diagram
    return diagram


def njac(germ, method="both"):
    """The jacobian Newton diagram by the selected route(s).

    With method="both" the two routes must agree exactly; a mismatch raises
    RouteMismatch carrying both diagrams.
    """
    if method == "branches":
        return njac_branches(germ)
    if method == "support":
        return njac_support(germ)
    if method != "both":
        raise ValueError(f"unknown njac method {method!r}")
    a = njac_branches(germ)
    b = njac_support(germ)
    if a != b:
        raise RouteMismatch("jacobian Newton diagram routes disagree", a, b)
    return a


def jacobian_quotients(germ):
    """Set of Hironaka numbers i₀(g,h)/i₀(f,h) over jacobian branches."""
    return {_quotient(c.a, c.b) for c in branch_contributions(germ)}


def hironaka_data(germ):
    """Minimal Hironaka factorization data: contributions grouped by quotient."""
    groups = {}
    for c in branch_contributions(germ):
        q = _quotient(c.a, c.b)
        a_part = ExtNat(c.multiplicity) * c.a
        b_part = ExtNat(c.multiplicity) * c.b
        if q in groups:
            ga, gb = groups[q]
            groups[q] = (ga + a_part, gb + b_part)
        else:
            groups[q] = (a_part, b_part)

    def sort_key(q):
        return (1, 0, 0) if q is INF else (0, q.numerator, q.denominator)

    return [HironakaGroup(q, *groups[q]) for q in sorted(groups, key=sort_key)]
