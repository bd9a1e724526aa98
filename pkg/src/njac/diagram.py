"""Newton diagrams: lattice vertex chains closed under +R₊².

A diagram is stored as its lower-left boundary vertex chain (i strictly
increasing, j strictly decreasing, strictly convex).  The semigroup
operations (Minkowski sum, elementary decomposition into Teis{a}{b}
generators, inclinations, support function) and the reconstruction of a
diagram from a support-function oracle live here.
"""

from dataclasses import dataclass
from math import gcd

from .errors import InconsistentOracle, ZeroPolynomial
from .rationals import INF, Q, as_extnat


@dataclass(frozen=True)
class SupportVector:
    """Primitive positive integer vector (v1, v2) used to query support values."""

    v1: int
    v2: int

    def __post_init__(self):
        if self.v1 <= 0 or self.v2 <= 0:
            raise ValueError("support vector components must be positive")
        if gcd(self.v1, self.v2) != 1:
            raise ValueError("support vector must be primitive (coprime components)")


class NewtonDiagram:
    """Convex hull of ∪ (vertex + R₊²), encoded by its vertex chain."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple((int(i), int(j)) for i, j in vertices)
        if not vs:
            raise ValueError("a Newton diagram needs at least one vertex")
        for (i1, j1), (i2, j2) in zip(vs, vs[1:]):
            if not (i1 < i2 and j1 > j2):
                raise ValueError(f"vertex chain not monotone: {vs}")
        for a, b, c in zip(vs, vs[1:], vs[2:]):
            if _cross(_sub(b, a), _sub(c, b)) <= 0:
                raise ValueError(f"vertex chain not strictly convex: {vs}")
        if any(i < 0 or j < 0 for i, j in vs):
            raise ValueError("vertices must lie in the first quadrant")
        self.vertices = vs

    @staticmethod
    def unit():
        return NewtonDiagram([(0, 0)])

    @staticmethod
    def from_points(points):
        """Lower-left boundary of conv(∪ (p + R₊²)) over the given lattice points."""
        pts = sorted({(int(i), int(j)) for i, j in points})
        if not pts:
            raise ValueError("no points")
        frontier = []
        best = None
        for i, j in pts:  # pts sorted by (i, j); keep strictly descending j
            if best is None or j < best:
                frontier.append((i, j))
                best = j
        chain = []
        for p in frontier:
            while len(chain) >= 2 and _cross(_sub(chain[-1], chain[-2]), _sub(p, chain[-1])) <= 0:
                chain.pop()
            chain.append(p)
        return NewtonDiagram(chain)

    # -- structure -------------------------------------------------------

    @property
    def height(self):
        return self.vertices[0][1]

    @property
    def width(self):
        return self.vertices[-1][0]

    def edges(self):
        """Edge vectors (Δi, Δj) with Δi > 0 > Δj, in boundary order."""
        return [_sub(b, a) for a, b in zip(self.vertices, self.vertices[1:])]

    def __eq__(self, other):
        return isinstance(other, NewtonDiagram) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"NewtonDiagram({list(self.vertices)})"

    def to_json(self):
        return {"vertices": [list(v) for v in self.vertices]}

    @staticmethod
    def from_json(data):
        return NewtonDiagram([tuple(v) for v in data["vertices"]])

    # -- semigroup operations ---------------------------------------------

    def minkowski_sum(self, other):
        top = (
            self.vertices[0][0] + other.vertices[0][0],
            self.vertices[0][1] + other.vertices[0][1],
        )
        merged = _merge_edges(self.edges(), other.edges())
        chain = [top]
        for di, dj in merged:
            i, j = chain[-1]
            chain.append((i + di, j + dj))
        return NewtonDiagram(chain)

    def elementary_decomposition(self):
        """Multiset (sorted tuple) of Teis{a}{b} generators, one per edge plus axis shifts."""
        out = []
        i0 = self.vertices[0][0]
        j_last = self.vertices[-1][1]
        if i0 > 0:
            out.append(ElementaryDiagram(i0, INF))
        for di, dj in self.edges():
            out.append(ElementaryDiagram(di, -dj))
        if j_last > 0:
            out.append(ElementaryDiagram(INF, j_last))
        return tuple(sorted(out, key=lambda e: e.sort_key()))

    def inclinations(self):
        return {e.inclination() for e in self.elementary_decomposition()}

    def support(self, v):
        """min over the diagram of v1·i + v2·j (attained at a vertex)."""
        if isinstance(v, SupportVector):
            v1, v2 = v.v1, v.v2
        else:
            v1, v2 = v
        if v1 <= 0 or v2 <= 0:
            raise ValueError("support requires positive components")
        return min(v1 * i + v2 * j for i, j in self.vertices)

    def transpose(self):
        return NewtonDiagram(sorted((j, i) for i, j in self.vertices))

    def contains_point(self, p):
        """Whether the lattice point lies in the diagram (inside all supporting halfplanes)."""
        i, j = p
        if i < self.vertices[0][0] or j < self.vertices[-1][1]:
            return False
        for a, b in zip(self.vertices, self.vertices[1:]):
            if _cross(_sub(b, a), _sub((i, j), a)) < 0:
                return False
        return True


class ElementaryDiagram:
    """Generator Teis{a}{b} of the diagram semigroup; a, b in N ∪ {∞}.

    Finite a, b: vertices [(0,b),(a,0)]; Teis{∞}{b} = [(0,b)];
    Teis{a}{∞} = [(a,0)].  Inclination a/b with ∞/b = ∞ and a/∞ = 0.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a = as_extnat(a)
        b = as_extnat(b)
        if a.is_infinite and b.is_infinite:
            raise ValueError("Teis{∞}{∞} is not an elementary diagram")
        if a == 0 and b == 0:
            raise ValueError("Teis{0}{0} is not an elementary diagram")
        self.a = a
        self.b = b

    def inclination(self):
        if self.a.is_infinite:
            return INF
        if self.b.is_infinite:
            return Q(0)
        return Q(self.a.value, self.b.value)

    def diagram(self):
        if self.a.is_infinite:
            return NewtonDiagram([(0, self.b.value)])
        if self.b.is_infinite:
            return NewtonDiagram([(self.a.value, 0)])
        return NewtonDiagram([(0, self.b.value), (self.a.value, 0)])

    def sort_key(self):
        incl = self.inclination()
        head = (2, 0, 0) if incl is INF else (1, incl.numerator, incl.denominator)
        return head + (self.a.value or 0, self.b.value or 0)

    def __eq__(self, other):
        return isinstance(other, ElementaryDiagram) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Teis{{{self.a}}}{{{self.b}}}"

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json()}


def diagram_of(f):
    """Newton diagram of a nonzero polynomial in (x, y)."""
    if f.is_zero:
        raise ZeroPolynomial("the Newton diagram of 0 is undefined")
    ix = f.vars.index("x")
    iy = f.vars.index("y")
    return NewtonDiagram.from_points({(e[ix], e[iy]) for e in f.terms})


def minkowski_sum(*diagrams):
    acc = NewtonDiagram.unit()
    for d in diagrams:
        if isinstance(d, ElementaryDiagram):
            d = d.diagram()
        acc = acc.minkowski_sum(d)
    return acc


def sum_of_teis(contributions):
    """Minkowski sum of Teis{a}{b} repeated with multiplicities: [(a, b, mult)]."""
    acc = NewtonDiagram.unit()
    for a, b, mult in contributions:
        a, b = as_extnat(a), as_extnat(b)
        if a.is_infinite:
            piece = NewtonDiagram([(0, b.value * mult)])
        elif b.is_infinite:
            piece = NewtonDiagram([(a.value * mult, 0)])
        else:
            piece = NewtonDiagram([(0, b.value * mult), (a.value * mult, 0)])
        acc = acc.minkowski_sum(piece)
    return acc


# -- reconstruction from a support oracle -----------------------------------


def reconstruct_from_support(
    oracle,
    width_bound,
    height_bound,
    method="refine",
    known_left=None,
    known_right=None,
    _max_queries=20000,
):
    """Recover the diagram whose support function the oracle computes.

    The oracle maps a SupportVector to a nonnegative integer and must be the
    support function of some diagram with vertices inside
    [0, width_bound] × [0, height_bound].  `known_left`/`known_right` may pass
    the extreme vertices when the caller already knows them, saving the two
    large-component corner queries.
    """
    if width_bound < 0 or height_bound < 0:
        raise ValueError("bounds must be nonnegative")
    cache = {}
    count = [0]

    def sigma_primitive(m, n):
        key = (m, n)
        if key not in cache:
            count[0] += 1
            if count[0] > _max_queries:
                raise InconsistentOracle("oracle query budget exhausted")
            val = oracle(SupportVector(m, n))
            if not isinstance(val, int) or val < 0:
                raise InconsistentOracle(f"oracle returned {val!r} for {key}")
            cache[key] = val
        return cache[key]

    def sigma(v):
        m, n = v
        g = gcd(m, n)
        return g * sigma_primitive(m // g, n // g)

    def corner(bound_other, swap):
        k = bound_other + 1
        val = sigma_primitive(k, 1) if not swap else sigma_primitive(1, k)
        a, b = divmod(val, k)
        return (a, b) if not swap else (b, a)

    if method == "exhaustive":
        return _reconstruct_exhaustive(sigma_primitive, width_bound, height_bound)
    if method != "refine":
        raise ValueError(f"unknown reconstruction method {method!r}")

    p_left = tuple(known_left) if known_left is not None else corner(height_bound, swap=False)
    p_right = tuple(known_right) if known_right is not None else corner(width_bound, swap=True)
    for p in (p_left, p_right):
        if not (0 <= p[0] <= width_bound and 0 <= p[1] <= height_bound):
            raise InconsistentOracle(f"corner vertex {p} outside bounds")

    # Stern-Brocot refinement between the formal axis normals (1,0) and (0,1),
    # whose support values are the extreme coordinates.  Starting from the
    # axis normals keeps every mediant on the minimal continued-fraction path
    # to each edge normal; tracking a known touching vertex per normal prunes
    # the search as soon as adjacent normals touch the same vertex.
    vertices = {p_left, p_right}

    def dot(vec, p):
        return vec[0] * p[0] + vec[1] * p[1]

    def shared_vertex(u, su, v, sv):
        det = u[0] * v[1] - u[1] * v[0]
        pi_num = su * v[1] - sv * u[1]
        pj_num = u[0] * sv - v[0] * su
        if det == 0 or pi_num % det or pj_num % det:
            raise InconsistentOracle(f"no lattice vertex between normals {u} and {v}")
        p = (pi_num // det, pj_num // det)
        if not (0 <= p[0] <= width_bound and 0 <= p[1] <= height_bound):
            raise InconsistentOracle(f"vertex {p} outside bounds")
        return p

    stack = [((1, 0), p_left[0], p_left, (0, 1), p_right[1], p_right)]
    while stack:
        u, su, pu, v, sv, pv = stack.pop()
        if pu is not None and pv is not None and pu == pv:
            continue
        if pu is not None and dot(v, pu) == sv:
            continue  # v also touches pu: no edge normal strictly between
        if pv is not None and dot(u, pv) == su:
            continue
        w = (u[0] + v[0], u[1] + v[1])
        sw = sigma(w)
        if sw < su + sv:
            raise InconsistentOracle(f"support values not convex at {u}, {v}")
        if sw == su + sv:
            vertices.add(shared_vertex(u, su, v, sv))
            continue
        pw = None
        if pu is not None and dot(w, pu) == sw:
            pw = pu
        elif pv is not None and dot(w, pv) == sw:
            pw = pv
        stack.append((u, su, pu, w, sw, pw))
        stack.append((w, sw, pw, v, sv, pv))

    diagram = NewtonDiagram.from_points(vertices)
    for (m, n), val in cache.items():
        if diagram.support((m, n)) != val:
            raise InconsistentOracle(f"reconstructed diagram disagrees with oracle at {(m, n)}")
    return diagram


def _reconstruct_exhaustive(sigma_primitive, width_bound, height_bound):
    bound = max(width_bound, height_bound) + 1
    constraints = []
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            if gcd(m, n) == 1:
                constraints.append((m, n, sigma_primitive(m, n)))
    points = []
    for i in range(width_bound + 1):
        for j in range(height_bound + 1):
            if all(m * i + n * j >= s for m, n, s in constraints):
                points.append((i, j))
    if not points:
        raise InconsistentOracle("no lattice points satisfy the support constraints")
    diagram = NewtonDiagram.from_points(points)
    for m, n, s in constraints:
        if diagram.support((m, n)) != s:
            raise InconsistentOracle(f"reconstructed diagram disagrees with oracle at {(m, n)}")
    return diagram


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _merge_edges(e1, e2):
    """Merge two edge lists by increasing inclination, combining parallel edges."""
    out = []
    i = j = 0
    while i < len(e1) or j < len(e2):
        if i == len(e1):
            take = e2[j]
            j += 1
        elif j == len(e2):
            take = e1[i]
            i += 1
        else:
            c = _cross(e1[i], e2[j])
            if c > 0:  # e1 edge has strictly smaller inclination
                take = e1[i]
                i += 1
            elif c < 0:
                take = e2[j]
                j += 1
            else:
                take = (e1[i][0] + e2[j][0], e1[i][1] + e2[j][1])
                i += 1
                j += 1
        if out and _cross(out[-1], take) == 0:
            out[-1] = (out[-1][0] + take[0], out[-1][1] + take[1])
        else:
            out.append(take)
    return out
