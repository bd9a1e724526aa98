"""Equisingularity fingerprints of labeled curve pairs and the invariance
harnesses.

The fingerprint of a labeled pair records, per conjugacy class of branches:
multiplicity layer, conjugacy size, intrinsic Puiseux characteristic, the
total contact with every squarefree layer of both curves, and the deflated
self-contact with the other branches of its own layer.  All quantities are
intersection-theoretic invariants of the labeled pair, so the canonical
form is equal for pairs that are equisingular by construction.

Branch data is read off in shared generic coordinates (a deterministic
random linear change, validated: no branch tangent to the new y-axis), and
every fingerprint is computed twice in independent coordinates and required
to agree.
"""

import hashlib
import json
import random

from .errors import CommonComponent, NjacError, NoConsensus, NotVanishingAtOrigin
from .invariants import _vanishes_at_origin, finiteness_check
from .jacnewton import MapGerm, njac
from .parsing import parse_polynomial
from .polynomials import MPoly, apply_linear, format_poly
from .puiseux import DEFAULT_POLICY, branches_at_origin, order_along_branch
from .rationals import Q, rat_str, stable_seed


class PairFingerprint:
    """Canonical equisingularity invariant of a labeled pair of curve divisors."""

    def __init__(self, records, layers):
        self.records = tuple(sorted(records))
        self.layers = tuple(sorted(layers))

    def canonical(self):
        return (self.layers, self.records)

    def digest(self):
        blob = json.dumps(self.canonical(), sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()

    def __eq__(self, other):
        return isinstance(other, PairFingerprint) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"PairFingerprint(layers={self.layers}, records={len(self.records)}, digest={self.digest()[:12]})"

    def to_json(self):
        return {
            "layers": [{"label": lb, "multiplicity": m} for lb, m in self.layers],
            "branches": [
                {
                    "label": rec[0],
                    "multiplicity": rec[1],
                    "conjugates": rec[2],
                    "branch_multiplicity": rec[3],
                    "characteristic_exponents": [f"{n}/{d}" for n, d in rec[4]],
                    "own_layer_contact": rec[5],
                    "contacts": [
                        {"label": lb, "multiplicity": m, "value": v} for lb, m, v in rec[6]
                    ],
                }
                for rec in self.records
            ],
            "digest": self.digest(),
        }


def _generic_change(curves, rng, policy, max_tries=64):
    """Shared linear change making every branch transverse to the new y-axis."""
    for _ in range(max_tries):
        entries = [rng.randint(-9, 9) for _ in range(4)]
        m11, m12, m21, m22 = entries
        if m11 * m22 - m12 * m21 == 0:
            continue
        moved = [(label, apply_linear(p, m11, m12, m21, m22)) for label, p in curves]
        if any(p.order_wrt("x") >= 1 for _lb, p in moved):
            continue
        expanded = []
        ok = True
        for label, p in moved:
            branches = branches_at_origin(p, policy)
            for b in branches:
                if b.axis:
                    ok = False
                    break
                yo = b.y_order()
                if not yo.is_infinite and yo.value < b.ramification():
                    ok = False  # tangent to the y-axis: multiplicity not intrinsic
                    break
            if not ok:
                break
            expanded.append((label, p, branches))
        if ok:
            return expanded
    raise NjacError("no generic shared linear change found for fingerprinting")


def _fingerprint_once(curves, rng, policy):
    expanded = _generic_change(curves, rng, policy)
    layer_polys = {}
    for label, _p, branches in expanded:
        for b in branches:
            key = (label, b.mult)
            layer_polys.setdefault(key, b.defining_factor)
    layer_keys = sorted(layer_polys)
    records = []
    for label, _p, branches in expanded:
        for b in branches:
            own_key = (label, b.mult)
            char = b.characteristic(policy)
            contacts = []
            for key in layer_keys:
                if key == own_key:
                    continue
                v = order_along_branch(layer_polys[key], b, policy)
                if v.is_infinite:
                    raise CommonComponent(
                        "a branch lies inside a different squarefree layer; "
                        "the labeled curves share a component"
                    )
                contacts.append((key[0], key[1], v.value))
            own = layer_polys[own_key]
            own_dy = order_along_branch(own.derivative("y"), b, policy)
            if own_dy.is_infinite:
                raise NjacError("derivative probe degenerated in fingerprinting")
            self_contact = own_dy.value - (b.delta2(policy) + b.ramification() - 1)
            if self_contact < 0:
                raise NjacError("negative deflated self-contact; implementation fault")
            records.append(
                (
                    label,
                    b.mult,
                    b.conj,
                    char.m0,
                    char.key()[1],
                    self_contact,
                    tuple(contacts),
                )
            )
    return PairFingerprint(records, layer_keys)


def _fingerprint(curves, policy, seed):
    for label, p in curves:
        if p.is_zero or not _vanishes_at_origin(p):
            raise NotVanishingAtOrigin(f"curve {label} must be nonzero and vanish at 0")
    rng = random.Random(stable_seed(seed, "fingerprint"))
    last = None
    for _attempt in range(4):
        first = _fingerprint_once(curves, rng, policy)
        second = _fingerprint_once(curves, rng, policy)
        if first == second:
            return first
        last = (first, second)
    raise NjacError(f"fingerprints in independent coordinates kept disagreeing: {last}")


def pair_fingerprint(f, g, policy=DEFAULT_POLICY, seed=0):
    """Canonical fingerprint of the labeled pair of curves f=0 (F), g=0 (G)."""
    from .polynomials import gcd as mgcd

    if _vanishes_at_origin(mgcd(f, g)):
        raise CommonComponent("f and g share a component through the origin")
    return _fingerprint([("F", f), ("G", g)], policy, seed)


def curve_fingerprint(h, policy=DEFAULT_POLICY, seed=0):
    """Single-label fingerprint of the curve h = 0."""
    return _fingerprint([("C", h)], policy, seed)


# -- equisingular-by-construction transformations ------------------------------


class AutomorphismGerm:
    """Polynomial automorphic germ (φ1, φ2) with invertible linear part."""

    def __init__(self, phi1, phi2, degree_bound):
        lin = (
            phi1.coeff_wrt("x", 1).coeff_wrt("y", 0).constant_value(),
            phi1.coeff_wrt("y", 1).coeff_wrt("x", 0).constant_value(),
            phi2.coeff_wrt("x", 1).coeff_wrt("y", 0).constant_value(),
            phi2.coeff_wrt("y", 1).coeff_wrt("x", 0).constant_value(),
        )
        if lin[0] * lin[3] - lin[1] * lin[2] == 0:
            raise NjacError("automorphism germ needs an invertible linear part")
        if _vanishes_at_origin(phi1) is False or _vanishes_at_origin(phi2) is False:
            raise NjacError("automorphism germ must fix the origin")
        self.phi1 = phi1
        self.phi2 = phi2
        self.degree_bound = degree_bound

    def apply(self, p):
        return p.substitute({"x": self.phi1, "y": self.phi2})

    def to_json(self):
        return {
            "phi1": format_poly(self.phi1),
            "phi2": format_poly(self.phi2),
            "degree_bound": self.degree_bound,
        }

    def __repr__(self):
        return f"AutomorphismGerm({format_poly(self.phi1)}; {format_poly(self.phi2)})"


def random_automorphism(seed, degree_bound):
    """Deterministic random automorphic germ: linear part in {−5..5}, small
    rational higher-order terms up to degree_bound."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be ≥ 1")
    rng = random.Random(stable_seed(seed, "automorphism"))
    while True:
        lin = [rng.randint(-5, 5) for _ in range(4)]
        if lin[0] * lin[3] - lin[1] * lin[2] != 0:
            break
    xv = MPoly.var(("x", "y"), "x")
    yv = MPoly.var(("x", "y"), "y")
    phi1 = xv.scale(lin[0]) + yv.scale(lin[1])
    phi2 = xv.scale(lin[2]) + yv.scale(lin[3])
    for d in range(2, degree_bound + 1):
        for i in range(d + 1):
            j = d - i
            for target in (0, 1):
                if rng.random() < 0.35:
                    coeff = Q(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
                    mono = (xv**i * yv**j).scale(coeff)
                    if target == 0:
                        phi1 = phi1 + mono
                    else:
                        phi2 = phi2 + mono
    return AutomorphismGerm(phi1, phi2, degree_bound)


def random_unit(seed, degree_bound=2):
    """Deterministic random unit: nonzero constant term, small higher terms."""
    rng = random.Random(stable_seed(seed, "unit"))
    const = rng.choice([Q(1), Q(-1), Q(2), Q(1, 2), Q(3)])
    u = MPoly.const(("x", "y"), const)
    xv = MPoly.var(("x", "y"), "x")
    yv = MPoly.var(("x", "y"), "y")
    for d in range(1, degree_bound + 1):
        for i in range(d + 1):
            if rng.random() < 0.3:
                coeff = Q(rng.choice([-2, -1, 1, 2]), rng.randint(1, 3))
                u = u + (xv**i * yv ** (d - i)).scale(coeff)
    return u


def transform_pair(f, g, aut, unit_f, unit_g):
    """(unit_f·(f∘aut), unit_g·(g∘aut)): equisingular to (f,g) by construction."""
    for u in (unit_f, unit_g):
        if u.is_zero or not any(all(v == 0 for v in e) for e in u.terms):
            raise NjacError("units must have a nonzero constant term")
    return unit_f * aut.apply(f), unit_g * aut.apply(g)


# -- harnesses -------------------------------------------------------------------


def generic_pencil_fingerprint(f, g, seed=0, policy=DEFAULT_POLICY):
    """Consensus fingerprint of the generic pencil member f − t₀·g.

    Draws random rational t₀ until three samples agree (at most seven draws);
    raises NoConsensus with all sampled fingerprints otherwise.
    """
    if not finiteness_check(f, g):
        raise CommonComponent("generic pencil fingerprint needs a finite pair")
    rng = random.Random(stable_seed(seed, "pencil"))
    counts = {}
    samples = []
    for _draw in range(7):
        t0 = Q(rng.randint(1, 60), rng.randint(1, 7)) * rng.choice([1, -1])
        member = f - g.scale(t0)
        if member.is_zero or not _vanishes_at_origin(member):
            continue
        fp = curve_fingerprint(member, policy=policy, seed=seed)
        samples.append((rat_str(t0), fp))
        key = fp.canonical()
        counts[key] = counts.get(key, 0) + 1
        if counts[key] >= 3:
            return fp
    raise NoConsensus(
        "no 3 consistent pencil fingerprints among 7 draws", [fp for _t, fp in samples]
    )


def verify_njac_invariance(f, g, trials=5, degree_bound=3, seed=0, policy=DEFAULT_POLICY):
    """Theorem-2 harness: Nj must be unchanged by unit·(germ∘automorphism).

    Each trial draws an automorphism and two units, transforms the pair,
    recomputes the diagram by both routes, and compares with the base
    diagram; pair fingerprints are compared as a generator sanity check.
    Returns a JSON-able report; report["all_match"] is the verdict.
    """
    base_germ = MapGerm(f, g, policy=policy, seed=seed)
    base_diagram = njac(base_germ, "both")
    base_fp = pair_fingerprint(f, g, policy=policy, seed=seed)
    report = {
        "f": format_poly(f),
        "g": format_poly(g),
        "trials": [],
        "base": {"njac": base_diagram.to_json(), "fingerprint_hash": base_fp.digest()},
    }
    all_match = True
    for trial in range(trials):
        trial_seed = (seed, trial)
        aut = random_automorphism(trial_seed, degree_bound)
        unit_f = random_unit((seed, trial, "f"))
        unit_g = random_unit((seed, trial, "g"))
        entry = {
            "trial": trial,
            "automorphism": aut.to_json(),
            "unit_f": format_poly(unit_f),
            "unit_g": format_poly(unit_g),
        }
        try:
            f2, g2 = transform_pair(f, g, aut, unit_f, unit_g)
            germ2 = MapGerm(f2, g2, policy=policy, seed=seed)
            diagram2 = njac(germ2, "both")
            fp2 = pair_fingerprint(f2, g2, policy=policy, seed=seed)
            entry["njac"] = diagram2.to_json()
            entry["fingerprint_hash"] = fp2.digest()
            entry["fingerprint_match"] = fp2 == base_fp
            entry["match"] = diagram2 == base_diagram and entry["fingerprint_match"]
        except NjacError as err:
            entry["error"] = f"{type(err).__name__}: {err}"
            entry["match"] = False
        all_match = all_match and entry["match"]
        report["trials"].append(entry)
    report["all_match"] = all_match
    return report


def pencil_invariance_report(f, g, trials=5, degree_bound=3, seed=0, policy=DEFAULT_POLICY):
    """Theorem-1 harness: generic pencil fingerprint invariance under transforms."""
    base = generic_pencil_fingerprint(f, g, seed=seed, policy=policy)
    report = {
        "f": format_poly(f),
        "g": format_poly(g),
        "base_fingerprint_hash": base.digest(),
        "trials": [],
    }
    all_match = True
    for trial in range(trials):
        aut = random_automorphism((seed, trial), degree_bound)
        unit_f = random_unit((seed, trial, "f"))
        unit_g = random_unit((seed, trial, "g"))
        entry = {"trial": trial, "automorphism": aut.to_json()}
        try:
            f2, g2 = transform_pair(f, g, aut, unit_f, unit_g)
            fp2 = generic_pencil_fingerprint(f2, g2, seed=seed, policy=policy)
            entry["fingerprint_hash"] = fp2.digest()
            entry["match"] = fp2 == base
        except NjacError as err:
            entry["error"] = f"{type(err).__name__}: {err}"
            entry["match"] = False
        all_match = all_match and entry["match"]
        report["trials"].append(entry)
    report["all_match"] = all_match
    return report
