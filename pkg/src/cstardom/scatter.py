"""Finite topologies, iterated isolated-point removal, and ordinal spaces.

Finite topologies are stored as explicit open families with a validator.
Scatteredness is decided by iterating the derivative that removes isolated
points; ordinal intervals [0, a] are handled symbolically through their
normal forms, with an independent layer-counting oracle for the small
range where it applies.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, ParseError, SizeLimit
from .partitions import collapse

#: ordinal exponents stay below this (desk scale)
EXPONENT_MAX = 9
#: the layer-counting oracle applies below w^3
ORACLE_EXPONENT_MAX = 2


class FinTop:
    """Finite topological space: points plus the family of open sets.

    Opens are stored as frozensets of point indices; the constructor
    checks that the family contains the empty set and the full set and is
    closed under union and intersection.
    """

    def __init__(self, points, opens):
        self.points = tuple(points)
        self.n = len(self.points)
        index = {p: i for i, p in enumerate(self.points)}
        if len(index) != self.n:
            raise BadParameters("duplicate points")
        normalized = set()
        for o in opens:
            o = frozenset(index[p] if p in index else p for p in o)
            if not all(isinstance(i, int) and 0 <= i < self.n for i in o):
                raise BadParameters(f"open set {o!r} uses unknown points")
            normalized.add(o)
        full = frozenset(range(self.n))
        if frozenset() not in normalized or full not in normalized:
            raise BadParameters("opens must include the empty set and the full set")
        for a, b in itertools.combinations(normalized, 2):
            if a | b not in normalized:
                raise BadParameters(f"opens not closed under union: {sorted(a)} | {sorted(b)}")
            if a & b not in normalized:
                raise BadParameters(
                    f"opens not closed under intersection: {sorted(a)} & {sorted(b)}"
                )
        self.opens = frozenset(normalized)

    # -- basic notions --------------------------------------------------

    def is_open(self, subset):
        return frozenset(subset) in self.opens

    def is_closed(self, subset):
        return frozenset(range(self.n)) - frozenset(subset) in self.opens

    def closure(self, subset):
        """Smallest closed superset."""
        subset = frozenset(subset)
        avoid = frozenset().union(*(o for o in self.opens if not o & subset))
        return frozenset(range(self.n)) - avoid

    def isolated_points(self):
        return frozenset(i for i in range(self.n) if self.is_open({i}))

    def subspace(self, subset):
        subset = sorted(frozenset(subset))
        position = {p: i for i, p in enumerate(subset)}
        points = [self.points[p] for p in subset]
        opens = {frozenset(position[p] for p in (o & set(subset))) for o in self.opens}
        return FinTop(points, opens)

    def closed_sets(self):
        full = frozenset(range(self.n))
        return [full - o for o in self.opens]

    def __repr__(self):
        return f"FinTop({self.n} points, {len(self.opens)} opens)"


def discrete_topology(points):
    points = tuple(points)
    n = len(points)
    return FinTop(points, [frozenset(c) for c in _subsets(n)])


def indiscrete_topology(points):
    points = tuple(points)
    return FinTop(points, [frozenset(), frozenset(range(len(points)))])


def _subsets(n):
    for mask in range(1 << n):
        yield {i for i in range(n) if mask >> i & 1}


# ---------------------------------------------------------------------------
# derivatives and scatteredness


def cb_derivative_fin(topology):
    """Subspace on the non-isolated points, with the induced topology."""
    keep = set(range(topology.n)) - set(topology.isolated_points())
    return topology.subspace(keep)


def cb_rank_fin(topology):
    """Iterate the derivative: (steps to empty, residue points).

    The residue is empty exactly for scattered spaces; otherwise it is the
    nonempty stable subspace without isolated points, reported with the
    number of steps taken to reach it.
    """
    current = topology
    rank = 0
    while current.n > 0:
        nxt = cb_derivative_fin(current)
        if nxt.n == current.n:
            return rank, frozenset(current.points)
        current = nxt
        rank += 1
    return rank, frozenset()


def is_scattered_fin(topology):
    _, residue = cb_rank_fin(topology)
    return not residue


def scattered_by_closed_sets(topology):
    """Definitional route: every nonempty closed set has an isolated point.

    Used as the cross-check oracle for the derivative iteration.
    """
    for closed in topology.closed_sets():
        if not closed:
            continue
        sub = topology.subspace(closed)
        if not sub.isolated_points():
            return False
    return True


# ---------------------------------------------------------------------------
# separation-style checks


def is_hausdorff_fin(topology):
    for x, y in itertools.combinations(range(topology.n), 2):
        if not any(
            x in u and y in v and not u & v
            for u in topology.opens
            for v in topology.opens
        ):
            return False
    return True


def is_stonean_fin(topology):
    """Closures of open sets are open."""
    return all(topology.is_open(topology.closure(o)) for o in topology.opens)


def is_totally_disconnected_fin(topology):
    """Connected components (computed through clopen separation) are singletons.

    Finite spaces are locally connected, so components are clopen and the
    clopen-separation classes are exactly the components.
    """
    return all(len(c) == 1 for c in connected_components(topology))


def connected_components(topology):
    clopens = [o for o in topology.opens if topology.is_closed(o)]
    components = []
    seen = set()
    for x in range(topology.n):
        if x in seen:
            continue
        component = frozenset(range(topology.n)).intersection(
            *(c for c in clopens if x in c)
        )
        components.append(component)
        seen |= component
    return components


@dataclass
class StoneScatteredReport:
    """Stonean+scattered verdict with per-point isolation stages."""

    stonean: bool
    scattered: bool
    stages: dict

    @property
    def ok(self):
        return self.stonean and self.scattered

    def to_json_dict(self):
        return {
            "stonean": self.stonean,
            "scattered": self.scattered,
            "pass": self.ok,
            "stages": {
                str(point): {"stage": stage, "clopen": clopen}
                for point, (stage, clopen) in self.stages.items()
            },
        }


def stone_scattered_check(topology):
    """Verify Stonean plus scattered, recording each point's isolation stage.

    For every point the report lists the derivative stage at which its
    singleton becomes open, and whether the singleton is clopen there.
    """
    stonean = is_stonean_fin(topology)
    stages = {}
    current = topology
    stage = 0
    while current.n > 0:
        isolated = current.isolated_points()
        if not isolated:
            break
        for i in isolated:
            point = current.points[i]
            stages[point] = (stage, current.is_closed({i}))
        current = cb_derivative_fin(current)
        stage += 1
    scattered = current.n == 0
    return StoneScatteredReport(stonean=stonean, scattered=scattered, stages=stages)


# ---------------------------------------------------------------------------
# ordinal spaces in normal form


_TERM_RE = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


@dataclass(frozen=True)
class OrdinalCNF:
    """An ordinal below w^(EXPONENT_MAX+1) in normal form.

    ``terms`` are (exponent, coefficient) pairs with strictly decreasing
    exponents and positive coefficients; the empty tuple is the ordinal 0.
    As a topological space, the value denotes the closed interval [0, a] in
    the order topology.
    """

    terms: tuple = ()

    def __post_init__(self):
        last = None
        for exponent, coefficient in self.terms:
            if exponent < 0 or exponent > EXPONENT_MAX:
                raise SizeLimit("ordinal exponent", exponent, EXPONENT_MAX)
            if coefficient < 1:
                raise BadParameters("coefficients must be positive")
            if last is not None and exponent >= last:
                raise BadParameters("exponents must strictly decrease")
            last = exponent

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_finite(self):
        return all(e == 0 for e, _ in self.terms)

    def leading_exponent(self):
        if self.is_zero:
            raise BadParameters("the zero ordinal has no leading exponent")
        return self.terms[0][0]

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append("w" if c == 1 else f"w*{c}")
            else:
                parts.append(f"w^{e}" if c == 1 else f"w^{e}*{c}")
        return "+".join(parts)

    @classmethod
    def parse(cls, text):
        """Parse the ``w^E*C`` term grammar, terms joined by ``+``."""
        text = text.strip().replace(" ", "")
        if not text:
            raise ParseError("empty ordinal")
        if text == "0":
            return cls(())
        terms = []
        for chunk in text.split("+"):
            match = _TERM_RE.match(chunk)
            if not match:
                raise ParseError(f"bad ordinal term {chunk!r}")
            if match.group(3) is not None:
                exponent, coefficient = 0, int(match.group(3))
            else:
                exponent = int(match.group(1)) if match.group(1) else 1
                coefficient = int(match.group(2)) if match.group(2) else 1
            terms.append((exponent, coefficient))
        return cls(tuple(terms))

    @classmethod
    def from_int(cls, value):
        if value < 0:
            raise BadParameters("ordinals are not negative")
        return cls(((0, value),) if value else ())


def cb_derivative_ord(alpha):
    """Derivative of the ordinal interval [0, a]: its limit ordinals.

    Symbolic rule: drop the finite term and lower every exponent by one;
    the resulting count q of limit ordinals presents the space [1, q],
    which is [0, q-1] when q is finite and [0, q] otherwise.  Returns None
    for the empty space (no limit ordinals at all).
    """
    quotient = tuple((e - 1, c) for e, c in alpha.terms if e >= 1)
    if not quotient:
        return None
    if len(quotient) == 1 and quotient[0][0] == 0:
        count = quotient[0][1]
        return OrdinalCNF.from_int(count - 1)
    return OrdinalCNF(quotient)


def cb_rank_ord(alpha):
    """Number of derivative steps until the space [0, a] vanishes."""
    current = alpha
    rank = 0
    while current is not None:
        current = cb_derivative_ord(current)
        rank += 1
    return rank


def cb_derivative_ord_oracle(alpha, coefficient_limit=3):
    """Independent derivative for ordinals below w^3.

    Counts the limit ordinals directly: they come in runs indexed by the
    w^2 coefficient, every full run having order type w and the last one
    being the explicitly enumerated finite list of multiples of w that
    still fit.  The run count and tail length then name the interval the
    layer presents, with no reference to the symbolic quotient rule.
    """
    if alpha.is_zero:
        return None
    if alpha.leading_exponent() > ORACLE_EXPONENT_MAX:
        raise SizeLimit("oracle exponent", alpha.leading_exponent(), ORACLE_EXPONENT_MAX)
    by_exp = dict(alpha.terms)
    # only the infinite terms feed the run enumeration; the finite part
    # contributes no limit ordinals and may be arbitrarily large
    enumerated = [c for e, c in alpha.terms if e >= 1]
    if any(c > coefficient_limit for c in enumerated):
        raise SizeLimit("oracle coefficient", max(enumerated), coefficient_limit)
    a, b = by_exp.get(2, 0), by_exp.get(1, 0)
    if a == 0:
        # finite layer: enumerate the multiples of w up to the bound
        layer = [OrdinalCNF(((1, k),)) for k in range(1, b + 1)]
        if not layer:
            return None
        return OrdinalCNF.from_int(len(layer) - 1)
    # a full run of limit ordinals for every w^2 coefficient below a,
    # then the enumerated tail w^2*a + w*k for k = 0..b
    tail = [OrdinalCNF(((2, a),) if k == 0 else ((2, a), (1, k))) for k in range(b + 1)]
    terms = [(1, a)]
    if len(tail) - 1 > 0:
        terms.append((0, len(tail) - 1))
    return OrdinalCNF(tuple(terms))


def ordinal_interval_topology(value):
    """Explicit order topology on the finite interval [0, value].

    A set is open when every one of its points sits inside an open order
    interval contained in the set (the interval basis is intersection
    closed, so this is the generated topology).  On a finite chain every
    singleton is itself a basis interval, making the space discrete.
    """
    if value < 0 or value > 10:
        raise BadParameters("explicit interval needs 0 <= value <= 10")
    points = list(range(value + 1))
    basis = set()
    for lo in range(-1, value + 1):
        for hi in range(lo + 1, value + 2):
            basis.add(frozenset(p for p in points if lo < p < hi))
    opens = []
    for candidate in _subsets(value + 1):
        candidate = frozenset(candidate)
        if all(any(p in b and b <= candidate for b in basis) for p in candidate):
            opens.append(candidate)
    return FinTop(points, opens)


# ---------------------------------------------------------------------------
# the chain of closed sets in a convergent-sequence space


@dataclass
class KqChainReport:
    """Strictly increasing chain of closed sets and its order-reversing dual."""

    points: tuple
    sets: list
    chosen: list
    all_closed: bool
    strictly_increasing: bool
    dual_reverses: bool
    eqrels: list

    @property
    def ok(self):
        return self.all_closed and self.strictly_increasing and self.dual_reverses

    def to_json_dict(self):
        return {
            "points": [str(p) for p in self.points],
            "rationals": [str(q) for q in self.chosen],
            "sets": [sorted(str(self.points[i]) for i in s) for s in self.sets],
            "all_closed": self.all_closed,
            "strictly_increasing": self.strictly_increasing,
            "dual_reverses": self.dual_reverses,
            "pass": self.ok,
        }


def kq_chain_witness(m, n, rationals=None):
    """Chain of closed sets in the m-point truncation of a convergent sequence.

    The space has m isolated points labeled by ascending rationals plus one
    limit point whose only neighbourhood is everything.  For each chosen
    rational q the witness set collects the limit point and the isolated
    points labeled at most q; the sets must be closed and strictly
    increasing, and collapsing each to a single class must reverse the
    order on the dual side.
    """
    if not (isinstance(m, int) and isinstance(n, int) and m >= n >= 2):
        raise BadParameters("need integers m >= n >= 2")
    labels = [Fraction(i, m + 1) for i in range(1, m + 1)]
    points = tuple(str(q) for q in labels) + ("limit",)
    limit = m  # index of the limit point
    opens = {frozenset(s) for s in _subsets(m)}
    opens.add(frozenset(range(m + 1)))
    space = FinTop(points, opens)

    if rationals is None:
        rationals = [Fraction(j, n + 1) for j in range(1, n + 1)]
    rationals = [Fraction(q) for q in rationals]
    if len(rationals) != n or any(b <= a for a, b in zip(rationals, rationals[1:])):
        raise BadParameters("need n strictly increasing rationals")

    sets = []
    for q in rationals:
        members = frozenset(
            [i for i, label in enumerate(labels) if label <= q] + [limit]
        )
        sets.append(members)
    all_closed = all(space.is_closed(s) for s in sets)
    strictly_increasing = all(a < b for a, b in zip(sets, sets[1:]))

    # a bigger closed set collapses more, i.e. gives a coarser relation and
    # hence a smaller subalgebra: the earlier relation refines the later one
    eqrels = [collapse(m + 1, {i + 1 for i in s}) for s in sets]
    dual_reverses = all(
        a.refines(b) and a != b for a, b in zip(eqrels, eqrels[1:])
    )
    return KqChainReport(
        points=points,
        sets=sets,
        chosen=rationals,
        all_closed=all_closed,
        strictly_increasing=strictly_increasing,
        dual_reverses=dual_reverses,
        eqrels=eqrels,
    )
