"""Closed interval-block equivalence relations on [0,1] with exact rationals.

A relation here is the diagonal plus the squares of finitely many disjoint
closed blocks.  Endpoints are triadic rationals, and joins hinge on exact
endpoint equality (blocks that merely touch must merge), so everything runs
on ``fractions.Fraction`` - never floats.

The module builds the middle-thirds relation and the shrinking
first-and-last-thirds family, and verifies at a chosen truncation depth
that joining against the shrinking family stays full while joining against
its intersection (the diagonal) does not: the failure of the distributive
law that meet-continuity would demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AssertionFailed, BadParameters, DepthLimit, GridTooCoarse
from .partitions import EqRel

#: default cap on truncation depths (block counts grow as 2^depth)
MAX_DEPTH = 10

ZERO = Fraction(0)
ONE = Fraction(1)
THIRD = Fraction(1, 3)


class TriRel:
    """Diagonal plus squares of disjoint closed blocks with rational endpoints.

    Invariants enforced on construction: blocks sorted, each l < u, and no
    two blocks share even an endpoint (touching blocks must have been
    merged, since transitivity through the shared point would glue them).
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = tuple(sorted((Fraction(l), Fraction(u)) for l, u in blocks))
        for l, u in blocks:
            if not (ZERO <= l < u <= ONE):
                raise BadParameters(f"block [{l}, {u}] is not a proper subinterval of [0,1]")
        for (_, u1), (l2, _) in zip(blocks, blocks[1:]):
            if l2 <= u1:
                raise BadParameters(f"blocks touching at {l2} must be merged")
        self.blocks = blocks

    def relates(self, x, y):
        if x == y:
            return True
        return any(l <= x <= u and l <= y <= u for l, u in self.blocks)

    def block_containing(self, x):
        for l, u in self.blocks:
            if l <= x <= u:
                return (l, u)
        return None

    def contains(self, other):
        """Relation containment: every block of other inside a block of self."""
        return all(
            any(l <= ol and ou <= u for l, u in self.blocks) for ol, ou in other.blocks
        )

    def __le__(self, other):
        return other.contains(self)

    def __eq__(self, other):
        return isinstance(other, TriRel) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        inner = ", ".join(f"[{l}, {u}]" for l, u in self.blocks)
        return f"TriRel({inner})"

    def to_json_list(self):
        return [[str(l), str(u)] for l, u in self.blocks]


DIAGONAL = TriRel(())
FULL = TriRel(((ZERO, ONE),))


def stage_intervals(sigma):
    """The four stage endpoints (a, b, c, d) for a binary string.

    Each stage splits its interval [a, d] into closed thirds: [a, b] and
    [c, d] survive into the next stage (suffix 0 and 1), [b, c] is the
    middle block.  Always 0 <= a < b < c < d <= 1.
    """
    if any(ch not in "01" for ch in sigma):
        raise BadParameters(f"stage index {sigma!r} is not a binary string")
    a, b, c, d = ZERO, THIRD, 2 * THIRD, ONE
    for ch in sigma:
        if ch == "0":
            a, b, c, d = a, a + (b - a) / 3, b - (b - a) / 3, b
        else:
            a, b, c, d = c, c + (d - c) / 3, d - (d - c) / 3, d
    return a, b, c, d


def _stages(length):
    if length == 0:
        yield ""
        return
    for sigma in _stages(length - 1):
        yield sigma + "0"
        yield sigma + "1"


def relation_R(depth, max_depth=MAX_DEPTH):
    """Middle-thirds relation truncated at the given depth.

    One block [b, c] per binary string of length <= depth; the blocks are
    pairwise disjoint (a point in two middle thirds would pin down the same
    string twice), which the constructor re-checks.
    """
    if not 0 <= depth <= max_depth:
        raise DepthLimit(depth, max_depth)
    blocks = []
    for length in range(depth + 1):
        for sigma in _stages(length):
            _, b, c, _ = stage_intervals(sigma)
            blocks.append((b, c))
    return TriRel(blocks)


def relation_S(n, max_depth=MAX_DEPTH):
    """First-and-last-thirds relation: one block [a, d] per string of length n."""
    if not 0 <= n <= max_depth:
        raise DepthLimit(n, max_depth)
    blocks = []
    for sigma in _stages(n):
        a, _, _, d = stage_intervals(sigma)
        blocks.append((a, d))
    return TriRel(blocks)


def tri_join(x, y):
    """Smallest block relation containing both.

    Blocks that overlap or touch merge into their convex hull; a single
    sorted sweep realizes the transitive closure because blocks are
    intervals.
    """
    blocks = sorted(x.blocks + y.blocks)
    merged = []
    for l, u in blocks:
        if merged and l <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], u)
        else:
            merged.append([l, u])
    return TriRel(tuple((l, u) for l, u in merged))


def tri_meet(x, y):
    """Intersection: pairwise block intersections, dropping degenerate ones."""
    blocks = []
    for l1, u1 in x.blocks:
        for l2, u2 in y.blocks:
            l, u = max(l1, l2), min(u1, u2)
            if l < u:
                blocks.append((l, u))
    return TriRel(blocks)


def max_offdiag_width(x):
    """Largest block length; zero for the diagonal."""
    return max((u - l for l, u in x.blocks), default=ZERO)


def is_full(x):
    return x.blocks == ((ZERO, ONE),)


# ---------------------------------------------------------------------------
# the meet-continuity counterexample at a finite stage


@dataclass
class Check:
    name: str
    passed: bool
    witness: str

    def to_json_dict(self):
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class CounterexampleReport:
    depth: int
    r_blocks: int
    checks: list

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def to_json_dict(self):
        return {
            "depth": self.depth,
            "r_blocks": self.r_blocks,
            "checks": [check.to_json_dict() for check in self.checks],
        }


def verify_counterexample(depth, max_depth=MAX_DEPTH):
    """Check the distributivity failure at truncation depth ``depth``.

    With R the truncated middle-thirds relation and S_n the shrinking
    family: R joined with every S_n (n <= depth) is already full, yet R
    joined with the intersection of all S_n (the diagonal) is just R, which
    is not full; the S_n widths 3^-n witness the shrink to the diagonal.
    Each join is also re-derived through the explicit transitivity chain
    across stage endpoints.  Raises AssertionFailed naming the offending
    stage as soon as any assertion breaks; returns the full report
    otherwise.
    """
    if not 0 <= depth <= max_depth:
        raise DepthLimit(depth, max_depth)
    r = relation_R(depth, max_depth)
    checks = []

    def record(name, passed, witness):
        checks.append(Check(name, passed, witness))
        if not passed:
            raise AssertionFailed(f"{name}: {witness}")

    for n in range(1, depth + 1):
        joined = tri_join(r, relation_S(n, max_depth))
        first = "empty" if not joined.blocks else "[{}, {}]".format(*joined.blocks[0])
        record(
            f"join_full:n={n}",
            is_full(joined),
            f"{len(joined.blocks)} block(s), first {first}",
        )

    with_diag = tri_join(r, DIAGONAL)
    record(
        "join_diagonal_is_r",
        with_diag == r and not is_full(r),
        f"{len(r.blocks)} block(s)",
    )

    for n in range(1, depth + 1):
        width = max_offdiag_width(relation_S(n, max_depth))
        record(
            f"width_exact:n={n}",
            width == Fraction(1, 3**n),
            f"max width {width}",
        )

    for length in range(depth):
        ok, sigma = _chain_level(r, length, max_depth)
        record(
            f"chain_level:{length}",
            ok,
            "all stage chains connect" if ok else f"chain broken at stage {sigma!r}",
        )

    return CounterexampleReport(depth=depth, r_blocks=len(r.blocks), checks=checks)


def _chain_level(r, length, max_depth):
    """Transitivity chain from a to d across every stage of a given length.

    The chain steps a -> b (first-third block of the next stage), b -> c
    (middle block), c -> d (last-third block), once per child stage, and
    lands on (a, d) related inside the join of R with the next family
    member.
    """
    s_next = relation_S(length + 1, max_depth)
    joined = tri_join(r, s_next)
    for sigma in _stages(length):
        a, b, c, d = stage_intervals(sigma)
        steps = []
        for child in (sigma + "0", sigma + "1"):
            ca, cb, cc, cd = stage_intervals(child)
            steps.append((ca, cb, s_next))
            steps.append((cb, cc, r))
            steps.append((cc, cd, s_next))
        for x, y, rel in steps:
            if not rel.relates(x, y):
                return False, sigma
        # the middle block of the parent stage links the two child spans
        if not r.relates(b, c):
            return False, sigma
        if not joined.relates(a, d):
            return False, sigma
    return True, None


# ---------------------------------------------------------------------------
# grid restriction (bridge to finite equivalence relations)


def sample_to_grid(x, m, max_resolution=8):
    """Restrict a block relation to the grid k/3^m, 0 <= k <= 3^m.

    All block endpoints must lie on the grid, else the restriction could
    misrepresent connectivity (GridTooCoarse).  At sufficient resolution
    the restriction turns joins of block relations into joins of finite
    relations.
    """
    if not 0 <= m <= max_resolution:
        raise DepthLimit(m, max_resolution)
    step = Fraction(1, 3**m)
    for l, u in x.blocks:
        for endpoint in (l, u):
            if (endpoint / step).denominator != 1:
                raise GridTooCoarse(endpoint, m)
    points = [k * step for k in range(3**m + 1)]
    pairs = []
    for l, u in x.blocks:
        inside = [p for p in points if l <= p <= u]
        pairs.extend(zip(inside, inside[1:]))
    return EqRel.from_pairs(points, pairs)


# ---------------------------------------------------------------------------
# order-dense chain witnesses


def dense_chain_witness(n):
    """Strictly shrinking tail-block relations [i/(n+1), 1], i = 1..n.

    As relations the witnesses strictly decrease, so the dual subalgebras
    strictly increase; between any two consecutive witnesses the midpoint
    constructor builds a further one, which is the finite stage of an
    order-dense chain.
    """
    if n < 2:
        raise BadParameters("need at least two witnesses")
    return [TriRel(((Fraction(i, n + 1), ONE),)) for i in range(1, n + 1)]


def midpoint_witness(x, y):
    """A tail-block relation strictly between two nested tail-block ones."""
    lx, ly = _tail_start(x), _tail_start(y)
    if lx == ly:
        raise BadParameters("witnesses coincide")
    mid = (lx + ly) / 2
    return TriRel(((mid, ONE),))


def _tail_start(x):
    if len(x.blocks) != 1 or x.blocks[0][1] != ONE:
        raise BadParameters("not a tail-block relation [x, 1]")
    return x.blocks[0][0]
