"""Equivalence relations on finite sets and the partition lattice.

A partition doubles as the dual picture of a commutative subalgebra of the
functions on its ground set: finer partition, larger subalgebra.  The
lattice constructor therefore exposes two orientations and forces callers
to pick one.
"""

from __future__ import annotations

from .errors import BadParameters, GroundMismatch, OutOfRange, SizeLimit
from .order import validate_poset

#: default guard for partition-lattice construction (Bell(8) = 4140 nodes)
LATTICE_MAX = 8

ORIENT_REFINEMENT = "refinement"
ORIENT_SUBALGEBRA = "subalgebra"


def bell_number(n):
    """Number of partitions of an n-set (Bell number)."""
    if n < 0:
        raise BadParameters("bell_number needs n >= 0")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


class EqRel:
    """Equivalence relation on a finite, totally orderable ground set.

    Canonical form: each class sorted, classes sorted by least member.
    Instances are immutable and hash by their canonical class tuple, so
    structural equality is relation equality.
    """

    def __init__(self, ground, classes):
        self.ground = tuple(sorted(ground))
        if len(set(self.ground)) != len(self.ground):
            raise BadParameters("ground set has duplicate members")
        seen = set()
        canon = []
        for cls in classes:
            cls = tuple(sorted(cls))
            if not cls:
                raise BadParameters("empty class")
            canon.append(cls)
            for x in cls:
                if x in seen:
                    raise BadParameters(f"element {x!r} occurs in two classes")
                seen.add(x)
        if seen != set(self.ground):
            raise BadParameters("classes do not cover the ground set")
        self.classes = tuple(sorted(canon, key=lambda cls: cls[0]))
        self._class_of = {x: i for i, cls in enumerate(self.classes) for x in cls}

    # -- constructors ---------------------------------------------------

    @classmethod
    def diagonal(cls, ground):
        return cls(ground, [[x] for x in ground])

    @classmethod
    def full(cls, ground):
        return cls(ground, [list(ground)])

    @classmethod
    def from_pairs(cls, ground, pairs):
        """Smallest equivalence relation containing the given pairs."""
        parent = {x: x for x in ground}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            if a not in parent or b not in parent:
                raise OutOfRange(f"pair ({a!r}, {b!r}) leaves the ground set")
            parent[find(a)] = find(b)
        buckets = {}
        for x in ground:
            buckets.setdefault(find(x), []).append(x)
        return cls(ground, buckets.values())

    # -- queries ----------------------------------------------------------

    def relates(self, a, b):
        return self._class_of[a] == self._class_of[b]

    def class_of(self, a):
        return self.classes[self._class_of[a]]

    def refines(self, other):
        """True when every class of self sits inside a class of other."""
        if self.ground != other.ground:
            raise GroundMismatch("relations live on different ground sets")
        return all(
            other.relates(cls[0], x) for cls in self.classes for x in cls[1:]
        )

    def __eq__(self, other):
        return isinstance(other, EqRel) and self.ground == other.ground and self.classes == other.classes

    def __hash__(self):
        return hash((self.ground, self.classes))

    def __or__(self, other):
        return join(self, other)

    def __and__(self, other):
        return meet(self, other)

    def __repr__(self):
        return f"EqRel({label_of(self)})"

    def to_json_dict(self):
        return {"n": len(self.ground), "classes": [list(cls) for cls in self.classes]}


def label_of(rel):
    """Canonical human-readable label, e.g. ``{1,2}|{3}``."""
    return "|".join("{" + ",".join(str(x) for x in cls) + "}" for cls in rel.classes)


def join(r, s):
    """Smallest equivalence relation containing both (transitive closure)."""
    if r.ground != s.ground:
        raise GroundMismatch("join needs a common ground set")
    pairs = []
    for rel in (r, s):
        for cls in rel.classes:
            pairs.extend(zip(cls, cls[1:]))
    return EqRel.from_pairs(r.ground, pairs)


def meet(r, s):
    """Classwise intersection."""
    if r.ground != s.ground:
        raise GroundMismatch("meet needs a common ground set")
    buckets = {}
    for x in r.ground:
        buckets.setdefault((r._class_of[x], s._class_of[x]), []).append(x)
    return EqRel(r.ground, buckets.values())


def all_partitions(ground):
    """Every partition of the ground set, deterministically ordered."""
    ground = tuple(sorted(ground))

    def rec(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for sub in rec(rest):
            yield [[first]] + [list(c) for c in sub]
            for i in range(len(sub)):
                yield [list(c) for c in sub[:i]] + [[first] + list(sub[i])] + [
                    list(c) for c in sub[i + 1 :]
                ]

    rels = {EqRel(ground, classes) for classes in rec(list(ground))}
    return sorted(rels, key=lambda rel: (len(rel.classes), rel.classes))


def partition_lattice(n, orientation, size_limit=LATTICE_MAX):
    """Poset of all partitions of {1..n}.

    ``orientation`` must be chosen explicitly: in the refinement order a
    finer partition is smaller (bottom = all singletons); in the subalgebra
    order a finer partition is larger (bottom = the single block, matching
    the scalars at the bottom of a subalgebra lattice).
    """
    if orientation not in (ORIENT_REFINEMENT, ORIENT_SUBALGEBRA):
        raise BadParameters(
            f"orientation must be {ORIENT_REFINEMENT!r} or {ORIENT_SUBALGEBRA!r}"
        )
    if not 1 <= n <= size_limit:
        raise SizeLimit("partition lattice ground size", n, size_limit)
    rels = all_partitions(range(1, n + 1))
    table = []
    for a in rels:
        if orientation == ORIENT_REFINEMENT:
            table.append([a.refines(b) for b in rels])
        else:
            table.append([b.refines(a) for b in rels])
    return validate_poset(
        [label_of(rel) for rel in rels], table, orientation=orientation, payloads=rels
    )


def collapse(n, subset):
    """Relation with the given subset as one class and singletons elsewhere."""
    ground = range(1, n + 1)
    subset = set(subset)
    if not subset <= set(ground):
        raise OutOfRange(f"subset {sorted(subset)} leaves 1..{n}")
    if len(subset) <= 1:
        return EqRel.diagonal(ground)
    classes = [sorted(subset)] + [[x] for x in ground if x not in subset]
    return EqRel(ground, classes)


def quotient(n, rel):
    """Quotient set of a relation on {1..n} plus the projection map."""
    if rel.ground != tuple(range(1, n + 1)):
        raise GroundMismatch(f"relation is not on the ground set 1..{n}")
    points = tuple(rel.classes)
    projection = {x: rel.class_of(x) for x in rel.ground}
    return points, projection
