"""Finite orthomodular posets and their Boolean subalgebras.

An orthomodular poset bundles a bounded poset with an order-reversing
involution subject to five axioms, all machine-checked on construction.
Boolean subalgebras are subsets closed under the involution whose pairwise
meets and joins exist in the ambient poset, land back in the subset, and
obey distributivity; they are enumerated by closing generator sets rather
than scanning the power set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    AxiomViolated,
    BadParameters,
    IsoFailure,
    NotBoolean,
    SizeLimit,
)
from .order import FinPoset, iter_bits, validate_poset
from .scatter import FinTop
from .staralg import c_lattice, minimal_projections

#: enumeration guard for Boolean subalgebras
OMP_MAX = 32
#: spectrum guard for the subalgebra/Boolean-subalgebra comparison
CAF_MAX = 6


class OMP:
    """Finite orthomodular poset.

    Wraps a validated poset with the orthocomplement permutation and the
    designated bounds.  Meets and joins are partial; ``meet``/``join``
    return None when the bound does not exist, never a default.
    """

    def __init__(self, poset, ortho, one):
        self.poset = poset
        self.n = poset.n
        self.elements = poset.elements
        self.ortho = tuple(ortho)
        self.one = one
        self.zero = self.ortho[one]

    def leq(self, i, j):
        return self.poset.leq(i, j)

    def meet(self, i, j):
        return self.poset.glb_mask((1 << i) | (1 << j))

    def join(self, i, j):
        return self.poset.lub_mask((1 << i) | (1 << j))

    def __repr__(self):
        return f"OMP({self.n} elements)"


def validate_omp(elements, leq, ortho):
    """Checked constructor: poset axioms plus the five involution axioms.

    Raises AxiomViolated carrying the axiom id and the witnessing
    elements; the poset table itself is validated first.
    """
    poset = validate_poset(elements, leq)
    n = poset.n
    if len(ortho) != n or sorted(ortho) != list(range(n)):
        raise BadParameters("ortho table must be a permutation of the elements")
    one = poset.top()
    if one is None:
        raise AxiomViolated("greatest-element", ())
    for p in range(n):
        if ortho[ortho[p]] != p:
            raise AxiomViolated("double-complement", (p,))
    for p in range(n):
        for q in iter_bits(poset.up[p] & ~(1 << p)):
            if not poset.leq(ortho[q], ortho[p]):
                raise AxiomViolated("antitone", (p, q))
    omp = OMP(poset, ortho, one)
    for p in range(n):
        if omp.join(p, ortho[p]) != one:
            raise AxiomViolated("excluded-middle", (p,))
    for p in range(n):
        for q in range(n):
            if poset.leq(p, ortho[q]) and omp.join(p, q) is None:
                raise AxiomViolated("orthogonal-join", (p, q))
    for p in range(n):
        for q in range(n):
            if poset.leq(ortho[q], p) and omp.meet(p, q) == omp.zero and p != ortho[q]:
                raise AxiomViolated("orthomodular", (p, q))
    return omp


# ---------------------------------------------------------------------------
# fixtures


def power_set_omp(k):
    """The Boolean orthomodular poset of subsets of a k-element set."""
    if k < 0:
        raise BadParameters("need k >= 0")
    size = 1 << k
    elements = [_subset_label(mask, k) for mask in range(size)]
    leq = [[(a & b) == a for b in range(size)] for a in range(size)]
    ortho = [(size - 1) ^ a for a in range(size)]
    return validate_omp(elements, leq, ortho)


def _subset_label(mask, k):
    members = [str(i + 1) for i in range(k) if mask >> i & 1]
    return "{" + ",".join(members) + "}"


def mo_omp(n):
    """The horizontal-sum fixture: 0, 1 and n incomparable complement pairs."""
    if n < 1:
        raise BadParameters("need at least one pair")
    elements = ["0"] + [f"a{i}{suffix}" for i in range(1, n + 1) for suffix in ("", "'")] + ["1"]
    size = len(elements)
    one = size - 1
    leq = [[i == j for j in range(size)] for i in range(size)]
    for i in range(size):
        leq[0][i] = True
        leq[i][one] = True
    ortho = list(range(size))
    ortho[0], ortho[one] = one, 0
    for i in range(1, size - 1, 2):
        ortho[i], ortho[i + 1] = i + 1, i
    return validate_omp(elements, leq, ortho)


# ---------------------------------------------------------------------------
# Boolean subalgebras


@dataclass(frozen=True)
class BoolSub:
    """A Boolean subalgebra, stored as a member bitmask over its OMP."""

    omp: OMP
    mask: int

    def members(self):
        return tuple(iter_bits(self.mask))

    def labels(self):
        return tuple(self.omp.elements[i] for i in self.members())

    def atoms(self):
        """Minimal nonzero members."""
        out = []
        for p in self.members():
            if p == self.omp.zero:
                continue
            below = self.omp.poset.dn[p] & self.mask & ~(1 << self.omp.zero) & ~(1 << p)
            if below == 0:
                out.append(p)
        return tuple(out)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __eq__(self, other):
        return isinstance(other, BoolSub) and self.omp is other.omp and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.omp), self.mask))


def _close_boolean(omp, seed_mask):
    """Close a subset under complement, meet and join.

    Returns the closed mask, or None when some pair of members has no meet
    or join in the ambient poset (no Boolean subalgebra can contain the
    seed in that case).
    """
    mask = seed_mask | (1 << omp.zero) | (1 << omp.one)
    for p in iter_bits(seed_mask):
        mask |= 1 << omp.ortho[p]
    while True:
        added = 0
        members = list(iter_bits(mask))
        for a, b in itertools.combinations(members, 2):
            for bound in (omp.meet(a, b), omp.join(a, b)):
                if bound is None:
                    return None
                bit = 1 << bound
                if not mask & bit:
                    added |= bit | (1 << omp.ortho[bound])
        if not added:
            return mask
        mask |= added


def _is_boolean_mask(omp, mask):
    """Distributivity and complement laws on a closed subset."""
    members = list(iter_bits(mask))
    for p in members:
        if omp.meet(p, omp.ortho[p]) != omp.zero:
            return False
    for p, q, r in itertools.product(members, repeat=3):
        qr = omp.join(q, r)
        lhs = omp.meet(p, qr)
        rhs = omp.join(omp.meet(p, q), omp.meet(p, r))
        if lhs != rhs:
            return False
    return True


def boolean_subalgebras(omp, size_limit=OMP_MAX):
    """All Boolean subalgebras, as a poset ordered by inclusion.

    Enumeration grows closures of generator sets: starting from the
    smallest subalgebra, repeatedly adjoin one outside element and close.
    Every Boolean subalgebra is reached this way, because closing a subset
    of a Boolean subalgebra stays inside it.
    """
    if omp.n > size_limit:
        raise SizeLimit("orthomodular poset size", omp.n, size_limit)
    base = _close_boolean(omp, 0)
    if base is None or not _is_boolean_mask(omp, base):
        raise NotBoolean("the bounds {0, 1} do not span a Boolean subalgebra")
    found = {base}
    frontier = [base]
    rejected = set()
    while frontier:
        current = frontier.pop()
        for p in range(omp.n):
            if current >> p & 1:
                continue
            seed = current | (1 << p)
            closed = _close_boolean(omp, seed)
            if closed is None or closed in found or closed in rejected:
                continue
            if _is_boolean_mask(omp, closed):
                found.add(closed)
                frontier.append(closed)
            else:
                rejected.add(closed)
    masks = sorted(found, key=lambda m: (bin(m).count("1"), m))
    subs = [BoolSub(omp, m) for m in masks]
    table = [[(a.mask & ~b.mask) == 0 for b in subs] for a in subs]
    labels = ["{" + ",".join(str(lbl) for lbl in sub.labels()) + "}" for sub in subs]
    return validate_poset(labels, table, payloads=subs)


def blocks(omp, size_limit=OMP_MAX):
    """Maximal Boolean subalgebras."""
    poset = boolean_subalgebras(omp, size_limit)
    return [
        poset.payloads[i]
        for i in range(poset.n)
        if poset.up[i] == 1 << i  # nothing strictly above
    ]


# ---------------------------------------------------------------------------
# the subalgebra lattice versus the projection Boolean subalgebras


@dataclass
class CafIsoReport:
    """Explicit order isomorphism between the two independently built posets."""

    subalgebra_poset: FinPoset
    boolean_poset: FinPoset
    correspondence: list

    @property
    def size(self):
        return self.subalgebra_poset.n

    def to_json_dict(self):
        return {
            "size": self.size,
            "correspondence": [
                {"subalgebra": a, "projections": b} for a, b in self.correspondence
            ],
        }


def verify_caf_iso(algebra, size_limit=CAF_MAX):
    """Match the subalgebra lattice with the Boolean subalgebras of projections.

    Both sides are enumerated independently: the subalgebra lattice from
    partitions of the spectrum, the Boolean subalgebras by closure search
    inside the projection orthomodular poset.  The map sends a subalgebra
    to the set of its projections; the check requires it to be a bijection
    that preserves and reflects order, and raises IsoFailure otherwise.
    """
    projections = minimal_projections(algebra)  # also rejects noncommutative input
    k = len(projections)
    if k > size_limit:
        raise SizeLimit("spectrum size", k, size_limit)

    proj_omp = power_set_omp(k)
    bool_poset = boolean_subalgebras(proj_omp)
    sub_poset = c_lattice(algebra, size_limit=max(k, 1))

    # each subalgebra's projections: sums over unions of blocks of its partition
    bool_index = {sub.mask: i for i, sub in enumerate(bool_poset.payloads)}
    assignment = []
    for i in range(sub_poset.n):
        node = sub_poset.payloads[i]
        proj_mask = 0
        for mask in range(1 << k):
            candidate = _sum_of(projections, mask, algebra.dim)
            if node.contains(candidate):
                proj_mask |= 1 << mask
        j = bool_index.get(proj_mask)
        if j is None:
            raise IsoFailure(
                {"subalgebra": sub_poset.elements[i], "projections": "not a Boolean subalgebra"}
            )
        assignment.append(j)
    if len(set(assignment)) != bool_poset.n or sub_poset.n != bool_poset.n:
        raise IsoFailure({"reason": "not a bijection"})
    for i, j in itertools.product(range(sub_poset.n), repeat=2):
        if sub_poset.leq(i, j) != bool_poset.leq(assignment[i], assignment[j]):
            raise IsoFailure(
                {
                    "pair": [sub_poset.elements[i], sub_poset.elements[j]],
                    "reason": "order not preserved and reflected",
                }
            )
    correspondence = [
        (sub_poset.elements[i], bool_poset.elements[assignment[i]])
        for i in range(sub_poset.n)
    ]
    return CafIsoReport(
        subalgebra_poset=sub_poset,
        boolean_poset=bool_poset,
        correspondence=correspondence,
    )


def _sum_of(projections, mask, dim):
    from .staralg import Matrix

    total = Matrix.zero(dim)
    for i in iter_bits(mask):
        total = total + projections[i]
    return total


# ---------------------------------------------------------------------------
# Stone spaces of finite Boolean algebras


@dataclass
class StoneSpace:
    points: tuple
    topology: FinTop
    element_to_clopen: dict

    def to_json_dict(self):
        return {
            "points": list(self.points),
            "clopens": {
                str(k): sorted(v) for k, v in self.element_to_clopen.items()
            },
        }


def stone_space(boolean):
    """Atoms of a finite Boolean algebra as a discrete space.

    Accepts an OMP or a BoolSub.  Every element must be the join of the
    atoms below it and the element-to-clopen map must biject onto the
    power set of atoms; otherwise the input was not Boolean (NotBoolean).
    """
    if isinstance(boolean, BoolSub):
        omp, mask = boolean.omp, boolean.mask
    elif isinstance(boolean, OMP):
        omp, mask = boolean, (1 << boolean.n) - 1
    else:
        raise BadParameters("expected an OMP or a BoolSub")
    if not _is_boolean_mask(omp, mask):
        raise NotBoolean("input is not a Boolean algebra")
    sub = BoolSub(omp, mask)
    atom_list = sub.atoms()
    atom_pos = {a: i for i, a in enumerate(atom_list)}
    element_to_clopen = {}
    seen = set()
    for p in iter_bits(mask):
        clopen = frozenset(
            atom_pos[a] for a in atom_list if omp.leq(a, p)
        )
        element_to_clopen[omp.elements[p]] = clopen
        seen.add(clopen)
    if len(seen) != 1 << len(atom_list) or len(seen) != bin(mask).count("1"):
        raise NotBoolean("clopen sets do not reconstruct the algebra")
    points = tuple(omp.elements[a] for a in atom_list)
    opens = [frozenset(s) for s in _all_subsets(len(atom_list))]
    topology = FinTop(points, opens)
    return StoneSpace(points=points, topology=topology, element_to_clopen=element_to_clopen)


def _all_subsets(n):
    for mask in range(1 << n):
        yield set(iter_bits(mask))
