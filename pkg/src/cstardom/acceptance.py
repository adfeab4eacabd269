"""The acceptance suite: one runnable check per release criterion.

Every criterion is exact (no tolerances anywhere in the package) and comes
with a time budget; the CLI ``accept`` subcommand and the test suite both
run these functions and report one line per criterion.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cantor, order, ortho, partitions, scatter, staralg
from .errors import AxiomViolated, CstardomError

RNG_SEED = 20260810


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed_s: float
    budget_s: float
    details: str

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] criterion {self.number}: {self.name} "
            f"({self.elapsed_s:.2f}s / budget {self.budget_s:.0f}s) - {self.details}"
        )

    def to_json_dict(self):
        return {
            "number": self.number,
            "name": self.name,
            "pass": self.passed,
            "elapsed_s": round(self.elapsed_s, 3),
            "budget_s": self.budget_s,
            "details": self.details,
        }


def _diagonal_algebra(k):
    generators = [
        staralg.Matrix.diag([1] * (j + 1) + [0] * (k - j - 1)) for j in range(k - 1)
    ]
    return staralg.generated_algebra(generators, dim=k)


def _criterion_1():
    """Subalgebra lattice of the diagonal algebra matches the partition lattice."""
    expected = {2: 2, 3: 5, 4: 15, 5: 52}
    for k in range(2, 6):
        lattice = staralg.c_lattice(_diagonal_algebra(k))
        reference = partitions.partition_lattice(k, partitions.ORIENT_SUBALGEBRA)
        if lattice.n != expected[k] or reference.n != expected[k]:
            return False, f"k={k}: {lattice.n} nodes, expected {expected[k]}"
        if lattice.elements != reference.elements or lattice.up != reference.up:
            return False, f"k={k}: lattice is not order-isomorphic to the partition lattice"
    return True, "element counts 2, 5, 15, 52 and identical order tables"


def _criterion_2():
    """All seven property flags are true on the subalgebra lattices."""
    for k in range(2, 6):
        lattice = staralg.c_lattice(_diagonal_algebra(k))
        report = order.domain_report(lattice)
        if not report.all_true():
            flags = report.flags()
            bad = [key for key, value in flags.items() if value is not True]
            return False, f"k={k}: flags {bad} not true"
    return True, "seven flags true for k = 2..5"


def _criterion_3():
    """Definitional way-below equals the order on random posets."""
    rng = random.Random(RNG_SEED)
    for index in range(200):
        poset = order.random_poset(rng, rng.randint(1, 10))
        wb, method = order.way_below_matrix(poset, method="definitional")
        if method != order.DEFINITIONAL:
            return False, f"poset {index}: oracle did not run"
        if wb != list(poset.up):
            return False, f"poset {index}: way-below differs from the order"
        if order.compact_elements(poset, method="definitional") != list(range(poset.n)):
            return False, f"poset {index}: not every element compact"
    return True, "200 random posets, way-below == order and all elements compact"


def _criterion_4():
    """The distributivity failure verifies at truncation depths 1..8."""
    for depth in range(1, 9):
        report = cantor.verify_counterexample(depth)
        if not report.passed:
            return False, f"depth {depth} failed"
        if report.r_blocks != 2 ** (depth + 1) - 1:
            return False, f"depth {depth}: unexpected block count {report.r_blocks}"
    return True, "depths 1..8, exact rational arithmetic"


def _criterion_5():
    """Grid restriction turns block-relation joins into finite joins."""
    checked = 0
    for depth in range(1, 5):
        resolution = depth + 1
        relations = [cantor.relation_R(depth), cantor.DIAGONAL]
        relations.extend(cantor.relation_S(n) for n in range(1, depth + 1))
        for x, y in itertools.product(relations, repeat=2):
            joined = cantor.sample_to_grid(cantor.tri_join(x, y), resolution)
            separate = partitions.join(
                cantor.sample_to_grid(x, resolution),
                cantor.sample_to_grid(y, resolution),
            )
            if joined != separate:
                return False, f"depth {depth}: grid join mismatch"
            checked += 1
    return True, f"{checked} pairs, grid join equals join of grids"


def _criterion_6():
    """Subalgebra lattice matches the Boolean subalgebras of the projections."""
    for k in range(2, 6):
        report = ortho.verify_caf_iso(_diagonal_algebra(k))
        if report.size != partitions.bell_number(k):
            return False, f"k={k}: {report.size} nodes, expected Bell({k})"
    return True, "order isomorphism with Bell(k) nodes for k = 2..5"


def _criterion_7():
    """Orthomodular axioms: fixtures validate, mutations fail with witnesses."""
    for k in range(1, 5):
        ortho.power_set_omp(k)
    mo2 = ortho.mo_omp(2)
    ortho.mo_omp(3)

    mutations = 0
    elements = list(mo2.elements)
    leq = [[mo2.leq(i, j) for j in range(mo2.n)] for i in range(mo2.n)]

    # self-orthocomplement pair: excluded middle must fail on that element
    bad_ortho = list(mo2.ortho)
    a1 = elements.index("a1")
    a1p = elements.index("a1'")
    bad_ortho[a1], bad_ortho[a1p] = a1, a1p
    try:
        ortho.validate_omp(elements, leq, bad_ortho)
        return False, "self-orthocomplement mutation validated"
    except AxiomViolated as exc:
        if exc.axiom != "excluded-middle" or exc.witness not in ((a1,), (a1p,)):
            return False, f"wrong witness for excluded-middle: {exc.axiom} {exc.witness}"
        mutations += 1

    # cycle the four middle elements: still a permutation, not an involution
    bad_ortho = list(mo2.ortho)
    a2 = elements.index("a2")
    a2p = elements.index("a2'")
    bad_ortho[a1], bad_ortho[a1p] = a1p, a2
    bad_ortho[a2], bad_ortho[a2p] = a2p, a1
    try:
        ortho.validate_omp(elements, leq, bad_ortho)
        return False, "non-involutive mutation validated"
    except AxiomViolated as exc:
        if exc.axiom != "double-complement" or bad_ortho[bad_ortho[exc.witness[0]]] == exc.witness[0]:
            return False, f"wrong witness for involution mutation: {exc.axiom} {exc.witness}"
        mutations += 1

    # identity complement on the square: antitonicity must fail
    square = ortho.power_set_omp(2)
    sq_leq = [[square.leq(i, j) for j in range(square.n)] for i in range(square.n)]
    try:
        ortho.validate_omp(list(square.elements), sq_leq, list(range(square.n)))
        return False, "identity-complement mutation validated"
    except AxiomViolated as exc:
        i, j = exc.witness
        if exc.axiom != "antitone" or not square.leq(i, j) or square.leq(j, i):
            return False, f"wrong witness for antitone: {exc.axiom} {exc.witness}"
        mutations += 1

    count = ortho.boolean_subalgebras(mo2).n
    if count != 3:
        return False, f"B(MO2) has {count} members, expected 3"
    return True, f"fixtures validate, {mutations} mutations rejected, B(MO2) = 3"


def _criterion_8():
    """Rank of an ordinal interval is its leading exponent plus one."""
    rng = random.Random(RNG_SEED)
    if scatter.cb_rank_ord(scatter.OrdinalCNF.parse("w")) != 2:
        return False, "rank of [0, w] is not 2"
    if scatter.cb_rank_ord(scatter.OrdinalCNF.parse("w^2")) != 3:
        return False, "rank of [0, w^2] is not 3"
    for index in range(50):
        alpha = _random_cnf(rng, exponent_max=5, leading5_coeff_max=2)
        if scatter.cb_rank_ord(alpha) != alpha.leading_exponent() + 1:
            return False, f"rank mismatch for {alpha}"
    for index in range(50):
        alpha = _random_cnf(rng, exponent_max=2, coeff_max=3)
        symbolic = scatter.cb_derivative_ord(alpha)
        oracle = scatter.cb_derivative_ord_oracle(alpha)
        if symbolic != oracle:
            return False, f"oracle disagrees on {alpha}"
    return True, "50 random ordinals below w^5*3 plus 50 oracle cross-checks below w^3"


def _random_cnf(rng, exponent_max, coeff_max=3, leading5_coeff_max=None):
    exponents = sorted(rng.sample(range(exponent_max + 1), rng.randint(1, 3)), reverse=True)
    terms = []
    for e in exponents:
        cap = coeff_max
        if leading5_coeff_max is not None and e == 5:
            cap = leading5_coeff_max
        terms.append((e, rng.randint(1, cap)))
    return scatter.OrdinalCNF(tuple(terms))


def _criterion_9():
    """Atoms are the covers of the bottom, one per projection split."""
    for k in range(2, 6):
        algebra = _diagonal_algebra(k)
        atom_list = staralg.atoms(algebra)
        if len(atom_list) != 2 ** (k - 1) - 1:
            return False, f"k={k}: {len(atom_list)} atoms"
        lattice = staralg.c_lattice(algebra)
        bottom = lattice.bottom()
        cover_nodes = {
            lattice.payloads[j] for i, j in lattice.covers() if i == bottom
        }
        if set(atom_list) != cover_nodes:
            return False, f"k={k}: atoms differ from the bottom covers"
    return True, "2^(k-1)-1 atoms equal the bottom covers for k = 2..5"


def _criterion_10():
    """Dense-chain witnesses are strictly monotone with valid refinements."""
    for n in range(2, 17):
        chain = cantor.dense_chain_witness(n)
        for earlier, later in zip(chain, chain[1:]):
            if not (earlier.contains(later) and earlier != later):
                return False, f"chain witness not strictly decreasing at n={n}"
            middle = cantor.midpoint_witness(earlier, later)
            if not (
                earlier.contains(middle)
                and middle.contains(later)
                and middle not in (earlier, later)
            ):
                return False, f"midpoint refinement fails at n={n}"
    report = scatter.kq_chain_witness(8, 5)
    if not report.ok:
        return False, "closed-set chain report failed"
    small = scatter.kq_chain_witness(
        4, 3, rationals=[Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    )
    if not small.ok or [len(s) for s in small.sets] != [2, 3, 4]:
        return False, "closed-set chain sizes differ from 2, 3, 4"
    return True, "tail chains for n <= 16 and closed-set chains with reversing duals"


def _criterion_11():
    """Pushing a subalgebra along any map between small spectra is Scott continuous."""
    lattices = {}
    for n in range(1, 5):
        lattice = partitions.partition_lattice(n, partitions.ORIENT_SUBALGEBRA)
        # every directed subset must attain its least upper bound; with
        # that, checking join preservation on principal downsets covers
        # every directed subset
        for mask, sup in lattice.directed_masks():
            if sup is None or not mask >> sup & 1:
                return False, f"directed subset without attained sup in lattice {n}"
        lattices[n] = lattice

    maps_checked = 0
    for nx, ny in itertools.product(range(1, 5), repeat=2):
        lx, ly = lattices[nx], lattices[ny]
        ly_index = {rel: i for i, rel in enumerate(ly.payloads)}
        xs = list(range(1, nx + 1))
        ys = list(range(1, ny + 1))
        for values in itertools.product(xs, repeat=ny):
            mapping = dict(zip(ys, values))
            image = [
                ly_index[staralg.pushforward_hom(mapping, rel, ys)]
                for rel in lx.payloads
            ]
            for i in range(lx.n):
                for j in order.iter_bits(lx.up[i]):
                    if not ly.leq(image[i], image[j]):
                        return False, f"pushforward not monotone for {mapping}"
            for m in range(lx.n):
                image_mask = 0
                for i in order.iter_bits(lx.dn[m]):
                    image_mask |= 1 << image[i]
                if ly.lub_mask(image_mask) != image[m]:
                    return False, f"principal-downset join not preserved for {mapping}"
            if nx <= 3 and ny <= 3:
                for mask, sup in lx.directed_masks():
                    image_mask = 0
                    for i in order.iter_bits(mask):
                        image_mask |= 1 << image[i]
                    if ly.lub_mask(image_mask) != image[sup]:
                        return False, f"directed join not preserved for {mapping}"
            maps_checked += 1
    return True, f"{maps_checked} maps, all directed joins preserved"


CRITERIA = (
    (1, "subalgebra lattice matches the partition lattice", _criterion_1, 5.0, True),
    (2, "all seven domain properties hold on those lattices", _criterion_2, 10.0, True),
    (3, "way-below oracle agrees with the order on random posets", _criterion_3, 30.0, False),
    (4, "distributivity counterexample verifies at depths 1..8", _criterion_4, 60.0, False),
    (5, "grid restriction commutes with joins", _criterion_5, 10.0, True),
    (6, "Boolean subalgebras of projections match the lattice", _criterion_6, 20.0, False),
    (7, "orthomodular axioms validate and mutations fail", _criterion_7, 5.0, True),
    (8, "ordinal interval rank equals leading exponent plus one", _criterion_8, 5.0, True),
    (9, "atoms equal the bottom covers", _criterion_9, 5.0, True),
    (10, "dense chain witnesses are strict with refinements", _criterion_10, 5.0, True),
    (11, "pushforward along small spectra maps is Scott continuous", _criterion_11, 30.0, False),
)

SELECTORS = ("all", "fast")


def run_criterion(number):
    for num, name, func, budget, _fast in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                passed, details = func()
            except CstardomError as exc:
                passed, details = False, f"{type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - start
            return CriterionResult(num, name, passed, elapsed, budget, details)
    raise ValueError(f"no criterion {number}")


def run_acceptance(selector="all"):
    if selector not in SELECTORS:
        raise ValueError(f"unknown selector {selector!r}; use one of {SELECTORS}")
    results = []
    for num, _name, _func, _budget, fast in CRITERIA:
        if selector == "fast" and not fast:
            continue
        results.append(run_criterion(num))
    return results
