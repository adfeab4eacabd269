"""Matrix *-algebras over exact Gaussian rationals.

Algebras are spans of square matrices, closed under product and conjugate
transpose and containing the identity.  Bases are kept in reduced echelon
form over the rational complex field, so two algebras are equal exactly
when their basis tuples are.  Spectral operations (minimal projections,
characters, the subalgebra lattice) require the generators to be
projections, which keeps every computation inside the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbientNotCommutative,
    BadParameters,
    DimMismatch,
    GeneratorNotProjection,
    NotCommutative,
    NotSubalgebra,
    NotTotal,
    ParseError,
    SizeLimit,
)
from .order import validate_poset
from .partitions import EqRel, all_partitions, label_of

#: ambient matrix size / algebra dimension / spectrum size guards
AMBIENT_MAX = 16
ALGEBRA_DIM_MAX = 64
SPECTRUM_MAX = 8


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other):
        if other.re == 0 and other.im == 0:
            return self
        if self.re == 0 and self.im == 0:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        if other.re == 0 and other.im == 0:
            return self
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        a, b = self.re, self.im
        c, d = other.re, other.im
        if (a == 0 and b == 0) or (c == 0 and d == 0):
            return GR_ZERO
        if b == 0 and d == 0:
            return GaussianRational(a * c)
        if b == 0:
            return GaussianRational(a * c, a * d)
        if d == 0:
            return GaussianRational(a * c, b * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __truediv__(self, other):
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)} i"

    @classmethod
    def from_string(cls, text):
        """Parse ``a/b``, ``c/d i`` or ``a/b+c/d i`` (optionally spaced)."""
        compact = text.replace(" ", "")
        if not compact:
            raise ParseError("empty Gaussian rational")
        try:
            if not compact.endswith("i"):
                return cls(Fraction(compact), Fraction(0))
            body = compact[:-1]
            # the sign separating the real part from the imaginary
            # coefficient is the last one not at the front
            split = max(body.rfind("+"), body.rfind("-"))
            if split <= 0:
                re_text, im_text = "", body
            else:
                re_text, im_text = body[:split], body[split:]
            if im_text in ("", "+"):
                im_part = Fraction(1)
            elif im_text == "-":
                im_part = Fraction(-1)
            else:
                im_part = Fraction(im_text)
            re_part = Fraction(re_text) if re_text else Fraction(0)
        except ValueError as exc:
            raise ParseError(f"cannot parse Gaussian rational {text!r}") from exc
        return cls(re_part, im_part)


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1))


def gr(value):
    """Coerce ints / Fractions / strings to GaussianRational."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(Fraction(value))
    if isinstance(value, str):
        return GaussianRational.from_string(value)
    raise ParseError(f"cannot coerce {value!r} to a Gaussian rational")


class Matrix:
    """Square matrix of Gaussian rationals."""

    __slots__ = ("rows", "dim")

    def __init__(self, rows):
        rows = tuple(tuple(gr(x) for x in row) for row in rows)
        dim = len(rows)
        if dim == 0 or any(len(row) != dim for row in rows):
            raise DimMismatch("matrix must be square and nonempty")
        self.rows = rows
        self.dim = dim

    @classmethod
    def identity(cls, dim):
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def zero(cls, dim):
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def diag(cls, values):
        values = [gr(v) for v in values]
        dim = len(values)
        return cls([[values[i] if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def unit(cls, dim, i, j):
        """Matrix unit with a single 1 in row i, column j."""
        return cls([[1 if (r, c) == (i, j) else 0 for c in range(dim)] for r in range(dim)])

    def __add__(self, other):
        self._match(other)
        return Matrix(
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.dim)]
                for i in range(self.dim)
            ]
        )

    def __sub__(self, other):
        self._match(other)
        return Matrix(
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.dim)]
                for i in range(self.dim)
            ]
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._match(other)
            dim = self.dim
            out = []
            for i in range(dim):
                left = self.rows[i]
                row = []
                for j in range(dim):
                    acc = GR_ZERO
                    for k in range(dim):
                        x = left[k]
                        if x.re == 0 and x.im == 0:
                            continue
                        y = other.rows[k][j]
                        if y.re == 0 and y.im == 0:
                            continue
                        acc = acc + x * y
                    row.append(acc)
                out.append(row)
            return Matrix(out)
        scalar = gr(other)
        return Matrix([[x * scalar for x in row] for row in self.rows])

    __rmul__ = __mul__

    def adjoint(self):
        """Conjugate transpose."""
        return Matrix(
            [[self.rows[j][i].conjugate() for j in range(self.dim)] for i in range(self.dim)]
        )

    def is_zero(self):
        return all(x.is_zero() for row in self.rows for x in row)

    def is_projection(self):
        return self == self.adjoint() and self * self == self

    def commutes_with(self, other):
        return self * other == other * self

    def _match(self, other):
        if self.dim != other.dim:
            raise DimMismatch(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[[str(x) for x in row] for row in self.rows]})"

    def to_json_list(self):
        return [[str(x) for x in row] for row in self.rows]

    @classmethod
    def from_json_list(cls, entries):
        return cls(entries)


# ---------------------------------------------------------------------------
# linear algebra over the Gaussian rationals


def _vec(matrix):
    return tuple(x for row in matrix.rows for x in row)


def _unvec(vector, dim):
    it = iter(vector)
    return Matrix([[next(it) for _ in range(dim)] for _ in range(dim)])


def rref(vectors):
    """Reduced echelon form of the span of the given coordinate vectors.

    Rows are fully reduced with unit pivots and sorted by pivot column, so
    the result is a canonical basis of the span.
    """
    rows = [list(v) for v in vectors if any(not x.is_zero() for x in v)]
    if not rows:
        return ()
    width = len(rows[0])
    basis = []  # list of (pivot_col, row)
    for row in rows:
        for pivot_col, pivot_row in basis:
            factor = row[pivot_col]
            if not factor.is_zero():
                for k in range(width):
                    prk = pivot_row[k]
                    if not (prk.re == 0 and prk.im == 0):
                        row[k] = row[k] - factor * prk
        lead = next((k for k in range(width) if not row[k].is_zero()), None)
        if lead is None:
            continue
        inv = row[lead]
        row = [x / inv for x in row]
        for pivot_col, pivot_row in basis:
            factor = pivot_row[lead]
            if not factor.is_zero():
                for k in range(width):
                    rk = row[k]
                    if not (rk.re == 0 and rk.im == 0):
                        pivot_row[k] = pivot_row[k] - factor * rk
        basis.append((lead, row))
        basis.sort(key=lambda item: item[0])
    return tuple(tuple(row) for _, row in basis)


def _reduce_against(vector, basis):
    """Residue of a vector after elimination against RREF basis rows."""
    vector = list(vector)
    for pivot_col, row, support in basis:
        factor = vector[pivot_col]
        if not factor.is_zero():
            for k in support:
                vector[k] = vector[k] - factor * row[k]
    return vector


def _basis_with_pivots(rref_rows):
    out = []
    for row in rref_rows:
        lead = next(k for k in range(len(row)) if not row[k].is_zero())
        support = tuple(k for k in range(len(row)) if not row[k].is_zero())
        out.append((lead, row, support))
    return out


# ---------------------------------------------------------------------------
# the algebra type


class StarAlgebra:
    """Unital *-closed span of matrices, with a canonical echelon basis.

    The stored basis is always re-canonicalized to reduced echelon form,
    so two algebras are equal exactly when they have the same span.
    """

    __slots__ = ("dim", "basis", "generators", "_pivots")

    def __init__(self, dim, basis_matrices, generators=(), validate=True):
        self.dim = dim
        self.basis = tuple(_unvec(v, dim) for v in rref([_vec(m) for m in basis_matrices]))
        self.generators = tuple(generators)
        self._pivots = _basis_with_pivots([_vec(m) for m in self.basis])
        if validate:
            self._validate()

    def _validate(self):
        pivots = self._pivots
        identity = Matrix.identity(self.dim)
        if any(not x.is_zero() for x in _reduce_against(_vec(identity), pivots)):
            raise BadParameters("algebra does not contain the identity")
        for a in self.basis:
            if any(not x.is_zero() for x in _reduce_against(_vec(a.adjoint()), pivots)):
                raise BadParameters("basis span is not closed under adjoints")
        for a, b in itertools.product(self.basis, repeat=2):
            if any(not x.is_zero() for x in _reduce_against(_vec(a * b), pivots)):
                raise BadParameters("basis span is not closed under products")

    @property
    def dimension(self):
        return len(self.basis)

    def contains(self, matrix):
        if matrix.dim != self.dim:
            raise DimMismatch(f"ambient dimension mismatch: {matrix.dim} vs {self.dim}")
        return all(x.is_zero() for x in _reduce_against(_vec(matrix), self._pivots))

    def contains_algebra(self, other):
        return self.dim == other.dim and all(self.contains(m) for m in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, StarAlgebra)
            and self.dim == other.dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.dim, self.basis))

    def __repr__(self):
        return f"StarAlgebra(dim={self.dim}, dimension={self.dimension})"

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "basis": [m.to_json_list() for m in self.basis],
            "generators": [m.to_json_list() for m in self.generators],
        }


def generated_algebra(generators, dim=None):
    """Smallest unital *-closed subalgebra containing the generators.

    In finite dimension the *-algebra closure is automatically closed, so
    iterating span growth under adjoints and pairwise products until the
    dimension stabilizes computes it.  The identity is always adjoined.
    """
    generators = list(generators)
    if dim is None:
        if not generators:
            raise BadParameters("need generators or an explicit ambient dimension")
        dim = generators[0].dim
    if dim > AMBIENT_MAX:
        raise SizeLimit("ambient matrix size", dim, AMBIENT_MAX)
    for g in generators:
        if g.dim != dim:
            raise DimMismatch(f"generator of size {g.dim} in ambient size {dim}")
    mats = [Matrix.identity(dim)] + generators
    current = rref([_vec(m) for m in mats])
    while True:
        if len(current) > ALGEBRA_DIM_MAX:
            raise SizeLimit("algebra dimension", len(current), ALGEBRA_DIM_MAX)
        mats = [_unvec(v, dim) for v in current]
        candidates = [m.adjoint() for m in mats]
        candidates.extend(a * b for a, b in itertools.product(mats, repeat=2))
        grown = rref(list(current) + [_vec(c) for c in candidates])
        if len(grown) == len(current):
            break
        current = grown
    basis = tuple(_unvec(v, dim) for v in current)
    return StarAlgebra(dim, basis, generators=tuple(generators))


def is_commutative(algebra):
    """All basis pairs commute (bilinearity extends this to the span)."""
    return all(
        a.commutes_with(b) for a, b in itertools.combinations(algebra.basis, 2)
    )


def _require_spectral(algebra):
    if not is_commutative(algebra):
        raise NotCommutative("algebra is not commutative")
    for g in algebra.generators:
        if not g.is_projection():
            raise GeneratorNotProjection(g)


def minimal_projections(algebra):
    """Orthogonal minimal projections, one per spectrum point.

    Successive refinement: start from the identity and split each piece by
    every generator p into q*p and q*(1-p), dropping zeros.  The result is
    a family of pairwise orthogonal projections summing to the identity
    whose count equals the algebra dimension.
    """
    _require_spectral(algebra)
    identity = Matrix.identity(algebra.dim)
    pieces = [identity]
    for p in algebra.generators:
        complement = identity - p
        refined = []
        for q in pieces:
            for part in (q * p, q * complement):
                if not part.is_zero():
                    refined.append(part)
        pieces = refined
    total = Matrix.zero(algebra.dim)
    for q in pieces:
        if not q.is_projection():
            raise AssertionError("refinement produced a non-projection")
        total = total + q
    if total != identity:
        raise AssertionError("minimal projections do not sum to the identity")
    for a, b in itertools.combinations(pieces, 2):
        if not (a * b).is_zero():
            raise AssertionError("minimal projections are not orthogonal")
    if len(pieces) != algebra.dimension:
        raise AssertionError("projection count does not match the algebra dimension")
    return pieces


@dataclass
class Spectrum:
    """Finite spectrum: one character per minimal projection.

    ``table[i][j]`` is the value of character i on basis element j; each
    basis element must reconstruct as the character-weighted sum of the
    minimal projections.
    """

    points: tuple
    projections: tuple
    table: tuple

    def to_json_dict(self):
        return {
            "points": list(self.points),
            "table": [[str(v) for v in row] for row in self.table],
        }


def spectrum(algebra):
    """Characters of a commutative projection-generated algebra."""
    projections = minimal_projections(algebra)
    table = []
    for q in projections:
        coords = _nonzero_coordinate(q)
        row = []
        for b in algebra.basis:
            product = b * q
            value = product.rows[coords[0]][coords[1]] / q.rows[coords[0]][coords[1]]
            row.append(value)
        table.append(tuple(row))
    # reconstruction: every basis element is the weighted sum of the pieces
    for j, b in enumerate(algebra.basis):
        total = Matrix.zero(algebra.dim)
        for i, q in enumerate(projections):
            total = total + q * table[i][j]
        if total != b:
            raise AssertionError("character table fails to reconstruct the basis")
    points = tuple(f"x{i}" for i in range(len(projections)))
    return Spectrum(points=points, projections=tuple(projections), table=tuple(table))


def _nonzero_coordinate(matrix):
    for i, row in enumerate(matrix.rows):
        for j, x in enumerate(row):
            if not x.is_zero():
                return (i, j)
    raise BadParameters("zero matrix has no nonzero coordinate")


def block_sum_algebra(projections, partition, dim):
    """Span of the block sums of minimal projections over a partition.

    The block sums are orthogonal projections summing to the identity, so
    their span is already product- and adjoint-closed; the constructor
    re-validates that.
    """
    sums = []
    for cls in partition.classes:
        total = Matrix.zero(dim)
        for index in cls:
            total = total + projections[index - 1]
        sums.append(total)
    return StarAlgebra(dim, sums, generators=tuple(sums))


def c_lattice(algebra, size_limit=SPECTRUM_MAX):
    """Lattice of the subalgebras of a commutative projection-generated algebra.

    Nodes are labeled by partitions of the spectrum and carry the actual
    block-sum subalgebras; the order is computed twice, once by basis
    containment and once by partition refinement, and the two must agree.
    """
    projections = minimal_projections(algebra)
    k = len(projections)
    if k > size_limit:
        raise SizeLimit("spectrum size", k, size_limit)
    partitions = all_partitions(range(1, k + 1))
    algebras = [block_sum_algebra(projections, rel, algebra.dim) for rel in partitions]
    table = []
    for i, a in enumerate(algebras):
        row = []
        for j, b in enumerate(algebras):
            by_containment = b.contains_algebra(a)
            by_refinement = partitions[j].refines(partitions[i])
            if by_containment != by_refinement:
                raise AssertionError(
                    f"containment and refinement disagree on nodes {i}, {j}"
                )
            row.append(by_containment)
        table.append(row)
    return validate_poset(
        [label_of(rel) for rel in partitions],
        table,
        orientation="subalgebra",
        payloads=algebras,
    )


def atoms(algebra):
    """Two-dimensional subalgebras spanned by a nontrivial projection.

    One per unordered split of the minimal projections into two nonempty
    parts: 2^(k-1) - 1 of them for a k-point spectrum.
    """
    projections = minimal_projections(algebra)
    k = len(projections)
    out = []
    for size in range(1, k):
        for subset in itertools.combinations(range(k), size):
            if 0 not in subset:
                continue  # each split once: keep the side containing piece 0
            total = Matrix.zero(algebra.dim)
            for index in subset:
                total = total + projections[index]
            out.append(generated_algebra([total], algebra.dim))
    return out


def csa_join(c, d, ambient):
    """Least upper bound of two subalgebras inside a commutative ambient."""
    if not is_commutative(ambient):
        raise AmbientNotCommutative("ambient algebra is not commutative")
    for part in (c, d):
        if not ambient.contains_algebra(part):
            raise NotSubalgebra("operand is not contained in the ambient algebra")
    joined = generated_algebra(list(c.basis) + list(d.basis), ambient.dim)
    if not ambient.contains_algebra(joined):
        raise AssertionError("join escaped the ambient algebra")
    return joined


def generated_by_projections(algebra):
    """Whether the algebra is regenerated by its projections.

    For a commutative projection-generated algebra the minimal projections
    always regenerate it; the checker confirms this and returns them.
    """
    projections = minimal_projections(algebra)
    regenerated = generated_algebra(projections, algebra.dim)
    ok = regenerated.basis == algebra.basis
    return ok, projections


def pushforward_hom(mapping, partition, target_ground):
    """Image of a subalgebra under the dual of a map between finite spectra.

    ``mapping`` sends each point of the target spectrum into the source
    spectrum; the image subalgebra is the pulled-back partition: two target
    points are identified exactly when their images are identified.
    """
    source_ground = partition.ground
    target_ground = tuple(sorted(target_ground))
    for y in target_ground:
        if y not in mapping:
            raise NotTotal(f"map is undefined at {y!r}")
        if mapping[y] not in source_ground:
            raise NotTotal(f"map sends {y!r} outside the source spectrum")
    buckets = {}
    for y in target_ground:
        buckets.setdefault(partition._class_of[mapping[y]], []).append(y)
    return EqRel(target_ground, buckets.values())


def pullback_adjoint(mapping, partition, source_ground):
    """Upper adjoint of :func:`pushforward_hom` along the same map.

    Sends a target-side subalgebra (partition of the map's domain) to the
    largest source-side subalgebra whose pushforward it contains: the
    relation generated by the image pairs of identified points.
    """
    source_ground = tuple(sorted(source_ground))
    pairs = []
    for cls in partition.classes:
        base = mapping[cls[0]]
        if base not in source_ground:
            raise NotTotal(f"map sends {cls[0]!r} outside the source spectrum")
        for y in cls[1:]:
            if mapping[y] not in source_ground:
                raise NotTotal(f"map sends {y!r} outside the source spectrum")
            pairs.append((base, mapping[y]))
    return EqRel.from_pairs(source_ground, pairs)
