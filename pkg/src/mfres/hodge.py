"""Monodromy style weight filtrations of nilpotent operators over Q.

For a nilpotent endomorphism N of a finite dimensional rational vector space
and a chosen center m there is exactly one increasing filtration W with

    N . W_k  contained in  W_(k-2)
    N^l : Gr_(m+l) -> Gr_(m-l)  an isomorphism for every l >= 0.

weight_filtration builds it by the closed formula

    W_(m+l) = sum over j >= 0 of ( ker N^(l+j+1)  intersect  im N^j )

with ker N^t = 0 for t <= 0, and then re-verifies both axioms on the result;
a failure there is a bug, not bad input, and raises InternalCheckError.

The axioms can also be checked on a hand built candidate filtration through
verify_weight_axioms, which reports the two halves separately: shift_ok for
the chain shape (increasing, exhaustive, N shifts by -2) and iso_ok for the
graded symmetry and injectivity of the induced powers of N.

primitive_subspace lifts the primitive part ker(N^(l+1) : Gr_(m+l) ->
Gr_(m-l-2)) back to honest vectors, one representative per class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalCheckError, MfresError
from . import ratmat


@dataclass(frozen=True)
class NilpotentOperator:
    matrix: ratmat.Matrix
    center: int

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0:
            raise MfresError("operator needs a space of positive dimension")
        if any(len(row) != n for row in self.matrix):
            raise MfresError("operator matrix must be square")
        if ratmat.mat_pow(self.matrix, n) != ratmat.zero_matrix(n):
            raise MfresError("operator is not nilpotent")

    @classmethod
    def from_rows(cls, rows, center: int) -> NilpotentOperator:
        matrix = tuple(tuple(Fraction(v) for v in row) for row in rows)
        return cls(matrix=matrix, center=center)

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    @property
    def nilpotency_index(self) -> int:
        """Smallest e with N^e = 0."""
        n = self.dimension
        power = ratmat.identity(n)
        for e in range(n + 1):
            if power == ratmat.zero_matrix(n):
                return e
            power = ratmat.mat_mul(power, self.matrix)
        return n  # unreachable after validation


@dataclass(frozen=True)
class WeightFiltration:
    """Pieces W_lowest .. W_highest; below the range is zero, above is full."""

    operator: NilpotentOperator
    lowest: int
    highest: int
    pieces: tuple[ratmat.Subspace, ...]

    def piece(self, k: int) -> ratmat.Subspace:
        if k < self.lowest:
            return ()
        if k > self.highest:
            return self.pieces[-1]
        return self.pieces[k - self.lowest]

    def graded_dimension(self, k: int) -> int:
        return ratmat.subspace_dim(self.piece(k)) - ratmat.subspace_dim(self.piece(k - 1))


def weight_filtration(op: NilpotentOperator) -> WeightFiltration:
    """The unique filtration satisfying the shift and symmetry axioms."""
    n = op.dimension
    m = op.center
    e = op.nilpotency_index

    powers = [ratmat.identity(n)]
    for _ in range(e):
        powers.append(ratmat.mat_mul(powers[-1], op.matrix))

    def kernel_power(t: int) -> ratmat.Subspace:
        if t <= 0:
            return ()
        if t >= e:
            return ratmat.full_space(n)
        return ratmat.kernel_of(powers[t], n)

    def image_power(j: int) -> ratmat.Subspace:
        if j >= e:
            return ()
        return ratmat.image_of(powers[j])

    pieces = []
    for l in range(-e, e + 1):
        total: ratmat.Subspace = ()
        for j in range(e + 1):
            term = ratmat.subspace_intersect(kernel_power(l + j + 1), image_power(j), n)
            total = ratmat.subspace_sum(total, term, n)
        pieces.append(total)

    wf = WeightFiltration(operator=op, lowest=m - e, highest=m + e,
                          pieces=tuple(pieces))
    report = verify_weight_axioms(wf)
    if not (report.shift_ok and report.iso_ok):
        raise InternalCheckError("constructed filtration failed its own axioms")
    return wf


@dataclass(frozen=True)
class WeightAxiomReport:
    shift_ok: bool
    iso_ok: bool


def verify_weight_axioms(wf: WeightFiltration) -> WeightAxiomReport:
    """Check the defining axioms on any candidate filtration."""
    op = wf.operator
    n = op.dimension
    m = op.center

    shift_ok = ratmat.subspace_dim(wf.piece(wf.highest)) == n
    for k in range(wf.lowest, wf.highest + 1):
        if not ratmat.subspace_leq(wf.piece(k - 1), wf.piece(k)):
            shift_ok = False
        moved = ratmat.map_subspace(op.matrix, wf.piece(k))
        if not ratmat.subspace_leq(moved, wf.piece(k - 2)):
            shift_ok = False

    span_up = max(wf.highest - m, m - wf.lowest, 0)
    iso_ok = True
    power = ratmat.identity(n)
    for l in range(1, span_up + 1):
        power = ratmat.mat_mul(power, op.matrix)
        if wf.graded_dimension(m + l) != wf.graded_dimension(m - l):
            iso_ok = False
            continue
        # injectivity of N^l on Gr_(m+l): anything in W_(m+l) that lands in
        # W_(m-l-1) must already lie in W_(m+l-1)
        pulled = ratmat.preimage_in(power, wf.piece(m - l - 1), n)
        inside = ratmat.subspace_intersect(pulled, wf.piece(m + l), n)
        if not ratmat.subspace_leq(inside, wf.piece(m + l - 1)):
            iso_ok = False
    return WeightAxiomReport(shift_ok=shift_ok, iso_ok=iso_ok)


def graded_dimensions(wf: WeightFiltration) -> dict[int, int]:
    return {k: wf.graded_dimension(k)
            for k in range(wf.lowest, wf.highest + 1)}


def primitive_subspace(wf: WeightFiltration, l: int) -> tuple[ratmat.Vector, ...]:
    """Representatives of ker(N^(l+1) : Gr_(m+l) -> Gr_(m-l-2)), l >= 0.

    Returned vectors lie in W_(m+l) and are independent modulo W_(m+l-1).
    """
    if l < 0:
        raise ValueError("primitive parts live in nonnegative offsets")
    op = wf.operator
    n = op.dimension
    m = op.center
    power = ratmat.mat_pow(op.matrix, l + 1)
    pulled = ratmat.preimage_in(power, wf.piece(m - l - 3), n)
    inside = ratmat.subspace_intersect(pulled, wf.piece(m + l), n)
    below = wf.piece(m + l - 1)
    reduced = []
    for row in inside:
        rem = ratmat.reduce_mod(row, below)
        if any(v != 0 for v in rem):
            reduced.append(rem)
    if not reduced:
        return ()
    reps, _ = ratmat.rref(tuple(reduced))
    return tuple(row for row in reps if any(v != 0 for v in row))
