"""Pairings attached to an isolated hypersurface singularity at the origin.

Everything here is exact arithmetic over Q in the Milnor algebra
Q[x]/(df/dx_0, ..., df/dx_n) of a potential f whose critical locus is the
origin alone.

Euler pairing. chi(X, Y) is the alternating sum of the homology dimensions of
the Hom complex of two factorizations; it is computed purely through Groebner
homology and never touches the residue route below, so the two sides of the
index identity stay independent.

Residue. The local residue functional is evaluated through the classical
transformation law: choose exponents N_i with x_i^{N_i} in the Jacobian ideal,
write x_i^{N_i} = sum_j t_ij df/dx_j, and then

    res(g) = coefficient of prod_i x_i^(N_i - 1) in g * det(t).

This vanishes on the Jacobian ideal, and the normalization res(hessian) = mu
holds as a theorem; construction fails loudly if it does not. The pairing of
two top degree forms pairs their coefficient polynomials this way.

Index identity. For n odd,

    chi(X, Y) = (-1)^(C(n+1,2)) * res(ch(X) * ch(Y))

with ch the trace form from the forms module. hrr_check reports both sides
exactly.

Theta. hochster_theta(M, N) is the difference of stable even and odd Tor
lengths along the two periodic resolution; herbrand_difference is the Ext
counterpart (even minus odd), the same number the Euler pairing computes on
cokernels. Gram matrices of either pairing over a list of inputs are
assembled entrywise (independent entries evaluated concurrently; assembly is
by index, so output does not depend on scheduling) and certified positive
semidefinite, when they are, by an exact fraction free LDL^T with largest
diagonal pivoting.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import (
    InternalCheckError,
    MfresError,
    NormalizationError,
    ParityError,
    SingularityError,
)
from .forms import DifferentialForm, chern_character_form
from .groebner import (
    DEGREVLEX,
    FiniteQuotientBasis,
    FreeModuleElement,
    GroebnerBasis,
    MonomialOrder,
    express_in_terms,
    groebner_basis,
    normal_form,
    origin_support_check,
    quotient_dimension,
    syzygy_basis,
)
from .mf import (
    MatrixFactorization,
    ModulePresentation,
    _periodic_homology,
    cokernel_presentation,
    hom_complex,
    homology_dimensions,
    tor_lengths,
)
from .polyring import (
    Polynomial,
    PolyMatrix,
    hessian_determinant,
    jacobian_generators,
)
from . import ratmat


# ---------------------------------------------------------------------------
# Milnor algebra

@dataclass(frozen=True)
class MilnorAlgebra:
    """Finite dimensional Q[x]/J(f) with its standard monomial basis."""

    potential: Polynomial
    order: MonomialOrder
    jacobian_basis: GroebnerBasis
    basis: FiniteQuotientBasis
    mu: int
    hessian: Polynomial

    @property
    def ring(self):
        return self.potential.ring

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.jacobian_basis)

    def coordinates(self, p: Polynomial) -> tuple[Fraction, ...]:
        """Coefficients of the class of p on the standard monomial basis."""
        reduced = self.reduce(p)
        return tuple(reduced.coefficient(exps)
                     for _, exps in self.basis.standard_monomials)


@lru_cache(maxsize=None)
def milnor_algebra(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> MilnorAlgebra:
    """Build the Milnor algebra, insisting on one singular point at 0.

    Raises SingularityError when f does not vanish at the origin, when the
    singularity is not isolated, when critical points sit away from the
    origin, or when f is not singular at all (mu = 0).
    """
    if f.is_zero():
        raise SingularityError("potential is identically zero")
    if f.constant_term() != 0:
        raise SingularityError("potential does not vanish at the origin")
    gb = groebner_basis(jacobian_generators(f), order)
    q = quotient_dimension(gb)
    if q is None:
        raise SingularityError("non-isolated singularity: Jacobian quotient is infinite dimensional")
    if not origin_support_check(gb):
        raise SingularityError("critical points away from the origin")
    if q.dimension == 0:
        raise SingularityError("potential is nonsingular (mu = 0)")
    return MilnorAlgebra(potential=f, order=order, jacobian_basis=gb,
                         basis=q, mu=q.dimension,
                         hessian=hessian_determinant(f))


# ---------------------------------------------------------------------------
# residue

@dataclass(frozen=True)
class ResidueFunctional:
    """Linear functional on the Milnor algebra with res(hessian) = mu."""

    algebra: MilnorAlgebra
    values: tuple[Fraction, ...]  # one per standard monomial

    def evaluate(self, p: Polynomial) -> Fraction:
        coords = self.algebra.coordinates(p)
        return sum((c * v for c, v in zip(coords, self.values)), Fraction(0))


@lru_cache(maxsize=None)
def residue_functional(alg: MilnorAlgebra) -> ResidueFunctional:
    """Classical local residue via the transformation law to pure powers."""
    f = alg.potential
    ring = alg.ring
    nvars = len(ring)
    jac = jacobian_generators(f)

    powers: list[int] = []
    for i in range(nvars):
        var = Polynomial.variable(ring, i)
        found = None
        for e in range(1, alg.mu + 1):
            if normal_form(var ** e, alg.jacobian_basis).is_zero():
                found = e
                break
        if found is None:
            raise InternalCheckError("variable power never entered the Jacobian ideal")
        powers.append(found)

    rows: list[list[Polynomial]] = []
    for i in range(nvars):
        target = Polynomial.variable(ring, i) ** powers[i]
        coords = express_in_terms(target, jac, alg.order)
        if coords is None:
            raise InternalCheckError("lift of a variable power failed")
        rows.append(coords)
    det = PolyMatrix.from_rows(rows).determinant()

    target_exps = tuple(e - 1 for e in powers)
    values = []
    for _, exps in alg.basis.standard_monomials:
        prod = Polynomial.monomial(ring, exps) * det
        values.append(prod.coefficient(target_exps))
    rf = ResidueFunctional(algebra=alg, values=tuple(values))

    hess_coords = alg.coordinates(alg.hessian)
    if all(c == 0 for c in hess_coords):
        raise NormalizationError("hessian class vanishes in the Milnor algebra")
    if rf.evaluate(alg.hessian) != alg.mu:
        raise NormalizationError(
            f"residue of the hessian is {rf.evaluate(alg.hessian)}, expected mu = {alg.mu}")
    return rf


def residue_pairing(rf: ResidueFunctional, a: DifferentialForm,
                    b: DifferentialForm) -> Fraction:
    """Residue of the product of two top degree forms."""
    nvars = len(rf.algebra.ring)
    if a.degree != nvars or b.degree != nvars:
        raise ValueError("residue pairing takes top degree forms")
    top = tuple(range(nvars))
    return rf.evaluate(a.coefficient(top) * b.coefficient(top))


# ---------------------------------------------------------------------------
# Euler pairing and the index identity

def euler_pairing(x: MatrixFactorization, y: MatrixFactorization,
                  order: MonomialOrder = DEGREVLEX) -> int:
    """chi(x, y): even minus odd homology of the Hom complex."""
    h_even, h_odd = homology_dimensions(hom_complex(x, y), order)
    return h_even - h_odd


def herbrand_difference(x: MatrixFactorization, y: MatrixFactorization,
                        order: MonomialOrder = DEGREVLEX) -> int:
    """dim Ext^even - dim Ext^odd of the stable Ext pair, read off the same
    Hom complex homology the Euler pairing uses."""
    return euler_pairing(x, y, order)


def chern_milnor_class(mf: MatrixFactorization,
                       alg: MilnorAlgebra) -> tuple[Fraction, ...]:
    """Coordinates in the Milnor algebra of the trace form coefficient."""
    if mf.potential != alg.potential:
        raise MfresError("factorization and algebra have different potentials")
    ch = chern_character_form(mf)
    top = tuple(range(len(alg.ring)))
    return alg.coordinates(ch.coefficient(top))


@dataclass(frozen=True)
class HrrReport:
    chi: int
    residue_side: Fraction
    sign: int
    equal: bool


def hrr_check(left: MatrixFactorization, right: MatrixFactorization,
              order: MonomialOrder = DEGREVLEX) -> HrrReport:
    """Both sides of chi = sign * res(ch ch'), computed independently."""
    if left.potential != right.potential:
        raise MfresError("factorizations have different potentials")
    nvars = len(left.potential.ring)
    if nvars % 2 != 0:
        raise ParityError("index identity needs an even number of variables")
    chi = euler_pairing(left, right, order)
    alg = milnor_algebra(left.potential, order)
    rf = residue_functional(alg)
    res = residue_pairing(rf, chern_character_form(left), chern_character_form(right))
    sign = -1 if (nvars * (nvars - 1) // 2) % 2 else 1
    return HrrReport(chi=chi, residue_side=res, sign=sign, equal=(chi == sign * res))


# ---------------------------------------------------------------------------
# theta

PairingInput = Union[MatrixFactorization, ModulePresentation]

_RESOLUTION_CAP = 30


def _as_presentation(item: PairingInput) -> ModulePresentation:
    if isinstance(item, MatrixFactorization):
        return cokernel_presentation(item)
    return item


def _syzygy_step(cols: list, ambient: int, f: Polynomial,
                 order: MonomialOrder) -> list:
    """Canonical generators of the syzygy module over R of the given columns."""
    ring = f.ring
    zero = Polynomial.zero(ring)
    frels = []
    for i in range(ambient):
        comps = tuple(f if j == i else zero for j in range(ambient))
        frels.append(FreeModuleElement(comps))
    syz = syzygy_basis(list(cols) + frels, order)
    k = len(cols)
    projected = []
    for s in syz:
        head = FreeModuleElement(s.components[:k]) if k else None
        if head is not None and not head.is_zero():
            projected.append(head)
    if not projected:
        return []
    gb = groebner_basis(projected, order)
    return list(gb.generators)


def hochster_theta(m: PairingInput, n_module: ModulePresentation,
                   order: MonomialOrder = DEGREVLEX) -> int:
    """theta(M, N) = stable even Tor length minus stable odd Tor length.

    A factorization input uses its own two periodic resolution directly. A raw
    presentation is resolved over R by canonical syzygy steps until two maps
    two steps apart coincide literally; the window then read off is stable,
    and the parity of the position decides which length is the even one.
    """
    if n_module.over != "R":
        raise ValueError("theta needs the right input as an R presentation")
    if isinstance(m, MatrixFactorization):
        t_even, t_odd = tor_lengths(m, n_module, order)
        return t_even - t_odd

    if m.over != "R":
        raise ValueError("theta needs R presentations")
    f = m.potential
    if f != n_module.potential:
        raise MfresError("presentations have different potentials")

    ambients = [m.ambient_rank]
    maps: list[list] = [list(m.relations)]  # maps[p-1] = d_p columns
    period_start = None
    for step in range(2, _RESOLUTION_CAP + 1):
        prev_cols = maps[-1]
        if not prev_cols:
            return 0  # resolution terminated; stable Tor vanishes
        ambient_next = len(prev_cols)
        cols = _syzygy_step(prev_cols, ambients[-1], f, order)
        maps.append(cols)
        ambients.append(ambient_next)
        if len(maps) >= 3 and maps[-1] == maps[-3] and ambients[-1] == ambients[-3]:
            period_start = len(maps) - 2  # 1-indexed position of d_{m-2}
            break
    if period_start is None:
        raise MfresError("resolution did not become two periodic within the step cap; "
                         "pass a matrix factorization instead")

    def to_matrix(cols: list, ambient: int) -> PolyMatrix:
        entries = []
        for i in range(ambient):
            for c in cols:
                entries.append(c.components[i])
        return PolyMatrix(ambient, len(cols), tuple(entries))

    lengths = {}
    for pos in (period_start, period_start + 1):
        out_cols, out_amb = maps[pos - 1], ambients[pos - 1]
        in_cols, in_amb = maps[pos], ambients[pos]
        out_map = to_matrix(out_cols, out_amb)
        in_map = to_matrix(in_cols, in_amb)
        lengths[pos % 2] = _periodic_homology(out_map, in_map, n_module, order)
    return lengths[0] - lengths[1]


# ---------------------------------------------------------------------------
# Gram matrices and positivity

@dataclass(frozen=True)
class GramMatrix:
    labels: tuple[str, ...]
    pairing: str
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)


def _signed_theta_sign(nvars: int) -> int:
    if nvars % 2 != 0:
        raise ParityError("signed theta needs an even number of variables")
    return -1 if (nvars // 2) % 2 else 1


def gram_matrix(items: Sequence[PairingInput], pairing: str,
                order: MonomialOrder = DEGREVLEX) -> GramMatrix:
    """Symmetric pairing matrix over the items; entries evaluated concurrently."""
    if pairing not in ("euler", "theta", "signed_theta"):
        raise ValueError(f"unknown pairing {pairing!r}")
    if not items:
        raise ValueError("need at least one item")
    labels = tuple(it.label or f"item{i}" for i, it in enumerate(items))
    n = len(items)

    if pairing == "euler":
        for it in items:
            if not isinstance(it, MatrixFactorization):
                raise MfresError("euler gram entries need matrix factorizations")
        tasks = [(i, j) for i in range(n) for j in range(n)]

        def compute(idx):
            i, j = idx
            return euler_pairing(items[i], items[j], order)
    else:
        presentations = [_as_presentation(it) for it in items]
        tasks = [(i, j) for i in range(n) for j in range(i, n)]

        def compute(idx):
            i, j = idx
            return hochster_theta(items[i], presentations[j], order)

    with concurrent.futures.ThreadPoolExecutor(max_workers=min(8, len(tasks))) as pool:
        results = dict(zip(tasks, pool.map(compute, tasks)))

    grid = [[0] * n for _ in range(n)]
    for (i, j), value in results.items():
        grid[i][j] = value
        if pairing != "euler":
            grid[j][i] = value
    if pairing == "euler":
        for i in range(n):
            for j in range(i):
                if grid[i][j] != grid[j][i]:
                    raise MfresError("euler pairing is not symmetric on this input")
    if pairing == "signed_theta":
        nvars = len(_potential_of(items[0]).ring)
        sign = _signed_theta_sign(nvars)
        grid = [[sign * v for v in row] for row in grid]
    entries = tuple(tuple(row) for row in grid)
    return GramMatrix(labels=labels, pairing=pairing, entries=entries)


def _potential_of(item: PairingInput) -> Polynomial:
    if isinstance(item, MatrixFactorization):
        return item.potential
    if item.potential is None:
        raise MfresError("presentation has no potential")
    return item.potential


@dataclass(frozen=True)
class PsdReport:
    psd: bool
    kernel_basis: tuple[tuple[Fraction, ...], ...]
    negative_pivot: Fraction | None = None


def is_positive_semidefinite(g: GramMatrix) -> PsdReport:
    """Exact LDL^T with largest diagonal pivoting; kernel basis when PSD."""
    n = g.size
    m = [[Fraction(v) for v in row] for row in g.entries]
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise MfresError("gram matrix is not symmetric")
    work = [row[:] for row in m]
    for k in range(n):
        pivot_index = k
        for i in range(k, n):
            if work[i][i] > work[pivot_index][pivot_index]:
                pivot_index = i
        d = work[pivot_index][pivot_index]
        if d < 0:
            return PsdReport(psd=False, kernel_basis=(), negative_pivot=d)
        if d == 0:
            # all remaining diagonals are <= 0; PSD exactly when the block is zero
            block_zero = all(work[i][j] == 0
                             for i in range(k, n) for j in range(k, n))
            if block_zero:
                break
            return PsdReport(psd=False, kernel_basis=(), negative_pivot=None)
        if pivot_index != k:
            work[k], work[pivot_index] = work[pivot_index], work[k]
            for row in work:
                row[k], row[pivot_index] = row[pivot_index], row[k]
        for i in range(k + 1, n):
            factor = work[i][k] / d
            for j in range(k + 1, n):
                work[i][j] -= factor * work[k][j]
    kernel = ratmat.nullspace(tuple(tuple(row) for row in m), n)
    return PsdReport(psd=True, kernel_basis=tuple(kernel))


# ---------------------------------------------------------------------------
# formal integer combinations of classes

def combination_pairing(gram: GramMatrix, left: Sequence[int],
                        right: Sequence[int]) -> int:
    """Bilinear extension of the pairing to integer combinations of items."""
    if len(left) != gram.size or len(right) != gram.size:
        raise ValueError("coefficient length does not match the gram matrix")
    total = 0
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            total += a * b * gram.entries[i][j]
    return total


def combination_class(classes: Sequence[tuple[Fraction, ...]],
                      coeffs: Sequence[int]) -> tuple[Fraction, ...]:
    """Linear extension of Milnor algebra classes to integer combinations."""
    if len(classes) != len(coeffs):
        raise ValueError("one coefficient per class required")
    if not classes:
        return ()
    width = len(classes[0])
    out = [Fraction(0)] * width
    for vec, c in zip(classes, coeffs):
        for i, v in enumerate(vec):
            out[i] += c * v
    return tuple(out)
