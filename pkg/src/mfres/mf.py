"""Matrix factorizations and their two periodic homological algebra.

A factorization of a potential f is a pair of r x r polynomial matrices with
A B = B A = f I. It presents the two periodic complex

    ... -> P_1 --A--> P_0 --B--> P_1 --A--> P_0 -> ...

so d restricted to the odd summand is A and to the even summand is B. The
shift swaps the roles, (A, B)[1] = (B, A); the dual transposes both matrices.

The Hom complex between factorizations (A, B) and (A', B') is again two
periodic, on Hom(P_even, P'_even) + Hom(P_odd, P'_odd) in even degree and the
mixed terms in odd degree, with differential d(alpha) = d' alpha - (-1)^|alpha|
alpha d. Flattening matrix entries row major turns both differentials into
matrices over Q[x], and homology dimensions reduce to syzygy plus subquotient
computations over the polynomial ring. Stable Ext and Tor are read off the
periodic windows; both are honest Q dimensions, never mod p shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import FactorizationError, InternalCheckError
from .groebner import (
    DEGREVLEX,
    FreeModuleElement,
    MonomialOrder,
    groebner_basis,
    subquotient_dimension,
    syzygy_basis,
)
from .polyring import Polynomial, PolyMatrix, to_string


@dataclass(frozen=True)
class MatrixFactorization:
    """A pair (A, B) with A B = B A = potential * identity."""

    potential: Polynomial
    A: PolyMatrix
    B: PolyMatrix
    label: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return self.A.rows

    @property
    def ring(self):
        return self.potential.ring


def validate_mf(candidate: MatrixFactorization) -> MatrixFactorization:
    """Check the factorization equations entrywise; raise naming the entry."""
    a, b, f = candidate.A, candidate.B, candidate.potential
    r = a.rows
    if a.cols != r or b.rows != r or b.cols != r:
        raise FactorizationError("matrices must be square of equal size")
    if r == 0:
        raise FactorizationError("rank zero factorizations are not allowed")
    if f.is_zero():
        raise FactorizationError("potential must be a nonzero polynomial")
    if a.ring != f.ring or b.ring != f.ring:
        raise FactorizationError("matrix entries and potential live in different rings")
    expected = PolyMatrix.scalar(f, r)
    for name, prod in (("A*B", a @ b), ("B*A", b @ a)):
        for i in range(r):
            for j in range(r):
                got = prod.entry(i, j)
                want = expected.entry(i, j)
                if got != want:
                    raise FactorizationError(
                        f"product {name} mismatch at entry ({i + 1},{j + 1}): "
                        f"expected {to_string(want)}, found {to_string(got)}")
    return candidate


def shift(mf: MatrixFactorization) -> MatrixFactorization:
    """[1]: swap the two matrices; an involution realizing -[(A, B)] in K0."""
    label = mf.label[:-3] if mf.label.endswith("[1]") else (mf.label + "[1]" if mf.label else "")
    return MatrixFactorization(mf.potential, mf.B, mf.A, label)


def dual(mf: MatrixFactorization) -> MatrixFactorization:
    """Transpose both matrices; an involution."""
    label = mf.label[:-1] if mf.label.endswith("*") else (mf.label + "*" if mf.label else "")
    return MatrixFactorization(mf.potential, mf.A.transpose(), mf.B.transpose(), label)


# ---------------------------------------------------------------------------
# module presentations

@dataclass(frozen=True)
class ModulePresentation:
    """Cokernel presentation: ambient_rank rows, one relation per column.

    over == "Q" is a plain polynomial module; over == "R" means the hypersurface
    ring Q[x]/(potential), in which case the potential is stored and the
    relations f * e_i are implied everywhere the presentation is used.
    """

    ambient_rank: int
    relations: tuple[FreeModuleElement, ...]
    over: str = "R"
    potential: Polynomial | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.over not in ("Q", "R"):
            raise ValueError("over must be 'Q' or 'R'")
        if self.over == "R" and self.potential is None:
            raise ValueError("R presentations carry their potential")
        for rel in self.relations:
            if rel.rank != self.ambient_rank:
                raise ValueError("relation rank does not match ambient rank")


def cokernel_presentation(mf: MatrixFactorization) -> ModulePresentation:
    """coker(A) as a module over R = Q[x]/(f); relations are A's columns."""
    cols = tuple(FreeModuleElement(mf.A.column(j)) for j in range(mf.A.cols))
    return ModulePresentation(ambient_rank=mf.rank, relations=cols, over="R",
                              potential=mf.potential, label=mf.label)


# ---------------------------------------------------------------------------
# hom complexes

@dataclass(frozen=True)
class TwoPeriodicComplex:
    """Two free terms with differentials both ways; composites vanish."""

    rank_even: int
    rank_odd: int
    d_even_to_odd: PolyMatrix
    d_odd_to_even: PolyMatrix

    def __post_init__(self):
        if (self.d_even_to_odd.rows, self.d_even_to_odd.cols) != (self.rank_odd, self.rank_even):
            raise ValueError("even-to-odd differential has wrong shape")
        if (self.d_odd_to_even.rows, self.d_odd_to_even.cols) != (self.rank_even, self.rank_odd):
            raise ValueError("odd-to-even differential has wrong shape")

    def is_complex(self) -> bool:
        return ((self.d_odd_to_even @ self.d_even_to_odd).is_zero()
                and (self.d_even_to_odd @ self.d_odd_to_even).is_zero())


def _unit_matrix(ring, rows: int, cols: int, i: int, j: int) -> PolyMatrix:
    zero = Polynomial.zero(ring)
    one = Polynomial.one(ring)
    return PolyMatrix(rows, cols,
                      tuple(one if (r, c) == (i, j) else zero
                            for r in range(rows) for c in range(cols)))


def _flatten_pair(m0: PolyMatrix, m1: PolyMatrix) -> list[Polynomial]:
    return list(m0.entries) + list(m1.entries)


def hom_complex(left: MatrixFactorization, right: MatrixFactorization) -> TwoPeriodicComplex:
    """Hom(left, right) as a two periodic complex of free modules.

    Even coordinates flatten (alpha_0: P0 -> P0', alpha_1: P1 -> P1') row major,
    odd coordinates flatten (beta_0: P0 -> P1', beta_1: P1 -> P0'). With
    d|odd = A and d|even = B on both sides,

        d(alpha_0, alpha_1) = (B' alpha_0 - alpha_1 B, A' alpha_1 - alpha_0 A)
        d(beta_0,  beta_1)  = (A' beta_0 + beta_1 B,  B' beta_1 + beta_0 A).
    """
    validate_mf(left)
    validate_mf(right)
    if left.potential != right.potential:
        raise FactorizationError("factorizations have different potentials")
    r, rp = left.rank, right.rank
    ring = left.ring
    half = rp * r
    total = 2 * half

    even_cols: list[list[Polynomial]] = []
    odd_cols: list[list[Polynomial]] = []
    for block in (0, 1):
        for i in range(rp):
            for j in range(r):
                e = _unit_matrix(ring, rp, r, i, j)
                zero = PolyMatrix(rp, r, tuple(Polynomial.zero(ring) for _ in range(half)))
                if block == 0:
                    a0, a1 = e, zero
                else:
                    a0, a1 = zero, e
                # even basis element -> odd image
                out0 = right.B @ a0 - a1 @ left.B
                out1 = right.A @ a1 - a0 @ left.A
                even_cols.append(_flatten_pair(out0, out1))
                # odd basis element -> even image
                b0, b1 = a0, a1
                out0o = right.A @ b0 + b1 @ left.B
                out1o = right.B @ b1 + b0 @ left.A
                odd_cols.append(_flatten_pair(out0o, out1o))

    d_eo = PolyMatrix(total, total,
                      tuple(even_cols[j][i] for i in range(total) for j in range(total)))
    d_oe = PolyMatrix(total, total,
                      tuple(odd_cols[j][i] for i in range(total) for j in range(total)))
    complex_ = TwoPeriodicComplex(total, total, d_eo, d_oe)
    if not complex_.is_complex():
        raise InternalCheckError("hom complex differentials do not compose to zero")
    return complex_


def homology_dimensions(c: TwoPeriodicComplex,
                        order: MonomialOrder = DEGREVLEX) -> tuple[int, int]:
    """Exact Q dimensions (h_even, h_odd) of the complex homology."""
    def columns(m: PolyMatrix) -> list[FreeModuleElement]:
        return [FreeModuleElement(m.column(j)) for j in range(m.cols)]

    cols_eo = columns(c.d_even_to_odd)
    cols_oe = columns(c.d_odd_to_even)
    ker_even = syzygy_basis(cols_eo, order)
    ker_odd = syzygy_basis(cols_oe, order)
    h_even = subquotient_dimension(ker_even, cols_oe, order)
    h_odd = subquotient_dimension(ker_odd, cols_eo, order)
    return (h_even, h_odd)


# ---------------------------------------------------------------------------
# Tor along the two periodic resolution

def _tensor_map(m: PolyMatrix, s: int) -> PolyMatrix:
    """Kronecker product m (x) identity_s acting on blocks of size s."""
    r_out, r_in = m.rows, m.cols
    ring = m.ring
    zero = Polynomial.zero(ring)
    entries = []
    for bi in range(r_out):
        for ci in range(s):
            row = []
            for bj in range(r_in):
                for cj in range(s):
                    row.append(m.entry(bi, bj) if ci == cj else zero)
            entries.extend(row)
    return PolyMatrix(r_out * s, r_in * s, tuple(entries))


def _module_relation_vectors(n_module: ModulePresentation,
                             blocks: int) -> list[FreeModuleElement]:
    """Relations of N^blocks over Q: each relation of N placed in each block,
    plus f times every coordinate when N is an R module."""
    s = n_module.ambient_rank
    rels: list[FreeModuleElement] = []
    base: list[FreeModuleElement] = list(n_module.relations)
    if n_module.over == "R":
        f = n_module.potential
        ring = f.ring
        for c in range(s):
            comps = tuple(f if i == c else Polynomial.zero(ring) for i in range(s))
            base.append(FreeModuleElement(comps))
    if not base:
        return []
    ring = base[0].ring
    zero = Polynomial.zero(ring)
    for b in range(blocks):
        for rel in base:
            comps = [zero] * (blocks * s)
            for i, p in enumerate(rel.components):
                comps[b * s + i] = p
            rels.append(FreeModuleElement(tuple(comps)))
    return rels


def _periodic_homology(out_map: PolyMatrix, in_map: PolyMatrix,
                       n_module: ModulePresentation,
                       order: MonomialOrder) -> int:
    """dim ker(out_map (x) N) / im(in_map (x) N) at a term (Q^blocks) (x) N."""
    s = n_module.ambient_rank
    blocks = out_map.cols
    if in_map.rows != blocks:
        raise ValueError("maps do not share the middle term")
    rels = _module_relation_vectors(n_module, blocks)
    big_out = _tensor_map(out_map, s)
    out_cols = [FreeModuleElement(big_out.column(j)) for j in range(big_out.cols)]
    # kernel of the induced map on N^blocks: preimage of the relation span,
    # read off as syzygies of [columns | relations] projected to the columns
    kernel = syzygy_basis(out_cols + rels, order)
    dim = blocks * s
    kernel_proj = []
    for syz in kernel:
        el = FreeModuleElement(syz.components[:dim])
        if not el.is_zero():
            kernel_proj.append(el)
    big_in = _tensor_map(in_map, s)
    image = [FreeModuleElement(big_in.column(j)) for j in range(big_in.cols)]
    image.extend(rels)
    if not kernel_proj:
        return 0
    return subquotient_dimension(kernel_proj, image, order)


def tor_lengths(mf: MatrixFactorization, n_module: ModulePresentation,
                order: MonomialOrder = DEGREVLEX) -> tuple[int, int]:
    """Stable (Tor_even, Tor_odd) of coker(A) against N over R = Q[x]/(f).

    The free resolution of coker(A) over R is the two periodic complex with
    odd differentials A and even differentials B, so the stable window is
    (ker B (x) N / im A (x) N, ker A (x) N / im B (x) N). Structural two
    periodicity makes the next window literally the same matrices.
    """
    validate_mf(mf)
    if n_module.over != "R":
        raise ValueError("Tor is taken over R; presentation must be over R")
    if n_module.potential != mf.potential:
        raise ValueError("factorization and module have different potentials")
    t_even = _periodic_homology(mf.B, mf.A, n_module, order)
    t_odd = _periodic_homology(mf.A, mf.B, n_module, order)
    return (t_even, t_odd)
