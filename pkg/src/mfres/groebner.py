"""Groebner bases for submodules of free modules over Q[x_0..x_n].

Elements of a rank r free module are stored as maps from (component, exponent
vector) to Fraction. Monomial orders are global (degrevlex by default, lex on
request); module terms are compared position over term, with lower component
index taking priority. Global orders are enough here because the only local
question the engine answers, support at the origin, is reduced to nilpotency
of the variable multiplication operators on a finite quotient.

Buchberger runs with the sugar selection strategy and the coprime leading
term criterion; the criterion is applied only in ambient rank one, where it is
actually valid. Input generators are pre-sorted so the output is independent
of the caller's ordering, and bases are returned fully interreduced, monic,
and sorted, hence canonical for a fixed order.

Syzygies, module membership, and coordinates all come from one construction:
a Groebner basis of the augmented module generated by (g_i, e_i) inside
Q^r + Q^k, with the first block dominating the tag block. Basis elements
supported only on the tag block generate the syzygy module; reducing (v, 0)
decides membership of v and reads off coordinates in terms of the g_i.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import ContainmentError, InfiniteQuotientError
from .polyring import Monomial, Polynomial, Ring, degrevlex_key, lex_key

Term = tuple[int, Monomial]  # (component, exponent vector)
Vec = dict[Term, Fraction]


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order plus the position-over-term module extension."""

    name: str

    def mono_key(self, exps: Monomial) -> tuple:
        if self.name == "degrevlex":
            return degrevlex_key(exps)
        if self.name == "lex":
            return lex_key(exps)
        raise ValueError(f"unknown order {self.name!r}")

    def term_key(self, term: Term) -> tuple:
        comp, exps = term
        return (-comp, self.mono_key(exps))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def get_order(name: str) -> MonomialOrder:
    if name == "degrevlex":
        return DEGREVLEX
    if name == "lex":
        return LEX
    raise ValueError(f"unknown order {name!r}")


@dataclass(frozen=True)
class FreeModuleElement:
    """Element of Q[x]^r, one polynomial per component."""

    components: tuple[Polynomial, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("rank zero elements are not represented")
        rings = {p.ring for p in self.components}
        if len(rings) > 1:
            raise ValueError("components live in different rings")

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def __repr__(self) -> str:
        return "FreeModuleElement((" + ", ".join(str(p) for p in self.components) + "))"


GenLike = Union[FreeModuleElement, Polynomial]


def _to_element(g: GenLike) -> FreeModuleElement:
    if isinstance(g, Polynomial):
        return FreeModuleElement((g,))
    return g


def element_to_vec(el: FreeModuleElement) -> Vec:
    out: Vec = {}
    for comp, poly in enumerate(el.components):
        for exps, c in poly.items():
            out[(comp, exps)] = c
    return out


def vec_to_element(vec: Vec, rank: int, ring: Ring) -> FreeModuleElement:
    polys = [dict() for _ in range(rank)]
    for (comp, exps), c in vec.items():
        polys[comp][exps] = c
    return FreeModuleElement(tuple(Polynomial(ring, d) for d in polys))


# ---------------------------------------------------------------------------
# low level vector ops

def _lt(vec: Vec, order: MonomialOrder) -> Term:
    return max(vec, key=order.term_key)


def _divides(small: Term, big: Term) -> bool:
    return small[0] == big[0] and all(a <= b for a, b in zip(small[1], big[1]))


def _mono_sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _shift(vec: Vec, mono: Monomial, scalar: Fraction) -> Vec:
    return {(c, tuple(e + m for e, m in zip(exps, mono))): k * scalar
            for (c, exps), k in vec.items()}


def _sub_into(target: Vec, other: Vec) -> None:
    for t, c in other.items():
        s = target.get(t, Fraction(0)) - c
        if s:
            target[t] = s
        else:
            target.pop(t, None)


def _vec_degree(vec: Vec) -> int:
    return max(sum(exps) for _, exps in vec)


def _canonical_key(vec: Vec, order: MonomialOrder) -> tuple:
    items = sorted(vec.items(), key=lambda kv: order.term_key(kv[0]), reverse=True)
    return tuple((t, c) for t, c in items)


def _reduce(vec: Vec, divisors: list[tuple[Vec, Term, Fraction]],
            order: MonomialOrder) -> Vec:
    """Full normal form: every term of the remainder escapes every divisor."""
    work = dict(vec)
    remainder: Vec = {}
    while work:
        term = _lt(work, order)
        coeff = work[term]
        for dvec, dlt, dlc in divisors:
            if _divides(dlt, term):
                factor = coeff / dlc
                _sub_into(work, _shift(dvec, _mono_sub(term[1], dlt[1]), factor))
                break
        else:
            remainder[term] = coeff
            del work[term]
    return remainder


def _monic(vec: Vec, order: MonomialOrder) -> Vec:
    lc = vec[_lt(vec, order)]
    if lc == 1:
        return dict(vec)
    return {t: c / lc for t, c in vec.items()}


# ---------------------------------------------------------------------------
# Buchberger

def _buchberger(vecs: list[Vec], ambient_rank: int, order: MonomialOrder) -> list[Vec]:
    """Reduced Groebner basis of the submodule generated by vecs."""
    seeds = [_monic(v, order) for v in vecs if v]
    seeds.sort(key=lambda v: (order.term_key(_lt(v, order)), _canonical_key(v, order)))

    basis: list[Vec] = []
    lts: list[Term] = []
    sugars: list[int] = []
    heap: list[tuple[int, tuple, int, int]] = []

    def enqueue(i: int, j: int) -> None:
        ti, tj = lts[i], lts[j]
        if ti[0] != tj[0]:
            return
        lcm = tuple(max(a, b) for a, b in zip(ti[1], tj[1]))
        sugar = max(sugars[i] + sum(_mono_sub(lcm, ti[1])),
                    sugars[j] + sum(_mono_sub(lcm, tj[1])))
        heapq.heappush(heap, (sugar, order.term_key((ti[0], lcm)), i, j))

    def add(vec: Vec, sugar: int) -> None:
        basis.append(vec)
        lts.append(_lt(vec, order))
        sugars.append(sugar)
        k = len(basis) - 1
        for i in range(k):
            enqueue(i, k)

    for v in seeds:
        add(v, _vec_degree(v))

    while heap:
        sugar, _, i, j = heapq.heappop(heap)
        ti, tj = lts[i], lts[j]
        lcm = tuple(max(a, b) for a, b in zip(ti[1], tj[1]))
        # product criterion: valid for ideals only, never for module S-pairs
        if ambient_rank == 1 and lcm == tuple(a + b for a, b in zip(ti[1], tj[1])):
            continue
        s: Vec = _shift(basis[i], _mono_sub(lcm, ti[1]), Fraction(1) / basis[i][ti])
        _sub_into(s, _shift(basis[j], _mono_sub(lcm, tj[1]), Fraction(1) / basis[j][tj]))
        divisors = [(basis[k], lts[k], Fraction(1)) for k in range(len(basis))]
        h = _reduce(s, divisors, order)
        if h:
            add(_monic(h, order), sugar)

    return _autoreduce(basis, order)


def _autoreduce(basis: list[Vec], order: MonomialOrder) -> list[Vec]:
    """Minimal, interreduced, monic, sorted descending by leading term."""
    if not basis:
        return []
    ordered = sorted(basis, key=lambda v: (order.term_key(_lt(v, order)),
                                           _canonical_key(v, order)))
    kept: list[Vec] = []
    kept_lts: list[Term] = []
    for v in ordered:
        lt = _lt(v, order)
        if any(_divides(k, lt) for k in kept_lts):
            continue
        kept.append(v)
        kept_lts.append(lt)
    final: list[Vec] = []
    for idx, v in enumerate(kept):
        others = [(kept[k], kept_lts[k], Fraction(1))
                  for k in range(len(kept)) if k != idx]
        h = _reduce(v, others, order)
        final.append(_monic(h, order))
    final.sort(key=lambda v: order.term_key(_lt(v, order)), reverse=True)
    return final


# ---------------------------------------------------------------------------
# public types

@dataclass(frozen=True)
class GroebnerBasis:
    """Canonical reduced basis of a submodule of Q[x]^ambient_rank."""

    ring: Ring
    ambient_rank: int
    order: MonomialOrder
    generators: tuple[FreeModuleElement, ...]

    def _divisors(self) -> list[tuple[Vec, Term, Fraction]]:
        out = []
        for g in self.generators:
            vec = element_to_vec(g)
            lt = _lt(vec, self.order)
            out.append((vec, lt, vec[lt]))
        return out

    def leading_terms(self) -> list[Term]:
        return [_lt(element_to_vec(g), self.order) for g in self.generators]


@dataclass(frozen=True)
class FiniteQuotientBasis:
    """Standard monomial basis of a finite dimensional quotient Q[x]^r / M."""

    standard_monomials: tuple[tuple[int, Monomial], ...]
    dimension: int


def groebner_basis(generators: Sequence[GenLike],
                   order: MonomialOrder = DEGREVLEX,
                   ambient_rank: int | None = None,
                   ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Groebner basis; deterministic and input-order independent."""
    elements = [_to_element(g) for g in generators]
    nonzero = [e for e in elements if not e.is_zero()]
    if elements:
        ranks = {e.rank for e in elements}
        if len(ranks) > 1:
            raise ValueError("generators have mixed ranks")
        ambient_rank = ranks.pop()
        ring = elements[0].ring
    else:
        if ambient_rank is None or ring is None:
            raise ValueError("empty input needs explicit ambient_rank and ring")
    vecs = _buchberger([element_to_vec(e) for e in nonzero], ambient_rank, order)
    gens = tuple(vec_to_element(v, ambient_rank, ring) for v in vecs)
    return GroebnerBasis(ring=ring, ambient_rank=ambient_rank, order=order, generators=gens)


def normal_form(x: GenLike, gb: GroebnerBasis) -> FreeModuleElement | Polynomial:
    """Unique remainder of x modulo the basis; type matches the input."""
    el = _to_element(x)
    if el.rank != gb.ambient_rank:
        raise ValueError("rank mismatch with basis")
    red = _reduce(element_to_vec(el), gb._divisors(), gb.order)
    out = vec_to_element(red, gb.ambient_rank, el.ring)
    if isinstance(x, Polynomial):
        return out.components[0]
    return out


# ---------------------------------------------------------------------------
# syzygies, membership, coordinates

class _AugmentedBasis:
    """Groebner data for (g_i, e_i) with original components dominating tags."""

    def __init__(self, gens: list[FreeModuleElement], order: MonomialOrder):
        if not gens:
            raise ValueError("need at least one generator")
        self.rank = gens[0].rank
        self.ring = gens[0].ring
        self.count = len(gens)
        self.order = order
        zero_exps = tuple(0 for _ in self.ring)
        aug: list[Vec] = []
        for i, g in enumerate(gens):
            vec = element_to_vec(g)
            vec[(self.rank + i, zero_exps)] = Fraction(1)
            aug.append(vec)
        self.basis = _buchberger(aug, self.rank + self.count, order)
        self.divisors = []
        for v in self.basis:
            lt = _lt(v, order)
            self.divisors.append((v, lt, v[lt]))

    def syzygies(self) -> list[FreeModuleElement]:
        out = []
        for v in self.basis:
            if all(comp >= self.rank for comp, _ in v):
                shifted = {(comp - self.rank, exps): c for (comp, exps), c in v.items()}
                out.append(vec_to_element(shifted, self.count, self.ring))
        return out

    def express(self, el: FreeModuleElement) -> list[Polynomial] | None:
        """Coordinates c with el = sum c_i g_i, or None when el is outside."""
        red = _reduce(element_to_vec(el), self.divisors, self.order)
        if any(comp < self.rank for comp, _ in red):
            return None
        # (el, 0) reduces to (0, w) with el = -sum w_i g_i
        coeffs = [dict() for _ in range(self.count)]
        for (comp, exps), c in red.items():
            coeffs[comp - self.rank][exps] = -c
        return [Polynomial(self.ring, d) for d in coeffs]


def syzygy_basis(generators: Sequence[GenLike],
                 order: MonomialOrder = DEGREVLEX) -> list[FreeModuleElement]:
    """Generators of {(c_1..c_k) : sum c_i g_i = 0} in Q[x]^k."""
    elements = [_to_element(g) for g in generators]
    if not elements:
        return []
    return _AugmentedBasis(elements, order).syzygies()


def express_in_terms(x: GenLike, generators: Sequence[GenLike],
                     order: MonomialOrder = DEGREVLEX) -> list[Polynomial] | None:
    """Coordinates of x in terms of the generators, or None if not a member."""
    elements = [_to_element(g) for g in generators]
    if not elements:
        el = _to_element(x)
        return [] if el.is_zero() else None
    return _AugmentedBasis(elements, order).express(_to_element(x))


# ---------------------------------------------------------------------------
# quotient dimensions

def quotient_dimension(gb: GroebnerBasis) -> FiniteQuotientBasis | None:
    """Standard monomial basis of Q[x]^r / M, or None when infinite."""
    r = gb.ambient_rank
    nvars = len(gb.ring)
    if r == 0:
        return FiniteQuotientBasis((), 0)
    lts_by_comp: dict[int, list[Monomial]] = {c: [] for c in range(r)}
    for comp, exps in gb.leading_terms():
        lts_by_comp[comp].append(exps)

    monomials: list[tuple[int, Monomial]] = []
    for comp in range(r):
        lts = lts_by_comp[comp]
        bounds = []
        for i in range(nvars):
            pure = [e[i] for e in lts if all(e[j] == 0 for j in range(nvars) if j != i)]
            if not pure:
                return None  # no pure power of x_i leads in this component
            bounds.append(min(pure))

        def walk(i: int, cur: list[int]) -> None:
            if i == nvars:
                exps = tuple(cur)
                if not any(all(a <= b for a, b in zip(lt, exps)) for lt in lts):
                    monomials.append((comp, exps))
                return
            for e in range(bounds[i]):
                cur.append(e)
                walk(i + 1, cur)
                cur.pop()

        walk(0, [])

    monomials.sort(key=lambda t: (t[0], gb.order.mono_key(t[1])))
    return FiniteQuotientBasis(tuple(monomials), len(monomials))


def subquotient_dimension(kernel_gens: Sequence[GenLike],
                          image_gens: Sequence[GenLike],
                          order: MonomialOrder = DEGREVLEX) -> int:
    """dim over Q of (span kernel_gens) / (span image_gens).

    Presents the subquotient as Q^k modulo the syzygies of the kernel
    generators plus the coordinate vectors of the image generators, then
    counts standard monomials of that quotient.
    """
    kernel = [_to_element(g) for g in kernel_gens]
    image = [_to_element(g) for g in image_gens]
    if not kernel:
        if any(not g.is_zero() for g in image):
            raise ContainmentError("image generators outside the zero kernel span")
        return 0
    aug = _AugmentedBasis(kernel, order)
    relations: list[FreeModuleElement] = list(aug.syzygies())
    for idx, g in enumerate(image):
        if g.rank != aug.rank:
            raise ValueError("kernel and image generators have different ranks")
        coords = aug.express(g)
        if coords is None:
            raise ContainmentError(f"image generator {idx} is not in the kernel span")
        if any(not p.is_zero() for p in coords):
            relations.append(FreeModuleElement(tuple(coords)))
    if not relations:
        # nonzero kernel span modulo nothing: infinite over Q
        raise InfiniteQuotientError("subquotient is not finite dimensional")
    gb = groebner_basis(relations, order)
    q = quotient_dimension(gb)
    if q is None:
        raise InfiniteQuotientError("subquotient is not finite dimensional")
    return q.dimension


def origin_support_check(gb: GroebnerBasis) -> bool:
    """True when the finite quotient Q[x]/I is supported only at the origin.

    Every variable must act nilpotently on the quotient; since the quotient
    has dimension mu, nilpotency is exactly x_i^mu lying in the ideal.
    """
    if gb.ambient_rank != 1:
        raise ValueError("origin support is defined for ideals")
    q = quotient_dimension(gb)
    if q is None:
        raise InfiniteQuotientError("quotient is not finite dimensional")
    mu = q.dimension
    ring = gb.ring
    for i in range(len(ring)):
        power = Polynomial.variable(ring, i) ** mu
        if not normal_form(power, gb).is_zero():
            return False
    return True
