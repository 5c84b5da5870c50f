"""Normal forms in finite-dimensional GF(2) quotient rings.

A small Buchberger engine computes the reduced Groebner basis of a
homogeneous relation ideal under the fixed graded reverse-lexicographic
order with ``x1 < x2 < ... < xm``.  Leading terms of the cube-manifold
relations are then the generator squares, so standard monomials come out
squarefree.  Division is run as parallel sweeps over exponent rows through
the kernel backend; each sweep replaces every currently reducible monomial
and cancels mod 2, which terminates because replacements are strictly
smaller in the monomial order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .errors import EngineDefectError, ReductionGuardError
from .gf2poly import Gf2Polynomial, Monomial, canonicalize_rows, render_poly

MONOMIAL_ORDER = "grevlex"

# Sweep guard: generous; hitting it signals an engine defect, not a big input.
DEFAULT_SWEEP_GUARD = 10_000
DEFAULT_PAIR_GUARD = 100_000


def _order_key(mono: Monomial) -> tuple:
    exps = mono.array()
    return (int(exps.sum(dtype=np.int32)), tuple(-int(e) for e in exps))


@dataclass(frozen=True)
class RelationSet:
    """Homogeneous ideal generators (zero generators are dropped)."""

    generators: tuple[Gf2Polynomial, ...]
    num_generators: int

    def __init__(self, generators: Iterable[Gf2Polynomial], num_generators: int):
        kept = []
        for g in generators:
            if g.num_generators != num_generators:
                raise ValueError("relation width disagrees with the ring generator count")
            if g.is_zero:
                continue
            if len(g.degrees()) != 1:
                raise ValueError(f"relation is not homogeneous: {g!r}")
            kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))
        object.__setattr__(self, "num_generators", num_generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


class GroebnerBasis:
    """A reduced Groebner basis plus kernel-ready lead/tail arrays."""

    def __init__(self, elements: Sequence[Gf2Polynomial], num_generators: int):
        self.num_generators = num_generators
        self.order = MONOMIAL_ORDER
        self.elements = tuple(
            sorted(elements, key=lambda g: _order_key(g.leading_monomial))
        )
        m = num_generators
        if self.elements:
            self._leads = np.ascontiguousarray(
                np.stack([g.rows[-1] for g in self.elements])
            )
            tail_blocks = [g.rows[:-1] for g in self.elements]
            counts = np.array([b.shape[0] for b in tail_blocks], dtype=np.int64)
            self._tails = (
                np.ascontiguousarray(np.concatenate(tail_blocks))
                if counts.sum()
                else np.empty((0, m), dtype=np.uint8)
            )
            self._tail_count = counts
            self._tail_start = np.concatenate(([0], np.cumsum(counts)[:-1]))
        else:
            self._leads = np.empty((0, m), dtype=np.uint8)
            self._tails = np.empty((0, m), dtype=np.uint8)
            self._tail_count = np.empty(0, dtype=np.int64)
            self._tail_start = np.empty(0, dtype=np.int64)

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.leading_monomial for g in self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.num_generators == other.num_generators
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.num_generators, self.elements))

    def check_spolys(self):
        """Confluence audit: every S-polynomial must reduce to zero."""
        for i in range(len(self.elements)):
            for j in range(i + 1, len(self.elements)):
                s = _spoly(self.elements[i], self.elements[j])
                if not normal_form(s, self).is_zero:
                    raise EngineDefectError(
                        f"S-polynomial of basis elements {i}, {j} does not reduce to zero"
                    )


def _reduce_rows(rows: np.ndarray, gb: GroebnerBasis, guard: int = DEFAULT_SWEEP_GUARD) -> np.ndarray:
    rows = canonicalize_rows(rows)
    if len(gb) == 0:
        return rows
    kern = kernels()
    for _ in range(guard):
        if rows.shape[0] == 0:
            return rows
        idx = kern.find_reducer(rows, gb._leads)
        reducible = idx >= 0
        if not reducible.any():
            return rows
        replacements = kern.expand_reducibles(
            rows[reducible],
            idx[reducible],
            gb._leads,
            gb._tails,
            gb._tail_start,
            gb._tail_count,
        )
        rows = canonicalize_rows(np.concatenate([rows[~reducible], replacements]))
    raise ReductionGuardError(f"reduction did not settle within {guard} sweeps")


def normal_form(p: Gf2Polynomial, gb: GroebnerBasis) -> Gf2Polynomial:
    """Unique remainder of p modulo the basis; zero iff p is in the ideal."""
    if p.num_generators != gb.num_generators:
        raise ValueError("polynomial uses generators unknown to the basis")
    if p.is_zero:
        return p
    return Gf2Polynomial(_reduce_rows(p.rows, gb), _canonical=True)


def normal_form_random_path(p: Gf2Polynomial, gb: GroebnerBasis, rng: random.Random) -> Gf2Polynomial:
    """Reference reducer taking randomized reduction steps.

    One reducible term and one applicable basis element are picked at random
    each step.  For a Groebner basis the result is independent of these
    choices; the test suite uses this to exercise confluence.
    """
    if p.num_generators != gb.num_generators:
        raise ValueError("polynomial uses generators unknown to the basis")
    leads = gb.leading_monomials
    current = dict.fromkeys(p.terms())
    for _ in range(DEFAULT_SWEEP_GUARD * max(1, len(p))):
        candidates = [
            (mono, i)
            for mono in current
            for i, lead in enumerate(leads)
            if lead.divides(mono)
        ]
        if not candidates:
            break
        mono, i = candidates[rng.randrange(len(candidates))]
        element = gb.elements[i]
        quotient = Monomial(mono.array() - leads[i].array())
        del current[mono]
        for tail in element.terms()[:-1]:
            term = quotient * tail
            if term in current:
                del current[term]
            else:
                current[term] = None
    else:
        raise ReductionGuardError("randomized reduction did not settle")
    return Gf2Polynomial.from_monomials(current.keys(), p.num_generators)


def _spoly(f: Gf2Polynomial, g: Gf2Polynomial) -> Gf2Polynomial:
    lf, lg = f.rows[-1], g.rows[-1]
    lcm = np.maximum(lf, lg)
    mf = Gf2Polynomial((lcm - lf)[None, :], _canonical=True)
    mg = Gf2Polynomial((lcm - lg)[None, :], _canonical=True)
    return mf * f + mg * g


def _reduce_poly_by_list(p: Gf2Polynomial, basis: list[Gf2Polynomial], m: int) -> Gf2Polynomial:
    if not basis:
        return p
    return normal_form(p, GroebnerBasis(basis, m))


def buchberger(
    rels: RelationSet,
    num_generators: int | None = None,
    *,
    pair_guard: int = DEFAULT_PAIR_GUARD,
) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous relation ideal.

    Normal selection strategy (smallest lcm in the monomial order) with the
    coprime-lead criterion.  Termination is guaranteed for polynomial input;
    ``pair_guard`` bounds the pair loop anyway and raising it signals a
    defect rather than a legitimately large problem.
    """
    m = rels.num_generators if num_generators is None else num_generators
    if num_generators is not None and rels.num_generators != num_generators:
        raise ValueError("relation set width disagrees with num_generators")

    basis: list[Gf2Polynomial] = []
    pairs: set[tuple[int, int]] = set()

    def add_element(h: Gf2Polynomial):
        basis.append(h)
        j = len(basis) - 1
        pairs.update((i, j) for i in range(j))

    for g in sorted(rels, key=lambda g: _order_key(g.leading_monomial)):
        h = _reduce_poly_by_list(g, basis, m)
        if not h.is_zero:
            add_element(h)

    def pair_key(pair):
        i, j = pair
        lcm = np.maximum(basis[i].rows[-1], basis[j].rows[-1])
        return (_order_key(Monomial(lcm)), i, j)

    steps = 0
    while pairs:
        steps += 1
        if steps > pair_guard:
            raise ReductionGuardError(f"Buchberger exceeded {pair_guard} pair reductions")
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lf, lg = basis[i].rows[-1], basis[j].rows[-1]
        if not (np.minimum(lf, lg)).any():
            continue  # coprime leads: S-polynomial reduces to zero
        h = _reduce_poly_by_list(_spoly(basis[i], basis[j]), basis, m)
        if not h.is_zero:
            add_element(h)

    # Minimalize: in a graded order every proper divisor of a lead sorts
    # earlier, so one ascending pass suffices.
    basis.sort(key=lambda g: _order_key(g.leading_monomial))
    minimal: list[Gf2Polynomial] = []
    for g in basis:
        lead = g.leading_monomial
        if not any(h.leading_monomial.divides(lead) for h in minimal):
            minimal.append(g)

    # Tail-reduce each element against the rest for the reduced basis.
    reduced: list[Gf2Polynomial] = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        lead_poly = Gf2Polynomial(g.rows[-1:], _canonical=True)
        tail = Gf2Polynomial(g.rows[:-1], _canonical=True)
        reduced.append(lead_poly + _reduce_poly_by_list(tail, others, m))

    gb = GroebnerBasis(reduced, m)
    gb.check_spolys()
    return gb


@dataclass(frozen=True)
class StandardBasis:
    """Monomials not divisible by any basis lead, grouped by degree."""

    by_degree: dict[int, tuple[Monomial, ...]]

    @property
    def ranks(self) -> dict[int, int]:
        return {d: len(monos) for d, monos in self.by_degree.items()}

    @property
    def total(self) -> int:
        return sum(len(monos) for monos in self.by_degree.values())

    def monomials(self) -> tuple[Monomial, ...]:
        out = []
        for d in sorted(self.by_degree):
            out.extend(self.by_degree[d])
        return tuple(out)


def standard_monomials(gb: GroebnerBasis, max_degree: int) -> StandardBasis:
    """All standard monomials of cohomological degree <= max_degree."""
    if max_degree < 0 or max_degree % 2:
        raise ValueError(f"max_degree must be even and nonnegative, got {max_degree}")
    m = gb.num_generators
    leads = gb._leads
    if leads.shape[0] and not leads.any(axis=1).all():
        return StandardBasis({})  # the ideal contains 1

    max_weight = max_degree // 2
    found: dict[int, list[Monomial]] = {}
    stack = [(np.zeros(m, dtype=np.uint8), 0)]
    while stack:
        exps, start = stack.pop()
        weight = int(exps.sum(dtype=np.int32))
        found.setdefault(2 * weight, []).append(Monomial(exps))
        if weight == max_weight:
            continue
        for g in range(start, m):
            child = exps.copy()
            child[g] += 1
            if leads.shape[0] and bool((child >= leads).all(axis=1).any()):
                continue
            stack.append((child, g))

    by_degree = {}
    for d, monos in sorted(found.items()):
        monos.sort(key=_order_key)
        by_degree[d] = tuple(monos)
    return StandardBasis(by_degree)


def series_inverse(p: Gf2Polynomial, gb: GroebnerBasis, max_degree: int) -> Gf2Polynomial:
    """Multiplicative inverse of p in the quotient, up to max_degree.

    Requires constant term 1.  Components are built degree by degree from
    q_d = sum of p_e * q_(d-e) over 0 < e <= d, reduced mod the basis.
    """
    if max_degree < 0 or max_degree % 2:
        raise ValueError(f"max_degree must be even and nonnegative, got {max_degree}")
    if p.graded_component(0) != Gf2Polynomial.one(p.num_generators):
        raise ValueError("series inversion requires constant term 1")
    p_comp = {
        d: normal_form(p.graded_component(d), gb) for d in range(2, max_degree + 1, 2)
    }
    q_comp = {0: Gf2Polynomial.one(p.num_generators)}
    for d in range(2, max_degree + 1, 2):
        acc = Gf2Polynomial.zero(p.num_generators)
        for e in range(2, d + 1, 2):
            pe = p_comp[e]
            qe = q_comp[d - e]
            if pe.is_zero or qe.is_zero:
                continue
            acc = acc + normal_form(pe * qe, gb)
        q_comp[d] = acc
    total = Gf2Polynomial.zero(p.num_generators)
    for component in q_comp.values():
        total = total + component
    return total


@dataclass(frozen=True)
class QuotientRing:
    """A presentation: generator names, relations and their reduced basis."""

    label: str
    names: tuple[str, ...]
    relations: RelationSet
    gb: GroebnerBasis = field(compare=False)

    @property
    def num_generators(self) -> int:
        return len(self.names)

    def zero(self) -> Gf2Polynomial:
        return Gf2Polynomial.zero(self.num_generators)

    def one(self) -> Gf2Polynomial:
        return Gf2Polynomial.one(self.num_generators)

    def gen(self, idx: int) -> Gf2Polynomial:
        return Gf2Polynomial.generator(idx, self.num_generators)

    def nf(self, p: Gf2Polynomial) -> Gf2Polynomial:
        return normal_form(p, self.gb)

    def series_inverse(self, p: Gf2Polynomial, max_degree: int) -> Gf2Polynomial:
        return series_inverse(p, self.gb, max_degree)

    def standard_basis(self, max_degree: int) -> StandardBasis:
        return standard_monomials(self.gb, max_degree)

    def render(self, p: Gf2Polynomial) -> str:
        return render_poly(p, self.names)


def make_ring(label: str, names: Sequence[str], relations: Iterable[Gf2Polynomial]) -> QuotientRing:
    """Convenience constructor running Buchberger on the given relations."""
    names = tuple(names)
    rels = RelationSet(relations, len(names))
    return QuotientRing(label, names, rels, buchberger(rels))
