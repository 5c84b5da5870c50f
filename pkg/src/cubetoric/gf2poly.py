"""Exact multigraded polynomial arithmetic over the two-element field.

Every ring generator sits in cohomological degree 2, so the degree of a
monomial is twice its exponent sum (its *weight*).  Coefficients live in
GF(2) and are implicit: a polynomial is a finite set of monomials and
addition is symmetric difference.

Representation: a monomial is a uint8 exponent row of fixed width m (the
number of ring generators, at most 64); a polynomial is a read-only
``(k, m)`` uint8 array of distinct rows in canonical order.  The canonical
order is ascending by (degree, graded reverse-lexicographic with
``x1 < x2 < ... < xm``); the leading monomial of a nonzero polynomial is the
last row.  Exponents are capped at 255 per generator, far above anything the
degree caps allow; products check the cap and raise ``OverflowError``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from ._config import MAX_GENERATORS

# Pairwise products are chunked so intermediate buffers stay modest.
_CHUNK_ROWS = 1 << 22


def _check_width(m: int) -> int:
    m = int(m)
    if not 1 <= m <= MAX_GENERATORS:
        raise ValueError(f"number of generators must be in 1..{MAX_GENERATORS}, got {m}")
    return m


def _empty_rows(m: int) -> np.ndarray:
    return np.empty((0, m), dtype=np.uint8)


def _freeze(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.uint8)
    rows.setflags(write=False)
    return rows


def canonical_sort_keys(rows: np.ndarray) -> tuple:
    """np.lexsort keys realizing the canonical ascending term order."""
    signed = rows.astype(np.int16)
    weights = signed.sum(axis=1)
    # Primary key last: weight, then generator 0 descending, then generator 1...
    return tuple(-signed[:, c] for c in range(rows.shape[1] - 1, -1, -1)) + (weights,)


def canonicalize_rows(rows: np.ndarray) -> np.ndarray:
    """Sort rows canonically and drop rows occurring an even number of times."""
    if rows.shape[0] == 0:
        return _empty_rows(rows.shape[1])
    order = np.lexsort(canonical_sort_keys(rows))
    rows = rows[order]
    if rows.shape[0] == 1:
        return rows
    boundary = np.empty(rows.shape[0], dtype=bool)
    boundary[0] = True
    np.any(rows[1:] != rows[:-1], axis=1, out=boundary[1:])
    run_id = np.cumsum(boundary) - 1
    counts = np.bincount(run_id)
    keep = (counts & 1).astype(bool)
    return rows[boundary][keep]


class Monomial:
    """A product of generator powers; the atom of every class computation."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps: np.ndarray):
        self._exps = _freeze(np.atleast_1d(exps))
        self._hash = None

    @classmethod
    def one(cls, num_generators: int) -> "Monomial":
        return cls(np.zeros(_check_width(num_generators), dtype=np.uint8))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], num_generators: int) -> "Monomial":
        exps = np.zeros(_check_width(num_generators), dtype=np.uint8)
        for idx, exp in pairs:
            if not 0 <= idx < num_generators:
                raise ValueError(f"generator index {idx} out of range 0..{num_generators - 1}")
            if exp < 0:
                raise ValueError("exponents must be nonnegative")
            if exp > 255 - int(exps[idx]):
                raise OverflowError("exponent exceeds the uint8 cap of 255")
            exps[idx] += exp
        return cls(exps)

    @property
    def num_generators(self) -> int:
        return self._exps.shape[0]

    @property
    def weight(self) -> int:
        return int(self._exps.sum(dtype=np.int32))

    @property
    def degree(self) -> int:
        """Cohomological degree: twice the exponent sum, always even."""
        return 2 * self.weight

    @property
    def is_one(self) -> bool:
        return not self._exps.any()

    def exponent(self, idx: int) -> int:
        return int(self._exps[idx])

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Sparse view: ((generator_index, exponent), ...) with zero entries absent."""
        nz = np.flatnonzero(self._exps)
        return tuple((int(i), int(self._exps[i])) for i in nz)

    def exponents(self) -> dict[int, int]:
        return dict(self.pairs())

    def array(self) -> np.ndarray:
        return self._exps

    def divides(self, other: "Monomial") -> bool:
        self._check_same_ring(other)
        return bool((self._exps <= other._exps).all())

    def _check_same_ring(self, other: "Monomial"):
        if self.num_generators != other.num_generators:
            raise ValueError("monomials belong to rings with different generator counts")

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check_same_ring(other)
        if int(self._exps.max(initial=0)) + int(other._exps.max(initial=0)) > 255:
            raise OverflowError("exponent exceeds the uint8 cap of 255")
        return Monomial(self._exps + other._exps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._exps.shape == other._exps.shape and bool((self._exps == other._exps).all())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_generators, self._exps.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        body = render_monomial(self, tuple(f"x{i}" for i in range(self.num_generators)))
        return f"Monomial({body})"


class Gf2Polynomial:
    """A finite set of monomials; addition is XOR of term sets."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: np.ndarray, *, _canonical: bool = False):
        rows = np.asarray(rows, dtype=np.uint8)
        if rows.ndim != 2:
            raise ValueError("expected a 2-D exponent array")
        _check_width(rows.shape[1])
        if not _canonical:
            rows = canonicalize_rows(rows)
        self._rows = _freeze(rows)
        self._hash = None

    @classmethod
    def zero(cls, num_generators: int) -> "Gf2Polynomial":
        return cls(_empty_rows(_check_width(num_generators)), _canonical=True)

    @classmethod
    def one(cls, num_generators: int) -> "Gf2Polynomial":
        return cls(np.zeros((1, _check_width(num_generators)), dtype=np.uint8), _canonical=True)

    @classmethod
    def generator(cls, idx: int, num_generators: int) -> "Gf2Polynomial":
        return cls.from_monomials([Monomial.from_pairs([(idx, 1)], num_generators)])

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial], num_generators: int | None = None) -> "Gf2Polynomial":
        monomials = list(monomials)
        if not monomials:
            if num_generators is None:
                raise ValueError("num_generators required for an empty monomial list")
            return cls.zero(num_generators)
        m = monomials[0].num_generators
        if num_generators is not None and num_generators != m:
            raise ValueError("monomial width disagrees with num_generators")
        rows = np.stack([mono.array() for mono in monomials])
        return cls(rows)

    @property
    def num_generators(self) -> int:
        return self._rows.shape[1]

    @property
    def is_zero(self) -> bool:
        return self._rows.shape[0] == 0

    @property
    def rows(self) -> np.ndarray:
        """Canonically ordered exponent rows (read-only)."""
        return self._rows

    @property
    def degree(self) -> int:
        """Largest cohomological degree among terms; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return 2 * int(self._rows[-1].sum(dtype=np.int32))

    @property
    def leading_monomial(self) -> Monomial:
        if self.is_zero:
            raise ValueError("the zero polynomial has no leading monomial")
        return Monomial(self._rows[-1])

    def terms(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(row) for row in self._rows)

    def __len__(self) -> int:
        return self._rows.shape[0]

    def __iter__(self):
        return iter(self.terms())

    def __bool__(self) -> bool:
        return not self.is_zero

    def _check_same_ring(self, other: "Gf2Polynomial"):
        if self.num_generators != other.num_generators:
            raise ValueError("polynomials belong to rings with different generator counts")

    def __add__(self, other: "Gf2Polynomial") -> "Gf2Polynomial":
        self._check_same_ring(other)
        return Gf2Polynomial(np.concatenate([self._rows, other._rows]))

    def __mul__(self, other: "Gf2Polynomial") -> "Gf2Polynomial":
        return mul_capped(self, other, None)

    def __pow__(self, exponent: int) -> "Gf2Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = Gf2Polynomial.one(self.num_generators)
        for _ in range(exponent):
            result = result * self
        return result

    def graded_component(self, degree: int) -> "Gf2Polynomial":
        """Terms of cohomological degree exactly ``degree`` (even, >= 0)."""
        if degree < 0 or degree % 2:
            raise ValueError(f"cohomological degree must be even and nonnegative, got {degree}")
        weights = self._rows.sum(axis=1, dtype=np.int32)
        return Gf2Polynomial(self._rows[weights == degree // 2], _canonical=True)

    def truncated(self, max_degree: int) -> "Gf2Polynomial":
        """Drop all terms of cohomological degree above ``max_degree``."""
        weights = self._rows.sum(axis=1, dtype=np.int32)
        return Gf2Polynomial(self._rows[weights <= max_degree // 2], _canonical=True)

    def degrees(self) -> tuple[int, ...]:
        """Sorted cohomological degrees that carry at least one term."""
        weights = np.unique(self._rows.sum(axis=1, dtype=np.int32))
        return tuple(2 * int(w) for w in weights)

    def to_pairs(self) -> list[list[list[int]]]:
        """JSON form: canonical list of monomials as [generator_index, exponent] pairs."""
        return [[[i, e] for i, e in mono.pairs()] for mono in self.terms()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Polynomial):
            return NotImplemented
        return self._rows.shape == other._rows.shape and bool((self._rows == other._rows).all())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rows.shape, self._rows.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        names = tuple(f"x{i}" for i in range(self.num_generators))
        return f"Gf2Polynomial({render_poly(self, names)})"


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Exponent-wise sum; degree is additive."""
    return a * b


def poly_add(p: Gf2Polynomial, q: Gf2Polynomial) -> Gf2Polynomial:
    """Symmetric difference of term sets (characteristic-2 addition)."""
    return p + q


def poly_mul(p: Gf2Polynomial, q: Gf2Polynomial) -> Gf2Polynomial:
    """Full distribution with mod-2 cancellation; exact."""
    return mul_capped(p, q, None)


def graded_component(p: Gf2Polynomial, degree: int) -> Gf2Polynomial:
    return p.graded_component(degree)


def mul_capped(p: Gf2Polynomial, q: Gf2Polynomial, max_degree: int | None) -> Gf2Polynomial:
    """Product, optionally discarding terms above ``max_degree`` as they form."""
    p._check_same_ring(q)
    if p.is_zero or q.is_zero:
        return Gf2Polynomial.zero(p.num_generators)
    a, b = p.rows, q.rows
    if int(a.max(initial=0)) + int(b.max(initial=0)) > 255:
        raise OverflowError("product exponent exceeds the uint8 cap of 255")
    max_weight = -1 if max_degree is None else max_degree // 2
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    kern = kernels()
    chunk = max(1, _CHUNK_ROWS // max(1, b.shape[0]))
    pieces = [
        kern.pairwise_products(a[start : start + chunk], b, max_weight)
        for start in range(0, a.shape[0], chunk)
    ]
    rows = pieces[0] if len(pieces) == 1 else np.concatenate(pieces)
    return Gf2Polynomial(rows)


def substitute_linear(
    p: Gf2Polynomial, images: Sequence[Gf2Polynomial], num_generators: int
) -> Gf2Polynomial:
    """Ring map sending generator i to ``images[i]``; exact, no reduction.

    Used for the triangular change of generators between presentations.
    """
    if len(images) != p.num_generators:
        raise ValueError("need one image per source generator")
    result = Gf2Polynomial.zero(num_generators)
    for mono in p.terms():
        term = Gf2Polynomial.one(num_generators)
        for idx, exp in mono.pairs():
            term = term * images[idx] ** exp
        result = result + term
    return result


def render_monomial(mono: Monomial, names: Sequence[str]) -> str:
    parts = [f"{names[i]}^{e}" if e > 1 else names[i] for i, e in mono.pairs()]
    return "*".join(parts) if parts else "1"


def render_poly(p: Gf2Polynomial, names: Sequence[str]) -> str:
    """Canonical text form, e.g. ``1 + t1 + t1*t3``; ``0`` for the zero polynomial."""
    if p.is_zero:
        return "0"
    return " + ".join(render_monomial(mono, names) for mono in p.terms())
