"""Quasitoric-manifold models over the cube and their characteristic classes.

A model is a validated characteristic matrix plus ring presentations:

* ``u_presentation``: the n primed facet classes, with the quadratic
  relations obtained by substituting the linear ideal into the
  Stanley-Reisner products.
* ``t_presentation`` (built-in families only): the triangular change of
  generators t_i = u_1 + ... + u_i within each facet group, which turns the
  relations into squares-cancel-to-neighbours form.
* ``uv_presentation`` (lazy): all 2n facet classes with the linear ideal
  kept as explicit relations; used to exercise the full product formula.

Total classes come from the reduced product of (1 + class) over all facets;
dual classes are computed twice, by graded series inversion and by the
closed product formula, and any disagreement raises
:class:`~cubetoric.errors.EngineDefectError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import oracle
from ._config import HARD_MAX_N, dimension_cap
from .cube import (
    CharacteristicMatrix,
    binary_groups,
    lambda_MI,
    lambda_Q,
    require_valid,
)
from .errors import EngineDefectError, InvalidMatrixError
from .gf2poly import Gf2Polynomial, mul_capped, substitute_linear
from .quotient import QuotientRing, RelationSet, buchberger

FAMILY_MI = "mi"
FAMILY_Q = "q"
FAMILY_CUSTOM = "custom"
FAMILIES = (FAMILY_MI, FAMILY_Q, FAMILY_CUSTOM)


def _group_offsets(groups: Sequence[int]) -> list[int]:
    offsets = [0]
    for size in groups[:-1]:
        offsets.append(offsets[-1] + size)
    return offsets


def _names(prefix: str, n: int, groups: Sequence[int] | None) -> tuple[str, ...]:
    if groups is None or len(groups) == 1:
        return tuple(f"{prefix}{i}" for i in range(1, n + 1))
    names = []
    for g, size in enumerate(groups, start=1):
        names.extend(f"{prefix}{g}_{i}" for i in range(1, size + 1))
    return tuple(names)


def _v_substitution(cm: CharacteristicMatrix) -> list[list[int]]:
    """Solve the linear ideal mod 2 for the unprimed classes: v = S u."""
    n = cm.n
    aug = [
        [cm.entry(r, j) % 2 for j in range(n)]
        + [cm.entry(r, n + j) % 2 for j in range(n)]
        for r in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise InvalidMatrixError("unprimed facet block is singular mod 2")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                aug[r] = [(a ^ b) for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class BoundReport:
    """Lower bounds for the least ambient dimension of a totally skew embedding."""

    d: int
    k_max: int
    sw_bound: int
    generic_bound: int
    final: int

    def to_json_dict(self) -> dict:
        return {
            "manifold_dimension": self.d,
            "k_max": self.k_max,
            "sw_bound": self.sw_bound,
            "generic_bound": self.generic_bound,
            "final": self.final,
        }


@dataclass(frozen=True)
class SigmaTable:
    """Rows 1..n of the dual-class monomial-count parities."""

    rows: tuple[tuple[int, ...], ...]

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n - 1]

    def __len__(self):
        return len(self.rows)


class GradedClass:
    """Even-graded class with normal-form homogeneous components."""

    def __init__(self, ring: QuotientRing, components: dict[int, Gf2Polynomial], max_degree: int):
        self.ring = ring
        self.max_degree = max_degree
        self.components = {d: p for d, p in sorted(components.items()) if not p.is_zero}

    @classmethod
    def from_polynomial(cls, ring: QuotientRing, p: Gf2Polynomial, max_degree: int) -> "GradedClass":
        comps = {d: p.graded_component(d) for d in p.degrees() if d <= max_degree}
        return cls(ring, comps, max_degree)

    def component(self, degree: int) -> Gf2Polynomial:
        return self.components.get(degree, self.ring.zero())

    def total(self) -> Gf2Polynomial:
        acc = self.ring.zero()
        for p in self.components.values():
            acc = acc + p
        return acc

    def top_degree(self) -> int:
        """Largest degree carrying a nonzero component; 0 for the class 1."""
        return max(self.components, default=0)

    def term_count(self, degree: int) -> int:
        return len(self.component(degree))

    def __eq__(self, other):
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return f"GradedClass({self.ring.render(self.total())})"

    def to_json_dict(self) -> dict:
        return {
            "basis": self.ring.label,
            "max_degree": self.max_degree,
            "components": [
                {
                    "degree": d,
                    "terms": p.to_pairs(),
                    "text": self.ring.render(p),
                }
                for d, p in self.components.items()
            ],
        }


class ManifoldModel:
    """Immutable-after-build model; class computations are cached."""

    def __init__(
        self,
        family: str,
        n: int,
        cm: CharacteristicMatrix,
        groups: tuple[int, ...] | None,
        u_presentation: QuotientRing,
        t_presentation: QuotientRing | None,
    ):
        self.family = family
        self.n = n
        self.dim = 2 * n
        self.cm = cm
        self.groups = groups
        self.u_presentation = u_presentation
        self.t_presentation = t_presentation
        self._substitution = _v_substitution(cm)
        self._cache: dict[str, object] = {}

    @property
    def working_ring(self) -> QuotientRing:
        return self.t_presentation if self.t_presentation is not None else self.u_presentation

    @property
    def v_substitution(self) -> list[list[int]]:
        """Row i gives the mod-2 expansion of v_i in the u generators."""
        return [row[:] for row in self._substitution]

    @property
    def uv_presentation(self) -> QuotientRing:
        """Presentation on all 2n facet classes, linear ideal included."""
        if "uv" not in self._cache:
            self._cache["uv"] = _build_uv_presentation(self)
        return self._cache["uv"]

    def total_sw(self) -> GradedClass:
        if "total" not in self._cache:
            self._cache["total"] = _compute_total_sw(self)
        return self._cache["total"]

    def dual_sw(self) -> GradedClass:
        if "dual" not in self._cache:
            self._cache["dual"] = _compute_dual_sw(self)
        return self._cache["dual"]

    def top_dual_degree(self) -> int:
        return self.dual_sw().top_degree()

    def skew_lower_bound(self) -> BoundReport:
        d = self.dim
        k_max = self.top_dual_degree()
        sw_bound = 2 * d + 2 * k_max + 1
        generic_bound = 2 * d + 2
        return BoundReport(d, k_max, sw_bound, generic_bound, max(sw_bound, generic_bound))

    def unit_check(self) -> bool:
        """Normal form of (total class) * (dual class) must be exactly 1."""
        ring = self.working_ring
        product = ring.nf(self.total_sw().total() * self.dual_sw().total())
        return product == ring.one()


def build(
    family: str,
    n: int,
    cm: CharacteristicMatrix | None = None,
    *,
    max_n: int | None = None,
) -> ManifoldModel:
    """Construct a model: validate the matrix, then derive the presentations."""
    family = family.lower()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    cap = min(dimension_cap() if max_n is None else max_n, HARD_MAX_N)
    if not 1 <= n <= cap:
        raise ValueError(f"n must be in 1..{cap}, got {n}")

    if family == FAMILY_MI:
        if cm is not None:
            raise ValueError("built-in families take no matrix")
        cm = lambda_MI(n)
        groups: tuple[int, ...] | None = (n,)
    elif family == FAMILY_Q:
        if cm is not None:
            raise ValueError("built-in families take no matrix")
        cm = lambda_Q(n)
        groups = binary_groups(n)
    else:
        if cm is None:
            raise ValueError("custom family requires a characteristic matrix")
        if cm.n != n:
            raise ValueError(f"matrix dimension {cm.n} does not match n={n}")
        groups = None

    require_valid(cm)
    substitution = _v_substitution(cm)

    u_names = _names("u", n, groups)
    u_gens = [Gf2Polynomial.generator(i, n) for i in range(n)]
    u_rels = []
    for i in range(n):
        v_i = Gf2Polynomial.zero(n)
        for j in range(n):
            if substitution[i][j]:
                v_i = v_i + u_gens[j]
        u_rels.append(v_i * u_gens[i])
    u_relset = RelationSet(u_rels, n)
    u_pres = QuotientRing("u", u_names, u_relset, buchberger(u_relset))

    t_pres = None
    if groups is not None:
        t_names = _names("t", n, groups)
        images = []
        for offset, size in zip(_group_offsets(groups), groups):
            for i in range(size):
                image = Gf2Polynomial.generator(offset + i, n)
                if i > 0:
                    image = image + Gf2Polynomial.generator(offset + i - 1, n)
                images.append(image)
        t_rels = RelationSet([substitute_linear(r, images, n) for r in u_rels], n)
        t_pres = QuotientRing("t", t_names, t_rels, buchberger(t_rels))

    return ManifoldModel(family, n, cm, groups, u_pres, t_pres)


def _build_uv_presentation(model: ManifoldModel) -> QuotientRing:
    n = model.n
    m = 2 * n
    names = _names("u", n, model.groups) + _names("v", n, model.groups)
    rels = []
    for i in range(n):  # linear ideal: one form per matrix row
        form = Gf2Polynomial.zero(m)
        for j in range(n):
            if model.cm.entry(i, j) % 2:
                form = form + Gf2Polynomial.generator(n + j, m)
            if model.cm.entry(i, n + j) % 2:
                form = form + Gf2Polynomial.generator(j, m)
        rels.append(form)
    for i in range(n):  # Stanley-Reisner ideal: opposite facets miss each other
        rels.append(
            Gf2Polynomial.generator(n + i, m) * Gf2Polynomial.generator(i, m)
        )
    relset = RelationSet(rels, m)
    return QuotientRing("uv", names, relset, buchberger(relset))


def dj_product(model: ManifoldModel, ring_label: str = "working") -> Gf2Polynomial:
    """Reduced product of (1 + class) over all 2n facets.

    ``ring_label`` picks where to compute: ``working`` (t when available),
    ``u``, or ``uv`` (no substitution; the linear ideal does the work).
    """
    n = model.n
    cap = model.dim
    if ring_label == "uv":
        ring = model.uv_presentation
        facets = [Gf2Polynomial.generator(j, 2 * n) for j in range(2 * n)]
    else:
        ring = model.working_ring if ring_label == "working" else model.u_presentation
        if ring is model.u_presentation:
            u_gens = [Gf2Polynomial.generator(i, n) for i in range(n)]
        else:
            u_gens = []
            for offset, size in zip(_group_offsets(model.groups), model.groups):
                for i in range(size):
                    g = Gf2Polynomial.generator(offset + i, n)
                    if i > 0:
                        g = g + Gf2Polynomial.generator(offset + i - 1, n)
                    u_gens.append(g)
        v_classes = []
        for i in range(n):
            v = Gf2Polynomial.zero(n)
            for j in range(n):
                if model._substitution[i][j]:
                    v = v + u_gens[j]
            v_classes.append(v)
        facets = u_gens + v_classes
    product = ring.one()
    for cls in facets:
        product = ring.nf(mul_capped(product, ring.one() + cls, cap))
    return product


def _shortened_total(model: ManifoldModel) -> Gf2Polynomial:
    """The collapsed total-class product over the t generators."""
    ring = model.t_presentation
    product = ring.one()
    for offset, size in zip(_group_offsets(model.groups), model.groups):
        for i in range(size - 1):
            product = ring.nf(
                mul_capped(product, ring.one() + ring.gen(offset + i), model.dim)
            )
    return product


def _compute_total_sw(model: ManifoldModel) -> GradedClass:
    ring = model.working_ring
    product = dj_product(model, "working")
    if model.t_presentation is not None:
        shortened = _shortened_total(model)
        if product != shortened:
            raise EngineDefectError(
                "facet product disagrees with the collapsed total-class product"
            )
    return GradedClass.from_polynomial(ring, product, model.dim)


def _dual_product_formula(model: ManifoldModel) -> Gf2Polynomial:
    """Closed form of the dual class: per group, factors 1 + t_i + ... + t_i^i."""
    ring = model.t_presentation
    product = ring.one()
    for offset, size in zip(_group_offsets(model.groups), model.groups):
        for i in range(1, size):
            factor = ring.one()
            power = ring.one()
            gen = ring.gen(offset + i - 1)
            for _ in range(i):
                power = mul_capped(power, gen, model.dim)
                factor = factor + power
            product = ring.nf(mul_capped(product, factor, model.dim))
    return product


def _compute_dual_sw(model: ManifoldModel) -> GradedClass:
    ring = model.working_ring
    total = model.total_sw().total()
    inverse = ring.series_inverse(total, model.dim)
    if model.t_presentation is not None:
        direct = _dual_product_formula(model)
        if direct != inverse:
            raise EngineDefectError(
                "series inversion disagrees with the dual-class product formula"
            )
    return GradedClass.from_polynomial(ring, inverse, model.dim)


def total_sw(model: ManifoldModel) -> GradedClass:
    return model.total_sw()


def dual_sw(model: ManifoldModel) -> GradedClass:
    return model.dual_sw()


def top_dual_degree(model: ManifoldModel) -> int:
    return model.top_dual_degree()


def skew_lower_bound(model: ManifoldModel) -> BoundReport:
    return model.skew_lower_bound()


@lru_cache(maxsize=64)
def _cached_family_model(family: str, n: int) -> ManifoldModel:
    return build(family, n, max_n=HARD_MAX_N)


def family_model(family: str, n: int) -> ManifoldModel:
    """Cached access to built-in family models (they are immutable)."""
    if family not in (FAMILY_MI, FAMILY_Q):
        raise ValueError("only built-in families are cached")
    return _cached_family_model(family, n)


def sigma_table(n: int) -> SigmaTable:
    """Rows 1..n of the parity table, generated by the prefix-sum recurrence."""
    return SigmaTable(oracle.sigma_rows(n))


def sigma_from_class(n: int, *, max_n: int | None = None) -> tuple[int, ...]:
    """Row n of the table recomputed from the actual dual class of the
    single-group model: parity of the monomial count in each component."""
    cap = min(dimension_cap() if max_n is None else max_n, HARD_MAX_N)
    if not 1 <= n <= cap:
        raise ValueError(f"n must be in 1..{cap}, got {n}")
    model = family_model(FAMILY_MI, n)
    dual = model.dual_sw()
    return tuple(dual.term_count(2 * k) % 2 for k in range(n))


def predicted_q_top_monomial(model: ManifoldModel) -> Gf2Polynomial:
    """Product of all non-final t generators of each group, as a single monomial."""
    ring = model.t_presentation
    product = ring.one()
    for offset, size in zip(_group_offsets(model.groups), model.groups):
        for i in range(size - 1):
            product = product * ring.gen(offset + i)
    return product
