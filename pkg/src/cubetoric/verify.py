"""The aggregated invariant suite behind ``cubetoric verify``.

Each check returns a :class:`CheckResult`; the driver runs them in a fixed
order (module by module, then by n) so output is deterministic.  The checks
mirror the per-module invariants: algebra axioms on random polynomials,
exhaustive minor validity, relation membership and confluence, unit and
path-independence identities for the classes, rank profiles, top-class
equalities, and the sigma parity cross-checks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import manifolds, oracle
from .cube import (
    CharacteristicMatrix,
    binary_groups,
    lambda_MI,
    lambda_Q,
    random_characteristic_matrix,
    validate,
)
from .gf2poly import Gf2Polynomial
from .quotient import normal_form_random_path


@dataclass(frozen=True)
class CheckResult:
    name: str
    scope: str
    ok: bool
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {"name": self.name, "scope": self.scope, "ok": self.ok, "detail": self.detail}


def _random_poly(rng: random.Random, m: int, max_weight: int, max_terms: int) -> Gf2Polynomial:
    rows = []
    for _ in range(rng.randrange(max_terms + 1)):
        exps = [0] * m
        for _ in range(rng.randrange(max_weight + 1)):
            exps[rng.randrange(m)] += 1
        rows.append(exps)
    if not rows:
        return Gf2Polynomial.zero(m)
    return Gf2Polynomial(np.array(rows, dtype=np.uint8))


def check_poly_axioms(seed: int, samples: int = 50) -> list[CheckResult]:
    rng = random.Random(seed)
    ok = True
    detail = ""
    for _ in range(samples):
        m = rng.randrange(1, 7)
        p = _random_poly(rng, m, 4, 6)
        q = _random_poly(rng, m, 4, 6)
        r = _random_poly(rng, m, 4, 6)
        if (p + q) + r != p + (q + r) or p + p != Gf2Polynomial.zero(m):
            ok, detail = False, "addition axioms failed"
            break
        if p * (q + r) != p * q + p * r:
            ok, detail = False, "distributivity failed"
            break
        if (p + q) * (p + q) != p * p + q * q:
            ok, detail = False, "Frobenius failed"
            break
    return [CheckResult("gf2poly.axioms", f"samples={samples}", ok, detail)]


def check_cube(n_max: int) -> list[CheckResult]:
    results = []
    for n in range(1, n_max + 1):
        for label, cm in (("mi", lambda_MI(n)), ("q", lambda_Q(n))):
            rep = validate(cm)
            results.append(
                CheckResult(
                    f"cube.minors.{label}",
                    f"n={n}",
                    rep.valid and rep.mod2_valid,
                    "" if rep.valid else f"failed at {rep.first_failure.label}",
                )
            )
    bad = CharacteristicMatrix(2, ((1, 0), (0, 1), (1, 1), (1, 1)))
    rep = validate(bad)
    rejected = (
        not rep.valid
        and rep.first_failure is not None
        and rep.first_failure.det == 0
        and rep.first_failure.facets == ("F'1", "F'2")
    )
    results.append(
        CheckResult("cube.invalid_example", "n=2", rejected, "" if rejected else repr(rep))
    )
    r = 1
    while 2**r <= n_max:
        n = 2**r
        same = lambda_Q(n) == lambda_MI(n)
        gb_match = (
            manifolds.family_model("q", n).t_presentation.gb
            == manifolds.family_model("mi", n).t_presentation.gb
        )
        results.append(
            CheckResult("cube.q_matches_mi_at_powers", f"n={n}", same and gb_match)
        )
        r += 1
    return results


def check_quotient(n_max: int, seed: int, samples: int = 40) -> list[CheckResult]:
    results = []
    rng = random.Random(seed)
    for n in range(1, min(n_max, 6) + 1):
        model = manifolds.family_model("mi", n)
        ring = model.u_presentation
        ok = all(ring.nf(rel).is_zero for rel in ring.relations)
        results.append(CheckResult("quotient.relations_vanish", f"n={n}", ok))
        ok = True
        detail = ""
        for _ in range(samples):
            p = _random_poly(rng, n, n + 1, 8)
            nf1 = ring.nf(p)
            if ring.nf(nf1) != nf1:
                ok, detail = False, "normal form is not idempotent"
                break
            if normal_form_random_path(p, ring.gb, rng) != nf1:
                ok, detail = False, "reduction path dependence"
                break
            q = _random_poly(rng, n, n + 1, 8)
            if ring.nf(p * q) != ring.nf(ring.nf(p) * ring.nf(q)):
                ok, detail = False, "homomorphism compatibility failed"
                break
        results.append(CheckResult("quotient.reduction_laws", f"n={n}", ok, detail))
    return results


def check_manifolds(n_max: int, seed: int) -> list[CheckResult]:
    results = []
    for n in range(1, n_max + 1):
        for family in ("mi", "q"):
            model = manifolds.family_model(family, n)
            results.append(
                CheckResult(f"manifolds.unit_identity.{family}", f"n={n}", model.unit_check())
            )
        model = manifolds.family_model("mi", n)
        tring = model.t_presentation
        uring = model.u_presentation
        ok = True
        for i in range(1, n + 1):
            ti = tring.gen(i - 1)
            expected = tring.one()
            for j in range(i):
                expected = expected * tring.gen(j)
            if tring.nf(ti**i) != tring.nf(expected) or tring.nf(ti**i).is_zero:
                ok = False
            if not tring.nf(ti ** (i + 1)).is_zero:
                ok = False
            ui = uring.gen(i - 1)
            if uring.nf(ui**i).is_zero or not uring.nf(ui ** (i + 1)).is_zero:
                ok = False
        results.append(CheckResult("manifolds.power_identities", f"n={n}", ok))
        expected_ranks = {2 * i: _binom(n, i) for i in range(n + 1)}
        ok = True
        for ring in filter(None, (model.u_presentation, model.t_presentation)):
            basis = ring.standard_basis(2 * n)
            if basis.ranks != expected_ranks or basis.total != 2**n:
                ok = False
        results.append(CheckResult("manifolds.rank_profile", f"n={n}", ok))
    for n in range(2, min(n_max, 8) + 1):
        model = manifolds.family_model("mi", n)
        ring = model.uv_presentation
        ok = True
        for i in range(2, n + 1):
            u_i = ring.gen(i - 1)
            v_i = ring.gen(n + i - 1)
            lhs = ring.nf((ring.one() + u_i) * (ring.one() + v_i))
            rhs = ring.one()
            for j in range(i - 1):
                rhs = rhs + ring.gen(j)
            if lhs != ring.nf(rhs):
                ok = False
        results.append(CheckResult("manifolds.uv_cancellation", f"n={n}", ok))
    for n in (2, 4, 8):
        if n > n_max:
            continue
        model = manifolds.family_model("mi", n)
        ring = model.t_presentation
        top = model.dual_sw().component(2 * n - 2)
        expected = ring.one()
        for i in range(n - 1):
            expected = expected * ring.gen(i)
        results.append(
            CheckResult(
                "manifolds.power_of_two_top_class",
                f"n={n}",
                top == ring.nf(expected) and len(top) == 1,
            )
        )
    for n in range(1, n_max + 1):
        model = manifolds.family_model("q", n)
        expected_deg = 2 * n - 2 * oracle.alpha(n)
        top_deg = model.top_dual_degree()
        component = model.dual_sw().component(top_deg)
        predicted = manifolds.predicted_q_top_monomial(model)
        ok = (
            top_deg == expected_deg
            and len(component) == 1
            and component == model.t_presentation.nf(predicted)
        )
        results.append(CheckResult("manifolds.q_top_class", f"n={n}", ok))
        report = model.skew_lower_bound()
        predicted_sw = 8 * n - 4 * oracle.alpha(n) + 1
        ok = report.sw_bound == predicted_sw and report.final == max(
            predicted_sw, report.generic_bound
        )
        results.append(CheckResult("manifolds.q_bound_formula", f"n={n}", ok))
    rng = random.Random(seed)
    customs_ok = True
    detail = ""
    for trial in range(10):
        n = rng.randrange(2, 7)
        cm = random_characteristic_matrix(n, rng)
        model = manifolds.build("custom", n, cm)
        if not model.unit_check():
            customs_ok, detail = False, f"unit identity failed on trial {trial}"
            break
        if model.u_presentation.standard_basis(2 * n).total != 2**n:
            customs_ok, detail = False, f"rank defect on trial {trial}"
            break
    results.append(CheckResult("manifolds.random_custom_models", "trials=10", customs_ok, detail))
    return results


def check_sigma(n_max: int, class_cap: int) -> list[CheckResult]:
    class_rows = {
        n: manifolds.sigma_from_class(n) for n in range(1, min(n_max, class_cap) + 1)
    }
    witnesses = oracle.cross_check_sigma(n_max, class_rows=class_rows)
    bad = oracle.disagreements(witnesses)
    detail = "" if not bad else f"first disagreement at (n={bad[0].n}, k={bad[0].k})"
    return [CheckResult("oracle.sigma_cross_check", f"n<={n_max}", not bad, detail)]


def check_oracle_tables() -> list[CheckResult]:
    ok = all(
        oracle.binom_parity(a, b) == oracle.binom_parity_bruteforce(a, b)
        for a in range(41)
        for b in range(a + 1)
    )
    results = [CheckResult("oracle.subset_rule_vs_pascal", "a<=40", ok)]
    rows = oracle.sigma_rows(20)
    ok = all(
        rows[n - 1][k] == oracle.binom_parity(n + k, k)
        for n in range(1, 21)
        for k in range(n)
    )
    results.append(CheckResult("oracle.sigma_vs_lucas", "n<=20", ok))
    ok = all(
        sum(oracle.alpha(g) for g in binary_groups(n)) == oracle.alpha(n)
        for n in range(1, 65)
    )
    results.append(CheckResult("oracle.alpha_additivity", "n<=64", ok))
    return results


def _binom(n: int, k: int) -> int:
    return math.comb(n, k)


def run_all(n_max: int, *, seed: int = 0, class_cap: int | None = None) -> list[CheckResult]:
    """Every invariant suite up to n_max, in deterministic order."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if class_cap is None:
        class_cap = n_max
    results: list[CheckResult] = []
    results.extend(check_poly_axioms(seed))
    results.extend(check_cube(n_max))
    results.extend(check_quotient(n_max, seed + 1))
    results.extend(check_manifolds(n_max, seed + 2))
    results.extend(check_sigma(max(n_max, 1), class_cap))
    results.extend(check_oracle_tables())
    return results
