"""Independent combinatorial cross-checks for the class engine.

Everything here is deliberately disjoint from the polynomial/Groebner code
path: plain integer combinatorics only, so a defect in the main engine
cannot hide in its own oracle.  Class-derived parities enter only through
the ``class_rows`` argument of :func:`cross_check_sigma`, injected by the
caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

BRUTEFORCE_LIMIT = 64


def alpha(n: int) -> int:
    """Number of ones in the binary representation of n."""
    if n < 1:
        raise ValueError("n must be positive")
    return bin(n).count("1")


def binom_parity(a: int, b: int) -> int:
    """Parity of C(a, b) by the bitwise subset rule."""
    if not 0 <= b <= a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    return int(b & ~a == 0)


def binom_parity_bruteforce(a: int, b: int) -> int:
    """Parity of C(a, b) by Pascal-triangle accumulation mod 2, no bit tricks."""
    if a > BRUTEFORCE_LIMIT:
        raise ValueError(f"brute-force path is capped at a <= {BRUTEFORCE_LIMIT}")
    if not 0 <= b <= a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    row = [1]
    for _ in range(a):
        row = [1] + [(row[i] + row[i + 1]) % 2 for i in range(len(row) - 1)] + [1]
    return row[b]


def sigma_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """First n rows of the sigma parity table, row n' having entries k=0..n'-1.

    Row n'+1 comes from row n' by prefix sums mod 2, the last entry repeating
    its left neighbour.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rows = [(1,)]
    for _ in range(1, n):
        prev = rows[-1]
        nxt = []
        acc = 0
        for value in prev:
            acc ^= value
            nxt.append(acc)
        nxt.append(nxt[-1])
        rows.append(tuple(nxt))
    return tuple(rows)


@dataclass(frozen=True)
class ParityWitness:
    """One (n, k) cell checked by every available method."""

    n: int
    k: int
    recurrence_value: int
    lucas_value: int
    bruteforce_value: int | None
    class_value: int | None = None

    @property
    def agree(self) -> bool:
        values = {self.recurrence_value, self.lucas_value}
        if self.bruteforce_value is not None:
            values.add(self.bruteforce_value)
        if self.class_value is not None:
            values.add(self.class_value)
        return len(values) == 1


def cross_check_sigma(
    n_max: int,
    class_rows: Mapping[int, Sequence[int]] | None = None,
) -> list[ParityWitness]:
    """Witnesses for all n <= n_max, k <= n-1.

    ``class_rows`` optionally maps n to the parity row obtained from the
    computed dual classes; rows are compared where present.  The brute-force
    value is included whenever n+k fits its cap.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    rows = sigma_rows(n_max)
    witnesses = []
    for n in range(1, n_max + 1):
        injected = class_rows.get(n) if class_rows else None
        if injected is not None and len(injected) != n:
            raise ValueError(f"class row for n={n} must have {n} entries")
        for k in range(n):
            brute = (
                binom_parity_bruteforce(n + k, k)
                if n + k <= BRUTEFORCE_LIMIT
                else None
            )
            witnesses.append(
                ParityWitness(
                    n=n,
                    k=k,
                    recurrence_value=rows[n - 1][k],
                    lucas_value=binom_parity(n + k, k),
                    bruteforce_value=brute,
                    class_value=None if injected is None else int(injected[k]),
                )
            )
    return witnesses


def disagreements(witnesses: Sequence[ParityWitness]) -> list[ParityWitness]:
    return [w for w in witnesses if not w.agree]
