"""Independent count of digraphs (loops allowed) on n unlabeled vertices.

Burnside over the symmetric group acting on ordered pairs: a permutation with
cycle type ``λ`` fixes ``2^(Σ_{a,b} gcd(λ_a, λ_b))`` relations, and a cycle type
occurs ``n!/z_λ`` times. This routine shares nothing with the enumerator.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import factorial, gcd


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first, *rest)


def _z(lam: tuple[int, ...]) -> int:
    z = 1
    for part, mult in Counter(lam).items():
        z *= part**mult * factorial(mult)
    return z


def count_binary_relations(n: int) -> int:
    """Number of isomorphism types of digraphs with loops on ``n`` vertices."""
    total = Fraction(0)
    for lam in partitions(n):
        exponent = sum(gcd(a, b) for a in lam for b in lam)
        total += Fraction(2**exponent, _z(lam))
    assert total.denominator == 1
    return int(total)
