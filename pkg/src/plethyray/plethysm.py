"""Multiplicities of irreducibles in symmetric powers of symmetric powers.

The multiplicity of the irreducible labelled by a partition lam inside
S^d(S^k C^n) is computed as the alternating sum, over the Weyl group, of
dimensions of weight spaces:

    m = sum over w in S_n of  sgn(w) * dim weightspace(w(lam+rho) - rho)

and each weight-space dimension is the number of size-d multisets of degree-k
monomial contents with the prescribed coordinate sum.  For partitions with at
most n nonzero parts and n >= len(lam) this is the stable plethysm
coefficient.
"""

from __future__ import annotations

from .kernels import count_capped_multisets
from .partitions import (
    Partition,
    WeightVector,
    iter_nonnegative_signed_weights,
)


def inner_monomial_contents(k: int, n: int) -> list[WeightVector]:
    """Exponent vectors of the degree-k monomials in n variables, lex decreasing."""
    if n < 1:
        raise ValueError("need at least one variable")
    if k < 0:
        raise ValueError("degree must be nonnegative")

    def gen(rest: int, slots: int):
        if slots == 1:
            yield (rest,)
            return
        for first in range(rest, -1, -1):
            for tail in gen(rest - first, slots - 1):
                yield (first,) + tail

    return list(gen(k, n))


def _pair_weight_count(k: int, mu: WeightVector) -> int:
    """Multisets of two degree-k contents summing to mu (mu >= 0, |mu| = 2k).

    Ordered pairs (m, mu-m) are counted by a small per-coordinate DP, then
    folded to unordered pairs.
    """
    ways = [0] * (k + 1)
    ways[0] = 1
    for cap in mu:
        nxt = [0] * (k + 1)
        for partial, cnt in enumerate(ways):
            if cnt == 0:
                continue
            for take in range(0, min(cap, k - partial) + 1):
                nxt[partial + take] += cnt
        ways = nxt
    ordered = ways[k]
    diagonal = 1 if all(m % 2 == 0 for m in mu) else 0
    return (ordered + diagonal) // 2


def weight_count(d: int, k: int, n: int, mu: WeightVector, backend: str | None = None) -> int:
    """Dimension of the mu-weight space of S^d(S^k C^n).

    Negative entries or a wrong total simply give 0; the alternating Weyl sum
    relies on that convention.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    if len(mu) != n:
        raise ValueError(f"weight {mu} does not have length {n}")
    if d < 0 or k < 0:
        raise ValueError("d and k must be nonnegative")
    if any(m < 0 for m in mu) or sum(mu) != d * k:
        return 0
    if d == 0 or d == 1:
        return 1  # empty multiset, or mu itself is the single content
    if d == 2:
        return _pair_weight_count(k, mu)
    # One coordinate is redundant (contents all have total k); dropping the
    # largest cap keeps the DP table smallest.
    drop = max(range(n), key=lambda i: mu[i])
    caps = tuple(m for i, m in enumerate(mu) if i != drop)
    contents = [
        tuple(c for i, c in enumerate(mono) if i != drop)
        for mono in inner_monomial_contents(k, n)
    ]
    return count_capped_multisets(contents, d, caps, backend=backend)


def plethysm_multiplicity(d: int, k: int, lam: Partition, backend: str | None = None) -> int:
    """The multiplicity of S^lam in S^d(S^k); 0 whenever |lam| != d*k.

    The number of variables is the declared length of lam (including written
    zeros); padding lam with further zeros never changes the result.
    """
    if d < 1:
        raise ValueError("outer power d must be positive")
    if k < 0:
        raise ValueError("inner power k must be nonnegative")
    n = max(1, len(lam.parts))
    if lam.size != d * k:
        return 0
    memo: dict[tuple[int, ...], int] = {}
    total = 0
    for sign, weight in iter_nonnegative_signed_weights(lam, n):
        key = tuple(sorted(weight, reverse=True))
        cached = memo.get(key)
        if cached is None:
            # weight-space dimensions are symmetric in the coordinates
            cached = weight_count(d, k, n, weight, backend=backend)
            memo[key] = cached
        total += sign * cached
    if total < 0:
        raise AssertionError(
            f"alternating weight sum went negative for d={d}, k={k}, lam={lam}"
        )
    return total


def hermite_check(d: int, k: int, lam: Partition, backend: str | None = None) -> bool:
    """Whether m^{d,k}_lam equals m^{k,d}_lam (Hermite reciprocity)."""
    if d < 1 or k < 1:
        raise ValueError("hermite_check needs positive d and k")
    if lam.size != d * k:
        raise ValueError(f"|lam| = {lam.size} != d*k = {d * k}")
    n = max(d, k, len(lam.parts))
    padded = Partition(lam.padded(n))
    lhs = plethysm_multiplicity(d, k, padded, backend=backend)
    rhs = plethysm_multiplicity(k, d, padded, backend=backend)
    return lhs == rhs
