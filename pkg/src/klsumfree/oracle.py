"""Ground truth by exhaustive search.

The subset search walks the tree of (k,l)-sum-free sets in element-index
order.  Sum-freeness is hereditary (any subset of a sum-free set is
sum-free), so each node passes its children only the candidates that
stayed individually addable; the maximum search additionally prunes a
branch when the current size plus the surviving candidates cannot beat the
best known size, seeded with the constructive witness.  State per node is
the tower of sumset layers 1A, 2A, ..., kA, updated incrementally when an
element is added.

Progression maxima (alpha/beta/gamma) do not enumerate subsets at all: for
a progression with difference q and start a, the difference set kA - lA is
{(k-l)a + i*q : -l*c <= i <= k*c}, so the largest safe c falls out of a
congruence in O(1) per (a, q) pair, vectorized over a.

Searches are deterministic and sequential; callers that want parallelism
can fan out across instances, every function here being pure.
"""

from __future__ import annotations

import functools
import time
from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional

import numpy as np

from .abelian import GroupSpec, translation_ops
from .formulas import KLParams
from .sumset import Subset
from .witness import best_witness

__all__ = [
    "SearchResult",
    "CountResult",
    "LimitExceededError",
    "DEFAULT_LIMIT_EXACT",
    "DEFAULT_LIMIT_COUNT",
    "DEFAULT_LIMIT_AP",
    "lambda_exact",
    "count_sum_free",
    "enumerate_maximum",
    "alpha_exact",
    "beta_exact",
    "gamma_exact",
]

DEFAULT_LIMIT_EXACT = 40
DEFAULT_LIMIT_COUNT = 28
DEFAULT_LIMIT_AP = 2000


class LimitExceededError(RuntimeError):
    """The instance exceeds the configured desk-scale search limit."""


def _check_limit(n: int, limit: Optional[int], default: int, force: bool, what: str):
    if force:
        return
    lim = default if limit is None else limit
    if n > lim:
        raise LimitExceededError(
            f"{what} limited to order {lim} (requested {n}); "
            "raise the limit or pass force=True"
        )


@dataclass(frozen=True)
class SearchResult:
    """Exact maximum with one witness set and search-effort counters."""

    max_size: int
    witness: Subset
    nodes_explored: int
    elapsed: float


@dataclass(frozen=True)
class CountResult:
    """Exact number of (k,l)-sum-free subsets, split by size."""

    total: int
    by_size: dict[int, int]


def _make_extend(g: GroupSpec, k: int):
    """extend(layers, x): sumset layers of A + {x} from those of A.

    layers[j] is the bitmask of jA (layers[0] = {0}); the new j-th layer is
    layers[j] union (new (j-1)-th layer translated by x).
    """
    ops_table = translation_ops(g)

    def extend(layers, x):
        ops = ops_table[x]
        out = [1]
        prev = 1
        for j in range(1, k + 1):
            b = prev
            for m_low, up, m_high, down in ops:
                b = ((b & m_low) << up) | ((b & m_high) >> down)
            prev = layers[j] | b
            out.append(prev)
        return out

    return extend


def _root_candidates(g: GroupSpec, k: int, l: int, extend):
    layers0 = [1] + [0] * k
    feas = []
    for x in range(g.n):
        lx = extend(layers0, x)
        if not lx[k] & lx[l]:
            feas.append((x, lx))
    return feas


def _search_max(
    g: GroupSpec,
    k: int,
    l: int,
    seed: tuple[int, ...],
    progress: Optional[Callable[[int, int, int], None]],
    progress_interval: int = 65536,
) -> tuple[int, tuple[int, ...], int]:
    extend = _make_extend(g, k)
    nodes = 1  # the empty set
    best = len(seed)
    best_set = seed

    def dfs(feas, depth, chosen):
        nonlocal nodes, best, best_set
        for i, (x, lx) in enumerate(feas):
            nodes += 1
            d1 = depth + 1
            ch = chosen + (x,)
            if d1 > best:
                best, best_set = d1, ch
            if progress is not None and nodes % progress_interval == 0:
                progress(nodes, d1, best)
            child = []
            for j in range(i + 1, len(feas)):
                y = feas[j][0]
                ly = extend(lx, y)
                if not ly[k] & ly[l]:
                    child.append((y, ly))
            if child and d1 + len(child) > best:
                dfs(child, d1, ch)

    root = _root_candidates(g, k, l, extend)
    if len(root) > best:
        dfs(root, 0, ())
    return best, best_set, nodes


_EXACT_CACHE: dict[tuple, tuple[int, tuple[int, ...], int]] = {}


def lambda_exact(
    g: GroupSpec,
    kl: KLParams,
    limit: Optional[int] = None,
    force: bool = False,
    progress: Optional[Callable[[int, int, int], None]] = None,
    progress_interval: int = 65536,
) -> SearchResult:
    """Exact maximum size of a (k,l)-sum-free subset of g, with a witness.

    Branch-and-bound over index-ordered subsets, seeded with the
    constructive witness so the search mostly has to refute one size up.
    progress, when given, is called as progress(nodes, depth, best) every
    progress_interval visited nodes.
    """
    _check_limit(g.n, limit, DEFAULT_LIMIT_EXACT, force, "exact search")
    t0 = time.perf_counter()
    key = (g.factors, kl.k, kl.l)
    hit = _EXACT_CACHE.get(key)
    if hit is None:
        seed = best_witness(g, kl)
        hit = _search_max(
            g, kl.k, kl.l, tuple(seed.members.indices()), progress, progress_interval
        )
        _EXACT_CACHE[key] = hit
    size, indices, nodes = hit
    return SearchResult(
        max_size=size,
        witness=Subset.from_indices(g, indices),
        nodes_explored=nodes,
        elapsed=time.perf_counter() - t0,
    )


_COUNT_CACHE: dict[tuple, CountResult] = {}


def count_sum_free(
    g: GroupSpec,
    kl: KLParams,
    limit: Optional[int] = None,
    force: bool = False,
) -> CountResult:
    """Exact count of all (k,l)-sum-free subsets of g, split by size.

    The family is downward-closed, so the candidate-passing tree visits
    each sum-free set exactly once; counts are exact big integers.
    """
    _check_limit(g.n, limit, DEFAULT_LIMIT_COUNT, force, "subset counting")
    key = (g.factors, kl.k, kl.l)
    hit = _COUNT_CACHE.get(key)
    if hit is not None:
        return hit
    k, l = kl.k, kl.l
    extend = _make_extend(g, k)
    by_size: dict[int, int] = defaultdict(int)
    by_size[0] = 1

    def dfs(feas, depth):
        d1 = depth + 1
        by_size[d1] += len(feas)
        for i, (x, lx) in enumerate(feas):
            child = []
            for j in range(i + 1, len(feas)):
                y = feas[j][0]
                ly = extend(lx, y)
                if not ly[k] & ly[l]:
                    child.append((y, ly))
            if child:
                dfs(child, d1)

    root = _root_candidates(g, k, l, extend)
    if root:
        dfs(root, 0)
    result = CountResult(total=sum(by_size.values()), by_size=dict(sorted(by_size.items())))
    _COUNT_CACHE[key] = result
    return result


def enumerate_maximum(
    g: GroupSpec,
    kl: KLParams,
    limit: Optional[int] = None,
    force: bool = False,
) -> list[Subset]:
    """All (k,l)-sum-free subsets of maximum size, in lexicographic
    index order.  For the degenerate maximum 0 this is just the empty set.
    """
    _check_limit(g.n, limit, DEFAULT_LIMIT_EXACT, force, "maximum enumeration")
    lam = lambda_exact(g, kl, limit=limit, force=force).max_size
    if lam == 0:
        return [Subset.empty(g)]
    k, l = kl.k, kl.l
    extend = _make_extend(g, k)
    found: list[tuple[int, ...]] = []

    def dfs(feas, depth, chosen):
        for i, (x, lx) in enumerate(feas):
            d1 = depth + 1
            ch = chosen + (x,)
            if d1 == lam:
                found.append(ch)
                continue
            child = []
            for j in range(i + 1, len(feas)):
                y = feas[j][0]
                ly = extend(lx, y)
                if not ly[k] & ly[l]:
                    child.append((y, ly))
            if child and d1 + len(child) >= lam:
                dfs(child, d1, ch)

    root = _root_candidates(g, k, l, extend)
    if len(root) >= lam:
        dfs(root, 0, ())
    return [Subset.from_indices(g, ch) for ch in found]


# ---------------------------------------------------------------------------
# exact progression maxima

@functools.lru_cache(maxsize=None)
def _ap_maxima(n: int, k: int, l: int) -> tuple[int, int, int]:
    """(alpha, beta, gamma): longest (k,l)-sum-free progression in Z_n,
    overall / difference sharing a factor with n / difference coprime to n.

    For difference q with g = gcd(q, n) and period N = n/g, a progression
    from a is safe at length c+1 iff no solution i of i*q = -(k-l)a (mod n)
    lies in [-l*c, k*c]; the nearest solutions give the cutoff directly.
    Difference 0 contributes the singletons (classified with beta since
    gcd(0, n) = n).
    """
    if n == 1:
        return (0, 0, 0)
    a = np.arange(n, dtype=np.int64)
    r = (-(k - l) * a) % n
    alpha = beta = gamma = 0
    for q in range(n):
        g0 = gcd(q, n)
        if g0 == 1:
            i0 = (r * pow(q, -1, n)) % n
            sizes = np.minimum(np.minimum((i0 + k - 1) // k, (n - i0 + l - 1) // l), n)
        else:
            period = n // g0
            solvable = r % g0 == 0
            if period == 1:
                sizes = np.where(solvable, 0, 1)
            else:
                inv = pow((q // g0) % period, -1, period)
                i0 = ((r // g0) * inv) % period
                cutoff = np.minimum((i0 + k - 1) // k, (period - i0 + l - 1) // l)
                sizes = np.where(solvable, np.minimum(cutoff, period), period)
        m = int(sizes.max())
        alpha = max(alpha, m)
        if g0 == 1:
            gamma = max(gamma, m)
        else:
            beta = max(beta, m)
    return alpha, beta, gamma


def _ap_value(n: int, kl: KLParams, which: int, limit, force) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _check_limit(n, limit, DEFAULT_LIMIT_AP, force, "progression search")
    return _ap_maxima(n, kl.k, kl.l)[which]


def alpha_exact(n: int, kl: KLParams, limit: Optional[int] = None, force: bool = False) -> int:
    """Longest (k,l)-sum-free arithmetic progression in Z_n, any difference.

    n = 1 is allowed (and 0) so divisor sweeps can include the trivial
    quotient.
    """
    return _ap_value(n, kl, 0, limit, force)


def beta_exact(n: int, kl: KLParams, limit: Optional[int] = None, force: bool = False) -> int:
    """Longest such progression whose difference shares a factor with n."""
    return _ap_value(n, kl, 1, limit, force)


def gamma_exact(n: int, kl: KLParams, limit: Optional[int] = None, force: bool = False) -> int:
    """Longest such progression whose difference is coprime to n."""
    return _ap_value(n, kl, 2, limit, force)
