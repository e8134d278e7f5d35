"""
Quasi-smoothness (and not being a linear cone) of the general weighted hypersurface, decided by the subset criterion:
d != a_i for every i, and every nonempty index set I either

1. has d in the numerical semigroup generated by {a_i : i in I}, or
2. has at least |I| indices j outside of I with d - a_j in that semigroup.

Nothing here ever builds a polynomial, every decision is about the general member of the family.
"""
import logging
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

from fk3census.errors import InvalidArgumentError
from fk3census.models import QuasiSmoothVerdict, SubsetBranch, SubsetVerdict, WeightSystem
from fk3census.utils import subsets_by_size
from fk3census.weights import semigroup_table

logger = logging.getLogger(__name__)


@lru_cache(maxsize=16)
def ordered_subsets(n: int) -> tuple[tuple[int, ...], ...]:
    """
    All nonempty subsets of {0..n-1}, by size and then lexicographically (63 of them for 6 weights).
    """
    return tuple(subsets_by_size(n))


def _evaluate_subset(weights: tuple[int, ...], degree: int, subset: tuple[int, ...]) -> SubsetVerdict:
    table = semigroup_table(tuple(sorted({weights[idx] for idx in subset})), degree)
    if table[degree]:
        return SubsetVerdict(subset=subset, branch=SubsetBranch.DEGREE_REPRESENTABLE)

    witnesses = tuple(
        idx for idx, weight in enumerate(weights) if idx not in subset and weight <= degree and table[degree - weight]
    )
    if len(witnesses) >= len(subset):
        return SubsetVerdict(subset=subset, branch=SubsetBranch.TANGENT_INDICES, tangent_indices=witnesses)
    return SubsetVerdict(subset=subset, branch=SubsetBranch.FAILS)


def _subset_passes(weights: tuple[int, ...], degree: int, subset: tuple[int, ...]) -> bool:
    table = semigroup_table(tuple(sorted({weights[idx] for idx in subset})), degree)
    if table[degree]:
        return True
    needed = len(subset)
    for idx, weight in enumerate(weights):
        if idx not in subset and weight <= degree and table[degree - weight]:
            needed -= 1
            if needed == 0:
                return True
    return False


def subset_condition(ws: WeightSystem, subset: Iterable[int]) -> SubsetVerdict:
    """
    Evaluate the subset criterion for a single nonempty index set: branch 1 (d representable by the weights of the
    set), else branch 2 (at least |I| indices j outside of the set with d - a_j representable; distinct indices are
    counted, not distinct values), else FAILS. The witnessing indices of branch 2 are part of the verdict.
    """
    subset = tuple(sorted(subset))
    if not subset:
        raise InvalidArgumentError("the index set must not be empty")
    if len(set(subset)) != len(subset) or subset[0] < 0 or subset[-1] >= ws.n_weights:
        raise InvalidArgumentError(f"invalid index set {subset} for {ws.n_weights} weights")
    return _evaluate_subset(ws.weights, ws.degree, subset)


def linear_cone_index_of(weights: tuple[int, ...], degree: int) -> Optional[int]:
    for idx, weight in enumerate(weights):
        if weight == degree:
            return idx
    return None


def first_failing_subset_of(weights: tuple[int, ...], degree: int) -> Optional[tuple[int, ...]]:
    """
    The first index set (by size, then lexicographically) that fails the subset criterion, or None.
    """
    for subset in ordered_subsets(len(weights)):
        if not _subset_passes(weights, degree, subset):
            return subset
    return None


def is_quasi_smooth_not_cone_of(weights: tuple[int, ...], degree: int) -> bool:
    return linear_cone_index_of(weights, degree) is None and first_failing_subset_of(weights, degree) is None


def is_quasi_smooth_not_cone(ws: WeightSystem) -> QuasiSmoothVerdict:
    """
    Decide whether the general hypersurface is quasi-smooth and not a linear cone. The verdict is truthy on success;
    on failure it carries the witness (the index with d = a_i, or the first failing index set).
    """
    cone_index = linear_cone_index_of(ws.weights, ws.degree)
    if cone_index is not None:
        logger.debug("%s is a linear cone (d = a%s)", ws, cone_index)
        return QuasiSmoothVerdict(is_quasi_smooth=False, linear_cone_index=cone_index)

    failing = first_failing_subset_of(ws.weights, ws.degree)
    if failing is not None:
        logger.debug("%s fails the subset criterion at %s", ws, failing)
        return QuasiSmoothVerdict(
            is_quasi_smooth=False, failing_subset=_evaluate_subset(ws.weights, ws.degree, failing)
        )

    # the criterion forces d > a_i for all i
    assert all(weight < ws.degree for weight in ws.weights), f"quasi-smooth {ws} has a weight above the degree"
    return QuasiSmoothVerdict(is_quasi_smooth=True)


def passes_singleton_and_pair_prefilter(weights: tuple[int, ...], degree: int) -> bool:
    """
    A cheap necessary condition for the subset criterion, in modular form: every singleton {i} needs d = 0 or
    d = a_j (mod a_i) for some j != i with a_j <= d, and every pair {i, j} needs gcd(a_i, a_j) | d or two indices k
    outside of the pair with gcd(a_i, a_j) | d - a_k. Used to prune sweeps; the full criterion always decides.
    """
    n = len(weights)
    for idx, weight in enumerate(weights):
        if degree % weight and not any(
            other != idx and weights[other] <= degree and (degree - weights[other]) % weight == 0 for other in range(n)
        ):
            return False
    for left in range(n):
        for right in range(left + 1, n):
            divisor = gcd(weights[left], weights[right])
            if divisor == 1 or degree % divisor == 0:
                continue
            witnesses = sum(
                1
                for other in range(n)
                if other not in (left, right)
                and weights[other] <= degree
                and (degree - weights[other]) % divisor == 0
            )
            if witnesses < 2:
                return False
    return True
