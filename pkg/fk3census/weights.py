"""
Exact integer primitives for weight systems: gcd profiles, well-formedness of weighted projective spaces and of
weighted hypersurfaces, numerical semigroup membership, the gcd form of the "singular locus of dimension at most 1"
condition and the residue conditions of the FK3 census.

The `*_of` functions work on plain tuples of weights and are the ones the census sweeps call in their hot loops; the
public functions take a `WeightSystem`.
"""

import logging
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable

from fk3census.errors import InvalidArgumentError
from fk3census.models import WeightSystem
from fk3census.utils import gcd_of

logger = logging.getLogger(__name__)


def normalize_weight_system(ws: WeightSystem) -> WeightSystem:
    """
    Return a weight system of an isomorphic, well-formed weighted projective space: first divide all the weights by
    their overall gcd, then, while some index i has q = gcd(all weights except a_i) > 1, divide every weight except a_i
    by q. The degree is carried through unchanged.
    """
    weights = list(ws.weights)
    overall = gcd_of(weights)
    weights = [weight // overall for weight in weights]

    reduced = True
    while reduced:
        reduced = False
        for idx in range(len(weights)):
            quotient = gcd_of(weights[:idx] + weights[idx + 1 :])
            if quotient > 1:
                weights = [weight if other == idx else weight // quotient for other, weight in enumerate(weights)]
                reduced = True
    normalized = WeightSystem.of(weights, ws.degree)
    if normalized != ws:
        logger.debug("normalized %s to %s", ws, normalized)
    return normalized


def is_well_formed_space_of(weights: tuple[int, ...]) -> bool:
    for idx in range(len(weights)):
        if gcd_of(weights[:idx] + weights[idx + 1 :]) != 1:
            return False
    return True


def is_well_formed_space(ws: WeightSystem) -> bool:
    """
    True iff for every index i the gcd of all the weights except a_i equals 1.
    """
    return is_well_formed_space_of(ws.weights)


def is_well_formed_hypersurface_of(weights: tuple[int, ...], degree: int) -> bool:
    if not is_well_formed_space_of(weights):
        return False
    for left, right in combinations(range(len(weights)), 2):
        rest = [weight for idx, weight in enumerate(weights) if idx not in (left, right)]
        if rest and degree % gcd_of(rest) != 0:
            return False
    return True


def is_well_formed_hypersurface(ws: WeightSystem) -> bool:
    """
    True iff the space is well-formed and, for every pair i < j, the gcd of the weights with both a_i and a_j removed
    divides d. Works for any number of weights.
    """
    return is_well_formed_hypersurface_of(ws.weights, ws.degree)


@lru_cache(maxsize=65536)
def semigroup_table(generators: tuple[int, ...], bound: int) -> tuple[bool, ...]:
    """
    reachable[k] tells whether k is a nonnegative integer combination of the generators, for k = 0..bound.
    """
    reachable = [False] * (bound + 1)
    reachable[0] = True
    for generator in generators:
        for total in range(generator, bound + 1):
            if not reachable[total] and reachable[total - generator]:
                reachable[total] = True
    return tuple(reachable)


def semigroup_contains(target: int, generators: Iterable[int]) -> bool:
    """
    True iff `target` is a sum of the generators with nonnegative integer coefficients (zero coefficients allowed, so
    0 is always contained). Dynamic programming over 0..target.
    """
    generators = tuple(sorted(set(generators)))
    if not generators:
        raise InvalidArgumentError("a numerical semigroup needs at least one generator")
    if any(generator < 1 for generator in generators):
        raise InvalidArgumentError(f"semigroup generators must be positive, got {generators}")
    if target < 0:
        return False
    return semigroup_table(generators, target)[target]


def dim_sing_gcd_conditions_of(weights: tuple[int, ...], degree: int) -> bool:
    for quadruple in combinations(weights, 4):
        if gcd_of(quadruple) != 1:
            return False
    for triple in combinations(weights, 3):
        if degree % gcd_of(triple) != 0:
            return False
    return True


def dim_sing_gcd_conditions(ws: WeightSystem) -> bool:
    """
    The gcd encoding of "the singular locus of X_d has dimension at most 1" for a fourfold: every 4 weights are
    coprime and the gcd of every 3 weights divides d.
    """
    if ws.n_weights != 6:
        raise InvalidArgumentError(f"the singular locus conditions need 6 weights, got {ws}")
    return dim_sing_gcd_conditions_of(ws.weights, ws.degree)


def census_residue_conditions_of(weights: tuple[int, ...], degree: int) -> bool:
    for idx, weight in enumerate(weights):
        residue = degree % weight
        if residue and residue not in weights[:idx] + weights[idx + 1 :]:
            return False
    for left, right in combinations(range(len(weights)), 2):
        divisor = gcd(weights[left], weights[right])
        if degree % divisor == 0:
            continue
        witnesses = sum(
            1
            for other in range(len(weights))
            if other not in (left, right) and (degree - weights[other]) % divisor == 0
        )
        if witnesses < 2:
            return False
    return True


def census_residue_conditions(ws: WeightSystem) -> bool:
    """
    The residue conditions every family of the FK3 census satisfies on top of quasi-smoothness:

    - for every i, d mod a_i is 0 or literally equal to one of the other weights (not merely congruent to one);
    - for every pair i < j, gcd(a_i, a_j) divides d, or it divides d - a_k for two indices k outside of the pair.

    The first one is strictly stronger than the singleton case of the subset criterion, e.g. (1,1,3,4,5,6; d=10) is
    quasi-smooth but 10 mod 4 = 2 is not a weight.
    """
    return census_residue_conditions_of(ws.weights, ws.degree)


def canonical_degree(ws: WeightSystem) -> int:
    """
    The degree k with K_X = O_X(k) by adjunction (k = d - sum(a_i)); valid for well-formed quasi-smooth X.
    """
    return ws.degree - ws.weight_sum


def is_fano(ws: WeightSystem) -> bool:
    """
    The anticanonical class is ample, i.e. d < sum(a_i).
    """
    return canonical_degree(ws) < 0
