"""
Singularities of the general quasi-smooth weighted hypersurface X_d: the orbifold strata of the ambient space, their
relation to X_d, the transverse cyclic quotient types X_d inherits, the exact dimension of the singular locus, and the
Reid-Shepherd-Barron-Tai classification of the quotient types.

For every r > 1 that is the gcd of some of the weights, the stratum of period r is the locus where all the coordinates
of weight not divisible by r vanish; only the maximal index set I = {i : r | a_i} is used. Either the general
hypersurface contains the stratum (no monomial of degree d in the stratum variables exists), and then one tangent
variable drops out of the transverse type, or it cuts the stratum in codimension one.
"""
import logging
from math import gcd
from typing import Sequence

from fk3census.errors import InvalidArgumentError, NoTangentVariableError
from fk3census.models import QuotientType, SingClass, Stratum, WeightSystem
from fk3census.utils import gcd_of, subsets_by_size
from fk3census.weights import semigroup_contains

logger = logging.getLogger(__name__)


def enumerate_strata(ws: WeightSystem) -> tuple[Stratum, ...]:
    """
    One stratum per period r > 1 (increasing r), with the maximal index set I = {i : r | a_i} and the ambient
    transverse type 1/r(a_j mod r : j not in I). The relation to X is left unfilled.
    """
    periods = sorted(
        {gcd_of(ws.weights[idx] for idx in subset) for subset in subsets_by_size(ws.n_weights)} - {1}
    )
    strata = []
    for period in periods:
        indices = tuple(idx for idx, weight in enumerate(ws.weights) if weight % period == 0)
        residues = tuple(weight % period for idx, weight in enumerate(ws.weights) if idx not in indices)
        strata.append(
            Stratum(r=period, indices=indices, ambient_transverse=QuotientType(r=period, residues=residues))
        )
    return tuple(strata)


def stratum_relation(ws: WeightSystem, stratum: Stratum) -> Stratum:
    """
    Fill in how the general hypersurface meets the stratum:

    - contained (no degree d monomial in the stratum variables): the tangent variable is the smallest j outside of I
      with a_j = d (mod r) and a_j < d, the transverse type drops it, and the singular locus along the stratum has
      dimension |I| - 1;
    - not contained, |I| >= 2: X cuts the stratum transversely, the transverse type is the ambient one, dimension
      |I| - 2;
    - not contained, |I| = 1: the stratum is a point that X misses.
    """
    period, indices = stratum.r, stratum.indices
    outside = [idx for idx in range(ws.n_weights) if idx not in indices]
    # maximality of I
    assert all(ws.weights[idx] % period for idx in outside), f"stratum {indices} of {ws} is not maximal"

    contained = not semigroup_contains(ws.degree, (ws.weights[idx] for idx in indices))
    if contained:
        tangent_candidates = [
            idx
            for idx in outside
            if ws.weights[idx] % period == ws.degree % period and ws.weights[idx] < ws.degree
        ]
        if not tangent_candidates:
            raise NoTangentVariableError(
                "no tangent variable: general member not quasi-smooth along stratum",
                ws=ws.render(),
                r=period,
            )
        tangent_index = tangent_candidates[0]
        transverse = QuotientType(
            r=period, residues=tuple(ws.weights[idx] % period for idx in outside if idx != tangent_index)
        )
        filled = stratum.model_copy(
            update={
                "contained_in_x": True,
                "on_x": True,
                "tangent_index": tangent_index,
                "transverse": transverse,
                "locus_dim": len(indices) - 1,
            }
        )
    elif len(indices) >= 2:
        filled = stratum.model_copy(
            update={
                "contained_in_x": False,
                "on_x": True,
                "transverse": stratum.ambient_transverse,
                "locus_dim": len(indices) - 2,
            }
        )
    else:
        filled = stratum.model_copy(update={"contained_in_x": False, "on_x": False, "locus_dim": -1})

    if filled.meets_x:
        assert filled.locus_dim + len(filled.transverse.residues) == ws.n_weights - 2, "dimension bookkeeping broken"
    return filled


def fill_strata(ws: WeightSystem) -> tuple[Stratum, ...]:
    return tuple(stratum_relation(ws, stratum) for stratum in enumerate_strata(ws))


def reid_tai_sums(period: int, residues: Sequence[int], coprime_only: bool = False) -> tuple[int, ...]:
    """
    For k = 1..r-1 (only k coprime to r if `coprime_only`), the value sum_j (k c_j mod r). Each one is r times the sum
    of the fractional parts {k c_j / r}, so comparing it against r is an exact rational comparison.
    """
    return tuple(
        sum(k * residue % period for residue in residues)
        for k in range(1, period)
        if not coprime_only or gcd(k, period) == 1
    )


def reid_tai_classify(quotient: QuotientType, coprime_only: bool = False) -> SingClass:
    """
    Terminal iff every sum of fractional parts exceeds 1, canonical iff every sum is at least 1 (and one equals 1),
    klt otherwise (a cyclic quotient singularity is always klt). The range k = 1..r-1 is used unless `coprime_only`.
    """
    if not quotient.is_reduced:
        raise InvalidArgumentError(f"residues of {quotient.label} must lie in [1, {quotient.r - 1}]")
    if not quotient.is_well_formed:
        logger.warning("quotient singularity %s is not well-formed", quotient.label)

    sums = reid_tai_sums(quotient.r, quotient.residues, coprime_only=coprime_only)
    if all(total > quotient.r for total in sums):
        return SingClass.TERMINAL
    if all(total >= quotient.r for total in sums):
        return SingClass.CANONICAL
    return SingClass.KLT


def classify_strata(strata: Sequence[Stratum], coprime_only: bool = False) -> SingClass:
    """
    The worst class among the transverse types that actually occur on X (TERMINAL when there are none).
    """
    return SingClass.worst(
        reid_tai_classify(stratum.transverse, coprime_only=coprime_only) for stratum in strata if stratum.meets_x
    )


def singular_locus_dimension(ws: WeightSystem) -> int:
    """
    The exact dimension of the singular locus of the general X_d (-1 when X_d is smooth).
    """
    return max((stratum.locus_dim for stratum in fill_strata(ws)), default=-1)


def classify_hypersurface(ws: WeightSystem) -> tuple[SingClass, tuple[Stratum, ...]]:
    """
    Classify the singularities of the general X_d, returning the aggregate class together with the full strata report.
    """
    strata = fill_strata(ws)
    return classify_strata(strata), strata
