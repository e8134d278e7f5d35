"""
The census pipelines: weighted K3 surfaces, FK3 fourfolds with a singular locus of dimension at most 1 (built from the
K3 surfaces), the brute force sweep that cross-checks them, the two cyclic families with a singular locus of dimension
2, and the per-family analysis records.

A fourfold X_d in P(a_0..a_5) is a candidate iff

1. it is a well-formed hypersurface,
2. a_i < d for every i,
3. sum(a_i) = 2d,
4. it is quasi-smooth and not a linear cone,
5. its singular locus has dimension at most 1 (in the gcd form),
6. it satisfies the residue conditions of the census (`census_residue_conditions`).

Conditions 5 and 6 only bound the census sweeps, a single family is analyzed as soon as it passes 1 to 4.
"""
import asyncio
import logging
from typing import Iterator, Optional, Sequence

from fk3census.config import CensusConfig
from fk3census.errors import ConditionFailedError, CrossCheckError, InvalidArgumentError
from fk3census.hodge import (
    hodge_correspondence_holds,
    is_fano_k3_numerics,
    primitive_middle_hodge,
    series_is_palindromic,
)
from fk3census.models import (
    DelPezzoData,
    FamilyRecord,
    FamilyTag,
    K3Association,
    K3Record,
    Rationality,
    SingClass,
    WeightSystem,
    sort_tags,
)
from fk3census.quasismooth import (
    is_quasi_smooth_not_cone,
    is_quasi_smooth_not_cone_of,
    passes_singleton_and_pair_prefilter,
)
from fk3census.singularity import classify_hypersurface, classify_strata
from fk3census.storage.families import FamilyStore
from fk3census.storage.families_impl import InMemoryFamilyStore
from fk3census.typing import CandidateFilter, Weights
from fk3census.utils import amap_jobs
from fk3census.weights import (
    canonical_degree,
    census_residue_conditions_of,
    dim_sing_gcd_conditions_of,
    is_well_formed_hypersurface,
    is_well_formed_hypersurface_of,
)

logger = logging.getLogger(__name__)

CUBIC_FOURFOLD = WeightSystem(weights=(1, 1, 1, 1, 1, 1), degree=3)


def _weights_below_degree(weights: Weights, degree: int) -> bool:
    return weights[-1] < degree


def _has_k3_type_sum(weights: Weights, degree: int) -> bool:
    return len(weights) % 2 == 0 and sum(weights) == degree * (len(weights) // 2 - 1)


FAMILY_CONDITIONS: tuple[tuple[str, CandidateFilter], ...] = (
    ("well_formed", is_well_formed_hypersurface_of),
    ("weights_below_degree", _weights_below_degree),
    ("k3_type", _has_k3_type_sum),
    ("quasi_smooth", is_quasi_smooth_not_cone_of),
)
DIM_SING_CONDITION: tuple[str, CandidateFilter] = ("dim_sing", dim_sing_gcd_conditions_of)
RESIDUE_CONDITION: tuple[str, CandidateFilter] = ("census_residues", census_residue_conditions_of)


def condition_report(ws: WeightSystem) -> list[tuple[str, bool]]:
    """
    Every condition a family is subject to, in order, with its outcome. The singular locus and the residue conditions
    are only part of the report for fourfolds.
    """
    conditions = FAMILY_CONDITIONS + ((DIM_SING_CONDITION, RESIDUE_CONDITION) if ws.n_weights == 6 else ())
    return [(name, condition(ws.weights, ws.degree)) for name, condition in conditions]


def _raise_on_failed_condition(ws: WeightSystem) -> None:
    for name, condition in FAMILY_CONDITIONS:
        if not condition(ws.weights, ws.degree):
            raise ConditionFailedError(f"{ws} violates the condition {name!r}", condition=name)


def _passes_fourfold_conditions(weights: Weights, degree: int, dim_sing: bool = True) -> bool:
    # cheapest first
    if not _weights_below_degree(weights, degree) or not _has_k3_type_sum(weights, degree):
        return False
    if not census_residue_conditions_of(weights, degree):
        return False
    if dim_sing and not dim_sing_gcd_conditions_of(weights, degree):
        return False
    return is_well_formed_hypersurface_of(weights, degree) and is_quasi_smooth_not_cone_of(weights, degree)


def nondecreasing_tuples(count: int, total: int, low: int, high: int) -> Iterator[Weights]:
    """
    Yield every nondecreasing tuple of `count` integers in [low, high] that sums up to `total`, in lexicographic
    order.
    """
    if count == 0:
        if total == 0:
            yield ()
        return
    if count == 1:
        if low <= total <= high:
            yield (total,)
        return
    for first in range(low, min(high, total // count) + 1):
        rest = total - first
        if rest > (count - 1) * high:
            continue
        for tail in nondecreasing_tuples(count - 1, rest, first, high):
            yield (first,) + tail


def _k3_surfaces_of_degree(degree: int) -> list[Weights]:
    return [
        weights
        for weights in nondecreasing_tuples(4, degree, 1, degree - 1)
        if passes_singleton_and_pair_prefilter(weights, degree)
        and is_well_formed_hypersurface_of(weights, degree)
        and is_quasi_smooth_not_cone_of(weights, degree)
    ]


async def aenumerate_k3_surfaces(config: Optional[CensusConfig] = None) -> list[WeightSystem]:
    """
    Sweep all sorted 4-tuples with sum(a_i) = d for d up to the configured bound and keep the well-formed, quasi-smooth
    hypersurfaces that are not linear cones. A surface above the expected maximum degree is a cross-check failure.
    """
    config = config or CensusConfig()
    degrees = list(range(4, config.k3_degree_bound + 1))
    per_degree = await amap_jobs(_k3_surfaces_of_degree, degrees, jobs=config.jobs)

    surfaces = [
        WeightSystem(weights=weights, degree=degree)
        for degree, found in zip(degrees, per_degree)
        for weights in found
    ]
    surfaces.sort(key=lambda ws: ws.sort_key)

    max_degree = max((ws.degree for ws in surfaces), default=0)
    if config.k3_degree_bound <= config.expected_k3_max_degree:
        logger.warning(
            "K3 degree bound %s does not exceed the expected maximum degree %s, stabilization is not confirmed",
            config.k3_degree_bound,
            config.expected_k3_max_degree,
        )
    elif max_degree > config.expected_k3_max_degree:
        raise CrossCheckError(
            f"K3 census did not stabilize: a surface of degree {max_degree} exists",
            check="k3_stabilization",
            expected_max_degree=config.expected_k3_max_degree,
        )
    logger.info("K3 census: %s surfaces, maximum degree %s", len(surfaces), max_degree)
    return surfaces


def enumerate_k3_surfaces(config: Optional[CensusConfig] = None) -> list[WeightSystem]:
    return asyncio.run(aenumerate_k3_surfaces(config))


def analyze_k3(ws: WeightSystem) -> K3Record:
    """
    Hodge row and singularities of a weighted K3 surface.
    """
    if ws.n_weights != 4:
        raise InvalidArgumentError(f"a K3 surface needs 4 weights, got {ws}")
    _raise_on_failed_condition(ws)
    sing_class, strata = classify_hypersurface(ws)
    return K3Record(
        ws=ws,
        hodge=primitive_middle_hodge(ws),
        sing_dim=max((stratum.locus_dim for stratum in strata), default=-1),
        sing_class=sing_class,
        strata=strata,
    )


async def aenumerate_k3_records(config: Optional[CensusConfig] = None) -> list[K3Record]:
    config = config or CensusConfig()
    surfaces = await aenumerate_k3_surfaces(config)
    return await amap_jobs(analyze_k3, surfaces, jobs=config.jobs)


def enumerate_k3_records(config: Optional[CensusConfig] = None) -> list[K3Record]:
    return asyncio.run(aenumerate_k3_records(config))


def fourfolds_from_k3(k3: WeightSystem) -> list[WeightSystem]:
    """
    For every partition d = s + t with 1 <= s <= t, add the weights s and t to the K3 weights and keep the fourfolds
    that pass all five conditions.
    """
    if k3.n_weights != 4:
        raise InvalidArgumentError(f"a K3 surface needs 4 weights, got {k3}")
    fourfolds = []
    for small in range(1, k3.degree // 2 + 1):
        weights = tuple(sorted(k3.weights + (small, k3.degree - small)))
        if _passes_fourfold_conditions(weights, k3.degree):
            fourfolds.append(WeightSystem(weights=weights, degree=k3.degree))
        else:
            logger.debug("partition %s + %s of %s rejected", small, k3.degree - small, k3)
    return fourfolds


def associate_k3(ws: WeightSystem) -> Optional[K3Association]:
    """
    The K3 surface over {a_0..a_4} minus a_i for the smallest i with a_i + a_5 = d. None for the cubic (a_5 = 1) and
    for families without such a pair. Every family with a singular locus of dimension at most 1 has one, so a missing
    association there is logged as an error (and fails the verification of the census).
    """
    if ws.n_weights != 6:
        raise InvalidArgumentError(f"the K3 association needs 6 weights, got {ws}")
    last = ws.weights[5]
    if last == 1:
        return None

    dim_sing = dim_sing_gcd_conditions_of(ws.weights, ws.degree)
    index = next((idx for idx in range(5) if ws.weights[idx] + last == ws.degree), None)
    if index is None:
        if dim_sing:
            logger.error("no index i with a_i + a_5 = d for %s although its singular locus is small", ws)
        return None

    k3 = ws.without(index, 5)
    if not (is_quasi_smooth_not_cone(k3) and is_well_formed_hypersurface(k3)):
        log = logger.error if dim_sing else logger.warning
        log("the surface %s associated with %s is not a quasi-smooth well-formed K3", k3, ws)
        return None

    double_cover_base = None
    if 2 * last == ws.degree and ws.weights[4] == last:
        double_cover_base = ws.without(4, 5)
    return K3Association(index=index, k3=k3, double_cover_base=double_cover_base)


def _del_pezzo_data(ws: WeightSystem) -> DelPezzoData:
    surface = ws.without(4, 5)
    return DelPezzoData(
        surface=surface,
        canonical_degree=canonical_degree(surface),
        well_formed=is_well_formed_hypersurface(surface),
        quasi_smooth=bool(is_quasi_smooth_not_cone(surface)),
    )


def analyze_family(ws: WeightSystem) -> FamilyRecord:
    """
    Assemble the full record of a fourfold that satisfies conditions 1 to 4: Hodge row, singularities, K3 association,
    structural tags and the rationality flag.
    """
    if ws.n_weights != 6:
        raise InvalidArgumentError(f"a fourfold needs 6 weights, got {ws}")
    _raise_on_failed_condition(ws)

    sing_class, strata = classify_hypersurface(ws)
    sing_dim = max((stratum.locus_dim for stratum in strata), default=-1)
    if (sing_dim <= 1) != dim_sing_gcd_conditions_of(ws.weights, ws.degree):
        logger.warning("singular locus of %s has dimension %s, the gcd conditions disagree", ws, sing_dim)

    association = associate_k3(ws)
    last, degree = ws.weights[5], ws.degree
    tags = []
    if all(weight == 1 for weight in ws.weights):
        tags.append(FamilyTag.CUBIC)
    if association is not None:
        tags.append(FamilyTag.LINEAR_IN_LAST_VARIABLE)
    if 2 * last == degree and ws.weights[4] == last:
        tags.append(FamilyTag.DOUBLE_SUSPENSION)
    cyclic = 2 * last == degree and 3 * ws.weights[4] == degree
    if cyclic:
        tags.append(FamilyTag.CYCLIC_DEL_PEZZO)
    coprime_class = classify_strata(strata, coprime_only=True)
    if coprime_class != sing_class:
        logger.warning(
            "Reid-Tai classification of %s depends on the range of k: %s (all k) vs %s (k coprime to r)",
            ws,
            sing_class.value,
            coprime_class.value,
        )
        tags.append(FamilyTag.REID_TAI_DIVERGENT)

    if FamilyTag.CUBIC in tags:
        rationality = Rationality.CONJECTURAL_CUBIC
    elif association is not None:
        rationality = Rationality.RATIONAL
    else:
        rationality = Rationality.UNKNOWN

    return FamilyRecord(
        ws=ws,
        fk3=is_fano_k3_numerics(ws),
        hodge=primitive_middle_hodge(ws),
        sing_dim=sing_dim,
        sing_class=sing_class,
        strata=strata,
        association=association,
        rationality=rationality,
        tags=sort_tags(tags),
        del_pezzo=_del_pezzo_data(ws) if cyclic else None,
    )


async def aanalyze_families(
    candidates: Sequence[WeightSystem], store: FamilyStore, jobs: int = 1
) -> list[FamilyRecord]:
    """
    Analyze the candidates that are not in the store yet, store them, and return the records of all the (distinct)
    candidates sorted by (d, weights).
    """
    unique = list(dict.fromkeys(candidates))
    fresh = [ws for ws in unique if not await store.acontains_family(ws)]
    for record in await amap_jobs(analyze_family, fresh, jobs=jobs):
        await store.astore_family(record)
    records = [await store.aretrieve_family(ws) for ws in unique]
    records.sort(key=lambda record: record.ws.sort_key)
    return records


def _fourfolds_from_k3_weights(k3: tuple[Weights, int]) -> list[Weights]:
    weights, degree = k3
    return [ws.weights for ws in fourfolds_from_k3(WeightSystem(weights=weights, degree=degree))]


async def aenumerate_fk3_fourfolds(
    config: Optional[CensusConfig] = None,
    store: Optional[FamilyStore] = None,
    k3_surfaces: Optional[Sequence[WeightSystem]] = None,
) -> list[FamilyRecord]:
    """
    Every fourfold obtained from a K3 surface of the census through a partition of its degree, plus the cubic (which
    no K3 surface produces), deduplicated and analyzed.
    """
    config = config or CensusConfig()
    store = store or InMemoryFamilyStore()
    if k3_surfaces is None:
        k3_surfaces = await aenumerate_k3_surfaces(config)

    per_k3 = await amap_jobs(
        _fourfolds_from_k3_weights, [(k3.weights, k3.degree) for k3 in k3_surfaces], jobs=config.jobs
    )
    candidates = [CUBIC_FOURFOLD] + [
        WeightSystem(weights=weights, degree=k3.degree) for k3, found in zip(k3_surfaces, per_k3) for weights in found
    ]
    records = await aanalyze_families(candidates, store, jobs=config.jobs)
    logger.info(
        "FK3 census: %s candidates from %s K3 surfaces, %s families (%s terminal)",
        len(candidates),
        len(k3_surfaces),
        len(records),
        sum(1 for record in records if record.is_terminal),
    )
    return records


def enumerate_fk3_fourfolds(
    config: Optional[CensusConfig] = None, k3_surfaces: Optional[Sequence[WeightSystem]] = None
) -> list[FamilyRecord]:
    return asyncio.run(aenumerate_fk3_fourfolds(config, k3_surfaces=k3_surfaces))


def _brute_force_degree(degree: int) -> list[Weights]:
    return [
        weights
        for weights in nondecreasing_tuples(6, 2 * degree, 1, degree - 1)
        if _passes_fourfold_conditions(weights, degree)
    ]


async def abrute_force_census(d_max: int, jobs: int = 1) -> list[WeightSystem]:
    """
    Sweep all sorted 6-tuples a_0 <= ... <= a_5 < d with sum(a_i) = 2d for every d <= d_max and apply the five
    conditions directly (no K3 surfaces involved).
    """
    if d_max < 1:
        raise InvalidArgumentError(f"the maximum degree must be positive, got {d_max}")
    degrees = list(range(3, d_max + 1))
    per_degree = await amap_jobs(_brute_force_degree, degrees, jobs=jobs)
    found = [
        WeightSystem(weights=weights, degree=degree)
        for degree, weight_tuples in zip(degrees, per_degree)
        for weights in weight_tuples
    ]
    logger.info("brute force census up to degree %s: %s families", d_max, len(found))
    return sorted(found, key=lambda ws: ws.sort_key)


def brute_force_census(d_max: int, jobs: int = 1) -> list[WeightSystem]:
    return asyncio.run(abrute_force_census(d_max, jobs=jobs))


def _extra_families_of_degree(degree: int) -> list[Weights]:
    if degree % 2:
        return []
    last = degree // 2
    found = []
    for fifth in range(1, last):
        if degree % fifth:
            continue
        for head in nondecreasing_tuples(4, 2 * degree - last - fifth, 1, fifth):
            weights = head + (fifth, last)
            if _passes_fourfold_conditions(weights, degree, dim_sing=False):
                found.append(weights)
    return found


async def aenumerate_extra_families(
    config: Optional[CensusConfig] = None, store: Optional[FamilyStore] = None, d_max: Optional[int] = None
) -> list[FamilyRecord]:
    """
    Fourfolds satisfying conditions 1 to 4 and 6 (the singular locus condition dropped) with d = 2 a_5, a_4 | d and
    a_4 != d/2. Only two families exist (both cyclic, 2 a_5 = 3 a_4 = d), whatever the bound.
    """
    config = config or CensusConfig()
    store = store or InMemoryFamilyStore()
    d_max = d_max or config.expected_k3_max_degree
    degrees = list(range(3, d_max + 1))
    per_degree = await amap_jobs(_extra_families_of_degree, degrees, jobs=config.jobs)
    candidates = [
        WeightSystem(weights=weights, degree=degree) for degree, found in zip(degrees, per_degree) for weights in found
    ]
    records = await aanalyze_families(candidates, store, jobs=config.jobs)
    logger.info("extra families up to degree %s: %s", d_max, len(records))
    return records


def enumerate_extra_families(config: Optional[CensusConfig] = None) -> list[FamilyRecord]:
    return asyncio.run(aenumerate_extra_families(config))


def _check(passed: bool, message: str, check: str, **metadata) -> None:
    if not passed:
        raise CrossCheckError(message, check=check, **metadata)


def _check_no_duplicates(systems: Sequence[WeightSystem], check: str) -> None:
    duplicates = len(systems) - len(set(systems))
    _check(duplicates == 0, f"{duplicates} duplicate weight systems", check)


def verify_k3_census(records: Sequence[K3Record], config: Optional[CensusConfig] = None) -> list[str]:
    """
    Cross-check the K3 census: the expected count, no duplicates, h^{2,0} = 1 and at worst du Val (canonical)
    singularities everywhere. Returns the names of the passed checks.
    """
    config = config or CensusConfig()
    _check(
        len(records) == config.expected_k3_count,
        f"{len(records)} K3 surfaces instead of {config.expected_k3_count}",
        "k3_count",
    )
    _check_no_duplicates([record.ws for record in records], "k3_no_duplicates")
    for record in records:
        _check(record.hodge.primitive[0] == 1, f"h^{{2,0}} of {record.ws} is not 1", "k3_hodge")
        _check(record.sing_class != SingClass.KLT, f"{record.ws} has a non du Val singularity", "k3_du_val")
    return ["k3_count", "k3_no_duplicates", "k3_hodge", "k3_du_val"]


def verify_fk3_census(
    records: Sequence[FamilyRecord], k3_surfaces: Sequence[WeightSystem], config: Optional[CensusConfig] = None
) -> list[str]:
    """
    Cross-check the FK3 census against the K3 census and the theory: the expected counts, no duplicates, the FK3
    Hodge numbers, the K3 association of every non-cubic family (with the Hodge correspondence of the series), the
    agreement of the singular locus dimension with the gcd conditions and the symmetry of the Jacobian series.
    """
    config = config or CensusConfig()
    _check(
        len(records) == config.expected_fk3_count,
        f"{len(records)} FK3 families instead of {config.expected_fk3_count}",
        "fk3_count",
    )
    terminal = sum(1 for record in records if record.is_terminal)
    _check(
        terminal == config.expected_terminal_count,
        f"{terminal} terminal families instead of {config.expected_terminal_count}",
        "terminal_count",
    )
    _check_no_duplicates([record.ws for record in records], "fk3_no_duplicates")

    k3_keys = {k3.sort_key for k3 in k3_surfaces}
    for record in records:
        ws = record.ws
        _check(record.fk3, f"{ws} is not of K3 type", "fk3_numerics")
        _check(
            record.hodge.primitive[:2] == (0, 1),
            f"{ws} has h^{{4,0}}, h^{{3,1}} = {record.hodge.primitive[:2]}",
            "fk3_hodge",
        )
        _check(
            (record.sing_dim <= 1) == dim_sing_gcd_conditions_of(ws.weights, ws.degree),
            f"singular locus of {ws} has dimension {record.sing_dim}",
            "sing_dim_consistency",
        )
        _check(series_is_palindromic(ws), f"the Jacobian series of {ws} is not symmetric", "series_symmetry")
        if ws.weights[5] == 1:
            continue
        association = record.association
        _check(association is not None, f"{ws} has no associated K3 surface", "k3_association")
        _check(
            association.k3.sort_key in k3_keys,
            f"the surface {association.k3} associated with {ws} is not in the K3 census",
            "k3_association",
        )
        _check(
            hodge_correspondence_holds(ws, association.index),
            f"h^{{2,2}} of {ws} differs from h^{{1,1}} of {association.k3}",
            "hodge_correspondence",
        )
    return [
        "fk3_count",
        "terminal_count",
        "fk3_no_duplicates",
        "fk3_numerics",
        "fk3_hodge",
        "sing_dim_consistency",
        "series_symmetry",
        "k3_association",
        "hodge_correspondence",
    ]


def verify_brute_force(records: Sequence[FamilyRecord], brute_force: Sequence[WeightSystem]) -> list[str]:
    """
    The constructed census and the brute force sweep have to produce the same set of weight systems.
    """
    constructed = {record.ws.sort_key for record in records}
    swept = {ws.sort_key for ws in brute_force}
    _check(
        constructed == swept,
        "the constructed census and the brute force sweep differ",
        "brute_force_equality",
        only_constructed=len(constructed - swept),
        only_swept=len(swept - constructed),
    )
    return ["brute_force_equality"]


def verify_extra_families(records: Sequence[FamilyRecord], config: Optional[CensusConfig] = None) -> list[str]:
    config = config or CensusConfig()
    _check(
        len(records) == config.expected_extra_count,
        f"{len(records)} extra families instead of {config.expected_extra_count}",
        "extra_count",
    )
    for record in records:
        _check(record.sing_dim == 2, f"{record.ws} has a singular locus of dimension {record.sing_dim}", "extra_dim")
    return ["extra_count", "extra_dim"]
