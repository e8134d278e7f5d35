"""
Primitive middle Hodge numbers of quasi-smooth weighted hypersurfaces through the Griffiths residue formula:

    h^{2t-j,j}_prim(X_d) = dim (R_f)_{(j+1)d - sum(a_i)}

For the general member the partial derivatives of f form a regular sequence, so the Jacobian ring R_f has the closed
form Hilbert series prod_i (1 - t^{d - a_i}) / (1 - t^{a_i}) and Hodge numbers become coefficient extraction.
"""
import logging

from fk3census.errors import InvalidArgumentError, LinearConeError
from fk3census.models import HodgeRow, WeightSystem
from fk3census.quasismooth import is_quasi_smooth_not_cone
from fk3census.series import TruncatedSeries

logger = logging.getLogger(__name__)


def jacobian_hilbert_series(ws: WeightSystem, cap: int) -> TruncatedSeries:
    """
    The Hilbert series of the Jacobian ring of the general member, truncated at `cap`.
    """
    if cap < 0:
        raise InvalidArgumentError(f"the cap must be nonnegative, got {cap}")
    for idx, weight in enumerate(ws.weights):
        if weight == ws.degree:
            raise LinearConeError("linear cone has no Jacobian-regular sequence form", index=idx, ws=ws.render())
        if weight > ws.degree:
            raise InvalidArgumentError(f"weight a{idx} = {weight} exceeds the degree {ws.degree}")

    numerator = TruncatedSeries.one(cap)
    denominator = TruncatedSeries.one(cap)
    for weight in ws.weights:
        numerator = numerator.times_binomial(ws.degree - weight)
        denominator = denominator.times_binomial(weight)
    return numerator * denominator.inverse()


def _half_dimension(ws: WeightSystem) -> int:
    if ws.n_weights % 2:
        raise InvalidArgumentError(f"middle Hodge numbers need an even number of weights, got {ws}")
    return ws.n_weights // 2 - 1


def primitive_middle_hodge(ws: WeightSystem) -> HodgeRow:
    """
    The primitive middle row h^{2t-j,j}_prim, j = 0..2t, for a quasi-smooth hypersurface with 2t + 2 weights.
    `middle_total` adds the square of the hyperplane class (h^{t,t}_prim + 1), as the published tables do.
    """
    half = _half_dimension(ws)
    verdict = is_quasi_smooth_not_cone(ws)
    if not verdict:
        raise InvalidArgumentError(f"{ws} is not quasi-smooth: {verdict.witness}")

    total = ws.weight_sum
    cap = max(0, (2 * half + 1) * ws.degree - total)
    series = jacobian_hilbert_series(ws, cap)
    primitive = tuple(series.coefficient((j + 1) * ws.degree - total) for j in range(2 * half + 1))
    return HodgeRow(dim=2 * half, primitive=primitive, middle_total=primitive[half] + 1)


def is_fano_k3_numerics(ws: WeightSystem) -> bool:
    """
    The K3 type condition sum(a_i) = d * t for a hypersurface of dimension 2t (2t + 2 weights, t >= 1). For t = 1 this
    is the K3 surface condition, for t >= 2 it also forces the variety to be Fano.
    """
    half = _half_dimension(ws)
    if half < 1:
        raise InvalidArgumentError(f"the K3 type condition needs at least 4 weights, got {ws}")
    numerics = ws.weight_sum == ws.degree * half
    if numerics and half >= 2:
        assert ws.degree < ws.weight_sum, f"{ws} is of K3 type but not Fano"
    return numerics


def jacobian_socle_degree(ws: WeightSystem) -> int:
    """
    The top degree of the (Gorenstein) Jacobian ring: sum(d - 2 a_i).
    """
    return sum(ws.degree - 2 * weight for weight in ws.weights)


def series_is_palindromic(ws: WeightSystem) -> bool:
    """
    Check the Gorenstein symmetry of the Jacobian ring: coefficient m equals coefficient socle - m. For FK3 fourfolds
    (and K3 surfaces) the socle degree is 2d, i.e. the symmetry is about d.
    """
    socle = jacobian_socle_degree(ws)
    if socle < 0:
        return False
    series = jacobian_hilbert_series(ws, socle)
    return all(series.coefficient(m) == series.coefficient(socle - m) for m in range(socle + 1))


def hodge_correspondence_holds(ws: WeightSystem, index: int) -> bool:
    """
    Given a fourfold with a_i + a_5 = d, compare the coefficient of t^d in its Jacobian series with the one in the
    series of the surface over {a_0..a_4} minus a_i, i.e. h^{2,2}_prim(X) against h^{1,1}_prim(S). Both series are
    actually computed, so this cross-checks the series engine.
    """
    if ws.n_weights != 6:
        raise InvalidArgumentError(f"the Hodge correspondence needs 6 weights, got {ws}")
    if not 0 <= index <= 4 or ws.weights[index] + ws.weights[5] != ws.degree:
        raise InvalidArgumentError(f"a{index} + a5 != d for {ws}", index=index)

    fourfold = jacobian_hilbert_series(ws, ws.degree).coefficient(ws.degree)
    surface = jacobian_hilbert_series(ws.without(index, 5), ws.degree).coefficient(ws.degree)
    if fourfold != surface:
        logger.warning("Hodge correspondence broken for %s (index %s): %s != %s", ws, index, fourfold, surface)
    return fourfold == surface
