"""
Data models.
"""

import hashlib
import json
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Any, Iterable, Optional

from pydantic import BaseModel, ConfigDict, model_validator

_PRIMITIVES_ALLOWED_IN_IMMUTABLE = (type(None), str, int, bool, tuple, list, Enum)


class Immutable(BaseModel):
    """
    A base class for immutable pydantic objects. It is frozen and has a hash key that is calculated from the JSON
    representation of the object.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    @cached_property
    def hash_key(self) -> str:
        """
        Get the hash key for this object. It is a hash of the JSON representation of the object.
        """
        return hashlib.sha256(
            json.dumps(self.model_dump(mode="json"), ensure_ascii=False, sort_keys=True).encode("utf-8")
        ).hexdigest()

    def as_dict(self) -> dict[str, Any]:
        """
        Get the fields of the object as a JSON compatible dictionary.
        """
        return self.model_dump(mode="json")

    @classmethod
    def _preprocess_values(cls, values: dict[str, Any]) -> dict[str, Any]:
        """
        Preprocess (and check) the values before validation.
        """
        return values

    # noinspection PyNestedDecorators
    @model_validator(mode="before")
    @classmethod
    def _validate_immutable_fields(cls, values: Any) -> Any:
        """
        Recursively make sure that the field values of the object are immutable.
        """
        if not isinstance(values, dict):
            return values
        values = dict(values)
        for key, value in values.items():
            values[key] = cls._validate_value(key, value)
        return cls._preprocess_values(values)

    @classmethod
    def _validate_value(cls, key: str, value: Any) -> Any:
        """
        Recursively make sure that the field value is immutable.
        """
        if isinstance(value, (tuple, list)):
            return tuple(cls._validate_value(key, sub_value) for sub_value in value)
        if not isinstance(value, _TYPES_ALLOWED_IN_IMMUTABLE):
            raise ValueError(
                f"only {{{', '.join([t.__name__ for t in _TYPES_ALLOWED_IN_IMMUTABLE])}}} "
                f"are allowed as field values in {cls.__name__}, got {type(value).__name__} in `{key}`"
            )
        return value


_TYPES_ALLOWED_IN_IMMUTABLE = *_PRIMITIVES_ALLOWED_IN_IMMUTABLE, Immutable


class WeightSystem(Immutable):
    """
    A nondecreasing sequence of positive integer weights (the grading degrees of the coordinates) together with the
    degree of the general hypersurface. No normalization is performed implicitly.
    """

    weights: tuple[int, ...]
    degree: int

    @classmethod
    def _preprocess_values(cls, values: dict[str, Any]) -> dict[str, Any]:
        weights = values.get("weights")
        if not weights:
            raise ValueError("`weights` must not be empty")
        if any(not isinstance(weight, int) or weight < 1 for weight in weights):
            raise ValueError(f"every weight must be a positive integer, got {weights}")
        if any(left > right for left, right in zip(weights, weights[1:])):
            raise ValueError(f"`weights` must be sorted in nondecreasing order, got {weights}")
        degree = values.get("degree")
        if not isinstance(degree, int) or degree < 1:
            raise ValueError(f"`degree` must be a positive integer, got {degree}")
        return values

    @classmethod
    def of(cls, weights: Iterable[int], degree: int) -> "WeightSystem":
        """
        Build a weight system from weights in any order (they get sorted).
        """
        return cls(weights=tuple(sorted(weights)), degree=degree)

    @property
    def n_weights(self) -> int:
        return len(self.weights)

    @property
    def weight_sum(self) -> int:
        return sum(self.weights)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """
        The key that census output is sorted and deduplicated by: (d, weights).
        """
        return self.degree, self.weights

    def without(self, *indices: int) -> "WeightSystem":
        """
        The weight system with the weights at the given indices removed (same degree).
        """
        dropped = set(indices)
        return WeightSystem(
            weights=tuple(weight for idx, weight in enumerate(self.weights) if idx not in dropped),
            degree=self.degree,
        )

    def render(self) -> str:
        """
        The canonical textual form `w0,w1,...,wn:d` (the one `parse_weight_spec` accepts).
        """
        return f"{','.join(str(weight) for weight in self.weights)}:{self.degree}"

    def __str__(self) -> str:
        return f"({','.join(str(weight) for weight in self.weights)}; d={self.degree})"


class SubsetBranch(str, Enum):
    """
    Which branch of the subset criterion of quasi-smoothness an index set satisfies.
    """

    DEGREE_REPRESENTABLE = "degree_representable"
    TANGENT_INDICES = "tangent_indices"
    FAILS = "fails"


class SubsetVerdict(Immutable):
    """
    The outcome of the quasi-smoothness criterion for a single index set, with the indices j (outside of the set)
    witnessing the second branch.
    """

    subset: tuple[int, ...]
    branch: SubsetBranch
    tangent_indices: tuple[int, ...] = ()

    @classmethod
    def _preprocess_values(cls, values: dict[str, Any]) -> dict[str, Any]:
        subset = values.get("subset") or ()
        tangent_indices = values.get("tangent_indices") or ()
        if set(subset) & set(tangent_indices):
            raise ValueError("tangent indices must lie outside of the subset")
        if values.get("branch") == SubsetBranch.TANGENT_INDICES and len(tangent_indices) < len(subset):
            raise ValueError("the tangent indices branch needs at least |I| witnesses")
        return values

    @property
    def fails(self) -> bool:
        return self.branch == SubsetBranch.FAILS

    def render_subset(self) -> str:
        return "I={" + ",".join(str(idx) for idx in self.subset) + "}"


class QuasiSmoothVerdict(Immutable):
    """
    The outcome of the quasi-smoothness (and not a linear cone) test of a general hypersurface. When the test fails,
    either `linear_cone_index` or `failing_subset` tells why.
    """

    is_quasi_smooth: bool
    linear_cone_index: Optional[int] = None
    failing_subset: Optional[SubsetVerdict] = None

    def __bool__(self) -> bool:
        return self.is_quasi_smooth

    @property
    def witness(self) -> Optional[str]:
        if self.linear_cone_index is not None:
            return f"linear cone d = a{self.linear_cone_index}"
        if self.failing_subset is not None:
            return f"subset criterion fails at {self.failing_subset.render_subset()}"
        return None


class HodgeRow(Immutable):
    """
    The primitive middle Hodge numbers h^{2t-j,j}_prim (j = 0..2t) of a quasi-smooth hypersurface of dimension 2t.
    `middle_total` follows the convention of the published tables: h^{t,t}_prim + 1.
    """

    dim: int
    primitive: tuple[int, ...]
    middle_total: int

    @classmethod
    def _preprocess_values(cls, values: dict[str, Any]) -> dict[str, Any]:
        primitive = values.get("primitive") or ()
        if values.get("dim", -1) + 1 != len(primitive):
            raise ValueError("`primitive` must have dim + 1 entries")
        if any(value < 0 for value in primitive):
            raise ValueError(f"Hodge numbers must be nonnegative, got {primitive}")
        return values

    @property
    def middle_primitive(self) -> int:
        return self.primitive[self.dim // 2]


class SingClass(str, Enum):
    """
    The singularity class of a quotient singularity (or of a whole variety, taking the worst one). CANONICAL means
    canonical and not terminal, KLT means strictly klt.
    """

    TERMINAL = "terminal"
    CANONICAL = "canonical"
    KLT = "klt"

    @property
    def rank(self) -> int:
        return _SING_CLASS_ORDER.index(self)

    @classmethod
    def worst(cls, classes: Iterable["SingClass"]) -> "SingClass":
        """
        Aggregate by maximum (TERMINAL < CANONICAL < KLT). No classes at all means smooth, i.e. TERMINAL.
        """
        return max(classes, key=lambda sing_class: sing_class.rank, default=cls.TERMINAL)


_SING_CLASS_ORDER = (SingClass.TERMINAL, SingClass.CANONICAL, SingClass.KLT)


class QuotientType(Immutable):
    """
    A cyclic quotient singularity 1/r(c_1, ..., c_s).
    """

    r: int
    residues: tuple[int, ...]

    @classmethod
    def _preprocess_values(cls, values: dict[str, Any]) -> dict[str, Any]:
        if not isinstance(values.get("r"), int) or values["r"] < 2:
            raise ValueError(f"the order of a cyclic quotient must be at least 2, got {values.get('r')}")
        return values

    @property
    def is_reduced(self) -> bool:
        """
        Every residue lies in [1, r-1].
        """
        return all(1 <= residue < self.r for residue in self.residues)

    @property
    def is_well_formed(self) -> bool:
        """
        For every position j, gcd(r, all residues except the one at j) = 1.
        """
        for position in range(len(self.residues)):
            divisor = self.r
            for other, residue in enumerate(self.residues):
                if other != position:
                    divisor = gcd(divisor, residue)
            if divisor != 1:
                return False
        return True

    @property
    def label(self) -> str:
        return f"1/{self.r}({','.join(str(residue) for residue in self.residues)})"


class Stratum(Immutable):
    """
    One orbifold stratum of the ambient weighted projective space: the locus where the coordinates with weight not
    divisible by r vanish. The relation to the general hypersurface X is unfilled (None) until `stratum_relation`.

    `ambient_transverse` is the transverse type of the ambient space along the stratum, `transverse` is the type X
    inherits at its points on the open stratum (None when X misses the open stratum).
    """

    r: int
    indices: tuple[int, ...]
    ambient_transverse: QuotientType
    contained_in_x: Optional[bool] = None
    on_x: Optional[bool] = None
    tangent_index: Optional[int] = None
    transverse: Optional[QuotientType] = None
    locus_dim: Optional[int] = None

    @property
    def is_filled(self) -> bool:
        return self.contained_in_x is not None

    @property
    def meets_x(self) -> bool:
        return bool(self.contained_in_x or self.on_x)


class K3Association(Immutable):
    """
    The K3 surface associated with a fourfold through a pair of weights a_i + a_5 = d. For double suspensions
    (a_4 = a_5 = d/2) `double_cover_base` is the surface the iterated double cover is branched over.
    """

    index: int
    k3: WeightSystem
    double_cover_base: Optional[WeightSystem] = None


class DelPezzoData(Immutable):
    """
    The del Pezzo surface S_d in P(a_0..a_3) attached to a cyclic family with 2 a_5 = 3 a_4 = d, with its canonical
    degree (K = O(canonical_degree)) and the predicates computed for it.
    """

    surface: WeightSystem
    canonical_degree: int
    well_formed: bool
    quasi_smooth: bool


class Rationality(str, Enum):
    """
    Rationality flag of a family, derived from theorems (never computed geometrically).
    """

    RATIONAL = "rational"
    CONJECTURAL_CUBIC = "conjectural_cubic"
    UNKNOWN = "unknown"


class FamilyTag(str, Enum):
    """
    Structural tags of a family. The definition order is the rendering order.
    """

    CUBIC = "cubic"
    LINEAR_IN_LAST_VARIABLE = "linear_in_last_variable"
    DOUBLE_SUSPENSION = "double_suspension"
    CYCLIC_DEL_PEZZO = "cyclic_del_pezzo"
    REID_TAI_DIVERGENT = "reid_tai_divergent"


_FAMILY_TAG_ORDER = tuple(FamilyTag)


def sort_tags(tags: Iterable[FamilyTag]) -> tuple[FamilyTag, ...]:
    """
    Deduplicate tags and put them in the rendering order.
    """
    return tuple(sorted(set(tags), key=_FAMILY_TAG_ORDER.index))


class FamilyRecord(Immutable):
    """
    The full analysis of one family of weighted fourfolds.
    """

    ws: WeightSystem
    fk3: bool
    hodge: HodgeRow
    sing_dim: int
    sing_class: SingClass
    strata: tuple[Stratum, ...]
    association: Optional[K3Association] = None
    rationality: Rationality
    tags: tuple[FamilyTag, ...] = ()
    del_pezzo: Optional[DelPezzoData] = None

    @classmethod
    def _preprocess_values(cls, values: dict[str, Any]) -> dict[str, Any]:
        ws: WeightSystem = values["ws"]
        tags = values.get("tags") or ()
        if values.get("fk3") and ws.weight_sum != 2 * ws.degree:
            raise ValueError(f"an FK3 fourfold needs sum(a_i) = 2d, got {ws}")
        if (
            values.get("association") is not None
            and FamilyTag.CUBIC not in tags
            and values.get("rationality") != Rationality.RATIONAL
        ):
            raise ValueError("a family with an associated K3 is rational")
        if FamilyTag.DOUBLE_SUSPENSION in tags and not (
            2 * ws.weights[-1] == ws.degree and ws.weights[-2] == ws.weights[-1]
        ):
            raise ValueError(f"a double suspension needs a_4 = a_5 = d/2, got {ws}")
        return values

    @property
    def is_terminal(self) -> bool:
        return self.sing_class == SingClass.TERMINAL


class K3Record(Immutable):
    """
    The analysis of one weighted K3 surface (Hodge row and du Val singularities).
    """

    ws: WeightSystem
    hodge: HodgeRow
    sing_dim: int
    sing_class: SingClass
    strata: tuple[Stratum, ...]
