"""
Truncated formal power series with exact integer coefficients. All arithmetic is exact below the cap and never reads
above it.
"""
from typing import Any

from fk3census.errors import InvalidArgumentError
from fk3census.models import Immutable


class TruncatedSeries(Immutable):
    """
    coeffs[k] is the coefficient of t^k, for k = 0..cap.
    """

    cap: int
    coeffs: tuple[int, ...]

    @classmethod
    def _preprocess_values(cls, values: dict[str, Any]) -> dict[str, Any]:
        cap = values.get("cap")
        if not isinstance(cap, int) or cap < 0:
            raise ValueError(f"`cap` must be a nonnegative integer, got {cap}")
        if len(values.get("coeffs") or ()) != cap + 1:
            raise ValueError("`coeffs` must have exactly cap + 1 entries")
        return values

    @classmethod
    def one(cls, cap: int) -> "TruncatedSeries":
        return cls(cap=cap, coeffs=(1,) + (0,) * cap)

    def coefficient(self, degree: int) -> int:
        """
        The coefficient of t^degree (0 for negative degrees).
        """
        if degree < 0:
            return 0
        if degree > self.cap:
            raise InvalidArgumentError(f"degree {degree} is above the cap {self.cap} of the series")
        return self.coeffs[degree]

    def times_binomial(self, step: int) -> "TruncatedSeries":
        """
        Multiply by 1 - t^step in linear time.
        """
        if step < 1:
            raise InvalidArgumentError(f"1 - t^{step} needs a positive exponent")
        coeffs = list(self.coeffs)
        for k in range(self.cap, step - 1, -1):
            coeffs[k] -= coeffs[k - step]
        return TruncatedSeries(cap=self.cap, coeffs=tuple(coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cap = min(self.cap, other.cap)
        coeffs = [0] * (cap + 1)
        for i, left in enumerate(self.coeffs[: cap + 1]):
            if left:
                for j in range(cap + 1 - i):
                    coeffs[i + j] += left * other.coeffs[j]
        return TruncatedSeries(cap=cap, coeffs=tuple(coeffs))

    def inverse(self) -> "TruncatedSeries":
        """
        The multiplicative inverse up to the cap. Exact over the integers, so the constant term has to be 1 or -1.
        """
        head = self.coeffs[0]
        if head not in (1, -1):
            raise InvalidArgumentError(f"constant term {head} is not a unit of the integers")
        inverse = [0] * (self.cap + 1)
        inverse[0] = head
        for k in range(1, self.cap + 1):
            total = sum(self.coeffs[i] * inverse[k - i] for i in range(1, k + 1))
            inverse[k] = -total * head
        return TruncatedSeries(cap=self.cap, coeffs=tuple(inverse))
