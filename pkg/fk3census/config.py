"""
Census constants and their overrides.
"""
import os
from typing import Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field

ENV_PREFIX = "FK3_"


class CensusConfig(BaseModel):
    """
    The bounds the census sweeps run with and the counts they are expected to reproduce. A mismatch with the expected
    counts is a cross-check failure, not a crash.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    k3_degree_bound: int = Field(100, ge=4)
    expected_k3_max_degree: int = Field(66, ge=4)
    expected_k3_count: int = Field(95, ge=0)
    expected_fk3_count: int = Field(244, ge=0)
    expected_terminal_count: int = Field(202, ge=0)
    expected_extra_count: int = Field(2, ge=0)
    jobs: int = Field(1, ge=1)

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides) -> "CensusConfig":
        """
        Read `FK3_<FIELD>` environment variables (`FK3_K3_DEGREE_BOUND`, `FK3_JOBS` etc.). Keyword overrides that are
        not None take precedence over the environment.
        """
        environ = os.environ if environ is None else environ
        values = {}
        for field_name in cls.model_fields:
            raw = environ.get(f"{ENV_PREFIX}{field_name.upper()}")
            if raw is not None:
                values[field_name] = raw
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)
