import math
import os
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class WellKind(str, Enum):
    I = "I"
    II = "II"


class Units(BaseModel):
    """Physical units, used only when converting results at the CLI boundary."""
    model_config = ConfigDict(frozen=True)

    u0: float = Field(1.0, gt=0)
    alpha: float = Field(1.0, gt=0)
    mass: float = Field(1.0, gt=0)
    hbar: float = Field(1.0, gt=0)

    def energy(self, e_over_u0: float) -> float:
        return e_over_u0 * self.u0

    def length(self, x_dimensionless: float) -> float:
        return x_dimensionless / self.alpha

    def depth_parameter(self) -> float:
        """a = [8 m U0 / (hbar^2 alpha^2)]^(1/2)"""
        return math.sqrt(8.0 * self.mass * self.u0) / (self.hbar * self.alpha)


class PotentialSpec(BaseModel):
    """
    Which well and how deep. Internal code only reads (kind, a); all physics runs in
    hbar = 1, 2m = 1, alpha = 1 units where U0 = a^2/4 and E = -b^2/4.
    """
    model_config = ConfigDict(frozen=True)

    kind: WellKind
    a: float = Field(gt=0)
    units: Optional[Units] = None

    @field_validator("a")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("a must be finite")
        return value

    @property
    def u0(self) -> float:
        """Well depth in internal units."""
        return 0.25 * self.a * self.a


class Settings(BaseModel):
    threads: Optional[int] = Field(None, ge=1)
    oracle_points: int = Field(4096, ge=64)
    scan_step: float = Field(0.05, gt=0)
    root_xtol: float = 1e-10
    min_root: float = 1e-6

    @classmethod
    def from_env(cls) -> "Settings":
        threads = os.environ.get("EXPWELL_THREADS")
        return cls(threads=int(threads) if threads else None)


def n_jobs(settings: Optional[Settings] = None) -> int:
    settings = settings or Settings.from_env()
    return settings.threads or 1
