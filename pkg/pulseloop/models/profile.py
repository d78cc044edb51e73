"""Regular fluctuation profiles f(t), g(t) with first derivatives.

f perturbs the polar angle of the reference curve (its derivative is the rf
amplitude error), g the azimuth (rf phase error; its derivative is the
resonance offset). Built-in families carry analytic derivatives; tabulated
profiles use central finite differences of a cubic-spline interpolant.
"""

import abc
from typing import Any, Dict, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from pulseloop.config import settings
from pulseloop.core.errors import DomainError
from pulseloop.models.enums import ProfileKind
from pulseloop.utils.angles import piece_index


def _as_times(t) -> np.ndarray:
    return np.asarray(t, dtype=float)


class FluctuationProfile(abc.ABC):
    """Pair of fluctuation functions on [0, 1]"""

    kind: ProfileKind

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        """Times where f' or g' may jump"""
        return (0.0, 1.0)

    @property
    def params(self) -> Dict[str, Any]:
        return {"kind": self.kind.value}

    @abc.abstractmethod
    def f(self, t) -> np.ndarray: ...

    @abc.abstractmethod
    def g(self, t) -> np.ndarray: ...

    @abc.abstractmethod
    def df(self, t) -> np.ndarray: ...

    @abc.abstractmethod
    def dg(self, t) -> np.ndarray: ...

    def __repr__(self) -> str:
        fields = ", ".join(f"{k}={v!r}" for k, v in self.params.items() if k != "samples")
        return f"{type(self).__name__}({fields})"


class ZeroProfile(FluctuationProfile):
    kind = ProfileKind.ZERO

    def f(self, t):
        return np.zeros_like(_as_times(t))

    g = f
    df = f
    dg = f


class PiecewiseSineProfile(FluctuationProfile):
    """f = f0 sin(2 pi xi u_i(t)), g = g0 sin(2 pi eta u_i(t)), u_i the local time of piece i"""

    kind = ProfileKind.PIECEWISE_SINE

    def __init__(self, f0: float, g0: float, xi: int, eta: int, breakpoints: Sequence[float]) -> None:
        self.f0 = float(f0)
        self.g0 = float(g0)
        self.xi = xi
        self.eta = eta
        self._breakpoints = tuple(float(b) for b in breakpoints)
        self._bp = np.asarray(self._breakpoints)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return self._breakpoints

    @property
    def params(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "f0": self.f0,
            "g0": self.g0,
            "xi": self.xi,
            "eta": self.eta,
            "breakpoints": list(self._breakpoints),
        }

    def _local(self, t) -> Tuple[np.ndarray, np.ndarray]:
        t = _as_times(t)
        i = piece_index(self._bp, t)
        width = self._bp[i + 1] - self._bp[i]
        return (t - self._bp[i]) / width, width

    def f(self, t):
        u, _ = self._local(t)
        return self.f0 * np.sin(2.0 * np.pi * self.xi * u)

    def g(self, t):
        u, _ = self._local(t)
        return self.g0 * np.sin(2.0 * np.pi * self.eta * u)

    def df(self, t):
        u, width = self._local(t)
        return self.f0 * 2.0 * np.pi * self.xi / width * np.cos(2.0 * np.pi * self.xi * u)

    def dg(self, t):
        u, width = self._local(t)
        return self.g0 * 2.0 * np.pi * self.eta / width * np.cos(2.0 * np.pi * self.eta * u)


class GlobalSineProfile(FluctuationProfile):
    """
    f = f0 sin(2 pi c xi t), g = g0 sin(2 pi c eta t) with c = cycles.
    c = 4 (the default) puts a whole number of periods in every quarter of [0, 1].
    """

    kind = ProfileKind.GLOBAL_SINE

    def __init__(self, f0: float, g0: float, xi: int, eta: int, cycles: int = 4) -> None:
        self.f0 = float(f0)
        self.g0 = float(g0)
        self.xi = xi
        self.eta = eta
        self.cycles = cycles
        self._rate = 2.0 * np.pi * cycles

    @property
    def params(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "f0": self.f0,
            "g0": self.g0,
            "xi": self.xi,
            "eta": self.eta,
            "cycles": self.cycles,
        }

    def f(self, t):
        return self.f0 * np.sin(self._rate * self.xi * _as_times(t))

    def g(self, t):
        return self.g0 * np.sin(self._rate * self.eta * _as_times(t))

    def df(self, t):
        return self.f0 * self._rate * self.xi * np.cos(self._rate * self.xi * _as_times(t))

    def dg(self, t):
        return self.g0 * self._rate * self.eta * np.cos(self._rate * self.eta * _as_times(t))


class TabulatedProfile(FluctuationProfile):
    """User samples [[t, f, g], ...] interpolated by cubic splines"""

    kind = ProfileKind.TABULATED

    def __init__(self, samples: Sequence[Sequence[float]], fd_step: float = 0.0) -> None:
        table = np.asarray(samples, dtype=float)
        if table.ndim != 2 or table.shape[1] != 3:
            raise DomainError("tabulated samples must be rows of [t, f, g]")
        if len(table) < 4:
            raise DomainError("tabulated profile needs at least 4 samples")
        t = table[:, 0]
        if not np.all(np.isfinite(table)):
            raise DomainError("tabulated samples must be finite")
        if np.any(np.diff(t) <= 0):
            raise DomainError("tabulated sample times must be strictly increasing")
        if t[0] != 0.0 or t[-1] != 1.0:
            raise DomainError("tabulated sample times must start at 0 and end at 1")
        self.table = table
        self.fd_step = fd_step or settings.FD_STEP
        self._f = CubicSpline(t, table[:, 1])
        self._g = CubicSpline(t, table[:, 2])

    @property
    def params(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "samples": self.table.tolist()}

    def _central(self, spline: CubicSpline, t) -> np.ndarray:
        t = _as_times(t)
        half = 0.5 * self.fd_step
        return (spline(t + half) - spline(t - half)) / self.fd_step

    def f(self, t):
        return self._f(_as_times(t))

    def g(self, t):
        return self._g(_as_times(t))

    def df(self, t):
        return self._central(self._f, t)

    def dg(self, t):
        return self._central(self._g, t)


class CombinedProfile(FluctuationProfile):
    """f (and f') from one profile, g (and g') from another; models independent noise sources"""

    kind = ProfileKind.COMBINED

    def __init__(self, f_from: FluctuationProfile, g_from: FluctuationProfile) -> None:
        self.f_from = f_from
        self.g_from = g_from

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(sorted(set(self.f_from.breakpoints) | set(self.g_from.breakpoints)))

    @property
    def params(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "f_from": self.f_from.params, "g_from": self.g_from.params}

    def f(self, t):
        return self.f_from.f(t)

    def g(self, t):
        return self.g_from.g(t)

    def df(self, t):
        return self.f_from.df(t)

    def dg(self, t):
        return self.g_from.dg(t)
