"""Single-photon spectral profiles and spectral averages.

The average of a function ``G(k)`` over a pulse is

    [G]_f = ∫ |f(k)|² G(k) dk,

evaluated with adaptive Gauss-Kronrod panels. All wavenumbers are in units
of the cavity leakage rate κ.

The spectral amplitude f(k) is taken real and nonnegative. The asymptotic
free-evolution phases e^{-ikt} (and e^{-ik'(t-τ)} for a delayed pulse) are
dropped: they are unimodular, appear identically in the reference output
state, and cancel from every modulus-squared quantity computed here.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidParameterError, NumericDomainError, QuadratureError

__all__ = [
    "ProfileKind",
    "SpectralProfile",
    "QuadratureScheme",
    "gaussian_profile",
    "lorentzian_profile",
    "adaptive_scheme",
    "weighted_average",
]

DEFAULT_TOL = 1e-9
GAUSSIAN_HALF_WINDOW = 8.0  # in units of the pulse width
MAX_PANELS = 20000

# 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG7 = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_KRONROD_X = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes: ±x1, ±x3, ±x5, 0.
_GAUSS_W[[1, 3, 5]] = _WG7[:3]
_GAUSS_W[[13, 11, 9]] = _WG7[:3]
_GAUSS_W[7] = _WG7[3]


class ProfileKind(str, enum.Enum):
    GAUSSIAN = "gaussian"
    LORENTZIAN = "lorentzian"


@dataclass(frozen=True)
class SpectralProfile:
    """Normalized pulse spectrum |f(k)|² centred on ``center`` with width ``width``."""

    kind: ProfileKind
    center: float
    width: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        if not (math.isfinite(self.width) and self.width > 0):
            raise InvalidParameterError(f"spectral width must be positive, got {self.width!r}")
        if not math.isfinite(self.center):
            raise InvalidParameterError(f"spectral center must be finite, got {self.center!r}")

    def density(self, k):
        """|f(k)|², vectorized over ``k``."""
        x = (np.asarray(k, dtype=float) - self.center) / self.width
        if self.kind is ProfileKind.GAUSSIAN:
            return np.exp(-x * x) / (math.sqrt(math.pi) * self.width)
        return 1.0 / (math.pi * self.width * (1.0 + x * x))

    def amplitude(self, k):
        """Real spectral amplitude f(k) = sqrt(|f(k)|²)."""
        return np.sqrt(self.density(k))

    def window(self, scale: float = 1.0) -> tuple[float, float]:
        """Integration window in k.

        Gaussian pulses are truncated at ±8 widths (neglected mass ~1e-29).
        Lorentzian pulses are integrated over the whole real line through
        k = center + width·tan(u), so their window is infinite.
        """
        if self.kind is ProfileKind.LORENTZIAN:
            return -math.inf, math.inf
        half = GAUSSIAN_HALF_WINDOW * self.width * scale
        return self.center - half, self.center + half


def gaussian_profile(center: float, width: float) -> SpectralProfile:
    """|f(k)|² = exp[-(k-center)²/width²] / (√π · width)."""
    return SpectralProfile(ProfileKind.GAUSSIAN, float(center), float(width))


def lorentzian_profile(center: float, width: float) -> SpectralProfile:
    """|f(k)|² = (width/π) / [(k-center)² + width²]; ``width`` is the HWHM."""
    return SpectralProfile(ProfileKind.LORENTZIAN, float(center), float(width))


@dataclass(frozen=True)
class QuadratureScheme:
    """Nodes and weights approximating the measure |f(k)|² dk.

    ``sum(weights * G(nodes))`` approximates [G]_f; ``tol`` is the absolute
    error the scheme was refined to.
    """

    nodes: np.ndarray
    weights: np.ndarray
    tol: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise InvalidParameterError("nodes and weights must be 1-D arrays of equal length")
        if np.any(weights < 0):
            raise InvalidParameterError("quadrature weights must be nonnegative")
        if nodes.size > 1 and np.any(np.diff(nodes) <= 0):
            raise InvalidParameterError("quadrature nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def apply(self, G: Callable) -> complex:
        return complex(np.sum(self.weights * _evaluate(G, self.nodes)))


def _evaluate(G: Callable, k: np.ndarray) -> np.ndarray:
    values = np.asarray(G(k), dtype=complex)
    if values.shape != k.shape:
        values = np.broadcast_to(values, k.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        node = float(k[np.argmax(bad)])
        raise NumericDomainError(f"integrand is not finite at k = {node!r}")
    return values


class _Mapping:
    """Variable change taking an integration variable u to (k, |f(k)|² dk/du)."""

    def __init__(self, profile: SpectralProfile, window_scale: float):
        self.profile = profile
        if profile.kind is ProfileKind.LORENTZIAN:
            self.lo, self.hi = -math.pi / 2, math.pi / 2
        else:
            self.lo, self.hi = profile.window(window_scale)

    def to_k(self, u):
        p = self.profile
        if p.kind is ProfileKind.LORENTZIAN:
            return p.center + p.width * np.tan(u)
        return u

    def to_u(self, k: float) -> float:
        p = self.profile
        if p.kind is ProfileKind.LORENTZIAN:
            return math.atan((k - p.center) / p.width)
        return k

    def measure(self, u):
        """|f(k(u))|² dk/du."""
        if self.profile.kind is ProfileKind.LORENTZIAN:
            return np.full_like(u, 1.0 / math.pi)
        return self.profile.density(u)

    def breakpoints(self, points: Sequence[float]) -> np.ndarray:
        p = self.profile
        if p.kind is ProfileKind.LORENTZIAN:
            # geometric offsets resolve every scale from width up to ~1e15 widths
            offsets = p.width * 2.0 ** np.arange(-3, 50)
            ks = np.concatenate([p.center - offsets, [p.center], p.center + offsets])
            us = np.arctan((ks - p.center) / p.width)
        else:
            us = np.linspace(self.lo, self.hi, 17)
        extra = [self.to_u(float(k)) for k in points if math.isfinite(k)]
        us = np.concatenate([us, extra, [self.lo, self.hi]])
        us = np.unique(us[(us >= self.lo) & (us <= self.hi)])
        return us


def _gk15(G: Callable, mapping: _Mapping, a: np.ndarray, b: np.ndarray):
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    u = mid[:, None] + half[:, None] * _KRONROD_X[None, :]
    k = mapping.to_k(u)
    f = _evaluate(G, k.ravel()).reshape(k.shape) * mapping.measure(u)
    kron = half * (f @ _KRONROD_W)
    gauss = half * (f @ _GAUSS_W)
    # a panel cannot contribute more than its width times the integrand size;
    # this caps the estimate for oscillating, bounded Lorentzian tails
    cap = 4.0 * half * np.max(np.abs(f), axis=1)
    return kron, np.minimum(np.abs(kron - gauss), cap), u, k


def adaptive_scheme(
    G: Callable,
    profile: SpectralProfile,
    tol: float = DEFAULT_TOL,
    points: Sequence[float] = (),
    window_scale: float = 1.0,
) -> QuadratureScheme:
    """Refine Gauss-Kronrod panels until [G]_f is resolved to absolute ``tol``.

    ``G`` must accept a numpy array of wavenumbers. ``points`` are extra panel
    breakpoints (resonances, scale changes of G). The returned scheme holds
    the Kronrod nodes of the final panels.
    """
    if not tol > 0:
        raise InvalidParameterError(f"tolerance must be positive, got {tol!r}")
    mapping = _Mapping(profile, window_scale)
    edges = mapping.breakpoints(points)
    a, b = edges[:-1], edges[1:]
    val, err, u, k = _gk15(G, mapping, a, b)

    while err.sum() > tol:
        if a.size > MAX_PANELS:
            raise QuadratureError(
                f"no convergence after {a.size} panels (error estimate {err.sum():.3g} > {tol:.3g})"
            )
        split = err > tol / a.size
        if not split.any():
            split[np.argmax(err)] = True
        mid = 0.5 * (a[split] + b[split])
        na = np.concatenate([a[split], mid])
        nb = np.concatenate([mid, b[split]])
        nval, nerr, nu, nk = _gk15(G, mapping, na, nb)
        keep = ~split
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])
        u = np.concatenate([u[keep], nu])
        k = np.concatenate([k[keep], nk])

    half = 0.5 * (b - a)
    weights = (half[:, None] * _KRONROD_W[None, :]) * mapping.measure(u)
    order = np.argsort(k, axis=None)
    nodes = k.ravel()[order]
    weights = weights.ravel()[order]
    # tan() can merge nodes beyond float resolution far in a Lorentzian tail
    nodes, inverse = np.unique(nodes, return_inverse=True)
    weights = np.bincount(inverse, weights=weights, minlength=nodes.size)
    return QuadratureScheme(nodes, weights, tol)


def weighted_average(
    G: Callable,
    profile: SpectralProfile,
    quad: QuadratureScheme | None = None,
    *,
    tol: float = DEFAULT_TOL,
    points: Sequence[float] = (),
    window_scale: float = 1.0,
) -> complex:
    """[G]_f = ∫ |f(k)|² G(k) dk.

    With ``quad`` the fixed scheme is applied as is; otherwise an adaptive
    scheme is built for this ``G``. For Lorentzian pulses ``G`` should settle
    to a limit as |k| grows; integrands oscillating forever in the tails do
    not converge.
    """
    if quad is None:
        quad = adaptive_scheme(G, profile, tol=tol, points=points, window_scale=window_scale)
    return quad.apply(G)
