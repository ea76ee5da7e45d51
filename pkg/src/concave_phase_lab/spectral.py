"""Band-limited data and the concave-dispersion propagator.

Frequency-side objects shared by every experiment in the package: a fixed
reference bump supported on [1/2, 2], band-limited data whose Fourier
transform is an affine rescaling of that bump times a unimodular phase, the
propagator with dispersion relation |xi|^m for 0 < m < 1, inhomogeneous
Sobolev norms, and the localized kernel obtained by testing the propagator
against the squared bump at a single dyadic scale.

Every frequency integral here reduces to the fixed band [1/2, 2] by the
substitution v = scale*xi + shift, after which the phase is a two-term
combination P*L(v) + T*S(v) of a linear and a concave-power profile.  Single
contract-grade values go through the adaptive engine; grid scans go through
the bucketed batch rule.  The raw-variable oracle route (dense Simpson in xi,
unimodular factors kept inside the amplitude) is retained as an independent
cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import (
    QuadratureSpec,
    SmoothFunction1D,
    integrate,
    oracle_integrate,
    two_phase_batch,
)

__all__ = [
    "BUMP",
    "BUMP_SQUARED",
    "BUMP_SUPPORT",
    "ReferenceBump",
    "REFERENCE_BUMP",
    "FourierDatum",
    "bump_profile",
    "propagate",
    "propagate_grid",
    "sobolev_norm",
    "kernel_K",
    "kernel_grid",
]

BUMP_SUPPORT = (0.5, 2.0)


def _eta(u):
    # C^inf cutoff: exp(1 - 1/(1-u^2)) on |u| < 1, zero outside, peak value 1.
    u = np.asarray(u, dtype=float)
    out = np.zeros(u.shape)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    return out


def bump_profile(xi):
    """Reference bump: smooth, positive exactly on (1/2, 2), equal to 1 at 5/4."""
    return _eta((np.asarray(xi, dtype=float) - 1.25) / 0.75)


BUMP = SmoothFunction1D(bump_profile, BUMP_SUPPORT)
BUMP_SQUARED = SmoothFunction1D(lambda xi: bump_profile(xi) ** 2, BUMP_SUPPORT)


@dataclass(frozen=True)
class ReferenceBump:
    """The fixed smooth profile every band-limited datum is built from."""

    profile: SmoothFunction1D


REFERENCE_BUMP = ReferenceBump(profile=BUMP)


@dataclass(frozen=True)
class FourierDatum:
    """A band-limited datum, described entirely on the frequency side.

    The Fourier transform is

        fhat(xi) = amplitude * exp(i*(linear_phase*xi + fractional_phase*|xi|^m))
                   * bump(scale*xi + shift)

    so the frequency support is the closed interval where scale*xi + shift
    lies in [1/2, 2].  The support may touch 0 at an endpoint (the bump
    vanishes there) but must not contain 0 in its interior, so that |xi|^m
    stays smooth on it.

    Parameters
    ----------
    amplitude : complex
        Overall scale factor on the frequency side.
    scale, shift : float
        Affine bump argument; ``scale`` must be nonzero.  Negative ``scale``
        mirrors the band to negative frequencies.
    linear_phase : float
        Coefficient of xi in the phase (a spatial translation).
    fractional_phase : float
        Coefficient of |xi|^m in the phase (a time translation).  Requires
        ``m`` to be set when nonzero.
    m : float, optional
        The dispersion exponent the datum's own phase refers to, in (0, 1).
        Data with ``fractional_phase == 0`` need not carry one.
    """

    amplitude: complex = 1.0 + 0.0j
    scale: float = 1.0
    shift: float = 0.0
    linear_phase: float = 0.0
    fractional_phase: float = 0.0
    m: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.scale) or self.scale == 0.0:
            raise ValueError("scale must be finite and nonzero")
        if not (np.isfinite(self.shift) and np.isfinite(self.linear_phase)
                and np.isfinite(self.fractional_phase) and np.isfinite(self.amplitude)):
            raise ValueError("datum parameters must be finite")
        if self.m is not None and not 0.0 < self.m < 1.0:
            raise ValueError(f"dispersion exponent must lie in (0, 1), got {self.m}")
        if self.fractional_phase != 0.0 and self.m is None:
            raise ValueError("fractional_phase requires the datum to carry an exponent m")
        lo, hi = self.support
        if lo < 0.0 < hi:
            raise ValueError(
                f"frequency support ({lo:.6g}, {hi:.6g}) contains 0 in its "
                "interior; |xi|^m is not smooth there")

    @property
    def support(self) -> tuple[float, float]:
        """Frequency support: the interval where scale*xi + shift is in [1/2, 2]."""
        ends = ((BUMP_SUPPORT[0] - self.shift) / self.scale,
                (BUMP_SUPPORT[1] - self.shift) / self.scale)
        return (min(ends), max(ends))

    def band_to_frequency(self, v):
        """Map band coordinate v in [1/2, 2] back to the frequency xi."""
        return (np.asarray(v, dtype=float) - self.shift) / self.scale

    def band_maps(self, m: float):
        """Linear and concave-power phase profiles in the band coordinate."""
        def linear(v):
            return self.band_to_frequency(v)

        def power(v):
            return np.abs(self.band_to_frequency(v)) ** m

        return linear, power

    def fourier_transform(self, xi):
        """Evaluate fhat(xi); vectorized, zero off the support."""
        xi = np.asarray(xi, dtype=float)
        phase = self.linear_phase * xi
        if self.fractional_phase != 0.0:
            phase = phase + self.fractional_phase * np.abs(xi) ** self.m
        out = self.amplitude * np.exp(1j * phase) * bump_profile(self.scale * xi + self.shift)
        return complex(out) if out.ndim == 0 else out


def _check_exponent(datum: FourierDatum, m: float):
    if not 0.0 < m < 1.0:
        raise ValueError(f"dispersion exponent must lie in (0, 1), got {m}")
    if datum.m is not None and datum.m != m:
        raise ValueError(f"exponent {m} disagrees with the datum's {datum.m}")


def propagate(datum: FourierDatum, m: float, x: float, t: float,
              spec: QuadratureSpec | None = None, method: str = "adaptive") -> complex:
    """Evaluate the propagator u(x, t) for a band-limited datum.

    Computes (2*pi)^{-1} * int exp(i*(x*xi + t*|xi|^m)) * fhat(xi) dxi.  At
    t = 0 this is the inverse Fourier transform of fhat at x.

    Parameters
    ----------
    datum : FourierDatum
    m : float
        Dispersion exponent in (0, 1); must agree with the datum's own
        exponent when the datum carries one.
    x, t : float
        Space-time point.
    spec : QuadratureSpec, optional
    method : {"adaptive", "oracle"}
        "adaptive" substitutes v = scale*xi + shift and runs the fast engine
        on the fixed band; "oracle" runs dense Simpson in the raw frequency
        variable with the datum's phase kept inside the amplitude.  The two
        share no reduction steps.

    Returns
    -------
    complex
    """
    _check_exponent(datum, m)
    if method == "adaptive":
        linear, power = datum.band_maps(m)
        p_coef = x + datum.linear_phase
        t_coef = t + datum.fractional_phase

        def phase(v):
            return p_coef * linear(v) + t_coef * power(v)

        value = integrate(BUMP, phase, BUMP_SUPPORT, spec)
        return datum.amplitude * value / (2.0 * np.pi * abs(datum.scale))
    if method == "oracle":
        def phase(xi):
            return x * xi + t * np.abs(xi) ** m

        value = oracle_integrate(datum.fourier_transform, phase, datum.support, spec=spec)
        return value / (2.0 * np.pi)
    raise ValueError(f"unknown method {method!r}")


def propagate_grid(datum: FourierDatum, m: float, x, t,
                   **batch_options) -> np.ndarray:
    """Propagator values on broadcast arrays of space-time points.

    Same reduction as :func:`propagate` with ``method="adaptive"`` but the
    band integrals for all points are evaluated together by the bucketed
    batch rule; keyword options are passed through to it.
    """
    _check_exponent(datum, m)
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    linear, power = datum.band_maps(m)
    values = two_phase_batch(
        (x + datum.linear_phase).ravel(), (t + datum.fractional_phase).ravel(),
        linear, power, BUMP, BUMP_SUPPORT, **batch_options)
    factor = datum.amplitude / (2.0 * np.pi * abs(datum.scale))
    return factor * values.reshape(x.shape)


def sobolev_norm(datum: FourierDatum, s: float,
                 spec: QuadratureSpec | None = None) -> float:
    """Inhomogeneous Sobolev norm ((2*pi)^{-1} int (1+xi^2)^s |fhat|^2 dxi)^{1/2}.

    The phase factors are unimodular so they never enter: the integrand is
    |amplitude|^2 * (1+xi^2)^s * bump(scale*xi+shift)^2, which makes the norm
    exactly invariant under changes of linear_phase and fractional_phase.
    """
    lo, hi = datum.support

    def weight(xi):
        return (1.0 + xi ** 2) ** s * bump_profile(datum.scale * xi + datum.shift) ** 2

    value = integrate(weight, lambda xi: np.zeros_like(xi), (lo, hi), spec)
    return abs(datum.amplitude) * float(np.sqrt(value.real / (2.0 * np.pi)))


def kernel_K(lam: float, m: float, x: float, t: float,
             spec: QuadratureSpec | None = None, method: str = "adaptive") -> complex:
    """Localized kernel lam * int exp(i*(lam*x*xi + lam^m*t*|xi|^m)) bump(xi)^2 dxi.

    The single-scale building block of the maximal-function estimates: its
    value at (0, 0) is lam times the mass of the squared bump, and its decay
    in lam*|x| away from the time-stationary region is what the envelope
    checks quantify.

    Parameters
    ----------
    lam : float
        Dyadic scale, >= 1.
    m : float
        Dispersion exponent in (0, 1).
    x, t : float
    spec : QuadratureSpec, optional
    method : {"adaptive", "oracle"}
    """
    if not lam >= 1.0:
        raise ValueError(f"scale must be >= 1, got {lam}")
    if not 0.0 < m < 1.0:
        raise ValueError(f"dispersion exponent must lie in (0, 1), got {m}")

    def phase(xi):
        return lam * x * xi + lam ** m * t * np.abs(xi) ** m

    if method == "adaptive":
        value = integrate(BUMP_SQUARED, phase, BUMP_SUPPORT, spec)
    elif method == "oracle":
        value = oracle_integrate(BUMP_SQUARED, phase, BUMP_SUPPORT, spec=spec)
    else:
        raise ValueError(f"unknown method {method!r}")
    return lam * value


def kernel_grid(lam: float, m: float, x, t, **batch_options) -> np.ndarray:
    """Kernel values on broadcast arrays of (x, t) via the batch rule."""
    if not lam >= 1.0:
        raise ValueError(f"scale must be >= 1, got {lam}")
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    values = two_phase_batch(
        lam * x.ravel(), lam ** m * t.ravel(),
        lambda v: v, lambda v: np.abs(v) ** m,
        BUMP_SQUARED, BUMP_SUPPORT, **batch_options)
    return lam * values.reshape(x.shape)
