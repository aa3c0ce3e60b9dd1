"""Spectral-artifact metrics for upsampled signals.

The frequency bands of an upsampled signal (length M = r*N) are defined
on the centered index grid k_c = -M//2 .. M - M//2 - 1:

- passband: |k_c| < N/2, the content representable at the original rate;
- Nyquist band: k_c = +-N/2 (even N only), ambiguous at the original rate;
- alias band: everything else.

The alias-energy ratio counts the Nyquist band as alias (it is not
representable unambiguously at the lower rate) but also reports it
separately, so the half-split Nyquist convention of the ideal upsampler
stays visible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_core import LOG_FLOOR, as_image, as_signal
from .upsamplers import KernelSpec, bed_of_nails, linear, nearest, validate_factor

FILTER_METHODS = ("bed_of_nails", "nearest", "linear")


@dataclass(frozen=True)
class AliasReport:
    """Band energies of one upsampled signal.

    ``alias_ratio`` = (alias + Nyquist) / total energy, in [0, 1].
    ``replica_deviation`` is populated only when the low-rate input was
    supplied for reference (None otherwise).
    """

    passband_energy: float
    alias_energy: float
    nyquist_energy: float
    alias_ratio: float
    replica_deviation: float | None = None


@dataclass(frozen=True)
class ContributionMap:
    """Per-output-position tap contribution counts of a transposed conv.

    counts[p] is the number of (input position, tap) pairs that write to
    output position p under periodic placement. Uneven counts are the
    checkerboard mechanism; counts are uniform exactly when the stride
    divides the kernel size.
    """

    counts: np.ndarray
    period: int
    uniform: bool
    variance: float


def alias_energy(y, r: int, reference=None) -> AliasReport:
    """Split the spectrum of an upsampled signal into band energies.

    ``y`` must have length r*N. If ``reference`` (the low-rate input) is
    given, the report also carries its replica deviation.
    """
    y = as_signal(y)
    r = validate_factor(r)
    if y.size % r != 0:
        raise ValueError(f"length {y.size} is not divisible by r={r}")
    n = y.size // r
    m = y.size

    f = np.fft.fftshift(np.fft.fft(y))
    kc = np.arange(m) - m // 2
    passband = 2 * np.abs(kc) < n
    nyquist = 2 * np.abs(kc) == n
    alias = ~(passband | nyquist)

    power = np.abs(f) ** 2
    e_pass = float(np.sum(power[passband]))
    e_nyq = float(np.sum(power[nyquist]))
    e_alias = float(np.sum(power[alias]))
    total = e_pass + e_nyq + e_alias
    ratio = (e_alias + e_nyq) / total if total > 0.0 else 0.0

    deviation = None
    if reference is not None:
        deviation = replica_deviation(reference, y, r)
    return AliasReport(
        passband_energy=e_pass,
        alias_energy=e_alias,
        nyquist_energy=e_nyq,
        alias_ratio=ratio,
        replica_deviation=deviation,
    )


def replica_deviation(x, y, r: int) -> float:
    """Max deviation of y's spectrum from r-fold replication of x's.

    max_k |DFT(y)[k] - DFT(x)[k mod N]|; zero exactly when y is the
    zero-inserted upsampling of x.
    """
    x = as_signal(x)
    y = as_signal(y)
    r = validate_factor(r)
    if y.size != r * x.size:
        raise ValueError(f"expected len(y) = r*len(x) = {r * x.size}, got {y.size}")
    fx = np.fft.fft(x)
    fy = np.fft.fft(y)
    replicated = np.tile(fx, r)
    return float(np.max(np.abs(fy - replicated)))


def filter_response(method: str, r: int, n_points: int,
                    include_replicas: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Analytic magnitude response of an interpolation filter.

    Sampled at ``n_points`` frequencies l in [0, r/2] cycles per input
    sample. With ``include_replicas=False`` the response is the single
    lobe of the continuous kernel: flat 1 for zero insertion, |sinc(l)|
    for sample repetition (box of width 1), sinc(l)^2 for linear
    interpolation (triangle of width 2), with sinc(l) = sin(pi*l)/(pi*l).

    With ``include_replicas=True`` the replicas that appear when the
    kernel is realized on the rate-r output grid are folded in (the
    response then repeats with rate r and carries the DC gain r). For the
    triangle this fold of sinc^2 terms has the closed form
    (1/r) * (sin(pi*l) / sin(pi*l/r))^2, which is what a DFT of the
    discrete impulse response measures.
    """
    if method not in FILTER_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {FILTER_METHODS}")
    r = validate_factor(r)
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    ell = np.linspace(0.0, r / 2.0, n_points)
    if method == "bed_of_nails":
        return ell, np.ones_like(ell)
    if not include_replicas:
        mags = np.abs(np.sinc(ell)) if method == "nearest" else np.sinc(ell) ** 2
        return ell, mags
    return ell, _folded_response(method, r, ell)


def _folded_response(method: str, r: int, ell: np.ndarray) -> np.ndarray:
    """Closed form of the replica-folded response on the rate-r grid."""
    num = np.sin(np.pi * ell)
    den = np.sin(np.pi * ell / r)
    at_dc = np.isclose(np.mod(ell, r), 0.0) | np.isclose(np.mod(ell, r), float(r))
    safe = np.where(at_dc, 1.0, den)
    ratio = np.where(at_dc, float(r), num / safe)
    if method == "nearest":
        return np.abs(ratio)
    return ratio ** 2 / r


def empirical_filter_response(method: str, r: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Measured magnitude response: operator applied to a periodic impulse.

    Applies the method to a length-n unit impulse, takes |DFT| of the
    r*n output, and returns the non-negative-frequency half as (l, |F|)
    pairs with l = bin/n in [0, r/2] cycles per input sample. DC equals
    the kernel tap sum (r for sample repetition and linear interpolation);
    replicas of the kernel response are inherently present, so the curve
    matches ``filter_response(..., include_replicas=True)`` bin for bin.
    """
    if method not in FILTER_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {FILTER_METHODS}")
    r = validate_factor(r)
    if n < 4:
        raise ValueError("impulse length must be >= 4")
    impulse = np.zeros(n)
    impulse[0] = 1.0
    if method == "bed_of_nails":
        out = bed_of_nails(impulse, r)
    elif method == "nearest":
        out = nearest(impulse, r)
    else:
        out = linear(impulse, r, boundary="periodic")
    mags = np.abs(np.fft.fft(out))
    k = np.arange(r * n // 2 + 1)
    return k / n, mags[: k.size]


def contribution_map(kernel: KernelSpec, out_len: int) -> ContributionMap:
    """Count tap contributions per output position (periodic placement).

    counts[p] = #{(i, j) : p = (s*i + j - anchor) mod out_len}. For 2D
    kernels the count matrix is the outer product of the per-axis counts.
    The map is uniform exactly when the stride divides the kernel size.
    """
    out_len = int(out_len)
    s = kernel.stride
    if out_len < 1 or out_len % s != 0:
        raise ValueError(f"out_len must be a positive multiple of stride {s}")

    if kernel.weights.ndim == 1:
        counts = _axis_counts(kernel.weights.shape[0], s, out_len)
    else:
        rows = _axis_counts(kernel.weights.shape[0], s, out_len)
        cols = _axis_counts(kernel.weights.shape[1], s, out_len)
        counts = np.outer(rows, cols)
    variance = float(np.var(counts))
    return ContributionMap(
        counts=counts,
        period=s,
        uniform=bool(np.all(counts == counts.flat[0])),
        variance=variance,
    )


def _axis_counts(k: int, s: int, out_len: int) -> np.ndarray:
    c = k // 2
    counts = np.zeros(out_len, dtype=int)
    for i in range(out_len // s):
        for j in range(k):
            counts[(s * i + j - c) % out_len] += 1
    return counts


def error_spectrum(pred, gt, mode: str = "complex", floor: float = LOG_FLOOR,
                   log: bool = True) -> np.ndarray:
    """Centered log-magnitude spectrum of the channel-mean prediction error.

    By default the per-channel 2D DFTs of (pred - gt) are averaged as
    complex values and the magnitude is taken afterwards; ``mode=
    "magnitude"`` averages the magnitudes instead. ``log=False`` returns
    the centered magnitudes without the log10(. + floor) mapping.
    """
    if mode not in ("complex", "magnitude"):
        raise ValueError("mode must be 'complex' or 'magnitude'")
    if floor <= 0:
        raise ValueError("floor must be positive")
    p = as_image(pred)
    g = as_image(gt)
    if p.shape != g.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {g.shape}")

    diff = p - g
    spectra = np.fft.fft2(diff, axes=(0, 1))
    if mode == "complex":
        mag = np.abs(np.mean(spectra, axis=2))
    else:
        mag = np.mean(np.abs(spectra), axis=2)
    mag = np.fft.fftshift(mag)
    return np.log10(mag + floor) if log else mag


def psnr(pred, gt, peak: float) -> float:
    """Peak signal-to-noise ratio in dB; identical inputs report +inf."""
    if peak <= 0:
        raise ValueError("peak must be positive")
    p = as_image(pred)
    g = as_image(gt)
    if p.shape != g.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {g.shape}")
    mse = float(np.mean((p - g) ** 2))
    if mse == 0.0:
        return float("inf")
    return 10.0 * float(np.log10(peak * peak / mse))
