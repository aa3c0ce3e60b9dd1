"""Discrete Fourier analysis primitives shared by all other modules.

Conventions:
- A signal is a 1D array of finite real samples, length N >= 1.
- An image is an (H, W) or (H, W, C) array of finite real samples; 2D
  arrays are treated as single-channel.
- The forward transform is unnormalized,
      F_k = sum_j exp(-2*pi*i*j*k/N) * x_j,
  and the inverse carries the 1/N factor. Any signal length is supported;
  correctness is defined by the sum, not by the algorithm used to
  evaluate it.
- Spectra are "unshifted" (k = 0..N-1) unless explicitly centered with
  ``center_shift`` (DC moved to index len//2).

All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

#: Maximum absolute imaginary residue tolerated when an inverse transform
#: is required to produce a real signal. Well above double-precision
#: round-off for N <= 1e4, well below any real artifact.
IMAG_RESIDUE_TOL = 1e-9

#: Default additive floor for log-magnitude plots: avoids -inf while
#: leaving 12 decades of dynamic range.
LOG_FLOOR = 1e-12


class NonRealResultError(ValueError):
    """An inverse transform produced a signal with non-negligible
    imaginary part, which signals a conjugate-symmetry violation."""


@dataclass(frozen=True)
class Spectrum:
    """Complex DFT coefficients plus their frequency-index convention.

    ``centered`` is False for the native ordering (k = 0..len-1) and True
    after DC has been rotated to the middle (k_c = -len//2 .. len-len//2-1).
    """

    values: np.ndarray
    centered: bool = False

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex)
        if values.size == 0:
            raise ValueError("spectrum must contain at least one coefficient")
        if not np.all(np.isfinite(values)):
            raise ValueError("spectrum coefficients must be finite")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.shape[-1] if self.values.ndim == 1 else self.values.size


class RadialProfile(NamedTuple):
    """Radially binned 2D spectrum summary (bin centers, mean |F|, empty flags)."""

    radius: np.ndarray
    magnitude: np.ndarray
    empty: np.ndarray


def as_signal(x) -> np.ndarray:
    """Validate and return ``x`` as a 1D float array of length >= 1."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"signal must be 1D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("signal must contain at least one sample")
    if not np.all(np.isfinite(arr)):
        raise ValueError("signal samples must be finite")
    return arr


def as_image(x) -> np.ndarray:
    """Validate and return ``x`` as an (H, W, C) float array.

    2D inputs are promoted to a single channel.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 2:
        arr = arr[:, :, np.newaxis]
    if arr.ndim != 3:
        raise ValueError(f"image must be 2D or 3D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("image must contain at least one sample")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image samples must be finite")
    return arr


def dft(signal) -> Spectrum:
    """Forward DFT of a real signal, unshifted convention.

    F_k = sum_{j=0}^{N-1} exp(-2*pi*i*j*k/N) * x_j. Evaluated with a fast
    transform, but the contract is the plain sum (any N).
    """
    x = as_signal(signal)
    return Spectrum(np.fft.fft(x), centered=False)


def idft(spectrum, residue_tol: float = IMAG_RESIDUE_TOL) -> np.ndarray:
    """Inverse DFT, returning a real signal.

    x_j = (1/N) * sum_k exp(+2*pi*i*j*k/N) * F_k. Imaginary residue below
    ``residue_tol`` (absolute) is discarded; anything larger raises
    :class:`NonRealResultError` because the input cannot be the spectrum
    of a real signal.
    """
    values = _unshifted_values(spectrum, ndim=1)
    out = np.fft.ifft(values)
    residue = float(np.max(np.abs(out.imag)))
    if residue > residue_tol:
        raise NonRealResultError(
            f"imaginary residue {residue:.3e} exceeds {residue_tol:.1e}; "
            "spectrum is not conjugate-symmetric"
        )
    return out.real


def dft2(image) -> list[Spectrum]:
    """Per-channel 2D DFT of an image (row then column transform).

    Returns one unshifted 2D :class:`Spectrum` per channel.
    """
    img = as_image(image)
    return [Spectrum(np.fft.fft2(img[:, :, c]), centered=False)
            for c in range(img.shape[2])]


def center_shift(spectrum: Spectrum) -> Spectrum:
    """Rotate a spectrum so DC sits at index len//2 (all axes).

    Input must be unshifted; ``center_unshift`` is the exact inverse.
    """
    if spectrum.centered:
        raise ValueError("spectrum is already centered")
    return Spectrum(np.fft.fftshift(spectrum.values), centered=True)


def center_unshift(spectrum: Spectrum) -> Spectrum:
    """Exact inverse of :func:`center_shift`."""
    if not spectrum.centered:
        raise ValueError("spectrum is not centered")
    return Spectrum(np.fft.ifftshift(spectrum.values), centered=False)


def log_magnitude(spectrum, floor: float = LOG_FLOOR) -> np.ndarray:
    """log10(|F_k| + floor), elementwise; real array of the same shape."""
    if floor <= 0:
        raise ValueError("floor must be positive")
    values = spectrum.values if isinstance(spectrum, Spectrum) else np.asarray(spectrum)
    return np.log10(np.abs(values) + floor)


def radial_average(spectrum: Spectrum, n_bins: int) -> RadialProfile:
    """Radially average a centered 2D spectrum's magnitudes.

    Radii are measured in integer index units from the DC position
    (H//2, W//2); n_bins uniform bins partition [0, r_max]. Empty bins
    report magnitude 0 and are flagged.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be a positive integer")
    if not isinstance(spectrum, Spectrum) or not spectrum.centered:
        raise ValueError("radial_average requires a centered Spectrum")
    values = spectrum.values
    if values.ndim != 2:
        raise ValueError("radial_average requires a 2D spectrum")

    h, w = values.shape
    rows = np.arange(h) - h // 2
    cols = np.arange(w) - w // 2
    radii = np.hypot(rows[:, None], cols[None, :])
    r_max = float(radii.max())

    if r_max == 0.0:
        idx = np.zeros_like(radii, dtype=int)
    else:
        idx = np.minimum((radii / r_max * n_bins).astype(int), n_bins - 1)

    mags = np.abs(values)
    counts = np.bincount(idx.ravel(), minlength=n_bins)
    sums = np.bincount(idx.ravel(), weights=mags.ravel(), minlength=n_bins)
    empty = counts == 0
    means = np.where(empty, 0.0, sums / np.maximum(counts, 1))
    centers = (np.arange(n_bins) + 0.5) / n_bins * r_max
    return RadialProfile(radius=centers, magnitude=means, empty=empty)


def _unshifted_values(spectrum, ndim: int) -> np.ndarray:
    """Extract complex values from a Spectrum or array, enforcing
    unshifted convention and dimensionality."""
    if isinstance(spectrum, Spectrum):
        if spectrum.centered:
            raise ValueError("expected an unshifted spectrum")
        values = spectrum.values
    else:
        values = np.asarray(spectrum, dtype=complex)
    if values.ndim != ndim:
        raise ValueError(f"expected a {ndim}D spectrum, got shape {values.shape}")
    if values.size == 0:
        raise ValueError("spectrum must contain at least one coefficient")
    return values
