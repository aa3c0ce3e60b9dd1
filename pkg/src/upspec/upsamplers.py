"""Deterministic upsampling operators, in 1D and 2D.

Every operator maps a length-N signal to a length r*N signal (or an HxW
image to rH x rW) and is linear in its input. The boundary convention is
explicit everywhere:

- "periodic": indices wrap (the setting in which the spectral identities
  below are exact);
- "zero-pad": out-of-range neighbours read as zero. Output length is kept
  at r*N in this mode too, so operators of both modes share one shape
  contract.

Transposed convolutions are defined constructively: insert r-1 zeros
between samples, then convolve with the kernel anchored at index
floor(K/2). The fixed anchor makes kernel supports nested as K grows,
which in turn makes least-squares fitting residuals monotone in K.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_core import NonRealResultError, as_signal

BOUNDARY_MODES = ("periodic", "zero-pad")


@dataclass(frozen=True)
class KernelSpec:
    """Transposed-convolution weights plus stride.

    ``weights`` is a 1D tap vector or a 2D (square or rectangular) tap
    matrix. ``parallel_small`` is an optional second, smaller kernel
    applied to the same zero-inserted input; both branch outputs are
    summed (the large-context block composition). The anchor of every
    kernel is fixed at floor(K/2) per axis.
    """

    weights: np.ndarray
    stride: int
    parallel_small: np.ndarray | None = None

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim not in (1, 2):
            raise ValueError("kernel weights must be 1D or 2D")
        if w.size == 0:
            raise ValueError("kernel must have at least one tap")
        if not np.all(np.isfinite(w)):
            raise ValueError("kernel weights must be finite")
        if int(self.stride) < 1:
            raise ValueError("stride must be >= 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "stride", int(self.stride))
        if self.parallel_small is not None:
            small = np.asarray(self.parallel_small, dtype=float)
            if small.ndim != w.ndim:
                raise ValueError("parallel kernel must match main kernel dimensionality")
            if small.size == 0 or not np.all(np.isfinite(small)):
                raise ValueError("parallel kernel taps must be finite and non-empty")
            if any(s > m for s, m in zip(small.shape, w.shape)):
                raise ValueError("parallel kernel must not exceed the main kernel size")
            object.__setattr__(self, "parallel_small", small)

    @property
    def size(self) -> int:
        """Tap count along one axis (kernels are square in 2D)."""
        return self.weights.shape[0]

    @property
    def anchor(self) -> int:
        return self.weights.shape[0] // 2


def validate_factor(r: int) -> int:
    r = int(r)
    if r < 2:
        raise ValueError("upsampling factor must be >= 2")
    return r


def _validate_boundary(boundary: str) -> str:
    if boundary not in BOUNDARY_MODES:
        raise ValueError(f"boundary must be one of {BOUNDARY_MODES}, got {boundary!r}")
    return boundary


def bed_of_nails(x, r: int) -> np.ndarray:
    """Insert r-1 zeros after every sample: out[r*j] = x[j], 0 elsewhere."""
    x = as_signal(x)
    r = validate_factor(r)
    out = np.zeros(r * x.size)
    out[::r] = x
    return out


def nearest(x, r: int) -> np.ndarray:
    """Repeat every sample r times: out[r*j + m] = x[j]."""
    x = as_signal(x)
    r = validate_factor(r)
    return np.repeat(x, r)


def linear(x, r: int, boundary: str = "periodic") -> np.ndarray:
    """Linear interpolation: inserted samples sit between x[j] and x[j+1].

    out[r*j] = x[j]; out[r*j + m] = (1 - m/r) x[j] + (m/r) x[j+1] for
    0 < m < r. The missing neighbour x[N] is x[0] under "periodic" and 0
    under "zero-pad". For r=2 this is the midpoint rule.
    """
    x = as_signal(x)
    r = validate_factor(r)
    _validate_boundary(boundary)
    succ = np.roll(x, -1)
    if boundary == "zero-pad":
        succ = succ.copy()
        succ[-1] = 0.0
    out = np.empty(r * x.size)
    for m in range(r):
        t = m / r
        out[m::r] = (1.0 - t) * x + t * succ
    return out


def pixel_shuffle(channels, r: int) -> np.ndarray:
    """Interleave r (1D) or r^2 (2D) equal-shape channels into sub-pixel slots.

    1D: out[r*j + m] = channels[m][j].
    2D: out[r*h + a, r*w + b] = channels[a*r + b][h, w] (row-major
    sub-pixel order).
    """
    r = validate_factor(r)
    arrays = [np.asarray(c, dtype=float) for c in channels]
    if not arrays:
        raise ValueError("pixel_shuffle needs at least one channel")
    shape = arrays[0].shape
    if any(a.shape != shape for a in arrays):
        raise ValueError("all channels must have identical shape")
    if any(not np.all(np.isfinite(a)) for a in arrays):
        raise ValueError("channel samples must be finite")

    if arrays[0].ndim == 1:
        if len(arrays) != r:
            raise ValueError(f"1D pixel shuffle needs exactly r={r} channels, got {len(arrays)}")
        out = np.empty(r * shape[0])
        for m, chan in enumerate(arrays):
            out[m::r] = chan
        return out

    if arrays[0].ndim == 2:
        if len(arrays) != r * r:
            raise ValueError(f"2D pixel shuffle needs exactly r^2={r * r} channels, got {len(arrays)}")
        out = np.empty((r * shape[0], r * shape[1]))
        for a in range(r):
            for b in range(r):
                out[a::r, b::r] = arrays[a * r + b]
        return out

    raise ValueError("channels must be 1D or 2D arrays")


def pixel_unshuffle(x, r: int) -> list[np.ndarray]:
    """Exact inverse of :func:`pixel_shuffle`."""
    r = validate_factor(r)
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        if arr.size % r != 0:
            raise ValueError(f"length {arr.size} not divisible by r={r}")
        return [arr[m::r].copy() for m in range(r)]
    if arr.ndim == 2:
        if arr.shape[0] % r != 0 or arr.shape[1] % r != 0:
            raise ValueError(f"shape {arr.shape} not divisible by r={r}")
        return [arr[a::r, b::r].copy() for a in range(r) for b in range(r)]
    raise ValueError("pixel_unshuffle expects a 1D or 2D array")


def _place_1d(z: np.ndarray, w: np.ndarray, boundary: str) -> np.ndarray:
    """Convolve a zero-inserted signal with taps anchored at floor(K/2)."""
    c = w.shape[0] // 2
    if boundary == "periodic":
        out = np.zeros_like(z)
        for j in range(w.shape[0]):
            if w[j] != 0.0:
                out += w[j] * np.roll(z, j - c)
        return out
    full = np.convolve(z, w, mode="full")
    return full[c:c + z.shape[0]]


def transposed_conv(x, kernel: KernelSpec, boundary: str = "periodic") -> np.ndarray:
    """Transposed convolution: zero insertion followed by kernel placement.

    out[p] = sum_j w[j] * z[(p - j + c) mod s*N] with z the zero-inserted
    signal, c = floor(K/2) (periodic mode; zero-pad reads missing
    neighbours as 0). When a parallel small kernel is present the two
    branch outputs are summed. Output length is s*N.
    """
    x = as_signal(x)
    _validate_boundary(boundary)
    if kernel.weights.ndim != 1:
        raise ValueError("transposed_conv expects a 1D kernel; use transposed_conv2 for images")
    z = np.zeros(kernel.stride * x.size)
    z[::kernel.stride] = x
    out = _place_1d(z, kernel.weights, boundary)
    if kernel.parallel_small is not None:
        out = out + _place_1d(z, kernel.parallel_small, boundary)
    return out


def _place_2d(z: np.ndarray, w: np.ndarray, boundary: str) -> np.ndarray:
    ca, cb = w.shape[0] // 2, w.shape[1] // 2
    if boundary == "periodic":
        out = np.zeros_like(z)
        for a in range(w.shape[0]):
            for b in range(w.shape[1]):
                if w[a, b] != 0.0:
                    out += w[a, b] * np.roll(z, (a - ca, b - cb), axis=(0, 1))
        return out
    padded = np.zeros((z.shape[0] + w.shape[0], z.shape[1] + w.shape[1]))
    out = np.zeros_like(z)
    for a in range(w.shape[0]):
        for b in range(w.shape[1]):
            if w[a, b] == 0.0:
                continue
            shifted = np.zeros_like(padded)
            shifted[a:a + z.shape[0], b:b + z.shape[1]] = w[a, b] * z
            out += shifted[ca:ca + z.shape[0], cb:cb + z.shape[1]]
    return out


def transposed_conv2(image, kernel: KernelSpec, boundary: str = "periodic") -> np.ndarray:
    """2D transposed convolution, applied per channel independently.

    Full 2D tap placement (separability is not assumed). Accepts (H, W)
    or (H, W, C) arrays and preserves the input's dimensionality.
    """
    _validate_boundary(boundary)
    if kernel.weights.ndim != 2:
        raise ValueError("transposed_conv2 expects a 2D kernel")
    arr = np.asarray(image, dtype=float)
    squeeze = arr.ndim == 2
    if squeeze:
        arr = arr[:, :, np.newaxis]
    if arr.ndim != 3 or arr.size == 0 or not np.all(np.isfinite(arr)):
        raise ValueError("image must be a finite 2D or 3D array")

    s = kernel.stride
    h, wd, nc = arr.shape
    out = np.zeros((s * h, s * wd, nc))
    for c in range(nc):
        z = np.zeros((s * h, s * wd))
        z[::s, ::s] = arr[:, :, c]
        acc = _place_2d(z, kernel.weights, boundary)
        if kernel.parallel_small is not None:
            acc = acc + _place_2d(z, kernel.parallel_small, boundary)
        out[:, :, c] = acc
    return out[:, :, 0] if squeeze else out


def fourier_pad_upsample(x, r: int) -> np.ndarray:
    """Ideal (alias-free) upsampling by zero-padding the spectrum.

    The N input coefficients are copied into their centered positions in
    a length r*N spectrum, the rest is zero, and the result is inverse
    transformed and scaled by r so the original samples are reproduced on
    the coarse grid. For even N the single Nyquist coefficient is split
    half-and-half into the +N/2 and -N/2 bins, the unique choice that
    keeps the output real and the implied kernel symmetric.
    """
    x = as_signal(x)
    r = validate_factor(r)
    n = x.size
    m = r * n
    f = np.fft.fft(x)
    g = np.zeros(m, dtype=complex)
    half = n // 2
    if n % 2 == 0:
        g[:half] = f[:half]
        g[half] = 0.5 * f[half]
        g[m - half] = 0.5 * f[half]
        g[m - half + 1:] = f[half + 1:]
    else:
        g[:half + 1] = f[:half + 1]
        g[m - half:] = f[half + 1:]
    out = r * np.fft.ifft(g)
    residue = float(np.max(np.abs(out.imag)))
    if residue > 1e-9:
        raise NonRealResultError(
            f"Fourier padding produced imaginary residue {residue:.3e}; "
            "Nyquist bin handling is inconsistent"
        )
    return out.real


def operator_matrix(op, n: int) -> np.ndarray:
    """Dense matrix of a linear signal operator on length-n inputs.

    Column j is the operator applied to the j-th standard basis vector;
    the matrix-vector product then reproduces direct application.
    """
    n = int(n)
    if n < 1:
        raise ValueError("input length must be >= 1")
    cols = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        cols.append(np.asarray(op(e), dtype=float))
    return np.stack(cols, axis=1)
