"""Independent oracles used to freeze expected values.

Everything here is deliberately written the slow, literal way (direct
sums and enumerations) so the tests never share a code path with the
library implementations they check.
"""

import numpy as np


def brute_dft(x) -> np.ndarray:
    """Literal O(N^2) evaluation of F_k = sum_j exp(-2*pi*i*j*k/N) x_j."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        for j in range(n):
            out[k] += np.exp(-2j * np.pi * j * k / n) * x[j]
    return out


def brute_idft(f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    n = f.size
    out = np.zeros(n, dtype=complex)
    for j in range(n):
        for k in range(n):
            out[j] += np.exp(2j * np.pi * j * k / n) * f[k]
    return out / n


def brute_dft2(img) -> np.ndarray:
    """Literal O((HW)^2) double-sum 2D DFT of one channel."""
    img = np.asarray(img, dtype=complex)
    h, w = img.shape
    out = np.zeros((h, w), dtype=complex)
    for k1 in range(h):
        for k2 in range(w):
            acc = 0.0 + 0.0j
            for j1 in range(h):
                for j2 in range(w):
                    acc += img[j1, j2] * np.exp(-2j * np.pi * (j1 * k1 / h + j2 * k2 / w))
            out[k1, k2] = acc
    return out


def dirichlet_interpolant(u, n: int, r: int) -> float:
    """Periodic-sinc value at output offset u for an N-point input
    upsampled to M = r*N, with the even-N Nyquist term half-weighted:

        D(u) = (1/N) [ 1 + 2 sum_{0<k<N/2} cos(2 pi k u / M) + cos(pi N u / M) ]

    (the last term present only for even N).
    """
    m = r * n
    total = 1.0
    for k in range(1, (n + 1) // 2):
        total += 2.0 * np.cos(2.0 * np.pi * k * u / m)
    if n % 2 == 0:
        total += np.cos(np.pi * n * u / m)
    return total / n


def dirichlet_matrix(n: int, r: int) -> np.ndarray:
    """Ideal upsampling operator built column by column from the formula."""
    m = r * n
    out = np.zeros((m, n))
    for j in range(n):
        for p in range(m):
            out[p, j] = dirichlet_interpolant(p - r * j, n, r)
    return out


def enumerate_contributions(k: int, s: int, out_len: int) -> np.ndarray:
    """Tap-placement counts by literal enumeration (anchor floor(k/2))."""
    c = k // 2
    counts = np.zeros(out_len, dtype=int)
    for i in range(out_len // s):
        for j in range(k):
            counts[(s * i + j - c) % out_len] += 1
    return counts


def truncated_sinc_square_replicas(ell, r: int, terms: int) -> np.ndarray:
    """r * sum_{|m|<=terms} sinc^2(l - r*m): the literal replica sum that
    a rate-r realization of the triangular kernel folds into one band."""
    ell = np.asarray(ell, dtype=float)
    m = np.arange(-terms, terms + 1)
    return r * np.sum(np.sinc(ell[:, None] - r * m[None, :]) ** 2, axis=1)


def random_bandlimited(n: int, cutoff: int, rng) -> np.ndarray:
    """Real signal with conjugate-symmetric random spectrum up to cutoff."""
    spec = np.zeros(n, dtype=complex)
    spec[0] = rng.normal()
    for k in range(1, cutoff + 1):
        re, im = rng.normal(), rng.normal()
        spec[k] = re + 1j * im
        spec[n - k] = re - 1j * im
    return np.fft.ifft(spec).real * n
