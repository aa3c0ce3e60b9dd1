"""Least-squares fitting of transposed-convolution kernels to the ideal
(Fourier zero-padding) upsampler.

A stride-r transposed convolution is linear in its taps, so with basis
operators B_j (one-hot kernels) the fit

    min_w || sum_j w_j B_j - U ||_F^2,   U = ideal upsampling operator,

is a convex quadratic solved exactly by the K x K normal equations. The
Gram matrix is symmetric PSD; rank-deficient systems (e.g. the parallel
small kernel duplicating central taps) are resolved by the deterministic
minimum-norm solution. Because kernel anchors are fixed at floor(K/2),
supports are nested in K and fitting residuals are monotone
non-increasing, reaching zero at full support K = r*N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .upsamplers import (
    KernelSpec,
    fourier_pad_upsample,
    operator_matrix,
    transposed_conv,
    validate_factor,
)

OBJECTIVES = ("operator_frobenius", "corpus_lsq")

#: Relative eigenvalue cutoff (times the Gram trace) below which basis
#: directions are treated as null space in the minimum-norm solve.
RANK_TOL = 1e-12

#: Gradient-descent defaults: step 1/(2*lambda_max) estimated by 20 power
#: iterations, relative-objective-change stop, iteration cap.
POWER_ITERATIONS = 20
GD_TOL = 1e-12
GD_MAX_ITER = 100_000


class DivergenceError(RuntimeError):
    """Gradient descent increased its objective repeatedly."""


@dataclass(frozen=True)
class FitProblem:
    """One kernel-fitting instance.

    ``n`` is the input length, ``r`` the upsampling factor (the stride
    always equals r), ``k`` the kernel size. ``corpus`` supplies the
    training signals for the "corpus_lsq" objective; ``parallel_small``
    is the optional size of a second, small kernel branch fitted jointly
    (see :func:`lctc_fit`).
    """

    n: int
    r: int
    k: int
    objective: str = "operator_frobenius"
    corpus: tuple = ()
    parallel_small: int | None = None

    def __post_init__(self) -> None:
        validate_factor(self.r)
        if self.n < 1:
            raise ValueError("input length must be >= 1")
        if self.k < 1:
            raise ValueError("kernel size must be >= 1")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if self.objective == "corpus_lsq" and len(self.corpus) == 0:
            raise ValueError("corpus_lsq objective requires a non-empty corpus")
        if self.parallel_small is not None:
            if self.parallel_small < 1 or self.parallel_small > self.k:
                raise ValueError("parallel kernel size must be in [1, k]")
        object.__setattr__(self, "corpus", tuple(np.asarray(x, dtype=float) for x in self.corpus))


@dataclass(frozen=True)
class FitResult:
    """Fitted kernel plus diagnostics.

    ``residual`` is the Frobenius operator distance (or root-mean-square
    corpus error). ``gram_rank`` reports the numerical rank of the normal
    equations; anything below the basis size means the minimum-norm
    solution was taken.
    """

    kernel: KernelSpec
    residual: float
    iterations: int
    gram_rank: int
    objective_history: tuple = field(default=())


class EdgeProfile(NamedTuple):
    center_mass: float
    edge_mass: float
    decays_toward_edge: bool


def build_basis(n: int, r: int, k: int) -> list[np.ndarray]:
    """Operator matrices of the one-hot kernels e_0 .. e_{k-1}.

    T(w) = sum_j w_j B_j reproduces the stride-r periodic transposed
    convolution with tap vector w exactly.
    """
    validate_factor(r)
    basis = []
    for j in range(k):
        taps = np.zeros(k)
        taps[j] = 1.0
        one_hot = KernelSpec(weights=taps, stride=r)
        basis.append(operator_matrix(lambda x: transposed_conv(x, one_hot), n))
    return basis


def ideal_operator(n: int, r: int) -> np.ndarray:
    """Dense matrix of the Fourier zero-padding upsampler (the fit target)."""
    return operator_matrix(lambda x: fourier_pad_upsample(x, r), n)


def _small_branch_basis(n: int, r: int, k: int, small: int) -> list[np.ndarray]:
    basis = []
    for j in range(small):
        taps = np.zeros(small)
        taps[j] = 1.0
        one_hot = KernelSpec(weights=np.zeros(k), stride=r, parallel_small=taps)
        basis.append(operator_matrix(lambda x: transposed_conv(x, one_hot), n))
    return basis


def _normal_equations(basis: list[np.ndarray], target: np.ndarray,
                      corpus: tuple) -> tuple[np.ndarray, np.ndarray, float]:
    """Gram matrix, right-hand side, and the constant term of the quadratic."""
    m = len(basis)
    if len(corpus) == 0:
        stack = np.stack([b.ravel() for b in basis])
        gram = stack @ stack.T
        rhs = stack @ target.ravel()
        const = float(np.sum(target * target))
    else:
        gram = np.zeros((m, m))
        rhs = np.zeros(m)
        const = 0.0
        for x in corpus:
            bx = np.stack([b @ x for b in basis])
            ux = target @ x
            gram += bx @ bx.T
            rhs += bx @ ux
            const += float(ux @ ux)
    return gram, rhs, const


def _min_norm_solve(gram: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, int]:
    """Minimum-norm solution of a symmetric PSD system via eigendecomposition."""
    evals, evecs = np.linalg.eigh(gram)
    cutoff = RANK_TOL * max(float(np.trace(gram)), np.finfo(float).tiny)
    keep = evals > cutoff
    inv = np.zeros_like(evals)
    inv[keep] = 1.0 / evals[keep]
    w = evecs @ (inv * (evecs.T @ rhs))
    return w, int(np.count_nonzero(keep))


def _residual(weights: np.ndarray, basis: list[np.ndarray], target: np.ndarray,
              corpus: tuple) -> float:
    """Residual recomputed from the operator, independent of the solve."""
    fitted = sum(w * b for w, b in zip(weights, basis))
    if len(corpus) == 0:
        return float(np.linalg.norm(fitted - target))
    err = sum(float(np.sum((fitted @ x - target @ x) ** 2)) for x in corpus)
    return float(np.sqrt(err / len(corpus)))


def _result_kernel(problem: FitProblem, weights: np.ndarray) -> KernelSpec:
    if problem.parallel_small is None:
        return KernelSpec(weights=weights, stride=problem.r)
    k = problem.k
    return KernelSpec(weights=weights[:k], stride=problem.r,
                      parallel_small=weights[k:])


def _problem_basis(problem: FitProblem) -> list[np.ndarray]:
    basis = build_basis(problem.n, problem.r, problem.k)
    if problem.parallel_small is not None:
        basis += _small_branch_basis(problem.n, problem.r, problem.k,
                                     problem.parallel_small)
    return basis


def fit_closed_form(problem: FitProblem) -> FitResult:
    """Solve the kernel fit exactly via the normal equations.

    Handles both objectives; a rank-deficient Gram matrix yields the
    minimum-norm weights (reported through ``gram_rank``).
    """
    basis = _problem_basis(problem)
    target = ideal_operator(problem.n, problem.r)
    gram, rhs, _ = _normal_equations(basis, target, problem.corpus)
    weights, rank = _min_norm_solve(gram, rhs)
    residual = _residual(weights, basis, target, problem.corpus)
    return FitResult(kernel=_result_kernel(problem, weights), residual=residual,
                     iterations=0, gram_rank=rank)


def fit_gradient_descent(problem: FitProblem, lr: float | None = None,
                         max_iter: int = GD_MAX_ITER, tol: float = GD_TOL,
                         init=None) -> FitResult:
    """Solve the kernel fit by plain gradient descent on the quadratic.

    The gradient is 2*(G w - b). The default step 1/(2*lambda_max(G))
    guarantees descent; ten consecutive objective increases raise
    :class:`DivergenceError` naming the step. Weights start at zero
    (the objective is convex, so this only affects iteration count).
    """
    if lr is not None and lr <= 0:
        raise ValueError("learning rate must be positive")
    basis = _problem_basis(problem)
    target = ideal_operator(problem.n, problem.r)
    gram, rhs, const = _normal_equations(basis, target, problem.corpus)
    if lr is None:
        lr = 1.0 / (2.0 * _power_lambda_max(gram))

    m = len(basis)
    w = np.zeros(m) if init is None else np.asarray(init, dtype=float).copy()
    if w.shape != (m,):
        raise ValueError(f"init must have shape ({m},)")

    def objective(v: np.ndarray) -> float:
        return float(v @ gram @ v - 2.0 * rhs @ v + const)

    obj = objective(w)
    history = [obj]
    increases = 0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        w = w - lr * 2.0 * (gram @ w - rhs)
        new = objective(w)
        history.append(new)
        if new > obj:
            increases += 1
            if increases >= 10:
                raise DivergenceError(
                    f"objective increased for 10 consecutive steps at lr={lr:g}")
        else:
            increases = 0
        if abs(obj - new) <= tol * max(abs(obj), np.finfo(float).tiny):
            obj = new
            break
        obj = new

    residual = _residual(w, basis, target, problem.corpus)
    _, rank = _min_norm_solve(gram, rhs)
    return FitResult(kernel=_result_kernel(problem, w), residual=residual,
                     iterations=iterations, gram_rank=rank,
                     objective_history=tuple(history))


def _power_lambda_max(gram: np.ndarray) -> float:
    m = gram.shape[0]
    v = np.ones(m) / np.sqrt(m)
    for _ in range(POWER_ITERATIONS):
        nxt = gram @ v
        norm = float(np.linalg.norm(nxt))
        if norm == 0.0:
            return 1.0
        v = nxt / norm
    return max(float(v @ gram @ v), np.finfo(float).tiny)


def residual_sweep(n: int, r: int, kernel_sizes) -> list[tuple[int, float]]:
    """Closed-form fit residual for each kernel size (sizes ascending).

    The fixed floor(K/2) anchor nests supports, so the residual column is
    non-increasing and hits zero (to round-off) at K = r*n.
    """
    sizes = [int(k) for k in kernel_sizes]
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("kernel sizes must be ascending")
    out = []
    for k in sizes:
        result = fit_closed_form(FitProblem(n=n, r=r, k=k))
        out.append((k, result.residual))
    return out


def kernel_edge_profile(kernel: KernelSpec) -> EdgeProfile:
    """Compare tap mass at the kernel center against its borders.

    center_mass is the mean |w| over the central third, edge_mass the
    mean |w| over the outer sixths; smooth interpolating kernels fade
    toward the border (edge < center).
    """
    w = kernel.weights
    if w.ndim != 1:
        raise ValueError("edge profile is defined for 1D kernels")
    k = w.shape[0]
    if k < 3:
        raise ValueError("kernel must have at least 3 taps")
    third = max(1, k // 3)
    lo = (k - third) // 2
    center = float(np.mean(np.abs(w[lo:lo + third])))
    sixth = max(1, k // 6)
    edge = float(np.mean(np.abs(np.concatenate([w[:sixth], w[-sixth:]]))))
    return EdgeProfile(center_mass=center, edge_mass=edge,
                       decays_toward_edge=edge < center)


def lctc_fit(problem: FitProblem) -> FitResult:
    """Jointly fit a large kernel plus a parallel small branch.

    The small branch duplicates central tap directions, so the joint Gram
    matrix is rank-deficient by construction and the minimum-norm
    solution is taken. The combined operator can represent everything the
    large kernel alone can, hence its residual never exceeds the
    large-only fit's.
    """
    if problem.parallel_small is None:
        raise ValueError("lctc_fit requires a parallel_small size")
    if problem.k < 5:
        raise ValueError("the large kernel of the parallel block must have k >= 5")
    return fit_closed_form(problem)
