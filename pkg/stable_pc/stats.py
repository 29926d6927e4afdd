"""
Statistics behind every CI test: correlation from data, conditioning
submatrices, the Cholesky-based pseudo-inverse, partial correlation,
Fisher's z and the decision threshold.

All functions are pure and safe to call from any number of threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.stats import norm

from .core import CorrelationMatrix, DataMatrix
from .exceptions import (
    DataError,
    DegenerateConditioningError,
    LevelUnreachableError,
    NumericalError,
    PreconditionError,
)

RHO_BOUND = 1.0 - 1e-12
RANK_TOL = 1e-10


@dataclass(frozen=True)
class CiDecision:
    independent: bool
    z_statistic: float
    rho_hat: float
    degenerate: bool = False


@dataclass(frozen=True)
class ConditioningMatrices:
    m0: np.ndarray
    m1: np.ndarray
    m2: np.ndarray


def compute_correlation(data: Union[DataMatrix, np.ndarray]) -> CorrelationMatrix:
    """Sample Pearson correlation of the columns (two-pass, mean-centred)."""
    values = data.values if isinstance(data, DataMatrix) else np.asarray(data, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] < 2:
        raise DataError("correlation needs a 2-D matrix with at least 2 samples")
    centred = values - values.mean(axis=0)
    norms = np.sqrt(np.einsum("ij,ij->j", centred, centred))
    scale = np.abs(values).max(axis=0)
    for col in range(values.shape[1]):
        if norms[col] <= 1e-12 * max(scale[col], 1.0) * math.sqrt(values.shape[0]):
            raise DataError(f"column {col} has zero variance", column=col)
    unit = centred / norms
    c = unit.T @ unit
    return CorrelationMatrix(np.clip(c, -1.0, 1.0))


def _check_indices(n: int, i: int, j: int, cond: Sequence[int]) -> None:
    if i == j:
        raise PreconditionError(f"CI test needs two distinct variables, got ({i}, {j})")
    for k in (i, j, *cond):
        if not 0 <= k < n:
            raise PreconditionError(f"variable index {k} out of range for {n} variables")
    if i in cond or j in cond:
        raise PreconditionError(f"conditioning set {list(cond)} overlaps ({i}, {j})")
    if len(set(cond)) != len(cond):
        raise PreconditionError(f"conditioning set {list(cond)} has duplicates")


def extract_conditioning(c: CorrelationMatrix, i: int, j: int, cond: Sequence[int]) -> ConditioningMatrices:
    cond = [int(k) for k in cond]
    _check_indices(c.n, i, j, cond)
    if not cond:
        raise PreconditionError("conditioning set must be non-empty")
    v = c.values
    pair = [i, j]
    return ConditioningMatrices(
        m0=v[np.ix_(pair, pair)].copy(),
        m1=v[np.ix_(pair, cond)].copy(),
        m2=v[np.ix_(cond, cond)].copy(),
    )


def _stack_products(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    a (B, p, k) times b (B, k, q), accumulated over k in index order so each
    matrix of the stack gets the same bits whatever the stack size.
    """
    out = np.zeros((a.shape[0], a.shape[1], b.shape[2]))
    for k in range(a.shape[2]):
        out += a[:, :, k, None] * b[:, None, k, :]
    return out


def _full_rank_cholesky(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonally pivoted Cholesky of a stack of positive semidefinite matrices.

    Returns (L, rank) with L @ L^T == a for every matrix of the stack. The
    factorization of a matrix stops once its largest remaining pivot falls
    below RANK_TOL times its largest diagonal; columns from ``rank`` on are
    zero.
    """
    work = np.array(a, dtype=np.float64, copy=True)
    count, size = work.shape[0], work.shape[1]
    batch = np.arange(count)
    perm = np.tile(np.arange(size), (count, 1))
    rank = np.zeros(count, dtype=np.intp)
    if size == 0:
        return work, rank
    diag = np.arange(size)
    top = work[:, diag, diag].max(axis=1)
    tol = RANK_TOL * top
    alive = top > 0.0
    for k in range(size):
        rest = diag[k:]
        j = k + np.argmax(work[:, rest, rest], axis=1)
        alive &= work[batch, j, j] > tol
        swap = np.tile(diag, (count, 1))
        swap[:, k] = j
        swap[batch, j] = k
        work = work[batch[:, None, None], swap[:, :, None], swap[:, None, :]]
        perm = perm[batch[:, None], swap]

        pivot = np.sqrt(np.where(alive, work[:, k, k], 1.0))
        col = np.where(alive[:, None], work[:, k + 1:, k] / pivot[:, None], 0.0)
        work[:, k, k] = np.where(alive, pivot, 0.0)
        work[:, k + 1:, k] = col
        work[:, k + 1:, k + 1:] -= col[:, :, None] * col[:, None, :]
        rank += alive

    lower = np.where(diag[None, None, :] < rank[:, None, None], np.tril(work), 0.0)
    out = np.empty_like(lower)
    out[batch[:, None], perm] = lower
    return out, rank


def _spd_inverse(s: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse of a stack of symmetric positive definite matrices."""
    count, size = s.shape[0], s.shape[1]
    aug = np.concatenate((s, np.broadcast_to(np.eye(size), (count, size, size))), axis=2)
    for k in range(size):
        row = aug[:, k, :] / aug[:, k, k, None]
        factors = aug[:, :, k].copy()
        factors[:, k] = 0.0
        aug -= factors[:, :, None] * row[:, None, :]
        aug[:, k, :] = row
    return aug[:, :, size:]


def pseudo_inverses(stack: np.ndarray) -> np.ndarray:
    """
    Moore-Penrose pseudo-inverse of every matrix of a (B, l, l) stack through
    the full-rank Cholesky factor of M^T M: M+ = L (L^T L)^-1 (L^T L)^-1 L^T M^T.

    Each result depends only on its own matrix, never on the rest of the stack.
    """
    m = np.asarray(stack, dtype=np.float64)
    if m.ndim != 3 or m.shape[1] != m.shape[2]:
        raise PreconditionError(f"pseudo-inverse expects a stack of square matrices, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError("pseudo-inverse input contains NaN or Inf")
    mt = m.transpose(0, 2, 1)
    lower, rank = _full_rank_cholesky(_stack_products(mt, m))
    lt = lower.transpose(0, 2, 1)
    gram = _stack_products(lt, lower)
    diag = np.arange(m.shape[1])
    # unused columns of L are zero; a unit diagonal there leaves the product unchanged
    gram[:, diag, diag] = np.where(diag[None, :] < rank[:, None], gram[:, diag, diag], 1.0)
    inv = _spd_inverse(gram)
    left = _stack_products(_stack_products(lower, inv), inv)
    return _stack_products(_stack_products(left, lt), mt)


def pseudo_inverse(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError(f"pseudo-inverse expects a square matrix, got shape {m.shape}")
    return pseudo_inverses(m[None])[0]


def conditioning_blocks(c: CorrelationMatrix, conds: np.ndarray) -> np.ndarray:
    """C[S, S] for every row S of a (B, l) index array."""
    conds = np.asarray(conds, dtype=np.intp)
    return c.values[conds[:, :, None], conds[:, None, :]]


def conditional_h(c: CorrelationMatrix, i: int, j: int, cond: Sequence[int]) -> np.ndarray:
    """H = M0 - M1 M2^+ M1^T, rows ordered (i, j)."""
    mats = extract_conditioning(c, i, j, cond)
    return mats.m0 - mats.m1 @ pseudo_inverse(mats.m2) @ mats.m1.T


def partial_correlation_batch(
    c: CorrelationMatrix,
    i: np.ndarray,
    j: np.ndarray,
    conds: np.ndarray,
    m2_inv: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    rho(i[b], j[b] | conds[b]) for a batch of tests, with m2_inv[b] the
    pseudo-inverse of C[conds[b], conds[b]]. Returns (rho, degenerate).

    Sums over the conditioning set run in index order and the bilinear term
    is always formed from the smaller index's side, so a test produces the
    same bits whatever batch it is part of and whichever endpoint leads.
    """
    v = c.values
    i = np.asarray(i, dtype=np.intp)
    j = np.asarray(j, dtype=np.intp)
    conds = np.asarray(conds, dtype=np.intp)
    xi = v[i[:, None], conds]
    xj = v[j[:, None], conds]
    size = conds.shape[1]

    wi = np.zeros_like(xi)
    wj = np.zeros_like(xj)
    for q in range(size):
        wi += xi[:, q, None] * m2_inv[:, q, :]
        wj += xj[:, q, None] * m2_inv[:, q, :]

    quad_i = np.zeros(i.size)
    quad_j = np.zeros(j.size)
    cross = np.zeros(i.size)
    lower = j < i
    for q in range(size):
        quad_i += wi[:, q] * xi[:, q]
        quad_j += wj[:, q] * xj[:, q]
        cross += np.where(lower, wj[:, q] * xi[:, q], wi[:, q] * xj[:, q])

    h_ii = v[i, i] - quad_i
    h_jj = v[j, j] - quad_j
    h_ij = v[i, j] - cross
    prod = h_ii * h_jj
    degenerate = ~(prod > 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        rho = np.where(degenerate, 0.0, h_ij / np.sqrt(np.where(degenerate, 1.0, prod)))
    return np.clip(rho, -RHO_BOUND, RHO_BOUND), degenerate


def partial_correlations(
    c: CorrelationMatrix,
    i: int,
    others: Sequence[int],
    cond: Sequence[int],
    m2_inv: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    rho(i, j | cond) for every j in ``others``, sharing one pseudo-inverse
    of C[cond, cond]. Returns (rho, degenerate) arrays.
    """
    js = np.asarray(others, dtype=np.intp)
    count = js.size
    conds = np.broadcast_to(np.asarray(cond, dtype=np.intp), (count, len(cond)))
    stack = np.broadcast_to(m2_inv, (count,) + np.shape(m2_inv))
    return partial_correlation_batch(c, np.full(count, i, dtype=np.intp), js, conds, stack)


def partial_correlation(c: CorrelationMatrix, i: int, j: int, cond: Sequence[int]) -> float:
    cond = [int(k) for k in cond]
    _check_indices(c.n, i, j, cond)
    if not cond:
        return _clamp(float(c.values[i, j]))
    m2_inv = pseudo_inverse(c.values[np.ix_(cond, cond)])
    rho, degenerate = partial_correlations(c, i, [j], cond, m2_inv)
    if degenerate[0]:
        raise DegenerateConditioningError(f"degenerate conditioning for ({i}, {j}) given {cond}")
    return float(rho[0])


def _clamp(rho: float) -> float:
    return min(max(rho, -RHO_BOUND), RHO_BOUND)


def fisher_z_values(rho: np.ndarray) -> np.ndarray:
    """|z| for an array of partial correlations, clamped away from +-1."""
    r = np.clip(np.asarray(rho, dtype=np.float64), -RHO_BOUND, RHO_BOUND)
    return np.abs(0.5 * np.log((1.0 + r) / (1.0 - r)))


def fisher_z(rho: float) -> float:
    return float(fisher_z_values(np.array([float(rho)]))[0])


def threshold_tau(alpha: float, m: int, ell: int) -> float:
    """Phi^-1(1 - alpha/2) / sqrt(m - ell - 3)."""
    if not 0.0 < alpha <= 1.0:
        raise PreconditionError(f"alpha must be in (0, 1], got {alpha}")
    dof = m - ell - 3
    if dof < 1:
        raise LevelUnreachableError(m, ell)
    return float(norm.ppf(1.0 - alpha / 2.0)) / math.sqrt(dof)


def ci_test(c: CorrelationMatrix, i: int, j: int, cond: Sequence[int], tau: float) -> CiDecision:
    try:
        rho = partial_correlation(c, i, j, cond)
    except DegenerateConditioningError:
        return CiDecision(independent=False, z_statistic=math.inf, rho_hat=0.0, degenerate=True)
    z = fisher_z(rho)
    return CiDecision(independent=z <= tau, z_statistic=z, rho_hat=rho)
