"""Dense Hermitian kernels: moduli, PSD tests, simultaneous diagonalization.

Matrices are numpy arrays with complex entries.  Tolerances default to
``DEFAULT_EPS`` and can be overridden per call; thresholds that depend on the
data are scaled relative to the operator norms involved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import CommutatorTooLarge, NonHermitianInput

log = logging.getLogger(__name__)

DEFAULT_EPS = 1e-9

# Negative eigenvalues of nominally PSD matrices at least this small
# (relative to scale) are roundoff and are zeroed quietly; anything worse is
# zeroed too but logged loudly, since it means the input was not PSD.
_CLAMP_FLOOR = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite two-dimensional complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.conjugate(np.asarray(m).T)


def opnorm(m) -> float:
    """Operator (largest singular value) norm."""
    a = np.asarray(m, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def _sym(a: np.ndarray) -> np.ndarray:
    return (a + adjoint(a)) / 2.0


def hermitian_defect(m) -> float:
    a = as_matrix(m)
    return opnorm(a - adjoint(a))


def clamp_spectrum(values: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """Zero negative eigenvalues; roundoff stays quiet, real violations are logged."""
    w = np.array(values, dtype=float)
    neg = w < 0.0
    if neg.any():
        worst = float(w.min())
        if worst < -_CLAMP_FLOOR * scale:
            log.warning("clamping negative eigenvalue %.3e to 0 (scale %.3e)", worst, scale)
        else:
            log.debug("clamping roundoff eigenvalue %.3e to 0", worst)
        w[neg] = 0.0
    return w


@dataclass(frozen=True, eq=False)
class HermitianEig:
    """Eigenvalues in ascending order with a matching unitary column basis."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(h, eps: float = DEFAULT_EPS) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    Raises :class:`NonHermitianInput` when the defect ``|H - H*|`` exceeds
    ``eps * (1 + |H|)``.  The matrix is symmetrized before factoring so the
    output is exactly Hermitian data.
    """
    a = as_matrix(h)
    if hermitian_defect(a) > eps * (1.0 + opnorm(a)):
        raise NonHermitianInput("matrix is not Hermitian within tolerance")
    w, u = np.linalg.eigh(_sym(a))
    return HermitianEig(w, u)


def modulus(m, eps: float = DEFAULT_EPS) -> np.ndarray:
    """``|M| = (M*M)^(1/2)``, Hermitian PSD, for any rectangular ``M``."""
    a = as_matrix(m)
    gram = adjoint(a) @ a
    eig = hermitian_eig(gram, eps)
    w = clamp_spectrum(eig.eigenvalues, scale=1.0 + opnorm(gram))
    u = eig.eigenvectors
    return _sym((u * np.sqrt(w)) @ adjoint(u))


def min_eigenvalue(h) -> float:
    a = as_matrix(h)
    return float(np.linalg.eigvalsh(_sym(a))[0])


def is_psd(h, eps: float = DEFAULT_EPS) -> bool:
    """True when the smallest eigenvalue is at least ``-eps``.

    The input must be Hermitian to within the same ``eps`` (absolute), else
    :class:`NonHermitianInput` is raised.
    """
    a = as_matrix(h)
    if hermitian_defect(a) > eps:
        raise NonHermitianInput("PSD test needs a Hermitian matrix")
    return min_eigenvalue(a) >= -eps


def _clusters(values: np.ndarray, gap: float) -> list[slice]:
    # consecutive runs of an ascending sequence separated by more than `gap`
    groups: list[slice] = []
    start = 0
    n = len(values)
    for i in range(1, n + 1):
        if i == n or values[i] - values[i - 1] > gap:
            groups.append(slice(start, i))
            start = i
    return groups


def simultaneous_diagonalize(
    a, b, eps: float = DEFAULT_EPS
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Joint unitary diagonalization of a commuting Hermitian pair.

    Returns ``(u, avals, bvals)`` with ``u* a u = diag(avals)`` and
    ``u* b u = diag(bvals)``; the pairs ``(avals[i], bvals[i])`` are the joint
    eigenvalues.  The first matrix is eigendecomposed, its eigenvalues are
    clustered with gap threshold ``1e-8 * (1 + |a|)``, and within each
    near-degenerate cluster the compression of ``b`` is diagonalized, which
    resolves the pair completely.

    Raises :class:`CommutatorTooLarge` when
    ``|ab - ba| > eps * (1 + |a| * |b|)``.
    """
    A = as_matrix(a)
    B = as_matrix(b)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError("expected square matrices of equal shape")
    scale = 1.0 + opnorm(A) * opnorm(B)
    if opnorm(A @ B - B @ A) > eps * scale:
        raise CommutatorTooLarge(
            f"commutator norm exceeds {eps:g} * (1 + |A||B|); the pair does not commute"
        )
    if hermitian_defect(B) > eps * (1.0 + opnorm(B)):
        raise NonHermitianInput("second matrix is not Hermitian within tolerance")
    eig_a = hermitian_eig(A, eps)
    u = np.array(eig_a.eigenvectors, dtype=complex)
    gap = 1e-8 * (1.0 + opnorm(A))
    for block in _clusters(eig_a.eigenvalues, gap):
        cols = u[:, block]
        comp = _sym(adjoint(cols) @ B @ cols)
        _, v = np.linalg.eigh(comp)
        u[:, block] = cols @ v
    avals = np.real(np.diagonal(adjoint(u) @ A @ u)).copy()
    bvals = np.real(np.diagonal(adjoint(u) @ B @ u)).copy()
    return u, avals, bvals
