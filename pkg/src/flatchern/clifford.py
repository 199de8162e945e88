"""Gamma matrices, chirality, vielbeins, and Clifford quantization of forms.

Conventions: gamma^a gamma^b + gamma^b gamma^a = -2 delta^{ab}, each gamma^a
anti-Hermitian, chirality Gamma = i^{n/2} gamma^1 ... gamma^n.  With these
choices c(xi)^2 = -|xi|^2 and the per-mode Dirac square is nonnegative.

The degree-n normalization constant kappa_n = supertrace(gamma^1 ... gamma^n)
is exposed via :func:`kappa` instead of being hard-coded anywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .scalars import to_complex

_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class GammaSet:
    """Irreducible Clifford representation in even dimension n."""

    n: int
    gammas: tuple
    chirality: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return 1 << (self.n // 2)

    def product(self, axes: tuple) -> np.ndarray:
        """Ordered product gamma^{a_1} ... gamma^{a_k} (0-based axes)."""
        got = self._cache.get(axes)
        if got is None:
            got = np.eye(self.dim, dtype=complex)
            for a in axes:
                got = got @ self.gammas[a]
            self._cache[axes] = _frozen(got)
        return got


def build_gammas(n: int, flip_chirality: bool = False) -> GammaSet:
    """Iterated tensor-product construction of the gamma matrices.

    ``flip_chirality`` replaces Gamma by -Gamma; it exists as the one
    self-calibration knob pinned by the localization check.
    """
    if n % 2 != 0 or not 2 <= n <= 8:
        raise ValueError(f"dimension must be even and in [2, 8], got {n}")
    gammas = [1j * _SIGMA1, 1j * _SIGMA2]
    while len(gammas) < n:
        eye = np.eye(1 << (len(gammas) // 2), dtype=complex)
        gammas = [np.kron(g, _SIGMA3) for g in gammas]
        gammas.append(np.kron(eye, 1j * _SIGMA1))
        gammas.append(np.kron(eye, 1j * _SIGMA2))
    chirality = np.eye(1 << (n // 2), dtype=complex) * (1j) ** (n // 2)
    for g in gammas:
        chirality = chirality @ g
    if flip_chirality:
        chirality = -chirality
    return GammaSet(
        n=n,
        gammas=tuple(_frozen(g) for g in gammas),
        chirality=_frozen(chirality),
    )


@dataclass(frozen=True, eq=False)
class Vielbein:
    """Lower-triangular frame e with e e^T = g^{-1} (Cholesky, canonical)."""

    g: np.ndarray
    e: np.ndarray


def vielbein(g) -> Vielbein:
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("metric must be a square matrix")
    if not np.allclose(g, g.T, rtol=0, atol=1e-12):
        raise ValueError("metric must be symmetric")
    try:
        np.linalg.cholesky(g)
        g_inv = np.linalg.inv(g)
        e = np.linalg.cholesky((g_inv + g_inv.T) / 2)
    except np.linalg.LinAlgError as err:
        raise ValueError("metric must be symmetric positive definite") from err
    return Vielbein(g=_frozen(g.copy()), e=_frozen(e))


def quantize(gamma: GammaSet, vb: Vielbein, coeffs: dict) -> np.ndarray:
    """Clifford multiplication by the form with the given coefficients.

    ``coeffs`` maps strictly increasing index tuples I = (i_1 < ... < i_k)
    to scalars, encoding sum_I c_I dx^{i_1} ^ ... ^ dx^{i_k}.  The result is
    the frame-minor expansion

        c(dx^I) = sum_{a_1 < ... < a_k} det(e[I, A]) gamma^{a_1} ... gamma^{a_k},

    which is the antisymmetrized extension of c(dx^i) = e_a^i gamma^a and is
    independent of the frame choice (ordered products of the ĉ(dx^i) are not,
    once g has off-diagonal entries).
    """
    n = gamma.n
    if vb.e.shape[0] != n:
        raise ValueError("vielbein dimension does not match gamma set")
    out = np.zeros((gamma.dim, gamma.dim), dtype=complex)
    for idx, coeff in coeffs.items():
        idx = tuple(idx)
        if any(not 0 <= i < n for i in idx):
            raise ValueError(f"form index out of range: {idx}")
        if list(idx) != sorted(set(idx)):
            raise ValueError(f"form indices must be strictly increasing: {idx}")
        if len(idx) > n:
            raise ValueError("form degree exceeds dimension")
        c = to_complex(coeff)
        if c == 0:
            continue
        k = len(idx)
        if k == 0:
            out += c * np.eye(gamma.dim, dtype=complex)
            continue
        rows = vb.e[list(idx), :]
        for axes in combinations(range(n), k):
            minor = np.linalg.det(rows[:, list(axes)]) if k > 1 else rows[0, axes[0]]
            if minor != 0:
                out += c * minor * gamma.product(axes)
    return out


def supertrace(gamma: GammaSet, m: np.ndarray) -> complex:
    m = np.asarray(m)
    if m.shape != (gamma.dim, gamma.dim):
        raise ValueError(f"matrix shape {m.shape} does not match spinor dimension {gamma.dim}")
    return complex(np.trace(gamma.chirality @ m))


def kappa(gamma: GammaSet) -> complex:
    """Supertrace of the ordered product of all gammas (top-degree constant)."""
    return supertrace(gamma, gamma.product(tuple(range(gamma.n))))
