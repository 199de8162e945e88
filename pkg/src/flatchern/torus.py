"""Dirac operator and heat semigroup on a flat torus, mode by mode.

The unit cell is [0,1]^n; Fourier covectors run over xi in 2 pi (Z^n + eps)
where eps in {0, 1/2}^n selects the spin structure (periodic/antiperiodic
per cycle).  Everything is exactly diagonal in this basis: the Dirac matrix
at mode xi is i c(xi) and its square is |xi|^2_g times the identity.

Lattice truncations carry certified tail bounds: the remainder of any sum
dominated by exp(-s (|xi|_g - S)^2) over the excluded modes is estimated by
a product of one-dimensional Gaussian tails with geometric remainders, all
inequalities conservative.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, fsum, pi, sqrt

import numpy as np

from .clifford import GammaSet, Vielbein, vielbein


@dataclass(frozen=True, eq=False)
class TorusGeometry:
    n: int
    g: np.ndarray
    spin_offsets: np.ndarray
    g_inv: np.ndarray
    frame: Vielbein

    @property
    def eps(self) -> np.ndarray:
        return self.spin_offsets

    def norm_sq(self, xi) -> float:
        xi = np.asarray(xi, dtype=float)
        return float(xi @ self.g_inv @ xi)

    def mode(self, k) -> "LatticeMode":
        xi = 2.0 * pi * (np.asarray(k, dtype=float) + self.spin_offsets)
        return LatticeMode(xi=xi, norm_sq=self.norm_sq(xi))


def torus_geometry(n: int, g, spin_offsets=None) -> TorusGeometry:
    if n % 2 != 0 or n < 2:
        raise ValueError(f"dimension must be even and >= 2, got {n}")
    g = np.asarray(g, dtype=float)
    if g.shape != (n, n):
        raise ValueError(f"metric shape {g.shape} does not match n={n}")
    vb = vielbein(g)
    if spin_offsets is None:
        spin_offsets = np.full(n, 0.5)
    eps = np.asarray(spin_offsets, dtype=float)
    if eps.shape != (n,) or not np.all((eps == 0.0) | (eps == 0.5)):
        raise ValueError("spin offsets must be a vector over {0, 1/2}")
    g_inv = np.linalg.inv(g)
    g_inv = (g_inv + g_inv.T) / 2
    g_inv.setflags(write=False)
    eps.setflags(write=False)
    return TorusGeometry(n=n, g=vb.g, spin_offsets=eps, g_inv=g_inv, frame=vb)


@dataclass(frozen=True, eq=False)
class LatticeMode:
    xi: np.ndarray
    norm_sq: float


def dirac_mode(geom: TorusGeometry, gamma: GammaSet, xi) -> np.ndarray:
    """D restricted to the mode xi: i sum_a (e^T xi)_a gamma^a."""
    if gamma.n != geom.n:
        raise ValueError("gamma set dimension does not match geometry")
    vec = xi.xi if isinstance(xi, LatticeMode) else np.asarray(xi, dtype=float)
    w = geom.frame.e.T @ vec
    out = np.zeros((gamma.dim, gamma.dim), dtype=complex)
    for a in range(geom.n):
        out += (1j * w[a]) * gamma.gammas[a]
    return out


def heat_weight(mode: LatticeMode, t: float) -> float:
    if t < 0:
        raise ValueError("heat time must be nonnegative")
    return exp(-t * mode.norm_sq)


def _theta1d(alpha: float, eps: float, lo: float):
    """Certified upper bound for sum over v in Z+eps with |v| >= lo of e^{-a v^2}.

    The grid is symmetric for eps in {0, 1/2}: strictly positive values are
    doubled and v = 0 (eps = 0 only) counts once.
    """
    if eps == 0.0 and lo <= 0.0:
        total = 1.0
    else:
        total = 0.0
    j0 = 0
    while j0 + eps < lo or j0 + eps <= 0.0:
        j0 += 1
    v = float(j0) + eps
    for _ in range(100000):
        last = exp(-alpha * v * v)
        total += 2.0 * last
        v += 1.0
        if last < 1e-320:
            break
    else:
        raise RuntimeError("theta tail failed to converge")
    # remaining terms start at v and shrink by at least exp(-alpha (2v - 1))
    ratio = exp(-alpha * (2.0 * v - 1.0))
    if ratio >= 1.0:
        raise RuntimeError("tail ratio not contractive; exponent too small")
    total += 2.0 * exp(-alpha * v * v) / (1.0 - ratio)
    return total


def _tail_bound(geom: TorusGeometry, box: int, s: float, shift_norm: float) -> float:
    """Upper bound for sum over |k+eps|_inf > box of e^{-s (|xi|_g - S)^2}.

    Uses |xi|_g >= c |k+eps|_2 with c = 2 pi sqrt(lambda_min(g^{-1})) and
    (x-S)^2 >= x^2/2 - S^2, then a union bound over which axis leaves the box
    and one-dimensional Gaussian tails.
    """
    lam_min = float(np.linalg.eigvalsh(geom.g_inv)[0])
    c = 2.0 * pi * sqrt(lam_min)
    alpha = 0.5 * s * c * c
    inflate = exp(s * shift_norm * shift_norm)
    lo = box + 0.5
    full = [_theta1d(alpha, e, 0.0) for e in geom.eps]
    tails = [_theta1d(alpha, e, lo) for e in geom.eps]
    total = 0.0
    for i in range(geom.n):
        prod = tails[i]
        for j in range(geom.n):
            if j != i:
                prod *= full[j]
        total += prod
    return inflate * total


def truncate_lattice(geom: TorusGeometry, shifts, tol: float, s_min: float = 1.0):
    """Modes inside a certified box, plus the tail bound that justified it.

    ``shifts`` are wavevectors that evaluation may add to a base mode; the
    bound covers the worst case |xi|_g -> |xi|_g - S with S the largest
    shift norm, at minimal total heat time ``s_min``.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if s_min <= 0:
        raise ValueError("minimal heat time must be positive")
    shift_norm = 0.0
    for w in shifts:
        shift_norm = max(shift_norm, sqrt(geom.norm_sq(np.asarray(w, dtype=float))))
    box = 0
    while True:
        bound = _tail_bound(geom, box, s_min, shift_norm)
        if bound <= tol:
            break
        box += 1
        if box > 200:
            raise RuntimeError("truncation box exceeds sanity cap; tolerance unattainable")
    modes = []
    ranges = [range(-box - 1, box + 1) for _ in range(geom.n)]
    half = box + 0.5
    grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, geom.n)
    inside = np.max(np.abs(grid + geom.eps), axis=1) <= half
    for k in grid[inside]:
        modes.append(geom.mode(k))
    modes.sort(key=lambda m: (m.norm_sq, tuple(m.xi)))
    return modes, bound


def theta_trace(geom: TorusGeometry, t: float) -> float:
    """Scalar heat trace sum over xi of e^{-t |xi|^2_g}, tail below 1e-12 relative."""
    if t <= 0:
        raise ValueError("heat trace requires t > 0")
    # lower bound the sum by its largest term to convert relative -> absolute
    box = 2
    while True:
        modes, _ = _box_modes(geom, box)
        m0 = min(m.norm_sq for m in modes)
        lam_min = float(np.linalg.eigvalsh(geom.g_inv)[0])
        c = 2.0 * pi * sqrt(lam_min)
        if m0 <= (c * (box + 0.5)) ** 2:
            break
        box += 2
    floor = exp(-t * m0)
    modes, bound = truncate_lattice(geom, (), tol=1e-13 * floor, s_min=t)
    return fsum(heat_weight(m, t) for m in modes)


def _box_modes(geom: TorusGeometry, box: int):
    ranges = [range(-box - 1, box + 1) for _ in range(geom.n)]
    grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, geom.n)
    inside = np.max(np.abs(grid + geom.eps), axis=1) <= box + 0.5
    modes = [geom.mode(k) for k in grid[inside]]
    return modes, box
