"""Invariant forms on the torus cross the circle.

A :class:`TrigPolyForm` is a finite sum of terms c * e^{2 pi i <m,x>} dx^I
with integer modes m and strictly increasing index tuples I.  Coefficients
may be exact (int, Fraction, QI, TauPoly) or complex; the algebra only ever
uses + and *, so both backends share one code path.

A :class:`EquivariantForm` is a pair (prime, dblprime) encoding
theta = theta' + dtheta_T ^ theta'' for the invariant circle direction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import TAU, TAU_NUMERIC, is_exact


def _merge_sign(left: tuple, right: tuple):
    """Sign sorting dx^left ^ dx^right, or None when an index repeats."""
    if set(left) & set(right):
        return None
    inversions = sum(1 for i in left for j in right if j < i)
    return -1 if inversions % 2 else 1


class TrigPolyForm:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = int(n)
        clean = {}
        for (mode, idx), coeff in (terms or {}).items():
            mode = tuple(int(m) for m in mode)
            idx = tuple(int(i) for i in idx)
            if len(mode) != self.n:
                raise ValueError(f"mode {mode} has wrong length for n={self.n}")
            if list(idx) != sorted(set(idx)) or any(not 0 <= i < self.n for i in idx):
                raise ValueError(f"bad index tuple {idx}")
            if coeff:
                key = (mode, idx)
                acc = clean.get(key)
                coeff = coeff if acc is None else acc + coeff
                if coeff:
                    clean[key] = coeff
                else:
                    clean.pop(key, None)
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "TrigPolyForm":
        return cls(n)

    @classmethod
    def term(cls, n: int, mode, idx, coeff=1) -> "TrigPolyForm":
        return cls(n, {(tuple(mode), tuple(idx)): coeff})

    @classmethod
    def one(cls, n: int) -> "TrigPolyForm":
        return cls.term(n, (0,) * n, ())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TrigPolyForm) and self.n == other.n and self.terms == other.terms

    def __neg__(self) -> "TrigPolyForm":
        return TrigPolyForm(self.n, {k: -c for k, c in self.terms.items()})

    def __add__(self, other: "TrigPolyForm") -> "TrigPolyForm":
        if not isinstance(other, TrigPolyForm):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k)
            s = c if acc is None else acc + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        result = TrigPolyForm(self.n)
        result.terms = out
        return result

    def __sub__(self, other: "TrigPolyForm") -> "TrigPolyForm":
        return self + (-other)

    def scaled(self, scalar) -> "TrigPolyForm":
        if not scalar:
            return TrigPolyForm(self.n)
        return TrigPolyForm(self.n, {k: scalar * c for k, c in self.terms.items()})

    def degrees(self) -> set:
        return {len(idx) for (_, idx) in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("form is not homogeneous")
        return degs.pop()

    def __repr__(self) -> str:
        if not self.terms:
            return f"TrigPolyForm({self.n}, 0)"
        bits = ", ".join(f"{k}: {c!r}" for k, c in sorted(self.terms.items()))
        return f"TrigPolyForm({self.n}, {{{bits}}})"


def wedge(a: TrigPolyForm, b: TrigPolyForm) -> TrigPolyForm:
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    out = TrigPolyForm(a.n)
    acc = out.terms
    for (ma, ia), ca in a.terms.items():
        for (mb, ib), cb in b.terms.items():
            sign = _merge_sign(ia, ib)
            if sign is None:
                continue
            mode = tuple(x + y for x, y in zip(ma, mb))
            idx = tuple(sorted(ia + ib))
            c = ca * cb
            if sign < 0:
                c = -c
            key = (mode, idx)
            prev = acc.get(key)
            s = c if prev is None else prev + c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return out


def exterior_d(a: TrigPolyForm) -> TrigPolyForm:
    """d(c e^{2 pi i <m,x>} dx^I) = sum_k c tau m_k e^{...} dx^k ^ dx^I."""
    out = TrigPolyForm(a.n)
    acc = out.terms
    for (mode, idx), coeff in a.terms.items():
        tau_c = TAU * coeff if is_exact(coeff) else TAU_NUMERIC * coeff
        for k in range(a.n):
            if mode[k] == 0 or k in idx:
                continue
            sign = _merge_sign((k,), idx)
            c = tau_c * mode[k]
            if sign < 0:
                c = -c
            key = (mode, tuple(sorted((k,) + idx)))
            prev = acc.get(key)
            s = c if prev is None else prev + c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return out


def parity_twist(a: TrigPolyForm) -> TrigPolyForm:
    """Multiply each homogeneous term by (-1)^{degree}."""
    return TrigPolyForm(
        a.n, {k: (-c if len(k[1]) % 2 else c) for k, c in a.terms.items()}
    )


@dataclass(frozen=True)
class EquivariantForm:
    prime: TrigPolyForm
    dblprime: TrigPolyForm

    def __post_init__(self):
        if self.prime.n != self.dblprime.n:
            raise ValueError("component dimension mismatch")

    @property
    def n(self) -> int:
        return self.prime.n

    @classmethod
    def of(cls, prime: TrigPolyForm, dblprime=None) -> "EquivariantForm":
        return cls(prime, dblprime if dblprime is not None else TrigPolyForm(prime.n))

    @classmethod
    def unit(cls, n: int) -> "EquivariantForm":
        return cls(TrigPolyForm.one(n), TrigPolyForm(n))

    def __bool__(self) -> bool:
        return bool(self.prime) or bool(self.dblprime)

    def __add__(self, other: "EquivariantForm") -> "EquivariantForm":
        return EquivariantForm(self.prime + other.prime, self.dblprime + other.dblprime)

    def __neg__(self) -> "EquivariantForm":
        return EquivariantForm(-self.prime, -self.dblprime)

    def scaled(self, scalar) -> "EquivariantForm":
        return EquivariantForm(self.prime.scaled(scalar), self.dblprime.scaled(scalar))


def equivariant_product(u: EquivariantForm, v: EquivariantForm) -> EquivariantForm:
    """Graded product on forms with an invariant circle factor.

    (theta_1' + dt^theta_1'')(theta_2' + dt^theta_2'') expands to prime part
    theta_1' ^ theta_2' and dblprime part theta_1'' ^ theta_2'
    + (-1)^{|theta_1'|} theta_1' ^ theta_2''; the dt ^ dt term dies.
    """
    prime = wedge(u.prime, v.prime)
    dbl = wedge(u.dblprime, v.prime) + wedge(parity_twist(u.prime), v.dblprime)
    return EquivariantForm(prime, dbl)


def dga_differential(theta: EquivariantForm) -> EquivariantForm:
    """(d + iota_{dT}) in the (prime, dblprime) presentation."""
    return EquivariantForm(
        exterior_d(theta.prime) + theta.dblprime,
        -exterior_d(theta.dblprime),
    )
