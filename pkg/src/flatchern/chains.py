"""Truncated entire cyclic chains over the torus form algebra.

A chain is a linear combination of words (theta_0, ..., theta_N) whose slots
are basis equivariant forms.  A slot key is ("p"|"q", mode, indices): "p"
stands for e^{2 pi i <m,x>} dx^I and "q" for dtheta_T ^ e^{2 pi i <m,x>} dx^I.
Slots 1..N live in the quotient by constants, so any word carrying the unit
("p", 0, ()) in a slot >= 1 is identically zero and is dropped on sight.

The word degree uses the shifted grading: slot 0 contributes its form degree,
every later slot its form degree minus one.  All Koszul signs below are
computed from prefix sums of these shifted degrees.

Sign conventions for b and B are not copied from any source: the module pins
them through the exact nilpotency suite (b^2, B^2, {b,B}, {L,b}, {L,B}, L^2
with L the tensor extension of d + iota) together with the requirement that
the evaluated current vanish on total differentials.  The frozen result is
recorded in _SIGNS; the private knobs exist so the verification command can
demonstrate that a flipped convention fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .forms import EquivariantForm, TrigPolyForm, _merge_sign, wedge
from .scalars import QI, QI_ONE, TAU, TauPoly, to_complex


# --------------------------------------------------------------------------
# slot keys

def unit_slot(n: int) -> tuple:
    return ("p", (0,) * n, ())


def slot_form_degree(slot: tuple) -> int:
    """Equivariant form degree; the invariant circle form counts as -1."""
    kind, _, idx = slot
    return len(idx) - (1 if kind == "q" else 0)


def _shifted(slot: tuple, position: int) -> int:
    d = slot_form_degree(slot)
    return d if position == 0 else d - 1


def word_degree(word: tuple) -> int:
    return sum(_shifted(s, i) for i, s in enumerate(word))


def _prefix_degrees(word: tuple) -> list:
    pre = [0]
    for i, s in enumerate(word):
        pre.append(pre[-1] + _shifted(s, i))
    return pre


def slot_to_form(slot: tuple, n: int) -> EquivariantForm:
    kind, mode, idx = slot
    part = TrigPolyForm.term(n, mode, idx, QI_ONE)
    if kind == "p":
        return EquivariantForm(part, TrigPolyForm(n))
    return EquivariantForm(TrigPolyForm(n), part)


def slot_product(u: tuple, v: tuple):
    """Product of two basis slots: None or (sign, slot).

    Mirrors the graded product of equivariant forms: q*q dies on dt^dt, and
    p*q picks up (-1)^{deg p} from moving dt through the prime factor.
    """
    tu, mu, iu = u
    tv, mv, iv = v
    if tu == "q" and tv == "q":
        return None
    sign = _merge_sign(iu, iv)
    if sign is None:
        return None
    if tu == "p" and tv == "q" and len(iu) % 2:
        sign = -sign
    mode = tuple(a + b for a, b in zip(mu, mv))
    idx = tuple(sorted(iu + iv))
    kind = "p" if (tu == "p" and tv == "p") else "q"
    return sign, (kind, mode, idx)


_DGA_SLOT_CACHE: dict = {}


def dga_slot(slot: tuple) -> tuple:
    """Expansion of (d + iota)(slot) as ((coeff, slot), ...) with exact coeffs."""
    got = _DGA_SLOT_CACHE.get(slot)
    if got is not None:
        return got
    kind, mode, idx = slot
    n = len(mode)
    out = []
    if kind == "q":
        out.append((1, ("p", mode, idx)))
    d_sign = 1 if kind == "p" else -1
    for k in range(n):
        if mode[k] == 0 or k in idx:
            continue
        s = _merge_sign((k,), idx)
        out.append((TAU * (d_sign * s * mode[k]), (kind, mode, tuple(sorted((k,) + idx)))))
    got = tuple(out)
    _DGA_SLOT_CACHE[slot] = got
    return got


# --------------------------------------------------------------------------
# chains

class Chain:
    """Finite linear combination of normalized basis words."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = int(n)
        self.terms = {}
        if terms:
            for word, coeff in terms.items():
                self._accumulate(word, coeff)

    def _accumulate(self, word: tuple, coeff) -> None:
        if not coeff:
            return
        unit = unit_slot(self.n)
        if any(s == unit for s in word[1:]):
            return
        prev = self.terms.get(word)
        total = coeff if prev is None else prev + coeff
        if total:
            self.terms[word] = total
        else:
            self.terms.pop(word, None)

    @classmethod
    def zero(cls, n: int) -> "Chain":
        return cls(n)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Chain) and self.n == other.n and self.terms == other.terms

    def __add__(self, other: "Chain") -> "Chain":
        out = Chain(self.n)
        out.terms = dict(self.terms)
        for word, coeff in other.terms.items():
            out._accumulate(word, coeff)
        return out

    def __sub__(self, other: "Chain") -> "Chain":
        return self + other.scaled(-1)

    def __neg__(self) -> "Chain":
        return self.scaled(-1)

    def scaled(self, scalar) -> "Chain":
        out = Chain(self.n)
        if scalar:
            out.terms = {w: scalar * c for w, c in self.terms.items()}
        return out

    def max_len(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({word_degree(w) for w in self.terms}) <= 1

    def degree(self) -> int:
        degs = {word_degree(w) for w in self.terms}
        if len(degs) != 1:
            raise ValueError("chain is not homogeneous")
        return degs.pop()

    def __repr__(self) -> str:
        return f"Chain(n={self.n}, {len(self.terms)} words)"


def chain_word(n: int, forms, coeff=1) -> Chain:
    """Multilinear expansion of a word of equivariant forms into basis words."""
    out = Chain(n)
    if not coeff:
        return out
    partial = [((), coeff)]
    for theta in forms:
        nxt = []
        for word, c in partial:
            for (mode, idx), a in theta.prime.terms.items():
                nxt.append((word + (("p", mode, idx),), c * a))
            for (mode, idx), a in theta.dblprime.terms.items():
                nxt.append((word + (("q", mode, idx),), c * a))
        partial = nxt
    for word, c in partial:
        out._accumulate(word, c)
    return out


# --------------------------------------------------------------------------
# differentials

@dataclass(frozen=True)
class SignConvention:
    b_global: int = 1
    b_merge_variant: int = 0
    b_wrap_variant: int = 0
    connes_global: int = 1
    connes_rho_variant: int = 0
    suspension_variant: int = 0


# Pinned by the exact nilpotency suite plus vanishing of the evaluated
# current on total differentials; see tests and the verification command.
_SIGNS = SignConvention()


def _pow_sign(e: int) -> int:
    return -1 if e % 2 else 1


def hochschild_b(c: Chain, signs: SignConvention = None) -> Chain:
    """Cyclic Hochschild boundary in the suspended sign convention.

    Interior merges carry (-1)^{pre[i+1]}, the wrap term a_N a_0 carries
    -(-1)^{d_N pre[N]} with d_N the shifted degree of the last slot.  This is
    the unique assignment (up to the global sign) compatible with the tensor
    extension of d + iota and the cyclic rotation operator; see tests.
    """
    sg = signs or _SIGNS
    out = Chain(c.n)
    for word, coeff in c.terms.items():
        last = len(word) - 1
        if last == 0:
            continue
        pre = _prefix_degrees(word)
        for i in range(last):
            pr = slot_product(word[i], word[i + 1])
            if pr is None:
                continue
            psign, merged = pr
            exp = pre[i + 1] if sg.b_merge_variant == 0 else pre[i]
            s = sg.b_global * psign * _pow_sign(exp)
            out._accumulate(word[:i] + (merged,) + word[i + 2:], s * coeff)
        pr = slot_product(word[last], word[0])
        if pr is not None:
            psign, merged = pr
            d_last = _shifted(word[last], last)
            variants = (
                d_last * pre[last] + 1,
                d_last * pre[last],
                pre[last + 1],
            )
            s = sg.b_global * psign * _pow_sign(variants[sg.b_wrap_variant])
            out._accumulate((merged,) + word[1:last], s * coeff)
    return out


def connes_B(c: Chain, signs: SignConvention = None) -> Chain:
    sg = signs or _SIGNS
    out = Chain(c.n)
    unit = unit_slot(c.n)
    for word, coeff in c.terms.items():
        shifted = [slot_form_degree(s) - 1 for s in word]
        total = sum(shifted)
        ahead = 0
        for k in range(len(word)):
            u = ahead  # sum of shifted degrees before slot k
            v = total - ahead
            ahead += shifted[k]
            variants = (u * v, u * v + u, u * v + k)
            s = sg.connes_global * _pow_sign(variants[sg.connes_rho_variant])
            rotated = (unit,) + word[k:] + word[:k]
            out._accumulate(rotated, s * coeff)
    return out


def dga_tensor_extension(c: Chain, signs: SignConvention = None) -> Chain:
    """L: d + iota applied slotwise, with suspended Koszul signs.

    Slot i contributes (-1)^{pre[i]} times an extra -1 on slots past the
    unsuspended zeroth one.
    """
    sg = signs or _SIGNS
    out = Chain(c.n)
    for word, coeff in c.terms.items():
        pre = _prefix_degrees(word)
        for i, slot in enumerate(word):
            exp = pre[i] + (1 if i >= 1 and sg.suspension_variant == 0 else 0)
            sign = _pow_sign(exp)
            for factor, new_slot in dga_slot(slot):
                out._accumulate(
                    word[:i] + (new_slot,) + word[i + 1:], (sign * factor) * coeff
                )
    return out


def total_differential(c: Chain, signs: SignConvention = None) -> Chain:
    return (
        dga_tensor_extension(c, signs)
        + hochschild_b(c, signs)
        + connes_B(c, signs)
    )


# --------------------------------------------------------------------------
# seminorm, restriction, integration

def entire_norm(c: Chain, mode_weight: int = 1) -> float:
    """Growth seminorm: sum over words of |coeff| prod nu(slot) / floor(N/2)!.

    nu(slot) = (1 + |m|_1)^mode_weight, monotone in the weight power.
    """
    if mode_weight < 0:
        raise ValueError("mode weight must be nonnegative")
    total = 0.0
    for word, coeff in c.terms.items():
        prod = abs(to_complex(coeff))
        for _, mode, _ in word:
            prod *= (1 + sum(abs(m) for m in mode)) ** mode_weight
        total += prod / factorial((len(word) - 1) // 2)
    return total


def restrict_to_constants(word: tuple, n: int) -> TrigPolyForm:
    """Constant-loop restriction (1/N!) theta_0' ^ (-theta_1'') ^ ... ^ (-theta_N'')."""
    kind0, mode0, idx0 = word[0]
    if kind0 != "p":
        return TrigPolyForm(n)
    acc = TrigPolyForm.term(n, mode0, idx0, QI_ONE)
    for kind, mode, idx in word[1:]:
        if kind != "q":
            return TrigPolyForm(n)
        acc = wedge(acc, TrigPolyForm.term(n, mode, idx, QI(-1)))
        if not acc:
            return acc
    return acc.scaled(QI(Fraction(1, factorial(len(word) - 1))))


def integrate_top(a: TrigPolyForm):
    """Mode-0 coefficient of dx^1 ^ ... ^ dx^n (coordinate orientation)."""
    return a.terms.get(((0,) * a.n, tuple(range(a.n))), 0)


def chain_restriction_integral(c: Chain):
    """Right-hand side of the localization identity for a finite chain."""
    total = 0
    for word, coeff in c.terms.items():
        total = total + coeff * integrate_top(restrict_to_constants(word, c.n))
    return total


# --------------------------------------------------------------------------
# JSON chain DSL

def chain_from_json(data, n: int) -> Chain:
    from .scalars import parse_scalar

    def form_of(obj) -> TrigPolyForm:
        terms = {}
        for t in obj:
            key = (tuple(t["mode"]), tuple(t["indices"]))
            coeff = parse_scalar(t.get("re", 0), t.get("im", 0))
            if coeff:
                terms[key] = terms.get(key, 0) + coeff
        return TrigPolyForm(n, terms)

    out = Chain(n)
    for word in data:
        forms = [
            EquivariantForm(form_of(slot.get("prime", [])), form_of(slot.get("dblprime", [])))
            for slot in word
        ]
        out = out + chain_word(n, forms)
    return out


def chain_to_json(c: Chain) -> list:
    def scalar_fields(x):
        if isinstance(x, QI):
            return {"re": str(x.re), "im": str(x.im)}
        z = to_complex(x)
        return {"re": z.real, "im": z.imag}

    words = []
    for word in sorted(c.terms):
        coeff = c.terms[word]
        slots = []
        for i, (kind, mode, idx) in enumerate(word):
            term = {"mode": list(mode), "indices": list(idx)}
            term.update(scalar_fields(coeff) if i == 0 else {"re": 1, "im": 0})
            part = [term]
            if kind == "p":
                slots.append({"prime": part, "dblprime": []})
            else:
                slots.append({"prime": [], "dblprime": part})
        words.append(slots)
    return words


# --------------------------------------------------------------------------
# exact cocycle solver

def _as_qi_pair(coeff) -> tuple:
    """Split an exact chain coefficient into tau-degree components (c0, c1)."""
    if isinstance(coeff, TauPoly):
        if coeff.degree() > 1:
            raise ValueError("unexpected tau degree in differential")
        return coeff.coeff(0), coeff.coeff(1)
    return QI.of(coeff), QI(0)


def basis_words(n: int, n_max: int, mode_box: int, parity: str):
    """All normalized basis words with N <= n_max, |m|_inf <= mode_box, given parity."""
    from itertools import product as iproduct

    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    modes = list(iproduct(range(-mode_box, mode_box + 1), repeat=n))
    idxs = []
    for bits in range(1 << n):
        idxs.append(tuple(i for i in range(n) if bits >> i & 1))
    slots = [(k, m, i) for k in ("p", "q") for m in modes for i in idxs]
    unit = unit_slot(n)
    inner = [s for s in slots if s != unit]
    want = 0 if parity == "even" else 1
    out = []
    for n_len in range(n_max + 1):
        for word in iproduct(slots, *([inner] * n_len)):
            if word_degree(word) % 2 == want:
                out.append(word)
    return out


def solve_cocycles(n_max: int, mode_box: int, parity: str, n: int = 2):
    """Exact kernel of the total differential on the truncated word basis.

    The differential of any finite chain is computed exactly (its image may
    leave the input truncation; that larger span is where the linear system
    lives), so members of the returned list are genuine cocycles, not
    truncation artifacts.  Coefficients are integer-scaled Gaussian rationals.
    """
    cols = basis_words(n, n_max, mode_box, parity)
    if len(cols) > 4000:
        raise RuntimeError(
            f"truncation too large: {len(cols)} basis words (budget 4000); "
            "shrink n_max or mode_box"
        )
    rows: dict = {}
    for j, word in enumerate(cols):
        image = total_differential(Chain(n, {word: QI_ONE}))
        for out_word, coeff in image.terms.items():
            c0, c1 = _as_qi_pair(coeff)
            for tau_pow, comp in ((0, c0), (1, c1)):
                if comp:
                    rows.setdefault((out_word, tau_pow), {})[j] = comp
    kernel = _rational_kernel(list(rows.values()), len(cols))
    out = []
    for vec in kernel:
        chain = Chain(n, {cols[j]: c for j, c in vec.items()})
        if total_differential(chain):
            raise AssertionError("solver produced a non-cocycle; elimination bug")
        out.append(chain)
    out.sort(key=lambda ch: (len(ch.terms), sorted(ch.terms)))
    return out


def _rational_kernel(rows, width: int):
    """Kernel basis of a sparse exact matrix given as row dicts over QI."""
    # order rows deterministically: sparsest first, then by support pattern
    work = sorted(
        ({j: c for j, c in r.items()} for r in rows),
        key=lambda r: (len(r), sorted(r)),
    )
    pivot_of: dict = {}  # column -> reduced row (dict), with 1 at the column
    for row in work:
        row = dict(row)
        # eliminate known pivots
        while True:
            hit = None
            for j in row:
                if j in pivot_of:
                    hit = j
                    break
            if hit is None:
                break
            factor = row.pop(hit)
            for j2, c2 in pivot_of[hit].items():
                if j2 == hit:
                    continue
                acc = row.get(j2, QI(0)) - factor * c2
                if acc:
                    row[j2] = acc
                else:
                    row.pop(j2, None)
        if not row:
            continue
        piv = min(row)
        inv = row[piv]
        normalized = {j: c / inv for j, c in row.items()}
        # back-substitute into existing pivot rows
        for p, prow in pivot_of.items():
            if piv in prow:
                f = prow.pop(piv)
                for j2, c2 in normalized.items():
                    if j2 == piv:
                        continue
                    acc = prow.get(j2, QI(0)) - f * c2
                    if acc:
                        prow[j2] = acc
                    else:
                        prow.pop(j2, None)
        pivot_of[piv] = normalized
    free = [j for j in range(width) if j not in pivot_of]
    basis = []
    for f in free:
        vec = {f: QI_ONE}
        for p, prow in pivot_of.items():
            if f in prow:
                vec[p] = -prow[f]
        basis.append(_primitive(vec))
    return basis


def _primitive(vec: dict) -> dict:
    """Scale a QI vector to coprime Gaussian integers with a canonical sign."""
    from math import gcd

    denom = 1
    for c in vec.values():
        denom = denom * c.re.denominator // gcd(denom, c.re.denominator)
        denom = denom * c.im.denominator // gcd(denom, c.im.denominator)
    scaled = {j: c * denom for j, c in vec.items()}
    g = 0
    for c in scaled.values():
        g = gcd(g, abs(c.re.numerator))
        g = gcd(g, abs(c.im.numerator))
    if g > 1:
        scaled = {j: c / g for j, c in scaled.items()}
    lead = scaled[min(scaled)]
    if lead.re < 0 or (lead.re == 0 and lead.im < 0):
        scaled = {j: -c for j, c in scaled.items()}
    return scaled
