"""Symmetric-algebra tensors on cyclic words and the deformed differential.

A tensor gamma^g nu^n (w_1 ... w_k) is stored as a key (g, n, factors)
with the factors Koszul-sorted; a repeated odd factor makes the tensor
zero, and nu^2 = 0 when nu is odd (even pairing).  Three graded pieces
are tracked per tensor: its parity, its definition order g + n + total
length, and its filtration order 2g + n + k - 1.

The differential is d = gamma * delta + Delta:

* delta contracts an unordered pair of factors through the word bracket,
  moves both to the front with Koszul signs, and carries one extra factor
  (-1)**parity(first factor) fixed by requiring delta^2 = 0 on three and
  more factors together with the coderivation and Leibniz identities.
* Delta applies the word cobracket to one factor; an empty side raises
  the nu exponent instead of contributing a factor.  Sign bookkeeping
  transports the operator (whose parity depends on how many nu's the
  branch creates) past the preceding factors and migrates new nu's to
  the prefix.

Setting nu = 0 yields the gamma-only variant; single words of length
>= 2 with the zero differential form the third variant.  Elements are
truncated against a TruncationProfile; all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .bialgebra import bracket_raw, cobracket_raw
from .errors import UsageError
from .space import SymplecticSpace
from .words import accumulate, normalize_word

VARIANTS = ("lgv", "lg", "hq2")


class CETensor(NamedTuple):
    g: int
    n: int
    factors: tuple

    @property
    def definition_order(self) -> int:
        return self.g + self.n + sum(len(w) for w in self.factors)

    @property
    def filtration_order(self) -> int:
        return 2 * self.g + self.n + len(self.factors) - 1


def definition_order(key) -> int:
    g, n, ws = key
    return g + n + sum(len(w) for w in ws)


def filtration_order(key) -> int:
    g, n, ws = key
    return 2 * g + n + len(ws) - 1


def orders(t) -> tuple:
    """(definitionOrder, filtrationOrder) of a tensor key."""
    return definition_order(t), filtration_order(t)


def tensor_parity(space: SymplecticSpace, key) -> int:
    g, n, ws = key
    return (sum(space.word_parity(w) for w in ws) + n * space.nu_parity) & 1


def _word_key(w):
    return (len(w), w)


def normalize_tensor(space: SymplecticSpace, g: int, n: int, words):
    """Canonical Koszul-sorted tensor with sign, or None when zero.

    Each word is canonicalized first; a zero word, a repeated odd factor,
    or nu^2 with odd nu all make the whole tensor zero.
    """
    if g < 0 or n < 0:
        raise UsageError("gamma and nu exponents must be nonnegative")
    if space.nu_parity == 1 and n >= 2:
        return None
    ws = []
    sign = 1
    for w in words:
        nm = normalize_word(space, w)
        if nm is None:
            return None
        ws.append(nm[0])
        sign *= nm[1]
    for a in range(1, len(ws)):
        b = a
        while b > 0 and _word_key(ws[b - 1]) > _word_key(ws[b]):
            if space.word_parity(ws[b - 1]) and space.word_parity(ws[b]):
                sign = -sign
            ws[b - 1], ws[b] = ws[b], ws[b - 1]
            b -= 1
    for a in range(1, len(ws)):
        if ws[a] == ws[a - 1] and space.word_parity(ws[a]):
            return None
    return CETensor(g, n, tuple(ws)), sign


# ---------------------------------------------------------------------------
# raw operations on dict {(g, n, factors): coeff} with canonical keys


def raw_ce_delta(space: SymplecticSpace, terms: dict) -> dict:
    """Pairwise bracket contraction; does not multiply by gamma."""
    out: dict = {}
    for (g, n, ws), c0 in terms.items():
        pars = [space.word_parity(w) for w in ws]
        k = len(ws)
        for i in range(k):
            for j in range(i + 1, k):
                pre_i = sum(pars[:i]) & 1
                pre_j = (sum(pars[:j]) - pars[i]) & 1
                s = (-1) ** (pars[i] * pre_i + pars[j] * pre_j + pars[i])
                contracted, _scalar = bracket_raw(space, ws[i], ws[j])
                # length-0 outputs live in the dropped central summand
                rest = tuple(w for l, w in enumerate(ws) if l not in (i, j))
                for u, cu in contracted.items():
                    nm = normalize_tensor(space, g, n, (u,) + rest)
                    if nm is None:
                        continue
                    accumulate(out, tuple(nm[0]), c0 * s * cu * nm[1])
    return out


def raw_extend_cobracket(space: SymplecticSpace, terms: dict) -> dict:
    """Leibniz extension of the cobracket; empty sides become nu factors."""
    out: dict = {}
    P = space.form_parity
    nu_par = space.nu_parity
    for (g, n, ws), c0 in terms.items():
        pars = [space.word_parity(w) for w in ws]
        for i, w in enumerate(ws):
            pre = sum(pars[:i]) & 1
            before, after = ws[:i], ws[i + 1:]
            for (left, right), cc in cobracket_raw(space, w).items():
                nu_new = (left is None) + (right is None)
                branch_parity = (P + nu_new * nu_par) & 1
                s = (-1) ** (branch_parity * pre)
                # transport past the nu-prefix of the tensor itself
                s *= (-1) ** (branch_parity * ((n * nu_par) & 1))
                if nu_new:
                    # each created nu migrates to the prefix
                    s *= (-1) ** (nu_par * pre)
                    if right is None and left is not None:
                        s *= (-1) ** (nu_par * space.word_parity(left))
                produced = tuple(x for x in (left, right) if x is not None)
                words = before + produced + after
                if not words:
                    continue  # no factors left: central summand, dropped
                nm = normalize_tensor(space, g, n + nu_new, words)
                if nm is None:
                    continue
                accumulate(out, tuple(nm[0]), c0 * cc * s * nm[1])
    return out


def raw_differential(space: SymplecticSpace, terms: dict,
                     with_nu: bool = True) -> dict:
    """d = gamma*delta + Delta; with_nu=False keeps only the nu-free part."""
    out: dict = {}
    for (g, n, ws), c in raw_ce_delta(space, terms).items():
        accumulate(out, (g + 1, n, ws), c)
    for key, c in raw_extend_cobracket(space, terms).items():
        accumulate(out, key, c)
    if not with_nu:
        out = {k: v for k, v in out.items() if k[1] == 0}
    return out


def raw_bracket(space: SymplecticSpace, x: dict, y: dict) -> dict:
    """Leibniz bi-extension of the word bracket to tensors."""
    out: dict = {}
    P = space.form_parity
    nu_par = space.nu_parity
    for (g1, n1, U), c1 in x.items():
        for (g2, n2, V), c2 in y.items():
            if nu_par == 1 and n1 + n2 >= 2:
                continue
            c0 = c1 * c2
            pu = [space.word_parity(w) for w in U]
            pv = [space.word_parity(w) for w in V]
            # the nu-prefix of the second argument crosses all of U
            c0 *= (-1) ** ((n2 * nu_par) * (sum(pu) & 1))
            for i in range(len(U)):
                for j in range(len(V)):
                    pre_i = sum(pu[:i]) & 1
                    pre_j = ((sum(pu) - pu[i]) + sum(pv[:j])) & 1
                    s = (-1) ** (pu[i] * pre_i + pv[j] * pre_j)
                    # the bracket operation itself (parity P) crosses the
                    # unused factors of the first slot
                    s *= (-1) ** (P * ((sum(pu) - pu[i]) & 1))
                    contracted, _scalar = bracket_raw(space, U[i], V[j])
                    rest = (tuple(w for l, w in enumerate(U) if l != i) +
                            tuple(w for l, w in enumerate(V) if l != j))
                    for u, cu in contracted.items():
                        nm = normalize_tensor(space, g1 + g2, n1 + n2,
                                              (u,) + rest)
                        if nm is None:
                            continue
                        accumulate(out, tuple(nm[0]), c0 * s * cu * nm[1])
    return out


def raw_coproduct(space: SymplecticSpace, terms: dict) -> dict:
    """Unshuffle factors into ordered pairs; the gamma/nu prefix rides left."""
    out: dict = {}
    for (g, n, ws), c in terms.items():
        pars = [space.word_parity(w) for w in ws]
        k = len(ws)
        for mask in range(1 << k):
            sign = 1
            for j in range(k):
                if not (mask >> j) & 1:
                    continue
                for i in range(j):
                    if not (mask >> i) & 1:
                        sign *= (-1) ** (pars[i] * pars[j])
            wl = tuple(ws[j] for j in range(k) if (mask >> j) & 1)
            wr = tuple(ws[j] for j in range(k) if not (mask >> j) & 1)
            accumulate(out, ((g, n, wl), (0, 0, wr)), c * sign)
    return out


# ---------------------------------------------------------------------------
# truncation profiles and the element wrapper


@dataclass(frozen=True)
class TruncationProfile:
    """Bounds kept by truncated elements; results are exact modulo excess.

    L: max word length, K: max factor count, G: max gamma exponent,
    N: max nu exponent, P: max filtration order.  P defaults to the largest
    filtration order reachable within the other bounds.
    """

    L: int
    K: int
    G: int
    N: int = 0
    P: int | None = None

    def __post_init__(self):
        if self.P is None:
            object.__setattr__(self, "P", 2 * self.G + self.N + self.K - 1)
        if min(self.L, self.K, self.G, self.P) < 1 or self.N < 0:
            raise UsageError("profile bounds must be >= 1 (N >= 0)")

    def admits(self, key) -> bool:
        g, n, ws = key
        return (g <= self.G and n <= self.N and len(ws) <= self.K
                and all(len(w) <= self.L for w in ws)
                and filtration_order(key) <= self.P)

    def coarser_than(self, other: "TruncationProfile") -> bool:
        return (self.L <= other.L and self.K <= other.K and self.G <= other.G
                and self.N <= other.N and self.P <= other.P)


def unbounded_profile() -> TruncationProfile:
    """A profile so large no computation in the test sizes ever hits it."""
    big = 10 ** 6
    return TruncationProfile(L=big, K=big, G=big, N=big, P=big)


def _variant_admits(variant: str, key, space) -> str | None:
    """None if the key belongs to the variant, else a complaint string."""
    g, n, ws = key
    if len(ws) < 1:
        return "needs at least one word factor"
    if definition_order(key) < 2:
        return "order-1 terms do not belong to the deformation complex"
    if variant == "lg" and n > 0:
        return "nu is not available in the gamma-only variant"
    if variant == "hq2":
        if g or n or len(ws) != 1 or len(ws[0]) < 2:
            return "only single words of length >= 2 belong to this variant"
    return None


class LambdaElement:
    """Truncated rational combination of canonical tensors in one variant."""

    __slots__ = ("space", "variant", "profile", "terms")

    def __init__(self, space: SymplecticSpace, variant: str,
                 profile: TruncationProfile, terms: dict | None = None,
                 already_canonical: bool = False):
        if variant not in VARIANTS:
            raise UsageError(f"unknown variant {variant!r}; pick from {VARIANTS}")
        self.space = space
        self.variant = variant
        self.profile = profile
        clean: dict = {}
        for key, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if already_canonical:
                canon, sign = key, 1
            else:
                nm = normalize_tensor(space, *key)
                if nm is None:
                    continue
                canon, sign = tuple(nm[0]), nm[1]
            complaint = _variant_admits(variant, canon, space)
            if complaint is not None:
                raise UsageError(f"tensor {canon} rejected: {complaint}")
            if not profile.admits(canon):
                continue
            accumulate(clean, canon, coeff * sign)
        self.terms = clean

    # -- construction helpers -------------------------------------------

    @classmethod
    def zero(cls, space, variant, profile) -> "LambdaElement":
        return cls(space, variant, profile, {})

    def replace_terms(self, terms: dict,
                      already_canonical: bool = True) -> "LambdaElement":
        return LambdaElement(self.space, self.variant, self.profile, terms,
                             already_canonical=already_canonical)

    # -- basic algebra ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, LambdaElement)
                and self.space == other.space
                and self.variant == other.variant
                and self.terms == other.terms)

    def __add__(self, other: "LambdaElement") -> "LambdaElement":
        self._check_compatible(other)
        merged = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(merged, k, c)
        return self.replace_terms(merged)

    def __sub__(self, other: "LambdaElement") -> "LambdaElement":
        self._check_compatible(other)
        merged = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(merged, k, -c)
        return self.replace_terms(merged)

    def scale(self, c) -> "LambdaElement":
        c = Fraction(c)
        return self.replace_terms({k: v * c for k, v in self.terms.items()})

    def parity(self):
        pars = {tensor_parity(self.space, k) for k in self.terms}
        return pars.pop() if len(pars) == 1 else None

    def min_filtration_order(self):
        return min((filtration_order(k) for k in self.terms), default=None)

    def component_of_order(self, p: int) -> "LambdaElement":
        return self.replace_terms({k: c for k, c in self.terms.items()
                                   if filtration_order(k) == p})

    def tensors(self):
        return [CETensor(*k) for k in sorted(self.terms)]

    def _check_compatible(self, other) -> None:
        if not isinstance(other, LambdaElement):
            raise UsageError("expected a deformation-complex element")
        if self.space != other.space:
            raise UsageError("elements live over different spaces")
        if self.variant != other.variant:
            raise UsageError(
                f"variant mismatch: {self.variant} vs {other.variant}")

    def __repr__(self):
        return (f"LambdaElement({self.variant}, "
                f"{sorted(self.terms.items())!r})")


# ---------------------------------------------------------------------------
# public operations


def ce_delta(x: LambdaElement) -> LambdaElement:
    """Pairwise-bracket differential without the gamma weight."""
    return x.replace_terms(raw_ce_delta(x.space, x.terms))


def extend_cobracket(x: LambdaElement) -> LambdaElement:
    """Leibniz extension of the cobracket; empty sides become nu."""
    if x.variant == "hq2":
        raise UsageError("the cobracket extension lands outside the "
                         "single-word variant; embed into lgv first")
    if x.variant == "lg":
        # nu-producing branches leave the variant; keep the nu-free part
        out = {k: c for k, c in raw_extend_cobracket(x.space, x.terms).items()
               if k[1] == 0}
        return x.replace_terms(out)
    return x.replace_terms(raw_extend_cobracket(x.space, x.terms))


def lambda_differential(x: LambdaElement) -> LambdaElement:
    """gamma*delta + Delta on the full variant, its nu-free part on the
    gamma-only variant, zero on single-word Hamiltonian space."""
    if x.variant == "hq2":
        return x.replace_terms({})
    return x.replace_terms(
        raw_differential(x.space, x.terms, with_nu=(x.variant == "lgv")))


def lambda_bracket(x: LambdaElement, y: LambdaElement) -> LambdaElement:
    """Leibniz bi-extension of the word bracket."""
    x._check_compatible(y)
    out = raw_bracket(x.space, x.terms, y.terms)
    if x.variant == "lg":
        out = {k: c for k, c in out.items() if k[1] == 0}
    return x.replace_terms(out)


_PROJECTIONS = {("lgv", "lg"), ("lgv", "hq2"), ("lg", "hq2"),
                ("lgv", "lgv"), ("lg", "lg"), ("hq2", "hq2")}


def project(x: LambdaElement, target: str) -> LambdaElement:
    """Quotient maps: drop nu-terms, then set gamma = 0 keeping single words."""
    if target not in VARIANTS:
        raise UsageError(f"unknown variant {target!r}")
    if (x.variant, target) not in _PROJECTIONS:
        raise UsageError(f"no projection from {x.variant} to {target}")
    terms = x.terms
    if x.variant == "lgv" and target in ("lg", "hq2"):
        terms = {k: c for k, c in terms.items() if k[1] == 0}
    if target == "hq2":
        terms = {k: c for k, c in terms.items()
                 if k[0] == 0 and len(k[2]) == 1 and len(k[2][0]) >= 2}
    return LambdaElement(x.space, target, x.profile, terms,
                         already_canonical=True)


def coproduct(x) -> dict:
    """Unshuffle into ordered pairs of keys; accepts elements or raw dicts."""
    if isinstance(x, LambdaElement):
        return raw_coproduct(x.space, x.terms)
    from .chains import CEChainElement, chain_coproduct
    if isinstance(x, CEChainElement):
        return chain_coproduct(x)
    space, terms = x
    return raw_coproduct(space, terms)
