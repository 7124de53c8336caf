"""The symmetric algebra on the deformation complex, home of ch(x).

A chain term is gamma^G nu^N (B_1 v ... v B_r) where each block B_i is a
Koszul-sorted multiset of cyclic words (the word part of a complex tensor;
the gamma/nu prefixes of all blocks are pooled into G and N).  Blocks are
sorted at the outer level with Koszul signs by block parity; a repeated
odd block vanishes, as does nu^2 when nu is odd.

The outer differential applies d to one block, or contracts two blocks
through the tensor bracket into one, with the same front-loading sign
convention as the inner differential.  The outer filtration order is
2G + N + sum(k_i - 1); truncation keeps order <= P, block count <= K and
word length <= L of the profile.
"""

from __future__ import annotations

from fractions import Fraction

from .cecomplex import (LambdaElement, TruncationProfile, VARIANTS,
                        normalize_tensor, raw_bracket, raw_differential)
from .errors import UsageError
from .space import SymplecticSpace
from .words import accumulate


def block_parity(space: SymplecticSpace, block) -> int:
    return sum(space.word_parity(w) for w in block) & 1


def _block_key(block):
    return (len(block), tuple((len(w), w) for w in block))


def chain_order(key) -> int:
    """Outer filtration order 2G + N + sum over blocks of (factors - 1)."""
    G, N, blocks = key
    return 2 * G + N + sum(len(b) - 1 for b in blocks)


def chain_parity(space: SymplecticSpace, key) -> int:
    G, N, blocks = key
    return (sum(block_parity(space, b) for b in blocks)
            + N * space.nu_parity) & 1


def chain_normalize(space: SymplecticSpace, G: int, N: int, blocks):
    """Canonicalize every block, then Koszul-sort the blocks; None if zero."""
    if space.nu_parity == 1 and N >= 2:
        return None
    bs = []
    sign = 1
    for block in blocks:
        if not block:
            raise UsageError("chain blocks must be nonempty")
        nm = normalize_tensor(space, 0, 0, block)
        if nm is None:
            return None
        bs.append(nm[0].factors)
        sign *= nm[1]
    for a in range(1, len(bs)):
        i = a
        while i > 0 and _block_key(bs[i - 1]) > _block_key(bs[i]):
            if block_parity(space, bs[i - 1]) and block_parity(space, bs[i]):
                sign = -sign
            bs[i - 1], bs[i] = bs[i], bs[i - 1]
            i -= 1
    for a in range(1, len(bs)):
        if bs[a] == bs[a - 1] and block_parity(space, bs[a]):
            return None
    return (G, N, tuple(bs)), sign


class CEChainElement:
    """Truncated rational combination of canonical chain terms."""

    __slots__ = ("space", "variant", "profile", "terms")

    def __init__(self, space: SymplecticSpace, variant: str,
                 profile: TruncationProfile, terms: dict | None = None,
                 already_canonical: bool = False):
        if variant not in VARIANTS:
            raise UsageError(f"unknown variant {variant!r}")
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
                nm = chain_normalize(space, *key)
                if nm is None:
                    continue
                canon, sign = nm
            if variant == "lg" and canon[1] > 0:
                raise UsageError("nu is not available in the gamma-only variant")
            if not self._admits(canon):
                continue
            accumulate(clean, canon, coeff * sign)
        self.terms = clean

    def _admits(self, key) -> bool:
        G, N, blocks = key
        return (chain_order(key) <= self.profile.P
                and len(blocks) <= self.profile.K
                and all(len(w) <= self.profile.L for b in blocks for w in b))

    def replace_terms(self, terms: dict) -> "CEChainElement":
        return CEChainElement(self.space, self.variant, self.profile, terms,
                              already_canonical=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, CEChainElement)
                and self.space == other.space
                and self.variant == other.variant
                and self.terms == other.terms)

    def __add__(self, other: "CEChainElement") -> "CEChainElement":
        self._check_compatible(other)
        merged = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(merged, k, c)
        return self.replace_terms(merged)

    def __sub__(self, other: "CEChainElement") -> "CEChainElement":
        self._check_compatible(other)
        merged = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(merged, k, -c)
        return self.replace_terms(merged)

    def _check_compatible(self, other) -> None:
        if not isinstance(other, CEChainElement):
            raise UsageError("expected a chain element")
        if self.space != other.space:
            raise UsageError("chains live over different spaces")
        if self.variant != other.variant:
            raise UsageError(
                f"variant mismatch: {self.variant} vs {other.variant}")

    def scale(self, c) -> "CEChainElement":
        c = Fraction(c)
        return self.replace_terms({k: v * c for k, v in self.terms.items()})

    def capped(self, max_order: int, max_blocks: int) -> "CEChainElement":
        return self.replace_terms(
            {k: c for k, c in self.terms.items()
             if chain_order(k) <= max_order and len(k[2]) <= max_blocks})

    def __repr__(self):
        return f"CEChainElement({self.variant}, {sorted(self.terms.items())!r})"


def chain_unit(space, variant, profile) -> CEChainElement:
    return CEChainElement(space, variant, profile, {(0, 0, ()): Fraction(1)},
                          already_canonical=True)


def embed_element(x: LambdaElement) -> CEChainElement:
    """View a complex element as a one-block chain (pooling gamma, nu)."""
    out: dict = {}
    for (g, n, ws), c in x.terms.items():
        nm = chain_normalize(x.space, g, n, (ws,))
        if nm is not None:
            accumulate(out, nm[0], c * nm[1])
    return CEChainElement(x.space, x.variant, x.profile, out,
                          already_canonical=True)


def chain_mul(a: CEChainElement, b: CEChainElement) -> CEChainElement:
    """Graded product: concatenate block lists, nu-prefix crossing the left."""
    a._check_compatible(b)
    nu_par = a.space.nu_parity
    out: dict = {}
    for (G1, N1, bl1), c1 in a.terms.items():
        left_par = sum(block_parity(a.space, blk) for blk in bl1) & 1
        for (G2, N2, bl2), c2 in b.terms.items():
            s = (-1) ** ((N2 * nu_par) * left_par)
            nm = chain_normalize(a.space, G1 + G2, N1 + N2, bl1 + bl2)
            if nm is None:
                continue
            accumulate(out, nm[0], c1 * c2 * s * nm[1])
    return a.replace_terms(out)


def chain_delta(x: CEChainElement) -> CEChainElement:
    """Outer differential: d on one block plus bracket contraction of pairs."""
    if x.variant == "hq2":
        return x.replace_terms({})
    space = x.space
    nu_par = space.nu_parity
    with_nu = x.variant == "lgv"
    out: dict = {}
    for (G, N, blocks), c0 in x.terms.items():
        r = len(blocks)
        bpars = [block_parity(space, b) for b in blocks]
        for i in range(r):
            pre = sum(bpars[:i]) & 1
            dblock = raw_differential(space, {(0, 0, blocks[i]): Fraction(1)},
                                      with_nu=with_nu)
            for (g2, n2, ws2), c2 in dblock.items():
                if not ws2:
                    continue
                cpar = ((sum(space.word_parity(w) for w in ws2)
                         + n2 * nu_par) - bpars[i]) & 1
                s = (-1) ** (cpar * ((N * nu_par + pre) & 1))
                s *= (-1) ** ((n2 * nu_par) * pre)
                nb = blocks[:i] + (ws2,) + blocks[i + 1:]
                nm = chain_normalize(space, G + g2, N + n2, nb)
                if nm is None:
                    continue
                accumulate(out, nm[0], c0 * c2 * s * nm[1])
        for i in range(r):
            for j in range(i + 1, r):
                pre_i = sum(bpars[:i]) & 1
                pre_j = (sum(bpars[:j]) - bpars[i]) & 1
                s0 = (-1) ** (bpars[i] * pre_i + bpars[j] * pre_j + bpars[i])
                br = raw_bracket(space, {(0, 0, blocks[i]): Fraction(1)},
                                 {(0, 0, blocks[j]): Fraction(1)})
                rest = tuple(b for l, b in enumerate(blocks) if l not in (i, j))
                for (g2, n2, ws2), c2 in br.items():
                    if not ws2 or (not with_nu and n2):
                        continue
                    cpar = ((sum(space.word_parity(w) for w in ws2)
                             + n2 * nu_par) - bpars[i] - bpars[j]) & 1
                    s = s0 * (-1) ** (cpar * (N * nu_par))
                    nm = chain_normalize(space, G + g2, N + n2, (ws2,) + rest)
                    if nm is None:
                        continue
                    accumulate(out, nm[0], c0 * c2 * s * nm[1])
    return x.replace_terms(out)


def chain_coproduct(x: CEChainElement) -> dict:
    """Unshuffle blocks into ordered pairs; the gamma/nu prefix rides left."""
    out: dict = {}
    for (G, N, blocks), c in x.terms.items():
        pars = [block_parity(x.space, b) for b in blocks]
        r = len(blocks)
        for mask in range(1 << r):
            sign = 1
            for j in range(r):
                if not (mask >> j) & 1:
                    continue
                for i in range(j):
                    if not (mask >> i) & 1:
                        sign *= (-1) ** (pars[i] * pars[j])
            bl = tuple(blocks[j] for j in range(r) if (mask >> j) & 1)
            br = tuple(blocks[j] for j in range(r) if not (mask >> j) & 1)
            accumulate(out, ((G, N, bl), (0, 0, br)), c * sign)
    return out


def chain_project(x: CEChainElement, target: str) -> CEChainElement:
    """Blockwise extension of the complex projections to chains."""
    if target not in VARIANTS:
        raise UsageError(f"unknown variant {target!r}")
    order = {v: i for i, v in enumerate(("lgv", "lg", "hq2"))}
    if order[target] < order[x.variant]:
        raise UsageError(f"no projection from {x.variant} to {target}")
    terms = x.terms
    if target in ("lg", "hq2"):
        terms = {k: c for k, c in terms.items() if k[1] == 0}
    if target == "hq2":
        terms = {k: c for k, c in terms.items()
                 if k[0] == 0 and all(len(b) == 1 and len(b[0]) >= 2
                                      for b in k[2])}
    return CEChainElement(x.space, target, x.profile, terms,
                          already_canonical=True)
