"""Two-torsion theta characteristics over F_2 and parity counting.

Conventions
-----------
A characteristic m = (eps; delt) is a pair of vectors in F_2^g.  Vectors are
packed into ints MSB-first: coordinate i (0-indexed) of a vector x sits at
bit (g-1-i), so ascending packed ints enumerate vectors lexicographically.
The full characteristic packs as (eps << g) | delt, hence the group law on
characteristics/labels is plain XOR of packed values.

The parity of m is eps . delt mod 2; m is odd iff the parity is 1.  Boundary
labels n = (alpha; beta) are the nonzero elements of the same F_2^{2g}; the
symplectic form is <n1, n2> = alpha1 . beta2 + alpha2 . beta1.  Two boundary
divisors D_{n1}, D_{n2} meet iff <n1, n2> = 0.

The distinguished label set of an odd m consists of *all* nonzero n with
m + n even; note n equal to the vector of m itself qualifies, since parity
of the zero characteristic is 0.  Its size is 2^{2g-1} + 2^{g-1}, the number
of even characteristics.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Iterator, Sequence

from .bits import kernel_f2, parity as bit_parity, rref_f2, span_f2

__all__ = [
    "Characteristic",
    "BoundaryLabel",
    "NonOrthogonalError",
    "UncertifiedPatternError",
    "parity",
    "symplectic_form",
    "enumerate_odd",
    "enumerate_labels",
    "z_set",
    "count_vanishing",
    "count_from_pattern",
    "brute_force_count",
    "orthogonal_tuples",
    "random_orthogonal_tuple",
    "CERTIFIED_PATTERNS",
]

BRUTE_FORCE_GENUS_MAX = 5


class NonOrthogonalError(ValueError):
    """A label tuple contains a pair with nonzero symplectic pairing."""


class UncertifiedPatternError(ValueError):
    """The relation pattern of a label tuple has no certified count."""


@dataclass(frozen=True, slots=True, order=True)
class Characteristic:
    """A theta characteristic (eps; delt) at a given genus."""

    genus: int
    eps: int
    delt: int

    def __post_init__(self) -> None:
        top = 1 << self.genus
        if not (0 <= self.eps < top and 0 <= self.delt < top):
            raise ValueError("characteristic halves must fit in g bits")

    @classmethod
    def from_packed(cls, genus: int, packed: int) -> "Characteristic":
        mask = (1 << genus) - 1
        return cls(genus, packed >> genus, packed & mask)

    @property
    def packed(self) -> int:
        return (self.eps << self.genus) | self.delt

    @property
    def parity(self) -> int:
        return bit_parity(self.eps & self.delt)

    @property
    def is_odd(self) -> bool:
        return self.parity == 1

    def shift(self, label: "BoundaryLabel") -> "Characteristic":
        """Translate by a boundary label (XOR of the underlying vectors)."""
        if label.genus != self.genus:
            raise ValueError("genus mismatch")
        return Characteristic(self.genus, self.eps ^ label.alpha, self.delt ^ label.beta)


@dataclass(frozen=True, slots=True, order=True)
class BoundaryLabel:
    """A nonzero element (alpha; beta) of F_2^{2g} indexing a boundary divisor."""

    genus: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        top = 1 << self.genus
        if not (0 <= self.alpha < top and 0 <= self.beta < top):
            raise ValueError("label halves must fit in g bits")
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("boundary labels are nonzero")

    @classmethod
    def from_packed(cls, genus: int, packed: int) -> "BoundaryLabel":
        mask = (1 << genus) - 1
        return cls(genus, packed >> genus, packed & mask)

    @property
    def packed(self) -> int:
        return (self.alpha << self.genus) | self.beta

    @property
    def parity(self) -> int:
        return bit_parity(self.alpha & self.beta)

    def __add__(self, other: "BoundaryLabel") -> "BoundaryLabel":
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        return BoundaryLabel.from_packed(self.genus, self.packed ^ other.packed)


def parity(m: Characteristic) -> int:
    return m.parity


def _sigma_packed(x: int, g: int) -> int:
    return ((x >> g) & x & ((1 << g) - 1)).bit_count() & 1


def _form_packed(x: int, y: int, g: int) -> int:
    mask = (1 << g) - 1
    return (((x >> g) & y & mask).bit_count() + ((y >> g) & x & mask).bit_count()) & 1


def symplectic_form(n1: BoundaryLabel, n2: BoundaryLabel) -> int:
    if n1.genus != n2.genus:
        raise ValueError("genus mismatch")
    return _form_packed(n1.packed, n2.packed, n1.genus)


def enumerate_odd(g: int) -> list[Characteristic]:
    """All odd characteristics, lexicographic in (eps, delt)."""
    return [
        Characteristic.from_packed(g, p)
        for p in range(1 << (2 * g))
        if _sigma_packed(p, g)
    ]


def enumerate_labels(g: int) -> list[BoundaryLabel]:
    """All nonzero labels, lexicographic in (alpha, beta)."""
    return [BoundaryLabel.from_packed(g, p) for p in range(1, 1 << (2 * g))]


def z_set(m: Characteristic) -> frozenset[BoundaryLabel]:
    """All nonzero labels n with m + n of even parity; requires m odd."""
    if not m.is_odd:
        raise ValueError("z_set is defined for odd characteristics only")
    g, mp = m.genus, m.packed
    return frozenset(
        BoundaryLabel.from_packed(g, n)
        for n in range(1, 1 << (2 * g))
        if _sigma_packed(mp ^ n, g) == 0
    )


# --- relation patterns and certified counts ---------------------------------

def _pattern_key(k: int, rels: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a relation space under all k! slot permutations."""
    if not rels:
        return ()
    if k > 8:
        raise UncertifiedPatternError(f"relation pattern on {k} slots is out of certified range")
    best: tuple[int, ...] | None = None
    for perm in itertools.permutations(range(k)):
        permuted = []
        for row in rels:
            new = 0
            for i in range(k):
                if row >> i & 1:
                    new |= 1 << perm[i]
            permuted.append(new)
        cand = rref_f2(permuted)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def _certified() -> frozenset[tuple[int, tuple[int, ...]]]:
    entries = [
        (4, [0b1111]),          # four labels summing to zero
        (5, [0b11110]),         # weight-4 relation plus a free slot
    ]
    return frozenset((k, _pattern_key(k, rows)) for k, rows in entries)


CERTIFIED_PATTERNS = _certified()


def count_from_pattern(g: int, k: int, rels: Sequence[int]) -> int:
    """Number of odd m with every slot label in its distinguished set.

    ``rels`` is an F_2-basis of the relation space of the k labels.  The
    count is zero when some relation has odd weight; independent tuples and
    certified even-relation patterns count 2^(2g-1-rank).  Anything else is
    refused rather than guessed.
    """
    if k == 0:
        return (1 << (g - 1)) * ((1 << g) - 1)
    kernel = rref_f2(rels)
    if any(v.bit_count() & 1 for v in span_f2(kernel) if v):
        return 0
    if kernel and (k, _pattern_key(k, kernel)) not in CERTIFIED_PATTERNS:
        raise UncertifiedPatternError(
            f"no certified counting rule for pattern k={k}, relations={kernel}"
        )
    rank = k - len(kernel)
    if rank > g:
        return 0  # not realizable by pairwise-orthogonal labels at this genus
    return 1 << (2 * g - 1 - rank)


def count_vanishing(g: int, labels: Sequence[BoundaryLabel]) -> int:
    """Count odd m whose distinguished set contains every given label.

    Requires the labels to be distinct and pairwise orthogonal.  Served from
    the certified pattern table; see count_from_pattern.
    """
    packed = [n.packed for n in labels]
    if any(n.genus != g for n in labels):
        raise ValueError("label genus mismatch")
    if len(set(packed)) != len(packed):
        raise ValueError("labels must be distinct")
    for a, b in itertools.combinations(packed, 2):
        if _form_packed(a, b, g):
            raise NonOrthogonalError("labels must be pairwise orthogonal")
    kernel = kernel_f2(packed, 2 * g)
    return count_from_pattern(g, len(packed), kernel)


# --- brute-force oracle ------------------------------------------------------

@lru_cache(maxsize=8)
def _vanish_tables(g: int) -> tuple[list[int], int]:
    """Per-label bitsets of {m : parity(m + n) even}, plus the odd-m bitset."""
    size = 1 << (2 * g)
    odd_mask = 0
    for m in range(size):
        if _sigma_packed(m, g):
            odd_mask |= 1 << m
    masks = [0] * size
    for n in range(size):
        acc = 0
        for m in range(size):
            if _sigma_packed(m ^ n, g) == 0:
                acc |= 1 << m
        masks[n] = acc
    return masks, odd_mask


def brute_force_count(g: int, labels: Sequence[BoundaryLabel]) -> int:
    """Direct enumeration over all 4^g characteristics (g <= 5)."""
    if g > BRUTE_FORCE_GENUS_MAX:
        raise ValueError(f"brute force is capped at genus {BRUTE_FORCE_GENUS_MAX}")
    if any(n.genus != g for n in labels):
        raise ValueError("label genus mismatch")
    masks, acc = _vanish_tables(g)
    for n in labels:
        acc &= masks[n.packed]
    return acc.bit_count()


def brute_force_count_naive(g: int, labels: Sequence[BoundaryLabel]) -> int:
    """Loop-and-test reference for the bitset implementation."""
    packed = [n.packed for n in labels]
    count = 0
    for m in range(1 << (2 * g)):
        if not _sigma_packed(m, g):
            continue
        if all(_sigma_packed(m ^ n, g) == 0 for n in packed):
            count += 1
    return count


# --- tuple generation --------------------------------------------------------

def orthogonal_tuples(g: int, max_size: int) -> Iterator[tuple[BoundaryLabel, ...]]:
    """All tuples of distinct pairwise-orthogonal labels, sizes 1..max_size.

    Tuples are emitted sorted by packed value, each underlying set once.
    """
    n_labels = 1 << (2 * g)
    orth = [0] * n_labels
    for a in range(1, n_labels):
        mask = 0
        for b in range(1, n_labels):
            if b != a and _form_packed(a, b, g) == 0:
                mask |= 1 << b
        orth[a] = mask

    def extend(chosen: list[int], candidates: int) -> Iterator[tuple[int, ...]]:
        b = candidates
        while b:
            low = b & -b
            n = low.bit_length() - 1
            b ^= low
            picked = chosen + [n]
            yield tuple(picked)
            if len(picked) < max_size:
                # restrict to labels above n to emit each set once
                above = ~((1 << (n + 1)) - 1)
                yield from extend(picked, candidates & orth[n] & above)

    for combo in extend([], (1 << n_labels) - 2):
        yield tuple(BoundaryLabel.from_packed(g, p) for p in combo)


def random_orthogonal_tuple(
    rng: Random, g: int, max_size: int = 5
) -> tuple[BoundaryLabel, ...]:
    """A random orthogonal tuple, drawn from a random maximal isotropic space.

    Not a uniform distribution over tuples, but reaches every tuple: any
    orthogonal set spans an isotropic subspace, hence sits inside some
    maximal one, and transvections act transitively on those.
    """
    basis = [1 << i for i in range(g)]  # the delta-side coordinate vectors
    size = 1 << (2 * g)
    for _ in range(12):
        v = rng.randrange(1, size)
        basis = [x ^ v if _form_packed(x, v, g) else x for x in basis]
    nonzero = [x for x in span_f2(basis) if x]
    k = rng.randint(1, min(max_size, len(nonzero)))
    picked = sorted(rng.sample(nonzero, k))
    return tuple(BoundaryLabel.from_packed(g, p) for p in picked)
