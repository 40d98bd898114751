"""Symbolic algebra of boundary divisor classes on a level-2 toroidal model.

A monomial in boundary divisors delta_n is classified, up to the symplectic
group, by its *configuration type*: the multiset of exponents together with
the space of F_2-linear relations among the (distinct, pairwise-orthogonal)
labels.  A ConfigType is the canonical form of that data; the class of all
monomials of one type, each counted once, is the basic symbol everything
else expands into.

Degrees are capped at 5: the relation-pattern inventory, the certified
counting rules, and the ledger identities are only established up to there.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import factorial
from typing import Iterable, NamedTuple, Sequence

from .bits import kernel_f2, min_weight, rref_f2, span_f2
from .characteristics import BoundaryLabel, count_from_pattern, _form_packed

__all__ = [
    "ConfigType",
    "EMPTY",
    "BoundaryPoly",
    "DegreeOverflowError",
    "InfeasibleBasisError",
    "canonical_config",
    "all_types",
    "expand_named",
    "expand_word",
    "expand_zm_power",
    "product",
    "pushforward_level2",
    "change_basis",
    "verify_identity",
    "VerifyResult",
    "Identity",
    "load_identities",
    "check_identity",
    "DEFAULT_TARGETS",
    "NAMED_CLASSES",
    "word_sort_key",
    "n_odd",
]

DEGREE_MAX = 5


class DegreeOverflowError(ValueError):
    """Boundary degree beyond the certified range."""


def n_odd(g: int) -> int:
    """Number of odd characteristics at genus g."""
    return (1 << (g - 1)) * ((1 << g) - 1)


# --- configuration types -----------------------------------------------------

@dataclass(frozen=True, slots=True, order=True)
class ConfigType:
    """Canonical (exponents, relation space) shape of a boundary monomial.

    exps is non-increasing; rels is the RREF basis of the relation space,
    written over slot bits and minimized over permutations of equal-exponent
    slots.  Construct through make_type() / canonical_config(), not directly.
    """

    exps: tuple[int, ...]
    rels: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def nslots(self) -> int:
        return len(self.exps)

    @property
    def rank(self) -> int:
        """Dimension of the span of the labels."""
        return len(self.exps) - len(self.rels)

    def literal(self) -> str:
        """cfg(...) literal in the ledger grammar (1-based slot indices)."""
        if not self.exps:
            return "cfg()"
        body = ",".join(str(e) for e in self.exps)
        if not self.rels:
            return f"cfg({body})"
        groups = []
        for row in self.rels:
            groups.append(" ".join(str(i + 1) for i in range(self.nslots) if row >> i & 1))
        return f"cfg({body}; {' | '.join(groups)})"


def _permute_bits(row: int, perm: Sequence[int]) -> int:
    out = 0
    for i, target in enumerate(perm):
        if row >> i & 1:
            out |= 1 << target
    return out


def make_type(exps: Sequence[int], rels: Iterable[int]) -> ConfigType:
    """Canonicalize (exponents, relation rows) into a ConfigType."""
    exps = tuple(exps)
    if any(e <= 0 for e in exps):
        raise ValueError("exponents must be positive")
    k = len(exps)
    if k == 0:
        return EMPTY
    order = sorted(range(k), key=lambda i: (-exps[i], i))
    sorted_exps = tuple(exps[i] for i in order)
    # move old slot order[j] to new slot j
    inv = [0] * k
    for new, old in enumerate(order):
        inv[old] = new
    base = [_permute_bits(r, inv) for r in rels if r]
    if not base:
        return ConfigType(sorted_exps, ())
    # minimize over permutations within equal-exponent runs
    runs: list[range] = []
    start = 0
    for i in range(1, k + 1):
        if i == k or sorted_exps[i] != sorted_exps[start]:
            runs.append(range(start, i))
            start = i
    best: tuple[int, ...] | None = None
    for parts in itertools.product(*(itertools.permutations(r) for r in runs)):
        perm = [0] * k
        for run, part in zip(runs, parts):
            for src, dst in zip(run, part):
                perm[src] = dst
        cand = rref_f2(_permute_bits(r, perm) for r in base)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return ConfigType(sorted_exps, best)


EMPTY = ConfigType((), ())


def canonical_config(
    support: Sequence[BoundaryLabel], exponents: Sequence[int]
) -> ConfigType | None:
    """Type of a concrete boundary monomial, or None for the zero class.

    Returns None when two support labels fail to be orthogonal, since the
    divisors are then disjoint and the monomial vanishes.
    """
    if len(support) != len(exponents):
        raise ValueError("support and exponents must have equal length")
    if not support:
        return EMPTY
    g = support[0].genus
    for label in support:
        if label.genus != g:
            raise ValueError("label genus mismatch")
    for e in exponents:
        if e <= 0:
            raise ValueError("exponents must be positive")
    packed = [label.packed for label in support]
    if len(set(packed)) != len(packed):
        raise ValueError("repeated support label")
    for a, b in itertools.combinations(packed, 2):
        if _form_packed(a, b, g):
            return None
    rels: tuple[int, ...] = kernel_f2(tuple(packed), 2 * g)
    return make_type(tuple(exponents), rels)


@lru_cache(maxsize=None)
def _relation_spaces(k: int) -> tuple[tuple[int, ...], ...]:
    """All relation spaces on k slots with minimum weight >= 3.

    Weight-1 and weight-2 relations cannot occur among distinct nonzero
    labels.  For k <= 5 a weight count rules out dimension >= 3, so spans of
    at most two generators exhaust the list.
    """
    if k > DEGREE_MAX:
        raise DegreeOverflowError(f"no relation inventory beyond {DEGREE_MAX} slots")
    spaces: set[tuple[int, ...]] = {()}
    gens = [v for v in range(1, 1 << k) if v.bit_count() >= 3]
    for v in gens:
        spaces.add(rref_f2([v]))
    for v, w in itertools.combinations(gens, 2):
        rows = rref_f2([v, w])
        if len(rows) == 2 and min_weight(rows) >= 3:
            spaces.add(rows)
    return tuple(sorted(spaces))


def _partitions(d: int, cap: int | None = None) -> Iterable[tuple[int, ...]]:
    cap = d if cap is None else cap
    if d == 0:
        yield ()
        return
    for first in range(min(d, cap), 0, -1):
        for rest in _partitions(d - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def all_types(degree: int) -> tuple[ConfigType, ...]:
    """Every configuration type of the given degree, canonically sorted."""
    if degree == 0:
        return (EMPTY,)
    if degree > DEGREE_MAX:
        raise DegreeOverflowError(f"degree {degree} exceeds {DEGREE_MAX}")
    types = set()
    for exps in _partitions(degree):
        for rows in _relation_spaces(len(exps)):
            types.add(make_type(exps, rows))
    return tuple(sorted(types))


# --- boundary polynomials ----------------------------------------------------

class BoundaryPoly:
    """Homogeneous formal sum of configuration-type classes."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict[ConfigType, Fraction] | None = None):
        self.degree = degree
        self.coeffs: dict[ConfigType, Fraction] = {}
        for t, c in (coeffs or {}).items():
            if c == 0:
                continue
            if t.degree != degree:
                raise ValueError(f"type {t} has degree {t.degree}, expected {degree}")
            self.coeffs[t] = Fraction(c)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BoundaryPoly)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other: "BoundaryPoly") -> "BoundaryPoly":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, Fraction(0)) + c
        return BoundaryPoly(self.degree, out)

    def __sub__(self, other: "BoundaryPoly") -> "BoundaryPoly":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "BoundaryPoly":
        s = Fraction(scalar)
        return BoundaryPoly(self.degree, {t: s * c for t, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return f"BoundaryPoly({self.degree}, 0)"
        bits = " + ".join(f"{c}*{t.literal()}" for t, c in sorted(self.coeffs.items()))
        return f"BoundaryPoly({self.degree}, {bits})"


def _zero(degree: int) -> BoundaryPoly:
    return BoundaryPoly(degree)


# --- named classes -----------------------------------------------------------

def _ones(k: int) -> tuple[int, ...]:
    return (1,) * k

# Single-orbit named classes: name -> (exponents, relation generator rows).
_SINGLE: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {
    "Y": ((1, 1, 1, 1), (0b1111,)),
    "A1": (_ones(5), ()),
    "A2": (_ones(5), (0b11111,)),
    "A3": (_ones(5), (0b01111,)),
    "A4": (_ones(5), (0b00111,)),
    "A5": (_ones(5), (0b00111, 0b11100)),
    "B1": ((2, 1, 1, 1), ()),
    "B2": ((2, 1, 1, 1), (0b1111,)),
    "B3": ((2, 1, 1, 1), (0b0111,)),
    "B4": ((2, 1, 1, 1), (0b1110,)),
    "C1": ((2, 2, 1), ()),
    "C2": ((2, 2, 1), (0b111,)),
    "D1": ((3, 1, 1), ()),
    "D2": ((3, 1, 1), (0b111,)),
    "E": ((3, 2), ()),
    "F": ((4, 1), ()),
    "G": ((5,), ()),
}

_GROUPS = {
    "A": ("A1", "A2", "A3", "A4", "A5"),
    "B": ("B1", "B2", "B3", "B4"),
    "C": ("C1", "C2"),
    "D": ("D1", "D2"),
}

NAMED_CLASSES: tuple[str, ...] = tuple(
    [f"sigma{k}" for k in range(1, 6)]
    + [f"beta{k}" for k in range(1, 6)]
    + list(_SINGLE)
    + list(_GROUPS)
)


def _named_patterns(name: str) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    if name.startswith("sigma"):
        k = int(name[5:])
        return [(_ones(k), rows) for rows in _relation_spaces(k)]
    if name.startswith("beta"):
        k = int(name[4:])
        return [(_ones(k), ())]
    if name in _SINGLE:
        return [_SINGLE[name]]
    if name in _GROUPS:
        return [p for member in _GROUPS[name] for p in _named_patterns(member)]
    raise KeyError(f"unknown named class {name!r}")


@lru_cache(maxsize=None)
def expand_named(name: str, g: int) -> BoundaryPoly:
    """A named class as a sum of configuration types realizable at genus g."""
    types: set[ConfigType] = set()
    degree = None
    for exps, rows in _named_patterns(name):
        t = make_type(exps, rows)
        degree = t.degree if degree is None else degree
        if t.degree != degree:
            raise ValueError(f"mixed degrees in named class {name}")
        # distinct raw relation spaces can be relabelings of one canonical
        # type; the class contains each type once, so collapse them
        if t.rank <= g:
            types.add(t)
    assert degree is not None
    return BoundaryPoly(degree, {t: Fraction(1) for t in types})


# tag order used for sorting multiplicative words in reports
_TAG_CATEGORY = {"sigma": 0, "beta": 1, "Y": 2, "A": 3, "B": 4, "C": 5, "D": 6,
                 "E": 7, "F": 8, "G": 9}


def _tag_key(tag: str) -> tuple[int, int]:
    m = re.fullmatch(r"([A-Za-z]+?)(\d*)", tag)
    if not m:
        raise ValueError(f"bad tag {tag!r}")
    stem, idx = m.group(1), m.group(2)
    return (_TAG_CATEGORY[stem], int(idx) if idx else 0)


def word_sort_key(word: tuple[str, ...]) -> tuple:
    return (sum(_word_tag_degree(t) for t in word), tuple(_tag_key(t) for t in word))


@lru_cache(maxsize=None)
def _word_tag_degree(tag: str) -> int:
    return expand_named(tag, DEGREE_MAX).degree


def normalize_word(word: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(word, key=_tag_key))


# --- structural expansion of powers of the distinguished-label sum -----------

def _multinomial(total: int, parts: Sequence[int]) -> int:
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def expand_zm_power(g: int, j: int) -> BoundaryPoly:
    """Sum over odd m of (sum of delta_n over the distinguished set)^j.

    Each configuration type appears with coefficient multinomial(j; exps)
    times the certified count of odd m compatible with one (any) monomial of
    that type; the count is tuple-independent.
    """
    if not 0 <= j <= DEGREE_MAX:
        raise DegreeOverflowError(f"power {j} outside 0..{DEGREE_MAX}")
    if j == 0:
        return BoundaryPoly(0, {EMPTY: Fraction(n_odd(g))})
    coeffs: dict[ConfigType, Fraction] = {}
    for t in all_types(j):
        if t.rank > g:
            continue
        cnt = count_from_pattern(g, t.nslots, t.rels)
        if cnt:
            coeffs[t] = Fraction(_multinomial(j, t.exps) * cnt)
    return BoundaryPoly(j, coeffs)


# --- products ----------------------------------------------------------------

def _induced(t: ConfigType, slots: tuple[int, ...], exps: tuple[int, ...]) -> ConfigType:
    """Type induced on a sub-multiset of slots with the given exponents."""
    if not slots:
        return EMPTY
    mask = 0
    for s in slots:
        mask |= 1 << s
    pos = {s: i for i, s in enumerate(slots)}
    rows = []
    for v in span_f2(t.rels):
        if v and v & ~mask == 0:
            rows.append(sum(1 << pos[s] for s in slots if v >> s & 1))
    return make_type(exps, rref_f2(rows))


@lru_cache(maxsize=None)
def _split_table(t: ConfigType) -> tuple[tuple[ConfigType, ConfigType, int], ...]:
    """Ways to factor a type-t monomial into an ordered pair of monomials.

    Entries (t1, t2, n): n exponent splittings of a fixed monomial of type t
    produce factors of types (t1, t2).  Independent of genus and of the
    concrete monomial.
    """
    counts: dict[tuple[ConfigType, ConfigType], int] = {}
    ranges = [range(e + 1) for e in t.exps]
    for bvec in itertools.product(*ranges):
        cvec = tuple(e - b for e, b in zip(t.exps, bvec))
        s1 = tuple(i for i, b in enumerate(bvec) if b > 0)
        s2 = tuple(i for i, c in enumerate(cvec) if c > 0)
        t1 = _induced(t, s1, tuple(b for b in bvec if b > 0))
        t2 = _induced(t, s2, tuple(c for c in cvec if c > 0))
        counts[(t1, t2)] = counts.get((t1, t2), 0) + 1
    return tuple((t1, t2, n) for (t1, t2), n in counts.items())


def product(p: BoundaryPoly, q: BoundaryPoly, g: int) -> BoundaryPoly:
    """Formal product of boundary polynomials at genus g.

    Works by counting, per result type, the exponent splittings that realize
    a given ordered pair of factor types; orthogonality and realizability
    are already encoded in the type inventory.
    """
    degree = p.degree + q.degree
    if degree > DEGREE_MAX:
        raise DegreeOverflowError(f"product degree {degree} exceeds {DEGREE_MAX}")
    out: dict[ConfigType, Fraction] = {}
    for t in all_types(degree):
        if t.rank > g:
            continue
        acc = Fraction(0)
        for t1, t2, n in _split_table(t):
            c1 = p.coeffs.get(t1)
            if not c1:
                continue
            c2 = q.coeffs.get(t2)
            if not c2:
                continue
            acc += n * c1 * c2
        if acc:
            out[t] = acc
    return BoundaryPoly(degree, out)


@lru_cache(maxsize=None)
def expand_word(word: tuple[str, ...], g: int) -> BoundaryPoly:
    """Product of named classes as a BoundaryPoly."""
    if not word:
        return BoundaryPoly(0, {EMPTY: Fraction(1)})
    poly = expand_named(word[0], g)
    for tag in word[1:]:
        poly = product(poly, expand_named(tag, g), g)
    return poly


# --- change of basis and pushforward -----------------------------------------

class InfeasibleBasisError(ValueError):
    """The polynomial is not in the span of the requested target words."""

    def __init__(self, residual: BoundaryPoly):
        self.residual = residual
        super().__init__(f"not in target span; residual {residual!r}")


def change_basis(
    p: BoundaryPoly, targets: Sequence[tuple[str, ...]], g: int
) -> dict[tuple[str, ...], Fraction]:
    """Exact coefficients of p over the given product-of-named-class words.

    Raises InfeasibleBasisError (carrying the exact residual) when p is not
    in the span; never approximates.  Free coefficients in a degenerate
    target set resolve to zero, keeping the output deterministic.
    """
    from .exactla import solve

    expansions = [expand_word(normalize_word(w), g) for w in targets]
    support = sorted(set(p.coeffs) | {t for e in expansions for t in e.coeffs})
    matrix = [[e.coeffs.get(t, Fraction(0)) for e in expansions] for t in support]
    rhs = [p.coeffs.get(t, Fraction(0)) for t in support]
    x = solve(matrix, rhs)
    if x is None:
        # recover the best-effort combination to expose the residual
        from .exactla import rref

        aug = [row + [b] for row, b in zip(matrix, rhs)]
        red, pivots = rref(aug)
        xhat = [Fraction(0)] * len(targets)
        for i, c in enumerate(pivots):
            if c < len(targets):
                xhat[c] = red[i][len(targets)]
        residual = p
        for coef, e in zip(xhat, expansions):
            residual = residual - coef * e
        raise InfeasibleBasisError(residual)
    return {normalize_word(w): c for w, c in zip(targets, x)}


DEFAULT_TARGETS: dict[int, tuple[tuple[str, ...], ...]] = {
    1: (("sigma1",),),
    2: (("sigma1", "sigma1"), ("sigma2",)),
    3: (("sigma1",) * 3, ("sigma1", "sigma2"), ("sigma3",), ("beta3",)),
    4: (
        ("sigma4",),
        ("sigma1", "sigma3"),
        ("Y",),
        ("sigma1", "beta3"),
        ("sigma2", "sigma2"),
        ("sigma1", "sigma1", "sigma2"),
        ("sigma1",) * 4,
        ("beta4",),
    ),
    5: (
        ("sigma5",),
        ("beta5",),
        ("A2",),
        ("A3",),
        ("A4",),
        ("C1",),
        ("D1",),
        ("sigma1", "sigma4"),
        ("sigma1", "beta4"),
        ("sigma1", "Y"),
        ("sigma2", "sigma3"),
        ("sigma1", "sigma1", "sigma3"),
        ("sigma1", "sigma2", "sigma2"),
        ("sigma1", "sigma1", "sigma1", "sigma2"),
        ("sigma1",) * 5,
    ),
}


def pushforward_level2(
    p: BoundaryPoly, g: int, targets: Sequence[tuple[str, ...]] | None = None
) -> dict[tuple[str, ...], Fraction]:
    """Pushforward to level 2 in named-class words: divide degree d by 2^d.

    The named symbols downstairs absorb a factor 2^d by convention, so the
    word coefficients are the upstairs ones divided by 2^degree.
    """
    if p.degree == 0:
        return {(): p.coeffs.get(EMPTY, Fraction(0))}
    targets = DEFAULT_TARGETS[p.degree] if targets is None else tuple(targets)
    scale = Fraction(1, 2**p.degree)
    return {w: scale * c for w, c in change_basis(p, targets, g).items()}


# --- concrete instantiation and identity checking ----------------------------

MonomialKey = tuple[tuple[int, int], ...]  # sorted ((packed label, exponent), ...)


@lru_cache(maxsize=8)
def _orth_closure_masks(g: int) -> list[int]:
    """Per-label bitsets of orthogonal labels, self included."""
    size = 1 << (2 * g)
    masks = [0] * size
    for a in range(1, size):
        m = 0
        for b in range(1, size):
            if _form_packed(a, b, g) == 0:
                m |= 1 << b
        masks[a] = m
    return masks


@lru_cache(maxsize=8)
def _orth_sets(g: int) -> dict[int, list[tuple[int, ...]]]:
    """All pairwise-orthogonal label sets of sizes 1..DEGREE_MAX, packed."""
    masks = _orth_closure_masks(g)
    size = 1 << (2 * g)
    out: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(1, DEGREE_MAX + 1)}

    def extend(chosen: list[int], candidates: int) -> None:
        b = candidates
        while b:
            low = b & -b
            n = low.bit_length() - 1
            b ^= low
            chosen.append(n)
            out[len(chosen)].append(tuple(chosen))
            if len(chosen) < DEGREE_MAX:
                above = ~((1 << (n + 1)) - 1)
                extend(chosen, candidates & masks[n] & above & ~low)
            chosen.pop()

    extend([], (1 << size) - 2)
    return out


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _type_of_key(g: int, key: MonomialKey) -> ConfigType:
    packed = [p for p, _ in key]
    exps = tuple(e for _, e in key)
    rels = kernel_f2(packed, 2 * g)
    return make_type(exps, rels)


@lru_cache(maxsize=None)
def _registry(g: int, degree: int) -> dict[ConfigType, list[MonomialKey]]:
    """Index of all concrete monomials of one degree by configuration type."""
    index: dict[ConfigType, list[MonomialKey]] = {}
    if degree == 0:
        return {EMPTY: [()]}
    for k, sets in _orth_sets(g).items():
        if k > degree:
            continue
        for assignment in _compositions(degree, k):
            for labels in sets:
                key = tuple(zip(labels, assignment))
                t = _type_of_key(g, key)
                index.setdefault(t, []).append(key)
    return index


def instantiate(p: BoundaryPoly, g: int) -> dict[MonomialKey, Fraction]:
    """The polynomial as a literal dictionary of concrete monomials."""
    index = _registry(g, p.degree)
    out: dict[MonomialKey, Fraction] = {}
    for t, c in p.coeffs.items():
        for key in index.get(t, ()):
            out[key] = c
    return out


def convolve(
    d1: dict[MonomialKey, Fraction], d2: dict[MonomialKey, Fraction], g: int
) -> dict[MonomialKey, Fraction]:
    """Product of concrete monomial dictionaries, dropping disjoint supports.

    Independent of the symbolic product(); used to cross-check it.
    """
    if len(d1) < len(d2):
        d1, d2 = d2, d1
    masks = _orth_closure_masks(g)
    premask = {k1: _key_mask(k1, masks) for k1 in d1}
    out: dict[MonomialKey, Fraction] = {}
    for k2, c2 in d2.items():
        labs2 = [p for p, _ in k2]
        for k1, c1 in d1.items():
            m = premask[k1]
            if any(not m >> p & 1 for p in labs2):
                continue
            key = _merge_keys(k1, k2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _key_mask(key: MonomialKey, masks: list[int]) -> int:
    m = -1
    for p, _ in key:
        m &= masks[p]
    return m


def _merge_keys(k1: MonomialKey, k2: MonomialKey) -> MonomialKey:
    merged = dict(k1)
    for p, e in k2:
        merged[p] = merged.get(p, 0) + e
    return tuple(sorted(merged.items()))


class VerifyResult(NamedTuple):
    ok: bool
    counterexample: tuple[MonomialKey, Fraction, Fraction] | None


def verify_identity(lhs: BoundaryPoly, rhs: BoundaryPoly, g: int) -> VerifyResult:
    """Compare two boundary polynomials on every concrete monomial at genus g."""
    if lhs.degree != rhs.degree:
        raise ValueError("degree mismatch")
    left = instantiate(lhs, g)
    right = instantiate(rhs, g)
    for key in sorted(set(left) | set(right)):
        a = left.get(key, Fraction(0))
        b = right.get(key, Fraction(0))
        if a != b:
            return VerifyResult(False, (key, a, b))
    return VerifyResult(True, None)


# --- identity ledger ---------------------------------------------------------

# A factor of a ledger expression: a named class, a cfg(...) single-orbit
# literal, or any(...) = the sum over all relation patterns with given
# exponents.
Factor = tuple  # ("name", str) | ("cfg", exps, rels) | ("any", exps)
Term = tuple[Fraction, tuple[Factor, ...]]
Expr = tuple[Term, ...]


class Identity(NamedTuple):
    name: str
    lhs: Expr
    rhs: Expr


_TOKEN = re.compile(r"cfg\([^)]*\)|any\([^)]*\)|[A-Za-z_][A-Za-z0-9_]*|\d+|[+\-*^]")


def _parse_factor(tok: str) -> Factor:
    if tok.startswith("cfg("):
        body = tok[4:-1]
        if not body.strip():
            return ("cfg", (), ())
        if ";" in body:
            exp_part, rel_part = body.split(";", 1)
        else:
            exp_part, rel_part = body, ""
        exps = tuple(int(x) for x in exp_part.replace(" ", "").split(",") if x)
        rows = []
        for group in rel_part.split("|"):
            idx = [int(x) for x in group.split()]
            if idx:
                rows.append(sum(1 << (i - 1) for i in idx))
        return ("cfg", exps, tuple(rows))
    if tok.startswith("any("):
        exps = tuple(int(x) for x in tok[4:-1].replace(" ", "").split(",") if x)
        return ("any", exps)
    return ("name", tok)


def _parse_expr(text: str) -> Expr:
    tokens = _TOKEN.findall(text)
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise ValueError(f"unparsed characters in {text!r}")
    terms: list[Term] = []
    sign = Fraction(1)
    pos = 0
    n = len(tokens)
    while pos < n:
        tok = tokens[pos]
        if tok == "+":
            sign = Fraction(1)
            pos += 1
            continue
        if tok == "-":
            sign = Fraction(-1)
            pos += 1
            continue
        coeff = sign
        factors: list[Factor] = []
        while pos < n and tokens[pos] not in "+-":
            tok = tokens[pos]
            if tok == "*":
                pos += 1
                continue
            if tok.isdigit():
                coeff *= int(tok)
                pos += 1
                continue
            factor = _parse_factor(tok)
            pos += 1
            power = 1
            if pos + 1 < n and tokens[pos] == "^" and tokens[pos + 1].isdigit():
                power = int(tokens[pos + 1])
                pos += 2
            factors.extend([factor] * power)
        terms.append((coeff, tuple(factors)))
        sign = Fraction(1)
    return tuple(terms)


def parse_identity(line: str) -> Identity:
    name, rest = line.split(":", 1)
    lhs_text, rhs_text = rest.split("=", 1)
    return Identity(name.strip(), _parse_expr(lhs_text.strip()), _parse_expr(rhs_text.strip()))


def load_identities(path: str | None = None) -> list[Identity]:
    """Parse the identity ledger (bundled file by default)."""
    if path is None:
        text = resources.files("thetasing.data").joinpath("identities.txt").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(parse_identity(line))
    return out


def _expand_factor(f: Factor, g: int) -> BoundaryPoly:
    kind = f[0]
    if kind == "name":
        return expand_named(f[1], g)
    if kind == "cfg":
        t = make_type(f[1], f[2])
        if t.rank > g:
            return _zero(t.degree)
        return BoundaryPoly(t.degree, {t: Fraction(1)})
    if kind == "any":
        exps = f[1]
        coeffs: dict[ConfigType, Fraction] = {}
        for rows in _relation_spaces(len(exps)):
            t = make_type(exps, rows)
            if t.rank <= g:
                coeffs[t] = coeffs.get(t, Fraction(0)) + 1
        return BoundaryPoly(sum(exps), coeffs)
    raise ValueError(f"bad factor {f!r}")


def expr_degree(expr: Expr) -> int:
    degs = set()
    for _, factors in expr:
        degs.add(sum(_factor_degree(f) for f in factors))
    if len(degs) != 1:
        raise ValueError(f"expression is not homogeneous: degrees {degs}")
    return degs.pop()


def _factor_degree(f: Factor) -> int:
    if f[0] == "name":
        return _word_tag_degree(f[1])
    return sum(f[1])


def expand_expr(expr: Expr, g: int) -> BoundaryPoly:
    """Symbolic value of a ledger expression (uses the symbolic product)."""
    degree = expr_degree(expr)
    total = _zero(degree)
    for coeff, factors in expr:
        poly = BoundaryPoly(0, {EMPTY: Fraction(1)})
        for f in factors:
            poly = product(poly, _expand_factor(f, g), g)
        total = total + coeff * poly
    return total


# memo for concrete factor-chain products, keyed per genus
_CONCRETE_MEMO: dict[tuple[int, tuple[Factor, ...]], dict[MonomialKey, Fraction]] = {}


def concrete_expr(expr: Expr, g: int) -> dict[MonomialKey, Fraction]:
    """Concrete value of a ledger expression by dictionary convolution.

    Products are evaluated monomial-by-monomial, independently of the
    symbolic product(), so ledger checks genuinely anchor the latter.
    """
    out: dict[MonomialKey, Fraction] = {}
    for coeff, factors in expr:
        chain = tuple(sorted(factors))
        val = _concrete_chain(chain, g)
        for key, c in val.items():
            new = out.get(key, Fraction(0)) + coeff * c
            if new:
                out[key] = new
            else:
                out.pop(key, None)
    return out


def _concrete_chain(chain: tuple[Factor, ...], g: int) -> dict[MonomialKey, Fraction]:
    if not chain:
        return {(): Fraction(1)}
    memo_key = (g, chain)
    cached = _CONCRETE_MEMO.get(memo_key)
    if cached is not None:
        return cached
    if len(chain) == 1:
        val = instantiate(_expand_factor(chain[0], g), g)
    else:
        val = convolve(_concrete_chain(chain[:-1], g), _concrete_chain(chain[-1:], g), g)
    _CONCRETE_MEMO[memo_key] = val
    return val


class IdentityReport(NamedTuple):
    name: str
    concrete_ok: bool
    symbolic_ok: bool
    counterexample: tuple | None


def check_identity(identity: Identity, g: int) -> IdentityReport:
    """Verify one ledger identity concretely and symbolically at genus g."""
    left = concrete_expr(identity.lhs, g)
    right = concrete_expr(identity.rhs, g)
    counter = None
    concrete_ok = True
    for key in sorted(set(left) | set(right)):
        a = left.get(key, Fraction(0))
        b = right.get(key, Fraction(0))
        if a != b:
            concrete_ok = False
            counter = (key, a, b)
            break
    symbolic_ok = expand_expr(identity.lhs, g) == expand_expr(identity.rhs, g)
    return IdentityReport(identity.name, concrete_ok, symbolic_ok, counter)
