"""Finite abelian groups as direct products of cyclic groups, and finite fields.

Elements are tuples of residues.  The canonical element order is
lexicographic on those tuples, which is the same as the mixed-radix integer
order used by :meth:`FiniteAbelianGroup.index`.  Every "first"/"smallest"
choice elsewhere in the package (primitive elements, search tie-breaking)
goes through that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    ElementDomainError,
    InvalidOrderError,
    NotPrimeError,
    ParameterError,
    ReduciblePolynomialError,
)

Element = tuple  # tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{n1} x ... x Z_{nr}."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(o) for o in self.orders)
        if not orders or any(o < 2 for o in orders):
            raise InvalidOrderError(f"cyclic factor orders must all be >= 2, got {list(orders)}")
        object.__setattr__(self, "orders", orders)

    @property
    def n(self) -> int:
        return self.size

    @cached_property
    def size(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def __repr__(self):
        return " x ".join(f"Z{o}" for o in self.orders)

    # -- elements -----------------------------------------------------------

    def coerce(self, x) -> Element:
        """Validate ``x`` and return it as a coordinate tuple.

        Bare integers are accepted for cyclic groups.
        """
        if isinstance(x, int) and not isinstance(x, bool):
            x = (x,)
        try:
            coords = tuple(x)
        except TypeError:
            raise ElementDomainError(f"{x!r} is not a group element") from None
        if len(coords) != self.rank:
            raise ElementDomainError(
                f"element {list(coords)} has {len(coords)} coordinates, group {self} needs {self.rank}"
            )
        for c, o in zip(coords, self.orders):
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < o:
                raise ElementDomainError(f"element {list(coords)} is not in {self}")
        return coords

    def reduce(self, x) -> Element:
        if isinstance(x, int):
            x = (x,)
        coords = tuple(x)
        if len(coords) != self.rank:
            raise ElementDomainError(f"element {list(coords)} has wrong arity for {self}")
        return tuple(c % o for c, o in zip(coords, self.orders))

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(o) for o in self.orders))

    def nonzero(self) -> Iterator[Element]:
        it = self.elements()
        next(it)
        return it

    def index(self, x: Element) -> int:
        i = 0
        for c, o in zip(x, self.orders):
            i = i * o + c
        return i

    def element(self, i: int) -> Element:
        coords = []
        for o in reversed(self.orders):
            i, c = divmod(i, o)
            coords.append(c)
        return tuple(reversed(coords))

    @cached_property
    def element_list(self) -> tuple[Element, ...]:
        return tuple(self.elements())

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b) -> Element:
        a, b = self.coerce(a), self.coerce(b)
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a) -> Element:
        a = self.coerce(a)
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def sub(self, a, b) -> Element:
        a, b = self.coerce(a), self.coerce(b)
        return tuple((x - y) % o for x, y, o in zip(a, b, self.orders))

    @cached_property
    def sub_table(self) -> tuple[tuple[int, ...], ...]:
        """``sub_table[i][j]`` is the index of ``element(i) - element(j)``."""
        els = self.element_list
        rows = []
        for x in els:
            rows.append(
                tuple(self.index(tuple((a - b) % o for a, b, o in zip(x, y, self.orders))) for y in els)
            )
        return tuple(rows)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.sub_table[0][j] for j in range(self.size))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"cyclic": list(self.orders)}


def make_cyclic_group(n: int) -> FiniteAbelianGroup:
    if n < 2:
        raise InvalidOrderError(f"group order must be >= 2, got {n}")
    return FiniteAbelianGroup((n,))


def make_group(*orders: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(tuple(orders))


def group_add(G: FiniteAbelianGroup, a, b) -> Element:
    return G.add(a, b)


def group_neg(G: FiniteAbelianGroup, a) -> Element:
    return G.neg(a)


def _partitions(e: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = e
    if e == 0:
        yield ()
        return
    for first in range(min(e, largest), 0, -1):
        for rest in _partitions(e - first, first):
            yield (first,) + rest


def abelian_groups(n: int) -> list[FiniteAbelianGroup]:
    """All abelian groups of order ``n`` up to isomorphism, as products of
    cyclic groups of prime-power order (cyclic group first)."""
    if n < 2:
        raise InvalidOrderError(f"group order must be >= 2, got {n}")
    per_prime = []
    for p, e in sorted(factorize(n).items()):
        per_prime.append([tuple(p**k for k in part) for part in _partitions(e)])
    out = []
    for choice in itertools.product(*per_prime):
        orders = tuple(o for part in choice for o in part)
        out.append(FiniteAbelianGroup(orders))
    return out


# ---------------------------------------------------------------------------
# Finite fields
# ---------------------------------------------------------------------------

# Monic irreducible polynomials, coefficients low degree first.
IRREDUCIBLE_TABLE: dict[int, tuple[int, tuple[int, ...]]] = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (1, 0, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    25: (5, (2, 4, 1)),
    27: (3, (1, 2, 0, 1)),
    32: (2, (1, 0, 1, 0, 0, 1)),
    49: (7, (3, 6, 1)),
    64: (2, (1, 1, 0, 0, 0, 0, 1)),
}


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over Z_p."""
    a = _poly_trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    d = len(modulus) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for f in _monic_polys(p, k):
            if not _poly_mod(modulus, f, p):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    """GF(p^degree) realised as Z_p[x] / (modulus).

    Field elements are coefficient tuples, constant term first, so they are
    literally elements of :attr:`additive_group`.
    """

    p: int
    modulus: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def q(self) -> int:
        return self.p**self.degree

    @cached_property
    def additive_group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup((self.p,) * self.degree)

    @property
    def zero(self) -> Element:
        return (0,) * self.degree

    @property
    def one(self) -> Element:
        return (1,) + (0,) * (self.degree - 1)

    def __repr__(self):
        return f"GF({self.q})"

    def coerce(self, x) -> Element:
        return self.additive_group.coerce(x)

    def elements(self) -> Iterator[Element]:
        return self.additive_group.elements()

    def nonzero(self) -> Iterator[Element]:
        return self.additive_group.nonzero()

    def add(self, a, b) -> Element:
        return self.additive_group.add(a, b)

    def mul(self, a, b) -> Element:
        a, b = self.coerce(a), self.coerce(b)
        if self.degree == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        r = _poly_mod(prod, self.modulus, self.p)
        return tuple(r) + (0,) * (self.degree - len(r))

    def pow(self, a, e: int) -> Element:
        result = self.one
        base = self.coerce(a)
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def multiplicative_order(self, a) -> int:
        """Order of ``a`` in GF(q)*, by repeated multiplication."""
        a = self.coerce(a)
        if a == self.zero:
            raise ElementDomainError("zero has no multiplicative order")
        x, k = a, 1
        while x != self.one:
            x = self.mul(x, a)
            k += 1
        return k

    def to_json(self) -> dict:
        return {"field": {"p": self.p, "modulus": list(self.modulus)}}


def make_prime_field(p: int) -> FiniteField:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return FiniteField(p, (0, 1))


def make_extension_field(p: int, modulus: Sequence[int]) -> FiniteField:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) < 2 or modulus[-1] != 1:
        raise ReduciblePolynomialError(f"modulus {list(modulus)} must be monic of degree >= 1")
    if not is_irreducible(p, modulus):
        raise ReduciblePolynomialError(f"modulus {list(modulus)} is reducible over Z_{p}")
    return FiniteField(p, modulus)


def make_field(q: int) -> FiniteField:
    """GF(q) for a prime q or a prime power covered by the built-in table."""
    if is_prime(q):
        return make_prime_field(q)
    if q in IRREDUCIBLE_TABLE:
        p, modulus = IRREDUCIBLE_TABLE[q]
        return make_extension_field(p, modulus)
    f = factorize(q)
    if len(f) == 1:
        raise ParameterError(f"no built-in modulus for q={q}; supply one explicitly")
    raise NotPrimeError(f"{q} is not a prime power")


def find_primitive_element(F: FiniteField) -> Element:
    """First nonzero element, in canonical order, of multiplicative order q-1."""
    target = F.q - 1
    for x in F.nonzero():
        if F.multiplicative_order(x) == target:
            return x
    raise AssertionError(f"{F} has no primitive element")  # unreachable for a field


def parse_group(desc: dict) -> FiniteAbelianGroup | FiniteField:
    """Parse a JSON group descriptor.

    ``{"cyclic": [n1, ...]}`` gives a group; ``{"field": {"p": p, "modulus": [...]}}``
    gives a field (whose :attr:`~FiniteField.additive_group` is the group).
    """
    if not isinstance(desc, dict):
        raise ElementDomainError(f"group descriptor must be an object, got {desc!r}")
    if "cyclic" in desc:
        orders = desc["cyclic"]
        if isinstance(orders, int):
            orders = [orders]
        if not orders:
            raise InvalidOrderError("empty cyclic factor list")
        return FiniteAbelianGroup(tuple(orders))
    if "field" in desc:
        fd = desc["field"]
        if "modulus" in fd:
            return make_extension_field(fd["p"], fd["modulus"])
        if "q" in fd:
            return make_field(fd["q"])
        return make_prime_field(fd["p"])
    raise ElementDomainError(f"unrecognised group descriptor {desc!r}")


def as_group(G) -> FiniteAbelianGroup:
    return G.additive_group if isinstance(G, FiniteField) else G


def elements_of(G: FiniteAbelianGroup, xs: Iterable) -> list[Element]:
    return [G.coerce(x) for x in xs]
