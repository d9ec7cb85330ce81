"""
Commutative semirings for SumProd evaluation.

A semiring supplies zero, one, plus and times; the evaluators and the
reduction never touch values any other way, so any implementation of the
interface plugs in unchanged.
"""

import random
from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Any

from .constants import INFINITY_LITERAL
from .error_handler import InputError


class Semiring(ABC):
    """(values, ⊕, ⊗, 𝟎, 𝟏) with both operations commutative and ⊗ distributing over ⊕."""

    name: str = "semiring"

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def plus(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def times(self, a: Any, b: Any) -> Any: ...

    def eq(self, a: Any, b: Any) -> bool:
        return a == b

    def is_zero(self, a: Any) -> bool:
        return self.eq(a, self.zero)

    def is_saturated(self, a: Any) -> bool:
        """True when a ⊕ b = a for every b, so a running sum can stop early."""
        return False

    def sum(self, values: Iterable[Any]) -> Any:
        return reduce(self.plus, values, self.zero)

    def product(self, values: Iterable[Any]) -> Any:
        return reduce(self.times, values, self.one)

    def parse(self, token: str) -> Any:
        """Parse one value from its text spelling."""
        try:
            return int(token)
        except ValueError as e:
            raise InputError(f"{self.name} value expected, got {token!r}", original_error=e)

    def format(self, value: Any) -> str:
        return str(value)

    def sample(self, rng: random.Random) -> Any:
        """A random value, used by randomized instance generators and axiom checks."""
        return rng.randint(0, 3)

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class BooleanSemiring(Semiring):
    name = "boolean"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def plus(self, a: int, b: int) -> int:
        return a | b

    def times(self, a: int, b: int) -> int:
        return a & b

    def is_saturated(self, a: int) -> bool:
        return a == 1

    def parse(self, token: str) -> int:
        value = super().parse(token)
        if value not in (0, 1):
            raise InputError(f"boolean values are 0 or 1, got {token!r}")
        return value

    def sample(self, rng: random.Random) -> int:
        return rng.randint(0, 1)


class CountingSemiring(Semiring):
    name = "counting"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def plus(self, a: int, b: int) -> int:
        return a + b

    def times(self, a: int, b: int) -> int:
        return a * b

    def parse(self, token: str) -> int:
        value = super().parse(token)
        if value < 0:
            raise InputError(f"counting values are natural numbers, got {token!r}")
        return value


class _Infinity:
    """The tropical zero: absorbing for ⊗, neutral for ⊕."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return INFINITY_LITERAL

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class TropicalSemiring(Semiring):
    """(ℤ ∪ {∞}, min, +) with saturating addition."""

    name = "tropical"

    @property
    def zero(self):
        return INF

    @property
    def one(self) -> int:
        return 0

    def plus(self, a, b):
        if a is INF:
            return b
        if b is INF:
            return a
        return min(a, b)

    def times(self, a, b):
        if a is INF or b is INF:
            return INF
        return a + b

    def eq(self, a, b) -> bool:
        if a is INF or b is INF:
            return a is b
        return a == b

    def parse(self, token: str):
        if token.strip().lower() == INFINITY_LITERAL:
            return INF
        return super().parse(token)

    def format(self, value) -> str:
        return INFINITY_LITERAL if value is INF else str(value)

    def sample(self, rng: random.Random):
        return rng.randint(0, 9)


class MaxTimesSemiring(Semiring):
    """(ℚ≥0, max, ×), the Viterbi semiring."""

    name = "maxtimes"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def plus(self, a, b) -> Fraction:
        return max(Fraction(a), Fraction(b))

    def times(self, a, b) -> Fraction:
        return Fraction(a) * Fraction(b)

    def parse(self, token: str) -> Fraction:
        try:
            value = Fraction(token)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"maxtimes values are rationals p/q, got {token!r}", original_error=e)
        if value < 0:
            raise InputError(f"maxtimes values are nonnegative, got {token!r}")
        return value

    def sample(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(0, 4), rng.randint(1, 3))


_BY_NAME: dict[str, type[Semiring]] = {
    BooleanSemiring.name: BooleanSemiring,
    CountingSemiring.name: CountingSemiring,
    TropicalSemiring.name: TropicalSemiring,
    MaxTimesSemiring.name: MaxTimesSemiring,
}


def semiring_by_name(name: str) -> Semiring:
    try:
        return _BY_NAME[name.strip().lower().replace("-", "")]()
    except KeyError as e:
        raise InputError(f"unknown semiring {name!r} (known: {', '.join(_BY_NAME)})", original_error=e)


def check_axioms(s: Semiring, samples: Sequence[Any]) -> list[str]:
    """Names of the semiring axioms violated on some triple drawn from *samples*."""
    violated: list[str] = []

    def fail(axiom: str) -> None:
        if axiom not in violated:
            violated.append(axiom)

    for a in samples:
        if not s.eq(s.plus(a, s.zero), a):
            fail("plus identity")
        if not s.eq(s.times(a, s.one), a):
            fail("times identity")
        if not s.eq(s.times(a, s.zero), s.zero):
            fail("annihilation")
    for a, b in product(samples, repeat=2):
        if not s.eq(s.plus(a, b), s.plus(b, a)):
            fail("plus commutativity")
        if not s.eq(s.times(a, b), s.times(b, a)):
            fail("times commutativity")
    for a, b, c in product(samples, repeat=3):
        if not s.eq(s.plus(s.plus(a, b), c), s.plus(a, s.plus(b, c))):
            fail("plus associativity")
        if not s.eq(s.times(s.times(a, b), c), s.times(a, s.times(b, c))):
            fail("times associativity")
        if not s.eq(s.times(a, s.plus(b, c)), s.plus(s.times(a, b), s.times(a, c))):
            fail("distributivity")
    return violated
