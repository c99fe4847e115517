"""Finitely generated discrete abelian groups and their duals.

A group is ``Z^r x Z_{n_1} x ... x Z_{n_m}``.  Elements carry an integer
vector for the free part and canonically reduced residues for the torsion
part.  Characters are stored in *turns*: a free coordinate ``t`` stands for
``exp(2*pi*i*t)`` and a torsion index ``k`` for ``exp(2*pi*i*k/n)``.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Turn = Union[Fraction, float]

# exp(2 pi i * j/4) for j = 0..3, returned exactly
_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


class GroupMismatchError(ValueError):
    """Raised when objects from different groups are combined."""


@dataclass(frozen=True)
class GroupSpec:
    """The group ``Z^free_rank x prod Z_n`` for ``n`` in ``torsion``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(n) for n in self.torsion))
        if self.free_rank < 0:
            raise ValueError(f"free_rank must be non-negative, got {self.free_rank}")
        for n in self.torsion:
            if n < 2:
                raise ValueError(f"torsion orders must be >= 2, got {n}")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for n in self.torsion:
            out *= n
        return out

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> GroupElement:
        free = tuple(int(x) for x in free) if free else (0,) * self.free_rank
        torsion = tuple(int(x) for x in torsion) if torsion else (0,) * len(self.torsion)
        return GroupElement(self, free, torsion)

    def zero(self) -> GroupElement:
        return self.element()

    def generators(self) -> list[GroupElement]:
        """Free generators first, then torsion generators."""
        gens = []
        for i in range(self.free_rank):
            free = [0] * self.free_rank
            free[i] = 1
            gens.append(self.element(free=free))
        for j in range(len(self.torsion)):
            tor = [0] * len(self.torsion)
            tor[j] = 1
            gens.append(self.element(torsion=tor))
        return gens

    def elements(self) -> list[GroupElement]:
        """All elements of a finite group, lexicographic in the residues."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        return [GroupElement(self, (), t) for t in itertools.product(*(range(n) for n in self.torsion))]

    def character(self, turns: Sequence[Turn] = (), indices: Sequence[int] = ()) -> Character:
        turns = tuple(turns) if turns else (Fraction(0),) * self.free_rank
        indices = tuple(indices) if indices else (0,) * len(self.torsion)
        return Character(self, turns, indices)

    def trivial_character(self) -> Character:
        return self.character()

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z_{n}" for n in self.torsion]
        return " x ".join(parts) if parts else "{0}"


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        if len(self.free) != self.spec.free_rank or len(self.torsion) != len(self.spec.torsion):
            raise GroupMismatchError(
                f"element ({self.free}; {self.torsion}) does not conform to {self.spec}"
            )
        reduced = tuple(int(t) % n for t, n in zip(self.torsion, self.spec.torsion))
        object.__setattr__(self, "torsion", reduced)
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))

    def _check(self, other: GroupElement):
        if not isinstance(other, GroupElement) or other.spec != self.spec:
            raise GroupMismatchError(f"cannot combine elements of {self.spec} and {getattr(other, 'spec', other)}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(
            self.spec,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(self.spec, tuple(-a for a in self.free), tuple(-a for a in self.torsion))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def __str__(self):
        return f"({','.join(map(str, self.free))};{','.join(map(str, self.torsion))})"


def elem_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def elem_neg(a: GroupElement) -> GroupElement:
    return -a


def _as_turn(t) -> Turn:
    if isinstance(t, Fraction):
        return t % 1
    if isinstance(t, Rational):
        return Fraction(t) % 1
    t = float(t)
    return t % 1.0


@dataclass(frozen=True)
class Character:
    """A point of the dual group.

    ``turns[i]`` encodes ``omega_i = exp(2 pi i turns[i])`` on the i-th free
    factor; ``indices[j]`` encodes ``exp(2 pi i indices[j] / n_j)``.
    """

    spec: GroupSpec
    turns: tuple[Turn, ...]
    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.turns) != self.spec.free_rank or len(self.indices) != len(self.spec.torsion):
            raise GroupMismatchError(f"character does not conform to {self.spec}")
        object.__setattr__(self, "turns", tuple(_as_turn(t) for t in self.turns))
        object.__setattr__(
            self, "indices", tuple(int(k) % n for k, n in zip(self.indices, self.spec.torsion))
        )

    def phase(self, g: GroupElement) -> Turn:
        """The value ``chi(g)`` as a number of turns in [0, 1)."""
        if g.spec != self.spec:
            raise GroupMismatchError(f"character of {self.spec} evaluated at element of {g.spec}")
        # float turns are multiplied exactly so large elements keep full phase accuracy
        exact = Fraction(0)
        inexact = False
        for t, x in zip(self.turns, g.free):
            if not isinstance(t, Fraction):
                inexact = True
            exact += Fraction(t) * x
        for k, x, n in zip(self.indices, g.torsion, self.spec.torsion):
            exact += Fraction(k * x, n)
        exact %= 1
        return float(exact) % 1.0 if inexact else exact

    def __call__(self, g: GroupElement) -> complex:
        ph = self.phase(g)
        if isinstance(ph, Fraction) and (4 * ph).denominator == 1:
            return _QUARTER_TURNS[int(4 * ph)]
        return cmath.exp(2j * cmath.pi * float(ph))

    @property
    def free_values(self) -> tuple[complex, ...]:
        return tuple(cmath.exp(2j * cmath.pi * float(t)) for t in self.turns)

    @property
    def torsion_values(self) -> tuple[complex, ...]:
        return tuple(cmath.exp(2j * cmath.pi * k / n) for k, n in zip(self.indices, self.spec.torsion))

    def is_trivial(self) -> bool:
        return not any(self.turns) and not any(self.indices)

    def __str__(self):
        return f"{','.join(str(t) for t in self.turns)};{','.join(map(str, self.indices))}"


def char_eval(chi: Character, g: GroupElement) -> complex:
    return chi(g)


def enumerate_torsion_dual(spec: GroupSpec, free_turns: Sequence[Turn] | None = None) -> list[Character]:
    """All characters of the torsion part, lexicographic in the indices.

    Free coordinates are fixed to ``free_turns`` (zero by default).
    """
    if free_turns is None:
        free_turns = (Fraction(0),) * spec.free_rank
    return [
        Character(spec, tuple(free_turns), idx)
        for idx in itertools.product(*(range(n) for n in spec.torsion))
    ]


def sample_dual_grid(spec: GroupSpec, grid: int) -> list[Character]:
    """Uniform grid of ``grid`` turns per free axis crossed with the full torsion dual."""
    if grid < 1:
        raise ValueError(f"grid must be >= 1, got {grid}")
    axis = [Fraction(i, grid) for i in range(grid)]
    out = []
    for turns in itertools.product(axis, repeat=spec.free_rank):
        out.extend(enumerate_torsion_dual(spec, turns))
    return out


def box(spec: GroupSpec, radius: int | Iterable[int]) -> list[GroupElement]:
    """Elements with ``|free_i| <= radius_i`` and every torsion residue."""
    if isinstance(radius, int):
        radii = [radius] * spec.free_rank
    else:
        radii = list(radius)
        if len(radii) != spec.free_rank:
            raise ValueError(f"need {spec.free_rank} radii, got {len(radii)}")
    free_ranges = [range(-r, r + 1) for r in radii]
    tor_ranges = [range(n) for n in spec.torsion]
    return [
        GroupElement(spec, f, t)
        for f in itertools.product(*free_ranges)
        for t in itertools.product(*tor_ranges)
    ]
