"""Seeded parameter draws that are reproducible across platforms.

The generator is the 64-bit linear congruential recurrence

    state <- state * 6364136223846793005 + 1442695040888963407  (mod 2**64)

and each draw uses the top 32 bits of the new state.  Scalars have real
and imaginary parts n/d with n uniform in [-3, 3] and d uniform in [1, 3].
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraVector
from .exactnum import Scalar
from .group import Window
from .tpa import Product, case2_product, case3_product, mutation_product
from .wittfn import CasePartition, CaseTag

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class Lcg:
    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be nonnegative")
        self.state = seed & MASK

    def next_u32(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK
        return self.state >> 32

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (modulo bias below 2**-29 for these ranges)."""
        return lo + self.next_u32() % (hi - lo + 1)

    def fraction(self) -> Fraction:
        num = self.randint(-3, 3)
        den = self.randint(1, 3)
        return Fraction(num, den)

    def scalar(self) -> Scalar:
        re_part = self.fraction()
        return Scalar(re_part, self.fraction())

    def vector(self, support) -> AlgebraVector:
        return AlgebraVector({alpha: self.scalar() for alpha in support})


def draw_parameters(part: CasePartition, rng: Lcg, window: Window | None = None, degree_radius: int = 2) -> dict:
    """One random parameter set for the classified product of ``part``.

    Big: b on degrees of norm <= ``degree_radius`` (the group is infinite).
    Two: b on the whole group.  Three: b_i on the coset labelled -i mod 3.
    """
    g = part.group
    tag = part.case_tag
    if tag is CaseTag.BIG:
        return {"b": rng.vector(Window(degree_radius).elements(g))}
    if tag is CaseTag.TWO:
        return {"b": rng.vector(g.elements())}
    if tag is CaseTag.THREE:
        out = {}
        for i in range(3):
            j = (-i) % 3
            out[f"b{i}"] = rng.vector([a for a in g.elements() if part.coset_index(a) == j])
        return out
    raise ValueError(f"no parameters to draw for case {tag.value}")


def build_product(part: CasePartition, params: dict) -> Product:
    tag = part.case_tag
    if tag is CaseTag.BIG:
        return mutation_product(params["b"], part.group)
    if tag is CaseTag.TWO:
        return case2_product(part, params["b"])
    return case3_product(part, params["b0"], params["b1"], params["b2"])
