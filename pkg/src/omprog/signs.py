"""Sign vectors over a fixed finite ground set.

A sign vector assigns one of +, - or 0 to each of n ground positions. It is
stored as a pair of bitmasks (positive support, negative support), which keeps
composition, separation and conformality O(1) in the word size. Positions are
integers 0..n-1; mapping positions to element names is the caller's concern.
"""

from __future__ import annotations

from collections.abc import Iterable

_CHARS = {1: "+", -1: "-", 0: "0"}
_SIGNS = {"+": 1, "-": -1, "0": 0}


def iter_bits(mask: int):
    """Yield the indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SignVector:
    """Immutable sign vector of length n with bitmask support sets."""

    __slots__ = ("n", "pos", "neg", "_str")

    def __init__(self, n: int, pos: int, neg: int):
        if pos & neg:
            raise ValueError("a position cannot be both positive and negative")
        if (pos | neg) >> n:
            raise ValueError("support exceeds ground size")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)
        object.__setattr__(self, "_str", None)

    def __setattr__(self, name, value):
        raise AttributeError("SignVector is immutable")

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> SignVector:
        pos = neg = 0
        n = 0
        for i, s in enumerate(signs):
            n = i + 1
            if s > 0:
                pos |= 1 << i
            elif s < 0:
                neg |= 1 << i
        return cls(n, pos, neg)

    @classmethod
    def from_string(cls, text: str) -> SignVector:
        try:
            return cls.from_signs(_SIGNS[c] for c in text)
        except KeyError as exc:
            raise ValueError(f"invalid sign character {exc.args[0]!r}") from None

    @classmethod
    def zero(cls, n: int) -> SignVector:
        return cls(n, 0, 0)

    # -- basic accessors ---------------------------------------------------

    def sign(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        if self.pos >> i & 1:
            return 1
        if self.neg >> i & 1:
            return -1
        return 0

    __getitem__ = sign

    @property
    def support_mask(self) -> int:
        return self.pos | self.neg

    @property
    def zero_mask(self) -> int:
        return ~(self.pos | self.neg) & ((1 << self.n) - 1)

    def support(self) -> frozenset[int]:
        return frozenset(iter_bits(self.support_mask))

    def zero_set(self) -> frozenset[int]:
        return frozenset(iter_bits(self.zero_mask))

    def is_zero(self) -> bool:
        return not (self.pos | self.neg)

    # -- algebra -----------------------------------------------------------

    def __neg__(self) -> SignVector:
        return SignVector(self.n, self.neg, self.pos)

    def compose(self, other: SignVector) -> SignVector:
        """Composition: take this vector's sign where nonzero, else the other's.

        Associative and idempotent; the zero set of the result is the
        intersection of the two zero sets.
        """
        self._check_ground(other)
        free = ~(self.pos | self.neg)
        return SignVector(self.n, self.pos | (other.pos & free), self.neg | (other.neg & free))

    def separation_mask(self, other: SignVector) -> int:
        self._check_ground(other)
        return (self.pos & other.neg) | (self.neg & other.pos)

    def separation(self, other: SignVector) -> frozenset[int]:
        """Positions carrying strictly opposite signs in the two vectors."""
        return frozenset(iter_bits(self.separation_mask(other)))

    def conformal(self, other: SignVector) -> bool:
        """True when no position separates the two vectors."""
        return self.separation_mask(other) == 0

    def conforms_to(self, other: SignVector) -> bool:
        """True when every nonzero sign of this vector agrees with the other.

        This is the face order: X conforms to Y exactly when X o Y = Y.
        """
        self._check_ground(other)
        return not (self.pos & ~other.pos) and not (self.neg & ~other.neg)

    def reorient(self, mask: int) -> SignVector:
        """Flip the signs at the positions of mask."""
        keep = ~mask
        return SignVector(
            self.n,
            (self.pos & keep) | (self.neg & mask),
            (self.neg & keep) | (self.pos & mask),
        )

    def restrict(self, keep: Iterable[int]) -> SignVector:
        """Project onto the given positions, reindexed in the order supplied."""
        pos = neg = 0
        n = 0
        for j, i in enumerate(keep):
            n = j + 1
            if self.pos >> i & 1:
                pos |= 1 << j
            elif self.neg >> i & 1:
                neg |= 1 << j
        return SignVector(n, pos, neg)

    def extend(self, sign: int) -> SignVector:
        """Append one coordinate with the given sign."""
        bit = 1 << self.n
        return SignVector(
            self.n + 1,
            self.pos | (bit if sign > 0 else 0),
            self.neg | (bit if sign < 0 else 0),
        )

    # -- canonical antipodal representative --------------------------------

    def is_canonical(self) -> bool:
        """True when the first nonzero sign (in ground order) is positive.

        The all-zero vector counts as canonical.
        """
        support = self.pos | self.neg
        if not support:
            return True
        low = support & -support
        return bool(self.pos & low)

    def canonical(self) -> SignVector:
        return self if self.is_canonical() else -self

    # -- plumbing ----------------------------------------------------------

    def _check_ground(self, other: SignVector) -> None:
        if self.n != other.n:
            raise ValueError(f"ground size mismatch: {self.n} != {other.n}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignVector)
            and self.n == other.n
            and self.pos == other.pos
            and self.neg == other.neg
        )

    def __hash__(self) -> int:
        return hash((self.n, self.pos, self.neg))

    def __str__(self) -> str:
        if self._str is None:
            text = "".join(_CHARS[self.sign(i)] for i in range(self.n))
            object.__setattr__(self, "_str", text)
        return self._str

    def __repr__(self) -> str:
        return f"SignVector({str(self)!r})"

    def __lt__(self, other: SignVector) -> bool:
        return str(self) < str(other)


def compose(x: SignVector, y: SignVector) -> SignVector:
    return x.compose(y)


def separation(x: SignVector, y: SignVector) -> frozenset[int]:
    return x.separation(y)


def conformal(x: SignVector, y: SignVector) -> bool:
    return x.conformal(y)
