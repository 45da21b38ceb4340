"""Exception hierarchy shared across the package."""

from __future__ import annotations


class EpgdomError(Exception):
    """Base class for all errors raised by this package."""


class SpecError(EpgdomError, ValueError):
    """A group-spec string or expression tree is invalid."""


class InvalidQuaternionOrder(SpecError):
    """Quaternion atom whose order is not 2**k with k >= 3."""


class OrderCapExceeded(EpgdomError):
    """Requested group is larger than the configured order cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"group order {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap


class NotAGroup(EpgdomError):
    """A multiplication table fails one of the group axioms.

    ``reason`` is one of "no identity", "missing inverse",
    "non-associative triple (a,b,c)" (with the witness triple attached),
    or a malformed-input description.
    """

    def __init__(self, reason: str, witness: tuple | None = None):
        super().__init__(reason if witness is None else f"{reason} {witness}")
        self.reason = reason
        self.witness = witness


class NotNilpotent(EpgdomError):
    """The set of p-elements is not closed for the witness prime."""

    def __init__(self, prime: int):
        super().__init__(f"set of {prime}-elements is not closed under multiplication")
        self.prime = prime


class NotAPGroup(EpgdomError):
    """Operation defined only for groups of prime-power order."""


class ModeError(EpgdomError):
    """Graph operation called on a graph built in the wrong mode."""


class ProfileInvalid(EpgdomError):
    """A Sylow profile violates its structural invariants."""


class ResourceLimit(EpgdomError):
    """Search node budget exhausted before optimality was proven."""

    def __init__(self, budget: int):
        super().__init__(f"node budget {budget} exhausted")
        self.budget = budget


class TooLarge(EpgdomError):
    """Instance exceeds the size limit of the exhaustive oracle."""
