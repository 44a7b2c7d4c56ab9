"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SCTError(Exception):
    """Base class for all errors raised by sctkit."""


class GroupError(SCTError):
    pass


class NotAssociative(GroupError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"(a*b)*c != a*(b*c) for (a, b, c) = ({a}, {b}, {c})")
        self.witness = (a, b, c)


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    def __init__(self, element: int):
        super().__init__(f"element {element} has no two-sided inverse")
        self.witness = element


class NotAPermutation(GroupError):
    pass


class OrderCapExceeded(SCTError):
    pass


class NotNormal(GroupError):
    def __init__(self, n: int, g: int, conjugate: int):
        super().__init__(f"g={g} conjugates member {n} to {conjugate}, which is outside the subgroup")
        self.witness = (n, g, conjugate)


class ParentMismatch(GroupError):
    pass


class ProductNotSubgroup(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class GroupMismatch(SCTError):
    pass


class KernelDoesNotContainN(SCTError):
    pass


class NotACharacter(SCTError):
    pass


class NotClassClosed(SCTError):
    pass


class EmptySet(SCTError):
    pass


class EnumerationCapExceeded(SCTError):
    pass


class InternalAxiomFailure(SCTError):
    """A construction that must always be valid produced something invalid: a bug."""


class InternalClosureFailure(SCTError):
    pass


class NotSNormal(SCTError):
    pass


class PreconditionFailed(SCTError):
    pass


class AlgebraError(SCTError):
    pass


class BadField(AlgebraError):
    pass


class UnsupportedField(AlgebraError):
    pass


class NotNilpotent(AlgebraError):
    pass


class AlgebraNotAssociative(AlgebraError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"(b{i} b{j}) b{k} != b{i} (b{j} b{k})")
        self.witness = (i, j, k)


class ValidationFailure(SCTError):
    pass


class InputError(SCTError):
    pass
