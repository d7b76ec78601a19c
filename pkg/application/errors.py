class HopfContractError(Exception):
    """
    Base class of every error raised by the algebra workbench
    """


""" Scalar series """


class ZeroConstantTerm(HopfContractError):
    pass


class NonzeroConstantTerm(HopfContractError):
    pass


class ScalarParseError(HopfContractError):
    pass


""" Algebra engine """


class UnknownGenerator(HopfContractError):
    pass


class MissingRule(HopfContractError):
    def __init__(self, b, a):
        super().__init__("no rewrite rule for the pair ({}, {})".format(b, a))
        self.pair = (b, a)


class RuleCycle(HopfContractError):
    def __init__(self, b, a):
        super().__init__("rule derivation for ({}, {}) depends on itself".format(b, a))
        self.pair = (b, a)


class RankMismatch(HopfContractError):
    pass


class AlgebraMismatch(HopfContractError, ValueError):
    pass


class InvalidRule(HopfContractError, ValueError):
    pass


class NonNilpotentOrderZero(HopfContractError):
    pass


class NameCollision(HopfContractError):
    pass


class DefinitionFileError(HopfContractError):
    pass


""" Hopf structures """


class DegenerateParameter(HopfContractError):
    pass


class DegenerateEpsilon(HopfContractError):
    pass


class NoSolution(HopfContractError):
    pass


class NonlinearFirstOrder(HopfContractError):
    pass


""" Scattering """


class SingularKinematics(HopfContractError):
    pass


class BranchAmbiguity(HopfContractError):
    pass
