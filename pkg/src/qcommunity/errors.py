"""Exception types raised by qcommunity."""


class QCommunityError(Exception):
    """Base class for all library errors."""


class NonSquareMatrixError(QCommunityError, ValueError):
    pass


class HermiticityError(QCommunityError, ValueError):
    """Raised when a matrix is further from Hermitian than allowed."""

    def __init__(self, max_asymmetry, tol):
        self.max_asymmetry = float(max_asymmetry)
        self.tol = float(tol)
        super().__init__(
            f"matrix is not Hermitian: max |M_ij - conj(M_ji)| = "
            f"{self.max_asymmetry:.3e} exceeds tolerance {self.tol:.3e}"
        )


class EigensolverFailure(QCommunityError, ArithmeticError):
    pass


class NonPositiveTimeError(QCommunityError, ValueError):
    pass


class OverlappingCommunitiesError(QCommunityError, ValueError):
    pass


class EmptyCommunityError(QCommunityError, ValueError):
    pass


class NegativeEntriesError(QCommunityError, ValueError):
    pass


class DegenerateTotalWeightError(QCommunityError, ArithmeticError):
    pass


class MismatchedNodeSetsError(QCommunityError, ValueError):
    pass


class InfeasibleDegreeError(QCommunityError, ValueError):
    pass


class NegativeSigmaError(QCommunityError, ValueError):
    pass


class ParseError(QCommunityError, ValueError):
    pass
