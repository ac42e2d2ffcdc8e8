"""Exception hierarchy for the laboratory.

Every error names the violated precondition and carries the offending
residual/value so failures are diagnosable from the message alone.
"""


class LwLabError(Exception):
    """Base class for all library errors."""


# --- admissibility of the shock configuration ---------------------------------

class RankineHugoniotViolation(LwLabError):
    def __init__(self, f_left, f_right):
        self.residual = abs(f_left - f_right)
        super().__init__(
            f"flux values differ across the shock: f(u_l)={f_left!r}, "
            f"f(u_r)={f_right!r}, |residual|={self.residual:.3e}"
        )


class EntropyViolation(LwLabError):
    def __init__(self, fp_left, fp_right):
        super().__init__(
            f"characteristic speeds must satisfy f'(u_r) < 0 < f'(u_l), "
            f"got f'(u_l)={fp_left!r}, f'(u_r)={fp_right!r}"
        )


class CflViolation(LwLabError):
    def __init__(self, alpha_l, alpha_r):
        super().__init__(
            f"CFL requires max(alpha_l, |alpha_r|) < 1, got "
            f"alpha_l={alpha_l!r}, alpha_r={alpha_r!r}"
        )


# --- grid functions and norms -------------------------------------------------

class DivergentNorm(LwLabError):
    pass


class TailMismatch(LwLabError):
    pass


class NonzeroTails(LwLabError):
    pass


# --- profile computation ------------------------------------------------------

class NewtonDivergence(LwLabError):
    def __init__(self, msg, last_iterate=None):
        self.last_iterate = last_iterate
        super().__init__(msg)


class BranchEscape(LwLabError):
    pass


class MassOutOfRange(LwLabError):
    def __init__(self, theta, lo, hi):
        self.achievable = (lo, hi)
        super().__init__(
            f"requested excess mass {theta!r} outside achievable interval "
            f"[{lo!r}, {hi!r}]"
        )


class InsufficientTail(LwLabError):
    pass


# --- spectral analysis --------------------------------------------------------

class GlancingPoint(LwLabError):
    pass


class ContourThroughZero(LwLabError):
    pass


class AlphaMOutOfRange(LwLabError):
    pass


class SymmetricCase(LwLabError):
    pass


class DegenerateAffine(LwLabError):
    pass


class DegenerateDerivative(LwLabError):
    pass


# --- Green's functions --------------------------------------------------------

class AtEigenvalue(LwLabError):
    pass


class LopatinskiiZero(LwLabError):
    pass


# --- quadrature ---------------------------------------------------------------

class QuadratureNonConvergence(LwLabError):
    def __init__(self, msg, error_estimate=None):
        self.error_estimate = error_estimate
        super().__init__(msg)


class EtaDependence(LwLabError):
    pass


# --- experiments --------------------------------------------------------------

class NonzeroMass(LwLabError):
    pass
