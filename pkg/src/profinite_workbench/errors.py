"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can map
failures onto its exit-code contract without string matching.
"""

import os

DEFAULT_CAP = 100_000


def resolve_cap(cap=None):
    """Return ``cap`` if given, else ``$WORKBENCH_CAP``, else the default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("WORKBENCH_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP


class WorkbenchError(Exception):
    code = "ERROR"


class CapExceeded(WorkbenchError):
    code = "CAP_EXCEEDED"


class BadPerm(WorkbenchError, ValueError):
    code = "BAD_PERM"


class NotMember(WorkbenchError, ValueError):
    code = "NOT_MEMBER"


class NotSubgroup(WorkbenchError, ValueError):
    code = "NOT_SUBGROUP"


class NotNormal(WorkbenchError, ValueError):
    code = "NOT_NORMAL"


class NotPrime(WorkbenchError, ValueError):
    code = "NOT_PRIME"


class NotPGroup(WorkbenchError, ValueError):
    code = "NOT_P_GROUP"


class InvalidTower(WorkbenchError, ValueError):
    code = "INVALID_TOWER"


class LengthMismatch(WorkbenchError, ValueError):
    code = "LENGTH_MISMATCH"


class BadLevel(WorkbenchError, ValueError):
    code = "BAD_LEVEL"


class InvalidThread(WorkbenchError, ValueError):
    code = "INVALID_THREAD"


class WindowTooLarge(WorkbenchError, ValueError):
    code = "WINDOW_TOO_LARGE"


class BadN(WorkbenchError, ValueError):
    code = "BAD_N"


class NotSType(WorkbenchError, ValueError):
    code = "NOT_S_TYPE"


class NotIncreasing(WorkbenchError, ValueError):
    code = "NOT_INCREASING"


class NoValidK(WorkbenchError, ValueError):
    code = "NO_VALID_K"


class DimMismatch(WorkbenchError, ValueError):
    code = "DIM_MISMATCH"


class SingularMatrix(WorkbenchError, ValueError):
    code = "SINGULAR"


class ParseError(WorkbenchError, ValueError):
    code = "PARSE_ERROR"


class EngineInconsistency(WorkbenchError, AssertionError):
    """An identity that must hold failed; this always indicates a bug."""

    code = "ENGINE_INCONSISTENCY"


class NotHomomorphism(WorkbenchError, ValueError):
    code = "NOT_HOMOMORPHISM"
