"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class XYZError(Exception):
    """Base class. ``witness`` carries whatever object demonstrates the failure."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class MalformedDocument(XYZError):
    pass


class NotCubic(XYZError):
    pass


class SelfLoop(XYZError):
    pass


class ParallelEdge(XYZError):
    pass


class Disconnected(XYZError):
    pass


class NotBiconnected(XYZError):
    pass


class NotPlanar(XYZError):
    pass


class FaceNotCycle(XYZError):
    pass


class NotXYZSurface(XYZError):
    """Raised by :func:`xyzgraph.surface.require_xyz_surface`; ``reason`` is a short tag."""

    def __init__(self, reason: str, message: str, witness=None):
        super().__init__(message, witness)
        self.reason = reason


class IncompatibleGluing(XYZError):
    pass


class NotAManifoldMap(XYZError):
    pass


class NotCubicCayley(XYZError):
    pass


class GroupTooLarge(XYZError):
    pass


class DegenerateVector(XYZError):
    pass


class UnknownName(XYZError):
    pass


class TooLarge(XYZError):
    pass


class PreconditionViolated(XYZError):
    pass


class VerificationFailed(XYZError):
    pass
