# File: packetforge/packetforge/errors.py
# This file defines the exception hierarchy raised by the library.

from typing import Any, Dict, Optional


class PacketForgeError(ValueError):
    """Base class for all library errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self), **self.details}


class ConfigError(PacketForgeError):
    """Malformed input or an inconsistent base configuration."""


class PreconditionViolation(PacketForgeError):
    """An operation was called outside its domain."""


class ParityMismatch(PacketForgeError):
    """A deformation or block violates good parity."""


class LetterBoundExceeded(PacketForgeError):
    """A word has more cuspidal letters than the configured bound."""


class UnsupportedSymbol(PacketForgeError):
    """A tempered symbol without an implemented envelope or string set."""


class UnsupportedStep(PacketForgeError):
    """No identification rule covers ν^x ⋊ π for this configuration."""


class UnsupportedShift(PacketForgeError):
    """Domination needs more than one-step shifts per block."""


class MultiplicityNotOne(PacketForgeError):
    """A socle count came out different from one."""

    def __init__(self, count: int, message: str = "", details: Optional[Dict[str, Any]] = None):
        super().__init__(message or f"Leading string multiplicity is {count}, expected 1", details)
        self.count = count


class CandidateMismatch(PacketForgeError):
    """The proposed subrepresentation cannot sit inside ν^x ⋊ π."""


class CertificateFailure(PacketForgeError):
    """A reduction step could not be certified in strict mode."""


class BoundaryCase(PacketForgeError):
    """The simple reduction step is not applicable: a = b + 2 with b > 0."""


class NothingToReduce(PacketForgeError):
    """No block above the cuspidal chain (a = ∞)."""


class BaseMismatch(PacketForgeError):
    """The recursion bottomed at a cuspidal pair other than the configured base."""
