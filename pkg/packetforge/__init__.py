# File: packetforge/packetforge/__init__.py
# This file exposes the package version and the most used entry points.

from packetforge.config import settings

__version__ = settings.VERSION

from packetforge.arthur import PacketPair, default_base, dual_of_elementary_ddr, moeglin_rep, parse_blocks  # noqa: E402
from packetforge.core import CuspLine, HalfInt, Segment, hi  # noqa: E402
from packetforge.critical import appendix_lemma, catalog, is_critical, verify_case  # noqa: E402

__all__ = [
    "CuspLine",
    "HalfInt",
    "PacketPair",
    "Segment",
    "__version__",
    "appendix_lemma",
    "catalog",
    "default_base",
    "dual_of_elementary_ddr",
    "hi",
    "is_critical",
    "moeglin_rep",
    "parse_blocks",
    "verify_case",
]
