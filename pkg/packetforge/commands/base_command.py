# File: packetforge/packetforge/commands/base_command.py
# This file defines the BaseCommand class shared by every subcommand handler.

from abc import ABC, abstractmethod
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional
import json
import logging
import time
import uuid

from packetforge.arthur import BoundaryRegistry, parse_blocks
from packetforge.classical import BaseCusp, LanglandsDatum
from packetforge.errors import ConfigError, PacketForgeError, ParityMismatch, PreconditionViolation
from packetforge.families import family_registry
from packetforge.services.verification_service import VerificationService

# Configure logging
logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2

# bad input rather than a failed identity
_CONFIG_ERRORS = (ConfigError, PreconditionViolation, ParityMismatch)


class BaseCommand(ABC):
    """Base class for all PacketForge subcommands.

    handle() returns {"results": ..., "pass": bool} or an {"error": ...} dict;
    run() adds timing and the execution history.
    """
    name = "command"

    def __init__(self, base: BaseCusp, service: Optional[VerificationService] = None):
        self.command_id = str(uuid.uuid4())
        self.created_at = datetime.now(timezone.utc)
        self.capabilities: List[str] = []
        self.execution_history: List[Dict[str, Any]] = []
        self.base = base
        self.service = service or VerificationService()
        self.registry: BoundaryRegistry = family_registry()
        self.logger = logging.getLogger(__name__)

    @abstractmethod
    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        """Handle one parsed request"""
        pass

    def run(self, request: Dict[str, Any]) -> Dict[str, Any]:
        start_time = time.time()
        try:
            result = self.handle(request)
        except PacketForgeError as e:
            result = self._error(e)
        self._log_execution(request, result, time.time() - start_time)
        return result

    def get_status(self) -> Dict[str, Any]:
        return {
            "command_id": self.command_id,
            "command": self.name,
            "capabilities": self.capabilities,
            "created_at": self.created_at.isoformat(),
            "executions": len(self.execution_history),
        }

    def _error(self, e: PacketForgeError) -> Dict[str, Any]:
        self.logger.error(f"{self.name} failed: {str(e)}")
        code = EXIT_CONFIG if isinstance(e, _CONFIG_ERRORS) else EXIT_MISMATCH
        return {"error": str(e), "detail": e.to_dict(), "exit_code": code}

    def _log_execution(self, request: Dict[str, Any], result: Dict[str, Any], duration: float) -> None:
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "request": request,
            "result_keys": list(result.keys()),
            "duration_seconds": duration,
            "status": "success" if "error" not in result else "error",
        }
        self.execution_history.append(log_entry)
        # Keep only last 100 executions
        if len(self.execution_history) > 100:
            self.execution_history = self.execution_history[-100:]
        self.logger.debug(f"{self.name} finished in {duration:.3f}s ({log_entry['status']})")

    def packet_from(self, request: Dict[str, Any]):
        blocks = request.get("blocks")
        if not blocks:
            raise ConfigError("--blocks is required")
        eps = request.get("eps")
        line_id = self.base.main_line.id
        return parse_blocks(blocks, line_id, [int(v) for v in eps.split(",")] if eps else None)

    @staticmethod
    def datum_from(text: str) -> LanglandsDatum:
        """A datum from inline JSON or a JSON file path."""
        try:
            raw = json.loads(text) if text.lstrip().startswith("{") else json.loads(Path(text).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read datum {text!r}: {str(e)}")
        return LanglandsDatum.from_json(raw)
