# File: packetforge/packetforge/commands/critical_command.py
# This file defines the critical, appendix and verify-all subcommands.

from typing import Any, Dict

from packetforge.commands.base_command import BaseCommand
from packetforge.core import hi
from packetforge.critical import catalog, is_critical
from packetforge.errors import ConfigError


class CriticalCommand(BaseCommand):
    """List the catalog at α, verify its cases, or test an exponent multiset."""
    name = "critical"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["catalog", "verify_case", "is_critical"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        action = request.get("action") or "verify"
        line = self.base.main_line
        keys = request.get("case") or None
        if action == "list":
            return {"results": [c.to_json() for c in catalog(line, keys)], "pass": True}
        if action == "check":
            exps = [hi(x) for x in (request.get("exponents") or "").split(",") if x.strip()]
            if not exps:
                raise ConfigError("critical check needs --exponents")
            return {"results": {"exponents": [str(x) for x in exps], "critical": is_critical(exps, line)}, "pass": True}
        if action != "verify":
            raise ConfigError(f"Unknown critical action {action!r}")
        reports = self.service.run_catalog(self.base, keys, request.get("strict"))
        return {"results": [r.to_json() for r in reports], "pass": all(r.passed for r in reports)}


class AppendixCommand(BaseCommand):
    """[x] ⋊ σ in an A-packet by descent, for one x or every admissible x."""
    name = "appendix"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["appendix_lemma"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        xs = [hi(x) for x in request.get("x") or []]
        results = self.service.run_appendix(self.base, xs or None, request.get("strict"))
        return {"results": [r.to_json() for r in results], "pass": all(r.equal for r in results)}


class VerifyAllCommand(BaseCommand):
    """Every suite that applies at α, summarized per suite."""
    name = "verify-all"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["family", "duality", "endpoints", "critical", "appendix"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        size = int(request.get("grid") or 3)
        suites = self.service.run_all(self.base, size, request.get("strict"))
        return {"results": {"suites": suites}, "pass": all(s["pass"] for s in suites)}
