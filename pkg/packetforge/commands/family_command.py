# File: packetforge/packetforge/commands/family_command.py
# This file defines the family subcommand: recursion route against closed forms on a grid.

from typing import Any, Dict

from packetforge.commands.base_command import BaseCommand
from packetforge.families import CaseKind, FamilyCase, check_duality_case, check_family_case, kind_for


class FamilyCommand(BaseCommand):
    """One family member, or the whole grid with optional duality and endpoint suites."""
    name = "family"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["family grid", "duality grid", "endpoint identities"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        if request.get("m") is not None and request.get("n") is not None:
            return self._single(request)
        size = int(request.get("grid") or 3)
        suites = [{"name": "family", "checks": [r.to_json() for r in self.service.run_family(self.base, size)]}]
        if request.get("duality"):
            suites.append({"name": "duality", "checks": [r.to_json() for r in self.service.run_duality(self.base, size)]})
        if request.get("endpoints"):
            suites.append({"name": "endpoints", "checks": [r.to_json() for r in self.service.run_endpoints(self.base, size)]})
        for suite in suites:
            suite["pass"] = all(c["equal"] for c in suite["checks"])
        return {"results": {"suites": suites}, "pass": all(s["pass"] for s in suites)}

    def _single(self, request: Dict[str, Any]) -> Dict[str, Any]:
        kind = CaseKind(request["kind"]) if request.get("kind") else kind_for(self.base.main_line)
        case = FamilyCase(kind, int(request["m"]), int(request["n"]), int(request.get("sign") or 1), bool(request.get("tau")))
        case.validate(self.base.main_line)
        checks = [check_family_case(case, self.base, self.registry)]
        if request.get("duality") and case.m != case.n:
            checks.append(check_duality_case(case, self.base, self.registry))
        return {"results": {"checks": [c.to_json() for c in checks]}, "pass": all(c.equal for c in checks)}
