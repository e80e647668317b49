# File: packetforge/packetforge/commands/packet_command.py
# This file defines the packet, dual and jac subcommands.

from typing import Any, Dict, List

from packetforge.arthur import dual_of_elementary_ddr, moeglin_rep
from packetforge.commands.base_command import BaseCommand
from packetforge.core import FormalSum, hi
from packetforge.errors import ConfigError
from packetforge.socle import Undecidable, jac


class PacketCommand(BaseCommand):
    """π(ψ, ε) through the reduction recursion."""
    name = "packet"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["moeglin_rep", "reduction trace"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        pp = self.packet_from(request)
        trace = moeglin_rep(pp, self.base, self.registry, request.get("strict"), request.get("eps_override"))
        out = trace.to_json()
        out["certified"] = not trace.uncertified
        passed = True
        if request.get("expect"):
            expected = self.datum_from(request["expect"])
            passed = trace.result == expected
            out["expected"] = str(expected)
        return {"results": out, "pass": passed}


class DualCommand(BaseCommand):
    """π(ψ, ε)^t by swapping every block."""
    name = "dual"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["aubert dual of elementary DDR packets"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        pp = self.packet_from(request)
        original = moeglin_rep(pp, self.base, self.registry, request.get("strict"), request.get("eps_override"))
        dual = dual_of_elementary_ddr(pp, self.base, self.registry, request.get("strict"))
        return {
            "results": {
                "pp": str(pp),
                "representation": str(original.result),
                "dual": str(dual.result),
                "dual_trace": dual.to_json(),
                "certified": not (original.uncertified or dual.uncertified),
            },
            "pass": True,
        }


class JacCommand(BaseCommand):
    """Jac_{x_k} ∘ ... ∘ Jac_{x_1} of a datum, given directly or as π(ψ, ε)."""
    name = "jac"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["jac", "certified Jacquet steps"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        if request.get("datum"):
            d = self.datum_from(request["datum"])
        elif request.get("blocks"):
            d = moeglin_rep(self.packet_from(request), self.base, self.registry, request.get("strict")).result
        else:
            raise ConfigError("jac needs --datum or --blocks")
        xs = request.get("x") or []
        if not xs:
            raise ConfigError("jac needs at least one --x")
        line = self.base.main_line
        d.validate(line)
        steps: List[Dict[str, Any]] = []
        current = d
        decided = True
        for x in xs:
            result = jac(current, hi(x), line)
            if isinstance(result, Undecidable):
                steps.append({"x": str(hi(x)), "result": "Undecidable"})
                decided = False
                break
            if not result:
                steps.append({"x": str(hi(x)), "result": "0"})
                break
            (current,) = tuple(result.keys())
            steps.append({"x": str(hi(x)), "result": str(current)})
        return {"results": {"datum": str(d), "steps": steps}, "pass": decided}
