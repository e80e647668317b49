# File: packetforge/packetforge/commands/hopf_command.py
# This file defines the mstar and mustar subcommands over segment words.

from typing import Any, Dict, List

from packetforge.classical import SIGMA, InducedExpr, mu_star_cuspidal
from packetforge.commands.base_command import BaseCommand
from packetforge.core import GLGen, GLWord, hi, render_string, word_canon
from packetforge.errors import ConfigError
from packetforge.gl_hopf import Mstar, Mstar_closed, Mstar_GL, mstar_word


def parse_generators(request: Dict[str, Any], line_id: str) -> List[GLGen]:
    """--delta x,y and --zeta x,y flags; a single exponent is a one-point segment."""
    gens: List[GLGen] = []
    for flag, make in (("delta", GLGen.delta), ("zeta", GLGen.zeta)):
        for spec in request.get(flag) or []:
            parts = [p for p in spec.split(",") if p.strip()]
            if len(parts) not in (1, 2):
                raise ConfigError(f"Segment {spec!r} must be 'x' or 'x,y'")
            x = hi(parts[0])
            y = hi(parts[-1])
            gens.append(make(x, y, line_id))
    return gens


class MstarCommand(BaseCommand):
    """M*, m* or M*_GL of a word, as {left, right, coeff} records."""
    name = "mstar"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["m*", "M*", "M*_GL", "closed-form check"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        gens = parse_generators(request, self.base.main_line.id)
        if not gens:
            return {"error": "At least one --delta or --zeta segment is required", "exit_code": 2}
        w: GLWord = word_canon(gens)
        which = request.get("which") or "M"
        if which == "GL":
            records = [{"word": str(u), "coeff": c} for u, c in Mstar_GL(w).sorted_items()]
            return {"results": {"word": str(w), "terms": records}, "pass": True}
        total = mstar_word(w) if which == "m" else Mstar(w)
        records = [{"left": str(a), "right": str(b), "coeff": c} for (a, b), c in total.sorted_items()]
        out: Dict[str, Any] = {"word": str(w), "which": which, "terms": records}
        passed = True
        if request.get("check"):
            if which != "M" or len(gens) != 1:
                return {"error": "--check compares M* of a single generator with its closed form", "exit_code": 2}
            passed = Mstar_closed(gens[0]) == total
            out["closed_form_equal"] = passed
        return {"results": out, "pass": passed}


class MustarCommand(BaseCommand):
    """Cuspidal strings of word ⋊ σ with multiplicities."""
    name = "mustar"

    def __init__(self, base, service=None):
        super().__init__(base, service)
        self.capabilities = ["μ* over σ"]

    def handle(self, request: Dict[str, Any]) -> Dict[str, Any]:
        gens = parse_generators(request, self.base.main_line.id)
        expr = InducedExpr(word_canon(gens), SIGMA)
        strings = mu_star_cuspidal(expr)
        records = [{"string": render_string(s), "coeff": c} for s, c in strings.sorted_items()]
        return {"results": {"expr": str(expr), "terms": records, "total": sum(c for _, c in strings.items())}, "pass": True}
