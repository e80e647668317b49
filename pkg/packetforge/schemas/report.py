# File: packetforge/packetforge/schemas/report.py
# This file defines the Pydantic report envelope written by every subcommand.

import json
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field


class Report(BaseModel):
    """Schema for a command report: {version, command, inputs, results, pass}."""
    model_config = ConfigDict(populate_by_name=True)

    version: str
    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    results: Any = None
    passed: bool = Field(alias="pass")

    def to_json(self) -> str:
        # sorted keys keep reports byte-identical across runs
        return json.dumps(self.model_dump(by_alias=True), sort_keys=True, ensure_ascii=False, indent=2)

    def to_text(self) -> str:
        lines = [f"{self.command}: {'pass' if self.passed else 'FAIL'}"]
        for key in sorted(self.inputs):
            lines.append(f"  {key} = {self.inputs[key]}")
        lines.extend(_text_results(self.results))
        return "\n".join(lines)


def _text_results(results: Any, indent: str = "  ") -> list:
    if isinstance(results, list):
        out = []
        for item in results:
            out.extend(_text_results(item, indent))
        return out
    if isinstance(results, dict):
        label = results.get("label") or results.get("case") or results.get("name")
        status = results.get("status")
        if status is None and "equal" in results:
            status = "ok" if results["equal"] else "MISMATCH"
        if status is None and "pass" in results:
            status = "pass" if results["pass"] else "FAIL"
        got = results.get("got") or results.get("route_b") or results.get("result")
        head = " ".join(str(p) for p in (label, status, got) if p is not None)
        out = [f"{indent}{head}"] if head else []
        for key in ("labels", "checks", "suites"):
            if key in results:
                out.extend(_text_results(results[key], indent + "  "))
        return out
    return [f"{indent}{results}"]
