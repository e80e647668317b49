# File: packetforge/packetforge/schemas/base.py
# This file defines Pydantic schemas for the base configuration file (lines, ψ_σ, ε_σ, options).

import json
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from packetforge.arthur import JordanBlock, make_base, parse_blocks
from packetforge.classical import BaseCusp
from packetforge.core import DEFAULT_LINE, CuspLine, HalfInt, Parity, hi
from packetforge.errors import ConfigError, PacketForgeError


class LineSpec(BaseModel):
    """Schema for one cuspidal line ρ."""
    id: str = DEFAULT_LINE
    alpha: Union[str, int, float]
    parity: Optional[Parity] = None
    dim_hint: Optional[int] = None

    def to_line(self) -> CuspLine:
        return CuspLine(self.id, hi(self.alpha), self.parity, self.dim_hint)


class BlockSpec(BaseModel):
    """Schema for a Jordan block given as an object."""
    a: int
    b: int
    eps: int
    line: str = DEFAULT_LINE
    zeta: int = 1


class OptionsSpec(BaseModel):
    eps_product_override: Optional[bool] = None
    max_cuspidal_letters: Optional[int] = None
    format: Optional[str] = None


class BaseConfig(BaseModel):
    """Schema for a base configuration file: σ through its parameter on each line."""
    sigma_id: str = "sigma"
    lines: List[LineSpec] = Field(min_length=1)
    blocks: List[Union[str, BlockSpec]] = Field(default_factory=list)
    options: OptionsSpec = Field(default_factory=OptionsSpec)

    @field_validator("blocks")
    @classmethod
    def no_empty_strings(cls, v):
        for item in v:
            if isinstance(item, str) and not item.strip():
                raise ValueError("Empty block string")
        return v

    def to_base(self) -> BaseCusp:
        lines = [spec.to_line() for spec in self.lines]
        signed = []
        for item in self.blocks:
            if isinstance(item, str):
                signed.extend(parse_blocks(item, lines[0].id).signed_blocks())
            else:
                signed.append((JordanBlock(item.line, item.a, item.b, item.zeta), item.eps))
        return make_base(lines, signed, self.sigma_id)


def load_config(path: Union[str, Path]) -> BaseConfig:
    """Read and validate a JSON base configuration; every failure becomes ConfigError."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {str(e)}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"Malformed JSON in {path}: {str(e)}")
    try:
        return BaseConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"Invalid config {path}: {e.error_count()} error(s): {str(e)}")


def load_base(path: Union[str, Path]) -> BaseCusp:
    config = load_config(path)
    try:
        return config.to_base()
    except PacketForgeError:
        raise
    except ValueError as e:
        raise ConfigError(f"Invalid config {path}: {str(e)}")


def alpha_of(base: BaseCusp) -> HalfInt:
    return base.main_line.alpha
