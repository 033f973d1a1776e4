"""Text and JSON code files.

Text layout::

    FIELD p,e,m,modulus_q,modulus_qm,basis
    LEVEL q|qm
    BLOCK r n            (optional)
    GRS {json}           (optional: support, multipliers, k)
    G width
    <one matrix row per line>

The JSON form carries the same keys in lowercase.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .blocks import BlockCode
from .codes import LinearCode
from .fields import FieldTower
from .rs import GrsSpec


class FormatError(ValueError):
    pass


@dataclass
class CodeFile:
    tower: FieldTower
    level: str  # "q" or "qm"
    G: np.ndarray
    block: int | None = None
    n: int | None = None
    grs: GrsSpec | None = None

    def __post_init__(self):
        if self.level not in ("q", "qm"):
            raise FormatError("LEVEL must be q or qm")
        self.G = np.asarray(self.G, dtype=np.int64)
        if self.n is None:
            self.n = self.G.shape[1] // (self.block or 1)
        order = self.field.order
        if self.G.size and (self.G.min() < 0 or self.G.max() >= order):
            raise FormatError(f"generator entries must lie in [0, {order})")

    @property
    def field(self):
        return self.tower.base if self.level == "q" else self.tower.top

    # -- conversions -------------------------------------------------------

    @classmethod
    def from_code(cls, code, tower: FieldTower, grs: GrsSpec | None = None) -> CodeFile:
        level = "qm" if code.field is tower.top else "q"
        if isinstance(code, BlockCode):
            return cls(tower, level, code.G, block=code.r, n=code.n, grs=grs)
        return cls(tower, level, code.G, n=code.n, grs=grs)

    def code(self):
        if self.block is not None:
            return BlockCode(self.field, self.block, self.n, self.G.reshape(-1, self.n * self.block))
        return LinearCode(self.field, self.G.reshape(-1, self.n), n=self.n)

    # -- text ----------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"FIELD {self.tower.to_text()}", f"LEVEL {self.level}"]
        if self.block is not None:
            lines.append(f"BLOCK {self.block} {self.n}")
        if self.grs is not None:
            lines.append("GRS " + json.dumps(self.grs.to_dict(), separators=(",", ":")))
        lines.append(f"G {self.n * (self.block or 1)}")
        if self.G.size:
            lines.append(linalg.format_matrix(self.G))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CodeFile:
        lines = text.splitlines()
        head: dict[str, str] = {}
        i = 0
        while i < len(lines):
            line = lines[i].strip()
            i += 1
            if not line:
                continue
            key, _, rest = line.partition(" ")
            if key == "G":
                head["G"] = rest
                break
            head[key] = rest
        for required in ("FIELD", "LEVEL", "G"):
            if required not in head:
                raise FormatError(f"code file is missing {required}")
        tower = FieldTower.from_text(head["FIELD"])
        level = head["LEVEL"].strip()
        block = n = None
        if "BLOCK" in head:
            block, n = (int(x) for x in head["BLOCK"].split())
        width = int(head["G"]) if head["G"].strip() else None
        G = linalg.parse_matrix("\n".join(lines[i:]), cols=width)
        if width is not None and G.size and G.shape[1] != width:
            raise FormatError(f"generator rows must have {width} entries")
        if G.size == 0 and width is not None:
            G = np.zeros((0, width), dtype=np.int64)
        grs = GrsSpec.from_dict(tower, json.loads(head["GRS"])) if "GRS" in head else None
        return cls(tower, level, G, block=block, n=n, grs=grs)

    # -- json ----------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "field": self.tower.to_text(),
            "level": self.level,
            "block": self.block,
            "n": self.n,
            "grs": None if self.grs is None else self.grs.to_dict(),
            "G": self.G.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> CodeFile:
        try:
            tower = FieldTower.from_text(d["field"])
            width = d["n"] * (d.get("block") or 1)
            G = np.array(d["G"], dtype=np.int64).reshape(-1, width)
            grs = GrsSpec.from_dict(tower, d["grs"]) if d.get("grs") else None
            return cls(tower, d["level"], G, block=d.get("block"), n=d["n"], grs=grs)
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed code JSON: {exc}") from exc

    def dumps(self, as_json: bool) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n" if as_json else self.to_text()


def load_code(path: str | Path) -> CodeFile:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return CodeFile.from_dict(json.loads(text))
    return CodeFile.from_text(text)


def save_code(cf: CodeFile, path: str | Path) -> None:
    Path(path).write_text(cf.dumps(str(path).endswith(".json")))


def parse_int_list(s: str) -> list[int]:
    """``"1,2,3"`` or ``"1 2 3"``."""
    return [int(x) for x in s.replace(",", " ").split()]
