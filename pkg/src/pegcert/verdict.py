"""Verdicts and JSON-compatible certificate payloads."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
BUDGET = "budget_exhausted"


@dataclass
class Verdict:
    """Outcome of one infeasibility test plus its re-checkable certificate.

    Certificates are plain JSON-compatible dicts with a "type" discriminator;
    rationals are serialized as "p/q" strings and cells as "row,col" keys.
    """

    status: str
    certificate: dict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": self.certificate,
                "stats": self.stats}

    @staticmethod
    def from_json(data: dict) -> "Verdict":
        return Verdict(data["status"], data.get("certificate"),
                       data.get("stats", {}))


def cell_key(cell: tuple[int, int]) -> str:
    return f"{cell[0]},{cell[1]}"


def parse_cell_key(key: str) -> tuple[int, int]:
    r, c = key.split(",")
    return (int(r), int(c))
