"""Check reports: named verdicts with witnesses, overall verdict is their conjunction."""

from __future__ import annotations

from typing import Any

from .linalg import Matrix, Mod


def jsonable(x: Any) -> Any:
    """Turn scalars, matrices and containers into JSON-ready values (scalars as strings)."""
    if isinstance(x, Matrix):
        return [[str(v) for v in row] for row in x.rows]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Mod):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


class Report:
    def __init__(self, command: str, seed: int | None = None, **data):
        self.command = command
        self.seed = seed
        self.data = dict(data)
        self.checks: list[dict] = []

    def add(self, name: str, verdict: bool, witness: Any = None, **extra) -> bool:
        rec = {"name": name, "verdict": bool(verdict)}
        if witness is not None:
            rec["witness"] = jsonable(witness)
        for k, v in extra.items():
            rec[k] = jsonable(v)
        self.checks.append(rec)
        return bool(verdict)

    def extend(self, other: Report, prefix: str = "") -> None:
        for rec in other.checks:
            self.checks.append(dict(rec, name=prefix + rec["name"]))

    @property
    def verdict(self) -> bool:
        return all(c["verdict"] for c in self.checks)

    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["verdict"]]

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "checks": self.checks,
            "verdict": "pass" if self.verdict else "fail",
        }
        if self.seed is not None:
            out["seed"] = self.seed
        out.update({k: jsonable(v) for k, v in self.data.items()})
        return out
