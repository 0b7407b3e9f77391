"""DistTable: exact DC-component and rank frequencies for one parameter set."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .forms import CodeParams


@dataclass
class DistTable:
    """alpha[(r, eps)], beta[r] and the balanced count (DC = -1).

    ``balanced`` is None for tables that only carry rank frequencies.
    """

    params: CodeParams
    alpha: dict[tuple[int, int], int] = field(default_factory=dict)
    beta: dict[int, int] = field(default_factory=dict)
    balanced: int | None = None
    source: str = "enumeration"

    def merge(self, other: "DistTable") -> "DistTable":
        if other.params != self.params:
            raise ValueError("cannot merge tables for different parameters")
        alpha = dict(self.alpha)
        for key, v in other.alpha.items():
            alpha[key] = alpha.get(key, 0) + v
        beta = dict(self.beta)
        for key, v in other.beta.items():
            beta[key] = beta.get(key, 0) + v
        if self.balanced is None and other.balanced is None:
            bal = None
        else:
            bal = (self.balanced or 0) + (other.balanced or 0)
        return DistTable(self.params, alpha, beta, bal, self.source)

    def invariant_errors(self) -> list[str]:
        p = self.params
        errs = []
        if any(v < 0 for v in self.alpha.values()) or any(v < 0 for v in self.beta.values()):
            errs.append("negative count")
        if self.balanced is not None:
            total = sum(self.alpha.values()) + self.balanced
            if total != 2 ** (p.m * p.k) - 1:
                errs.append(f"alpha + balanced = {total} != 2^(mk) - 1")
        if self.beta and sum(self.beta.values()) != 2 ** (p.m * (p.k - 1)) - 1:
            errs.append(f"sum(beta) = {sum(self.beta.values())} != 2^(m(k-1)) - 1")
        return errs

    def alpha_rows(self) -> list[tuple[int, int, int]]:
        return [(r, eps, self.alpha[(r, eps)]) for r, eps in sorted(self.alpha, key=lambda t: (-t[0], -t[1]))]

    def beta_rows(self) -> list[tuple[int, int]]:
        return [(r, self.beta[r]) for r in sorted(self.beta, reverse=True)]

    def to_json(self) -> dict:
        """Counts are decimal strings; they overflow doubles for large parameters."""
        return {
            "params": self.params.to_json(),
            "alpha": [{"r": r, "eps": eps, "count": str(c)} for r, eps, c in self.alpha_rows()],
            "beta": [{"r": r, "count": str(c)} for r, c in self.beta_rows()],
            "balanced": None if self.balanced is None else str(self.balanced),
            "source": self.source,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> "DistTable":
        p = CodeParams(**obj["params"])
        alpha = {(row["r"], row["eps"]): int(row["count"]) for row in obj["alpha"]}
        beta = {row["r"]: int(row["count"]) for row in obj["beta"]}
        bal = None if obj["balanced"] is None else int(obj["balanced"])
        return cls(p, alpha, beta, bal, obj["source"])

    def csv_rows(self) -> list[list[str]]:
        # eps is "*" on rank rows (beta has no sign); the balanced row has r = "balanced"
        rows = [[str(r), f"{eps:+d}", str(c), self.source] for r, eps, c in self.alpha_rows()]
        rows += [[str(r), "*", str(c), self.source] for r, c in self.beta_rows()]
        if self.balanced is not None:
            rows.append(["balanced", "", str(self.balanced), self.source])
        return rows

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(["r", "eps", "count", "source"])
        w.writerows(self.csv_rows())
        return buf.getvalue()
