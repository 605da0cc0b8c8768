"""Verdicts returned by the verifiers, and their text renderings."""

from __future__ import annotations

from dataclasses import dataclass, field


def fmt_tuple(xs) -> str:
    return "(" + ",".join(map(str, xs)) + ")"


@dataclass
class Verdict:
    """Outcome of an exhaustive check.

    ``checked`` counts the cases examined, ``failures`` those that broke the
    property. ``counterexample`` holds the lines describing the first failure
    in enumeration order. ``partial`` marks checks run with fewer variables
    than needed to certify an identity of symmetric functions.
    """

    name: str
    params: dict[str, object]
    checked: int = 0
    failures: int = 0
    counterexample: list[str] | None = None
    partial: bool = False
    details: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def status(self) -> str:
        if not self.ok:
            return "FAILED"
        return "VERIFIED (partial check)" if self.partial else "VERIFIED"

    def human_lines(self) -> list[str]:
        head = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.name} {head}".rstrip()]
        lines += [f"  {k}: {v}" for k, v in self.details.items()]
        if self.ok:
            lines.append(f"{self.status()} {self.checked} cases")
        else:
            lines.append(f"FAILED {self.failures} of {self.checked} cases")
            lines += self.counterexample or []
        return lines

    def machine_lines(self) -> list[str]:
        lines = [f"check={self.name}"]
        lines += [f"{k}={v}" for k, v in self.params.items()]
        lines += [f"{k}={v}" for k, v in self.details.items()]
        lines += [
            f"status={'verified' if self.ok else 'failed'}",
            f"partial={str(self.partial).lower()}",
            f"cases={self.checked}",
            f"failures={self.failures}",
        ]
        for n, line in enumerate(self.counterexample or []):
            lines.append(f"counterexample.{n}={line.strip()}")
        return lines
