"""Check reports: counts, failures and the truncation they were run on."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import CsgkError

MAX_KEPT_FAILURES = 50


def encode(value: Any) -> Any:
    """JSON-friendly form of element values (they serialise as their text encoding)."""
    from .elements import BicyclicNF, CanonC
    from .extensions import Zero

    if isinstance(value, CanonC):
        return f"C:{value}"
    if isinstance(value, BicyclicNF):
        return f"B:{value}"
    if value is Zero:
        return "0"
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [encode(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return value


@dataclass
class Report:
    check: str
    params: dict[str, Any] = field(default_factory=dict)
    convention_notes: list[str] = field(default_factory=list)
    items_tested: int = 0
    failures: list[Any] = field(default_factory=list)
    failure_count: int = 0
    details: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    discrepancies: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    @property
    def vacuous(self) -> bool:
        return self.items_tested == 0

    def fail(self, item: Any) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_KEPT_FAILURES:
            self.failures.append(item)

    def absorb(self, other: Report) -> None:
        """Fold a sub-check into this report; counts add, lists concatenate."""
        self.items_tested += other.items_tested
        self.failure_count += other.failure_count
        room = MAX_KEPT_FAILURES - len(self.failures)
        if room > 0:
            self.failures.extend(other.failures[:room])
        for note in other.convention_notes:
            if note not in self.convention_notes:
                self.convention_notes.append(note)
        self.warnings.extend(w for w in other.warnings if w not in self.warnings)
        self.discrepancies.extend(other.discrepancies)

    def raise_if_failed(self, exc: type[CsgkError]) -> Report:
        if not self.ok:
            first = self.failures[0] if self.failures else None
            raise exc(f"{self.check}: {self.failure_count} failure(s); first: {encode(first)}", witness=first)
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "ok": self.ok,
            "params": encode(self.params),
            "convention_notes": list(self.convention_notes),
            "items_tested": self.items_tested,
            "failures": encode(self.failures),
            "failure_count": self.failure_count,
            "vacuous": self.vacuous,
            "warnings": list(self.warnings),
            "details": encode(self.details),
            "paper_discrepancies": list(self.discrepancies),
        }
