"""
Oracle Verdicts

Result records shared by the definition-based validators.
"""

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class OracleVerdict:
    """Integer answer of an oracle with the evidence behind it."""

    value: int
    method: str
    certified: bool
    effort: dict[str, int] = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    details: dict[str, Any] = field(default_factory=dict)

    def with_notes(self, *notes: str) -> "OracleVerdict":
        return OracleVerdict(
            self.value, self.method, self.certified, dict(self.effort), self.notes + notes, dict(self.details)
        )
