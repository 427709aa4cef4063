from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class VerificationReport:
    """Outcome of one cross-check: never raised, always returned."""
    name: str
    passed: bool
    max_error: float = 0.0
    rows: List[Dict[str, Any]] = field(default_factory=list)
    messages: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "max_error": self.max_error,
                "rows": self.rows, "messages": self.messages}
