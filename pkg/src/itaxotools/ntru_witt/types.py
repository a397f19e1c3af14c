from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum, auto


class BitLevel(IntEnum):
    Quadratic = 1
    Quartic = 2
    Octic = 3

    @property
    def max_degree(self) -> int:
        return 1 << self.value


class MonomialOrder(Enum):
    Degrevlex = "degrevlex"
    Lex = "lex"


class Backend(Enum):
    Exhaustive = "exhaustive"
    Groebner = "groebner"


class SumMethod(Enum):
    Symmetric = auto()
    Fold = auto()


class Reading(Enum):
    Printed = auto()
    Amended = auto()


class LogType(Enum):
    Info = auto()
    Warning = auto()
    Error = auto()


@dataclass
class LogEntry:
    type: LogType
    text: str
    content: dict[str, str] = field(default_factory=dict)

    def __str__(self) -> str:
        prefix = {
            LogType.Info: "✔",
            LogType.Warning: "❗",
            LogType.Error: "❌",
        }[self.type]
        return f"{prefix} {self.suite_content_to_text()}{self.text} {self.detail_content_to_text()}".rstrip()

    def to_text(self) -> str:
        return f"{self.type.name}: {self.suite_content_to_text()}{self.text} {self.detail_content_to_text()}".rstrip()

    def suite_content_to_text(self) -> str:
        suite = self.content.get("suite", "")
        if not suite:
            return ""
        return f"In {suite}: "

    def detail_content_to_text(self) -> str:
        details = {k: v for k, v in self.content.items() if k != "suite"}
        if not details:
            return ""
        return "<" + ", ".join(f"{k}={v}" for k, v in details.items()) + ">"


class ListLogger:
    def __init__(self, reference: list[LogEntry], type: LogType):
        self.reference = reference
        self.type = type

    def handle(self, description, content):
        entry = LogEntry(self.type, str(description), {k: str(v) for k, v in content.items()})
        self.reference.append(entry)
