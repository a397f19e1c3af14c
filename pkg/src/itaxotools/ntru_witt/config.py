from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class Settings:
    workers: int = 1
    block_bits: int = 16
    max_pairs: int = 200_000
    solution_cap: int = 32
    term_warning: int = 5700
    progress: bool = False
    verbose: bool = False

    @classmethod
    def from_dict(cls, args: dict) -> Settings:
        settings = cls()
        settings.set_properties_from_dict(args)
        return settings

    def set_properties_from_dict(self, args: dict):
        names = {f.name for f in fields(self)}
        for k, v in args.items():
            if k in names and v is not None:
                setattr(self, k, type(getattr(self, k))(v))
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        if not 8 <= self.block_bits <= 24:
            raise ValueError(f"block_bits must lie in [8, 24], got {self.block_bits}")
        if self.solution_cap < 0:
            raise ValueError(f"solution_cap must not be negative, got {self.solution_cap}")
        if self.max_pairs < 1:
            raise ValueError(f"max_pairs must be positive, got {self.max_pairs}")
