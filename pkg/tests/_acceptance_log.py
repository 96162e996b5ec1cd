"""One verdict line per acceptance criterion, printed in the pytest summary."""

from __future__ import annotations

import time
from contextlib import contextmanager

LINES: dict[int, str] = {}


class Verdict:
    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.checks: list[tuple[str, bool]] = []
        self.elapsed = 0.0

    def check(self, label: str, ok: bool) -> bool:
        self.checks.append((label, bool(ok)))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks) and self.elapsed < self.budget

    def failed(self) -> list[str]:
        out = [label for label, ok in self.checks if not ok]
        if self.elapsed >= self.budget:
            out.append(f"time {self.elapsed:.2f}s over budget {self.budget:g}s")
        return out


@contextmanager
def criterion(number: int, title: str, budget: float):
    v = Verdict(number, title, budget)
    t0 = time.perf_counter()
    try:
        yield v
    except Exception as exc:
        v.check(f"raised {type(exc).__name__}: {exc}", False)
        raise
    finally:
        v.elapsed = time.perf_counter() - t0
        status = "PASS" if v.ok else "FAIL"
        detail = "; ".join(label for label, _ in v.checks) if v.ok else "; ".join(v.failed())
        line = f"criterion {number:>2} {status}: {title} ({v.elapsed:.2f}s < {budget:g}s) -- {detail}"
        LINES[number] = line
        print(line)
    assert v.ok, line
