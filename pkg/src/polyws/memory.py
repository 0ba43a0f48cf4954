"""The machine model: read-only input, write-only output, O(s) workspace.

Every algorithm in the package threads a :class:`BudgetedRun` through its
calls.  Workspace words are charged when a container grows and released when
it shrinks; input reads are counted per vertex/element access; output goes to
a write-only sink.  Oracles never touch a run.

Accounting granularity: one word covers one coordinate pair, index or
reference.  Loop-local O(1) scalars are not charged; anything that can grow
with n or s lives in a charged container.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class BudgetFault(RuntimeError):
    """An allocation pushed the workspace above the hard cap."""


@dataclass
class WorkspaceLedger:
    current_words: int = 0
    peak_words: int = 0
    input_reads: int = 0
    output_writes: int = 0

    def snapshot(self) -> dict:
        return {
            "current_words": self.current_words,
            "peak_words": self.peak_words,
            "input_reads": self.input_reads,
            "output_writes": self.output_writes,
        }


@dataclass
class BudgetedRun:
    s: int
    ledger: WorkspaceLedger = field(default_factory=WorkspaceLedger)
    hard_cap: int | None = None

    def charge(self, delta: int) -> None:
        if delta < 0:
            raise ValueError("charge takes delta >= 0")
        led = self.ledger
        led.current_words += delta
        if led.current_words > led.peak_words:
            led.peak_words = led.current_words
        if self.hard_cap is not None and led.current_words > self.hard_cap:
            raise BudgetFault(
                f"workspace {led.current_words} words exceeds hard cap {self.hard_cap}"
            )

    def release(self, delta: int) -> None:
        if delta < 0:
            raise ValueError("release takes delta >= 0")
        self.ledger.current_words -= delta
        if self.ledger.current_words < 0:
            raise ValueError("released more words than charged")

    def read(self, k: int = 1) -> None:
        self.ledger.input_reads += k

    def wrote(self, k: int = 1) -> None:
        self.ledger.output_writes += k

    def alloc(self, words: int) -> "_Alloc":
        return _Alloc(self, words)


class _Alloc:
    """Context manager for a fixed-size scratch allocation."""

    def __init__(self, run: BudgetedRun, words: int):
        self.run = run
        self.words = words

    def __enter__(self):
        self.run.charge(self.words)
        return self

    def __exit__(self, *exc):
        self.run.release(self.words)
        return False


class Words:
    """List whose storage is charged to a run (``cost`` words per item)."""

    __slots__ = ("run", "cost", "_items")

    def __init__(self, run: BudgetedRun, cost: int = 1, items=()):
        self.run = run
        self.cost = cost
        self._items = []
        for it in items:
            self.append(it)

    def append(self, item) -> None:
        self.run.charge(self.cost)
        self._items.append(item)

    def extend(self, items) -> None:
        for it in items:
            self.append(it)

    def pop(self, idx: int = -1):
        item = self._items.pop(idx)
        self.run.release(self.cost)
        return item

    def clear(self) -> None:
        self.run.release(self.cost * len(self._items))
        self._items.clear()

    def release_all(self) -> None:
        self.clear()

    def sort(self, **kw) -> None:
        self._items.sort(**kw)

    def __getitem__(self, idx):
        return self._items[idx]

    def __setitem__(self, idx, value):
        self._items[idx] = value

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def raw(self) -> list:
        return self._items


class WordDeque:
    """Deque with per-item charging, for funnel chain windows."""

    __slots__ = ("run", "cost", "_items")

    def __init__(self, run: BudgetedRun, cost: int = 1, items=()):
        self.run = run
        self.cost = cost
        self._items = deque()
        for it in items:
            self.append(it)

    def append(self, item) -> None:
        self.run.charge(self.cost)
        self._items.append(item)

    def appendleft(self, item) -> None:
        self.run.charge(self.cost)
        self._items.appendleft(item)

    def pop(self):
        item = self._items.pop()
        self.run.release(self.cost)
        return item

    def popleft(self):
        item = self._items.popleft()
        self.run.release(self.cost)
        return item

    def clear(self) -> None:
        self.run.release(self.cost * len(self._items))
        self._items.clear()

    def __getitem__(self, idx):
        return self._items[idx]

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)


class OutputSink:
    """Write-only output stream.  Algorithms may emit but never read back."""

    def __init__(self, run: BudgetedRun | None = None):
        self.run = run

    def emit(self, record) -> None:
        if self.run is not None:
            self.run.wrote()
        self._write(record)

    def _write(self, record) -> None:  # pragma: no cover - overridden
        pass


class TextSink(OutputSink):
    def __init__(self, fp, run: BudgetedRun | None = None):
        super().__init__(run)
        self.fp = fp

    def _write(self, record) -> None:
        self.fp.write(str(record) + "\n")


class CollectingSink(OutputSink):
    """Test-side sink that stores records.  Oracle equipment: the storage is
    deliberately outside the workspace model."""

    def __init__(self, run: BudgetedRun | None = None):
        super().__init__(run)
        self.records = []

    def _write(self, record) -> None:
        self.records.append(record)


class NullSink(OutputSink):
    def _write(self, record) -> None:
        pass
