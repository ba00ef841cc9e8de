"""Lightweight run statistics (refinement iterations, peak precision)."""

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class Stats:
    iterations: int = 0
    max_precision_bits: int = 0
    counters: dict = field(default_factory=dict)

    def bump(self, name, amount=1):
        self.counters[name] = self.counters.get(name, 0) + amount


_current = contextvars.ContextVar("sparseroots_stats", default=None)


@contextmanager
def collect():
    """Collect statistics for everything run inside the ``with`` block."""
    stats = Stats()
    token = _current.set(stats)
    try:
        yield stats
    finally:
        _current.reset(token)


def current():
    return _current.get()


def note_precision(bits):
    s = _current.get()
    if s is not None and bits > s.max_precision_bits:
        s.max_precision_bits = bits


def note_iteration():
    s = _current.get()
    if s is not None:
        s.iterations += 1


def bump(name, amount=1):
    s = _current.get()
    if s is not None:
        s.bump(name, amount)
