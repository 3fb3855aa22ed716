"""Field-multiplication counters and a record of which encoder paths ran.

Counting is structural: a constant-matrix product over R rows adds R times the
number of nonzero matrix entries, a polynomial product adds the multiplications
its algorithm performs, and multiplications by 0 or +-1 from the prime field
are free.
"""

import contextlib
from collections import Counter

mults = 0
events = Counter()
phases = Counter()
enabled = True


def add(n):
    global mults
    if enabled:
        mults += int(n)


def note(name):
    events[name] += 1


def reset():
    global mults
    mults = 0
    events.clear()
    phases.clear()


@contextlib.contextmanager
def phase(name):
    """Charge the multiplications done inside the block to phases[name]."""
    start = mults
    try:
        yield
    finally:
        phases[name] += mults - start


class Tally:
    def __init__(self):
        self.mults = 0
        self.events = Counter()
        self.phases = Counter()


@contextlib.contextmanager
def counting():
    """Yield a Tally holding the multiplications and events recorded inside the block."""
    global mults
    saved_m, saved_e, saved_p = mults, events.copy(), phases.copy()
    mults = 0
    events.clear()
    phases.clear()
    t = Tally()
    try:
        yield t
    finally:
        t.mults = mults
        t.events = events.copy()
        t.phases = phases.copy()
        mults = saved_m + t.mults
        for live, saved, new in ((events, saved_e, t.events), (phases, saved_p, t.phases)):
            live.clear()
            live.update(saved)
            live.update(new)
