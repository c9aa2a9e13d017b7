"""Streaming entropy extractor: a reversible three-register state machine.

The machine keeps three integers (n, t, l): bits read, Hamming weight so
far, and random bits emitted so far.  On each input bit it walks one edge of
the augmented Pascal lattice, whose node (n, t, l) exists exactly when bit l
of C(n, t) is 1.  Two paths of equal probability fuse at a node by emitting
the bit that distinguishes them; bin merges cascade like binary-addition
carries, each carry emitting one more bit.

Per input bit b (after n -> n+1, t -> t+b):

    if bit_l(C(n, t)) == 0 or bit_l(C(n-1, t-1+b)) == 1:
        emit b; l += 1
        while bit_l(C(n-1, t)) != bit_l(C(n-1, t-1)):
            emit bit_l(C(n-1, t)); l += 1

Out-of-range coefficients are 0, which makes the test total at the t = 0
and t = n boundaries.  Matching a whole-block extraction at every prefix
length, the machine emits exactly as much randomness as the block protocol,
while storing only the three counters.

Bit conservation: every input bit lands on exactly one of two tapes.  An
emitting step sends b to the output tape and rewrites previously-banked
zero bits (one per carry) as further outputs; a silent step banks b, erased
to 0, on the purity tape.  So out_len + purity_len == n after every step.

Two interchangeable engines are provided:

* ``step``/``run``: reference implementation against the shared binomial
  table (bounded by the table cap).
* ``StreamExtractor``: table-free engine that carries two adjacent
  coefficients C(n, t) and C(n, t-1) along the path, updating them with one
  small multiply/divide per bit.  Input length is unbounded.

They are verified bit-identical against each other in the test suite.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .binomial import binom_bit
from .elias import parse_bits


class ExtractorState(NamedTuple):
    """Machine memory: three integers, each bounded by the bits read."""

    n: int
    t: int
    l: int


class TapeLedger(NamedTuple):
    out_len: int
    purity_len: int


class StepResult(NamedTuple):
    state: ExtractorState
    emitted: tuple[int, ...]


class RunResult(NamedTuple):
    output: tuple[int, ...]
    final: ExtractorState
    ledger: TapeLedger


def initial_state() -> ExtractorState:
    """The lattice apex (0, 0, 0)."""
    return ExtractorState(0, 0, 0)


def step(state: ExtractorState, b: int) -> StepResult:
    """Advance one input bit; emit any random bits produced by the move."""
    if b not in (0, 1):
        raise ValueError("input bit must be 0 or 1")
    n = state.n + 1
    t = state.t + b
    l = state.l
    emitted = []
    if binom_bit(n, t, l) == 0 or binom_bit(n - 1, t - 1 + b, l) == 1:
        emitted.append(b)
        l += 1
        while binom_bit(n - 1, t, l) != binom_bit(n - 1, t - 1, l):
            emitted.append(binom_bit(n - 1, t, l))
            l += 1
    return StepResult(ExtractorState(n, t, l), tuple(emitted))


def ledger_of(state: ExtractorState) -> TapeLedger:
    """Tape ledger implied by a state; conservation gives purity = n - l."""
    return TapeLedger(state.l, state.n - state.l)


def run(bits: "Iterable[int] | str") -> RunResult:
    """Fold step() over an input string from the apex."""
    state = initial_state()
    output: list[int] = []
    for b in parse_bits(bits):
        state, emitted = step(state, b)
        output.extend(emitted)
        if state.l != len(output) or state.l > state.n:
            raise AssertionError(f"tape ledger violated at {state}")
    return RunResult(tuple(output), state, ledger_of(state))


class PauseResult(NamedTuple):
    output: tuple[int, ...]
    consumed: int
    state: ExtractorState
    pending: tuple[int, ...]
    satisfied: bool


def pause_mode_run(
    bits: "Iterable[int] | str",
    demand: int,
    state: ExtractorState | None = None,
    pending: tuple[int, ...] = (),
) -> PauseResult:
    """On-demand mode: consume input only until `demand` bits are delivered.

    A single move can emit several bits (carry cascade); bits produced past
    the demand are returned in `pending` so a resumed call is exact, as if
    the machine paused after each individual output.  `satisfied` is False
    when the input ran dry first.
    """
    if demand < 0:
        raise ValueError("demand must be >= 0")
    if state is None:
        state = initial_state()
    out = list(pending[:demand])
    pend = list(pending[demand:])
    consumed = 0
    it = iter(parse_bits(bits))
    while len(out) < demand:
        b = next(it, None)
        if b is None:
            return PauseResult(tuple(out), consumed, state, tuple(pend), False)
        state, emitted = step(state, b)
        consumed += 1
        room = demand - len(out)
        out.extend(emitted[:room])
        pend.extend(emitted[room:])
    return PauseResult(tuple(out), consumed, state, tuple(pend), True)


def von_neumann(bits: "Iterable[int] | str") -> tuple[int, ...]:
    """Classic pairwise unbiasing baseline.

    Consecutive disjoint pairs: odd parity emits one bit, even parity emits
    nothing.  Convention: emit the second bit of the pair ("01" -> 1,
    "10" -> 0), which is exactly what the streaming machine does at n = 2.
    The textbook statement reports the first bit instead; the two differ by
    a fixed 0/1 relabeling with no distributional consequence.
    """
    s = parse_bits(bits)
    return tuple(b2 for b1, b2 in zip(s[::2], s[1::2]) if b1 != b2)


class StreamExtractor:
    """Unbounded-length engine carrying its own coefficient pair.

    State is still just (n, t, l); the two big integers C(n, t) and
    C(n, t-1) are derived values maintained incrementally so that no
    quadratic table is ever needed.
    """

    __slots__ = ("n", "t", "l", "_c_here", "_c_left")

    def __init__(self):
        self.n = 0
        self.t = 0
        self.l = 0
        self._c_here = 1  # C(n, t)
        self._c_left = 0  # C(n, t-1)

    @property
    def state(self) -> ExtractorState:
        return ExtractorState(self.n, self.t, self.l)

    @property
    def ledger(self) -> TapeLedger:
        return TapeLedger(self.l, self.n - self.l)

    def push(self, b: int) -> tuple[int, ...]:
        """Feed one bit; return the bits emitted by this move."""
        n, t = self.n, self.t
        c_here, c_left = self._c_here, self._c_left
        if b:
            c_up = c_here * (n - t) // (t + 1)  # C(n, t+1)
            c_new = c_up + c_here               # C(n+1, t+1)
            c_test = c_up                       # C(n, t'-1+b) with t' = t+1
            hi, lo = c_up, c_here               # carry pair C(n, t'), C(n, t'-1)
            next_here = c_new
            next_left = c_here + c_left         # C(n+1, t)
            self.t = t + 1
        else:
            c_new = c_here + c_left             # C(n+1, t)
            c_test = c_left                     # C(n, t-1)
            hi, lo = c_here, c_left
            c_far = c_left * (t - 1) // (n - t + 2) if t >= 1 else 0  # C(n, t-2)
            next_here = c_new
            next_left = c_left + c_far          # C(n+1, t-1)
        self.n = n + 1
        self._c_here = next_here
        self._c_left = next_left

        l = self.l
        emitted: list[int] = []
        if (c_new >> l) & 1 == 0 or (c_test >> l) & 1 == 1:
            emitted.append(b)
            l += 1
            while (hi >> l) & 1 != (lo >> l) & 1:
                emitted.append((hi >> l) & 1)
                l += 1
        self.l = l
        return tuple(emitted)

    def feed(self, bits: "Iterable[int] | str") -> tuple[int, ...]:
        """Feed many bits; return the concatenated output."""
        out: list[int] = []
        for b in parse_bits(bits):
            out.extend(self.push(b))
        return tuple(out)
