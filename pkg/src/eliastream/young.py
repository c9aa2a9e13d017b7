"""Two-row Young diagrams and the lattice walk that concentrates them.

A node (n, t) is the diagram with n - t boxes in row one and t in row two;
validity requires 0 <= t <= n - t.  Its symmetric-group irrep dimension is
available three independent ways (closed form, literal hook lengths, path
counting), and the dimensions satisfy the same additive recursion as
binomial coefficients once invalid nodes count as zero.  That recursion is
all the streaming extractor ever used, so substituting dimension bits for
binomial bits gives the same machine on this lattice: qstep().
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, NamedTuple

from .binomial import binom


class InvalidNodeError(ValueError):
    """A lattice move would put more boxes in row two than row one."""


class YoungNode(NamedTuple):
    n: int
    t: int


class QExtractorState(NamedTuple):
    n: int
    t: int
    l: int


class QStepResult(NamedTuple):
    state: QExtractorState
    emitted: tuple[int, ...]


def is_valid(n: int, t: int) -> bool:
    return 0 <= t <= n - t


def dim(n: int, t: int) -> int:
    """Irrep dimension of the (n - t, t) diagram: C(n, t)(n-2t+1)/(n-t+1).

    Zero for invalid nodes, mirroring the out-of-range binomial convention.
    The quotient is always exact at valid nodes.
    """
    if n < 0 or not is_valid(n, t):
        return 0
    value = binom(n, t) * (n - 2 * t + 1)
    div, rem = divmod(value, n - t + 1)
    if rem:
        raise AssertionError(f"closed form not integral at ({n}, {t})")
    return div


def hook_dim_oracle(n: int, t: int) -> int:
    """Dimension computed literally from per-box hook lengths.

    hook(x) = boxes to the right + boxes below + 1; dim = n! / prod(hooks).
    """
    if not is_valid(n, t):
        raise ValueError(f"({n}, {t}) is not a valid two-row diagram")
    if n == 0:
        return 1
    r1, r2 = n - t, t
    hooks = 1
    for c in range(r1):
        hooks *= (r1 - 1 - c) + (1 if c < r2 else 0) + 1
    for c in range(r2):
        hooks *= (r2 - 1 - c) + 1
    quotient, rem = divmod(math.factorial(n), hooks)
    if rem:
        raise AssertionError("hook product does not divide n!")
    return quotient


def path_count(n: int, t: int) -> int:
    """Number of box-add paths from the empty diagram that stay valid.

    Forward count over the lattice, one level at a time; no closed form
    is consulted.
    """
    if not is_valid(n, t):
        raise ValueError(f"({n}, {t}) is not a valid two-row diagram")
    level = {0: 1}
    for m in range(n):
        nxt: dict[int, int] = {}
        for tt, ways in level.items():
            if is_valid(m + 1, tt):
                nxt[tt] = nxt.get(tt, 0) + ways
            if is_valid(m + 1, tt + 1):
                nxt[tt + 1] = nxt.get(tt + 1, 0) + ways
        level = nxt
    return level.get(t, 0)


def ballot_paths(n: int) -> Iterator[tuple[int, ...]]:
    """All valid box-add sequences of length n (0 = row one, 1 = row two)."""

    def rec(m: int, t: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if m == n:
            yield tuple(prefix)
            return
        for pbit in (0, 1):
            if is_valid(m + 1, t + pbit):
                prefix.append(pbit)
                yield from rec(m + 1, t + pbit, prefix)
                prefix.pop()

    yield from rec(0, 0, [])


def dim_bit(n: int, t: int, l: int) -> int:
    """Bit l of dim(n, t); zero at invalid nodes."""
    return (dim(n, t) >> l) & 1


def q_initial_state() -> QExtractorState:
    return QExtractorState(0, 0, 0)


def qstep(state: QExtractorState, pbit: int) -> QStepResult:
    """One lattice move with dimension bits in place of binomial bits.

    The caller must only request valid moves; an invalid move signals a bug
    upstream (the coupling transform never produces one).
    """
    if pbit not in (0, 1):
        raise ValueError("pbit must be 0 or 1")
    n = state.n + 1
    t = state.t + pbit
    if not is_valid(n, t):
        raise InvalidNodeError(f"move to ({n}, {t}) violates the row condition")
    l = state.l
    emitted = []
    if dim_bit(n, t, l) == 0 or dim_bit(n - 1, t - 1 + pbit, l) == 1:
        emitted.append(pbit)
        l += 1
        while dim_bit(n - 1, t, l) != dim_bit(n - 1, t - 1, l):
            emitted.append(dim_bit(n - 1, t, l))
            l += 1
    return QStepResult(QExtractorState(n, t, l), tuple(emitted))


def q_run(pbits: Iterable[int]) -> tuple[tuple[int, ...], QExtractorState]:
    """Fold qstep over a box-add sequence from the apex."""
    state = q_initial_state()
    out: list[int] = []
    for pbit in pbits:
        state, emitted = qstep(state, pbit)
        out.extend(emitted)
    return tuple(out), state
