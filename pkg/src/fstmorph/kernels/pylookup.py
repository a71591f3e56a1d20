"""Pure-Python lookup kernel.

Walks a machine along one tape (the "match" side) and collects the strings
written on the other tape.  Arcs whose match symbol is epsilon are crossed
freely; a path-local guard on (state, position, emitted-length) cuts epsilon
cycles that make no progress, while cycles that keep emitting run into the
output cap and raise, which is how misbehaving grammars get diagnosed.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class OutputLimitError(RuntimeError):
    """A lookup result would exceed the configured output length cap."""


class PyMatcher:
    """Direction-specific lookup index over a machine's arcs."""

    def __init__(
        self,
        n_states: int,
        start: int,
        finals: Iterable[int],
        arcs: Iterable[tuple[int, int, int, int]],
    ) -> None:
        self.start = start
        self.finals = frozenset(finals)
        eps: list[list[tuple[int, int]]] = [[] for _ in range(n_states)]
        step: list[dict[int, list[tuple[int, int]]]] = [{} for _ in range(n_states)]
        for src, match, emit, tgt in arcs:
            if match == 0:
                eps[src].append((emit, tgt))
            else:
                step[src].setdefault(match, []).append((emit, tgt))
        self._eps = eps
        self._step = step

    def lookup(self, ids: Sequence[int], max_out: int = 64) -> list[tuple[int, ...]]:
        results: set[tuple[int, ...]] = set()
        out: list[int] = []
        on_path: set[tuple[int, int, int]] = set()
        eps = self._eps
        step = self._step
        finals = self.finals
        n = len(ids)

        def walk(state: int, pos: int) -> None:
            key = (state, pos, len(out))
            if key in on_path:
                return
            on_path.add(key)
            if pos == n and state in finals:
                results.add(tuple(out))
            for emit, tgt in eps[state]:
                if emit:
                    if len(out) >= max_out:
                        raise OutputLimitError(f"output exceeds {max_out} symbols")
                    out.append(emit)
                    walk(tgt, pos)
                    out.pop()
                else:
                    walk(tgt, pos)
            if pos < n:
                for emit, tgt in step[state].get(ids[pos], ()):
                    if emit:
                        if len(out) >= max_out:
                            raise OutputLimitError(f"output exceeds {max_out} symbols")
                        out.append(emit)
                        walk(tgt, pos + 1)
                        out.pop()
                    else:
                        walk(tgt, pos + 1)
            on_path.discard(key)

        walk(self.start, 0)
        return sorted(results)
