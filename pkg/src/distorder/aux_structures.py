"""Auxiliary structures for the working-set heap.

Three pieces:

* :class:`IntervalMap` stores right-open, pairwise non-overlapping integer
  intervals with attached payloads and answers point queries.
* :class:`SkippableArray` is a run-length-compressed array over an
  :class:`IntervalMap`, supporting constant-amortized leftward run overwrites.
* :class:`MinKeeper` maintains an array M of keyed entries plus the compressed
  array S of suffix minima of M, so the global minimum's index is read off
  S[0] without touching M.

The ordered containers are realized with bisect over sorted lists rather than
a balanced tree: the structures never hold more than a few dozen intervals
(one per heap rank, or one per run), so shifting a short list beats any
pointer-based tree while keeping the O(log n) searches.

Entries in :class:`MinKeeper` are (weight handle, tiebreak) pairs ordered by
the arena comparison first and the integer tiebreak second, so callers that
need a deterministic total order (the working-set heap breaks ties by vertex
id) get one without extra weight comparisons.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import NamedTuple, Optional

from .errors import ContractViolation


class Interval(NamedTuple):
    start: int
    end: int
    payload: object


class Located(NamedTuple):
    find: Optional[Interval]
    prev: Optional[Interval]
    next: Optional[Interval]


class IntervalMap:
    """Right-open, non-overlapping intervals [a, b) -> payload."""

    __slots__ = ("_starts", "_ends", "_vals")

    def __init__(self):
        self._starts: list[int] = []
        self._ends: list[int] = []
        self._vals: list = []

    def __len__(self):
        return len(self._starts)

    def set(self, a: int, b: int, payload) -> None:
        """Store [a, b) -> payload.  [a, b) must not overlap a stored interval."""
        if a >= b:
            raise ContractViolation(f"empty interval [{a}, {b})")
        starts = self._starts
        i = bisect_left(starts, a)
        if (i > 0 and self._ends[i - 1] > a) or (
            i < len(starts) and starts[i] < b
        ):
            raise ContractViolation(f"[{a}, {b}) overlaps a stored interval")
        starts.insert(i, a)
        self._ends.insert(i, b)
        self._vals.insert(i, payload)

    def extend_right(self, a: int, b: int, new_end: int) -> None:
        """Grow the rightmost interval [a, b) to [a, new_end) in place.

        Only valid for the interval with the largest start; the growth must
        stay within uncovered space, which is automatic on the right edge.
        """
        starts = self._starts
        if not starts or starts[-1] != a or self._ends[-1] != b or new_end <= b:
            raise ContractViolation("extend_right requires the rightmost interval")
        self._ends[-1] = new_end

    def remove(self, a: int, b: int) -> None:
        """Delete [a, b) if present; no-op otherwise."""
        i = bisect_left(self._starts, a)
        if i < len(self._starts) and self._starts[i] == a and self._ends[i] == b:
            del self._starts[i]
            del self._ends[i]
            del self._vals[i]

    def get(self, a: int, b: int):
        """Payload of the exact interval [a, b), or None."""
        i = bisect_left(self._starts, a)
        if i < len(self._starts) and self._starts[i] == a and self._ends[i] == b:
            return self._vals[i]
        return None

    def find(self, t: int) -> Optional[tuple]:
        """(a, b, payload) of the interval covering t, or None."""
        i = bisect_right(self._starts, t) - 1
        if i >= 0 and self._ends[i] > t:
            return (self._starts[i], self._ends[i], self._vals[i])
        return None

    def prev(self, t: int) -> Optional[tuple]:
        """Rightmost interval with end <= t, or None."""
        # Non-overlap makes the end list sorted as well.
        i = bisect_right(self._ends, t) - 1
        if i >= 0:
            return (self._starts[i], self._ends[i], self._vals[i])
        return None

    def next(self, t: int) -> Optional[tuple]:
        """Leftmost interval with start > t, or None."""
        i = bisect_right(self._starts, t)
        if i < len(self._starts):
            return (self._starts[i], self._ends[i], self._vals[i])
        return None

    def locate(self, t: int) -> Located:
        """All three point queries at once."""
        as_iv = lambda r: None if r is None else Interval(*r)
        return Located(as_iv(self.find(t)), as_iv(self.prev(t)), as_iv(self.next(t)))

    def items(self):
        return list(zip(self._starts, self._ends, self._vals))

    def check(self) -> None:
        """Debug full scan: intervals are nonempty, sorted and disjoint."""
        prev_end = None
        for a, b in zip(self._starts, self._ends):
            assert a < b, "empty interval stored"
            assert prev_end is None or prev_end <= a, "overlapping intervals"
            prev_end = b


class SkippableArray:
    """Array stored as maximal same-valued runs.

    Runs tile [0, len): run j covers positions ``_starts[j]`` up to the next
    run's start (the last run ends at ``len``), so the interval map of runs
    degenerates to one sorted start list plus a value list.  Two
    distinguishing operations (both O(log #runs) search plus O(#runs) list
    surgery on what is always a short list):

    * ``skip(i)``: largest j < i whose value differs from A[i]; -1 if none.
    * ``change_skip(i, x)``: overwrite A[skip(i)+1 .. i] with x, re-coalescing
      runs, and return skip(i) computed before the write.

    Values are compared with ``==`` for run coalescing only.
    """

    __slots__ = ("_starts", "_vals", "_len")

    def __init__(self):
        self._starts: list[int] = []
        self._vals: list = []
        self._len = 0

    def __len__(self):
        return self._len

    def get(self, i: int):
        if not 0 <= i < self._len:
            raise ContractViolation(f"index {i} out of range")
        return self._vals[bisect_right(self._starts, i) - 1]

    def skip(self, i: int) -> int:
        if not 0 <= i < self._len:
            raise ContractViolation(f"index {i} out of range")
        return self._starts[bisect_right(self._starts, i) - 1] - 1

    def change_skip(self, i: int, x) -> int:
        if not 0 <= i < self._len:
            raise ContractViolation(f"index {i} out of range")
        starts, vals = self._starts, self._vals
        j = bisect_right(starts, i) - 1
        a = starts[j]
        v = vals[j]
        if x == v:
            return a - 1
        nruns = len(starts)
        run_end = starts[j + 1] if j + 1 < nruns else self._len
        if i + 1 < run_end:
            # split: positions [i+1, run_end) keep the old value
            if j > 0 and vals[j - 1] == x:
                starts[j] = i + 1  # left neighbor absorbs [a, i]
            else:
                vals[j] = x
                starts.insert(j + 1, i + 1)
                vals.insert(j + 1, v)
        else:
            merge_l = j > 0 and vals[j - 1] == x
            merge_r = j + 1 < nruns and vals[j + 1] == x
            if merge_l and merge_r:
                del starts[j : j + 2]
                del vals[j : j + 2]
            elif merge_l:
                del starts[j]
                del vals[j]
            elif merge_r:
                starts[j + 1] = a
                del starts[j]
                del vals[j]
            else:
                vals[j] = x
        return a - 1

    def set_prefix(self, values: list) -> None:
        """Replace A[0 : len(values)] wholesale, growing the array if needed."""
        k = len(values)
        if k == 0:
            return
        # coalesce the prefix into runs
        ps: list[int] = [0]
        pv: list = [values[0]]
        for i in range(1, k):
            v = values[i]
            if v != pv[-1]:
                ps.append(i)
                pv.append(v)
        starts, vals = self._starts, self._vals
        if k >= self._len:
            self._starts, self._vals = ps, pv
            self._len = k
            return
        j = bisect_right(starts, k) - 1  # run containing position k (or starting there)
        if starts[j] < k:
            tail_starts = [k] + starts[j + 1 :]
            tail_vals = vals[j:]
        else:
            tail_starts = starts[j:]
            tail_vals = vals[j:]
        if tail_vals[0] == pv[-1]:
            del tail_starts[0]
            del tail_vals[0]
        self._starts = ps + tail_starts
        self._vals = pv + tail_vals

    def pop(self) -> None:
        """Shrink the array by one position."""
        if self._len == 0:
            raise ContractViolation("pop from empty array")
        self._len -= 1
        if self._starts and self._starts[-1] == self._len:
            self._starts.pop()
            self._vals.pop()

    def to_list(self) -> list:
        return [self.get(i) for i in range(self._len)]

    def check(self) -> None:
        """Debug scan: runs partition [0, len) and neighbors differ."""
        starts, vals = self._starts, self._vals
        if self._len == 0:
            assert not starts and not vals
            return
        assert starts[0] == 0, "first run must start at 0"
        assert starts[-1] < self._len, "run starts past the array end"
        for i in range(1, len(starts)):
            assert starts[i - 1] < starts[i], "run starts not increasing"
            assert vals[i - 1] != vals[i], "adjacent runs carry equal values"


class MinKeeper:
    """Array M of (handle, tiebreak) entries plus compressed suffix minima S.

    Entries are ordered by the arena comparison on handles, ties by the
    integer tiebreak.  S runs store (handle, tiebreak, witness index) so
    ``find_min`` is a single O(1) read.  ``decrease`` walks S leftward run by
    run and is amortized O(1) by the usual distinct-run potential.
    """

    __slots__ = ("_arena", "_m", "_s")

    def __init__(self, arena):
        self._arena = arena
        self._m: list[tuple] = []  # (handle, tiebreak)
        self._s = SkippableArray()

    def __len__(self):
        return len(self._m)

    def get(self, i: int):
        """Entry handle at index i (no comparisons)."""
        return self._m[i][0]

    def entries(self) -> list[tuple]:
        """The live (handle, tiebreak) pair list.  Treat as read-only."""
        return self._m

    def _cmp(self, ha, ta, hb, tb) -> int:
        c = self._arena.compare(ha, hb)
        if c:
            return c
        return (ta > tb) - (ta < tb)

    def change_prefix(self, prefix: list) -> None:
        """Set M[0 : len(prefix)] = prefix; recompute the first suffix minima.

        ``prefix`` entries are (handle, tiebreak) pairs.  May extend M.
        """
        k = len(prefix)
        if k == 0:
            return
        m = self._m
        if k >= len(m):
            self._m = m = list(prefix)
        else:
            m[:k] = prefix
        self._recompute_prefix(k)

    def set_entry(self, i: int, handle: int, tie: int = 0) -> None:
        """Set M[i] := (handle, tie) with change-prefix semantics (O(i))."""
        self._m[i] = (handle, tie)
        self._recompute_prefix(i + 1)

    def _recompute_prefix(self, k: int) -> None:
        # Rebuild S[0..k-1] right to left, one comparison per position.
        m = self._m
        s = self._s
        if k == 1 and s._len > 0:
            h, t = m[0]
            starts, vals = s._starts, s._vals
            zero_alone = len(starts) > 1 and starts[1] == 1
            if s._len > 1:
                nxt = vals[1] if zero_alone else vals[0]  # S[1]'s run value
                if self._cmp(h, t, nxt[0], nxt[1]) <= 0:
                    best = (h, t, 0)
                else:
                    best = nxt
            else:
                best = (h, t, 0)
            old0 = vals[0]
            if old0 == best:
                return
            if zero_alone:
                if vals[1] == best:
                    del starts[1]
                    del vals[1]
                vals[0] = best
            elif s._len == 1:
                vals[0] = best
            else:
                # run 0 spans past position 0: split its head off
                starts.insert(1, 1)
                vals.insert(1, old0)
                vals[0] = best
            return
        # Emit the prefix of S directly as coalesced runs (right to left the
        # running best only changes when a new position wins, so runs are few).
        best = s.get(k) if k < s._len else None
        cmp = self._cmp
        run_starts: list[int] = []  # collected right-to-left
        run_vals: list = []
        for i in range(k - 1, -1, -1):
            h, t = m[i]
            if best is None or cmp(h, t, best[0], best[1]) <= 0:
                best = (h, t, i)
                run_starts.append(i)
                run_vals.append(best)
            elif not run_vals:
                run_starts.append(i)  # prefix top continues the old best
                run_vals.append(best)
            else:
                run_starts[-1] = i
        run_starts.reverse()
        run_vals.reverse()
        starts, vals = s._starts, s._vals
        if k >= s._len:
            s._starts, s._vals = run_starts, run_vals
            s._len = k
            return
        j = bisect_right(starts, k) - 1
        if starts[j] < k:
            tail_starts = [k] + starts[j + 1 :]
        else:
            tail_starts = starts[j:]
        tail_vals = vals[j:]
        if tail_vals[0] == run_vals[-1]:
            del tail_starts[0], tail_vals[0]
        s._starts = run_starts + tail_starts
        s._vals = run_vals + tail_vals

    def decrease(self, i: int, x: int, tie: int = 0) -> None:
        """Set M[i] := (x, tie); requires the new entry not exceed M[i]."""
        h, t = self._m[i]
        if self._cmp(x, tie, h, t) > 0:
            raise ContractViolation("decrease would increase M[i]")
        self._decrease_known_lower(i, x, tie)

    def decrease_if_lower(self, i: int, x: int, tie: int = 0) -> bool:
        """One comparison; apply the decrease only if it lowers M[i]."""
        h, t = self._m[i]
        if self._cmp(x, tie, h, t) > 0:
            return False
        self._decrease_known_lower(i, x, tie)
        return True

    def _decrease_known_lower(self, i: int, x: int, tie: int) -> None:
        self._m[i] = (x, tie)
        s = self._s
        cur = s.get(i)
        if self._cmp(x, tie, cur[0], cur[1]) > 0:
            return  # a later entry is still smaller; S untouched
        payload = (x, tie, i)
        j = s.change_skip(i, payload)
        while j >= 0:
            run = s.get(j)
            if self._cmp(run[0], run[1], x, tie) <= 0:
                break
            j = s.change_skip(j, payload)

    def find_min(self) -> int:
        """Index of the minimum entry (leftmost on full ties)."""
        if not self._m:
            raise ContractViolation("find_min on empty MinKeeper")
        return self._s.get(0)[2]

    def min_entry(self) -> tuple:
        """(handle, tiebreak, index) of the current minimum."""
        if not self._m:
            raise ContractViolation("min_entry on empty MinKeeper")
        return self._s.get(0)

    def pop(self) -> None:
        """Drop the last entry; the last two entries must compare equal."""
        m = self._m
        if len(m) < 2:
            raise ContractViolation("pop needs at least two entries")
        (ha, ta), (hb, tb) = m[-1], m[-2]
        if self._cmp(ha, ta, hb, tb) != 0:
            raise ContractViolation("pop requires equal trailing entries")
        m.pop()
        self._s.pop()

    def to_list(self) -> list:
        return [h for h, _t in self._m]

    def check(self) -> None:
        """Debug: S[i] equals the brute-force minimum of M[i:], every i.

        Spends comparisons on the arena; call only outside measured runs.
        """
        self._s.check()
        assert len(self._s) == len(self._m)
        cmp = self._cmp
        for i in range(len(self._m)):
            best = None  # leftmost minimum of M[i:]
            for j in range(i, len(self._m)):
                h, t = self._m[j]
                if best is None or cmp(h, t, best[0], best[1]) < 0:
                    best = (h, t, j)
            got = self._s.get(i)
            assert cmp(got[0], got[1], best[0], best[1]) == 0, (
                f"S[{i}] does not equal min(M[{i}:])"
            )
