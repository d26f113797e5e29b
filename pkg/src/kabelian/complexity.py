"""Factor and k-Abelian complexity from finite prefixes.

Counting is exact integer arithmetic throughout.  For a window length n and
a prefix of length L, the class of each window is the triple (prefix of
length k-1, suffix of length k-1, length-k factor counts); counts are read
off packed prefix-sum differences so the whole length-n pass is a handful of
vectorized operations instead of a per-window rescan.  Window sufficiency is
undecidable from a prefix alone, so profiles follow a doubling policy: a
value is marked converged once two consecutive window lengths agree.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientWindowError, ParameterError
from .words import Word, WordSpec, expand, spec_text

__all__ = [
    "INFINITY",
    "factors_of_length",
    "k_abelian_complexity",
    "abelian_complexity_binary",
    "OnesRange",
    "ones_range",
    "q_sturm",
    "WindowPolicy",
    "ComplexityProfile",
    "profile",
    "converged_values",
    "converged_ones_ranges",
    "converged_factor_window",
    "upper_profile",
    "LowerProfile",
    "lower_profile",
    "profile_to_csv",
    "profile_to_json",
]

INFINITY = math.inf


def _check_k(k):
    if k == INFINITY:
        return
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ParameterError("k must be a positive integer or INFINITY")


def factors_of_length(prefix: Word, n: int) -> set[Word]:
    """All distinct length-n windows of the prefix."""
    if not isinstance(n, int) or n < 1:
        raise ParameterError("factor length must be a positive integer")
    s = prefix.symbols
    if n > len(s):
        raise InsufficientWindowError(f"need a prefix of length >= {n}")
    return {Word(s[i:i + n], prefix.alphabet_size) for i in range(len(s) - n + 1)}


# --- the counting engine ----------------------------------------------------

def _dense_factor_ids(arr, alphabet_size, ell):
    """Dense ids of the length-ell windows at positions 0..L-ell."""
    length = len(arr)
    base = max(alphabet_size, 2)
    if base ** ell >= 1 << 62:
        raise ParameterError("factor length too large for exact integer codes")
    codes = np.zeros(length - ell + 1, dtype=np.int64)
    for t in range(ell):
        codes = codes * base + arr[t:length - ell + 1 + t]
    uniq, inv = np.unique(codes, return_inverse=True)
    return inv.astype(np.int64), len(uniq)


def _distinct_count(arr):
    if len(arr) == 0:
        return 0
    s = np.sort(arr)
    return int((s[1:] != s[:-1]).sum()) + 1


def _count_distinct_rows(cols):
    """Distinct rows among parallel int columns given as (array, max_value).

    Columns are bit-packed into 62-bit words; when they fit into one word a
    single sort decides, otherwise words are combined through re-densified
    inverse ids (exact in either case).
    """
    chunks = []
    cur = None
    cur_bits = 0
    for arr, mx in cols:
        bits = max(1, int(mx).bit_length())
        if cur is not None and cur_bits + bits <= 62:
            cur = (cur << np.int64(bits)) | arr.astype(np.int64)
            cur_bits += bits
        else:
            if cur is not None:
                chunks.append(cur)
            cur = arr.astype(np.int64)
            cur_bits = bits
    if cur is not None:
        chunks.append(cur)
    if not chunks:
        return 1
    if len(chunks) == 1:
        return _distinct_count(chunks[0])
    gid = None
    for chunk in chunks:
        uniq, inv = np.unique(chunk, return_inverse=True)
        if gid is None:
            gid = inv.astype(np.int64)
            count = len(uniq)
        else:
            gid = gid * np.int64(len(uniq)) + inv
            uniq2, gid = np.unique(gid, return_inverse=True)
            gid = gid.astype(np.int64)
            count = len(uniq2)
    return count


def _distinct_window_counts(arr, alphabet_size, ns):
    """Distinct literal windows for every n in ns, built incrementally."""
    out = {}
    if not ns:
        return out
    length = len(arr)
    wanted = set(ns)
    base = np.int64(max(alphabet_size, 2))
    uniq, gid = np.unique(arr, return_inverse=True)
    gid = gid.astype(np.int64)
    if 1 in wanted:
        out[1] = len(uniq)
    for n in range(2, max(wanted) + 1):
        combined = gid[:length - n + 1] * base + arr[n - 1:]
        uniq, gid = np.unique(combined, return_inverse=True)
        gid = gid.astype(np.int64)
        if n in wanted:
            out[n] = len(uniq)
    return out


def _class_counts(arr, alphabet_size, k, ns):
    """Number of k-Abelian classes among length-n windows, for every n in ns.

    Windows shorter than k - 1 (and the n = k - 1 boundary, whose key is the
    word itself) are counted literally; longer windows go through the
    prefix/suffix/count-row machinery.
    """
    length = len(arr)
    out = {}
    if k == INFINITY:
        return _distinct_window_counts(arr, alphabet_size, ns)
    literal_ns = [n for n in ns if n <= k - 1]
    general_ns = [n for n in ns if n >= k]
    out.update(_distinct_window_counts(arr, alphabet_size, literal_ns))
    if not general_ns:
        return out

    fid, m = _dense_factor_ids(arr, alphabet_size, k)
    if k >= 2:
        pid, _ = _dense_factor_ids(arr, alphabet_size, k - 1)
        pid_max = int(pid.max())
    else:
        pid = None
        pid_max = 0

    # packed cumulative counts for factor ids 0..m-2; the last id's count is
    # forced by the window length
    field_bits = int(length + 1).bit_length()
    fields_per = max(1, 63 // field_bits)
    counted = m - 1
    sums = []
    for a in range((counted + fields_per - 1) // fields_per):
        lut = np.zeros(m, dtype=np.int64)
        n_fields = min(fields_per, counted - a * fields_per)
        for f in range(n_fields):
            lut[a * fields_per + f] = 1 << (field_bits * f)
        addend = lut[fid]
        sums.append((np.concatenate(([0], np.cumsum(addend))), n_fields))

    mask = np.int64((1 << field_bits) - 1)
    for n in general_ns:
        windows = length - n + 1
        j2 = n - k + 1
        cols = []
        if pid is not None:
            cols.append((pid[:windows], pid_max))
            cols.append((pid[j2:j2 + windows], pid_max))
        count_max = n - k + 1
        for packed, n_fields in sums:
            diff = packed[j2:j2 + windows] - packed[:windows]
            for f in range(n_fields):
                cols.append(((diff >> np.int64(field_bits * f)) & mask, count_max))
        out[n] = _count_distinct_rows(cols)
    return out


# --- single-value operations ------------------------------------------------

def _as_array(prefix: Word, n: int):
    if not isinstance(n, int) or n < 1:
        raise ParameterError("n must be a positive integer")
    if n > len(prefix):
        raise InsufficientWindowError(f"need a prefix of length >= {n}")
    return np.frombuffer(prefix.symbols, dtype=np.uint8)


def k_abelian_complexity(prefix: Word, k, n: int) -> int:
    """Number of k-Abelian classes among the length-n factors of the prefix."""
    _check_k(k)
    arr = _as_array(prefix, n)
    return _class_counts(arr, prefix.alphabet_size, k, [n])[n]


def abelian_complexity_binary(prefix: Word, n: int) -> int:
    """max ones-count - min ones-count + 1 over the length-n windows."""
    if not prefix.is_binary:
        raise ParameterError("abelian_complexity_binary needs a binary word")
    r = ones_range(prefix, n)
    return r.q - r.p + 1


@dataclass(frozen=True)
class OnesRange:
    """Extremes of the ones-counts over the observed length-n factors."""

    n: int
    p: int
    q: int

    def __post_init__(self):
        if not 0 <= self.p <= self.q <= self.n:
            raise ParameterError("need 0 <= p <= q <= n")


def ones_range(prefix: Word, n: int) -> OnesRange:
    if not prefix.is_binary:
        raise ParameterError("ones_range needs a binary word")
    arr = _as_array(prefix, n)
    sums = np.concatenate(([0], np.cumsum(arr, dtype=np.int64)))
    diffs = sums[n:] - sums[:-n]
    return OnesRange(n, int(diffs.min()), int(diffs.max()))


def q_sturm(k, n: int) -> int:
    """The Sturmian complexity profile: n + 1 up to n = 2k - 1, then 2k."""
    _check_k(k)
    if not isinstance(n, int) or n < 1:
        raise ParameterError("n must be a positive integer")
    if k == INFINITY or n <= 2 * k - 1:
        return n + 1
    return 2 * k


# --- profiles with the doubling-convergence policy ---------------------------

@dataclass(frozen=True)
class WindowPolicy:
    """Doubling policy: windows start, 2*start, ... up to cap symbols."""

    start: int = 4096
    cap: int = 1 << 20

    def __post_init__(self):
        if self.start < 1 or self.cap < self.start:
            raise ParameterError("need 1 <= start <= cap")


DEFAULT_POLICY = WindowPolicy()


def _ladder(spec: WordSpec, ns, policy: WindowPolicy, evaluate):
    """Evaluate per-n quantities at doubling window lengths until each n
    agrees across two consecutive windows (or the cap is reached)."""
    ns = sorted(set(ns))
    if not ns:
        raise ParameterError("need at least one n")
    if ns[0] < 1:
        raise ParameterError("n must be >= 1")
    if ns[-1] > policy.cap:
        raise ParameterError(f"n = {ns[-1]} exceeds the window cap {policy.cap}")
    values = {}
    converged = {n: False for n in ns}
    window = policy.start
    last_word = None
    while True:
        targets = [n for n in ns if n <= window and not converged[n]]
        if targets:
            last_word = expand(spec, window)
            arr = np.frombuffer(last_word.symbols, dtype=np.uint8)
            fresh = evaluate(arr, spec.alphabet_size, targets)
            for n in targets:
                if n in values and values[n] == fresh[n]:
                    converged[n] = True
                values[n] = fresh[n]
        if all(converged.values()) or window >= policy.cap:
            break
        window = min(window * 2, policy.cap)
    return values, converged, window, last_word


def converged_values(spec: WordSpec, k, ns, policy: WindowPolicy = DEFAULT_POLICY):
    """k-Abelian complexity values under the doubling policy.

    Returns ({n: value}, {n: converged}, window_length).
    """
    _check_k(k)

    def evaluate(arr, alphabet_size, targets):
        return _class_counts(arr, alphabet_size, k, targets)

    values, converged, window, _ = _ladder(spec, ns, policy, evaluate)
    return values, converged, window


def converged_ones_ranges(spec: WordSpec, ns, policy: WindowPolicy = DEFAULT_POLICY):
    """OnesRange per n under the doubling policy (binary specs only)."""

    def evaluate(arr, alphabet_size, targets):
        if alphabet_size > 2:
            raise ParameterError("ones ranges need a binary word")
        sums = np.concatenate(([0], np.cumsum(arr, dtype=np.int64)))
        out = {}
        for n in targets:
            diffs = sums[n:] - sums[:-n]
            out[n] = (int(diffs.min()), int(diffs.max()))
        return out

    values, converged, window, _ = _ladder(spec, ns, policy, evaluate)
    ranges = {n: OnesRange(n, p, q) for n, (p, q) in values.items()}
    return ranges, converged, window


def converged_factor_window(spec: WordSpec, n_max: int,
                            policy: WindowPolicy = DEFAULT_POLICY):
    """A window whose factor sets up to n_max passed the doubling policy.

    Returns (window word, {n: converged}, window_length).
    """

    def evaluate(arr, alphabet_size, targets):
        return _distinct_window_counts(arr, alphabet_size, targets)

    _, converged, window, word = _ladder(spec, range(1, n_max + 1), policy, evaluate)
    return word, converged, window


@dataclass(frozen=True)
class ComplexityProfile:
    """Per-n complexity of a word spec, with per-n convergence flags."""

    spec: WordSpec
    k: int | float
    values: tuple[int, ...]
    converged: tuple[bool, ...]
    window_length: int
    n_max: int

    def value(self, n: int) -> int:
        return self.values[n - 1]

    def is_converged(self, n: int) -> bool:
        return self.converged[n - 1]

    @property
    def all_converged(self) -> bool:
        return all(self.converged)


def profile(spec: WordSpec, k, n_max: int,
            policy: WindowPolicy = DEFAULT_POLICY) -> ComplexityProfile:
    """Complexity values for n = 1..n_max under the doubling policy."""
    if not isinstance(n_max, int) or n_max < 1:
        raise ParameterError("n_max must be a positive integer")
    values, converged, window = converged_values(spec, k, range(1, n_max + 1), policy)
    return ComplexityProfile(
        spec=spec,
        k=k,
        values=tuple(values[n] for n in range(1, n_max + 1)),
        converged=tuple(converged[n] for n in range(1, n_max + 1)),
        window_length=window,
        n_max=n_max,
    )


def upper_profile(p: ComplexityProfile) -> list[int]:
    """Running maximum: upper(n) = max over m <= n of value(m)."""
    out = []
    best = 0
    for v in p.values:
        best = max(best, v)
        out.append(best)
    return out


@dataclass(frozen=True)
class LowerProfile:
    """Suffix minima up to an explicit horizon.

    lower(n) = min over n <= m <= horizon of value(m); a finite-horizon upper
    approximation of the true lower complexity, which minimizes over all
    m >= n.
    """

    values: tuple[int, ...]
    horizon: int

    def value(self, n: int) -> int:
        return self.values[n - 1]


def lower_profile(p: ComplexityProfile, horizon: int) -> LowerProfile:
    if not isinstance(horizon, int) or not 1 <= horizon <= p.n_max:
        raise ParameterError("horizon must lie within the profile")
    out = [0] * horizon
    best = p.values[horizon - 1]
    for n in range(horizon, 0, -1):
        best = min(best, p.values[n - 1])
        out[n - 1] = best
    return LowerProfile(tuple(out), horizon)


# --- serialization -----------------------------------------------------------

def _k_text(k):
    return "inf" if k == INFINITY else k


def profile_to_csv(p: ComplexityProfile) -> str:
    """CSV with columns n,value,converged; ASCII, newline-terminated rows."""
    lines = ["n,value,converged"]
    for n in range(1, p.n_max + 1):
        lines.append(f"{n},{p.values[n - 1]},{'true' if p.converged[n - 1] else 'false'}")
    return "\n".join(lines) + "\n"


def profile_to_json(p: ComplexityProfile) -> str:
    doc = {
        "spec": spec_text(p.spec),
        "k": _k_text(p.k),
        "window_length": p.window_length,
        "horizon": p.n_max,
        "values": [
            {"n": n, "value": p.values[n - 1], "converged": p.converged[n - 1]}
            for n in range(1, p.n_max + 1)
        ],
    }
    return json.dumps(doc)
