"""Deciding k-Abelian equivalence of finite words.

Two words are k-Abelian equivalent when every factor of length at most k
occurs equally often in both.  For words of length at least k - 1 this is
equivalent to sharing the length-(k-1) prefix and suffix together with all
length-k factor counts, which is what the canonical key below captures.
Shorter words are equivalent only when equal, so their key is the word
itself.  Both facts are cross-checked against the definitional oracle in the
test suite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ParameterError
from .words import Word

__all__ = [
    "occurrences",
    "parikh_vector",
    "factor_counts",
    "KAbelianKey",
    "k_abelian_key",
    "k_abelian_eq_naive",
    "k_abelian_eq",
    "two_abelian_eq_binary",
]


def occurrences(u: Word, x: Word) -> int:
    """Number of (possibly overlapping) occurrences of x as a factor of u."""
    if len(x) == 0:
        return len(u) + 1
    count = 0
    pos = u.symbols.find(x.symbols)
    while pos != -1:
        count += 1
        pos = u.symbols.find(x.symbols, pos + 1)
    return count


def parikh_vector(u: Word) -> tuple[int, ...]:
    """Per-letter occurrence counts."""
    return tuple(u.symbols.count(a) for a in range(u.alphabet_size))


def factor_counts(u: Word, ell: int) -> Counter:
    """Sparse occurrence counts of the length-ell factors of u."""
    if ell < 1:
        raise ParameterError("factor length must be >= 1")
    s = u.symbols
    return Counter(s[i:i + ell] for i in range(len(s) - ell + 1))


def k_abelian_eq_naive(u: Word, v: Word, k: int) -> bool:
    """Definitional oracle: equal counts for every factor of length <= k.

    Enumerates only factors occurring in u or v; absent factors contribute
    count zero on both sides.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    return all(factor_counts(u, ell) == factor_counts(v, ell)
               for ell in range(1, k + 1))


@dataclass(frozen=True)
class KAbelianKey:
    """Canonical signature whose equality is k-Abelian equivalence.

    For words shorter than k - 1 the body is the word itself; otherwise it is
    (prefix of length k-1, suffix of length k-1, frozen length-k factor
    counts).
    """

    k: int
    short: bool
    body: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("k must be >= 1")


def k_abelian_key(u: Word, k: int) -> KAbelianKey:
    if k < 1:
        raise ParameterError("k must be >= 1")
    s = u.symbols
    if len(s) < k - 1:
        return KAbelianKey(k, True, (s,))
    table = frozenset(factor_counts(u, k).items()) if len(s) >= k else frozenset()
    return KAbelianKey(k, False, (s[:k - 1], s[len(s) - (k - 1):] if k > 1 else b"", table))


def k_abelian_eq(u: Word, v: Word, k: int) -> bool:
    """Fast path: key equality.  Agrees with k_abelian_eq_naive everywhere."""
    return k_abelian_key(u, k) == k_abelian_key(v, k)


def two_abelian_eq_binary(u: Word, v: Word) -> bool:
    """Binary shortcut for k = 2: length, 00-count, 11-count and first letter.

    The 01- and 10-counts are forced by these; verified against the naive
    oracle exhaustively in the tests.
    """
    if not (u.is_binary and v.is_binary):
        raise ParameterError("two_abelian_eq_binary needs binary words")
    su, sv = u.symbols, v.symbols
    if len(su) != len(sv):
        return False
    if su[:1] != sv[:1]:
        return False
    return (occurrences(u, Word(b"\x00\x00")) == occurrences(v, Word(b"\x00\x00"))
            and occurrences(u, Word(b"\x01\x01")) == occurrences(v, Word(b"\x01\x01")))
