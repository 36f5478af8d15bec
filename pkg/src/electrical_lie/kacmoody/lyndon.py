"""Lyndon words and the Lyndon basis of a free Lie algebra.

Words are tuples of letter positions ``0..r-1``.  The standard bracketing
``P_w`` of a Lyndon word ``w`` expands in the free associative algebra as
``w`` plus strictly larger words, which makes conversion from associative
coordinates to Lyndon coordinates a triangular peel.
"""

from __future__ import annotations

from functools import lru_cache

Word = tuple


def is_lyndon(w: Word) -> bool:
    """Strictly smaller than each of its proper suffixes."""
    return bool(w) and all(w < w[k:] for k in range(1, len(w)))


def lyndon_words(content: tuple[int, ...]) -> list[Word]:
    """All Lyndon words with the given letter multiplicities, sorted."""
    return list(_lyndon_words(tuple(content)))


@lru_cache(maxsize=None)
def _lyndon_words(content: tuple[int, ...]) -> tuple[Word, ...]:
    n = sum(content)
    if n == 0:
        return ()
    k = len(content)
    remaining = list(content)
    first = next(i for i in range(k) if remaining[i])
    a = [0] * (n + 1)
    a[1] = first
    remaining[first] -= 1
    out = []

    # prenecklace generation restricted to the content
    def gen(t: int, p: int) -> None:
        if t > n:
            if p == n:
                out.append(tuple(a[1:]))
            return
        for j in range(a[t - p], k):
            if remaining[j]:
                a[t] = j
                remaining[j] -= 1
                gen(t + 1, p if j == a[t - p] else t)
                remaining[j] += 1

    gen(2, 1)
    return tuple(out)


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> tuple[Word, Word]:
    """``w = uv`` with ``v`` the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise AssertionError("unreachable: the last letter is Lyndon")


def _add(out: dict, key, c) -> None:
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def assoc_commutator(p: dict, q: dict) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            c = a * b
            _add(out, u + v, c)
            _add(out, v + u, -c)
    return out


@lru_cache(maxsize=None)
def expand(w: Word) -> dict:
    """Associative expansion of ``P_w`` as ``{word: int}``."""
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return assoc_commutator(expand(u), expand(v))


def to_lyndon(assoc: dict) -> dict:
    """Lyndon coordinates of a Lie element given associatively.

    Raises ``ValueError`` if the input is not a Lie element.
    """
    rest = dict(assoc)
    out = {}
    while rest:
        w = min(rest)
        c = rest[w]
        if not is_lyndon(w):
            raise ValueError(f"not a Lie polynomial (leading word {w})")
        out[w] = c
        for x, d in expand(w).items():
            _add(rest, x, -c * d)
    return out


def content_of(w: Word, rank: int) -> tuple[int, ...]:
    c = [0] * rank
    for x in w:
        c[x] += 1
    return tuple(c)
