"""Words over signed generators.

A word is a tuple of nonzero ints; negation is inversion.  Stored words are
always freely reduced.
"""

from __future__ import annotations

from itertools import chain
from typing import Iterable, NamedTuple

Word = tuple  # tuple[int, ...]


class Gen(NamedTuple):
    id: int
    name: str


def free_reduce(letters: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def concat(*words: Word) -> Word:
    return free_reduce(chain.from_iterable(words))


def conjugate(w: Word, by: Word) -> Word:
    """w^by = by^-1 * w * by."""
    return concat(inverse(by), w, by)


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a * b * a^-1 * b^-1."""
    return concat(a, b, inverse(a), inverse(b))


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def letter_key(x: int) -> tuple[int, int]:
    return (abs(x), 0 if x > 0 else 1)


def word_key(w: Word) -> tuple:
    return tuple(letter_key(x) for x in w)


def canonical_cyclic(w: Word) -> Word:
    """Least representative among all rotations of w and of w^-1.

    Relators compare equal up to conjugation and inversion exactly when
    their canonical cyclic forms coincide.
    """
    w = cyclic_reduce(w)
    if not w:
        return ()
    best = None
    for base in (w, inverse(w)):
        for r in range(len(base)):
            rot = base[r:] + base[:r]
            if best is None or word_key(rot) < word_key(best):
                best = rot
    return best


def occurrences(w: Word, gen_id: int) -> int:
    return sum(1 for x in w if abs(x) == gen_id)


def exponent_sum(w: Word, gen_id: int) -> int:
    return sum(1 if x == gen_id else -1 for x in w if abs(x) == gen_id)


def substitute(w: Word, gen_id: int, replacement: Word) -> Word:
    """Replace every occurrence of the generator by a word (sign-aware)."""
    inv = inverse(replacement)
    out: list[int] = []
    for x in w:
        if x == gen_id:
            out.extend(replacement)
        elif x == -gen_id:
            out.extend(inv)
        else:
            out.append(x)
    return free_reduce(out)


def support(w: Word) -> frozenset[int]:
    return frozenset(abs(x) for x in w)


def pencil_commutators(gens_bottom_to_top: list[Word]) -> list[Word]:
    """Expand the bracket [g_n, g_{n-1}, ..., g_1] into its n-1 relators:

        [g_n, g_{n-1}...g_1], [g_n g_{n-1}, g_{n-2}...g_1], ..., [g_n...g_2, g_1]
    """
    gens = list(gens_bottom_to_top)
    n = len(gens)
    out = []
    for i in range(1, n):
        left = concat(*reversed(gens[n - i:]))
        right = concat(*reversed(gens[:n - i]))
        out.append(commutator(left, right))
    return out


def vertex_conjugation_words(west: list[Word]) -> list[Word]:
    """Expressions carried across a vertex: bottom and top lines pass through
    unchanged, each middle line is conjugated by the product of the lines
    below it.

        e_1' = e_1,  e_k' = e_k^(e_{k-1}...e_1)  (1 < k < n),  e_n' = e_n
    """
    n = len(west)
    out = []
    for k, e in enumerate(west):
        if k == 0 or k == n - 1:
            out.append(e)
        else:
            by = concat(*reversed(west[:k]))
            out.append(conjugate(e, by))
    return out


def to_tokens(w: Word, names: dict[int, str]) -> list[str]:
    return [names[x] if x > 0 else "-" + names[-x] for x in w]


def from_tokens(tokens: Iterable[str], ids: dict[str, int]) -> Word:
    letters = []
    for token in tokens:
        if token.startswith("-"):
            letters.append(-ids[token[1:]])
        else:
            letters.append(ids[token])
    return free_reduce(letters)
