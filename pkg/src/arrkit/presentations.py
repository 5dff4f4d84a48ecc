"""Finitely presented groups: Tietze moves, deterministic simplification,
abelianization, Euler characteristic, and matching up to generator renaming.

Presentations are immutable values; every move returns a new one.  The
sphere count records how many redundant relators were ever introduced
(each one wedges a 2-sphere onto the presentation complex); moves I-III
never touch it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import (
    IndexOutOfRange,
    NotEliminable,
    SameIndex,
)
from .smith import smith_diagonal
from .words import (
    Gen,
    Word,
    canonical_cyclic,
    cyclic_reduce,
    free_reduce,
    from_tokens,
    inverse,
    occurrences,
    substitute,
    support,
    to_tokens,
    word_key,
)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Gen, ...]
    relators: tuple[Word, ...]
    sphere_count: int = 0

    def __post_init__(self):
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate generator ids")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        declared = set(ids)
        for r in self.relators:
            if tuple(free_reduce(r)) != tuple(r):
                raise ValueError("relator is not freely reduced")
            if not support(r) <= declared:
                raise ValueError("relator uses an undeclared generator")

    def names(self) -> dict[int, str]:
        return {g.id: g.name for g in self.generators}

    def ids(self) -> dict[str, int]:
        return {g.name: g.id for g in self.generators}

    def gen_id(self, gen) -> int:
        if isinstance(gen, Gen):
            gen = gen.id
        if isinstance(gen, str):
            try:
                return self.ids()[gen]
            except KeyError:
                raise KeyError(f"no generator named {gen!r}") from None
        if gen not in {g.id for g in self.generators}:
            raise KeyError(f"no generator with id {gen}")
        return gen

    def word(self, tokens) -> Word:
        """Build a word from signed name tokens such as ["h1", "-l2"]."""
        return from_tokens(tokens, self.ids())


def presentation(gen_names, relator_tokens, sphere_count: int = 0) -> Presentation:
    """Convenience constructor from generator names and token relators."""
    gens = tuple(Gen(i + 1, name) for i, name in enumerate(gen_names))
    ids = {g.name: g.id for g in gens}
    rels = tuple(from_tokens(tokens, ids) for tokens in relator_tokens)
    return Presentation(gens, rels, sphere_count)


def _check_index(p: Presentation, index: int) -> None:
    if not 0 <= index < len(p.relators):
        raise IndexOutOfRange(f"relator index {index} out of range")


def tietze1_conjugate(p: Presentation, index: int, w: Word, invert: bool = False) -> Presentation:
    """Replace relator r by w^-1 * r^(+-1) * w, freely reduced."""
    _check_index(p, index)
    r = p.relators[index]
    if invert:
        r = inverse(r)
    new = free_reduce(inverse(w) + tuple(r) + tuple(w))
    rels = list(p.relators)
    rels[index] = new
    return Presentation(p.generators, tuple(rels), p.sphere_count)


def _eliminable_form(r: Word, gid: int) -> Word:
    """Rotate/invert a relator into the shape (gid,) + u, or raise."""
    core = cyclic_reduce(r)
    if occurrences(core, gid) != 1:
        raise NotEliminable(f"generator occurs {occurrences(core, gid)} times in the relator")
    if -gid in core:
        core = inverse(core)
    pos = core.index(gid)
    return core[pos:] + core[:pos]


def tietze2_eliminate(p: Presentation, gen, index: int) -> Presentation:
    """Delete a generator using a relator that mentions it exactly once.

    The relator (up to rotation and inversion) reads a*w^-1; every other
    occurrence of a is replaced by w and the relator and generator go away.
    """
    _check_index(p, index)
    gid = p.gen_id(gen)
    rot = _eliminable_form(p.relators[index], gid)
    replacement = inverse(rot[1:])
    rels = [
        free_reduce(substitute(r, gid, replacement))
        for i, r in enumerate(p.relators)
        if i != index
    ]
    gens = tuple(g for g in p.generators if g.id != gid)
    return Presentation(gens, tuple(rels), p.sphere_count)


def tietze2_introduce(p: Presentation, name: str, w: Word) -> Presentation:
    """Inverse Tietze-II: add a generator with defining relator gen * w^-1."""
    if name in {g.name for g in p.generators}:
        raise ValueError(f"generator {name!r} already exists")
    if not support(w) <= {g.id for g in p.generators}:
        raise ValueError("defining word uses unknown generators")
    new_id = max((g.id for g in p.generators), default=0) + 1
    gens = p.generators + (Gen(new_id, name),)
    rels = p.relators + (free_reduce((new_id,) + inverse(w)),)
    return Presentation(gens, rels, p.sphere_count)


def tietze3_multiply(p: Presentation, i: int, j: int) -> Presentation:
    """Replace relator i by (relator i) * (relator j)."""
    if i == j:
        raise SameIndex("tietze3 needs two distinct relators")
    _check_index(p, i)
    _check_index(p, j)
    rels = list(p.relators)
    rels[i] = free_reduce(tuple(rels[i]) + tuple(rels[j]))
    return Presentation(p.generators, tuple(rels), p.sphere_count)


def tietze4_add(p: Presentation, w: Word) -> Presentation:
    """Append a relator the caller asserts is a consequence; wedges a sphere.

    Consequence-ness is not machine checked (the word problem is undecidable);
    the sphere count keeps the homotopy bookkeeping honest.
    """
    return Presentation(p.generators, p.relators + (free_reduce(w),), p.sphere_count + 1)


def euler_characteristic(p: Presentation) -> int:
    """1 - #generators + #relators: one 0-cell, a 1-cell per generator, a
    2-cell per relator."""
    return 1 - len(p.generators) + len(p.relators)


@dataclass(frozen=True)
class AbelianizationResult:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    @property
    def is_free(self) -> bool:
        return not self.torsion


def abelianization(p: Presentation) -> AbelianizationResult:
    """Smith normal form of the relator exponent-sum matrix."""
    gens = [g.id for g in p.generators]
    if not gens:
        return AbelianizationResult(0)
    matrix = [
        [sum(1 if x == gid else -1 for x in r if abs(x) == gid) for gid in gens]
        for r in p.relators
    ]
    if not matrix:
        return AbelianizationResult(len(gens))
    diag = smith_diagonal(matrix)
    rank = sum(1 for d in diag if d)
    torsion = tuple(sorted(d for d in diag if d > 1))
    return AbelianizationResult(len(gens) - rank, torsion)


# ---------------------------------------------------------------------------
# Deterministic simplification
# ---------------------------------------------------------------------------


def _commutator_pair(w: Word):
    """If w is +-[a, b] up to rotation, return (min, max) generator ids."""
    if len(w) != 4:
        return None
    x, y = w[0], w[1]
    if abs(x) == abs(y):
        return None
    if w[2] == -x and w[3] == -y:
        return (min(abs(x), abs(y)), max(abs(x), abs(y)))
    return None


def _pile_reduce(letters, commutes) -> list[int]:
    """Cancel x against a matching x^-1 whenever every letter between them
    commutes with x.  Letters are never reordered, so any change is a strict
    shortening realized by conjugation and relator products."""
    out: list[int] = []
    for x in letters:
        cancelled = False
        for i in range(len(out) - 1, -1, -1):
            y = out[i]
            if y == -x:
                del out[i]
                cancelled = True
                break
            if not (abs(y) == abs(x) or commutes(abs(y), abs(x))):
                break
        if not cancelled:
            out.append(x)
    return out


def _nf_cyclic(w: Word, pairs: set) -> Word:
    """Shorten a cyclic word using the known commuting pairs, to a fixpoint."""

    def commutes(a, b):
        return (a, b) in pairs or (b, a) in pairs

    current = _pile_reduce(list(w), commutes)
    improved = True
    while improved:
        improved = False
        for r in range(len(current)):
            rot = current[r:] + current[:r]
            red = _pile_reduce(rot, commutes)
            if len(red) < len(current):
                current = red
                improved = True
                break
    return tuple(current)


def _substring_rewrite(rels: list[Word]):
    """First strictly-shortening overlap rewrite r -> v^-1 * rest, where the
    cyclic word r contains more than half of another relator s."""
    variants_cache: dict[int, list[Word]] = {}

    def variants(j):
        if j not in variants_cache:
            s = rels[j]
            vs = []
            for base in (s, inverse(s)):
                for r in range(len(base)):
                    vs.append(base[r:] + base[:r])
            variants_cache[j] = vs
        return variants_cache[j]

    for i in range(len(rels)):
        r = rels[i]
        if len(r) < 2:
            continue
        doubled = r + r
        for j in range(len(rels)):
            if j == i:
                continue
            s = rels[j]
            if not 2 <= len(s):
                continue
            max_u = min(len(s) - 1, len(r))
            for ulen in range(max_u, len(s) // 2, -1):
                for var in variants(j):
                    u = var[:ulen]
                    v = var[ulen:]
                    for pos in range(len(r)):
                        if doubled[pos:pos + ulen] == u:
                            rest = doubled[pos + ulen:pos + len(r)]
                            new = cyclic_reduce(free_reduce(inverse(v) + rest))
                            if len(new) < len(r):
                                return i, j, new
    return None


def simplify(p: Presentation) -> tuple[Presentation, list[str]]:
    """Deterministic canonicalization by Tietze I-III moves only.

    Repeats until stable: eliminate any generator occurring exactly once in
    some relator (least (relator length, generator id) first); shorten
    relators through known commuting pairs; apply greedy length-reducing
    relator products.  Empty relators are kept, they are sphere bookkeeping.
    The sphere count, Euler characteristic, and abelianization are invariant.
    """
    gens = list(p.generators)
    rels = [cyclic_reduce(r) for r in p.relators]
    log: list[str] = []
    names = {g.id: g.name for g in gens}

    while True:
        changed = False

        # Generator eliminations, most constrained first.
        while True:
            best = None
            for idx, r in enumerate(rels):
                if not r:
                    continue
                for gid in sorted(support(r)):
                    if occurrences(r, gid) == 1:
                        key = (len(r), gid)
                        if best is None or key < best[0]:
                            best = (key, idx, gid)
                        break
            if best is None:
                break
            _, idx, gid = best
            rot = _eliminable_form(rels[idx], gid)
            replacement = inverse(rot[1:])
            del rels[idx]
            rels = [cyclic_reduce(substitute(r, gid, replacement)) for r in rels]
            gens = [g for g in gens if g.id != gid]
            log.append(f"T2: eliminate {names[gid]}")
            changed = True

        # Rewriting through commuting pairs (conjugations and products with
        # plain commutator relators).  The usable pairs are recomputed from
        # the live relator list for every target, so a relator never uses a
        # commutation it is itself the only remaining source of.
        for idx in range(len(rels)):
            usable = set()
            for j, r in enumerate(rels):
                if j == idx:
                    continue
                pair = _commutator_pair(r)
                if pair:
                    usable.add(pair)
            if not usable:
                continue
            new = _nf_cyclic(rels[idx], usable)
            if len(new) < len(rels[idx]):
                log.append(f"T1/T3: shorten relator {idx} to length {len(new)}")
                rels[idx] = new
                changed = True
        if changed:
            continue

        hit = _substring_rewrite(rels)
        if hit is not None:
            i, j, new = hit
            log.append(f"T1/T3: fold relator {j} into {i}")
            rels[i] = new
            changed = True

        if not changed:
            break

    rels = [canonical_cyclic(r) for r in rels]
    rels.sort(key=lambda w: (len(w), word_key(w)))
    return Presentation(tuple(gens), tuple(rels), p.sphere_count), log


# ---------------------------------------------------------------------------
# Matching up to generator renaming
# ---------------------------------------------------------------------------


def _gen_profile(p: Presentation, gid: int):
    prof = sorted(
        (len(r), occurrences(r, gid))
        for r in p.relators
        if occurrences(r, gid)
    )
    return tuple(prof)


def match_up_to_renaming(p: Presentation, q: Presentation, pin: dict | None = None):
    """Search for a generator bijection mapping p's relator multiset onto q's,
    relators compared as cyclic words up to inversion.  Returns a name map or
    None.  ``pin`` forces chosen assignments (p name -> q name).

    Both presentations should already be simplified; the search is
    deterministic (candidates tried in sorted name order).
    """
    if len(p.generators) != len(q.generators):
        return None
    if len(p.relators) != len(q.relators):
        return None

    p_ids = {g.name: g.id for g in p.generators}
    q_ids = {g.name: g.id for g in q.generators}
    if pin:
        if not set(pin) <= set(p_ids) or not set(pin.values()) <= set(q_ids):
            return None

    p_prof = {g.name: _gen_profile(p, g.id) for g in p.generators}
    q_prof = {g.name: _gen_profile(q, g.id) for g in q.generators}
    if sorted(p_prof.values()) != sorted(q_prof.values()):
        return None

    q_names_sorted = sorted(q_ids)
    candidates = {}
    for name, prof in p_prof.items():
        if pin and name in pin:
            opts = [pin[name]] if q_prof[pin[name]] == prof else []
        else:
            opts = [m for m in q_names_sorted if q_prof[m] == prof]
        if not opts:
            return None
        candidates[name] = opts

    remaining = Counter(canonical_cyclic(r) for r in q.relators)
    empties = Counter(canonical_cyclic(r) for r in p.relators)[()]
    if remaining[()] != empties:
        return None

    order = sorted(candidates, key=lambda name: (len(candidates[name]), name))
    position = {name: k for k, name in enumerate(order)}
    p_names = {g.id: g.name for g in p.generators}
    ready_at: list[list[Word]] = [[] for _ in order]
    for r in p.relators:
        sup = support(r)
        if sup:
            ready_at[max(position[p_names[gid]] for gid in sup)].append(r)

    assignment: dict[str, str] = {}
    used: set[str] = set()

    def image(word: Word) -> Word:
        return tuple(
            q_ids[assignment[p_names[abs(x)]]] * (1 if x > 0 else -1)
            for x in word
        )

    def assign(k: int) -> bool:
        if k == len(order):
            return True
        name = order[k]
        for target in candidates[name]:
            if target in used:
                continue
            assignment[name] = target
            used.add(target)
            taken = []
            ok = True
            for r in ready_at[k]:
                form = canonical_cyclic(image(r))
                if remaining[form] <= 0:
                    ok = False
                    break
                remaining[form] -= 1
                taken.append(form)
            if ok and assign(k + 1):
                return True
            for form in taken:
                remaining[form] += 1
            del assignment[name]
            used.discard(target)
        return False

    if assign(0):
        return dict(sorted(assignment.items()))
    return None


# ---------------------------------------------------------------------------
# Serialization (names only, exact)
# ---------------------------------------------------------------------------


def to_serializable(p: Presentation) -> dict:
    names = p.names()
    return {
        "generators": [g.name for g in p.generators],
        "relators": [to_tokens(r, names) for r in p.relators],
        "sphere_count": p.sphere_count,
    }


def from_serializable(data: dict) -> Presentation:
    return presentation(
        data["generators"],
        data["relators"],
        data.get("sphere_count", 0),
    )
