"""Shared test helpers: deterministic random inputs and brute-force oracles."""

from itertools import permutations

from arrkit.geometry import Arrangement, normalize_line
from arrkit.presentations import Presentation, presentation


def random_real_arrangement(rng, n, bound=3) -> Arrangement:
    lines = []
    while len(lines) < n:
        a = rng.randint(-bound, bound)
        b = rng.randint(-bound, bound)
        c = rng.randint(-bound, bound)
        if a == 0 and b == 0:
            continue
        candidate = normalize_line(a, b, c, f"L{len(lines) + 1}")
        if any(candidate.same_locus(line) for line in lines):
            continue
        lines.append(candidate)
    return Arrangement(tuple(lines))


def brute_force_poset_isomorphic(p, q):
    """Ground truth: try every label bijection and test the incidence map."""
    p_labels = sorted(p.labels)
    q_labels = sorted(q.labels)
    if len(p_labels) != len(q_labels):
        return None
    p_blocks = {point.incident for point in p.points}
    q_blocks = {point.incident for point in q.points}
    if len(p_blocks) != len(q_blocks):
        return None
    for perm in permutations(q_labels):
        mapping = dict(zip(p_labels, perm))
        if {frozenset(mapping[lbl] for lbl in block) for block in p_blocks} == q_blocks:
            return mapping
    return None


def valid_poset_mapping(p, q, mapping) -> bool:
    if mapping is None:
        return False
    p_blocks = {point.incident for point in p.points}
    q_blocks = {point.incident for point in q.points}
    return {frozenset(mapping[lbl] for lbl in block) for block in p_blocks} == q_blocks


def random_presentation(rng, max_gens=4, max_relators=4, max_len=6) -> Presentation:
    k = rng.randint(1, max_gens)
    gens = [f"g{i + 1}" for i in range(k)]
    relators = []
    for _ in range(rng.randint(1, max_relators)):
        tokens = []
        for _ in range(rng.randint(1, max_len)):
            name = rng.choice(gens)
            tokens.append(name if rng.random() < 0.5 else "-" + name)
        relators.append(tokens)
    return presentation(gens, relators)


def random_word(rng, pres: Presentation, max_len=4):
    ids = [g.id for g in pres.generators]
    if not ids:
        return ()
    return tuple(rng.choice(ids) * rng.choice((1, -1)) for _ in range(rng.randint(0, max_len)))
