"""Small exhaustive searches for pairs with prescribed behaviour.

Two candidate sources.  ``candidate_pairs``: commuting root-vector pairs
(e_a, e_b) and (e_a + e_c, e_b), kept when the characteristic solver
succeeds.  ``labelled_candidates``: integral Cartan labels for h1, h2 in a
box, with e1, e2 sums of a few root vectors from g_{1,0} and g_{0,1}, kept
when the prescribed h's verify.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .algebra import LieAlgebraQ, element_from_labels
from .classify import classification_report, is_wonderful
from .grading import bigrade
from .pairs import (Characteristic, CharacteristicNotFound, make_pair,
                    solve_characteristic, verify_characteristic)


def root_vector(alg: LieAlgebraQ, root) -> tuple:
    return alg.basis_vector(alg.root_index[tuple(root)])


def candidate_pairs(alg: LieAlgebraQ, sums: bool = True) -> Iterator[tuple[str, str]]:
    """Commuting candidates as (e1, e2) label strings, deterministic order."""
    rs = alg.root_system
    pos = rs.positive_roots
    labels = {r: alg.labels[alg.root_index[r]] for r in pos}

    def commute(x, y):
        return not any(alg.bracket(x, y))

    for a in pos:
        for b in pos:
            if a != b and commute(root_vector(alg, a), root_vector(alg, b)):
                yield labels[a], labels[b]
    if sums:
        for a, c in combinations(pos, 2):
            x = alg.parse(f"{labels[a]} + {labels[c]}")
            for b in pos:
                if b in (a, c):
                    continue
                if commute(x, root_vector(alg, b)):
                    yield f"{labels[a]} + {labels[c]}", labels[b]


def solved(alg: LieAlgebraQ, e1: str, e2: str):
    pair = make_pair(alg, alg.parse(e1), alg.parse(e2))
    try:
        return pair, solve_characteristic(pair)
    except CharacteristicNotFound:
        return None


def non_wonderful(alg: LieAlgebraQ, limit: int = 10, sums: bool = True) -> list[tuple[str, str]]:
    """Integral candidates that are not wonderful."""
    found = []
    for e1, e2 in candidate_pairs(alg, sums):
        res = solved(alg, e1, e2)
        if res is None:
            continue
        pair, char = res
        bg = bigrade(alg, char)
        if not all(x.denominator == 1 for k in bg.support for x in k):
            continue
        if not is_wonderful(pair, char, bg)[0]:
            found.append((e1, e2))
            if len(found) >= limit:
                break
    return found


def almost_even_integral(alg: LieAlgebraQ, rectangular: bool = True, sums: bool = True) -> list[tuple[str, str]]:
    """Integral almost even candidates (optionally rectangular)."""
    found = []
    for e1, e2 in candidate_pairs(alg, sums):
        res = solved(alg, e1, e2)
        if res is None:
            continue
        pair, char = res
        rep = classification_report(pair, char, labels=False)
        f = rep.flags
        if f["almost_even"] and f["integral"] and (f["rectangular"] or not rectangular):
            found.append((e1, e2))
    return found


def labelled_candidates(alg: LieAlgebraQ, labels=range(-2, 3), terms: int = 3, coefs=(1,)):
    """Yield (pair, char) with Cartan characteristic and integral labels.

    The first coefficient of each sum is 1 (the torus rescales it).
    """
    rs = alg.root_system
    roots = list(rs.roots)
    seen = set()

    def val(lab, r):
        return sum(a * b for a, b in zip(lab, r))

    def sums(cell):
        for m in range(1, terms + 1):
            for sub in combinations(cell, m):
                for cs in product(coefs, repeat=m):
                    if cs[0] == 1:
                        yield tuple(zip(sub, cs))

    def vector(terms_):
        v = [0] * alg.dim
        for r, c in terms_:
            v[alg.root_index[r]] = c
        return tuple(v)

    for l1 in product(labels, repeat=rs.rank):
        c1 = [r for r in roots if val(l1, r) == 1]
        if not c1:
            continue
        for l2 in product(labels, repeat=rs.rank):
            c10 = [r for r in c1 if val(l2, r) == 0]
            c01 = [r for r in roots if val(l1, r) == 0 and val(l2, r) == 1]
            if not c10 or not c01:
                continue
            char = None
            for a in sums(c10):
                e1 = vector(a)
                for b in sums(c01):
                    if (a, b) in seen:
                        continue
                    seen.add((a, b))
                    e2 = vector(b)
                    if any(alg.bracket(e1, e2)):
                        continue
                    if char is None:
                        char = Characteristic(element_from_labels(alg, l1), element_from_labels(alg, l2))
                    pair = make_pair(alg, e1, e2)
                    if verify_characteristic(pair, char.h1, char.h2).ok:
                        yield pair, char


def labelled_non_wonderful(alg: LieAlgebraQ, labels=range(-2, 3), terms: int = 3, coefs=(1,)):
    """(number of candidates examined, non-wonderful pairs found)."""
    tried, found = 0, []
    for pair, char in labelled_candidates(alg, labels, terms, coefs):
        tried += 1
        if not is_wonderful(pair, char)[0]:
            found.append((pair, char))
    return tried, found
