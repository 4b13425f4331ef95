import itertools
import random

import pytest

from oracles import diagram_trace
from vbraid.action import (ActionPair, apply_word, collision_scan, rack_pair,
                           recover_invariants, standard_probes,
                           virtual_rack_pair)
from vbraid.braid import (VirtualBraidWord, enumerate_words, forgetful,
                          free_reduce, garside_twist, parse_word, sigma_count)
from vbraid.decision import Tri
from vbraid.errors import AxiomError
from vbraid.freeshelf import FreeShelfCarrier
from vbraid.sdstruct import (ConjQuandle, CyclicRack, FiniteCarrier,
                             FreeGroupWord, VConjQuandle, alexander_quandle,
                             artin_apply, cyclic_mod_table, dihedral_table,
                             trivial_quandle)


def dihedral_pair(m: int = 3) -> ActionPair:
    return rack_pair(FiniteCarrier(dihedral_table(m), name=f"dihedral{m}"))


def test_rack_pair_examples():
    cr = rack_pair(CyclicRack())
    assert cr.theta(3, 5) == (5, 4)
    assert cr.xi(3, 5) == (5, 3)
    trivial = rack_pair(FiniteCarrier(trivial_quandle(2)))
    assert trivial.theta(0, 1) == (1, 0)  # flip, since a <| b = a
    d3 = dihedral_pair()
    assert d3.theta(0, 1) == (1, 2)


def test_virtual_rack_pair_examples():
    vcr = virtual_rack_pair(CyclicRack())
    assert vcr.xi(3, 5) == (4, 4)
    fvs = virtual_rack_pair(FreeShelfCarrier(virtual=True))
    assert fvs.xi(0, 0) == (-1, 1)
    with pytest.raises(AxiomError):
        virtual_rack_pair(FiniteCarrier(dihedral_table(3)))


def test_virtual_pair_with_identity_automorphism_is_plain():
    table = dihedral_table(3)
    table_with_id = type(table)(table.size, table.op, table.inv,
                                f=(0, 1, 2))
    pair = virtual_rack_pair(FiniteCarrier(table_with_id))
    plain = rack_pair(FiniteCarrier(table))
    for a in range(3):
        for b in range(3):
            assert pair.xi(a, b) == plain.xi(a, b)
            assert pair.theta(a, b) == plain.theta(a, b)


def test_apply_word_examples():
    cr = rack_pair(CyclicRack())
    assert apply_word(cr, parse_word("", 2), (3, 5)) == (3, 5)
    assert apply_word(cr, parse_word("s1", 2), (3, 5)) == (5, 4)
    d3 = dihedral_pair()
    w1 = parse_word("s1 s2 z1", 3)
    w2 = parse_word("z2 s1 s2", 3)
    for triple in itertools.product(range(3), repeat=3):
        assert apply_word(d3, w1, triple) == apply_word(d3, w2, triple)


def test_sigma_inverse_requires_rack():
    shelf = rack_pair(FreeShelfCarrier(), validate=False)
    with pytest.raises(AxiomError):
        apply_word(shelf, parse_word("S1", 2), (0, 0))


def _relation_pairs(n: int) -> list[tuple[str, str]]:
    """Both sides of every defining relation instance at strand count n."""
    pairs = []
    for i in range(1, n):
        pairs.append((f"z{i} z{i}", ""))
        for j in range(1, n):
            if abs(i - j) > 1:
                pairs.append((f"s{i} s{j}", f"s{j} s{i}"))
                pairs.append((f"z{i} z{j}", f"z{j} z{i}"))
                pairs.append((f"s{i} z{j}", f"z{j} s{i}"))
    for i in range(1, n - 1):
        pairs.append((f"s{i} s{i + 1} s{i}", f"s{i + 1} s{i} s{i + 1}"))
        pairs.append((f"z{i} z{i + 1} z{i}", f"z{i + 1} z{i} z{i + 1}"))
        pairs.append((f"z{i} z{i + 1} s{i}", f"s{i + 1} z{i} z{i + 1}"))
    return pairs


@pytest.mark.parametrize("make_pair", [
    lambda: dihedral_pair(3),
    lambda: rack_pair(FiniteCarrier(cyclic_mod_table(4))),
    lambda: rack_pair(FiniteCarrier(alexander_quandle(4, 3))),
    lambda: virtual_rack_pair(CyclicRack()),
    lambda: virtual_rack_pair(FreeShelfCarrier(virtual=True)),
])
def test_defining_relations_respected(make_pair):
    pair = make_pair()
    rng = random.Random(20)
    for n in (2, 3, 4):
        if hasattr(pair.carrier, "all_elements"):
            tuples = list(itertools.product(pair.carrier.all_elements(), repeat=n))
        else:
            tuples = [tuple(pair.carrier.sample(rng) for _ in range(n))
                      for _ in range(15)]
        for lhs_text, rhs_text in _relation_pairs(n):
            lhs = parse_word(lhs_text, n)
            rhs = parse_word(rhs_text, n)
            for values in tuples:
                out1 = apply_word(pair, lhs, values)
                out2 = apply_word(pair, rhs, values)
                for x, y in zip(out1, out2):
                    assert pair.carrier.equal(x, y) is Tri.EQUAL


def test_group_inverse_relations():
    d3 = dihedral_pair()
    for word_text in ("s1 S1", "S1 s1", "s2 S2"):
        w = parse_word(word_text, 3)
        for triple in itertools.product(range(3), repeat=3):
            assert apply_word(d3, w, triple) == triple


def test_garside_twist_action_involution():
    # beyond 3 strands the squared twist no longer cancels syntactically,
    # but it must act identically to the original word
    d3 = rack_pair(FiniteCarrier(dihedral_table(3)))
    rng = random.Random(21)
    for n in (2, 3, 4):
        for _ in range(20):
            letters = " ".join(
                rng.choice(["s", "z", "S"]) + str(rng.randrange(1, n))
                for _ in range(rng.randrange(0, 6)))
            w = parse_word(letters, n)
            tw2 = garside_twist(garside_twist(w))
            for _ in range(10):
                values = tuple(rng.randrange(3) for _ in range(n))
                assert apply_word(d3, tw2, values) == apply_word(d3, w, values)


def test_recover_invariants_examples():
    got = recover_invariants(parse_word("s1", 2))
    assert got.permutation.images == (2, 1)
    assert got.sigma_count == 1
    assert got.under_multisets == {1: (2,), 2: ()}

    got = recover_invariants(parse_word("z1", 2))
    assert got.permutation.images == (2, 1)
    assert got.sigma_count == 0
    assert got.under_multisets == {1: (), 2: ()}

    got = recover_invariants(parse_word("z1 s1", 2))
    assert got.permutation.is_identity()
    assert got.sigma_count == 1

    with pytest.raises(AxiomError):
        recover_invariants(parse_word("S1", 2))


def test_recover_invariants_against_diagram_oracle():
    rng = random.Random(22)
    for _ in range(60):
        n = rng.choice((2, 3, 4))
        length = rng.randrange(0, 9)
        text = " ".join(rng.choice("sz") + str(rng.randrange(1, n))
                        for _ in range(length))
        word = parse_word(text, n)
        got = recover_invariants(word)
        labels, count, unders = diagram_trace(word)
        assert list(got.permutation.images) == labels
        assert got.sigma_count == count
        assert {k: list(v) for k, v in got.under_multisets.items()} == unders
        assert got.permutation.images == forgetful(word).images
        assert got.sigma_count == sigma_count(word)


def test_zeta_words_separated_by_distinct_length_probes():
    # combs of pairwise distinct lengths separate permutations
    carrier = FreeShelfCarrier()
    pair = rack_pair(carrier, validate=False)
    comb = 0
    probe = [0]
    for _ in range(2):
        comb = (comb, 0)
        probe.append(comb)
    probe = tuple(probe)
    zeta_words = [w for w in enumerate_words(3, 4, positive=True)
                  if all(g.kind == "z" for g in w.letters)]
    outputs = {}
    for w in zeta_words:
        out = apply_word(pair, w, probe)
        outputs.setdefault(out, set()).add(forgetful(w).images)
    for perms in outputs.values():
        assert len(perms) == 1


def _braid_class(word: VirtualBraidWord) -> frozenset:
    """All words obtainable by braid-relation rewrites (the relations
    preserve length, so the closure is finite)."""
    frontier = {word.letters}
    seen = {word.letters}
    n = word.strands
    while frontier:
        new = set()
        for letters in frontier:
            for k in range(len(letters) - 1):
                a, b = letters[k], letters[k + 1]
                if abs(a.index - b.index) > 1:
                    cand = letters[:k] + (b, a) + letters[k + 2:]
                    if cand not in seen:
                        seen.add(cand)
                        new.add(cand)
            for k in range(len(letters) - 2):
                a, b, c = letters[k], letters[k + 1], letters[k + 2]
                if a.index == c.index and abs(a.index - b.index) == 1:
                    cand = letters[:k] + (b, a, b) + letters[k + 3:]
                    if cand not in seen:
                        seen.add(cand)
                        new.add(cand)
        frontier = new
    return frozenset(seen)


def test_sigma_words_free_on_constant_probe():
    # positive braid-only words act freely: words denoting distinct monoid
    # elements (distinct braid-relation classes) of length <= 5 on 3 strands
    # are separated already by the constant tuple, and words in the same
    # class agree on it
    carrier = FreeShelfCarrier()
    pair = rack_pair(carrier, validate=False)
    words = [w for w in enumerate_words(3, 5, positive=True)
             if all(g.kind == "s" for g in w.letters)]
    probe = (0, 0, 0)
    outputs = [apply_word(pair, w, probe) for w in words]
    classes = [_braid_class(w) for w in words]
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            verdicts = {carrier.equal(a, b)
                        for a, b in zip(outputs[i], outputs[j])}
            if classes[i] == classes[j]:
                assert verdicts == {Tri.EQUAL}, (str(words[i]), str(words[j]))
            else:
                assert Tri.NOT_EQUAL in verdicts, (str(words[i]), str(words[j]))


def test_collision_scan_finds_forbidden_pair():
    pair = dihedral_pair()
    probes = list(itertools.product(range(3), repeat=3))
    report = collision_scan(pair, 3, 3, probes)
    assert ("s1 s2 z1", "z2 s1 s2") in report.collisions
    assert report.undecided == ()


def test_collision_scan_zeta_only_on_staircase():
    carrier = FreeShelfCarrier(virtual=True)
    pair = virtual_rack_pair(carrier, validate=False)
    zeta_words = [w for w in enumerate_words(3, 3, positive=True)
                  if all(g.kind == "z" for g in w.letters)]
    staircase = (0, 1, 2)
    report = collision_scan(pair, 3, 0, [staircase], words=zeta_words)
    # every zeta letter fixes the staircase, so all pairs collide
    expected = len(zeta_words) * (len(zeta_words) - 1) // 2
    assert len(report.collisions) == expected
    assert report.undecided == ()


def test_fq_action_matches_inverse_artin_action():
    # acting on the generator tuple equals applying the inverse braid word
    # through the free-group substitution action, coordinate by coordinate
    n = 3
    conj = ConjQuandle(n)
    pair = rack_pair(conj)
    rng = random.Random(23)
    gens = tuple(FreeGroupWord.generator(i) for i in range(1, n + 1))
    for _ in range(50):
        text = " ".join(rng.choice("sS") + str(rng.randrange(1, n))
                        for _ in range(rng.randrange(0, 7)))
        word = parse_word(text, n)
        lhs = apply_word(pair, word, gens)
        rhs = tuple(artin_apply(word.inverse(), g) for g in gens)
        assert lhs == rhs


def test_vconj_action_validates():
    pair = virtual_rack_pair(VConjQuandle(2), seed=3, samples=25)
    out = apply_word(pair, parse_word("z1 s1", 2),
                     (FreeGroupWord.generator(1), FreeGroupWord.generator(2)))
    assert all(pair.carrier.contains(w) for w in out)


def test_standard_probes_shapes():
    pair = virtual_rack_pair(FreeShelfCarrier(virtual=True), validate=False)
    probes = standard_probes(pair, 3)
    assert (0, 0, 0) in probes
    assert (0, 1, 2) in probes
    assert all(len(p) == 3 for p in probes)
