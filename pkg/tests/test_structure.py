from aisr import catalog
from aisr.algebra import direct_product, find_embedding, iter_embeddings, validate
from aisr.structure import ab_pairs, ab_quotient, abcd_quads, abcd_quotient

SR6 = catalog.sr6()


def test_embeddings_into_sr6():
    a_images = {frozenset(SR6.label(v) for v in e.values()) for e in iter_embeddings(catalog.sca(), SR6)}
    assert a_images == {frozenset({"1", k}) for k in "23456"}
    ab_images = {frozenset(SR6.label(v) for v in e.values()) for e in iter_embeddings(catalog.scab(), SR6)}
    assert ab_images == {frozenset("1236"), frozenset("1345"), frozenset("1356")}
    assert find_embedding(catalog.d2(), SR6) is None


def test_ab_quotients_in_sr6():
    pairs = list(ab_pairs(SR6))
    assert len(pairs) == 6
    for a, b in pairs:
        assert SR6.mul[a, a] != SR6.mul[a, b]
        r = ab_quotient(SR6, a, b)
        assert r.ok and r.ideal == {int(SR6.mul[a, a]), int(SR6.add[a, b])}


def test_abcd_quotients_in_sr6():
    quads = abcd_quads(SR6)
    assert len(quads) == 2
    for row in quads:
        r = abcd_quotient(SR6, *map(int, row))
        assert r.ok
        assert len(r.generated) == 6 and all(len(c) == 1 for c in r.classes)


def test_product_quotients():
    P = direct_product(SR6, SR6)
    assert validate(P) == []
    pairs = list(ab_pairs(P))
    assert len(pairs) == 396
    assert all(ab_quotient(P, a, b).ok for a, b in pairs[::20])
    quads = abcd_quads(P)
    assert len(quads) == 5180
    for row in quads[::250]:
        assert abcd_quotient(P, *map(int, row)).ok


def test_failure_is_reported():
    # a = b gives a² = ab, so no pair; a quad with ad ≤ ab+bc+cd has overlapping classes or fails
    r = abcd_quotient(SR6, 0, 0, 0, 0)
    assert not r.ok
