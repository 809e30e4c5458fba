import pytest

from freelat.bhom import (
    Hom,
    NotBoundedError,
    Tower,
    alpha,
    beta,
    class_of,
    classify_element,
    coherent_sequence,
    compare_coherent,
    is_lower_bounded,
    is_upper_bounded,
    kernel_table,
)
from freelat.builders import build_fd3, chain, doubled_hom, m3, pentagon, pentagon_hom
from freelat.terms import GeneratorSet, parse_term, print_term
from freelat.whitman import in_interval, leq

G = GeneratorSet(("x", "y", "z"))


def t(src):
    return parse_term(src, G)


def test_hom_validation():
    N5 = pentagon()
    with pytest.raises(ValueError, match="no image"):
        Hom(G, N5, {"x": 0, "y": 1})
    with pytest.raises(ValueError, match="unknown"):
        Hom(G, N5, {"x": 0, "y": 1, "z": 2, "w": 3})
    with pytest.raises(ValueError, match="range"):
        Hom(G, N5, {"x": 0, "y": 1, "z": 9})


def test_eval_is_a_homomorphism():
    h = pentagon_hom()
    N5 = h.target
    assert h.eval(t("x*(y+z)")) == N5.index_of("c")
    assert h.eval(t("z*(x+y)")) == N5.index_of("0")
    assert h.eval(t("x+y+z")) == N5.index_of("1")
    a = h.eval(t("xy+xz+yz"))
    b = h.eval(t("(x+y)(x+z)(y+z)"))
    assert N5.labels[a] == "b" and N5.labels[b] == "c"


def test_image_sublattice():
    N5 = pentagon()
    h = Hom(G, N5, {n: N5.index_of("b") for n in G.names})
    S, to_target, to_sub = h.image_sublattice()
    assert S.n == 1
    assert to_target == [N5.index_of("b")]
    h = pentagon_hom()
    S, to_target, to_sub = h.image_sublattice()
    assert S.n == 5


def test_boundedness():
    h = pentagon_hom()
    assert is_lower_bounded(h) and is_upper_bounded(h)
    M = m3()
    bad = Hom(G, M, {"x": M.index_of("a"), "y": M.index_of("b"),
                     "z": M.index_of("c")})
    assert not is_lower_bounded(bad)
    assert not is_upper_bounded(bad)
    with pytest.raises(NotBoundedError, match="lower"):
        beta(bad, M.index_of("a"))
    with pytest.raises(NotBoundedError, match="upper"):
        alpha(bad, M.index_of("a"))


def test_beta_alpha_pentagon():
    h = pentagon_hom()
    N5 = h.target
    want = {
        "0": ("x*y*z", "z*(x+y)"),
        "a": ("z", "z"),
        "b": ("x*y", "y+z*(x+y)"),
        "c": ("x*(z+x*y)", "x+y"),
        "1": ("z+x*y", "x+y+z"),
    }
    for lbl, (lo, hi) in want.items():
        a = N5.index_of(lbl)
        assert print_term(beta(h, a)) == lo
        assert print_term(alpha(h, a)) == hi


def test_beta_alpha_are_adjoints():
    h = pentagon_hom()
    N5 = h.target
    for a in range(N5.n):
        lo, hi = beta(h, a), alpha(h, a)
        assert h.eval(lo) == a and h.eval(hi) == a
        # least preimage above a, greatest below, among a term sample
        for s in ("x", "z", "x*y", "x+y", "x*(y+z)", "z*(x+y)", "x*y*z",
                  "x+y+z", "xy+xz+yz"):
            u = t(s)
            if N5.leq(a, h.eval(u)):
                assert leq(lo, u)
            if N5.leq(h.eval(u), a):
                assert leq(u, hi)


def test_beta_rejects_non_image_elements():
    N5 = pentagon()
    h = Hom(G, N5, {n: N5.index_of("b") for n in G.names})
    with pytest.raises(ValueError, match="image sublattice"):
        beta(h, N5.index_of("a"))


def test_class_of():
    h = pentagon_hom()
    iv = class_of(h, t("x*y"))
    assert print_term(iv.lo) == "x*y"
    assert print_term(iv.hi) == "y+z*(x+y)"
    assert in_interval(t("y"), iv)


def test_kernel_table_pentagon():
    h = pentagon_hom()
    kt = kernel_table(h)
    assert len(kt.entries) == 5
    for e in kt.entries:
        assert h.eval(e.lo) == e.element == h.eval(e.hi)
        assert leq(e.lo, e.hi)
    # classes are pairwise disjoint as intervals
    for e in kt.entries:
        for f in kt.entries:
            if e is not f:
                assert not (leq(e.lo, f.hi) and leq(f.lo, e.hi))


def test_kernel_table_doubled_has_24_classes():
    kt = kernel_table(doubled_hom())
    assert len(kt.entries) == 24
    e = kt.class_of_term(t("xy+xz+yz"))
    assert print_term(e.lo) == "x*y+x*z+y*z"
    assert print_term(e.hi) == "(x+y)*(x+z)*(y+z)"
    assert e is kt.class_of_term(t("(x+y)(x+z)(y+z)"))


def test_tower_validation():
    M = m3()
    bad = Hom(G, M, {"x": M.index_of("a"), "y": M.index_of("b"),
                     "z": M.index_of("c")})
    with pytest.raises(NotBoundedError, match="stage 0"):
        Tower([bad])
    with pytest.raises(ValueError, match="at least one"):
        Tower([])
    G2 = GeneratorSet(("u", "v"))
    C2 = chain(2)
    h2 = Hom(G2, C2, {"u": 0, "v": 1})
    with pytest.raises(ValueError, match="different generators"):
        Tower([pentagon_hom(), h2])


def fd3_hom():
    F = build_fd3()
    return Hom(G, F, {n: F.index_of(n) for n in G.names})


def test_coherent_sequence_chain():
    tw = Tower([fd3_hom(), doubled_hom()])
    for s in ("x", "x*y+x*z", "xy+xz+yz", "x+y", "z*(x+y)"):
        c = coherent_sequence(tw, t(s))
        assert c.chain_ok
        assert all(c.brackets)
    c = coherent_sequence(tw, t("x*y+x*z"))
    assert print_term(c.highs[0]) == "x*(y+z)"
    assert print_term(c.highs[1]) == "x*y+x*z"


def test_compare_coherent():
    tw = Tower([fd3_hom(), doubled_hom()])
    cm = coherent_sequence(tw, t("xy+xz+yz"))
    cM = coherent_sequence(tw, t("(x+y)(x+z)(y+z)"))
    assert compare_coherent(cm, cM) == "equal"
    cx = coherent_sequence(tw, t("x"))
    ctop = coherent_sequence(tw, t("x+y+z"))
    assert compare_coherent(cx, ctop) == "leq"
    assert compare_coherent(ctop, cx) == "geq"
    cy = coherent_sequence(tw, t("y"))
    assert compare_coherent(cx, cy) == "incomparable"
    other = Tower([fd3_hom()])
    with pytest.raises(ValueError, match="different towers"):
        compare_coherent(cx, coherent_sequence(other, t("x")))


def test_classify_element():
    tw = Tower([fd3_hom(), doubled_hom()])
    c = classify_element(tw, t("x"))
    assert c.stable and "stable" in c.note
    c = classify_element(tw, t("x*y+x*z"))
    assert not c.stable and "refining" in c.note
    with pytest.raises(ValueError, match="two stages"):
        classify_element(Tower([fd3_hom()]), t("x"))
