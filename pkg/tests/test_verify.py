import itertools
import random

import pytest

from freelat.reporting import INCONCLUSIVE, PASS
from freelat.terms import enumerate_terms, gen, join, meet, parse_term, print_term
from freelat.verify import (
    _G3,
    _G4,
    _below_matrix,
    _coverage_tables,
    _F3Search,
    _mask_key,
    _triple_verdict,
    _union_checks,
    check_pi3_in_f3,
    search_pi3_in_f4,
    separate_terms,
    verify_figure1,
    verify_figure2,
    verify_figure3,
)
from freelat.whitman import Interval, canonical_form, in_interval, leq

SEED = 12345


def test_figure1_report():
    rep = verify_figure1()
    assert rep.status == PASS
    assert rep.data["fd3_size"] == 18
    assert rep.data["a_size"] == 24
    assert rep.data["a_covers"] == 36
    assert len(rep.data["targets"]) == 6
    assert rep.data["a_rank_lower"] == 1
    assert rep.data["a_rank_upper"] == 1
    assert rep.data["fd3_rank_lower"] == 0
    assert rep.data["fd3_rank_upper"] == 0


def test_figure2_report():
    rep = verify_figure2()
    assert rep.status == PASS
    assert rep.data["classes"] == 24
    assert rep.data["expected_classes"] == 24
    assert rep.data["matched"] is True
    assert print_term(rep.data["middle_class_lo"]) == print_term(
        canonical_form(parse_term("xy+xz+yz", _G3)))
    assert print_term(rep.data["middle_class_hi"]) == print_term(
        canonical_form(parse_term("(x+y)(x+z)(y+z)", _G3)))
    assert rep.data["x_class"] == ("x", "x")
    assert len(rep.lines) == 24


def test_figure3_report():
    rep = verify_figure3()
    assert rep.status == PASS
    assert rep.data["classes"] == 5
    assert rep.data["n5_rank_lower"] == 1
    assert all(ln["matched"] for ln in rep.lines)


def test_below_matrix_agrees_with_leq():
    S = _F3Search(4)
    for i in range(S.n):
        for k in range(S.n):
            got = bool((S.below[i] >> k) & 1)
            assert got == leq(S.pool[k], S.pool[i]), (
                print_term(S.pool[k]), print_term(S.pool[i]))


def test_join_meet_columns_agree_with_leq():
    S = _F3Search(4)
    rng = random.Random(SEED)
    pairs = [(rng.randrange(S.n), rng.randrange(S.n)) for _ in range(60)]
    for i, j in pairs:
        bj = S.below_join(i, j)
        am = S.above_meet(i, j)
        tj = join(S.pool[i], S.pool[j])
        tm = meet(S.pool[i], S.pool[j])
        for k in range(S.n):
            assert bool((bj >> k) & 1) == leq(S.pool[k], tj)
            assert bool((am >> k) & 1) == leq(tm, S.pool[k])


def test_coverage_tables_names_and_unions():
    S = _F3Search(2)
    names, member = _coverage_tables(S.pool)
    assert names[0] == "K"
    assert set(names) == {"K"} | {f"I^{g}" for g in "xyz"} \
        | {f"J_{g}" for g in "xyz"} | {f"G_{g}" for g in "xyz"}
    assert len(member) == S.n
    # spot checks against in_interval semantics: a bare generator sits in
    # its singleton interval and nothing else
    x = gen("x")
    px = S.pool.index(x)
    assert member[px] == 1 << names.index("G_x")
    lo = canonical_form(parse_term("x+yz", _G3))
    assert member[S.pool.index(lo)] & (1 << names.index("I^x"))
    unions = _union_checks(names)
    assert len(unions) == 9
    assert {nm for nm, _ in unions} == (
        {f"I^{a}|J_{b}|K" for a in "xyz" for b in "xyz" if a != b}
        | {f"G_{g}|K" for g in "xyz"})


def test_f3_vacuous_below_size_five():
    rep = check_pi3_in_f3(4)
    assert rep.status == PASS
    assert rep.data["free_tuples"] == 0
    assert rep.data["vacuous"] is True
    assert rep.data["uncovered"] == 0


def test_f3_size_five_counts():
    rep = check_pi3_in_f3(5)
    assert rep.status == PASS
    assert rep.data["terms"] == 121
    assert rep.data["compatible_pairs"] == 3108
    assert rep.data["tuples_surviving_pair_filters"] == 44589
    assert rep.data["free_tuples"] == 1023
    assert rep.data["uncovered"] == 0
    assert rep.data["vacuous"] is False
    covered = sum(v for k, v in rep.data.items()
                  if isinstance(k, str) and k.startswith("covered_by_"))
    assert covered == 1023


def test_mask_key_basics():
    g4 = _G4.terms()
    x1, x2, x3, x4 = g4
    assert _mask_key(x1, g4) == (1, 1)
    assert _mask_key(canonical_form(join(x1, x2)), g4) == (3, 0)
    assert _mask_key(canonical_form(meet(x3, x4)), g4) == (0, 12)
    t = canonical_form(parse_term("x1*(x2+x3)", _G4))
    assert _mask_key(t, g4) == (0, 1)


def _term_triple_verdict(z):
    """Independent rendering of the triple conditions on concrete terms."""
    g4 = _G4.terms()
    z1, z2, z3 = z
    top = canonical_form(join(join(z1, z2), z3))
    bot = canonical_form(meet(meet(z1, z2), z3))
    if not all(leq(g, top) for g in g4):
        return False, set(), set()
    if not all(leq(bot, g) for g in g4):
        return False, set(), set()
    mz = canonical_form(join(join(meet(z1, z2), meet(z1, z3)), meet(z2, z3)))
    Mz = canonical_form(meet(meet(join(z1, z2), join(z1, z3)), join(z2, z3)))
    K = Interval(mz, Mz)
    case1 = set()
    for i, j in itertools.permutations(range(3), 2):
        l = 3 - i - j
        I = Interval(canonical_form(join(z[i], meet(z[j], z[l]))),
                     canonical_form(join(z[i], Mz)))
        J = Interval(canonical_form(meet(z[j], mz)),
                     canonical_form(meet(z[j], join(z[i], z[l]))))
        if all(in_interval(g, I) or in_interval(g, J) or in_interval(g, K)
               for g in g4):
            case1.add((i, j))
    case2 = set()
    for i in range(3):
        Gi = Interval(z[i], z[i])
        if all(in_interval(g, Gi) or in_interval(g, K) for g in g4):
            case2.add(i)
    return True, case1, case2


def test_triple_verdict_matches_term_level_check():
    g4 = _G4.terms()
    reps = {}
    for t in enumerate_terms(_G4, 2):
        reps.setdefault(_mask_key(t, g4), t)
    assert len(reps) == 34
    keys = sorted(reps)
    n_valid = 0
    for kt in itertools.combinations_with_replacement(keys, 3):
        ok, c1, c2 = _triple_verdict(kt)
        z = tuple(reps[k] for k in kt)
        tok, tc1, tc2 = _term_triple_verdict(z)
        assert ok == tok, kt
        if not ok:
            continue
        n_valid += 1
        # the mask scan reports the first covering pair or None; the
        # term-level check returns the full set
        if c1 is None:
            assert not tc1, kt
        else:
            i, j = int(c1[3]) - 1, int(c1[7]) - 1
            assert (i, j) in tc1, kt
        if c2 is None:
            assert not tc2, kt
        else:
            assert int(c2[2]) - 1 in tc2, kt
    assert n_valid == 96


def test_f4_class_counts_small_sizes():
    rep1 = search_pi3_in_f4(1)
    assert rep1.status == PASS
    assert rep1.data["mask_classes"] == 26
    assert rep1.data["valid_triples_by_class"] == 80
    rep3 = search_pi3_in_f4(3)
    assert rep3.status == PASS
    assert rep3.data["mask_classes"] == 35
    assert rep3.data["valid_triples_by_class"] == 97
    for sub in rep3.subs:
        assert sub.status == PASS
        assert sub.data["covering_triples"] == 0


def test_f4_full_size_four():
    rep = search_pi3_in_f4(4)
    assert rep.status == PASS
    assert rep.data["terms"] == 1640
    assert rep.data["mask_classes"] == 35
    assert rep.data["valid_triples_by_class"] == 97
    assert rep.data["triples_represented"] == 736502680
    assert [s.claim for s in rep.subs] == [
        "case1-interval-form", "case2-singleton-form"]
    assert all(s.data["covering_triples"] == 0 for s in rep.subs)


def test_f4_budget_stops_early():
    rep = search_pi3_in_f4(4, budget_seconds=0.0)
    assert rep.status == INCONCLUSIVE
    assert "stopped" in rep.data


def test_separate_generators_uses_pentagon():
    rep = separate_terms(gen("x"), gen("y"))
    assert rep.status == PASS
    assert rep.data["homs_tried"] == 1
    assert rep.data["lattice"] == "pentagon"
    assert rep.data["s_value"] != rep.data["t_value"]


def test_separate_medians():
    m = canonical_form(parse_term("xy+xz+yz", _G3))
    M = canonical_form(parse_term("(x+y)(x+z)(y+z)", _G3))
    rep = separate_terms(m, M)
    assert rep.status == PASS
    assert rep.data["homs_tried"] == 1
    assert rep.data["lattice"] == "pentagon"


def test_separate_other_generator_names():
    from freelat.terms import GeneratorSet
    G = GeneratorSet(("a", "b"))
    s = canonical_form(parse_term("a", G))
    t = canonical_form(parse_term("a+b", G))
    rep = separate_terms(s, t)
    assert rep.status == PASS
    assert rep.data["homs_tried"] > 1


def test_separate_equal_terms_rejected():
    s = canonical_form(parse_term("x(y+z)", _G3))
    t = canonical_form(parse_term("x(z+y)", _G3))
    with pytest.raises(ValueError, match="equal"):
        separate_terms(s, t)


def test_below_matrix_standalone():
    pool = list(enumerate_terms(_G3, 2))
    idx = {t: i for i, t in enumerate(pool)}
    ops_idx = [tuple(idx[o] for o in t.ops) for t in pool]
    below = _below_matrix(pool, idx, ops_idx)
    for i in range(len(pool)):
        assert (below[i] >> i) & 1
        for k in range(len(pool)):
            assert bool((below[i] >> k) & 1) == leq(pool[k], pool[i])
