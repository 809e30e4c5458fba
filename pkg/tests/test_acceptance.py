"""Acceptance gate: the ten headline checks, one test and one printed
pass line each.  Budgets are generous; typical full-suite time is well
under five minutes on a laptop."""

import itertools
import random
import time

import pytest

from freelat.bhom import (
    Hom,
    NotBoundedError,
    alpha,
    beta,
    is_lower_bounded,
    is_upper_bounded,
)
from freelat.builders import catalog, extended_catalog
from freelat.finlat import dm_completion, find_isomorphism, poset_from_covers, tarski_lfp
from freelat.ideals import sd_meet_failure_report
from freelat.reporting import FAIL, PASS
from freelat.terms import GeneratorSet, enumerate_terms, evaluate, parse_term
from freelat.verify import (
    check_pi3_in_f3,
    search_pi3_in_f4,
    verify_figure1,
    verify_figure2,
    verify_figure3,
)
from freelat.whitman import canonical_form, equal, leq

from conftest import SEED, perturb, rand_term

G3 = GeneratorSet(("x", "y", "z"))
NAMES = ("x", "y", "z")

_HOMS = None


def catalog_homs():
    """All 789 generator assignments into the catalog lattices."""
    global _HOMS
    if _HOMS is None:
        homs = []
        for L in catalog():
            for images in itertools.product(range(L.n), repeat=3):
                homs.append(Hom(G3, L, dict(zip(NAMES, images))))
        _HOMS = homs
    return _HOMS


def _ok(num, label, t0):
    print(f"criterion {num:2d} ({label}): pass in {time.monotonic() - t0:.2f}s")


def test_c01_whitman_soundness():
    t0 = time.monotonic()
    rng = random.Random(SEED)
    homs = catalog_homs()
    assert len(homs) == 789
    checked = violations = 0
    for _ in range(1000):
        s = rand_term(rng, NAMES, rng.randint(0, 6))
        t = rand_term(rng, NAMES, rng.randint(0, 6))
        if not leq(s, t):
            continue
        checked += 1
        for h in homs:
            if not h.target.leq(h.eval(s), h.eval(t)):
                violations += 1
    assert checked > 0
    assert violations == 0
    assert time.monotonic() - t0 < 300
    _ok(1, f"whitman soundness, {checked} true pairs x 789 homs", t0)


def test_c02_canonical_form_laws():
    t0 = time.monotonic()
    rng = random.Random(SEED + 1)
    for _ in range(1000):
        t = rand_term(rng, NAMES, rng.randint(0, 6))
        u = perturb(rng, t, NAMES)
        c = canonical_form(t)
        assert canonical_form(c) is c
        assert equal(t, u)
        assert canonical_form(u) is c
        v = rand_term(rng, NAMES, rng.randint(0, 6))
        assert equal(t, v) == (canonical_form(v) is c)
    _ok(2, "canonical form laws, 1000 perturbed pairs", t0)


def test_c03_figure1():
    t0 = time.monotonic()
    rep = verify_figure1()
    assert rep.status == PASS
    assert rep.data["fd3_size"] == 18
    assert rep.data["a_size"] == 24
    assert rep.data["a_rank_lower"] is not None
    assert rep.data["a_rank_upper"] is not None
    assert time.monotonic() - t0 < 10
    _ok(3, "fd3 has 18 elements, its doubling 24, both ranks finite", t0)


def test_c04_figure2():
    t0 = time.monotonic()
    rep = verify_figure2()
    assert rep.status == PASS
    assert rep.data["classes"] == 24
    assert rep.data["matched"] is True
    assert time.monotonic() - t0 < 60
    _ok(4, "24 kernel classes of the doubled map match", t0)


def test_c05_figure3():
    t0 = time.monotonic()
    rep = verify_figure3()
    assert rep.status == PASS
    assert rep.data["classes"] == 5
    assert rep.data["n5_rank_lower"] == 1
    assert time.monotonic() - t0 < 5
    _ok(5, "5 pentagon kernel classes match, pentagon rank 1", t0)


def test_c06_beta_alpha_oracle():
    t0 = time.monotonic()
    pool = list(enumerate_terms(G3, 4))
    assert len(pool) == 55
    npool = len(pool)
    le = [[leq(a, b) for b in pool] for a in pool]
    homs = catalog_homs()
    unbounded_lo = unbounded_up = compared = 0
    for h in homs:
        vals = [h.eval(t) for t in pool]
        _, to_target, _ = h.image_sublattice()
        lb = is_lower_bounded(h)
        ub = is_upper_bounded(h)
        if not lb:
            unbounded_lo += 1
        if not ub:
            unbounded_up += 1
        for a in to_target:
            C = [i for i in range(npool) if h.target.leq(a, vals[i])]
            least = next((i for i in C if all(le[i][j] for j in C)), None)
            if lb:
                if least is not None:
                    assert beta(h, a) is pool[least]
                    compared += 1
            else:
                with pytest.raises(NotBoundedError):
                    beta(h, a)
            D = [i for i in range(npool) if h.target.leq(vals[i], a)]
            greatest = next((i for i in D if all(le[j][i] for j in D)), None)
            if ub:
                if greatest is not None:
                    assert alpha(h, a) is pool[greatest]
                    compared += 1
            else:
                with pytest.raises(NotBoundedError):
                    alpha(h, a)
    assert unbounded_lo == 6
    assert unbounded_up == 6
    assert compared > 1000
    assert time.monotonic() - t0 < 600
    _ok(6, f"beta/alpha match brute least/greatest, {compared} comparisons", t0)


def test_c07_pi3_f4_search():
    t0 = time.monotonic()
    rep = search_pi3_in_f4(max_size=4, budget_seconds=1800)
    assert rep.status != FAIL
    assert [s.claim for s in rep.subs] == [
        "case1-interval-form", "case2-singleton-form"]
    for sub in rep.subs:
        assert sub.data["covering_triples"] == 0
    assert rep.data["valid_triples_by_class"] == 97
    _ok(7, f"no covering triple among 4-generator terms, status {rep.status}", t0)


def test_c08_pi3_f3_coverage():
    t0 = time.monotonic()
    rep = check_pi3_in_f3(max_size=6)
    assert rep.status == PASS
    assert rep.data["vacuous"] is False
    assert rep.data["free_tuples"] == 72510
    assert rep.data["uncovered"] == 0
    _ok(8, f"all {rep.data['free_tuples']} free 4-tuples covered", t0)


def test_c09_ideal_sd_failure():
    t0 = time.monotonic()
    rep = sd_meet_failure_report(budget=8)
    assert rep.status == PASS
    assert rep.data["meet_xy_equals_meet_xz"] is True
    assert rep.data["witness_in_meet_x_yz"] is True
    assert rep.data["witness_outside_meets_up_to_budget"] is True
    assert len(rep.lines) == 12
    assert time.monotonic() - t0 < 60
    _ok(9, "meet semidistributivity fails in the ideal lattice", t0)


def test_c10_completion_laws():
    t0 = time.monotonic()
    for L in catalog():
        C, _ = dm_completion(L)
        assert find_isomorphism(L, C) is not None, L.name
    anti = poset_from_covers("a2", 2, [])
    C, _ = dm_completion(anti)
    assert C.n == 4
    mismatches = 0
    for L in extended_catalog():
        assert L.n <= 8
        for src in ("x*(y+v)", "x+y*v"):
            p = parse_term(src, GeneratorSet(("x", "y", "v")))
            for i in range(L.n):
                for j in range(L.n):
                    amap = {"x": i, "y": j}
                    got = tarski_lfp(L, p, "v", amap)
                    fixed = [w for w in range(L.n)
                             if evaluate(p, L, {**amap, "v": w}) == w]
                    least = next((w for w in fixed
                                  if all(L.leq(w, u) for u in fixed)), None)
                    assert least is not None
                    if got != least:
                        mismatches += 1
    assert mismatches == 0
    _ok(10, "dm completion fixes lattices, tarski lfp matches scans", t0)
