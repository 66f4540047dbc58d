"""The eleven acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL ...`` line that is printed in
the terminal summary.  Run on its own with

    pytest tests/test_acceptance.py -v
"""

import ast
import random
import time
from contextlib import contextmanager
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from odca import analysis, boolean, equiv, exactla as la, fixtures, model as md, oracle, reach, translate
from odca.exactla import VectorSpace

from conftest import ACCEPTANCE_LINES

POOL = [Fraction(-1), Fraction(0), Fraction(1), Fraction(1, 2)]
SECOND = 10 ** 9


@contextmanager
def criterion(n, title, limit_s=None):
    info = {}
    start = time.perf_counter_ns()
    try:
        yield info
        elapsed = time.perf_counter_ns() - start
        if limit_s is not None:
            assert elapsed < limit_s * SECOND, f"took {elapsed // 10 ** 6} ms, limit {limit_s} s"
    except BaseException as exc:
        ACCEPTANCE_LINES.append(f"criterion {n}: FAIL  {title}  ({exc})")
        raise
    detail = info.get("detail", "")
    ms = (time.perf_counter_ns() - start) // 10 ** 6
    ACCEPTANCE_LINES.append(f"criterion {n}: PASS  {title}  [{ms} ms]{'  ' + detail if detail else ''}")


# -- shared random instances for criteria 3 to 5 --------------------------------

def reach_instance(seed):
    r = random.Random(seed)
    nq, nc = r.randint(1, 3), r.randint(1, 3)
    a = oracle.random_odca(nq, nc, 2, POOL, seed)
    k = r.randint(0, nq)
    v = VectorSpace.span(nq, [[r.choice(POOL) for _ in range(nq)] for _ in range(k)])
    s = {p for p in a.counter_states if r.random() < 0.5} or {a.counter_states[0]}
    m, n = r.randint(0, 3), r.randint(0, 3)
    return a, md.Configuration(a.lam, a.initial_counter_state, n), v, s, m


def compare_with_oracle(got, a, c, v, s, m):
    """Agreement with brute_reach at word cap 8, counter cap 12.

    A witness longer than the cap is checked again with the word cap raised
    to its length, so that it is compared with the oracle too.
    """
    expect = oracle.brute_reach(a, c, v, s, m, 8, 12)
    if got is not None and len(got) > 8 and expect is None:
        expect = oracle.brute_reach(a, c, v, s, m, len(got), 12 + len(got))
    return got == expect, expect


_REACH_RESULTS = {}


def reach_results():
    if not _REACH_RESULTS:
        for seed in range(200):
            a, c, v, s, m = reach_instance(seed)
            _REACH_RESULTS[seed] = (a, c, v, s, m, reach.covs_reach(a, c, v, s, m))
    return _REACH_RESULTS


# -- criteria -------------------------------------------------------------------

def test_criterion_1_reference_run():
    with criterion(1, "run of prefixAwareDecimal on abaaab", 1):
        a = fixtures.prefix_aware_decimal()
        assert md.evaluate(a, "abaaab") == 6
        r = md.run(a, md.initial_config(a), "abaaab")
        # after abaaa the last entry is 2·1 + 1 = 3, as the final
        # configuration and the weight-effect matrix require
        shown = [([1, 0, 0, 0], "p0", 0), ([1, 0, 0, 0], "p0", 1), ([0, 1, 0, 0], "p1", 0),
                 ([0, 0, 1, 0], "p2", 0), ([0, 0, 1, 1], "p2", 1), ([0, 0, 1, 3], "p2", 2),
                 ([0, 0, 1, 6], "p2", 1)]
        assert [(list(c.x), c.p, c.n) for c in r.trace] == shown
        assert r.counter_effect == 1
        assert r.weight_effect == la.matrix([[0, 0, 1, 6], [0, 0, 1, 14], [0, 0, 1, 46], [0, 0, 0, 64]])


def test_criterion_2_unfolding_soundness():
    with criterion(2, "10-unfoldings agree on all words up to length 8", 10) as info:
        count = 0
        for make in (fixtures.prefix_aware_decimal, fixtures.equal_prefix_power):
            a = make()
            u = md.unfold(a, 10)
            for w in md.words("ab", 8):
                assert u.evaluate(w) == md.evaluate(a, w), (make.__name__, w)
                count += 1
        assert count >= 500
        info["detail"] = f"{count} words"


def test_criterion_3_reach_differential():
    with criterion(3, "co-VS reachability vs brute force, 200 instances", 120) as info:
        found = 0
        for seed, (a, c, v, s, m, got) in reach_results().items():
            ok, expect = compare_with_oracle(got, a, c, v, s, m)
            assert ok, (seed, got, expect)
            found += got is not None
        info["detail"] = f"200/200 agree, {found} reachable"


def test_criterion_4_bound_properties():
    with criterion(4, "witness length and peak counter bounds") as info:
        checked = 0
        for seed, (a, c, v, s, m, got) in reach_results().items():
            if got is None:
                continue
            K = a.K
            peak = max(n for _, n in md.counter_trajectory(a, got, c.p, c.n))
            assert len(got) <= K ** 3 + max(c.n, m) * K, seed
            assert peak < max(c.n, m) + K * K, seed
            checked += 1
        info["detail"] = f"{checked} witnesses, 0 violations"


def test_criterion_5_cover_differential():
    with criterion(5, "co-VS coverability vs brute force, 200 instances") as info:
        found = 0
        for seed in range(200):
            a, c, v, s, _ = reach_instance(seed)
            got = reach.covs_cover(a, c, v, s)
            ok, expect = compare_with_oracle(got, a, c, v, s, None)
            assert ok, (seed, got, expect)
            found += got is not None
        info["detail"] = f"200/200 agree, {found} coverable"


def equiv_pair(seed):
    r = random.Random(10 ** 6 + seed)
    a = oracle.random_odca(r.randint(1, 3), r.randint(1, 3), 2, POOL, seed)
    if r.random() < 0.5:
        # same machine with one output weight nudged; often still equivalent
        eta = list(a.eta)
        i = r.randrange(len(eta))
        eta[i] += r.choice([0, 1])
        return a, replace(a, eta=tuple(eta))
    return a, oracle.random_odca(r.randint(1, 3), r.randint(1, 3), 2, POOL, seed + 7919)


def test_criterion_6_equivalence():
    with criterion(6, "equivalence witnesses and 100 random pairs", 120) as info:
        a, b = fixtures.prefix_aware_decimal(), fixtures.prefix_aware_decimal_eta2()
        v = equiv.odca_equiv(a, b, 8)
        assert v.result == equiv.NOT_EQUIVALENT and v.witness == "abaa"
        assert oracle.brute_equiv(a, b, 6) == "abaa"
        assert equiv.odca_equiv(a, a, 8).equivalent
        same = 0
        for seed in range(100):
            x, y = equiv_pair(seed)
            v = equiv.odca_equiv(x, y, 12)
            expect = oracle.brute_equiv(x, y, 8)
            if v.equivalent:
                assert expect is None, seed
                same += 1
            else:
                assert oracle.simulate(x, v.witness) != oracle.simulate(y, v.witness), seed
                # words up to 8 keep both counters at or below 8 < 12
                assert expect is None or v.witness == expect, seed
        info["detail"] = f"{same} equivalent, {100 - same} not"


HANKEL_DECIMAL = {0: 0, 1: 0, 2: 1, 3: 4, 4: 8, 5: 12}


def test_criterion_7_regularity():
    with criterion(7, "regularity verdicts and Hankel ranks") as info:
        assert analysis.is_regular(fixtures.counter_oblivious()).regular
        assert not analysis.is_regular(fixtures.prefix_aware_decimal()).regular
        a = fixtures.prefix_aware_decimal()
        ranks = {L: oracle.hankel_rank(lambda w: oracle.simulate(a, w), L) for L in range(6)}
        assert ranks == HANKEL_DECIMAL
        assert all(ranks[L] < ranks[L + 1] for L in range(2, 5))
        info["detail"] = "ranks " + ",".join(str(ranks[L]) for L in range(2, 6))


def test_criterion_8_covering():
    with criterion(8, "self-covering and the zero machine") as info:
        machines = [fixtures.prefix_aware_decimal(), fixtures.prefix_aware_decimal_eta2(),
                    fixtures.equal_prefix_power(), fixtures.counter_oblivious(), fixtures.l1_weighted(),
                    fixtures.l3_weighted()]
        for a in machines:
            assert analysis.covers(a, a, 6).covered
        a = machines[0]
        zero = replace(a, eta=la.zero_vector(a.fsm_size))
        v = analysis.covers(zero, a, 6)
        assert not v.covered and v.reason == analysis.ZERO_CHECK
        assert analysis.coverable_equiv(a, a, 6)
        info["detail"] = f"{len(machines)} fixtures"


def test_criterion_9_boolean():
    with criterion(9, "boolean determinization and equivalence") as info:
        l1 = boolean.l1()
        d = boolean.determinize(l1)
        words = list(md.words("ab", 8, 1))
        assert len(words) == 510
        assert all(boolean.bool_eval(d, w) == boolean.bool_eval(l1, w) for w in words)
        assert boolean.is_deterministic(d)
        assert boolean.bool_equiv(l1, l1, 8).equivalent
        flipped = replace(l1, eta=tuple(0 if i == 2 else x for i, x in enumerate(l1.eta)))
        v = boolean.bool_equiv(l1, flipped, 8)
        assert v.result == equiv.NOT_EQUIVALENT and v.witness == "aba"
        info["detail"] = f"{len(d.fsm_states)} subset states"


def test_criterion_10_translation():
    with criterion(10, "OCA translations and the violating OCA") as info:
        for make in (fixtures.prefix_aware_decimal, fixtures.equal_prefix_power):
            a = make()
            oca = translate.odca_to_oca(a)
            back = translate.oca_to_odca(oca)
            again = translate.odca_to_oca(back)
            for w in md.words("ab", 8):
                fw = md.evaluate(a, w)
                assert translate.oca_eval(oca, w) == fw == md.evaluate(back, w) == translate.oca_eval(again, w)
        v = translate.check_counter_determinacy(translate.violating_oca())
        assert isinstance(v, translate.CounterViolation) and v.word
        info["detail"] = f"violation on {v.word!r} with counters {v.counters}"


SRC = Path(md.__file__).resolve().parent
# floats only ever appear in wall-clock deadlines, never in values
DEADLINE_FILES = {"cli.py", "wa_algo.py", "reach.py", "equiv.py", "analysis.py"}


def test_criterion_11_exactness():
    with criterion(11, "no floating point anywhere") as info:
        divisions = 0
        for path in sorted(SRC.glob("*.py")):
            tree = ast.parse(path.read_text(encoding="utf-8"))
            # isinstance(x, float) is how floats get rejected
            guards = {id(arg) for call in ast.walk(tree)
                      if isinstance(call, ast.Call) and getattr(call.func, "id", None) == "isinstance"
                      for arg in call.args[1:]}
            for node in ast.walk(tree):
                assert not (isinstance(node, ast.Constant) and isinstance(node.value, float)), path.name
                if isinstance(node, (ast.Import, ast.ImportFrom)):
                    mods = [node.module] if isinstance(node, ast.ImportFrom) else [n.name for n in node.names]
                    assert not {"math", "numpy", "decimal", "cmath"} & set(mods), path.name
                if isinstance(node, ast.Name) and node.id == "float" and id(node) not in guards:
                    assert path.name in DEADLINE_FILES, path.name
                if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
                    divisions += 1
        # both divisions act on rows already coerced to Fraction
        assert divisions == 2
        try:
            la.vector([0.5])
        except TypeError:
            pass
        else:
            raise AssertionError("a float was accepted")
        # values produced by a mixed workload are all exact
        a = fixtures.prefix_aware_decimal()
        values = [md.evaluate(a, w) for w in md.words("ab", 6)]
        values += list(md.run(a, md.initial_config(a), "abaaab").final.x)
        values += [x for b in analysis.w_space_table(fixtures.counter_oblivious()).values() for r in b.basis for x in r]
        values += [x for r in la.rref([[2, 4], [1, 3]], 2)[0] for x in r]
        assert values and all(type(x) is Fraction for x in values)
        info["detail"] = f"{len(values)} values checked, 2 divisions, both on Fractions"


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
