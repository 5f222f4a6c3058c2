import json
from itertools import permutations

import pytest

from lcmlattice.verify import (
    GOLDEN,
    CorpusSpec,
    VerificationReport,
    all_complexes,
    is_simplex_boundary,
    verify_suite,
)
from lcmlattice.simplicial import SimplicialComplex


def brute_complex_count(n):
    """Downward-closed face sets using every vertex, up to relabeling, by brute force."""
    faces = list(range(1, 1 << n))
    seen = set()
    for pick in range(1, 1 << len(faces)):
        fam = {faces[j] for j in range(len(faces)) if pick >> j & 1}
        if any(1 << v not in fam for v in range(n)):
            continue
        if any((m & ~(1 << v)) and (m & ~(1 << v)) not in fam for m in fam for v in range(n) if m >> v & 1):
            continue
        key = min(
            tuple(sorted(sum(1 << p[v] for v in range(n) if m >> v & 1) for m in fam))
            for p in permutations(range(n))
        )
        seen.add(key)
    return len(seen)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_all_complexes_count(n):
    assert len(all_complexes(n)) == brute_complex_count(n)


def test_simplex_boundary_detection():
    assert is_simplex_boundary(SimplicialComplex([1, 2, 3], [[1, 2], [2, 3], [1, 3]]))
    assert not is_simplex_boundary(SimplicialComplex([1, 2, 3], [[1, 2], [2, 3]]))
    assert not is_simplex_boundary(SimplicialComplex([1, 2, 3], [[1, 2, 3]]))


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name):
    assert GOLDEN[name]() is True


def test_small_suite_passes():
    spec = CorpusSpec(max_atoms=3, sampled_atoms=(), random_ideals=20, nonsquarefree=5, complex_vertices=3)
    rep = verify_suite(spec)
    assert rep.ok, rep.format()
    assert rep.checks["minimal_roundtrip"].instances > 0
    assert "all checks passed" in rep.format()
    json.dumps(rep.to_json())


def test_failure_keeps_first_reproducer():
    rep = VerificationReport()
    rep.record("demo", "tag", True, {"ideal": "a"})
    rep.record("demo", "tag", False, {"ideal": "ab"}, "broken")
    rep.record("demo", "tag", False, {"ideal": "abc"}, "again")
    rep.record("demo", "tag", None)
    c = rep.checks["demo"]
    assert not rep.ok and rep.failures == [c]
    assert c.reproducer == {"ideal": "ab"} and c.detail == "broken"
    assert (c.instances, c.skipped) == (3, 1)
    assert "reproducer" in rep.format()


def test_suite_is_seeded():
    spec = CorpusSpec(max_atoms=2, sampled_atoms=(4,), samples_per_size=3, random_ideals=10,
                      nonsquarefree=3, complex_vertices=2, seed=5)
    a = verify_suite(spec).to_json()
    b = verify_suite(spec).to_json()
    strip = lambda d: [{k: v for k, v in c.items() if k != "seconds"} for c in d["checks"]]
    assert strip(a) == strip(b)
