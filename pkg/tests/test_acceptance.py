"""Acceptance criteria, each checked exactly and reported on one line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` (the PASS/FAIL
lines are printed regardless of capture).
"""
import random
import time
from functools import lru_cache

import pytest

from conftest import gen
from cuttop.certificate import verify_certificate
from cuttop.cli import main
from cuttop.complex import barycentric_subdivision, euler_characteristic
from cuttop.homology import (boundary_columns, boundary_matrix, coboundary0, cocycle_basis,
                             fundamental_cycles, homology_summary, is_coboundary, is_cocycle,
                             pairing, rational_rank)
from cuttop.domains import theorem_check
from cuttop.manifolds import BUNDLED, generate
from cuttop.witness import construct_witness


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {label}: {detail}")
        assert ok, detail
    return emit


@lru_cache(maxsize=None)
def trivial_side_reports():
    runs = [("sphere:2", gen("sphere:2"), 4), ("rp2", gen("rp2"), 10),
            ("sphere:3", gen("sphere:3"), 5),
            ("Sd(sphere:2)", barycentric_subdivision(gen("sphere:2")), 12)]
    return [(name, theorem_check(K, m)) for name, K, m in runs]


def test_criterion_1_homology_oracle(report):
    start = time.perf_counter()
    bad = []
    for name in BUNDLED:
        K = generate(name)
        ranks = [0] + [rational_rank(boundary_matrix(K, k)) for k in range(1, K.dim + 1)] + [0]
        oracle = [K.count(k) - ranks[k] - ranks[k + 1] for k in range(K.dim + 1)]
        betti = homology_summary(K).betti
        chi = sum((-1) ** k * b for k, b in enumerate(betti))
        if betti != oracle or chi != euler_characteristic(K):
            bad.append(name)
    elapsed = time.perf_counter() - start
    report(1, not bad and elapsed < 60,
           f"SNF Betti == rational oracle and chi on {len(BUNDLED)} generators "
           f"(mismatches {bad}, {elapsed:.1f}s < 60s)")


def test_criterion_2_trivial_side(report):
    start = time.perf_counter()
    runs = trivial_side_reports()
    elapsed = time.perf_counter() - start
    counts = {name: r.candidates_tested for name, r in runs}
    witnesses = sum(len(r.non_cutting_witnesses) for _, r in runs)
    expected = {"sphere:2": 14, "rp2": 1022, "sphere:3": 30}
    ok = witnesses == 0 and all(counts[k] == v for k, v in expected.items()) \
        and all(r.consistent for _, r in runs) and elapsed < 300
    report(2, ok, f"domains tested {counts}, non-cutting witnesses {witnesses}, {elapsed:.1f}s")


@pytest.mark.parametrize("name", ["torus2", "klein", "genus:2"])
def test_criterion_3_witness(report, name):
    cert = construct_witness(gen(name))
    ok = cert.cut.is_witness and verify_certificate(cert)
    report(f"3 [{name}]", ok, f"witness of {len(cert.domain.facets)} facets on "
                              f"Sd^{cert.subdivisions}, verified={ok}")


@pytest.mark.slow
def test_criterion_3_stretch_torus3(report):
    start = time.perf_counter()
    cert = construct_witness(gen("torus3"))
    ok = cert.cut.is_witness and verify_certificate(cert)
    elapsed = time.perf_counter() - start
    report("3 [torus3, stretch]", ok and elapsed < 1800,
           f"witness of {len(cert.domain.facets)} facets, verified={ok}, {elapsed:.1f}s")


@pytest.mark.parametrize("name", ["torus2", "klein", "genus:2"])
def test_criterion_4_round_trip(report, name):
    from cuttop.circle_map import build_circle_map, thicken
    w = construct_witness(gen(name))
    R = build_circle_map(thicken(w.working_complex, w.domain))
    K = gen(name)
    z = R.winding_cocycle
    algebraic = pairing(z, R.loop_on_base)
    ok = (z.complex == K and is_cocycle(K, z) and not is_coboundary(K, z)
          and abs(algebraic) >= 1 and algebraic == R.crossing_count)
    report(f"4 [{name}]", ok, f"delta z = 0, not a coboundary, pairing {algebraic}, "
                              f"interface crossings {R.crossing_count}")


def test_criterion_5_remark(report):
    runs = list(trivial_side_reports()) + [("torus2", theorem_check(gen("torus2"), 14))]
    exceptions = {name: r.remark_exceptions for name, r in runs}
    cutting = {name: r.cutting_domains for name, r in runs}
    ok = not any(exceptions.values()) and runs[-1][1].exhaustive
    report(5, ok, f"cutting domains {cutting}, connected-boundary exceptions {exceptions}")


def test_criterion_6_nullhomotopy(report):
    K = gen("torus2")
    rng = random.Random(20261016)
    coboundaries = all(is_coboundary(K, coboundary0(K, [rng.randint(-50, 50) for _ in range(K.n)]))
                       for _ in range(100))
    basis = cocycle_basis(K)
    basis_ok = not any(is_coboundary(K, z) for z in basis)

    d2 = boundary_columns(K, 2)
    cycles = fundamental_cycles(K)
    invariant = True
    for _ in range(100):
        z = basis[rng.randrange(len(basis))]
        c = cycles[rng.randrange(len(cycles))]
        zg = z + coboundary0(K, [rng.randint(-9, 9) for _ in range(K.n)])
        cw = list(c)
        for col in d2:
            w = rng.randint(-3, 3)
            for e, s in col.items():
                cw[e] += w * s
        invariant &= pairing(zg, c) == pairing(z, c) == pairing(z, cw) == pairing(zg, cw)
    report(6, coboundaries and basis_ok and invariant,
           f"100 coboundaries accepted={coboundaries}, basis rejected={basis_ok}, "
           f"pairing invariant on 100 perturbations={invariant}")


def test_criterion_7_determinism(report, tmp_path, capsys):
    runs = [["verify", "--gen", "torus2", "--max", "14"], ["verify", "--gen", "rp2"],
            ["witness", "--gen", "torus2"], ["witness", "--gen", "klein"]]
    same = {}
    for argv in runs:
        blobs = []
        for k in range(2):
            out = tmp_path / f"{argv[0]}-{argv[2]}-{k}.json"
            assert main(argv + ["--out", str(out)]) == 0
            blobs.append(out.read_bytes())
        same[" ".join(argv)] = blobs[0] == blobs[1]
    capsys.readouterr()
    report(7, all(same.values()), f"byte-identical JSON across two runs: {same}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
