"""
Acceptance verification for excross.
Runs every acceptance property end to end without pytest and reports timings.
"""

import sys
import tempfile
import time
from pathlib import Path

sys.path.insert(0, '.')

print("="*60)
print("EXCROSS ACCEPTANCE VERIFICATION")
print("="*60)

# Test 0: Import modules
print("\nTEST 0: Importing excross modules...")
try:
    from src.cli.main import main
    from src.covariant import check_covariant_rep, contractivity_spot_check, natural_covariant_rep, pi_times_nu
    from src.crossed_product import check_isomorphism, check_quotient_identities
    from src.semigroup import check_associativity as check_s_associativity
    from src.semigroup import check_inverse_uniqueness, group_semigroup
    from src.algebra import check_associativity
    from src.fixtures import STANDARD_FIXTURES, get_fixture
    from src.groups import cyclic_group, klein_four_group, symmetric_group_3
    from src.partial_action import check_bijection, check_bracket_intersections, check_e_monotone
    from src.verification import pipeline_from_fixture
    from src.word_oracle import oracle_agreement
    from src.errors import NonAssociativeL
    print("✅ Modules imported successfully!")
except Exception as e:
    print(f"❌ Import failed: {e}")
    sys.exit(1)


def all_passed(results):
    return all(r.passed for r in results)


def timed(label, limit, fn):
    start = time.perf_counter()
    fn()
    elapsed = time.perf_counter() - start
    if elapsed >= limit:
        raise AssertionError(f"{label} took {elapsed:.2f}s (limit {limit}s)")
    print(f"✅ {label}: {elapsed:.2f}s (limit {limit}s)")


# Test 1: Normal forms against the word oracle
print("\nTEST 1: S(G) engine against the word-rewriting oracle...")
try:
    def oracle_run(name, G):
        def run():
            S = group_semigroup(G)
            results, stats = oracle_agreement(S)
            assert all_passed(results), f"{name}: {[r for r in results if not r.passed]}"
            assert stats["agreement"] == 100.0, f"{name}: agreement {stats['agreement']}%"
            print(f"   {name}: |S| = {len(S)}, agreement {stats['agreement']:g}% "
                  f"on {stats['checked']:.0f} pairs")
        return run

    for name, G in [("Z2", cyclic_group(2)), ("Z3", cyclic_group(3)),
                    ("Z4", cyclic_group(4)), ("Klein-4", klein_four_group())]:
        timed(f"oracle agreement on {name}", 10, oracle_run(name, G))
    assert len(group_semigroup(cyclic_group(2))) == 3
    assert len(group_semigroup(cyclic_group(3))) == 8
except Exception as e:
    print(f"❌ Oracle agreement failed: {e}")
    import traceback
    traceback.print_exc()
    sys.exit(1)

# Test 2: Inverse-semigroup axioms
print("\nTEST 2: Unique inverses and associativity...")
try:
    def inverse_run():
        for G in [cyclic_group(n) for n in range(1, 5)] + [klein_four_group()]:
            assert check_inverse_uniqueness(group_semigroup(G)).passed
        result = check_s_associativity(group_semigroup(symmetric_group_3()), samples=10_000, seed=0)
        assert result.passed, result.witness
        print(f"   sym3: {result.detail}")
    timed("inverse-semigroup axioms", 30, inverse_run)
except Exception as e:
    print(f"❌ Inverse-semigroup axioms failed: {e}")
    sys.exit(1)

# Test 3: Bijection between partial actions of G and actions of S(G)
print("\nTEST 3: Partial actions of G and actions of S(G)...")
try:
    def bijection_run():
        for name in ["p1", "swap", "z3_rotation", "sym3_partial"]:
            alpha = get_fixture(name).algebra_action()
            assert all_passed(check_bijection(alpha)), name
    timed("bijection round-trips", 10, bijection_run)
except Exception as e:
    print(f"❌ Bijection checks failed: {e}")
    sys.exit(1)

# Test 4: E_st <= E_s and E_[g][h] = E_[gh] ∩ E_[g]
print("\nTEST 4: Ideal identities of the S(G)-action...")
try:
    def ideal_run():
        for name in STANDARD_FIXTURES:
            B = pipeline_from_fixture(get_fixture(name)).sg_action
            assert check_e_monotone(B).passed, name
            assert check_bracket_intersections(B).passed, name
    timed("ideal identities", 10, ideal_run)
except Exception as e:
    print(f"❌ Ideal identities failed: {e}")
    sys.exit(1)

# Test 5: Associativity of the crossed products
print("\nTEST 5: Associativity of A⋊G and L...")
try:
    def assoc_run():
        for name in STANDARD_FIXTURES:
            pipeline = pipeline_from_fixture(get_fixture(name))
            assert check_associativity(pipeline.group_cp.algebra).passed, name
            assert pipeline.sg_cp.associativity.passed, name
        pipeline = pipeline_from_fixture(get_fixture("zero_product"))
        result = check_associativity(pipeline.group_cp.algebra)
        assert not result.passed
        print(f"   zero-product A⋊G witness: {result.witness}")
        try:
            pipeline.sg_cp
        except NonAssociativeL as exc:
            print(f"   zero-product L witness: {exc.witness}")
        else:
            raise AssertionError("L over the zero-product action should not be associative")
    timed("associativity", 30, assoc_run)
except Exception as e:
    print(f"❌ Associativity checks failed: {e}")
    sys.exit(1)

# Test 6: phi / psi, with dim N certified twice
print("\nTEST 6: phi / psi and dim A⋊G = dim L - dim N...")
pipelines = {}
try:
    def iso_run():
        for name in STANDARD_FIXTURES:
            pipeline = pipelines[name] = pipeline_from_fixture(get_fixture(name))
            cp, scp = pipeline.group_cp, pipeline.sg_cp
            assert all_passed(check_isomorphism(cp, scp)), name
            assert scp.certify_n().passed, name
            dims = scp.dimensions
            assert cp.dim == dims["L"] - dims["N"], name
            print(f"   {name}: dims {cp.dim} = {dims['L']} - {dims['N']}")
        p1 = pipelines["p1"]
        assert (p1.group_cp.dim, p1.sg_cp.L.dim, p1.sg_cp.N.rank) == (3, 4, 1)
    timed("isomorphism", 10, iso_run)
except Exception as e:
    print(f"❌ Isomorphism checks failed: {e}")
    sys.exit(1)

# Test 7: The identities that hold in L/N
print("\nTEST 7: Identities in the quotient L/N...")
try:
    def quotient_run():
        for name in STANDARD_FIXTURES:
            assert all_passed(check_quotient_identities(pipelines[name].sg_cp)), name
    timed("quotient identities", 10, quotient_run)
except Exception as e:
    print(f"❌ Quotient identities failed: {e}")
    sys.exit(1)

# Test 8: Covariant representations
print("\nTEST 8: Natural covariant representation...")
try:
    def covariant_run():
        for name in ["p1", "swap", "z3_rotation", "global_z2", "degenerate"]:
            pipeline = pipeline_from_fixture(get_fixture(name))
            rep = natural_covariant_rep(pipeline.set_action, pipeline.sg_action)
            assert all_passed(check_covariant_rep(rep, pipeline.sg_cp)), name
            for v in pipeline.sg_cp.generators:
                assert all(x == 0 for x in pi_times_nu(rep, pipeline.sg_cp.L, v).flat), name
    timed("covariant representations", 10, covariant_run)
except Exception as e:
    print(f"❌ Covariant checks failed: {e}")
    sys.exit(1)

# Test 9: Contractivity
print("\nTEST 9: Contractivity of pi x nu...")
try:
    def contractivity_run():
        for name in ["p1", "swap"]:
            pipeline = pipeline_from_fixture(get_fixture(name))
            rep = natural_covariant_rep(pipeline.set_action, pipeline.sg_action)
            result = contractivity_spot_check(rep, pipeline.sg_cp, samples=100, seed=0)
            assert result.passed, result.witness
            print(f"   {name}: {result.detail}")
    timed("contractivity", 10, contractivity_run)
except Exception as e:
    print(f"❌ Contractivity check failed: {e}")
    sys.exit(1)

# Test 10: Deterministic reports
print("\nTEST 10: Byte-identical JSON from two CLI runs...")
try:
    with tempfile.TemporaryDirectory() as tmp:
        first, second = Path(tmp) / "first.json", Path(tmp) / "second.json"
        for out in (first, second):
            status = main(["check", "all", "--fixture", "p1", "--format", "json", "--out", str(out)])
            assert status == 0, f"check all exited {status}"
        assert first.read_bytes() == second.read_bytes()
    print("✅ Reports are deterministic!")
except Exception as e:
    print(f"❌ Determinism check failed: {e}")
    sys.exit(1)

print("\n" + "="*60)
print("ALL ACCEPTANCE CHECKS PASSED")
print("="*60)
