import json
from fractions import Fraction

import pytest

from fploops import fplgrid as fg
from fploops import groundstate as gs
from fploops import linkpat as lp
from fploops.errors import GuardLimitError, StructuralFailureError


class TestGeneratorAction:
    def test_fixed_when_arch_present(self):
        p = lp.LinkPattern.from_text("(1 2)(3 4)(5 6)")
        assert gs.apply_ei(1, p) == p
        assert gs.apply_ei(3, p) == p

    def test_rewiring(self):
        p = lp.LinkPattern.from_text("(1 2)(3 4)(5 6)")
        assert gs.apply_ei(2, p).pairs() == [(1, 4), (2, 3), (5, 6)]

    def test_cyclic_wrap(self):
        p = lp.LinkPattern.from_text("(1 2)(3 4)(5 6)")
        assert gs.apply_ei(6, p).pairs() == [(1, 6), (2, 5), (3, 4)]

    def test_index_domain(self):
        p = lp.nested_pattern(3)
        with pytest.raises(ValueError):
            gs.apply_ei(0, p)
        with pytest.raises(ValueError):
            gs.apply_ei(7, p)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_algebra_relations(self, n):
        m2 = 2 * n
        for p in lp.enumerate_link_patterns(n):
            for i in range(1, m2 + 1):
                once = gs.apply_ei(i, p)
                assert gs.apply_ei(i, once) == once  # idempotent at loop weight 1
                for j in (i - 1, i + 1):
                    jj = (j - 1) % m2 + 1
                    assert gs.apply_ei(i, gs.apply_ei(jj, gs.apply_ei(i, p))) == gs.apply_ei(i, p)
                for j in range(1, m2 + 1):
                    d = (i - j) % m2
                    if d > 1 and d < m2 - 1:
                        assert gs.apply_ei(i, gs.apply_ei(j, p)) == gs.apply_ei(j, gs.apply_ei(i, p))


class TestHamiltonians:
    def test_n1(self):
        h = gs.build_hamiltonian(1)
        assert h.dim == 1 and h.entries == {(0, 0): 2}

    @pytest.mark.parametrize("n", range(1, 6))
    def test_column_sums(self, n):
        h = gs.build_hamiltonian(n)
        assert h.column_sums() == [2 * n] * h.dim

    def test_diagonal_counts_adjacent_arches(self):
        n = 3
        matches = lp.enumerate_matches(n)
        h = gs.build_hamiltonian(n)
        for a, match in enumerate(matches):
            adjacent = sum(1 for i in range(2 * n) if match[i] == (i + 1) % (2 * n)) // 1
            # each adjacent arch is seen from its lower endpoint only
            adjacent = sum(1 for i in range(2 * n) if match[i] == (i + 1) % (2 * n))
            assert h[(a, a)] == adjacent // 2 * 2 - adjacent // 2 + adjacent // 2  # == adjacent/2*... simplif below
        small = matches.index((1, 0, 3, 2, 5, 4))
        assert h[(small, small)] == 3

    def test_guard(self):
        with pytest.raises(GuardLimitError):
            gs.build_hamiltonian(6, guard=100)

    def test_reduced_n3_matrix(self):
        # orbits at n=3 sort as [small arches, nested]; entries were derived
        # by hand from the generator action.
        m = gs.build_reduced_hamiltonian(3)
        assert m.dim == 2
        assert dict(m.entries) == {(0, 0): 3, (0, 1): 6, (1, 0): 2, (1, 1): 2}

    def test_reduced_dimensions(self):
        for n, expected in [(1, 1), (4, 3), (7, 27)]:
            assert gs.build_reduced_hamiltonian(n).dim == expected


class TestKernelSolver:
    def test_known_kernel(self):
        m = gs.SparseIntMatrix(2, {(0, 0): 2, (0, 1): 2, (1, 0): 6, (1, 1): 3})
        assert gs.solve_top_kernel(m, 6, anchor=0) == [1, 2]

    def test_degenerate_kernel_is_structural_failure(self):
        m = gs.SparseIntMatrix(2, {(0, 0): 5, (1, 1): 5})
        with pytest.raises(StructuralFailureError):
            gs.solve_top_kernel(m, 5, anchor=0)

    def test_rational_kernel_reported_exactly(self):
        # eigenvalue 4 of [[2, 3], [2, 1]] has eigenvector (3, 2): anchored at
        # the first entry the second one is 2/3.
        m = gs.SparseIntMatrix(2, {(0, 0): 2, (0, 1): 3, (1, 0): 2, (1, 1): 1})
        assert gs.solve_top_kernel(m, 4, anchor=0) == [1, Fraction(2, 3)]


class TestGroundVector:
    def test_n1(self):
        state = gs.ground_vector(1)
        assert state.components == (1,) and state.sizes == (1,)

    def test_n3_reduced(self):
        state = gs.ground_vector(3)
        by_rep = {lp.LinkPattern(m): c for m, c in zip(state.reps, state.components)}
        assert by_rep[lp.LinkPattern.from_text("()()()")] == 2
        assert state.component_of(lp.nested_pattern(3)) == 1
        assert state.weighted_sum() == 7

    def test_n4_values(self):
        state = gs.ground_vector(4)
        assert sorted(state.components) == [1, 3, 7]
        assert state.weighted_sum() == 42
        assert sorted(zip(state.components, state.sizes)) == [(1, 4), (3, 8), (7, 2)]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_structure(self, n):
        state = gs.ground_vector(n)
        assert all(isinstance(c, int) and c > 0 for c in state.components)
        assert state.component_of(lp.nested_pattern(n)) == 1
        assert state.weighted_sum() == fg.a_total(n)
        if n >= 2:
            assert state.max_component() == fg.a_total(n - 1)

    def test_exact_eigen_equation(self):
        # independent re-verification: multiply the reduced matrix back
        for n in (3, 5, 7):
            state = gs.ground_vector(n)
            m = gs.build_reduced_hamiltonian(n)
            vec = list(state.components)
            assert m.mul_vector(vec) == [2 * n * v for v in vec]

    @pytest.mark.parametrize("n", range(2, 6))
    def test_full_matches_reduced(self, n):
        full = gs.ground_vector(n, basis="full")
        red = gs.ground_vector(n)
        for p in lp.enumerate_link_patterns(n):
            assert full.component_of(p) == red.component_of(p)
        h = gs.build_hamiltonian(n)
        vec = [red.component_of(lp.LinkPattern(m)) for m in lp.enumerate_matches(n)]
        assert h.mul_vector(vec) == [2 * n * v for v in vec]

    def test_full_basis_constant_on_orbits(self):
        full = gs.ground_vector(5, basis="full")
        for orb in lp.orbits(5):
            assert len({full.component_of(p) for p in orb.members}) == 1

    def test_basis_validation(self):
        with pytest.raises(ValueError):
            gs.ground_vector(3, basis="diagonal")

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            gs.ground_vector(3).component_of(lp.nested_pattern(4))


class TestComponentsAndInclusiveSums:
    def test_component_examples(self):
        assert gs.component(4, lp.nested_pattern(4)) == 1
        mixed = lp.LinkPattern.from_text("()()(())")
        assert gs.component(4, mixed) == 3

    def test_inclusive_examples(self):
        assert gs.inclusive_count(3, [(1, 2)]) == 3
        assert gs.inclusive_count(4, [(1, 2)]) == 17
        assert gs.inclusive_count(4, []) == fg.a_total(4)

    def test_inclusive_validation(self):
        with pytest.raises(ValueError):
            gs.inclusive_count(3, [(1, 3), (2, 5)])  # crossing
        with pytest.raises(ValueError):
            gs.inclusive_count(3, [(1, 2), (2, 3)])  # shared endpoint
        with pytest.raises(ValueError):
            gs.inclusive_count(3, [(0, 2)])  # out of range


class TestCache:
    def test_disk_roundtrip(self, tmp_path):
        gs.set_cache_dir(tmp_path)
        try:
            gs._memory_cache.clear()
            first = gs.ground_vector(4)
            files = list(tmp_path.glob("ground-n4-reduced.json"))
            assert len(files) == 1
            gs._memory_cache.clear()
            hits = gs.cache_hits
            again = gs.ground_vector(4)
            assert again == first
            assert gs.cache_hits == hits + 1
        finally:
            gs.set_cache_dir(None)

    def test_tampered_cache_is_recomputed(self, tmp_path):
        gs.set_cache_dir(tmp_path)
        try:
            gs._memory_cache.clear()
            state = gs.ground_vector(3)
            path = tmp_path / "ground-n3-reduced.json"
            payload = json.loads(path.read_text())
            payload["record"]["orbits"][0]["component"] = "999"
            path.write_text(json.dumps(payload))
            gs._memory_cache.clear()
            fresh = gs.ground_vector(3)
            assert fresh == state  # checksum mismatch forced a recompute
        finally:
            gs.set_cache_dir(None)

    def test_env_var_respected(self, tmp_path, monkeypatch):
        gs.set_cache_dir(None)
        monkeypatch.setenv(gs.CACHE_ENV_VAR, str(tmp_path / "envcache"))
        try:
            gs._memory_cache.clear()
            gs.ground_vector(2)
            assert (tmp_path / "envcache" / "ground-n2-reduced.json").exists()
        finally:
            gs.set_cache_dir(None)
