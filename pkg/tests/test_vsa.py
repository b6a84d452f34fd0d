"""Phasor algebra: identities, kernels, and randomized properties."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hyperseed import vsa
from hyperseed.vsa import (
    BundleVector,
    DimensionError,
    PhasorVector,
    UndefinedSimilarityError,
    bind,
    cosine_real,
    fpe_power,
    identity_phasor,
    make_rng,
    normalize,
    permute,
    random_phasor,
    superpose,
    unbind,
)


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest componentwise angular distance, accounting for wraparound."""
    delta = np.abs(vsa.centered_phases(vsa.wrap_phase(a - b)))
    return float(np.max(np.minimum(delta, vsa.TWO_PI - delta)))


phases_arrays = arrays(
    np.float64,
    st.integers(min_value=2, max_value=64),
    elements=st.floats(min_value=0.0, max_value=vsa.TWO_PI, exclude_max=True),
)


def paired_phases(draw, count):
    d = draw(st.integers(min_value=2, max_value=64))
    elems = st.floats(min_value=0.0, max_value=vsa.TWO_PI, exclude_max=True)
    return [PhasorVector(draw(arrays(np.float64, d, elements=elems)))
            for _ in range(count)]


@st.composite
def phasor_pairs(draw):
    return paired_phases(draw, 2)


@st.composite
def phasor_triples(draw):
    return paired_phases(draw, 3)


class TestConstruction:
    def test_identity_is_all_zero_phase(self):
        v = identity_phasor(8)
        assert v.d == 8
        assert np.all(v.phases == 0.0)
        assert np.all(v.real() == 1.0)

    def test_random_phasor_in_range(self):
        v = random_phasor(1000, make_rng(0))
        assert v.phases.shape == (1000,)
        assert np.all(v.phases >= 0.0)
        assert np.all(v.phases < vsa.TWO_PI)

    def test_random_phasor_is_seeded(self):
        a = random_phasor(64, make_rng(7))
        b = random_phasor(64, make_rng(7))
        assert np.array_equal(a.phases, b.phases)

    def test_phases_are_immutable(self):
        v = random_phasor(16, make_rng(0))
        with pytest.raises(ValueError):
            v.phases[0] = 1.0

    def test_rejects_non_vector_shapes(self):
        with pytest.raises(ValueError):
            PhasorVector(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            BundleVector(np.zeros(4), np.zeros(5))


class TestBindUnbind:
    def test_unbind_bind_identity(self):
        rng = make_rng(1)
        a = random_phasor(1000, rng)
        b = random_phasor(1000, rng)
        assert phase_distance(unbind(b, bind(a, b)).phases, a.phases) <= 1e-12

    def test_identity_is_neutral(self):
        v = random_phasor(256, make_rng(2))
        assert phase_distance(bind(v, identity_phasor(256)).phases,
                              v.phases) <= 1e-12

    def test_bound_result_dissimilar_to_inputs(self):
        rng = make_rng(3)
        a = random_phasor(10_000, rng)
        b = random_phasor(10_000, rng)
        c = bind(a, b)
        assert abs(cosine_real(c, a)) < 0.05
        assert abs(cosine_real(c, b)) < 0.05

    def test_binding_preserves_similarity_structure(self):
        # A common binding factor rotates every vector the same way, so the
        # pairwise similarity matrix should survive almost unchanged. The
        # family has graded similarity: vector i keeps a (1 - i/11) share of
        # a common base and replaces the rest with fresh random components.
        rng = make_rng(1)
        d = 1000
        base = random_phasor(d, rng)
        w = random_phasor(d, rng)
        vs = []
        for i in range(12):
            mask = rng.random(d) < i / 11.0
            fresh = random_phasor(d, rng)
            vs.append(PhasorVector(np.where(mask, fresh.phases, base.phases)))
        ws = [bind(v, w) for v in vs]
        before, after = [], []
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                before.append(cosine_real(vs[i], vs[j]))
                after.append(cosine_real(ws[i], ws[j]))
        r = np.corrcoef(before, after)[0, 1]
        assert r > 0.99

    def test_unbind_bundle_preserves_magnitudes(self):
        rng = make_rng(5)
        bundle = superpose([random_phasor(512, rng) for _ in range(5)])
        key = random_phasor(512, rng)
        out = unbind(key, bundle)
        mag_in = np.hypot(bundle.re, bundle.im)
        mag_out = np.hypot(out.re, out.im)
        assert np.allclose(mag_in, mag_out, atol=1e-12)

    def test_dimension_mismatch_raises(self):
        rng = make_rng(6)
        with pytest.raises(DimensionError):
            bind(random_phasor(8, rng), random_phasor(9, rng))
        with pytest.raises(DimensionError):
            unbind(random_phasor(8, rng), random_phasor(9, rng))

    @given(phasor_pairs())
    @settings(max_examples=50)
    def test_unbind_inverts_bind_property(self, pair):
        a, b = pair
        assert phase_distance(unbind(b, bind(a, b)).phases, a.phases) <= 1e-9

    @given(phasor_pairs())
    @settings(max_examples=50)
    def test_bind_commutes(self, pair):
        a, b = pair
        assert phase_distance(bind(a, b).phases, bind(b, a).phases) <= 1e-9

    @given(phasor_triples())
    @settings(max_examples=50)
    def test_bind_associates(self, triple):
        a, b, c = triple
        left = bind(bind(a, b), c)
        right = bind(a, bind(b, c))
        assert phase_distance(left.phases, right.phases) <= 1e-9


class TestSuperposeNormalize:
    def test_superpose_is_componentwise_complex_sum(self):
        rng = make_rng(7)
        vs = [random_phasor(64, rng) for _ in range(3)]
        out = superpose(vs)
        assert np.allclose(out.re, sum(np.cos(v.phases) for v in vs))
        assert np.allclose(out.im, sum(np.sin(v.phases) for v in vs))

    def test_superpose_similar_to_summands(self):
        rng = make_rng(8)
        vs = [random_phasor(10_000, rng) for _ in range(3)]
        out = superpose(vs)
        for v in vs:
            assert cosine_real(out, v) > 0.4

    def test_superpose_empty_raises(self):
        with pytest.raises(ValueError):
            superpose([])

    def test_normalize_recovers_phases(self):
        v = random_phasor(256, make_rng(9))
        bundle = BundleVector(3.0 * v.real(), 3.0 * v.imag())
        assert phase_distance(normalize(bundle).phases, v.phases) <= 1e-9

    def test_normalize_passes_through_phasor(self):
        v = random_phasor(16, make_rng(10))
        assert normalize(v) is v


class TestPermute:
    def test_permute_is_cyclic_roll(self):
        v = PhasorVector(np.array([0.1, 0.2, 0.3, 0.4]))
        assert np.allclose(permute(v, 1).phases, [0.4, 0.1, 0.2, 0.3])

    def test_permute_composes_additively(self):
        v = random_phasor(64, make_rng(11))
        assert np.array_equal(permute(permute(v, 3), 4).phases,
                              permute(v, 7).phases)

    def test_full_cycle_is_identity(self):
        v = random_phasor(32, make_rng(12))
        assert np.array_equal(permute(v, 32).phases, v.phases)

    def test_permuted_vector_dissimilar(self):
        v = random_phasor(10_000, make_rng(13))
        assert abs(cosine_real(permute(v, 1), v)) < 0.05

    @given(phases_arrays, st.integers(min_value=-8, max_value=8))
    @settings(max_examples=50)
    def test_permute_distributes_over_bind(self, phases, k):
        a = PhasorVector(phases)
        b = PhasorVector(phases[::-1].copy())
        left = permute(bind(a, b), k)
        right = bind(permute(a, k), permute(b, k))
        assert phase_distance(left.phases, right.phases) <= 1e-9


class TestFractionalPower:
    def test_zero_exponent_gives_identity(self):
        v = random_phasor(128, make_rng(14))
        assert phase_distance(fpe_power(v, 0.0).phases,
                              identity_phasor(128).phases) <= 1e-12

    def test_unit_exponent_preserves_vector(self):
        v = random_phasor(128, make_rng(15))
        assert phase_distance(fpe_power(v, 1.0).phases, v.phases) <= 1e-12

    def test_additivity(self):
        # fpe(b, s) bound with fpe(b, t) equals fpe(b, s + t).
        base = random_phasor(1000, make_rng(16))
        for s, t in ((0.3, 0.4), (1.2, -0.5), (2.0, 2.0), (-0.7, 0.1)):
            combined = bind(fpe_power(base, s), fpe_power(base, t))
            direct = fpe_power(base, s + t)
            assert phase_distance(combined.phases, direct.phases) <= 1e-9

    @given(st.floats(min_value=-4.0, max_value=4.0),
           st.floats(min_value=-4.0, max_value=4.0))
    @settings(max_examples=50)
    def test_additivity_property(self, s, t):
        base = random_phasor(256, make_rng(17))
        combined = bind(fpe_power(base, s), fpe_power(base, t))
        assert phase_distance(combined.phases,
                              fpe_power(base, s + t).phases) <= 1e-9

    def test_kernel_matches_quadrature_oracle(self):
        # The real-part cosine of fpe(b, a) vs fpe(b, b_) has a closed
        # expectation over phi ~ U(-pi, pi); evaluate it by quadrature and
        # compare at d=10000, where sampling noise is ~0.01.
        from scipy.integrate import quad

        def oracle(ea, eb):
            num = quad(lambda p: np.cos(ea * p) * np.cos(eb * p),
                       -np.pi, np.pi)[0]
            na = quad(lambda p: np.cos(ea * p) ** 2, -np.pi, np.pi)[0]
            nb = quad(lambda p: np.cos(eb * p) ** 2, -np.pi, np.pi)[0]
            return num / np.sqrt(na * nb)

        d = 10_000
        base = random_phasor(d, make_rng(18))
        for ea, eb in ((1.0, 1.0), (1.0, 1.25), (1.0, 1.5), (1.0, 2.0),
                       (0.0, 0.5), (0.5, 0.9), (2.0, 4.0), (3.0, 3.3)):
            measured = cosine_real(fpe_power(base, ea), fpe_power(base, eb))
            assert measured == pytest.approx(oracle(ea, eb), abs=0.03)

    def test_kernel_first_zero_near_unit_offset(self):
        d = 10_000
        base = random_phasor(d, make_rng(19))
        near = cosine_real(fpe_power(base, 1.0), fpe_power(base, 1.1))
        at_zero = cosine_real(fpe_power(base, 1.0), fpe_power(base, 2.0))
        assert near > 0.9
        assert abs(at_zero) < 0.05

    def test_rejects_non_finite_exponent(self):
        v = random_phasor(8, make_rng(20))
        with pytest.raises(ValueError):
            fpe_power(v, float("nan"))


class TestCosineReal:
    def test_self_similarity_is_one(self):
        v = random_phasor(512, make_rng(21))
        assert cosine_real(v, v) == pytest.approx(1.0, abs=1e-12)

    def test_quasi_orthogonality_of_random_pairs(self):
        rng = make_rng(22)
        sims = [cosine_real(random_phasor(10_000, rng),
                            random_phasor(10_000, rng))
                for _ in range(1000)]
        assert max(abs(s) for s in sims) < 0.05

    def test_zero_norm_raises(self):
        z = BundleVector(np.zeros(8), np.zeros(8))
        v = random_phasor(8, make_rng(23))
        with pytest.raises(UndefinedSimilarityError):
            cosine_real(z, v)

    def test_symmetry(self):
        rng = make_rng(24)
        a = random_phasor(256, rng)
        b = random_phasor(256, rng)
        assert cosine_real(a, b) == pytest.approx(cosine_real(b, a), abs=1e-12)
