import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from igstqa.distortions import gaussian_blur
from igstqa.errors import FeatureMismatchError, InputError
from igstqa.index import Config, delta_spatial, delta_stat, igstqa, score_pair
from igstqa.texture_features import RRFeatureSet, SubbandFeatures, extract_rr_features

NAMES = SubbandFeatures.names()


def make_set(domain="I", levels=2, **per_feature):
    """Feature set whose feature ``name`` takes values (H1..HL, V1..VL)."""
    fs = RRFeatureSet(domain=domain, levels=levels)
    keys = fs.keys()
    for k, key in enumerate(keys):
        vals = {n: float(per_feature[n][k]) if n in per_feature else 0.0 for n in NAMES}
        fs.features[key] = SubbandFeatures(**vals)
    return fs


def with_total(domain, total, levels=1):
    # one kurtosis difference of `total` across 2L subbands -> delta_stat == total
    return make_set(domain, levels, kurt=[total] * (2 * levels))


def test_delta_stat_example():
    ref = make_set(kurt=[1, 2, 3, 4])
    syn = make_set(kurt=[2, 2, 4, 3])
    assert delta_stat(ref, syn, "kurt") == pytest.approx(0.75, abs=1e-12)
    assert delta_stat(ref, ref, "kurt") == 0


def test_delta_stat_constant_shift():
    ref = make_set(levels=3, sigma=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6])
    syn = make_set(levels=3, sigma=[0.1 - 0.25, 0.2 - 0.25, 0.3 - 0.25, 0.4 - 0.25, 0.5 - 0.25,
                                    0.6 - 0.25])
    assert delta_stat(ref, syn, "sigma") == pytest.approx(0.25, abs=1e-15)


def test_delta_spatial_example():
    ref = make_set(g=[1, 3, 0, 0])
    syn = make_set(g=[2, 5, 1, 1])
    assert delta_spatial(ref, syn, "g") == pytest.approx(1.5, abs=1e-12)
    assert delta_spatial(ref, ref, "r") == 0


def test_delta_spatial_single_scale():
    ref = make_set(levels=3, r=[1, 1, 1, 2, 2, 2])
    syn = make_set(levels=3, r=[1, 1.8, 1, 2, 2, 2])
    assert delta_spatial(ref, syn, "r") == pytest.approx(0.4, abs=1e-15)


def test_mismatch_errors():
    with pytest.raises(FeatureMismatchError, match="feature set mismatch"):
        delta_stat(make_set("I"), make_set("IGM"), "kurt")
    with pytest.raises(FeatureMismatchError):
        delta_spatial(make_set(levels=2), make_set(levels=3), "g")
    with pytest.raises(FeatureMismatchError):
        igstqa([make_set("I")], [make_set("IGM")])
    with pytest.raises(InputError):
        delta_stat(make_set(), make_set(), "g")


def test_igstqa_examples():
    zero = [make_set("I"), make_set("IGM")]
    assert igstqa(zero, zero).value == 0.0
    ref = [with_total("I", 0.0), with_total("IGM", 0.0)]
    syn = [with_total("I", 0.01), with_total("IGM", 0.01)]
    assert igstqa(ref, syn, 100).value == pytest.approx(2 * math.log(2), abs=1e-12)
    q = igstqa([with_total("IGM", 0.0)], [with_total("IGM", 0.05)], 100)
    assert q.value == pytest.approx(math.log(6), abs=1e-12)
    assert q.domains == ("IGM",)


def test_invalid_alpha():
    a = [make_set()]
    for alpha in (0, -1, float("nan")):
        with pytest.raises(InputError, match="invalid alpha"):
            igstqa(a, a, alpha)
    with pytest.raises(InputError):
        Config(alpha=0)


feature_values = st.lists(st.floats(-50, 50), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(st.fixed_dictionaries({n: feature_values for n in NAMES}),
       st.fixed_dictionaries({n: feature_values for n in NAMES}))
def test_symmetry_and_identity(fa, fb):
    a = [make_set("I", **fa), make_set("IGM", **fb)]
    b = [make_set("I", **fb), make_set("IGM", **fa)]
    assert igstqa(a, b).value == igstqa(b, a).value
    assert igstqa(a, a).value == 0.0
    assert igstqa(a, b).value >= 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 3), st.floats(0.01, 5))
def test_monotone_in_each_feature_gap(name, k, bump):
    ref = [make_set("I", **{name: [0, 0, 0, 0]})]
    vals = [0.0, 0.0, 0.0, 0.0]
    vals[k] = 1.0
    lo = igstqa(ref, [make_set("I", **{name: vals})]).value
    vals[k] = 1.0 + bump
    hi = igstqa(ref, [make_set("I", **{name: vals})]).value
    assert hi > lo


def test_score_pair_identity_and_sizes(noise64):
    assert score_pair(noise64, noise64).value == 0.0
    big = np.random.default_rng(9).random((96, 96))
    q = score_pair(noise64, big)
    assert math.isfinite(q.value) and q.value > 0


def test_score_pair_equals_feature_path(noise64):
    syn = gaussian_blur(noise64, 1.0)
    cfg = Config(levels=3, alpha=80, domains="gradient")
    direct = score_pair(noise64, syn, cfg)
    via = igstqa(extract_rr_features(noise64, 3, ["IGM"]), extract_rr_features(syn, 3, ["IGM"]), 80)
    assert direct.value == via.value


def test_blur_ordering(noise64):
    assert score_pair(noise64, gaussian_blur(noise64, 2)).value > \
        score_pair(noise64, gaussian_blur(noise64, 0.5)).value


def test_deltas_reported(noise64):
    q = score_pair(noise64, gaussian_blur(noise64, 1))
    assert [d.domain for d in q.deltas] == ["I", "IGM"]
    assert q.value == pytest.approx(sum(math.log1p(100 * d.total()) for d in q.deltas), rel=1e-15)
    for d in q.deltas:
        assert min(d.dk, d.dsigma, d.dskew, d.dentropy, d.dg, d.dr) >= 0
