import json
import math
import os

import numpy as np
import pytest

import ropelab


def test_bases_match_closed_forms():
    d = 16
    rope = ropelab.rope_basis(d)
    assert rope == pytest.approx([10000.0 ** (-2 * i / d) for i in range(d // 2)], rel=1e-15)
    power = ropelab.power_basis(d, k=0.5)
    assert power[-1] == 0.0
    assert power[0] == pytest.approx(rope[0] * math.sqrt(1 - 2 / d), rel=1e-15)
    trunc = ropelab.truncated_basis(128)
    assert trunc.count(0.0) == 9
    with pytest.raises(ropelab.InvalidDimension):
        ropelab.rope_basis(7)


def test_attention_matches_numpy():
    rng = np.random.default_rng(0)
    q, k, v = (rng.standard_normal((6, 8)) for _ in range(3))
    freqs = ropelab.rope_basis(8)
    pos = list(range(6))
    rq = ropelab.apply_rotary(q, pos, freqs)
    rk = ropelab.apply_rotary(k, pos, freqs)
    s = rq @ rk.T / math.sqrt(8)
    s[np.triu_indices(6, 1)] = -np.inf
    got = ropelab.scores(q, k, pos, freqs)
    assert np.allclose(got[np.tril_indices(6)], s[np.tril_indices(6)], atol=1e-12)
    p = np.exp(s - s.max(axis=1, keepdims=True))
    p /= p.sum(axis=1, keepdims=True)
    assert np.allclose(ropelab.attend(q, k, v, pos, freqs), p @ v, atol=1e-12)
    assert np.allclose(ropelab.softmax_rows(s), p, atol=1e-15)


def test_encoding_config_round_trip():
    cfg = ropelab.EncodingConfig.parse("scheme = power\nd = 8\nscale_train = 2\n")
    assert cfg.scheme == "power"
    assert cfg.positions(3, "train") == [0.0, 0.5, 1.0]
    assert ropelab.EncodingConfig.parse(cfg.to_text()).to_text() == cfg.to_text()
    with pytest.raises(ropelab.InvalidParameter):
        ropelab.EncodingConfig.parse("scheme = alibi\n")


def test_xpos_cancellation_and_overflow():
    q = ropelab.xpos_amplitudes(8, 700.0)
    k = ropelab.xpos_amplitudes(8, 200.0, key=True)
    zeta = (0 + 0.4) / 1.4
    assert q[0] * k[0] == pytest.approx(zeta ** (500 / 512), rel=1e-12)
    with pytest.raises(ropelab.NumericOverflow):
        ropelab.xpos_amplitudes(128, 32768.0, key=True, narrow=True)


def test_generators_and_scoring():
    line = json.loads(ropelab.gen_longchat_lines(20, 3))
    assert line["answer"] in line["prompt"]
    assert ropelab.gen_longchat_lines(20, 3) == ropelab.gen_longchat_lines(20, 3)
    mutated = ropelab.mutate_numeric_answer("1969", 1)
    assert mutated != "1969" and abs(int(mutated) - 1969) <= 10

    corpus = os.path.join(os.environ.get("ROPELAB_TEST_DATA", "tests/data"), "qa_sample.jsonl")
    data = ropelab.generate_dataset("altqa", 1, [600], ["start", "end"], ["end"], seed=5,
                                    corpus=corpus)
    samples = [json.loads(l) for l in data.splitlines()]
    assert len(samples) == 2
    outputs = "\n".join(json.dumps({"id": s["id"], "output": s["answer"]}) for s in samples)
    table = ropelab.score_table(data, outputs, buckets=[], format="csv")
    assert table.splitlines()[-1].endswith(",2,2,1.0000")
    with pytest.raises(ropelab.PairingError):
        ropelab.score_table(data, json.dumps({"id": "ghost", "output": "x"}))


def test_perplexity_with_python_provider():
    vocab = 256
    result = ropelab.perplexity(lambda toks: [-math.log(vocab)] * (len(toks) - 1),
                                list(range(1024)), 512, 256)
    assert result["windows"] == 2
    assert abs(result["perplexity"] - vocab) < 1e-9
    with pytest.raises(ropelab.InputError):
        ropelab.perplexity(lambda toks: [0.0] * (len(toks) - 1), [1, 2, 3], 512, 256)


def test_default_toy_run_text():
    text = ropelab.default_toy_run(2)
    assert "data_seed = 2007" in text
