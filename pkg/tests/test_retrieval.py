import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import BY_GATE_EXAMPLE, BY_LIGHT_EXAMPLE, BY_PROTEINOID_EXAMPLE
from proteinoid_qr.errors import GrammarError
from proteinoid_qr.grammar import ByLight, ByProteinoid, LightBlock, ProteinoidBlock, parse
from proteinoid_qr.retrieval import RetrievalParams, gate_sequences, reconstruct, trace_filename, write_reconstruction
from proteinoid_qr.signal_model import GateKind, LightCondition, ProteinoidKind, StimulusSchedule, read_trace_csv
from proteinoid_qr.spike_gates import analyze_trace, detect_spikes

G, L, P = GateKind, LightCondition, ProteinoidKind


def test_by_proteinoid_example_gives_three_traces():
    msg = parse(BY_PROTEINOID_EXAMPLE, subject=P.GLU_PHE_HIS)
    traces = reconstruct(msg)
    assert [k[0].code for k in traces] == ["10", "11", "01"]
    assert all(k[1] is P.GLU_PHE_HIS for k in traces)
    assert all(t.duration_s == 7 * 3000.0 for t in traces.values())


def test_no_gate_block_is_spike_free():
    msg = ByLight(L.WHITE_AND_BLACK, (ProteinoidBlock(P.GLU_PHE_HIS, (G.NO_GATE,)),))
    (trace,) = reconstruct(msg).values()
    assert trace.duration_s == 3000.0
    assert len(detect_spikes(trace)) == 0


def test_by_gate_has_nothing_to_rebuild():
    with pytest.raises(GrammarError, match="no reconstructable sequence"):
        reconstruct(parse(BY_GATE_EXAMPLE))


def test_repeated_keys_are_joined():
    msg = ByProteinoid(P.PHE, (LightBlock(L.BLACK_AND_WHITE, (G.AND,)), LightBlock(L.BLACK_AND_WHITE, (G.OR, G.XOR))))
    assert gate_sequences(msg) == {(L.BLACK_AND_WHITE, P.PHE): [G.AND, G.OR, G.XOR]}


def test_by_light_example_reanalysis():
    msg = parse(BY_LIGHT_EXAMPLE)
    for (light, proteinoid), trace in reconstruct(msg).items():
        schedule = StimulusSchedule(light=light or L.WHITE_AND_BLACK)
        assert [a.gate for a in analyze_trace(trace, schedule)] == gate_sequences(msg)[light, proteinoid]


gates = st.lists(st.sampled_from(list(GateKind)), min_size=1, max_size=6).map(tuple)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(list(LightCondition)),
    st.lists(st.tuples(st.sampled_from(list(ProteinoidKind)), gates), min_size=1, max_size=4),
)
def test_reanalysis_recovers_sequences(light, blocks):
    msg = ByLight(light, tuple(ProteinoidBlock(p, g) for p, g in blocks))
    expected = gate_sequences(msg)
    for key, trace in reconstruct(msg).items():
        assert [a.gate for a in analyze_trace(trace, StimulusSchedule(light=light))] == expected[key]


def test_no_baseline_option():
    msg = ByLight(None, (ProteinoidBlock(P.PHE, (G.NO_GATE,)),))
    (trace,) = reconstruct(msg, RetrievalParams(baseline=False)).values()
    assert not np.any(trace.samples)


def test_params_validation():
    with pytest.raises(ValueError):
        RetrievalParams(sample_rate_hz=0)


def test_write_reconstruction(tmp_path):
    msg = parse(BY_PROTEINOID_EXAMPLE, subject=P.GLU_PHE_HIS)
    paths = write_reconstruction(msg, tmp_path / "out", RetrievalParams(sample_rate_hz=2.0))
    assert [p.name for p in paths] == [
        "by_proteinoid_33_10_33.csv",
        "by_proteinoid_33_11_33.csv",
        "by_proteinoid_33_01_33.csv",
    ]
    trace = read_trace_csv(paths[0])
    assert trace.sample_rate_hz == 2.0 and trace.duration_s == 21000.0


def test_filename_without_subject():
    msg = parse("3344")
    assert trace_filename(msg, (None, P.GLU_PHE_HIS)) == "by_light_none_none_33.csv"
