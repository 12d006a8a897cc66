import itertools
import json

import pytest

from tokenjump import (
    GadgetShapeError,
    Graph,
    Instance,
    Problem,
    ReconfSequence,
    Verdict,
    bfs_reconfig,
    gadget_vertex_count,
    isr_to_dsr,
    map_sequence_back,
    parse_instance,
    solve_dsr,
    verify_sequence,
)

import reference

P4 = parse_instance("p isr 4 3 2\ne 1 2\ne 2 3\ne 3 4\ns 1 3\nt 2 4\n")
P3 = parse_instance("p isr 3 2 2\ne 1 2\ne 2 3\ns 1 3\nt 1 3\n")


def test_vertex_count_formula_on_p3():
    gadget, gm = isr_to_dsr(P3)
    assert gadget.graph.n == gadget_vertex_count(3, 2, 2) == 42
    # replay the construction blocks
    assert gadget.graph.n == (
        gm.k * gm.n
        + gm.k * (gm.k + 2)
        + len(gm.guard_sets) * (gm.k + 2)
    )
    assert len(gm.guard_sets) == 3 + 2 * 2  # p = q cases plus ordered edge pairs


def test_k1_has_no_guards():
    inst = Instance(
        Problem.ISR, Graph(range(3), [(0, 1)]), 1, frozenset({2}), frozenset({2})
    )
    gadget, gm = isr_to_dsr(inst)
    assert gm.guard_sets == ()
    assert len(gm.forcer_sets) == 1 and len(gm.forcer_sets[0]) == 3
    assert gadget.graph.n == 3 + 3


def test_edgeless_guards_are_diagonal_only():
    inst = Instance(Problem.ISR, Graph(range(2)), 2, frozenset({0, 1}), frozenset({0, 1}))
    _, gm = isr_to_dsr(inst)
    assert [(g.p, g.q) for g in gm.guard_sets] == [(1, 1), (2, 2)]


def test_gadget_structure_is_as_documented():
    gadget, gm = isr_to_dsr(P3)
    g = gadget.graph
    for i in range(1, gm.k + 1):
        clique = gm.clique(i)
        for u, v in itertools.combinations(clique, 2):
            assert v in g.neighbor_set(u)
        for f in gm.forcer_sets[i - 1]:
            assert set(clique) <= g.neighbor_set(f)
    for guard in gm.guard_sets:
        excluded = {
            gm.clique_vertex[(guard.i, guard.p)],
            gm.clique_vertex[(guard.j, guard.q)],
        }
        expected = (set(gm.clique(guard.i)) | set(gm.clique(guard.j))) - excluded
        for v in guard.vertices:
            assert g.neighbor_set(v) == frozenset(expected)


def test_endpoints_follow_sorted_order():
    gadget, gm = isr_to_dsr(P4)
    assert gadget.source == {
        gm.clique_vertex[(1, 1)],
        gm.clique_vertex[(2, 3)],
    }
    assert gadget.target == {
        gm.clique_vertex[(1, 2)],
        gm.clique_vertex[(2, 4)],
    }


def dominating_sets_of_size(g, size):
    masks = {v: g.closed_neighbor_set(v) for v in g.vertices}
    full = set(g.vertex_set)
    out = []
    for combo in itertools.combinations(g.vertices, size):
        covered = set()
        for v in combo:
            covered |= masks[v]
        if covered == full:
            out.append(frozenset(combo))
    return out


def test_structural_claims_on_tiny_gadgets():
    for inst in reference.tiny_isr_corpus()[:12]:
        gadget, gm = isr_to_dsr(inst)
        g = gadget.graph
        assert g.n == gadget_vertex_count(inst.graph.n, inst.graph.m, inst.k)
        assert dominating_sets_of_size(g, inst.k - 1) == []
        position = gm.position_of
        for dom in dominating_sets_of_size(g, inst.k):
            cliques = sorted(position[v][0] for v in dom)
            assert cliques == list(range(1, inst.k + 1))
            projected = frozenset(position[v][1] - 1 for v in dom)
            assert len(projected) == inst.k
            assert reference.independent(inst.graph, projected)


def test_projection_direction_is_sound():
    # A gadget witness always projects to an original witness of equal length,
    # so gadget-yes implies original-yes and original-no implies gadget-no.
    for inst in reference.tiny_isr_corpus()[:25]:
        gadget, gm = isr_to_dsr(inst)
        ours = bfs_reconfig(inst)
        theirs = bfs_reconfig(gadget)
        if theirs.verdict is Verdict.YES:
            assert ours.verdict is Verdict.YES
            mapped = map_sequence_back(gm, theirs.sequence)
            assert verify_sequence(inst, mapped) is None
            assert mapped.length == theirs.sequence.length
            assert ours.sequence.length <= mapped.length
        if ours.verdict is Verdict.NO:
            assert theirs.verdict is Verdict.NO


def test_sorted_embedding_can_lose_reachability():
    # Known gap in the transformation: a gadget state fixes which clique holds
    # each solution vertex, and those assignments cannot be permuted without
    # leaving the dominating-set space.  Here {v2,v3} -> {v1,v2} needs the
    # token that sits in clique 2 to end on v1, but the embedded target puts
    # v1 in clique 1, so the gadget instance is a no while the original is a
    # yes.  Kept as a characterization of the implemented construction.
    g = Graph(range(3), [(0, 2)])
    inst = Instance(Problem.ISR, g, 2, frozenset({1, 2}), frozenset({0, 1}))
    gadget, _ = isr_to_dsr(inst)
    assert bfs_reconfig(inst).verdict is Verdict.YES
    assert bfs_reconfig(gadget).verdict is Verdict.NO


def test_map_sequence_back_round_trip_on_p4():
    gadget, gm = isr_to_dsr(P4)
    result = solve_dsr(gadget)
    assert result.outcome.verdict is Verdict.YES
    mapped = map_sequence_back(gm, result.outcome.sequence)
    assert verify_sequence(P4, mapped) is None
    assert mapped.length == result.outcome.sequence.length
    assert mapped.length == bfs_reconfig(P4).sequence.length


def test_map_sequence_back_trivial_and_swap():
    gadget, gm = isr_to_dsr(P4)
    single = ReconfSequence((gadget.source,))
    assert map_sequence_back(gm, single).sets == (P4.source,)
    # add c^i_q then remove c^i_p maps to remove v_p then add v_q
    c1 = {p: gm.clique_vertex[(1, p)] for p in range(1, 5)}
    c2 = {p: gm.clique_vertex[(2, p)] for p in range(1, 5)}
    start = frozenset({c1[1], c2[3]})
    seq = ReconfSequence(
        (start, start | {c2[4]}, (start | {c2[4]}) - {c2[3]})
    )
    mapped = map_sequence_back(gm, seq)
    assert [sorted(s) for s in mapped.sets] == [[0, 2], [0], [0, 3]]
    # valid steps throughout; only the target endpoint differs from P4's
    assert verify_sequence(P4, mapped).condition == 1


def test_map_sequence_back_rejects_malformed_shapes():
    gadget, gm = isr_to_dsr(P4)
    with pytest.raises(GadgetShapeError):
        map_sequence_back(gm, ReconfSequence(()))
    forcer_vertex = gm.forcer_sets[0][0]
    bad_vertex = ReconfSequence((frozenset({forcer_vertex, gm.clique_vertex[(2, 3)]}),))
    with pytest.raises(GadgetShapeError):
        map_sequence_back(gm, bad_vertex)
    start = gadget.source
    dangling = ReconfSequence((start, start | {gm.clique_vertex[(1, 2)]}))
    with pytest.raises(GadgetShapeError):
        map_sequence_back(gm, dangling)
    cross = ReconfSequence(
        (
            start,
            start | {gm.clique_vertex[(1, 2)]},
            (start | {gm.clique_vertex[(1, 2)]}) - {gm.clique_vertex[(2, 3)]},
        )
    )
    with pytest.raises(GadgetShapeError, match="different cliques"):
        map_sequence_back(gm, cross)


def test_gadget_map_json_uses_file_coordinates():
    _, gm = isr_to_dsr(P3)
    payload = gm.to_json_dict()
    assert payload["k"] == 2 and payload["n"] == 3
    assert payload["cliques"][0] == [1, 2, 3]
    assert min(min(f) for f in payload["forcers"]) == 7
    assert json.dumps(payload)  # serializable
    seen = [v for guard in payload["guards"] for v in guard["vertices"]]
    assert len(seen) == len(set(seen))


def test_isr_to_dsr_rejects_wrong_inputs():
    dsr = parse_instance("p dsr 3 2 1\ne 1 2\ne 2 3\ns 2\nt 2\n")
    with pytest.raises(ValueError):
        isr_to_dsr(dsr)
    sparse_ids = Instance(
        Problem.ISR, Graph([0, 2]), 1, frozenset({0}), frozenset({2})
    )
    with pytest.raises(ValueError, match="contiguously"):
        isr_to_dsr(sparse_ids)
