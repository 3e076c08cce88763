import json

import numpy as np
import pytest

from maskboost.introspect import (DumpError, cooc_path_mean, load_dump,
                                  mean_tree_depth, node_pair_availability,
                                  path_availability, write_dump)
from maskboost.model_dump import DumpTree, ModelDump


def split_node(nid, feat, thresh, cover, left, right):
    return {"id": nid, "kind": "split", "feature_index": feat,
            "feature_name": f"f{feat}", "threshold": thresh, "cover": cover,
            "left": left, "right": right, "leaf_weight": None}


def leaf_node(nid, cover, weight=0.1):
    return {"id": nid, "kind": "leaf", "feature_index": None,
            "feature_name": None, "threshold": None, "cover": cover,
            "left": None, "right": None, "leaf_weight": weight}


def doc_of(trees, names=("f0", "f1", "f2")):
    return {"format": "maskboost-ensemble", "version": 1, "config": {},
            "base_margin": 0.0, "best_iteration": len(trees),
            "feature_names": list(names),
            "trees": [{"nodes": nodes} for nodes in trees]}


def worked_example_tree():
    """Root splits on f0; left child splits on f1 over two leaves with
    covers 2 and 2; right child is a leaf with cover 4."""
    return [
        split_node(0, 0, 0.5, 8.0, 1, 2),
        split_node(1, 1, 0.3, 4.0, 3, 4),
        leaf_node(2, 4.0),
        leaf_node(3, 2.0),
        leaf_node(4, 2.0),
    ]


def load(trees, names=("f0", "f1", "f2")):
    return load_dump(json.dumps(doc_of(trees, names)))


def test_cooc_worked_example():
    dump = load([worked_example_tree()])
    assert cooc_path_mean(dump, 0, 1) == pytest.approx(0.5)


def test_cooc_duplicated_trees_unchanged():
    dump = load([worked_example_tree()] * 3)
    assert cooc_path_mean(dump, 0, 1) == pytest.approx(0.5)


def test_cooc_single_feature_trees_are_zero():
    tree = [split_node(0, 0, 0.0, 10.0, 1, 2), leaf_node(1, 5.0),
            leaf_node(2, 5.0)]
    dump = load([tree])
    assert cooc_path_mean(dump, 0, 1) == 0.0


def test_cooc_symmetry_and_bounds():
    dump = load([worked_example_tree()])
    assert cooc_path_mean(dump, 0, 1) == cooc_path_mean(dump, 1, 0)
    assert 0.0 <= cooc_path_mean(dump, 0, 1) <= 1.0


def test_cooc_is_one_when_both_on_every_path():
    tree = [split_node(0, 0, 0.0, 8.0, 1, 2),
            split_node(1, 1, 0.0, 4.0, 3, 4),
            split_node(2, 1, 0.0, 4.0, 5, 6),
            leaf_node(3, 1.0), leaf_node(4, 3.0),
            leaf_node(5, 2.0), leaf_node(6, 2.0)]
    dump = load([tree])
    assert cooc_path_mean(dump, 0, 1) == 1.0


def test_cooc_single_leaf_tree_counts_as_zero():
    dump = load([worked_example_tree(), [leaf_node(0, 9.0)]])
    assert cooc_path_mean(dump, 0, 1) == pytest.approx(0.25)


def test_cooc_pooled_variant():
    # one co-usage tree (4 of 8 cover) plus one single-feature tree
    other = [split_node(0, 2, 0.0, 8.0, 1, 2), leaf_node(1, 4.0),
             leaf_node(2, 4.0)]
    dump = load([worked_example_tree(), other])
    assert cooc_path_mean(dump, 0, 1) == pytest.approx(0.25)
    assert cooc_path_mean(dump, 0, 1, pooled=True) == pytest.approx(4 / 16)


def test_path_availability_values():
    assert path_availability(1.0, 5) == 1.0
    assert path_availability(0.8, 3) == pytest.approx(0.992)
    assert path_availability(0.6, 4) == pytest.approx(1 - 0.4 ** 4)


def test_path_availability_monte_carlo(rng):
    s, length, trials = 0.6, 4, 10 ** 6
    hits = (rng.random((trials, length)) < s).any(axis=1).mean()
    assert hits == pytest.approx(path_availability(s, length), abs=0.001)


def test_path_availability_monotone():
    svals = np.linspace(0.05, 1.0, 20)
    av = [path_availability(s, 3) for s in svals]
    assert (np.diff(av) > 0).all()
    lv = [path_availability(0.3, k) for k in range(1, 8)]
    assert (np.diff(lv) > 0).all()


def test_node_pair_availability_values():
    assert node_pair_availability(1.0, 7) == 1.0
    assert node_pair_availability(0.5, 4) == pytest.approx(2 * 1 / (4 * 3))
    # large feature count approaches s^2
    assert node_pair_availability(0.8, 122) == pytest.approx(0.64, abs=0.01)


def test_node_pair_availability_monte_carlo(rng):
    s, p, trials = 0.5, 10, 200_000
    k = max(1, round(s * p))
    both = 0
    for _ in range(trials):
        pick = rng.choice(p, size=k, replace=False)
        if 0 in pick and 1 in pick:
            both += 1
    assert both / trials == pytest.approx(node_pair_availability(s, p),
                                          abs=0.005)


def test_load_dump_round_trip():
    text = json.dumps(doc_of([worked_example_tree()]), indent=1)
    # canonical writer output survives a load/write cycle byte for byte
    assert write_dump(load_dump(text)) == text


def test_load_dump_missing_child_names_node():
    bad = worked_example_tree()
    bad[0]["right"] = 9
    with pytest.raises(DumpError, match="node 0.*9"):
        load([bad])


def test_load_dump_rejects_nonpositive_cover():
    bad = worked_example_tree()
    bad[2]["cover"] = 0.0
    with pytest.raises(DumpError, match="cover"):
        load([bad])


def test_load_dump_rejects_unreachable_node():
    tree = [split_node(0, 0, 0.5, 8.0, 1, 2), leaf_node(1, 4.0),
            leaf_node(2, 4.0), leaf_node(3, 1.0)]
    with pytest.raises(DumpError, match="node 3"):
        load([tree])


def test_hand_written_three_node_tree():
    tree = [split_node(0, 1, 2.5, 6.0, 1, 2), leaf_node(1, 2.0, -0.3),
            leaf_node(2, 4.0, 0.7)]
    dump = load([tree])
    t = dump.trees[0]
    assert isinstance(t, DumpTree)
    assert t.n_nodes == 3
    assert t.feature[0] == 1 and t.threshold[0] == 2.5
    assert t.is_leaf(1) and t.leaf_weight[1] == -0.3
    assert t.is_leaf(2) and t.leaf_weight[2] == 0.7
    assert mean_tree_depth(dump) == 1.0
    assert dump.feature_index("f1") == 1
    assert dump.feature_index("nope") is None
