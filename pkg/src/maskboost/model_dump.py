"""Canonical JSON model dump: the contract between training and
structural analysis.

Top level: format tag, config snapshot, base_margin, best_iteration,
feature_names, trees. Each node records id, kind, feature_index,
feature_name, threshold, cover, left, right, leaf_weight (inapplicable
fields are null). Node ids are 0..n-1 with the root at 0.
"""
import json
from dataclasses import dataclass

import numpy as np

FORMAT_TAG = "maskboost-ensemble"

_NODE_KEYS = ("id", "kind", "feature_index", "feature_name", "threshold",
              "cover", "left", "right", "leaf_weight")


class DumpError(ValueError):
    pass


@dataclass
class DumpTree:
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    cover: np.ndarray
    leaf_weight: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    @property
    def weight(self) -> np.ndarray:
        return self.leaf_weight

    def is_leaf(self, nid: int) -> bool:
        return self.feature[nid] < 0

    def depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        best = 0
        for nid in range(self.n_nodes):
            if self.feature[nid] >= 0:
                depths[self.left[nid]] = depths[nid] + 1
                depths[self.right[nid]] = depths[nid] + 1
            elif depths[nid] > best:
                best = int(depths[nid])
        return best


@dataclass
class ModelDump:
    trees: list[DumpTree]
    base_margin: float
    best_iteration: int
    feature_names: list[str]
    config: dict

    def feature_index(self, name: str):
        if name in self.feature_names:
            return self.feature_names.index(name)
        return None


def _node_doc(tree, nid: int, feature_names) -> dict:
    feat = int(tree.feature[nid])
    if feat >= 0:
        return {
            "id": nid,
            "kind": "split",
            "feature_index": feat,
            "feature_name": feature_names[feat],
            "threshold": float(tree.threshold[nid]),
            "cover": float(tree.cover[nid]),
            "left": int(tree.left[nid]),
            "right": int(tree.right[nid]),
            "leaf_weight": None,
        }
    return {
        "id": nid,
        "kind": "leaf",
        "feature_index": None,
        "feature_name": None,
        "threshold": None,
        "cover": float(tree.cover[nid]),
        "left": None,
        "right": None,
        "leaf_weight": float(tree.weight[nid]),
    }


def _build_doc(trees, base_margin, best_iteration, feature_names,
               config_dict) -> dict:
    return {
        "format": FORMAT_TAG,
        "version": 1,
        "config": config_dict,
        "base_margin": float(base_margin),
        "best_iteration": int(best_iteration),
        "feature_names": list(feature_names),
        "trees": [
            {"nodes": [_node_doc(t, nid, feature_names)
                       for nid in range(t.n_nodes)]}
            for t in trees
        ],
    }


def ensemble_to_doc(model) -> dict:
    return _build_doc(model.trees[: model.best_iteration], model.base_margin,
                      model.best_iteration, model.feature_names,
                      model.config.to_dict())


def _doc_to_text(doc: dict) -> str:
    return json.dumps(doc, indent=1)


def ensemble_to_text(model) -> str:
    return _doc_to_text(ensemble_to_doc(model))


def _parse_tree(tdoc, ti: int, n_features: int) -> DumpTree:
    where = f"tree {ti}"
    nodes = tdoc.get("nodes")
    if not isinstance(nodes, list) or not nodes:
        raise DumpError(f"{where}: missing or empty node list")
    n = len(nodes)
    feature = np.full(n, -1, dtype=np.int32)
    threshold = np.full(n, np.nan)
    left = np.full(n, -1, dtype=np.int32)
    right = np.full(n, -1, dtype=np.int32)
    cover = np.zeros(n)
    weight = np.zeros(n)
    for doc in nodes:
        if not isinstance(doc, dict) or "id" not in doc:
            raise DumpError(f"{where}: node without id")
        nid = doc["id"]
        if not isinstance(nid, int) or not 0 <= nid < n:
            raise DumpError(f"{where}: node id {nid!r} out of range")
        kind = doc.get("kind")
        cov = doc.get("cover")
        if not isinstance(cov, (int, float)) or not cov > 0:
            raise DumpError(f"{where}, node {nid}: cover must be positive")
        cover[nid] = cov
        if kind == "split":
            for key in ("feature_index", "threshold", "left", "right"):
                if doc.get(key) is None:
                    raise DumpError(f"{where}, node {nid}: missing {key}")
            fi = doc["feature_index"]
            if not isinstance(fi, int) or not 0 <= fi < n_features:
                raise DumpError(f"{where}, node {nid}: bad feature_index {fi!r}")
            feature[nid] = fi
            threshold[nid] = doc["threshold"]
            for key, arr in (("left", left), ("right", right)):
                child = doc[key]
                if not isinstance(child, int) or not 0 <= child < n:
                    raise DumpError(
                        f"{where}, node {nid}: {key} child {child!r} missing")
                arr[nid] = child
        elif kind == "leaf":
            w = doc.get("leaf_weight")
            if not isinstance(w, (int, float)) or not np.isfinite(w):
                raise DumpError(f"{where}, node {nid}: bad leaf_weight")
            weight[nid] = w
        else:
            raise DumpError(f"{where}, node {nid}: unknown kind {kind!r}")

    seen = np.zeros(n, dtype=bool)
    stack = [0]
    while stack:
        nid = stack.pop()
        if seen[nid]:
            raise DumpError(f"{where}, node {nid}: reached twice (not a tree)")
        seen[nid] = True
        if feature[nid] >= 0:
            stack.append(int(left[nid]))
            stack.append(int(right[nid]))
    if not seen.all():
        orphan = int(np.flatnonzero(~seen)[0])
        raise DumpError(f"{where}, node {orphan}: unreachable from root")
    return DumpTree(feature=feature, threshold=threshold, left=left,
                    right=right, cover=cover, leaf_weight=weight)


def load_dump(text: str) -> ModelDump:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DumpError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise DumpError("missing format tag")
    names = doc.get("feature_names")
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise DumpError("missing feature_names")
    trees = [_parse_tree(t, i, len(names))
             for i, t in enumerate(doc.get("trees", []))]
    return ModelDump(trees=trees, base_margin=float(doc.get("base_margin", 0.0)),
                     best_iteration=int(doc.get("best_iteration", len(trees))),
                     feature_names=names, config=doc.get("config", {}))


def write_dump(dump: ModelDump) -> str:
    """Re-serialize a loaded dump; round-trips writer output exactly."""
    doc = _build_doc(dump.trees, dump.base_margin, dump.best_iteration,
                     dump.feature_names, dump.config)
    return _doc_to_text(doc)
