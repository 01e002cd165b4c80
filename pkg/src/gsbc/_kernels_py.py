"""Pure-Python versions of the compiled kernels (same signatures and results)."""
import numpy as np


def walk_tree(probe_col, edge_start, edge_stop, edge_sym, edge_child, default_child, rows):
    """Run every row of ``rows`` down a flattened decision tree.

    Returns, per row, the leaf node reached, -1 when no edge applies, or -2
    when the tree probes an index that has no column in ``rows``.
    """
    probe_col = probe_col.tolist()
    edge_start = edge_start.tolist()
    edge_stop = edge_stop.tolist()
    edge_sym = edge_sym.tolist()
    edge_child = edge_child.tolist()
    default_child = default_child.tolist()
    # per-node dict of symbol -> child, built once
    tables = [
        dict(zip(edge_sym[edge_start[n]:edge_stop[n]], edge_child[edge_start[n]:edge_stop[n]]))
        for n in range(len(probe_col))
    ]
    res = []
    for row in rows.tolist():
        node = 0
        while True:
            col = probe_col[node]
            if col == -1:
                res.append(node)
                break
            if col < -1:
                res.append(-2)
                break
            node = tables[node].get(row[col], default_child[node])
            if node < 0:
                res.append(-1)
                break
    return np.asarray(res, dtype=np.int64)


def self_index_window(values):
    """out[j] = values[j + values[j]], or -1 where that index is past the end."""
    v = values.tolist()
    n = len(v)
    return np.asarray([v[j + v[j]] if j + v[j] < n else -1 for j in range(n)], dtype=np.int64)
