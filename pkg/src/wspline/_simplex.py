"""Network simplex for the dense bipartite transportation problem.

The transportation graph has one node per source atom, one per target atom
and an artificial root joined to every node by a big-M arc. Pivoting uses a
block search over the real arcs and the strongly feasible leaving-arc rule,
which rules out cycling on the (very common) degenerate problems with
uniform weights. The spanning tree is kept as child/sibling linked lists so
a pivot only revisits the subtree that moved; potentials in that subtree are
recomputed from their parents rather than shifted, which keeps round-off
from accumulating.
"""

import numba
import numpy as np

_UP = 1
_DOWN = -1

STATUS_OPTIMAL = 0
STATUS_MAX_ITER = 1
STATUS_UNBOUNDED = 2


@numba.njit(cache=True, nogil=True)
def _detach(u, parent, first_child, next_sib, prev_sib):
    p = parent[u]
    if prev_sib[u] != -1:
        next_sib[prev_sib[u]] = next_sib[u]
    else:
        first_child[p] = next_sib[u]
    if next_sib[u] != -1:
        prev_sib[next_sib[u]] = prev_sib[u]


@numba.njit(cache=True, nogil=True)
def _attach(u, p, parent, first_child, next_sib, prev_sib):
    parent[u] = p
    prev_sib[u] = -1
    next_sib[u] = first_child[p]
    if first_child[p] != -1:
        prev_sib[first_child[p]] = u
    first_child[p] = u


@numba.njit(cache=True, nogil=True)
def _refresh_subtree(top_node, parent, pred, pred_dir, arc_cost, depth, pi, first_child, next_sib, stack):
    # depth and potential of every node below (and including) top_node
    p = parent[top_node]
    depth[top_node] = depth[p] + 1
    pi[top_node] = pi[p] - pred_dir[top_node] * arc_cost[pred[top_node]]
    stack[0] = top_node
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        c = first_child[u]
        while c != -1:
            depth[c] = depth[u] + 1
            pi[c] = pi[u] - pred_dir[c] * arc_cost[pred[c]]
            stack[top] = c
            top += 1
            c = next_sib[c]


@numba.njit(cache=True, nogil=True)
def network_simplex(a, b, cost, max_iter):
    """Solve min <plan, cost> subject to plan 1 = a, plan^T 1 = b, plan >= 0.

    ``cost`` is expected to be scaled to [0, 1]. Returns the plan, a status
    code and the number of pivots performed.
    """
    m = a.shape[0]
    n = b.shape[0]
    mn = m * n
    root = m + n
    n_arcs = mn + root

    art_cost = 2.0 * (root + 1)
    tol = 32.0 * 2.220446049250313e-16 * art_cost

    flow = np.zeros(n_arcs)
    arc_cost = np.empty(n_arcs)
    for i in range(m):
        for j in range(n):
            arc_cost[i * n + j] = cost[i, j]
    for u in range(root):
        arc_cost[mn + u] = art_cost

    parent = np.empty(root + 1, dtype=np.int64)
    pred = np.empty(root + 1, dtype=np.int64)
    pred_dir = np.empty(root + 1, dtype=np.int64)
    depth = np.zeros(root + 1, dtype=np.int64)
    pi = np.zeros(root + 1)
    first_child = np.full(root + 1, -1, dtype=np.int64)
    next_sib = np.full(root + 1, -1, dtype=np.int64)
    prev_sib = np.full(root + 1, -1, dtype=np.int64)
    stack = np.zeros(root + 1, dtype=np.int64)

    # initial basis: sources push to the root, the root feeds the sinks
    for i in range(m):
        parent[i] = root
        pred[i] = mn + i
        pred_dir[i] = _UP
        flow[mn + i] = a[i]
    for j in range(n):
        u = m + j
        parent[u] = root
        pred[u] = mn + u
        pred_dir[u] = _DOWN
        flow[mn + u] = b[j]
    parent[root] = -1
    pred[root] = -1
    pred_dir[root] = 0
    for u in range(root):
        _attach(u, root, parent, first_child, next_sib, prev_sib)
        depth[u] = 1
        pi[u] = -pred_dir[u] * art_cost

    block = int(np.sqrt(mn))
    if block < 10:
        block = 10
    if block > mn:
        block = mn

    next_arc = 0
    iters = 0
    status = STATUS_OPTIMAL
    while True:
        # block search pricing over the real arcs
        in_arc = -1
        min_c = -tol
        e = next_arc
        i = e // n
        j = e - i * n
        cnt = 0
        for _ in range(mn):
            c = cost[i, j] + pi[i] - pi[m + j]
            if c < min_c:
                min_c = c
                in_arc = e
            e += 1
            j += 1
            if j == n:
                j = 0
                i += 1
                if i == m:
                    i = 0
                    e = 0
            cnt += 1
            if cnt == block:
                if in_arc >= 0:
                    break
                cnt = 0
        if in_arc < 0:
            break
        next_arc = e

        iters += 1
        if iters > max_iter:
            status = STATUS_MAX_ITER
            break

        first = in_arc // n
        second = m + (in_arc - first * n)

        u = first
        v = second
        while u != v:
            if depth[u] > depth[v]:
                u = parent[u]
            elif depth[v] > depth[u]:
                v = parent[v]
            else:
                u = parent[u]
                v = parent[v]
        join = u

        # strongly feasible leaving-arc rule: last blocking arc from the join
        delta = np.inf
        u_out = -1
        result = 0
        u = first
        while u != join:
            if pred_dir[u] == _UP:
                d = flow[pred[u]]
                if d < delta:
                    delta = d
                    u_out = u
                    result = 1
            u = parent[u]
        u = second
        while u != join:
            if pred_dir[u] == _DOWN:
                d = flow[pred[u]]
                if d <= delta:
                    delta = d
                    u_out = u
                    result = 2
            u = parent[u]
        if result == 0:
            status = STATUS_UNBOUNDED
            break

        if delta > 0.0:
            flow[in_arc] += delta
            u = first
            while u != join:
                flow[pred[u]] -= pred_dir[u] * delta
                u = parent[u]
            u = second
            while u != join:
                flow[pred[u]] += pred_dir[u] * delta
                u = parent[u]

        if result == 1:
            u_in = first
            v_in = second
            new_dir = _UP
        else:
            u_in = second
            v_in = first
            new_dir = _DOWN

        # re-hang the cut subtree: reverse the path u_in -> u_out
        u = u_in
        new_parent = v_in
        new_pred = in_arc
        while True:
            old_parent = parent[u]
            old_pred = pred[u]
            old_dir = pred_dir[u]
            _detach(u, parent, first_child, next_sib, prev_sib)
            _attach(u, new_parent, parent, first_child, next_sib, prev_sib)
            pred[u] = new_pred
            pred_dir[u] = new_dir
            if u == u_out:
                break
            new_parent = u
            new_pred = old_pred
            new_dir = -old_dir
            u = old_parent

        _refresh_subtree(u_in, parent, pred, pred_dir, arc_cost, depth, pi, first_child, next_sib, stack)

    plan = np.empty((m, n))
    for i in range(m):
        for j in range(n):
            plan[i, j] = flow[i * n + j]
    return plan, status, iters
