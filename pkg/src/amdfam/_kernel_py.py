"""Backtracking kernel, pure-Python implementation.

Semantics are shared with the compiled twin ``_kernel_c`` and must stay
identical, node for node.  Everything is on element indices; ``sub`` is the
flattened subtraction table (``sub[x * n + y]`` is the index of x - y).

A *node* is one successful placement of an element.  Placements replayed
from ``prefix`` are not nodes.  Before a node is counted the budget is
checked; reaching it stops the search with status ``BUDGET``.
"""

DONE = 0  # subtree fully explored
FIRST = 1  # stopped at the first solution
BUDGET = 2  # node budget reached


def search(n, sub, sizes, chan, bound, internal, disjoint, tie, zero_first,
           find_all, budget, depth_limit, prefix):
    """Return (status, nodes, pruned, solutions, prefixes).

    ``solutions`` and ``prefixes`` are lists of (stamp, elements) where
    stamp is the node counter when the item was recorded.  A positive
    ``depth_limit`` records each placement at that depth as a prefix
    instead of descending.  ``budget < 0`` means unlimited.
    """
    m = len(sizes)
    total = sum(sizes)
    start = [0] * (m + 1)
    for i in range(m):
        start[i + 1] = start[i] + sizes[i]
    nch = max(chan) + 1 if chan else 1
    counts = [0] * (nch * n)
    used = [0] * n
    pl = [0] * total
    owner = [0] * total
    for i in range(m):
        for p in range(start[i], start[i + 1]):
            owner[p] = i
    npre = len(prefix)
    st = {"nodes": 0, "pruned": 0, "stop": DONE}
    sols = []
    pres = []
    touched = [0] * (2 * total + 2)

    def apply(i, pos, x):
        """Add the differences created by x; return number touched or -1."""
        t = 0
        bad = False
        if internal:
            ci = chan[i] * n
            lim = bound[chan[i]]
            for q in range(start[i], pos):
                y = pl[q]
                for idx in (ci + sub[x * n + y], ci + sub[y * n + x]):
                    counts[idx] += 1
                    touched[t] = idx
                    t += 1
                    if counts[idx] > lim:
                        bad = True
                if bad:
                    break
        else:
            ci = chan[i] * n
            li = bound[chan[i]]
            for q in range(start[i]):
                y = pl[q]
                cj = chan[owner[q]]
                a_ = ci + sub[x * n + y]
                b_ = cj * n + sub[y * n + x]
                counts[a_] += 1
                touched[t] = a_
                t += 1
                counts[b_] += 1
                touched[t] = b_
                t += 1
                if counts[a_] > li or counts[b_] > bound[cj]:
                    bad = True
                    break
        if bad:
            for r in range(t):
                counts[touched[r]] -= 1
            return -1
        return t

    def unapply(i, pos, x):
        if internal:
            ci = chan[i] * n
            for q in range(start[i], pos):
                y = pl[q]
                counts[ci + sub[x * n + y]] -= 1
                counts[ci + sub[y * n + x]] -= 1
        else:
            ci = chan[i] * n
            for q in range(start[i]):
                y = pl[q]
                counts[ci + sub[x * n + y]] -= 1
                counts[chan[owner[q]] * n + sub[y * n + x]] -= 1

    def rec(i, p, eq):
        if p == sizes[i]:
            i += 1
            p = 0
            eq = 1
            if i == m:
                sols.append((st["nodes"], pl[:]))
                if not find_all:
                    st["stop"] = FIRST
                return
        pos = start[i] + p
        k = sizes[i]
        if p == 0:
            if zero_first[i]:
                lo, hi = 0, 0
            elif tie[i]:
                lo = pl[start[i - 1]] + (1 if disjoint else 0)
                hi = n - k
            else:
                lo, hi = 0, n - k
        else:
            lo = pl[pos - 1] + 1
            hi = n - (k - p)
        if tie[i] and not disjoint and eq and i > 0:
            prev = pl[start[i - 1] + p]
            if lo < prev:
                lo = prev
        if pos < npre:
            x = prefix[pos]
            lo = hi = x
        for x in range(lo, hi + 1):
            if disjoint and used[x]:
                continue
            if apply(i, pos, x) < 0:
                st["pruned"] += 1
                continue
            replay = pos < npre
            if not replay:
                if st["nodes"] == budget:
                    unapply(i, pos, x)
                    st["stop"] = BUDGET
                    return
                st["nodes"] += 1
            pl[pos] = x
            used[x] = 1
            neq = 1 if (eq and i > 0 and tie[i] and not disjoint and x == pl[start[i - 1] + p]) else 0
            if depth_limit > 0 and pos + 1 == depth_limit and not replay:
                pres.append((st["nodes"], pl[: pos + 1]))
            else:
                rec(i, p + 1, neq)
            used[x] = 0
            unapply(i, pos, x)
            if st["stop"]:
                return

    if m:
        rec(0, 0, 1)
    return st["stop"], st["nodes"], st["pruned"], sols, pres
