# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Backtracking kernel, compiled implementation.

Line-for-line twin of ``_kernel_py.search``; see that module for the
contract.  Node counts, pruning counts, stamps and solution order must match
exactly.
"""

from libc.stdlib cimport calloc, free

cdef enum:
    DONE = 0
    FIRST = 1
    BUDGET = 2


cdef class _State:
    cdef int n, m, total, nch, npre, internal, disjoint, find_all, depth_limit
    cdef long long budget, nodes, pruned
    cdef int stop
    cdef int *sub
    cdef int *sizes
    cdef int *start
    cdef int *chan
    cdef int *bound
    cdef int *tie
    cdef int *zero_first
    cdef int *counts
    cdef int *used
    cdef int *pl
    cdef int *owner
    cdef int *touched
    cdef int *prefix
    cdef list sols
    cdef list pres

    def __cinit__(self):
        self.sub = NULL
        self.sizes = NULL
        self.start = NULL
        self.chan = NULL
        self.bound = NULL
        self.tie = NULL
        self.zero_first = NULL
        self.counts = NULL
        self.used = NULL
        self.pl = NULL
        self.owner = NULL
        self.touched = NULL
        self.prefix = NULL

    def __dealloc__(self):
        free(self.sub)
        free(self.sizes)
        free(self.start)
        free(self.chan)
        free(self.bound)
        free(self.tie)
        free(self.zero_first)
        free(self.counts)
        free(self.used)
        free(self.pl)
        free(self.owner)
        free(self.touched)
        free(self.prefix)

    cdef int apply(self, int i, int pos, int x):
        cdef int t = 0, q, y, ci, cj, a_, b_, lim, r
        cdef int bad = 0
        cdef int n = self.n
        if self.internal:
            ci = self.chan[i] * n
            lim = self.bound[self.chan[i]]
            for q in range(self.start[i], pos):
                y = self.pl[q]
                a_ = ci + self.sub[x * n + y]
                b_ = ci + self.sub[y * n + x]
                self.counts[a_] += 1
                self.touched[t] = a_
                t += 1
                if self.counts[a_] > lim:
                    bad = 1
                self.counts[b_] += 1
                self.touched[t] = b_
                t += 1
                if self.counts[b_] > lim:
                    bad = 1
                if bad:
                    break
        else:
            ci = self.chan[i] * n
            lim = self.bound[self.chan[i]]
            for q in range(self.start[i]):
                y = self.pl[q]
                cj = self.chan[self.owner[q]]
                a_ = ci + self.sub[x * n + y]
                b_ = cj * n + self.sub[y * n + x]
                self.counts[a_] += 1
                self.touched[t] = a_
                t += 1
                self.counts[b_] += 1
                self.touched[t] = b_
                t += 1
                if self.counts[a_] > lim or self.counts[b_] > self.bound[cj]:
                    bad = 1
                    break
        if bad:
            for r in range(t):
                self.counts[self.touched[r]] -= 1
            return -1
        return t

    cdef void unapply(self, int i, int pos, int x):
        cdef int q, y, ci
        cdef int n = self.n
        ci = self.chan[i] * n
        if self.internal:
            for q in range(self.start[i], pos):
                y = self.pl[q]
                self.counts[ci + self.sub[x * n + y]] -= 1
                self.counts[ci + self.sub[y * n + x]] -= 1
        else:
            for q in range(self.start[i]):
                y = self.pl[q]
                self.counts[ci + self.sub[x * n + y]] -= 1
                self.counts[self.chan[self.owner[q]] * n + self.sub[y * n + x]] -= 1

    cdef list snapshot(self, int upto):
        cdef int q
        return [self.pl[q] for q in range(upto)]

    cdef void rec(self, int i, int p, int eq):
        cdef int pos, k, lo, hi, x, prev, neq, replay
        if p == self.sizes[i]:
            i += 1
            p = 0
            eq = 1
            if i == self.m:
                self.sols.append((self.nodes, self.snapshot(self.total)))
                if not self.find_all:
                    self.stop = FIRST
                return
        pos = self.start[i] + p
        k = self.sizes[i]
        if p == 0:
            if self.zero_first[i]:
                lo = 0
                hi = 0
            elif self.tie[i]:
                lo = self.pl[self.start[i - 1]] + (1 if self.disjoint else 0)
                hi = self.n - k
            else:
                lo = 0
                hi = self.n - k
        else:
            lo = self.pl[pos - 1] + 1
            hi = self.n - (k - p)
        if self.tie[i] and not self.disjoint and eq and i > 0:
            prev = self.pl[self.start[i - 1] + p]
            if lo < prev:
                lo = prev
        replay = pos < self.npre
        if replay:
            lo = self.prefix[pos]
            hi = lo
        x = lo
        while x <= hi:
            if self.disjoint and self.used[x]:
                x += 1
                continue
            if self.apply(i, pos, x) < 0:
                self.pruned += 1
                x += 1
                continue
            if not replay:
                if self.nodes == self.budget:
                    self.unapply(i, pos, x)
                    self.stop = BUDGET
                    return
                self.nodes += 1
            self.pl[pos] = x
            self.used[x] = 1
            neq = 1 if (eq and i > 0 and self.tie[i] and not self.disjoint
                        and x == self.pl[self.start[i - 1] + p]) else 0
            if self.depth_limit > 0 and pos + 1 == self.depth_limit and not replay:
                self.pres.append((self.nodes, self.snapshot(pos + 1)))
            else:
                self.rec(i, p + 1, neq)
            self.used[x] = 0
            self.unapply(i, pos, x)
            if self.stop:
                return
            x += 1


cdef int *_fill(list values, int size) except NULL:
    cdef int *buf = <int *> calloc(size if size > 0 else 1, sizeof(int))
    cdef int q
    if buf == NULL:
        raise MemoryError()
    for q in range(len(values)):
        buf[q] = values[q]
    return buf


def search(n, sub, sizes, chan, bound, internal, disjoint, tie, zero_first,
           find_all, budget, depth_limit, prefix):
    """Return (status, nodes, pruned, solutions, prefixes); see ``_kernel_py``."""
    cdef _State s = _State()
    cdef int i, q
    sizes = list(sizes)
    s.n = n
    s.m = len(sizes)
    s.total = sum(sizes)
    s.nch = (max(chan) + 1) if chan else 1
    s.npre = len(prefix)
    s.internal = 1 if internal else 0
    s.disjoint = 1 if disjoint else 0
    s.find_all = 1 if find_all else 0
    s.depth_limit = depth_limit
    s.budget = budget
    s.nodes = 0
    s.pruned = 0
    s.stop = DONE
    s.sols = []
    s.pres = []
    s.sub = _fill(list(sub), n * n)
    s.sizes = _fill(sizes, s.m)
    starts = [0]
    acc = 0
    for k in sizes:
        acc += k
        starts.append(acc)
    s.start = _fill(starts, s.m + 1)
    s.chan = _fill(list(chan), s.m)
    s.bound = _fill(list(bound), s.nch)
    s.tie = _fill(list(tie), s.m)
    s.zero_first = _fill(list(zero_first), s.m)
    s.counts = _fill([], s.nch * n)
    s.used = _fill([], n)
    s.pl = _fill([], s.total)
    owner = [i for i in range(s.m) for _ in range(sizes[i])]
    s.owner = _fill(owner, s.total)
    s.touched = _fill([], 2 * s.total + 2)
    s.prefix = _fill(list(prefix), s.npre)
    if s.m:
        s.rec(0, 0, 1)
    return s.stop, s.nodes, s.pruned, s.sols, s.pres
