# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same API and results as ``_kernels_py``."""

from libc.stdlib cimport malloc, free, realloc
from libc.string cimport memmove

BACKEND = "cython"


cdef int _build_bst(tuple word, int n, int* label, int* left, int* right) except -1:
    cdef int size = 0, pos, a, node
    for pos in range(n - 1, -1, -1):
        a = word[pos]
        label[size] = a
        left[size] = -1
        right[size] = -1
        if size:
            node = 0
            while True:
                if a <= label[node]:
                    if left[node] < 0:
                        left[node] = size
                        break
                    node = left[node]
                else:
                    if right[node] < 0:
                        right[node] = size
                        break
                    node = right[node]
        size += 1
    return 0


def sylvester_reading(word):
    cdef tuple w = tuple(word)
    cdef int n = len(w)
    if n == 0:
        return ()
    cdef int* buf = <int*> malloc(6 * n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef int* label = buf
    cdef int* left = buf + n
    cdef int* right = buf + 2 * n
    cdef int* stack = buf + 3 * n
    cdef int* seen = buf + 4 * n
    cdef int* out = buf + 5 * n
    cdef int top = 0, nout = 0, node, i
    try:
        _build_bst(w, n, label, left, right)
        stack[0] = 0
        seen[0] = 0
        top = 1
        while top:
            top -= 1
            node = stack[top]
            if seen[top]:
                out[nout] = label[node]
                nout += 1
                continue
            seen[top] = 1
            top += 1
            if right[node] >= 0:
                stack[top] = right[node]
                seen[top] = 0
                top += 1
            if left[node] >= 0:
                stack[top] = left[node]
                seen[top] = 0
                top += 1
        return tuple([out[i] for i in range(nout)])
    finally:
        free(buf)


def sylvester_left_branch(word):
    cdef tuple w = tuple(word)
    cdef int n = len(w)
    if n == 0:
        return -1
    cdef int* buf = <int*> malloc(4 * n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef int* label = buf
    cdef int* left = buf + n
    cdef int* right = buf + 2 * n
    cdef int* spine = buf + 3 * n
    cdef int m = 1, k = 0, i
    try:
        _build_bst(w, n, label, left, right)
        spine[0] = 0
        while left[spine[m - 1]] >= 0:
            spine[m] = left[spine[m - 1]]
            m += 1
        for i in range(m - 1, -1, -1):
            if right[spine[i]] >= 0:
                break
            k += 1
        return k
    finally:
        free(buf)


def schema_neighbors(word):
    cdef tuple w = tuple(word)
    cdef Py_ssize_t n = len(w), i, j
    cdef long x, y, lo, hi, b
    cdef list out = []
    for i in range(n - 2):
        x = w[i]
        y = w[i + 1]
        if x == y:
            continue
        if x > y:
            lo, hi = y, x
        else:
            lo, hi = x, y
        for j in range(i + 2, n):
            b = w[j]
            if lo <= b < hi:
                out.append(w[:i] + (w[i + 1], w[i]) + w[i + 2:])
                break
    return out


cdef class _RuleSet:
    """Rules packed into C arrays, bucketed by first letter."""
    cdef int nrules
    cdef readonly int maxlen
    cdef int ncodes
    cdef int* lhs_len
    cdef int* rhs_len
    cdef int** lhs
    cdef int** rhs
    # bucket_start[c] .. bucket_start[c + 1] indexes `bucket` for first letter c
    cdef int* bucket_start
    cdef int* bucket
    cdef readonly tuple rules

    def __cinit__(self, rules):
        cdef int r, t, c, fill
        self.rules = tuple((tuple(a), tuple(b)) for a, b in rules)
        self.nrules = len(self.rules)
        self.maxlen = 0
        self.ncodes = 0
        for a, b in self.rules:
            if not a:
                raise ValueError("empty left-hand side")
            for c in a + b:
                if c < 0:
                    raise ValueError("negative letter code")
                if c + 1 > self.ncodes:
                    self.ncodes = c + 1
        self.lhs_len = <int*> malloc((self.nrules + 1) * sizeof(int))
        self.rhs_len = <int*> malloc((self.nrules + 1) * sizeof(int))
        self.lhs = <int**> malloc((self.nrules + 1) * sizeof(int*))
        self.rhs = <int**> malloc((self.nrules + 1) * sizeof(int*))
        self.bucket_start = <int*> malloc((self.ncodes + 2) * sizeof(int))
        self.bucket = <int*> malloc((self.nrules + 1) * sizeof(int))
        if (self.lhs_len == NULL or self.rhs_len == NULL or self.lhs == NULL
                or self.rhs == NULL or self.bucket_start == NULL or self.bucket == NULL):
            raise MemoryError()
        for r in range(self.nrules):
            self.lhs[r] = NULL
            self.rhs[r] = NULL
        for r in range(self.nrules):
            a, b = self.rules[r]
            self.lhs_len[r] = len(a)
            self.rhs_len[r] = len(b)
            if len(a) > self.maxlen:
                self.maxlen = len(a)
            self.lhs[r] = <int*> malloc((len(a) + 1) * sizeof(int))
            self.rhs[r] = <int*> malloc((len(b) + 1) * sizeof(int))
            if self.lhs[r] == NULL or self.rhs[r] == NULL:
                raise MemoryError()
            for t in range(len(a)):
                self.lhs[r][t] = a[t]
            for t in range(len(b)):
                self.rhs[r][t] = b[t]
        for c in range(self.ncodes + 2):
            self.bucket_start[c] = 0
        for r in range(self.nrules):
            self.bucket_start[self.lhs[r][0] + 1] += 1
        for c in range(self.ncodes + 1):
            self.bucket_start[c + 1] += self.bucket_start[c]
        for c in range(self.ncodes):
            fill = self.bucket_start[c]
            for r in range(self.nrules):
                if self.lhs[r][0] == c:
                    self.bucket[fill] = r
                    fill += 1

    def __dealloc__(self):
        cdef int r
        if self.lhs != NULL:
            for r in range(self.nrules):
                free(self.lhs[r])
        if self.rhs != NULL:
            for r in range(self.nrules):
                free(self.rhs[r])
        free(self.lhs)
        free(self.rhs)
        free(self.lhs_len)
        free(self.rhs_len)
        free(self.bucket_start)
        free(self.bucket)


def compile_rules(rules):
    """Pack ``(lhs, rhs)`` int-tuple pairs into C arrays for reuse."""
    return _RuleSet(rules)


cdef inline bint _match_at(int* w, int n, int pos, int* lhs, int m) nogil:
    cdef int t
    if pos + m > n:
        return False
    for t in range(1, m):
        if w[pos + t] != lhs[t]:
            return False
    return True


cdef inline int _find_rule(_RuleSet rs, int* w, int n, int pos):
    cdef int c = w[pos], b, r
    if c < 0 or c >= rs.ncodes:
        return -1
    for b in range(rs.bucket_start[c], rs.bucket_start[c + 1]):
        r = rs.bucket[b]
        if _match_at(w, n, pos, rs.lhs[r], rs.lhs_len[r]):
            return r
    return -1


def reduce_once(word, _RuleSet rs):
    cdef tuple w = tuple(word)
    cdef int n = len(w), pos, r, t
    if n == 0 or rs.nrules == 0:
        return None
    cdef int* buf = <int*> malloc(n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    try:
        for t in range(n):
            buf[t] = w[t]
        for pos in range(n):
            r = _find_rule(rs, buf, n, pos)
            if r >= 0:
                return w[:pos] + tuple([rs.rhs[r][t] for t in range(rs.rhs_len[r])]) + w[pos + rs.lhs_len[r]:]
        return None
    finally:
        free(buf)


def normal_form(word, _RuleSet rs, long max_steps):
    cdef tuple w = tuple(word)
    cdef int n = len(w), cap, pos = 0, r, t, m, k, delta
    cdef long steps = 0
    if rs.nrules == 0:
        return w, 0, True
    cap = n + 16
    cdef int* buf = <int*> malloc(cap * sizeof(int))
    cdef int* grown
    if buf == NULL:
        raise MemoryError()
    try:
        for t in range(n):
            buf[t] = w[t]
        while pos < n:
            r = _find_rule(rs, buf, n, pos)
            if r < 0:
                pos += 1
                continue
            if steps == max_steps:
                return tuple([buf[t] for t in range(n)]), steps, False
            m = rs.lhs_len[r]
            k = rs.rhs_len[r]
            delta = k - m
            if n + delta > cap:
                cap = 2 * (n + delta)
                grown = <int*> realloc(buf, cap * sizeof(int))
                if grown == NULL:
                    raise MemoryError()
                buf = grown
            if delta != 0:
                memmove(buf + pos + k, buf + pos + m, (n - pos - m) * sizeof(int))
                n += delta
            for t in range(k):
                buf[pos + t] = rs.rhs[r][t]
            steps += 1
            # redexes strictly left of here lie in the unchanged prefix
            pos = pos - rs.maxlen + 1
            if pos < 0:
                pos = 0
        return tuple([buf[t] for t in range(n)]), steps, True
    finally:
        free(buf)


def side_index(pairs):
    cdef dict index = {}
    for u, v in pairs:
        u, v = tuple(u), tuple(v)
        if u == v:
            continue
        for a, b in ((u, v), (v, u)):
            if not a:
                continue
            table = index.setdefault(len(a), {})
            reps = table.setdefault(a, [])
            if b not in reps:
                reps.append(b)
    return {n: {k: tuple(r) for k, r in t.items()} for n, t in index.items()}


cdef set _relation_neighbors(tuple word, dict index):
    cdef set out = set()
    cdef Py_ssize_t n = len(word), m, p
    cdef dict table
    cdef object reps
    for m_obj, table in index.items():
        m = m_obj
        for p in range(n - m + 1):
            reps = table.get(word[p:p + m])
            if reps is not None:
                head = word[:p]
                tail = word[p + m:]
                for r in reps:
                    out.add(head + r + tail)
    return out


def relation_neighbors(word, index):
    return _relation_neighbors(tuple(word), index)


def class_closure(start, index, Py_ssize_t max_size):
    cdef tuple s = tuple(start)
    cdef set seen = {s}
    cdef list frontier = [s], nxt
    cdef tuple w
    while frontier:
        nxt = []
        for w in frontier:
            for u in _relation_neighbors(w, index):
                if u not in seen:
                    seen.add(u)
                    if len(seen) > max_size:
                        return None
                    nxt.append(u)
        frontier = nxt
    return seen
