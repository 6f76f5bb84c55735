"""Pure-Python implementations of the hot kernels.

Every function here has a line-for-line counterpart in ``_kernels.pyx``.
All words are tuples of non-negative ints.
"""

BACKEND = "python"


def sylvester_reading(word):
    """LRP(BST(word)): insert right to left, read left-right-postfix."""
    n = len(word)
    if n == 0:
        return ()
    label = [0] * n
    left = [-1] * n
    right = [-1] * n
    size = 0
    for pos in range(n - 1, -1, -1):
        a = word[pos]
        label[size] = a
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
    out = []
    # iterative postorder: (node, visited) pairs
    stack = [(0, False)]
    while stack:
        node, seen = stack.pop()
        if seen:
            out.append(label[node])
            continue
        stack.append((node, True))
        if right[node] >= 0:
            stack.append((right[node], False))
        if left[node] >= 0:
            stack.append((left[node], False))
    return tuple(out)


def sylvester_left_branch(word):
    """Left branch length of BST(word); -1 for the empty word."""
    n = len(word)
    if n == 0:
        return -1
    label = [0] * n
    left = [-1] * n
    right = [-1] * n
    size = 0
    for pos in range(n - 1, -1, -1):
        a = word[pos]
        label[size] = a
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
    spine = [0]
    while left[spine[-1]] >= 0:
        spine.append(left[spine[-1]])
    k = 0
    for node in reversed(spine):
        if right[node] >= 0:
            break
        k += 1
    return k


def schema_neighbors(word):
    """One application of (cavb, acvb), a <= b < c, in either direction."""
    n = len(word)
    out = []
    for i in range(n - 2):
        x, y = word[i], word[i + 1]
        if x == y:
            continue
        lo, hi = (y, x) if x > y else (x, y)
        for j in range(i + 2, n):
            if lo <= word[j] < hi:
                out.append(word[:i] + (y, x) + word[i + 2:])
                break
    return out


def _match(word, pos, lhs):
    m = len(lhs)
    if pos + m > len(word):
        return False
    for t in range(1, m):
        if word[pos + t] != lhs[t]:
            return False
    return True


class RuleTable:
    """Rules bucketed by first letter, each bucket in rule-index order."""

    __slots__ = ("rules", "by_first", "maxlen")

    def __init__(self, rules):
        self.rules = tuple((tuple(a), tuple(b)) for a, b in rules)
        self.by_first = {}
        for lhs, rhs in self.rules:
            self.by_first.setdefault(lhs[0], []).append((lhs, rhs))
        self.maxlen = max((len(a) for a, _ in self.rules), default=0)


def compile_rules(rules):
    return RuleTable(rules)


def reduce_once(word, table):
    """Leftmost position, then lowest rule index; None if irreducible."""
    word = tuple(word)
    by_first = table.by_first
    for pos in range(len(word)):
        for lhs, rhs in by_first.get(word[pos], ()):
            if _match(word, pos, lhs):
                return word[:pos] + rhs + word[pos + len(lhs):]
    return None


def normal_form(word, table, max_steps):
    """Iterate :func:`reduce_once`.

    Returns ``(word, steps, finished)``; ``finished`` is False when
    ``max_steps`` rewrites were performed and the word is still reducible.
    """
    by_first = table.by_first
    maxlen = table.maxlen
    w = list(word)
    steps = 0
    pos = 0
    while pos < len(w):
        for lhs, rhs in by_first.get(w[pos], ()):
            if _match(w, pos, lhs):
                if steps == max_steps:
                    return tuple(w), steps, False
                w[pos:pos + len(lhs)] = rhs
                steps += 1
                # redexes strictly left of here lie in the unchanged prefix
                pos = max(0, pos - maxlen + 1)
                break
        else:
            pos += 1
    return tuple(w), steps, True


def side_index(pairs):
    """Replacement table ``{length: {side: (other, ...)}}`` for both directions."""
    index = {}
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


def relation_neighbors(word, index):
    out = set()
    n = len(word)
    for m, table in index.items():
        for p in range(n - m + 1):
            reps = table.get(word[p:p + m])
            if reps:
                head, tail = word[:p], word[p + m:]
                for r in reps:
                    out.add(head + r + tail)
    return out


def class_closure(start, index, max_size):
    """Breadth-first closure of ``{start}``; None when it outgrows ``max_size``."""
    start = tuple(start)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for u in relation_neighbors(w, index):
                if u not in seen:
                    seen.add(u)
                    if len(seen) > max_size:
                        return None
                    nxt.append(u)
        frontier = nxt
    return seen
