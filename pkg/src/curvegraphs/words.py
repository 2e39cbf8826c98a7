"""Free-group words and conjugacy-class keys.

A word is a tuple of nonzero ints: ``i+1`` is the i-th generator, negative is
its inverse.  Conjugacy classes of the free spine group classify free homotopy
classes of loops; for curves (unoriented) the class is also taken up to
inversion.
"""


def reduce_word(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w):
    return tuple(-x for x in reversed(w))


def cyclic_reduce(w):
    w = reduce_word(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def rotations(w):
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def canonical_cyclic(w, oriented=False):
    """Canonical representative of the conjugacy class of w (cyclically
    reduced, lexicographically least rotation; unoriented classes also
    minimize over the inverse)."""
    w = cyclic_reduce(w)
    if not w:
        return ()
    cands = rotations(w)
    if not oriented:
        cands += rotations(inverse(w))
    return min(cands)


def concat(*ws):
    out = []
    for w in ws:
        out.extend(w)
    return reduce_word(tuple(out))


def conjugate(w, g):
    """g w g^{-1}, reduced."""
    return reduce_word(tuple(g) + tuple(w) + inverse(g))


def power(w, n):
    if n < 0:
        return power(inverse(w), -n)
    return reduce_word(tuple(w) * n)


def abelianization(w, n_gens):
    v = [0] * n_gens
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def is_power(w):
    """True if the cyclically reduced word is a proper power."""
    w = cyclic_reduce(w)
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w == (w[:d] * (n // d)):
            return True
    return False


def primitive_root(w):
    """Shortest u with w conjugate to u^k; returns (u, k)."""
    w = cyclic_reduce(w)
    n = len(w)
    if n == 0:
        return (), 1
    for d in range(1, n + 1):
        if n % d == 0 and w == (w[:d] * (n // d)):
            return w[:d], n // d
    raise AssertionError
