"""Independent oracle: counts transitive relations on n points up to isomorphism.

Used to freeze the regression values asserted by the catalog tests.
"""
import itertools
import sys


def transitive(n, rel):
    for a, b in rel:
        for c in range(n):
            if (b, c) in rel and (a, c) not in rel:
                return False
    return True


def canon(n, rel):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or key < best:
            best = key
    return best


def rooted(n, rel):
    return any(all(v == w or (w, v) in rel for v in range(n)) for w in range(n))


def main(max_n):
    for n in range(1, max_n + 1):
        pairs = [(a, b) for a in range(n) for b in range(n)]
        classes = {}
        for mask in range(1 << len(pairs)):
            rel = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
            if transitive(n, rel):
                classes.setdefault(canon(n, rel), rel)
        r = sum(1 for rel in classes.values() if rooted(n, rel))
        print(n, len(classes), r)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
