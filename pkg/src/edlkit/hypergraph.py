"""Marginal collections as hypergraphs: connectivity, decision power, counts.

A collection of observed marginals is a hypergraph on the particles.  For
entangled symmetric states a collection decides detection or determination
iff it is connected and contains one subset at least as large as the
corresponding length, which turns "how many k-body marginals suffice"
into a covering count with a closed form.

Subsets are bitmasks (vertex j on bit j-1), so collections on up to 63
vertices cost nothing to store; dense state operations elsewhere have much
smaller caps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EdlkitError

MAX_VERTICES = 63


def _mask_from_labels(n, labels):
    mask = 0
    for j in labels:
        j = int(j)
        if not 1 <= j <= n:
            raise EdlkitError("BAD_VERTEX", "vertex %r outside 1..%d" % (j, n))
        mask |= 1 << (j - 1)
    return mask


def _labels_from_mask(mask):
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


@dataclass(frozen=True)
class SubsetCollection:
    """Deduplicated collection of nonempty vertex subsets of [n]."""

    n: int
    edges: tuple  # sorted tuple of bitmasks

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise EdlkitError("TOO_LARGE" if self.n > MAX_VERTICES else "DIM_MISMATCH",
                              "vertex count %r out of range" % (self.n,))
        seen = []
        for mask in self.edges:
            mask = int(mask)
            if mask == 0:
                raise EdlkitError("EMPTY_SUBSET", "collections cannot contain the empty subset")
            if not 0 < mask < (1 << self.n):
                raise EdlkitError("BAD_VERTEX", "subset mask %#x out of range for n=%d" % (mask, self.n))
            seen.append(mask)
        object.__setattr__(self, "edges", tuple(sorted(set(seen))))

    @classmethod
    def from_lists(cls, n, subsets):
        return cls(n, tuple(_mask_from_labels(n, s) for s in subsets))

    def to_lists(self):
        return [list(_labels_from_mask(m)) for m in self.edges]

    def __iter__(self):
        # yields label tuples so the collection plugs into marginal checks
        return (_labels_from_mask(m) for m in self.edges)

    def __len__(self):
        return len(self.edges)

    def max_size(self):
        return max((bin(m).count("1") for m in self.edges), default=0)


def all_k_subsets(n, k):
    """Collection of every k-element subset of [n]."""
    if not 1 <= k <= n:
        raise EdlkitError("BAD_K", "need 1 <= k <= n, got k=%d, n=%d" % (k, n))
    masks = []
    for combo in itertools.combinations(range(n), k):
        mask = 0
        for j in combo:
            mask |= 1 << j
        masks.append(mask)
    return SubsetCollection(n, tuple(masks))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def is_connected(collection):
    """True iff the hypergraph covers all of [n] in a single component."""
    n = collection.n
    uf = _UnionFind(n + 1)  # index 0 unused
    covered = 0
    for mask in collection.edges:
        covered |= mask
        labels = _labels_from_mask(mask)
        for j in labels[1:]:
            uf.union(labels[0], j)
    if covered != (1 << n) - 1:
        return False
    roots = {uf.find(j) for j in range(1, n + 1)}
    return len(roots) == 1


def collection_decides(collection, length, n):
    """Whether observing these marginals decides a property of length ``length``.

    For entangled symmetric states this is exact: the collection works iff it
    is connected and some subset has at least ``length`` particles.
    """
    if collection.n != n:
        raise EdlkitError("DIM_MISMATCH", "collection is over n=%d, asked n=%d" % (collection.n, n))
    if not 1 <= length <= n:
        raise EdlkitError("BAD_K", "length %d outside 1..%d" % (length, n))
    return is_connected(collection) and collection.max_size() >= length


def min_marginal_count(n, k):
    """Minimum number of k-body marginals that keeps the hypergraph connected
    and covering, with an overlapping-chain witness.

    ``s`` connected k-subsets cover at most ``s k - s + 1`` vertices, giving
    the count ``ceil((n-1)/(k-1))``.  The witness chains blocks that share
    one vertex, with the last block right-aligned to end exactly at n.
    """
    if not 2 <= k <= n:
        raise EdlkitError("BAD_K", "need 2 <= k <= n, got k=%d, n=%d" % (k, n))
    count = -(-(n - 1) // (k - 1))
    blocks = []
    for t in range(count - 1):
        start = t * (k - 1) + 1
        blocks.append(list(range(start, start + k)))
    blocks.append(list(range(n - k + 1, n + 1)))
    witness = SubsetCollection.from_lists(n, blocks)
    if not is_connected(witness) or len(witness) != count:
        raise EdlkitError("SOLVER_FAIL", "chain witness construction failed (unreachable)")
    return count, witness


@dataclass(frozen=True)
class TransitivityQuery:
    """Ask whether marginal agreement on a collection forces agreement on a target."""

    collection: SubsetCollection
    target: tuple  # 1-based labels

    def __post_init__(self):
        target = tuple(sorted(set(int(j) for j in self.target)))
        if not target:
            raise EdlkitError("EMPTY_SUBSET", "target subset is empty")
        if target[0] < 1 or target[-1] > self.collection.n:
            raise EdlkitError("BAD_VERTEX", "target outside 1..%d" % self.collection.n)
        object.__setattr__(self, "target", target)


def transitivity_certificate(query, detection_length):
    """Decide a transitivity query for states of the given detection length.

    Marginal agreement with a genuinely entangled symmetric state on a
    connected collection containing one subset of size >= detection_length
    forces agreement on every target of size >= detection_length.  Returns
    ``(holds, reasons)`` where reasons lists any failed premise.
    """
    if detection_length < 2:
        raise EdlkitError("BAD_K", "detection length below 2 is meaningless")
    reasons = []
    if not is_connected(query.collection):
        reasons.append("collection is not connected")
    if query.collection.max_size() < detection_length:
        reasons.append("no subset reaches the detection length %d" % detection_length)
    if len(query.target) < detection_length:
        reasons.append("target smaller than the detection length %d" % detection_length)
    return len(reasons) == 0, reasons
