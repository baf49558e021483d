"""Bookkeeping for which subsets of parties get measured.

Detection needs a connected collection with one subset large enough; the
chain construction achieves the minimum count, and connectivity plus size
also settle transitivity questions (does agreement on measured marginals
force entanglement in an unmeasured one?).
"""

from edlkit import (
    SubsetCollection,
    TransitivityQuery,
    all_k_subsets,
    collection_decides,
    is_connected,
    min_marginal_count,
    transitivity_certificate,
)

# Fewest three-body marginals that stay connected while covering n parties.
for n in range(4, 10):
    count, witness = min_marginal_count(n, 3)
    print("n=%d: %d three-body marginals, e.g. %s" % (n, count, witness.to_lists()))

# Connectivity is what separates a usable collection from a useless one.
good = SubsetCollection.from_lists(6, [[1, 2, 3], [3, 4, 5], [5, 6, 1]])
bad = SubsetCollection.from_lists(6, [[1, 2, 3], [4, 5, 6]])
print("overlapping chain connected:", is_connected(good))
print("two disjoint triples connected:", is_connected(bad))

# A state with detection length 3 is decided by the chain, and also by the
# full set of pairs plus one triple, but never by pairs alone.
print("chain decides length 3:", collection_decides(good, 3, 6))
print("all pairs decide length 3:", collection_decides(all_k_subsets(6, 2), 3, 6))

# Transitivity: if the measured marginals certify entanglement of length 3
# for a symmetric state, every unmeasured 3-subset is forced as well.
coll = SubsetCollection.from_lists(5, [[1, 2, 3], [3, 4, 5]])
for target in ((2, 3, 4), (1, 5), (1, 4, 5)):
    holds, reasons = transitivity_certificate(TransitivityQuery(coll, target), 3)
    print("target", target, "->", holds, reasons if reasons else "")
