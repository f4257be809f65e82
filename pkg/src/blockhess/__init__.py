"""blockhess: exact arithmetic for alternating coefficient arrays, their
chart forms, and the block skew-symmetric Hessians those forms carry.

The package is organized around the pipeline

    coefficient array  ->  chart form  ->  Hessian matrix  ->  invariants

with everything computed over Q (fractions), polynomial rings with Fraction
coefficients, or prime fields — never floats.

Modules
-------
multiindex      strictly increasing index tuples, signs, node index sets
ring            MultiPoly / UniPoly, prime table, interpolation
linalg          exact determinants, ranks, reduced echelon form, adjugate
exterior        coefficient arrays, chart points, group actions, gradients
hessian         block matrix assembly, duality relabeling, embeddings
degree          admissible factor degrees and product witnesses
irreducibility  factor-pattern bookkeeping and verdict derivations
node_cusp       degenerating frames, defining forms and their limits,
                second-tangency verification
certificates    embedded coefficient records, checksums, verification,
                composition rules for new corank-one records
cli             the ``blockhess`` command
"""

__version__ = "0.1.0"
