"""Exact computations in decorated graph complexes of surfaces and the
Lie-theoretic models attached to them.

Subpackages are organized by carrier:

* ``linalg``  -- exact rational sparse/dense linear algebra
* ``graphs``  -- decorated graphs, signed isomorphism classes, graph vectors
* ``gc``      -- the graph dg Lie algebras and their symplectic-type extension
* ``hairy``   -- the hairy graph complex and the comparison maps into it
* ``freelie`` -- Lyndon bases, presented Lie algebra quotients, braid-type algebras
* ``tower``   -- fast fibration models for the genus-one braid-type algebras
* ``mo``      -- the Bezrukavnikov differential graded commutative algebra
* ``grt``     -- derivation tuples, the equation solver and membership checks
* ``cli``     -- batch verification and table/figure reports
"""

__version__ = "0.1.0"
