"""catidem: exact computations with categorical idempotents.

Chain complexes over finite dimensional group algebras kappa[G] with
kappa = F_p, together with the projector calculus on them: minimal
resolutions, complementary idempotent pairs, Tate objects, idempotent
lattices, and convolutions of twisted complexes.  All arithmetic is exact.
"""

__version__ = "0.1.0"
