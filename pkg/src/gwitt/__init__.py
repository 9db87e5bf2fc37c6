"""Exact Witt vectors over finite groups and the bispan calculus behind them."""

from .bispans import (Bispan, CanonicalBispan, VirtualBispan, add,
                      canonicalize, compose, evaluate, gen_N, gen_R, gen_T,
                      identity_virtual, mul, neg, sub, unit_virtual,
                      zero_virtual)
from .errors import (DivisibilityError, EquivarianceError, GroupSpecError,
                     NonFreeError, ObjectMismatchError, SizeCapError,
                     WitnessError)
from .groups import (FiniteGroup, Subgroup, SubgroupTable, SubsetOrbitDatum,
                     double_cosets, full_subgroup, make_group, mark,
                     normalizer, subgroup_table, subset_orbits,
                     trivial_subgroup)
from .gsets import (ExponentialDiagram, GMap, GSet, OrbitDecomposition,
                    coset_space, dependent_product, disjoint_union,
                    empty_gset, gset_from_orbits, gset_iso,
                    orbit_decomposition, projection_map, pullback,
                    trivial_gset)
from .polys import MultiPoly
from .rings import IntModRing, IntRing, PolyRing, QQ, RationalRing, Ring, ZZ
from .teichmuller import (assert_free, bispan_to_poly, norm_poly,
                          poly_to_bispan, rho, teichmuller_t, witt_law_check)
from .witt import (IdealWitness, WittPolySet, WittVector,
                   classical_witt_polys, ghost, ghost_invert, ideal_generator,
                   m_polys_via_orbits, p_polys_via_orbits, restr_surjection,
                   s_polys_via_orbits, universal_polys, witt_add, witt_mul,
                   witt_neg, witt_one, witt_sub, witt_zero, xi_polys)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
