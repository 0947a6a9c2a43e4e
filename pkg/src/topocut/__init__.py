"""Exact, certificate-producing solvers for discrete consequences of Borsuk-Ulam.

Ham sandwich cuts, rainbow partitions, necklace splitting, Kneser graph
coloring, Dol'nikov's inequality and Tucker's lemma, all in exact rational
arithmetic with independent verifiers.
"""

from .dolnikov import Hypergraph, check_dolnikov, colorability_defect, is_m_colorable
from .geometry import ColoredPointSet, Hyperplane, Side, hyperplane_through, is_general_position, perturb
from .hamsandwich import BisectionCertificate, enumerate_all_cuts, find_cut, verify_cut
from .kneser import KneserGraph, build_kneser, chromatic_number, explicit_coloring, is_proper
from .necklace import Necklace, NecklaceSplit, min_cuts, split_brute_force, split_via_moment_curve, verify_split
from .rainbow import RainbowPartition, rainbow_partition, verify_rainbow
from .tucker import SymmetricTriangulation, TuckerLabeling, build_disk_triangulation, find_complementary_edge

__version__ = "0.1.0"
