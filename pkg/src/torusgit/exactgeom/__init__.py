"""Exact rational convex-geometry kernel."""
from .arrangement import (Face, FaceComplex, Region, RegionComplex, enumerate_faces,
                          enumerate_regions, sign_vector)
from .core import (Facet, GramForm, Membership, QHyperplane, QPolytope, QVector, Rational,
                   SignedDistance, affine_dim, fmt_q, qvec, sign_of_sum, to_q)
from .hull import (ClosestPoint, closest_point, closest_point_certificate, hull_membership,
                   signed_distance)
from .lp import LPResult, linprog

__all__ = [
    "ClosestPoint", "Face", "FaceComplex", "Facet", "GramForm", "LPResult", "Membership",
    "QHyperplane", "QPolytope", "QVector", "Rational", "Region", "RegionComplex",
    "SignedDistance", "affine_dim", "closest_point", "closest_point_certificate",
    "enumerate_faces", "enumerate_regions", "fmt_q", "hull_membership", "linprog", "qvec",
    "sign_of_sum", "sign_vector", "signed_distance", "to_q",
]
