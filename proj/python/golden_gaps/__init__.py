"""Slope gaps of the golden L: exact lattice enumeration, the BCZ map and the limiting gap law."""

from ._golden_gaps import (
    Estimate,
    VolumeReport,
    breakpoints,
    classify,
    gap_cdf,
    gap_pdf,
    gap_survival,
    gaps_direct,
    gaps_via_bcz,
    h_spacing_empirical,
    h_spacing_mc,
    ks_distance,
    measure_preservation,
    orbit,
    return_time,
    slopes,
    uniformity_test,
    volumes,
)

__all__ = [
    "Estimate",
    "VolumeReport",
    "breakpoints",
    "classify",
    "gap_cdf",
    "gap_pdf",
    "gap_survival",
    "gaps_direct",
    "gaps_via_bcz",
    "h_spacing_empirical",
    "h_spacing_mc",
    "ks_distance",
    "measure_preservation",
    "orbit",
    "return_time",
    "slopes",
    "uniformity_test",
    "volumes",
]
