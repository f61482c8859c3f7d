"""The documented demo store: a color domain, a weight domain, and fruit.

Color prototypes are given as hue/saturation/brightness and preprocessed
to Cartesian coordinates with beta = 10. The table is chosen so that the
two walkthrough analogies resolve the way a reader expects:

    category: PURPLE : BLUE :: ORANGE : ?   -> YELLOW
    property: APPLE : RED :: BANANA : ?     -> YELLOW (salient domain: color)

=========  =================  =======================================
concept    HSB                Cartesian (p1, p2, p3)
=========  =================  =======================================
PURPLE     (315, 87, 53)      ( 6.1518, -6.1518, 5.3)
BLUE       (240, 87, 53)      (-4.3500, -7.5344, 5.3)
ORANGE     ( 30, 75, 95)      ( 6.4952,  3.7500, 9.5)
YELLOW     ( 60, 75, 95)      ( 3.7500,  6.4952, 9.5)
RED        (  0, 84, 65)      ( 8.4000,  0.0000, 6.5)
APPLE      (355, 90, 60)      ( 8.9658, -0.7844, 6.0)   color projection
BANANA     ( 60, 85, 98)      ( 4.2500,  7.3612, 9.8)   color projection
=========  =================  =======================================

With these values the parallelogram answer ORANGE - PURPLE + BLUE sits at
(-4.0066, 2.3674, 9.5), which snaps to the grid point (-4.0, 2.5, 9.5)
and is nearer YELLOW than any other stored color. APPLE and BANANA also
carry prototypes in the single-dimension weight domain (plus BRICK, which
exists only there), so the salient-domain search and the category gate
both have something nontrivial to reject or pick.
"""

from __future__ import annotations

from . import hdc
from .spaces import ColorHSB, hsb_to_point
from .store import ConceptRecord, ConceptStore

__all__ = [
    "FIXTURE_SEED",
    "COLOR_TABLE",
    "WEIGHT_TABLE",
    "build_fixture_store",
]

FIXTURE_SEED = 42

COLOR_TABLE: dict[str, tuple[float, float, float]] = {
    "PURPLE": (315.0, 87.0, 53.0),
    "BLUE": (240.0, 87.0, 53.0),
    "ORANGE": (30.0, 75.0, 95.0),
    "YELLOW": (60.0, 75.0, 95.0),
    "RED": (0.0, 84.0, 65.0),
    "APPLE": (355.0, 90.0, 60.0),
    "BANANA": (60.0, 85.0, 98.0),
}

WEIGHT_TABLE: dict[str, float] = {
    "APPLE": 1.5,
    "BANANA": 1.2,
    "BRICK": 7.0,
}


def build_fixture_store(d: int = hdc.DEFAULT_DIMENSION, seed: int = FIXTURE_SEED) -> ConceptStore:
    """Build the demo store at the requested dimension and seed."""
    store = ConceptStore(seed=seed, d=d)
    store = store.with_new_domain(
        "color", ("hue_x", "hue_y", "brightness"), ranges=(-10.0, 10.0)
    )
    store = store.with_new_domain("weight", ("weight",), ranges=(0.0, 10.0))
    for label, (hue, sat, bright) in COLOR_TABLE.items():
        point = hsb_to_point(ColorHSB(hue, sat, bright))
        store = store.put_concept(
            ConceptRecord(
                label=label,
                domain="color",
                coords=point.coords,
                source="hsb",
                hsb=(hue, sat, bright),
            )
        )
    for label, weight in WEIGHT_TABLE.items():
        store = store.put_concept(
            ConceptRecord(label=label, domain="weight", coords=(weight,))
        )
    return store
