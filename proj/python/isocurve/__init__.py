"""Differential geometry of curves on smooth parametric surfaces.

Charts are given by closed-form component expressions; derivatives are exact
truncated-Taylor jets. The module exposes fundamental forms, Frenet frames,
normal/geodesic curvature, isometric chart pairs, and the component-deviation
checks, mirroring the C++ library and the `isocurve` CLI.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
