"""
Synthetic VRS instances with a controlled share of extreme-efficient DMUs.

Frontier points lie on the positive-orthant part of a sphere in translated coordinates, so each of them
uniquely maximizes its own outward normal. Interior points are random convex combinations of frontier
points, contracted toward an anchor that every frontier point strictly dominates.
"""

import dataclasses
import logging
import math

import numpy as np

from dea_frames.dea import Dataset
from dea_frames.lib.exceptions import ContractError


@dataclasses.dataclass(frozen=True)
class GenSpec:
    """
    Parameters of a generated instance.

    Attributes:
        target_density: Intended share of frontier points in (0, 1].
        inject_boundary: Number of non-extreme boundary points replacing interior points.
        name: Defaults to "{m:02d}by{n}at{percent:02d}", e.g. "05by25000at01".
    """

    n: int
    m1: int
    m2: int
    target_density: float
    seed: int
    name: str = None
    inject_boundary: int = 0
    radius: float = 1000.0

    def __post_init__(self):
        if self.n < 1:
            raise ContractError('n must be ≥ 1')
        if self.m1 < 1 or self.m2 < 1:
            raise ContractError('m1 and m2 must be ≥ 1')
        if not 0.0 < self.target_density <= 1.0:
            raise ContractError('Density must be in (0, 1]')
        if not 0 <= self.seed < 2**64:
            raise ContractError('Seed must be a 64-bit unsigned integer')
        if self.inject_boundary < 0 or self.inject_boundary > self.n - self.frontier_count:
            raise ContractError('Number of injected boundary points must be between 0 and the number of '
                             'interior points')
        if not self.radius > 0:
            raise ContractError('Radius must be positive')
        if self.name is None:
            object.__setattr__(self, 'name', f'{self.m:02d}by{self.n}at{round(self.target_density*100):02d}')

    @property
    def m(self):
        return self.m1 + self.m2

    @property
    def frontier_count(self):
        return min(self.n, max(1, math.floor(self.target_density * self.n + 0.5)))


def _jitter_amplitude(count, dim, radius):
    """
    Coordinate jitter: at most 1e-3 * radius, but small against the curvature gap between neighboring
    frontier points so they stay extreme.
    """

    limit = 1e-3 * radius
    if count < 2:
        return limit
    orthant_area = 2.0 * math.pi**(dim / 2) / math.gamma(dim / 2) / 2**dim
    spacing = radius * (orthant_area / count)**(1.0 / (dim - 1))
    return min(limit, 0.05 * spacing**2 / (2.0 * radius))


def generate(spec):
    """
    Generates the Dataset described by a GenSpec. The result only depends on the spec.
    """

    rng = np.random.default_rng(spec.seed)
    m1, m = spec.m1, spec.m
    radius = spec.radius
    frontier_count = spec.frontier_count
    interior_count = spec.n - frontier_count

    directions = np.abs(rng.standard_normal((frontier_count, m)))
    norms = np.linalg.norm(directions, axis=1)
    norms[norms == 0.0] = 1.0
    directions /= norms[:, np.newaxis]

    # Raw inputs around 2R minus the sphere, raw outputs around R plus the sphere
    center = np.concatenate((np.full(m1, -2.0 * radius), np.full(m - m1, radius)))
    jitter = _jitter_amplitude(frontier_count, m, radius)
    frontier = center + radius * directions + rng.uniform(-jitter, jitter, (frontier_count, m))

    anchor = center - 0.1 * radius
    per_point = min(frontier_count, m)
    picks = rng.integers(0, frontier_count, (interior_count, per_point))
    weights = rng.dirichlet(np.ones(per_point), size=interior_count)
    combined = np.einsum('ij,ijk->ik', weights, frontier[picks])
    contraction = rng.uniform(0.05, 0.95, interior_count)
    interior = anchor + contraction[:, np.newaxis] * (combined - anchor)

    for i in range(spec.inject_boundary):
        # Worsening one coordinate of a coordinate-wise maximizer keeps the point on the boundary
        coord = i % m
        worsened = (coord + 1) % m
        point = frontier[np.argmax(frontier[:, coord])].copy()
        point[worsened] -= rng.uniform(0.01 * radius, 0.1 * radius)
        interior[interior_count - 1 - i] = point

    points = np.vstack((frontier, interior))[rng.permutation(spec.n)]
    logging.debug('Generated "%s" with %d frontier points (jitter %.3g)', spec.name, frontier_count, jitter)

    return Dataset(spec.name, -points[:, :m1], points[:, m1:])
