"""Piecewise paths in the complex plane minus the poles.

Segments are parameterized over [0, 1]; arcs by angle. A Path fixes a point
of the universal cover through its homotopy class rel endpoints.
"""
import cmath
import logging
import math
import typing

import numpy as np

from . import common
from . import config

logger = logging.getLogger(config.LOGGER_NAME)


class Segment:
    start: complex
    end: complex

    def point(self, t: float) -> complex:
        raise NotImplementedError

    def velocity(self, t: float) -> complex:
        raise NotImplementedError

    def reversed(self) -> 'Segment':
        raise NotImplementedError

    def distance_to(self, p: complex) -> float:
        raise NotImplementedError

    @property
    def length(self) -> float:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class LineSegment(Segment):
    def __init__(self, start, end):
        self.start = complex(start)
        self.end = complex(end)

    def point(self, t: float) -> complex:
        return self.start + t * (self.end - self.start)

    def velocity(self, t: float) -> complex:
        return self.end - self.start

    def reversed(self) -> 'LineSegment':
        return LineSegment(self.end, self.start)

    def distance_to(self, p: complex) -> float:
        direction = self.end - self.start
        if not direction:
            return abs(p - self.start)
        t = ((p - self.start) * direction.conjugate()).real / abs(direction) ** 2
        t = min(1.0, max(0.0, t))
        return abs(p - self.point(t))

    @property
    def length(self) -> float:
        return abs(self.end - self.start)

    def __repr__(self):
        return f'LineSegment({self.start}, {self.end})'

    def to_json(self) -> dict:
        return {'line': [common.complex_to_json(self.start), common.complex_to_json(self.end)]}


class ArcSegment(Segment):
    """center + radius * exp(i theta), theta running from theta_from to theta_to."""

    def __init__(self, center, radius: float, theta_from: float, theta_to: float):
        if radius <= 0:
            raise common.InfeasibleRadius(f'Arc radius must be positive, got {radius}')
        self.center = complex(center)
        self.radius = float(radius)
        self.theta_from = float(theta_from)
        self.theta_to = float(theta_to)

    @property
    def start(self) -> complex:
        return self.point(0.0)

    @property
    def end(self) -> complex:
        return self.point(1.0)

    @property
    def sweep(self) -> float:
        return self.theta_to - self.theta_from

    def point(self, t: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * (self.theta_from + t * self.sweep))

    def velocity(self, t: float) -> complex:
        return 1j * self.sweep * self.radius * cmath.exp(1j * (self.theta_from + t * self.sweep))

    def reversed(self) -> 'ArcSegment':
        return ArcSegment(self.center, self.radius, self.theta_to, self.theta_from)

    def distance_to(self, p: complex) -> float:
        offset = p - self.center
        if abs(self.sweep) >= 2 * math.pi or not offset:
            return abs(abs(offset) - self.radius)
        low = min(self.theta_from, self.theta_to)
        angle = cmath.phase(offset)
        # bring the angle into [low, low + 2pi)
        angle = low + math.fmod(angle - low, 2 * math.pi)
        if angle < low:
            angle += 2 * math.pi
        if angle <= low + abs(self.sweep):
            return abs(abs(offset) - self.radius)
        return min(abs(p - self.start), abs(p - self.end))

    @property
    def length(self) -> float:
        return abs(self.sweep) * self.radius

    def __repr__(self):
        return f'ArcSegment({self.center}, {self.radius}, {self.theta_from}, {self.theta_to})'

    def to_json(self) -> dict:
        return {
            'arc': {
                'center': common.complex_to_json(self.center),
                'radius': self.radius,
                'from': self.theta_from,
                'to': self.theta_to,
            },
        }


def segment_from_json(data: dict) -> Segment:
    if 'line' in data:
        start, end = data['line']
        return LineSegment(common.complex_from_json(start), common.complex_from_json(end))
    if 'arc' in data:
        arc = data['arc']
        return ArcSegment(
            common.complex_from_json(arc['center']),
            float(arc['radius']),
            float(arc['from']),
            float(arc['to']),
        )
    raise ValueError(f'Unknown segment {data!r}')


class Path:
    def __init__(self, base, segments: typing.Sequence[Segment] = ()):
        self.base = complex(base)
        self.segments = tuple(segments)
        current = self.base
        for index, segment in enumerate(self.segments):
            scale = max(1.0, abs(current))
            if abs(segment.start - current) > config.CONTIGUITY_TOLERANCE * scale:
                raise ValueError(
                    f'Segment {index} starts at {segment.start}, previous point is {current}',
                )
            current = segment.end

    @classmethod
    def trivial(cls, base) -> 'Path':
        return cls(base)

    @classmethod
    def through(cls, points: typing.Sequence) -> 'Path':
        """Polygonal path through the given points, no detours."""
        points = [complex(p) for p in points]
        return cls(points[0], [LineSegment(a, b) for a, b in common.pairwise(points) if a != b])

    @property
    def endpoint(self) -> complex:
        return self.segments[-1].end if self.segments else self.base

    @property
    def length(self) -> float:
        return sum(segment.length for segment in self.segments)

    def is_closed(self) -> bool:
        return abs(self.endpoint - self.base) <= config.CONTIGUITY_TOLERANCE * max(1.0, abs(self.base))

    def concat(self, other: 'Path') -> 'Path':
        """self first, then other."""
        return Path(self.base, self.segments + other.segments)

    def __add__(self, other: 'Path') -> 'Path':
        return self.concat(other)

    def reversed(self) -> 'Path':
        return Path(self.endpoint, [segment.reversed() for segment in reversed(self.segments)])

    def distance_to(self, points: typing.Iterable) -> float:
        points = [complex(p) for p in points]
        if not points:
            return math.inf
        candidates = [abs(self.base - p) for p in points]
        for segment in self.segments:
            candidates.extend(segment.distance_to(p) for p in points)
        return min(candidates)

    def check_clearance(self, points: typing.Sequence, guard: typing.Optional[float] = None):
        points = [complex(p) for p in points]
        guard = common.pole_guard(points) if guard is None else guard
        distance = self.distance_to(points)
        if distance < guard:
            raise common.PathTooClose(
                f'Path passes within {distance:.3e} of a pole, guard is {guard:.3e}',
            )
        return distance

    def winding_number(self, p) -> float:
        """Total change of arg(z - p) over 2pi, for closed paths an integer."""
        p = complex(p)
        total = 0.0
        for segment in self.segments:
            if isinstance(segment, ArcSegment) and abs(segment.center - p) < 1e-15:
                total += segment.sweep
                continue
            samples = np.linspace(0.0, 1.0, 65)
            values = np.array([segment.point(t) - p for t in samples])
            total += float(np.sum(np.angle(values[1:] / values[:-1])))
        return total / (2 * math.pi)

    def __repr__(self):
        return f'Path(base={self.base}, segments={list(self.segments)!r})'

    def to_json(self) -> dict:
        return {
            'base': common.complex_to_json(self.base),
            'segments': [segment.to_json() for segment in self.segments],
        }

    @classmethod
    def from_json(cls, data: dict) -> 'Path':
        instance = cls(
            common.complex_from_json(data['base']),
            [segment_from_json(raw) for raw in data.get('segments', [])],
        )
        return instance


class Loop(Path):
    def __init__(self, base, segments: typing.Sequence[Segment] = (), label: str = ''):
        super().__init__(base, segments)
        if not self.is_closed():
            raise ValueError(f'Loop {label!r} is not closed: ends at {self.endpoint}, base {self.base}')
        self.label = label

    @classmethod
    def from_path(cls, path: Path, label: str = '') -> 'Loop':
        return cls(path.base, path.segments, label)

    def compose(self, other: 'Loop') -> 'Loop':
        """self first, then other."""
        return Loop(self.base, self.segments + other.segments, f'{self.label}*{other.label}')

    def inverse(self) -> 'Loop':
        reversed_path = self.reversed()
        return Loop(reversed_path.base, reversed_path.segments, f'{self.label}^-1')

    def __repr__(self):
        return f'Loop({self.label!r}, base={self.base})'

    def to_json(self) -> dict:
        data = super().to_json()
        data['label'] = self.label
        return data


def detour_radius(points: typing.Sequence[complex], start: complex, end: complex) -> float:
    nearest = common.min_pairwise_distance(points)
    scale = nearest if nearest is not None else abs(end - start)
    return config.DETOUR_FRACTION * scale


def straight_path(start, end, poles: typing.Iterable) -> Path:
    """start -> end, stepping around poles on (or just right of) the way on the left.

    Left of the travel direction means above for rightward travel. A pole
    closer than half the detour radius on the left is passed on its right, so
    the homotopy class of the plain segment is kept.
    """
    start, end = complex(start), complex(end)
    points = [complex(p) for p in poles]
    if start == end:
        return Path.trivial(start)
    length = abs(end - start)
    direction = (end - start) / length
    rho = detour_radius(points, start, end)

    detours = []
    for p in points:
        along = ((p - start) * direction.conjugate()).real
        left = ((p - start) * direction.conjugate()).imag
        if not 0 < along < length:
            continue
        radius = min(rho, 0.5 * along, 0.5 * (length - along))
        if abs(left) >= radius / 2:
            continue
        detours.append((along, radius, left <= 0))
    detours.sort()

    segments = []
    current = start
    phi = cmath.phase(direction)
    for along, radius, pass_left in detours:
        entry = start + (along - radius) * direction
        if entry != current:
            segments.append(LineSegment(current, entry))
        center = start + along * direction
        if pass_left:
            segments.append(ArcSegment(center, radius, phi + math.pi, phi))
        else:
            segments.append(ArcSegment(center, radius, phi + math.pi, phi + 2 * math.pi))
        current = start + (along + radius) * direction
    if current != end:
        segments.append(LineSegment(current, end))
    logger.debug(f'Straight path {start} -> {end}: {len(detours)} detours')
    return Path(start, segments)


def homotopic(first: Path, second: Path, poles: typing.Iterable) -> bool:
    """Same endpoints, and first * second^-1 winds around no pole."""
    scale = max(1.0, abs(first.base), abs(first.endpoint))
    if abs(first.base - second.base) > config.CONTIGUITY_TOLERANCE * scale:
        return False
    if abs(first.endpoint - second.endpoint) > config.CONTIGUITY_TOLERANCE * scale:
        return False
    closed = first.concat(second.reversed())
    return all(abs(closed.winding_number(p)) < 0.5 for p in poles)


def polygonal_path(vertices: typing.Sequence, poles: typing.Iterable) -> Path:
    """Chain of straight_path legs through the vertices."""
    poles = list(poles)
    vertices = [complex(v) for v in vertices]
    path = Path.trivial(vertices[0])
    for a, b in common.pairwise(vertices):
        path = path.concat(straight_path(a, b, poles))
    return path
