"""Instances: data model, validation, JSON I/O and the synthetic generator."""

from __future__ import annotations

import bisect
import enum
import json
import math
import os
from dataclasses import dataclass, replace

from .geometry import TWO_PI, PolarPoint, normalize_angle
from .rng import SplitMix64, derive_seed

WIDTH_SUM_RTOL = 1e-9
MAX_ATTEMPTS = 100_000


class InstanceError(ValueError):
    """Base class for instance loading problems."""


class MalformedJSONError(InstanceError):
    pass


class SchemaError(InstanceError):
    pass


class InvalidInstanceError(InstanceError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class GenerationError(RuntimeError):
    """Raised when the generator cannot satisfy its placement constraints."""


class Distribution(str, enum.Enum):
    D_u = "D_u"  # uniform
    D_uo = "D_uo"  # half uniform, half off-center
    D_o = "D_o"  # off-center cluster

    @property
    def slug(self) -> str:
        return {"D_u": "uniform", "D_uo": "uniform_offcenter", "D_o": "offcenter"}[self.value]


@dataclass(frozen=True)
class Feature:
    position: PolarPoint
    label_text: str
    width: float


@dataclass(frozen=True)
class Instance:
    radius: float
    features: tuple[Feature, ...]
    id: str = ""
    distribution: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))

    @property
    def n(self) -> int:
        return len(self.features)

    @property
    def circumference(self) -> float:
        return TWO_PI * self.radius

    @property
    def positions(self) -> list[PolarPoint]:
        return [f.position for f in self.features]

    @property
    def widths(self) -> list[float]:
        return [f.width for f in self.features]

    def with_widths(self, widths) -> Instance:
        widths = list(widths)
        if len(widths) != self.n:
            raise ValueError("one width per feature required")
        feats = tuple(replace(f, width=float(w)) for f, w in zip(self.features, widths))
        return replace(self, features=feats)

    def with_uniform_widths(self) -> Instance:
        return self.with_widths([self.circumference / self.n] * self.n)

    def has_uniform_widths(self, rtol: float = 1e-9) -> bool:
        target = self.circumference / self.n
        return all(abs(w - target) <= rtol * target for w in self.widths)


@dataclass(frozen=True)
class Violation:
    rule: str
    indices: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.rule}{self.indices}" if self.indices else self.rule


def validate(inst: Instance, min_separation: float | None = None) -> list[Violation]:
    """Check the instance invariants and return every violation found.

    ``min_separation`` is only enforced when given; instances do not carry it.
    """
    out: list[Violation] = []
    R = inst.radius
    if not (math.isfinite(R) and R > 0):
        return [Violation("Radius")]
    if inst.n == 0:
        return [Violation("Empty")]

    for i, f in enumerate(inst.features):
        p = f.position
        if not (math.isfinite(p.r) and math.isfinite(p.theta)) or not (0 <= p.theta < TWO_PI):
            out.append(Violation("BadCoordinate", (i,)))
        elif p.r >= R:
            out.append(Violation("OutsideDisk", (i,)))
        if not (math.isfinite(f.width) and f.width > 0):
            out.append(Violation("NonPositiveWidth", (i,)))

    total = math.fsum(f.width for f in inst.features)
    if not math.isclose(total, inst.circumference, rel_tol=WIDTH_SUM_RTOL):
        out.append(Violation("WidthSum"))

    radii = sorted((f.position.r, i) for i, f in enumerate(inst.features))
    for (ra, ia), (rb, ib) in zip(radii, radii[1:]):
        if rb - ra <= 1e-12 * R:
            out.append(Violation("GeneralPosition", tuple(sorted((ia, ib)))))

    if min_separation is not None:
        pts = [f.position.cartesian() for f in inst.features]
        for i in range(inst.n):
            for j in range(i + 1, inst.n):
                if math.dist(pts[i], pts[j]) < min_separation:
                    out.append(Violation("MinSeparation", (i, j)))
    return out


def normalize_widths(inst: Instance) -> Instance:
    """Scale widths so they sum to the circumference, keeping their proportions."""
    widths = inst.widths
    if any(not (w > 0 and math.isfinite(w)) for w in widths):
        raise ValueError("all widths must be positive and finite")
    total = math.fsum(widths)
    if total == inst.circumference:
        return inst
    scale = inst.circumference / total
    return inst.with_widths(w * scale for w in widths)


# --------------------------------------------------------------------------- generator


@dataclass
class GeneratorConfig:
    n: int
    distribution: Distribution = Distribution.D_u
    seed: int = 0
    R: float = 200.0
    feature_radius_max: float = 150.0
    min_separation: float = 5.0
    width_range: tuple[float, float] = (1.0, 5.0)
    uniform_widths: bool = False
    center_radius_max: float = 100.0
    cluster_sigma: float = 75.0
    id: str | None = None

    def __post_init__(self):
        self.distribution = Distribution(self.distribution)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.feature_radius_max < self.R:
            raise ValueError("feature_radius_max must be smaller than R")
        if not self.min_separation > 0:
            raise ValueError("min_separation must be positive")
        lo, hi = self.width_range
        if not 0 < lo <= hi:
            raise ValueError("width_range must satisfy 0 < lo <= hi")


class _Placement:
    """Accepted points with a grid hash for the separation test."""

    def __init__(self, sep: float, radius_gap: float):
        self.sep = sep
        self.radius_gap = radius_gap
        self.cells: dict[tuple[int, int], list[tuple[float, float]]] = {}
        self.radii: list[float] = []

    def _cell(self, x, y):
        return int(math.floor(x / self.sep)), int(math.floor(y / self.sep))

    def fits(self, r: float, theta: float) -> bool:
        k = bisect.bisect_left(self.radii, r)
        for j in (k - 1, k):
            if 0 <= j < len(self.radii) and abs(self.radii[j] - r) <= self.radius_gap:
                return False
        x, y = r * math.cos(theta), r * math.sin(theta)
        cx, cy = self._cell(x, y)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for px, py in self.cells.get((cx + dx, cy + dy), ()):
                    if math.hypot(px - x, py - y) < self.sep:
                        return False
        return True

    def add(self, r: float, theta: float) -> None:
        bisect.insort(self.radii, r)
        x, y = r * math.cos(theta), r * math.sin(theta)
        self.cells.setdefault(self._cell(x, y), []).append((x, y))


def _draw_uniform(rng: SplitMix64, cfg: GeneratorConfig) -> tuple[float, float]:
    theta = rng.uniform(0.0, TWO_PI)
    r = rng.uniform(0.0, cfg.feature_radius_max)
    return r, theta


def _draw_offcenter(rng, cfg, center) -> tuple[float, float] | None:
    cx, cy = center
    a = rng.uniform(0.0, TWO_PI)
    d = abs(rng.normal(0.0, cfg.cluster_sigma))
    x, y = cx + d * math.cos(a), cy + d * math.sin(a)
    r = math.hypot(x, y)
    if r > cfg.feature_radius_max:
        return None
    return r, normalize_angle(math.atan2(y, x))


def generate(cfg: GeneratorConfig) -> Instance:
    """Draw a random instance; identical configs give identical instances."""
    rng = SplitMix64(cfg.seed)
    n_off = {Distribution.D_u: 0, Distribution.D_uo: cfg.n // 2, Distribution.D_o: cfg.n}[
        cfg.distribution
    ]
    n_uni = cfg.n - n_off
    center = None
    if n_off:
        ct = rng.uniform(0.0, TWO_PI)
        cr = rng.uniform(0.0, cfg.center_radius_max)
        center = (cr * math.cos(ct), cr * math.sin(ct))

    placed = _Placement(cfg.min_separation, 1e-6 * cfg.R)
    points: list[tuple[float, float]] = []
    attempts = 0
    for k in range(cfg.n):
        while True:
            attempts += 1
            if attempts > MAX_ATTEMPTS:
                raise GenerationError(
                    f"gave up after {MAX_ATTEMPTS} draws placing feature {k} of {cfg.n}"
                )
            pt = _draw_uniform(rng, cfg) if k < n_uni else _draw_offcenter(rng, cfg, center)
            if pt is not None and placed.fits(*pt):
                break
        placed.add(*pt)
        points.append(pt)

    if cfg.uniform_widths:
        widths = [1.0] * cfg.n
    else:
        widths = [rng.uniform(*cfg.width_range) for _ in range(cfg.n)]
    feats = tuple(
        Feature(PolarPoint(r, theta), f"f{i}", w) for i, ((r, theta), w) in enumerate(zip(points, widths))
    )
    inst_id = cfg.id if cfg.id is not None else f"{cfg.distribution.slug}_{cfg.n}_{cfg.seed}"
    inst = Instance(cfg.R, feats, inst_id, cfg.distribution.value)
    return normalize_widths(inst)


def generate_corpus(
    ns,
    distributions=tuple(Distribution),
    per_combo: int = 5,
    seed: int = 0,
    **cfg_kwargs,
) -> list[Instance]:
    """Instances for every (distribution, n, k) combination, named ``<dist>_<n>_<k>``."""
    out = []
    for d in distributions:
        d = Distribution(d)
        for n in ns:
            for k in range(per_combo):
                s = derive_seed(seed, list(Distribution).index(d), n, k)
                cfg = GeneratorConfig(n=n, distribution=d, seed=s, id=f"{d.slug}_{n}_{k}", **cfg_kwargs)
                out.append(generate(cfg))
    return out


# --------------------------------------------------------------------------- JSON


def to_dict(inst: Instance) -> dict:
    d = {
        "id": inst.id,
        "radius": inst.radius,
        "features": [
            {"theta": f.position.theta, "r": f.position.r, "width": f.width, "text": f.label_text}
            for f in inst.features
        ],
    }
    if inst.distribution is not None:
        d["distribution"] = inst.distribution
    return d


def dumps(inst: Instance) -> str:
    return json.dumps(to_dict(inst), indent=2, allow_nan=False) + "\n"


def _number(obj, key, where):
    if key not in obj:
        raise SchemaError(f"{where}: missing '{key}'")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{where}: '{key}' must be a number")
    if not math.isfinite(v):
        raise SchemaError(f"{where}: '{key}' must be finite")
    return float(v)


def from_dict(d) -> Instance:
    if not isinstance(d, dict):
        raise SchemaError("instance must be a JSON object")
    R = _number(d, "radius", "instance")
    feats_raw = d.get("features")
    if not isinstance(feats_raw, list):
        raise SchemaError("instance: 'features' must be a list")
    feats = []
    for i, fr in enumerate(feats_raw):
        where = f"features[{i}]"
        if not isinstance(fr, dict):
            raise SchemaError(f"{where}: must be an object")
        theta = _number(fr, "theta", where)
        r = _number(fr, "r", where)
        w = _number(fr, "width", where)
        if not 0 <= theta < TWO_PI:
            raise SchemaError(f"{where}: theta outside [0, 2pi)")
        if r < 0:
            raise SchemaError(f"{where}: negative r")
        text = fr.get("text", "")
        if not isinstance(text, str):
            raise SchemaError(f"{where}: 'text' must be a string")
        feats.append(Feature(PolarPoint(r, theta), text, w))
    inst_id = d.get("id", "")
    dist = d.get("distribution")
    if not isinstance(inst_id, str) or (dist is not None and not isinstance(dist, str)):
        raise SchemaError("instance: 'id' and 'distribution' must be strings")
    return Instance(R, tuple(feats), inst_id, dist)


def loads(text: str, check: bool = True) -> Instance:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJSONError(str(e)) from e
    inst = from_dict(raw)
    if check:
        problems = validate(inst)
        if problems:
            raise InvalidInstanceError(problems)
    return inst


def read_json(path: str | os.PathLike, check: bool = True) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), check=check)


def write_json(inst: Instance, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(inst))
