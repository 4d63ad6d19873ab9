"""Classroom configuration: camera geometry, grid dimensions, thresholds.

The on-disk format is a flat key/value text file, one `key = value` per line,
`#` comments allowed.  `rect_quad` holds 8 floats (TL TR BR BL corners of the
seating area as seen in the image); `principal_point` holds 2 floats and
defaults to the image center.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

Point = tuple[float, float]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ClassroomConfig:
    image_w: int
    image_h: int
    rows: int
    cols: int
    rect_quad: tuple[Point, Point, Point, Point]
    k1: float = 0.0
    k2: float = 0.0
    principal_point: Point | None = None
    sample_interval_s: float = 3.0
    iou_threshold: float = 0.2
    miss_tolerance_t: int = 2
    kp_conf_min: float = 0.3
    row_origin_front: bool = True
    col_origin_left: bool = True
    # Hand-raising heuristic knobs (anatomical reliability ordering).
    hr_wrist_weight: float = 3.0
    hr_elbow_weight: float = 2.0
    hr_box_expand: float = 0.2
    match_radius_scale: float = 2.0

    def __post_init__(self) -> None:
        if self.image_w <= 0 or self.image_h <= 0:
            raise ConfigError("image dimensions must be positive")
        if self.rows < 1 or self.cols < 1:
            raise ConfigError("rows and cols must be >= 1")
        if not (0.0 < self.iou_threshold < 1.0):
            raise ConfigError("iou_threshold must be in (0, 1)")
        if self.miss_tolerance_t < 0:
            raise ConfigError("miss_tolerance_T must be >= 0")
        if self.sample_interval_s <= 0:
            raise ConfigError("sample_interval_s must be positive")
        _check_convex_quad(self.rect_quad)

    @property
    def center(self) -> Point:
        if self.principal_point is not None:
            return self.principal_point
        return (self.image_w / 2.0, self.image_h / 2.0)

    @property
    def image_diagonal(self) -> float:
        return float((self.image_w**2 + self.image_h**2) ** 0.5)


def _check_convex_quad(quad: tuple[Point, ...]) -> None:
    if len(quad) != 4:
        raise ConfigError("rect_quad needs exactly 4 points")
    crosses = []
    for i in range(4):
        ax, ay = quad[i]
        bx, by = quad[(i + 1) % 4]
        cx, cy = quad[(i + 2) % 4]
        crosses.append((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    if any(abs(c) < 1e-9 for c in crosses):
        raise ConfigError("rect_quad has three (nearly) collinear points")
    if not (all(c > 0 for c in crosses) or all(c < 0 for c in crosses)):
        raise ConfigError("rect_quad is not convex")


_BOOL_KEYS = {"row_origin_front", "col_origin_left"}
_INT_KEYS = {"image_w", "image_h", "rows", "cols", "miss_tolerance_t"}
# Accept the upper-case T spelling used in docs for the miss tolerance.
_KEY_ALIASES = {"miss_tolerance_T": "miss_tolerance_t"}


def parse_config(text: str) -> ClassroomConfig:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip()
        key = _KEY_ALIASES.get(key, key)
        val = val.strip()
        if key == "rect_quad":
            nums = [float(v) for v in val.replace(",", " ").split()]
            if len(nums) != 8:
                raise ConfigError(f"line {lineno}: rect_quad needs 8 floats (TL TR BR BL)")
            values[key] = tuple((nums[i], nums[i + 1]) for i in range(0, 8, 2))
        elif key == "principal_point":
            nums = [float(v) for v in val.replace(",", " ").split()]
            if len(nums) != 2:
                raise ConfigError(f"line {lineno}: principal_point needs 2 floats")
            values[key] = (nums[0], nums[1])
        elif key in _BOOL_KEYS:
            if val.lower() not in {"true", "false"}:
                raise ConfigError(f"line {lineno}: {key} must be true or false")
            values[key] = val.lower() == "true"
        elif key in _INT_KEYS:
            values[key] = int(val)
        else:
            values[key] = float(val)

    known = {f.name for f in fields(ClassroomConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = {"image_w", "image_h", "rows", "cols", "rect_quad"} - set(values)
    if missing:
        raise ConfigError(f"missing config keys: {sorted(missing)}")
    return ClassroomConfig(**values)  # type: ignore[arg-type]


def load_config(path: str | Path) -> ClassroomConfig:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    return parse_config(p.read_text(encoding="utf-8"))


def format_config(cfg: ClassroomConfig) -> str:
    lines = []
    for f in fields(ClassroomConfig):
        val = getattr(cfg, f.name)
        if val is None:
            continue
        if f.name == "rect_quad":
            flat = " ".join(repr(float(v)) for pt in val for v in pt)
            lines.append(f"rect_quad = {flat}")
        elif f.name == "principal_point":
            lines.append(f"principal_point = {val[0]!r} {val[1]!r}")
        elif isinstance(val, bool):
            lines.append(f"{f.name} = {'true' if val else 'false'}")
        else:
            lines.append(f"{f.name} = {val!r}")
    return "\n".join(lines) + "\n"


def save_config(cfg: ClassroomConfig, path: str | Path) -> None:
    Path(path).write_text(format_config(cfg), encoding="utf-8")


def config_to_dict(cfg: ClassroomConfig) -> dict:
    out: dict[str, object] = {}
    for f in fields(ClassroomConfig):
        val = getattr(cfg, f.name)
        if f.name == "rect_quad":
            out[f.name] = [[float(x), float(y)] for x, y in val]
        elif f.name == "principal_point":
            out[f.name] = None if val is None else [float(val[0]), float(val[1])]
        else:
            out[f.name] = val
    return out


def config_from_dict(data: dict) -> ClassroomConfig:
    kwargs = dict(data)
    kwargs["rect_quad"] = tuple((float(x), float(y)) for x, y in data["rect_quad"])
    pp = data.get("principal_point")
    kwargs["principal_point"] = None if pp is None else (float(pp[0]), float(pp[1]))
    return ClassroomConfig(**kwargs)
