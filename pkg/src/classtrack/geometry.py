"""Camera geometry: division-model radial undistortion and the projective
rectification that maps the seating area onto the unit square."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ClassroomConfig, Point

UNIT_SQUARE: tuple[Point, Point, Point, Point] = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class DistortionParams:
    """Division-model radial distortion around the principal point.

    Radius is normalized by norm_radius (half the image diagonal), so k1/k2
    are dimensionless; k1 = k2 = 0 is the identity.
    """

    k1: float
    k2: float
    cx: float
    cy: float
    norm_radius: float

    def __post_init__(self) -> None:
        if self.norm_radius <= 0:
            raise GeometryError("norm_radius must be positive")

    @classmethod
    def from_config(cls, cfg: ClassroomConfig) -> "DistortionParams":
        cx, cy = cfg.center
        return cls(cfg.k1, cfg.k2, cx, cy, cfg.image_diagonal / 2.0)

    @property
    def is_identity(self) -> bool:
        return self.k1 == 0.0 and self.k2 == 0.0


def _as_points(p) -> tuple[np.ndarray, bool]:
    arr = np.asarray(p, dtype=float)
    if arr.ndim == 1:
        return arr.reshape(1, 2), True
    return arr, False


def undistort(p, d: DistortionParams):
    """p' = c + (p - c) / (1 + k1 r^2 + k2 r^4), r = |p - c| / norm_radius."""
    pts, single = _as_points(p)
    if d.is_identity:
        # exact identity, not merely a division by 1.0
        if single:
            return (float(pts[0, 0]), float(pts[0, 1]))
        return pts
    delta = pts - (d.cx, d.cy)
    r2 = (delta**2).sum(axis=1) / d.norm_radius**2
    denom = 1.0 + d.k1 * r2 + d.k2 * r2**2
    if (np.abs(denom) <= 1e-9).any():
        raise GeometryError("degenerate distortion: denominator vanishes")
    out = (d.cx, d.cy) + delta / denom[:, None]
    if single:
        return (float(out[0, 0]), float(out[0, 1]))
    return out


def distort(p, d: DistortionParams, *, tol: float = 1e-12, max_iter: int = 60):
    """Inverse of undistort (Newton on the normalized radius)."""
    pts, single = _as_points(p)
    if d.is_identity:
        if single:
            return (float(pts[0, 0]), float(pts[0, 1]))
        return pts
    delta = pts - (d.cx, d.cy)
    ru = np.sqrt((delta**2).sum(axis=1)) / d.norm_radius
    rd = ru.copy()
    for _ in range(max_iter):
        denom = 1.0 + d.k1 * rd**2 + d.k2 * rd**4
        f = rd / denom - ru
        fp = (1.0 - d.k1 * rd**2 - 3.0 * d.k2 * rd**4) / denom**2
        stepable = np.abs(fp) > 1e-14
        step = np.where(stepable, f / np.where(stepable, fp, 1.0), 0.0)
        rd = rd - step
        if np.all(np.abs(f) < tol):
            break
    scale = np.ones_like(ru)
    nz = ru > 0
    scale[nz] = rd[nz] / ru[nz]
    out = (d.cx, d.cy) + delta * scale[:, None]
    if single:
        return (float(out[0, 0]), float(out[0, 1]))
    return out


def solve_homography(src, dst) -> np.ndarray:
    """3x3 projective map sending 4 src points to 4 dst points (h33 = 1).

    Solves the 8-unknown linear system from the four correspondences and
    verifies the mapping to 1e-6 in dst units.
    """
    s = np.asarray(src, dtype=float)
    t = np.asarray(dst, dtype=float)
    if s.shape != (4, 2) or t.shape != (4, 2):
        raise GeometryError("need exactly 4 source and 4 destination points")
    a = np.zeros((8, 8))
    b = np.zeros(8)
    for i, ((x, y), (u, v)) in enumerate(zip(s, t)):
        a[2 * i] = [x, y, 1, 0, 0, 0, -u * x, -u * y]
        a[2 * i + 1] = [0, 0, 0, x, y, 1, -v * x, -v * y]
        b[2 * i] = u
        b[2 * i + 1] = v
    try:
        h = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise GeometryError(f"degenerate correspondences: {exc}") from exc
    H = np.append(h, 1.0).reshape(3, 3)
    if abs(np.linalg.det(H)) < 1e-12:
        raise GeometryError("homography is (near) singular")
    residual = np.abs(apply_homography(H, s) - t).max()
    if residual > 1e-6:
        raise GeometryError(f"homography residual {residual:.3g} exceeds 1e-6")
    return H


def apply_homography(H: np.ndarray, p):
    """Perspective division of H @ (x, y, 1)."""
    pts, single = _as_points(p)
    ones = np.ones((pts.shape[0], 1))
    hom = np.hstack([pts, ones]) @ np.asarray(H, dtype=float).T
    w = hom[:, 2]
    if (np.abs(w) <= 1e-12).any():
        raise GeometryError("point maps to infinity")
    out = hom[:, :2] / w[:, None]
    if single:
        return (float(out[0, 0]), float(out[0, 1]))
    return out


def invert_homography(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H, dtype=float)
    if abs(np.linalg.det(H)) < 1e-12:
        raise GeometryError("homography is (near) singular")
    inv = np.linalg.inv(H)
    return inv / inv[2, 2]


def rectification_homography(cfg: ClassroomConfig) -> np.ndarray:
    """Image -> unit-square map defined by the configured seating quad."""
    return solve_homography(cfg.rect_quad, UNIT_SQUARE)
