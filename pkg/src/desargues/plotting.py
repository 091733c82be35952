"""SVG drawings of configurations and sextic root plots (matplotlib, Agg backend)."""

from __future__ import annotations

import itertools

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .projective import PAIRS, TRIPLES, Configuration, pair_label, triple_label  # noqa: E402

_CHARTS = [(1.0, 0.37, 0.61), (0.53, 1.0, -0.29), (-0.41, 0.23, 1.0), (1.0, 1.0, 1.0),
           (1.0, -0.7, 0.3)]


class PlotError(ValueError):
    pass


def _real(v):
    z = np.array([complex(x) for x in v])
    if np.max(np.abs(z.imag)) > 1e-9 * max(1.0, np.max(np.abs(z))):
        raise PlotError("configuration is not real")
    return z.real


def _chart(points):
    """Pick an affine chart ``w = T y`` keeping every point far from the line at infinity."""
    best, best_score = None, -1.0
    for h in _CHARTS:
        h = np.array(h)
        score = min(abs(h @ p) / np.linalg.norm(p) for p in points)
        if score > best_score:
            best, best_score = h, score
    # complete h to an invertible matrix
    for e in np.eye(3):
        for f in np.eye(3):
            T = np.array([e, f, best])
            if abs(np.linalg.det(T)) > 1e-6:
                return T
    raise PlotError("no affine chart")


def _clip(m, box):
    """Segment of the line ``m0 u + m1 v + m2 = 0`` inside the box."""
    (u0, u1), (v0, v1) = box
    pts = []
    if abs(m[1]) > 1e-14:
        for u in (u0, u1):
            v = -(m[0] * u + m[2]) / m[1]
            if v0 - 1e-9 <= v <= v1 + 1e-9:
                pts.append((u, v))
    if abs(m[0]) > 1e-14:
        for v in (v0, v1):
            u = -(m[1] * v + m[2]) / m[0]
            if u0 - 1e-9 <= u <= u1 + 1e-9:
                pts.append((u, v))
    if len(pts) < 2:
        return None
    a, b = max(itertools.combinations(pts, 2), key=lambda ab: np.hypot(ab[0][0] - ab[1][0], ab[0][1] - ab[1][1]))
    return a, b


def plot_configuration(cfg: Configuration, out, title: str | None = None):
    """Write an SVG of the ten points and ten lines.  Element ids are the labels."""
    pts = {pair_label(p): _real(cfg.points[pair_label(p)]) for p in PAIRS
           if cfg.points[pair_label(p)] is not None}
    if not pts:
        raise PlotError("no points to draw")
    T = _chart(list(pts.values()))
    Tinv_t = np.linalg.inv(T).T
    aff = {}
    for k, p in pts.items():
        w = T @ p
        aff[k] = (w[0] / w[2], w[1] / w[2])
    us = [a[0] for a in aff.values()]
    vs = [a[1] for a in aff.values()]
    pad_u = 0.15 * max(max(us) - min(us), 1e-3)
    pad_v = 0.15 * max(max(vs) - min(vs), 1e-3)
    box = ((min(us) - pad_u, max(us) + pad_u), (min(vs) - pad_v, max(vs) + pad_v))
    special = set(triple_label(t) for t in cfg.four_point_lines())

    fig, ax = plt.subplots(figsize=(6, 6))
    for t in TRIPLES:
        key = triple_label(t)
        l = cfg.lines[key]
        if l is None:
            continue
        m = Tinv_t @ _real(l)
        seg = _clip(m, box)
        if seg is None:
            continue
        (a0, a1), (b0, b1) = seg
        hot = key in special
        ax.plot([a0, b0], [a1, b1], color="crimson" if hot else "0.45", lw=2.2 if hot else 0.9,
                gid=key, zorder=1)
    for key, (u, v) in aff.items():
        ax.scatter([u], [v], s=28, color="navy", zorder=3, gid=key)
        ax.annotate(key[1:], (u, v), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_xlim(*box[0])
    ax.set_ylim(*box[1])
    ax.set_aspect("equal", adjustable="box")
    ax.set_xticks([])
    ax.set_yticks([])
    if title:
        ax.set_title(title, fontsize=9)
    fig.savefig(out, format="svg")
    plt.close(fig)


def plot_roots(named_roots, out, title: str | None = None):
    """Scatter of affine roots ``t1/t0`` of several binary forms (one series each)."""
    fig, ax = plt.subplots(figsize=(5, 4))
    for name, roots in named_roots.items():
        z = [complex(r[1]) / complex(r[0]) for r, _ in roots if complex(r[0]) != 0]
        ax.scatter([c.real for c in z], [c.imag for c in z], label=name, s=24)
    ax.axhline(0, color="0.8", lw=0.6)
    ax.axvline(0, color="0.8", lw=0.6)
    ax.legend(fontsize=7)
    if title:
        ax.set_title(title, fontsize=9)
    fig.savefig(out, format="svg")
    plt.close(fig)


def plot_timings(rows, out):
    """Horizontal bars of criterion wall times, colored by outcome."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    names = [r[0] for r in rows]
    secs = [r[2] for r in rows]
    colors = ["seagreen" if r[1] else "firebrick" for r in rows]
    ax.barh(names, secs, color=colors)
    ax.set_xlabel("seconds")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(out, format="svg")
    plt.close(fig)
