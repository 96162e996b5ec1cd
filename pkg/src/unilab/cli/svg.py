"""Deterministic SVG plots: grayscale value heatmap plus line overlays.

The heatmap is an 8-bit grayscale PNG (0 -> black, 1 -> white) built with
zlib and embedded as a data URI, so the output is a single self-contained
file whose bytes depend only on the input.
"""

from __future__ import annotations

import base64
import struct
import zlib
from xml.sax.saxutils import escape

import numpy as np

from ..analysis import DiscontinuitySet, SetValuedFunction
from ..core import Operator

SIZE = 480  # side of the unit square in pixels
MARGIN = 48
BACKGROUND = 128  # gray for points outside the carrier


def png_gray(pixels: np.ndarray) -> bytes:
    """Encode a 2-D uint8 array as a grayscale PNG (rows top to bottom)."""
    h, w = pixels.shape
    raw = b"".join(b"\x00" + pixels[r].astype(np.uint8).tobytes() for r in range(h))

    def chunk(tag: bytes, data: bytes) -> bytes:
        return struct.pack(">I", len(data)) + tag + data + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)

    ihdr = struct.pack(">IIBBBBB", w, h, 8, 0, 0, 0, 0)
    return b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", ihdr) + chunk(b"IDAT", zlib.compress(raw, 9)) + chunk(b"IEND", b"")


def heatmap(op: Operator, n: int) -> np.ndarray:
    """n x n pixel values; row 0 is y = 1 so the picture has y pointing up."""
    g = np.linspace(0.0, 1.0, n)
    X, Y = np.meshgrid(g, g[::-1], indexing="xy")
    px = np.full(X.shape, BACKGROUND, dtype=np.uint8)
    inside = op.carrier.contains_array(X) & op.carrier.contains_array(Y)
    if np.any(inside):
        V = op.values(X[inside], Y[inside])
        px[inside] = np.clip(np.rint(V * 255.0), 0, 255).astype(np.uint8)
    return px


def _sx(x: float) -> str:
    return f"{MARGIN + SIZE * x:.2f}"


def _sy(y: float) -> str:
    return f"{MARGIN + SIZE * (1.0 - y):.2f}"


def _polyline(xs, ys, cls: str) -> str:
    pts = " ".join(f"{_sx(x)},{_sy(y)}" for x, y in zip(xs, ys))
    return f'<polyline class="{cls}" points="{pts}"/>'


def svf_elements(r: SetValuedFunction, density: int = 256) -> list[str]:
    out = []
    for p in r.pieces:
        d = p.domain
        if p.is_curve:
            xs = np.linspace(d.lo, d.hi, max(2, int(np.ceil((d.hi - d.lo) * density)) + 1))
            knots = getattr(p.curve, "knots", np.empty(0))
            xs = np.union1d(xs, knots[(knots > d.lo) & (knots < d.hi)])
            lo, hi = p.bounds(xs)
            out.append(_polyline(xs, (lo + hi) / 2, "svf"))
            continue
        im = p.image
        if d.is_singleton and im.is_singleton:
            out.append(f'<circle class="svf-pt" cx="{_sx(d.lo)}" cy="{_sy(im.lo)}" r="3"/>')
        elif d.is_singleton:
            out.append(_polyline([d.lo, d.lo], [im.lo, im.hi], "svf"))
        elif im.is_singleton:
            out.append(_polyline([d.lo, d.hi], [im.lo, im.lo], "svf"))
        else:
            out.append(
                f'<rect class="svf-box" x="{_sx(d.lo)}" y="{_sy(im.hi)}" '
                f'width="{SIZE * (d.hi - d.lo):.2f}" height="{SIZE * (im.hi - im.lo):.2f}"/>'
            )
    return out


def discontinuity_elements(D: DiscontinuitySet, n: int) -> list[str]:
    """One path of small squares, one per detected point; dense runs read as bold lines."""
    P = D.as_array()
    if not len(P):
        return []
    s = max(2.5, 1.25 * SIZE / (n - 1))
    order = np.lexsort((P[:, 1], P[:, 0]))
    cmds = [f"M{MARGIN + SIZE * x - s / 2:.2f} {MARGIN + SIZE * (1 - y) - s / 2:.2f}h{s:.2f}v{s:.2f}h{-s:.2f}z" for x, y in P[order]]
    return [f'<path class="disc" d="{"".join(cmds)}"/>']


def render_svg(
    op: Operator,
    title: str,
    n: int,
    discontinuities: DiscontinuitySet | None = None,
    svf: SetValuedFunction | None = None,
) -> str:
    png = base64.b64encode(png_gray(heatmap(op, n))).decode("ascii")
    half = 0.5 / (n - 1)
    total = SIZE + 2 * MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">',
        f"<title>{escape(title)}</title>",
        "<style>"
        ".block{stroke:#7a7a7a;stroke-width:0.75;fill:none;stroke-dasharray:4 3}"
        ".frame{stroke:#000;stroke-width:1;fill:none}"
        ".disc{fill:#d01c1c;stroke:none}"
        ".svf{stroke:#1f5fd0;stroke-width:3;fill:none;stroke-linecap:round}"
        ".svf-box{fill:#1f5fd0;fill-opacity:0.35;stroke:#1f5fd0;stroke-width:2}"
        ".svf-pt{fill:#1f5fd0}"
        "text{font-family:sans-serif;font-size:12px}"
        "</style>",
        f'<clipPath id="unit"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/></clipPath>',
        f'<image clip-path="url(#unit)" x="{_sx(-half)}" y="{_sy(1 + half)}" width="{SIZE * (1 + 2 * half):.2f}" '
        f'height="{SIZE * (1 + 2 * half):.2f}" preserveAspectRatio="none" style="image-rendering:pixelated" '
        f'href="data:image/png;base64,{png}"/>',
    ]
    for b in op.anchor_points():
        if 0.0 < b < 1.0:
            parts.append(f'<line class="block" x1="{_sx(b)}" y1="{_sy(0)}" x2="{_sx(b)}" y2="{_sy(1)}"/>')
            parts.append(f'<line class="block" x1="{_sx(0)}" y1="{_sy(b)}" x2="{_sx(1)}" y2="{_sy(b)}"/>')
    parts.append(f'<rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/>')
    if discontinuities is not None:
        parts.append('<g clip-path="url(#unit)">')
        parts.extend(discontinuity_elements(discontinuities, n))
        parts.append("</g>")
    if svf is not None:
        parts.extend(svf_elements(svf))
    for t in (0.0, 0.5, 1.0):
        parts.append(f'<text x="{_sx(t)}" y="{MARGIN + SIZE + 18}" text-anchor="middle">{t:g}</text>')
        parts.append(f'<text x="{MARGIN - 8}" y="{MARGIN + SIZE * (1 - t) + 4:.2f}" text-anchor="end">{t:g}</text>')
    parts.append(f'<text x="{MARGIN}" y="{MARGIN - 14}">{escape(title)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
