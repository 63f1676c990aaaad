"""Minimal SVG writer for pictures in the unit disk.

The viewport is 800x800 with the unit circle of radius 350px centered at
(400, 400); the imaginary axis points up.
"""
from __future__ import annotations

import numpy as np

SIZE = 800
RADIUS = 350.0
CENTER = SIZE / 2


def to_px(z):
    z = np.asarray(z, dtype=complex)
    return CENTER + RADIUS * z.real, CENTER - RADIUS * z.imag


def _pts(zs):
    x, y = to_px(zs)
    return " ".join("%.3f,%.3f" % (a, b) for a, b in zip(np.atleast_1d(x), np.atleast_1d(y)))


class Canvas:
    def __init__(self, title=""):
        self.title = title
        self.items = []

    def unit_circle(self, stroke="#000000", width=1.5):
        self.items.append(
            '<circle cx="%.3f" cy="%.3f" r="%.3f" fill="none" stroke="%s" stroke-width="%.2f"/>'
            % (CENTER, CENTER, RADIUS, stroke, width)
        )

    def polygon(self, zs, stroke="#1f77b4", width=0.6, fill="none"):
        self.items.append(
            '<polygon points="%s" fill="%s" stroke="%s" stroke-width="%.2f"/>'
            % (_pts(zs), fill, stroke, width)
        )

    def polyline(self, zs, stroke="#d62728", width=1.5, closed=False):
        zs = np.asarray(zs, dtype=complex)
        if closed and len(zs):
            zs = np.append(zs, zs[0])
        self.items.append(
            '<polyline points="%s" fill="none" stroke="%s" stroke-width="%.2f"/>'
            % (_pts(zs), stroke, width)
        )

    def segments(self, segs, stroke="#7f7f7f", width=0.3):
        segs = np.asarray(segs, dtype=complex).reshape(-1, 2)
        x0, y0 = to_px(segs[:, 0])
        x1, y1 = to_px(segs[:, 1])
        lines = [
            '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f"/>' % v for v in zip(x0, y0, x1, y1)
        ]
        self.items.append(
            '<g stroke="%s" stroke-width="%.2f">\n%s\n</g>' % (stroke, width, "\n".join(lines))
        )

    def dots(self, zs, fill="#000000", r=3.0):
        x, y = to_px(np.atleast_1d(zs))
        for a, b in zip(x, y):
            self.items.append('<circle cx="%.3f" cy="%.3f" r="%.2f" fill="%s"/>' % (a, b, r, fill))

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">\n'
            % (SIZE, SIZE, SIZE, SIZE)
        )
        if self.title:
            head += "<title>%s</title>\n" % self.title
        head += '<rect x="0" y="0" width="%d" height="%d" fill="#ffffff"/>\n' % (SIZE, SIZE)
        return head + "\n".join(self.items) + "\n</svg>\n"

    def save(self, path):
        with open(path, "w") as f:
            f.write(self.render())
