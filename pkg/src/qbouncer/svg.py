"""
Bare-bones SVG line charts: axes, ticks, polylines, vertical markers, legend.

Only what the CLI figures need; no plotting dependency.
"""

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=40, bottom=55)


def _fmt(v):
    return f"{v:.2f}"


def _ticks(lo, hi, count=5):
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


class LineChart:
    def __init__(self, title="", xlabel="", ylabel="", logx=False, logy=False):
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.logx = logx
        self.logy = logy
        self.series = []
        self.markers = []

    def add_series(self, x, y, label, color="#1f77b4", dash=None, width=1.5):
        pts = [(float(a), float(b)) for a, b in zip(x, y)
               if math.isfinite(a) and math.isfinite(b)
               and (not self.logx or a > 0) and (not self.logy or b > 0)]
        self.series.append(dict(points=pts, label=label, color=color, dash=dash, width=width))

    def add_vline(self, x, label="", color="#000000", dash="6,4"):
        self.markers.append(dict(x=float(x), label=label, color=color, dash=dash))

    def _tx(self, v):
        return math.log10(v) if self.logx else v

    def _ty(self, v):
        return math.log10(v) if self.logy else v

    def _limits(self):
        xs = [self._tx(x) for s in self.series for x, _ in s["points"]]
        xs += [self._tx(m["x"]) for m in self.markers]
        ys = [self._ty(y) for s in self.series for _, y in s["points"]]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        if not self.logy:
            y0 = min(y0, 0.0)
        pad = 0.05 * (y1 - y0 or 1.0)
        return x0, x1 if x1 > x0 else x0 + 1, y0 - (pad if self.logy else 0), y1 + pad

    def render(self, comment=None):
        x0, x1, y0, y1 = self._limits()
        pw = WIDTH - MARGIN["left"] - MARGIN["right"]
        ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

        def px(v):
            return MARGIN["left"] + (self._tx(v) - x0) / (x1 - x0) * pw

        def py(v):
            return MARGIN["top"] + ph - (self._ty(v) - y0) / (y1 - y0) * ph

        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
               f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">']
        if comment:
            out.append(f"<!-- {escape(comment)} -->")
        out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')
        out.append(f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">'
                   f'{escape(self.title)}</text>')
        left, bottom = MARGIN["left"], MARGIN["top"] + ph
        out.append(f'<rect x="{left}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
                   f'fill="none" stroke="#000000"/>')

        for t in _ticks(x0, x1):
            xv = 10 ** t if self.logx else t
            x = px(xv)
            out.append(f'<line x1="{_fmt(x)}" y1="{bottom}" x2="{_fmt(x)}" y2="{bottom + 5}" stroke="#000000"/>')
            out.append(f'<text x="{_fmt(x)}" y="{bottom + 18}" text-anchor="middle">{_tick_label(xv)}</text>')
        for t in _ticks(y0, y1):
            yv = 10 ** t if self.logy else t
            y = py(yv)
            out.append(f'<line x1="{left - 5}" y1="{_fmt(y)}" x2="{left}" y2="{_fmt(y)}" stroke="#000000"/>')
            out.append(f'<text x="{left - 8}" y="{_fmt(y + 4)}" text-anchor="end">{_tick_label(yv)}</text>')
        out.append(f'<text x="{left + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">'
                   f'{escape(self.xlabel)}</text>')
        out.append(f'<text x="16" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {MARGIN["top"] + ph / 2:.1f})">{escape(self.ylabel)}</text>')

        out.append(f'<clipPath id="plot"><rect x="{left}" y="{MARGIN["top"]}" width="{pw}" height="{ph}"/></clipPath>')
        for s in self.series:
            pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in s["points"])
            dash = f' stroke-dasharray="{s["dash"]}"' if s["dash"] else ""
            out.append(f'<polyline clip-path="url(#plot)" fill="none" stroke="{s["color"]}" '
                       f'stroke-width="{s["width"]}"{dash} points="{pts}"/>')
        for m in self.markers:
            x = px(m["x"])
            out.append(f'<line x1="{_fmt(x)}" y1="{MARGIN["top"]}" x2="{_fmt(x)}" y2="{bottom}" '
                       f'stroke="{m["color"]}" stroke-dasharray="{m["dash"]}"/>')

        entries = [(s["label"], s["color"], s["dash"]) for s in self.series]
        entries += [(m["label"], m["color"], m["dash"]) for m in self.markers if m["label"]]
        for i, (label, color, dash) in enumerate(entries):
            y = MARGIN["top"] + 16 + 16 * i
            x = left + pw - 170
            d = f' stroke-dasharray="{dash}"' if dash else ""
            out.append(f'<line x1="{x}" y1="{y - 4}" x2="{x + 24}" y2="{y - 4}" stroke="{color}" stroke-width="2"{d}/>')
            out.append(f'<text x="{x + 30}" y="{y}">{escape(label)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path, comment=None):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render(comment))


def _tick_label(v):
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-2:
        return f"{v:.0e}"
    return f"{v:g}"
