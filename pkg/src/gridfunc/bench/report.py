"""CSV and SVG output for benchmark records."""
from __future__ import annotations

import io
import os
import xml.etree.ElementTree as ET

CSV_HEADER = ("variant", "N", "n_calls", "min_time_ms")

_COLORS = {"a": "#1f77b4", "b": "#ff7f0e", "c": "#2ca02c", "d": "#d62728"}
_LABELS = {
    "a": "(a) static, by value",
    "b": "(b) static, out-parameter",
    "c": "(c) erased handle, by value",
    "d": "(d) virtual interface, out-parameter",
}


def _sorted(records):
    if not records:
        raise ValueError("no records")
    return sorted(records, key=lambda r: (r.variant, r.N))


def _write(text: str, destination) -> None:
    if destination is None:
        return
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(os.fspath(destination), "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def emit_csv(records, destination=None) -> str:
    """Write ``variant,N,n_calls,min_time_ms`` rows sorted by (variant, N).

    Times use a dot decimal separator and six decimals regardless of locale.
    Returns the CSV text; ``destination`` may be a path, a text stream or None.
    """
    rows = _sorted(records)
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for r in rows:
        buf.write(f"{r.variant},{r.N},{r.n_calls},{r.min_time_ms:.6f}\n")
    text = buf.getvalue()
    _write(text, destination)
    return text


def emit_chart(records, destination=None, *, width=720, height=440) -> str:
    """Render min time over N as a standalone SVG, one polyline per variant."""
    rows = _sorted(records)
    ns = sorted({r.N for r in rows})
    tmax = max(r.min_time_ms for r in rows) or 1.0
    left, right, top, bottom = 70, 230, 30, 60
    pw, ph = width - left - right, height - top - bottom
    nmin, nmax = ns[0], ns[-1]

    def sx(n):
        return left + (pw * (n - nmin) / (nmax - nmin) if nmax > nmin else pw / 2)

    def sy(t):
        return top + ph - ph * t / (tmax * 1.05)

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    ET.SubElement(svg, "title").text = "Midpoint rule timings by call style"
    ET.SubElement(svg, "rect", x="0", y="0", width=str(width), height=str(height), fill="white")
    axes = ET.SubElement(svg, "g", stroke="black", fill="none")
    ET.SubElement(axes, "line", x1=str(left), y1=str(top + ph), x2=str(left + pw), y2=str(top + ph))
    ET.SubElement(axes, "line", x1=str(left), y1=str(top), x2=str(left), y2=str(top + ph))

    text_style = {"font-family": "sans-serif", "font-size": "11"}
    for n in ns:
        t = ET.SubElement(svg, "text", x=f"{sx(n):.1f}", y=str(top + ph + 16), **{"text-anchor": "middle"}, **text_style)
        t.text = str(n)
    for j in range(5):
        val = tmax * 1.05 * j / 4
        t = ET.SubElement(svg, "text", x=str(left - 6), y=f"{sy(val) + 4:.1f}", **{"text-anchor": "end"}, **text_style)
        t.text = f"{val:.3g}"
    xl = ET.SubElement(svg, "text", x=str(left + pw / 2), y=str(height - 15), **{"text-anchor": "middle"}, **text_style)
    xl.text = "N (vector components)"
    yl = ET.SubElement(
        svg, "text", x="15", y=str(top + ph / 2), transform=f"rotate(-90 15 {top + ph / 2})",
        **{"text-anchor": "middle"}, **text_style,
    )
    yl.text = "minimum time [ms]"

    variants = sorted({r.variant for r in rows})
    for i, v in enumerate(variants):
        pts = [(r.N, r.min_time_ms) for r in rows if r.variant == v]
        color = _COLORS.get(v, "black")
        ET.SubElement(
            svg,
            "polyline",
            points=" ".join(f"{sx(n):.2f},{sy(t):.2f}" for n, t in pts),
            fill="none",
            stroke=color,
            **{"stroke-width": "1.5", "data-variant": v},
        )
        ly = top + 14 + 18 * i
        ET.SubElement(svg, "line", x1=str(left + pw + 15), y1=str(ly), x2=str(left + pw + 35), y2=str(ly), stroke=color)
        lt = ET.SubElement(svg, "text", x=str(left + pw + 40), y=str(ly + 4), **text_style)
        lt.text = _LABELS.get(v, v)

    text = ET.tostring(svg, encoding="unicode")
    text = '<?xml version="1.0" encoding="UTF-8"?>\n' + text + "\n"
    _write(text, destination)
    return text
