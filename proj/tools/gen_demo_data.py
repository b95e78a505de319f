#!/usr/bin/env python3
"""Regenerates the demo wall images and the pointer scripts under data/.

The full traces in data/traces/ are produced from the scripts by
`taptips replay --trace-out`; see README.md.
"""
import json
import pathlib

from PIL import Image, ImageDraw

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"
DEMO = ROOT / "demo"


def centroid(poly):
    a = cx = cy = 0.0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        c = x0 * y1 - x1 * y0
        a += c
        cx += (x0 + x1) * c
        cy += (y0 + y1) * c
    return (cx / (3 * a), cy / (3 * a))


def draw_images(book):
    palettes = {
        "north": ((112, 92, 70), [(70, 52, 40), (150, 130, 96), (96, 110, 80)]),
        "east": ((128, 104, 78), [(92, 64, 44), (60, 46, 36)]),
        "desk": ((96, 100, 88), [(80, 58, 40), (30, 30, 34), (70, 96, 120)]),
        "window": ((150, 160, 170), [(200, 210, 220)]),
    }
    for room in book["rooms"]:
        for wall in room["walls"]:
            background, fills = palettes[wall["id"]]
            img = Image.new("RGB", (wall["width"], wall["height"]), background)
            draw = ImageDraw.Draw(img)
            for y in range(0, wall["height"], 16):
                shade = tuple(max(0, c - 6) for c in background)
                draw.line([(0, y), (wall["width"], y)], fill=shade)
            for i, target in enumerate(wall["targets"]):
                pts = [tuple(p) for p in target["shape"]["polygon"]]
                draw.polygon(pts, fill=fills[i % len(fills)])
            if not wall["targets"]:
                draw.rectangle([60, 60, 180, 240], fill=fills[0])
            img.save(DEMO / wall["image"], optimize=True)


def rec(t, kind, wall, x=None, y=None):
    r = {"t": t, "kind": kind}
    if x is not None:
        r["x"] = float(x)
        r["y"] = float(y)
    r["wall"] = wall
    r["policy"] = "tap_tips"
    return r


def tap(t, point, wall, hold=80):
    return [rec(t, "down", wall, *point), rec(t + hold, "up", wall, *point)]


def write_script(name, records):
    with open(ROOT / "scripts" / name, "w") as f:
        for r in records:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")


def main():
    book = json.loads((DEMO / "demo.gbk.json").read_text())
    draw_images(book)
    walls = {w["id"]: w for r in book["rooms"] for w in r["walls"]}
    centers = {
        w: {t["id"]: centroid([tuple(p) for p in t["shape"]["polygon"]]) for t in walls[w]["targets"]}
        for w in walls
    }
    empty_spot = (120.0, 150.0)

    north = centers["north"]
    streak = tap(500, empty_spot, "north")
    for i, target in enumerate(["portrait", "mirror", "clock", "mantel", "rug", "window_seat"]):
        streak += tap(3000 + 1000 * i, north[target], "north")
    streak += [rec(9000, "down", "north", 100, 300), rec(9100, "move", "north", 140, 300),
               rec(9200, "up", "north", 180, 300)]
    streak += tap(10000, empty_spot, "north")
    write_script("six_streak.script.trace.jsonl", streak)

    desk = centers["desk"]
    checklist = []
    for i, target in enumerate(["desk", "inkwell", "globe"]):
        base = 1000 + 3000 * i
        checklist += tap(base, (200.0, 40.0), "desk")
        checklist += tap(base + 800, desk[target], "desk")
    write_script("checklist.script.trace.jsonl", checklist)

    matrix = tap(100, empty_spot, "north", hold=100)
    matrix.append(rec(1000, "mode_toggle", "north"))
    matrix += tap(1500, north["portrait"], "north")
    matrix += tap(2500, empty_spot, "north", hold=800)
    matrix.append(rec(3500, "mode_toggle", "north"))
    matrix += [rec(4000, "down", "north", 120, 150), rec(4300, "move", "north", 150, 100),
               rec(4700, "up", "north", *north["mirror"])]
    matrix += tap(5000, empty_spot, "north", hold=50)
    write_script("policy_matrix.trace.jsonl", matrix)


if __name__ == "__main__":
    main()
