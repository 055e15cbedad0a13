"""Build the bundled planar atlas from the us-atlas npm package.

Usage: python3 tools/build_atlas.py <path/to/us-atlas/states-10m.json> <out.json>

Source geometry: Census Bureau cartographic state boundaries (2017), as
redistributed in us-atlas@3 (TopoJSON, unprojected). Steps:
  1. decode TopoJSON arcs to lon/lat rings
  2. project with an Albers equal-area conic (parallels 29.5/45.5, origin -96/37.5)
  3. flip y so it grows downward, shift CONUS into a positive frame
  4. drop islands below a size threshold, simplify (Douglas-Peucker via shapely)
  5. replace DC with an enlarged square offset into the Atlantic
  6. emit AK/HI in projected position plus an `insets` table moving them
     to the lower-left of the frame at load time
"""
import json
import math
import sys

from shapely.geometry import Polygon

USPS = {
    "01": "AL", "02": "AK", "04": "AZ", "05": "AR", "06": "CA", "08": "CO", "09": "CT",
    "10": "DE", "11": "DC", "12": "FL", "13": "GA", "15": "HI", "16": "ID", "17": "IL",
    "18": "IN", "19": "IA", "20": "KS", "21": "KY", "22": "LA", "23": "ME", "24": "MD",
    "25": "MA", "26": "MI", "27": "MN", "28": "MS", "29": "MO", "30": "MT", "31": "NE",
    "32": "NV", "33": "NH", "34": "NJ", "35": "NM", "36": "NY", "37": "NC", "38": "ND",
    "39": "OH", "40": "OK", "41": "OR", "42": "PA", "44": "RI", "45": "SC", "46": "SD",
    "47": "TN", "48": "TX", "49": "UT", "50": "VT", "51": "VA", "53": "WA", "54": "WV",
    "55": "WI", "56": "WY",
}

R = 1000.0 / 1.0e4  # unit scale: projected metres on a unit sphere * this factor


def albers(lon, lat):
    phi1, phi2 = math.radians(29.5), math.radians(45.5)
    phi0, lam0 = math.radians(37.5), math.radians(-96.0)
    n = (math.sin(phi1) + math.sin(phi2)) / 2
    c = math.cos(phi1) ** 2 + 2 * n * math.sin(phi1)
    rho0 = math.sqrt(c - 2 * n * math.sin(phi0)) / n
    lam, phi = math.radians(lon), math.radians(lat)
    # Aleutians cross the antimeridian
    if lon > 0:
        lam = math.radians(lon - 360.0)
    rho = math.sqrt(c - 2 * n * math.sin(phi)) / n
    theta = n * (lam - lam0)
    return rho * math.sin(theta), rho0 - rho * math.cos(theta)


def decode(topo):
    sx, sy = topo["transform"]["scale"]
    tx, ty = topo["transform"]["translate"]
    arcs = []
    for arc in topo["arcs"]:
        x = y = 0
        pts = []
        for dx, dy in arc:
            x += dx
            y += dy
            pts.append((x * sx + tx, y * sy + ty))
        arcs.append(pts)
    return arcs


def ring(arcs, idxs):
    out = []
    for i in idxs:
        pts = arcs[i] if i >= 0 else list(reversed(arcs[~i]))
        out.extend(pts if not out else pts[1:])
    return out


def main(src, dst):
    topo = json.load(open(src))
    arcs = decode(topo)
    scale = 1000.0
    feats = []
    raw = {}
    for g in topo["objects"]["states"]["geometries"]:
        code = USPS.get(g["id"])
        if code is None:
            continue
        polys = g["arcs"] if g["type"] == "MultiPolygon" else [g["arcs"]]
        rings = []
        for poly in polys:
            outer = ring(arcs, poly[0])
            pts = [albers(lon, lat) for lon, lat in outer]
            rings.append([(x * scale, -y * scale) for x, y in pts])
        raw[code] = (g["id"], g["properties"]["name"], rings)

    # frame from CONUS extent
    xs, ys = [], []
    for code, (_, _, rings) in raw.items():
        if code in ("AK", "HI"):
            continue
        for r in rings:
            xs += [p[0] for p in r]
            ys += [p[1] for p in r]
    margin = 10.0
    ox, oy = min(xs) - margin, min(ys) - margin

    for code in sorted(raw):
        fips, name, rings = raw[code]
        shifted = [[(x - ox, y - oy) for x, y in r] for r in rings]
        polys = []
        areas = [abs(Polygon(r).area) for r in shifted]
        biggest = max(areas)
        for r, a in zip(shifted, areas):
            keep = a >= 0.02 * biggest if code != "HI" else a >= 0.01 * biggest
            if not keep:
                continue
            tol = 2.5 if code == "AK" else 0.6
            p = Polygon(r).simplify(tol, preserve_topology=True)
            if p.is_empty or len(p.exterior.coords) < 4:
                continue
            coords = [[round(x, 1), round(y, 1)] for x, y in p.exterior.coords]
            if coords[0] != coords[-1]:
                coords.append(coords[0])
            polys.append([coords])
        if code == "DC":
            cx = sum(p[0] for p in shifted[0]) / len(shifted[0])
            cy = sum(p[1] for p in shifted[0]) / len(shifted[0])
            x0, y0, s = round(cx + 34, 1), round(cy + 6, 1), 9.0
            polys = [[[[x0, y0], [x0 + s, y0], [x0 + s, y0 + s], [x0, y0 + s], [x0, y0]]]]
        feats.append({
            "type": "Feature",
            "properties": {"code": code, "name": name, "fips": fips},
            "geometry": {"type": "MultiPolygon", "coordinates": polys},
        })

    def bbox(code):
        rs = [pt for poly in next(f for f in feats if f["properties"]["code"] == code)["geometry"]["coordinates"] for pt in poly[0]]
        return min(p[0] for p in rs), min(p[1] for p in rs), max(p[0] for p in rs), max(p[1] for p in rs)

    conus_h = max(ys) - oy + margin
    insets = []
    ak = bbox("AK")
    ak_s = 0.35
    insets.append({"code": "AK", "translate": [round(20 - ak[0] * ak_s, 1), round(conus_h - 10 - ak[3] * ak_s, 1)], "scale": ak_s})
    hi = bbox("HI")
    insets.append({"code": "HI", "translate": [round(270 - hi[0], 1), round(conus_h - 10 - hi[3], 1)], "scale": 1.0})

    doc = {"type": "FeatureCollection", "insets": insets, "features": feats}
    with open(dst, "w") as f:
        json.dump(doc, f, separators=(",", ":"))
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
