#!/usr/bin/env python3
"""Generate a sampled geodesic test set in the GeodTest.dat column layout.

Each output line carries

    lat0 lon0 azi0 lat1 lon1 azi1 s12 a12 m12 S12

for the WGS84 ellipsoid, with the endpoint computed by geographiclib's
Geodesic.Direct. Records are written for ids first_id, first_id + stride, ...
and every id is drawn from the geodesic class that id occupies in the
published 500000-line file (random, nearly antipodal, short, near a pole,
pole to pole, nearly meridional, nearly equatorial, vertex to vertex,
ending near a vertex). Read the result with `--first-id` / `--id-stride`
matching the values used here.

Requires `pip install geographiclib`.
"""

import argparse
import math
import random
import sys

from geographiclib.geodesic import Geodesic

GEOD = Geodesic.WGS84
SMAX = 20003931.4586254
GROUP_SIZES = [100000, 50000, 50000, 50000, 50000, 50000, 50000, 50000, 50000]


def group_of(ident):
    upper = 0
    for g, size in enumerate(GROUP_SIZES, start=1):
        upper += size
        if ident <= upper:
            return g
    return len(GROUP_SIZES)


def q_angle(x):
    """Multiple of 1e-12 deg."""
    return round(x, 12)


def q_dist(s):
    """Multiple of 0.1 um."""
    return round(s, 7)


def logu(rng, lo, hi):
    return 10.0 ** rng.uniform(lo, hi)


def canonical(lat0, azi0):
    """Map a start onto lat0 >= 0, azi0 in [0, 180] by the ellipsoid symmetries."""
    if lat0 < 0:
        lat0, azi0 = -lat0, 180.0 - azi0
    azi0 = math.remainder(azi0, 360.0)
    if azi0 < 0:
        azi0 = -azi0
    return lat0, azi0


def start_for_group(g, rng):
    """Returns (lat0, azi0, s12) for the requested class."""
    if g == 1:
        return rng.uniform(0, 90), rng.uniform(0, 180), rng.uniform(0, SMAX)
    if g == 2:
        lat0 = rng.uniform(0, 90)
        lat1 = -lat0 + rng.uniform(-0.5, 0.5)
        lon1 = 180.0 - logu(rng, -6, 0)
        inv = GEOD.Inverse(lat0, 0.0, max(-90.0, min(90.0, lat1)), lon1)
        return lat0, inv["azi1"], inv["s12"]
    if g == 3:
        return rng.uniform(0, 90), rng.uniform(0, 180), logu(rng, -3, 3)
    if g == 4:
        return 90.0 - logu(rng, -10, 0), rng.uniform(0, 180), rng.uniform(0, SMAX)
    if g == 5:
        lat0 = 90.0 - logu(rng, -8, 0)
        lat1 = -90.0 + logu(rng, -8, 0)
        inv = GEOD.Inverse(lat0, 0.0, lat1, rng.uniform(0, 180))
        return lat0, inv["azi1"], inv["s12"]
    if g == 6:
        azi = logu(rng, -10, -1)
        if rng.random() < 0.5:
            azi = 180.0 - azi
        return rng.uniform(0, 90), azi, rng.uniform(0, SMAX)
    if g == 7:
        azi = 90.0 + rng.choice([-1.0, 1.0]) * logu(rng, -8, -1)
        return logu(rng, -8, -1), azi, rng.uniform(0, SMAX)
    if g == 8:
        lat0 = rng.uniform(0, 90)
        line = GEOD.ArcDirect(lat0, 0.0, 90.0, 180.0)
        return lat0, 90.0, math.floor(line["s12"] * 1e7) / 1e7
    # g == 9: walk back from a vertex, then aim slightly short of / past it
    latv = rng.uniform(0, 90)
    d = rng.uniform(0, SMAX)
    back = GEOD.Direct(latv, 0.0, 270.0, d)
    lat0, azi0 = canonical(back["lat2"], back["azi2"] + 180.0)
    return lat0, azi0, max(0.0, d + rng.choice([-1.0, 1.0]) * logu(rng, -3, 3))


def make_record(ident):
    rng = random.Random(ident)
    lat0, azi0, s12 = start_for_group(group_of(ident), rng)
    lat0 = q_angle(min(90.0, max(0.0, lat0)))
    azi0 = q_angle(min(180.0, max(0.0, azi0)))
    s12 = q_dist(min(SMAX, max(0.0, s12)))
    r = GEOD.Direct(lat0, 0.0, azi0, s12, Geodesic.ALL)
    lon1 = r["lon2"]
    if lon1 < 0 and lon1 > -1e-9:
        lon1 = 0.0
    return (lat0, 0.0, azi0, r["lat2"], lon1, r["azi2"] % 360.0, s12, r["a12"], r["m12"], r["S12"])


def fmt(v):
    return repr(float(v)) if not float(v).is_integer() else "%d" % v


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", required=True)
    ap.add_argument("--first-id", type=int, default=1)
    ap.add_argument("--id-stride", type=int, default=50)
    ap.add_argument("--count", type=int, default=10000)
    args = ap.parse_args(argv)
    with open(args.out, "w", newline="\n") as fh:
        for j in range(args.count):
            ident = args.first_id + j * args.id_stride
            fh.write(" ".join(fmt(v) for v in make_record(ident)) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
