"""Regenerate the bundled data snapshots under data/.

Usage: python3 tools/reconstruct_snapshots.py <path/to/us-atlas/counties-10m.json> <data-dir>

These files are RECONSTRUCTIONS, not downloads. The build environment had no
access to census.gov, bls.gov or ers.usda.gov, so each table is synthesized
from a per-state level parameter and a national trajectory, with the
state orderings pinned to what the published charts show:

  ACS:  2022 top two are UT, ID; lowest is DC; dips in 2013 and 2020.
  QCEW: 2020Q1 top three are ID, WY, MT; DC has the largest 2020Q1->2022Q1 change.
  ERS:  food-insecurity change is positive only for NY, NV, PA, ME (NY largest);
        AK and DC are the extremes of 2015 low access; AK county changes skewed.

County names and FIPS codes are real (us-atlas 2017 boundaries); county
values are synthetic. Replace these files with genuine downloads (same
column layout) for any substantive analysis. See data/MANIFEST.md.
"""
import csv
import json
import os
import random
import sys

STATES = [
    ("AL", "Alabama", "01"), ("AK", "Alaska", "02"), ("AZ", "Arizona", "04"),
    ("AR", "Arkansas", "05"), ("CA", "California", "06"), ("CO", "Colorado", "08"),
    ("CT", "Connecticut", "09"), ("DE", "Delaware", "10"), ("DC", "District of Columbia", "11"),
    ("FL", "Florida", "12"), ("GA", "Georgia", "13"), ("HI", "Hawaii", "15"),
    ("ID", "Idaho", "16"), ("IL", "Illinois", "17"), ("IN", "Indiana", "18"),
    ("IA", "Iowa", "19"), ("KS", "Kansas", "20"), ("KY", "Kentucky", "21"),
    ("LA", "Louisiana", "22"), ("ME", "Maine", "23"), ("MD", "Maryland", "24"),
    ("MA", "Massachusetts", "25"), ("MI", "Michigan", "26"), ("MN", "Minnesota", "27"),
    ("MS", "Mississippi", "28"), ("MO", "Missouri", "29"), ("MT", "Montana", "30"),
    ("NE", "Nebraska", "31"), ("NV", "Nevada", "32"), ("NH", "New Hampshire", "33"),
    ("NJ", "New Jersey", "34"), ("NM", "New Mexico", "35"), ("NY", "New York", "36"),
    ("NC", "North Carolina", "37"), ("ND", "North Dakota", "38"), ("OH", "Ohio", "39"),
    ("OK", "Oklahoma", "40"), ("OR", "Oregon", "41"), ("PA", "Pennsylvania", "42"),
    ("RI", "Rhode Island", "44"), ("SC", "South Carolina", "45"), ("SD", "South Dakota", "46"),
    ("TN", "Tennessee", "47"), ("TX", "Texas", "48"), ("UT", "Utah", "49"),
    ("VT", "Vermont", "50"), ("VA", "Virginia", "51"), ("WA", "Washington", "53"),
    ("WV", "West Virginia", "54"), ("WI", "Wisconsin", "55"), ("WY", "Wyoming", "56"),
]

# ACS: standardized state level (higher = better response), 2022 order driver.
ACS_LEVEL = {
    "UT": 2.30, "ID": 2.05, "NH": 1.55, "MN": 1.50, "WI": 1.45, "IA": 1.35, "VT": 1.30,
    "NE": 1.25, "SD": 1.10, "ME": 1.05, "MT": 1.00, "OR": 0.95, "WA": 0.90, "KS": 0.85,
    "CO": 0.80, "ND": 0.75, "MA": 0.60, "VA": 0.55, "CT": 0.50, "MO": 0.45, "IN": 0.40,
    "OH": 0.35, "MI": 0.30, "PA": 0.25, "WY": 0.22, "DE": 0.18, "MD": 0.10, "NC": 0.05,
    "TN": 0.00, "RI": -0.05, "NJ": -0.10, "KY": -0.15, "IL": -0.20, "SC": -0.30,
    "AZ": -0.35, "HI": -0.40, "GA": -0.45, "FL": -0.50, "AR": -0.60, "WV": -0.65,
    "CA": -0.70, "OK": -0.80, "AL": -0.90, "TX": -1.00, "NV": -1.10, "NY": -1.20,
    "LA": -1.40, "MS": -1.50, "NM": -1.70, "AK": -1.90, "DC": -3.60,
}
ACS_YEARS = list(range(2010, 2023))
ACS_NATIONAL = {2010: 97.5, 2011: 97.6, 2012: 97.3, 2013: 89.9, 2014: 96.7, 2015: 95.1,
                2016: 94.7, 2017: 93.7, 2018: 92.0, 2019: 86.0, 2020: 71.2, 2021: 85.3,
                2022: 84.3}
ACS_SPREAD = {2010: 0.7, 2011: 0.7, 2012: 0.8, 2013: 1.6, 2014: 0.9, 2015: 1.1, 2016: 1.2,
              2017: 1.4, 2018: 1.7, 2019: 2.4, 2020: 4.6, 2021: 3.1, 2022: 3.0}

# QCEW Leisure & Hospitality over-the-year % change, 2020Q1 level per state.
QCEW_Q1_2020 = {
    "ID": 2.9, "WY": 1.8, "MT": 1.1, "UT": 0.6, "SD": 0.2, "ND": -0.3, "AK": -0.6,
    "TN": -0.9, "NE": -1.1, "SC": -1.3, "TX": -1.5, "AZ": -1.6, "GA": -1.8, "AL": -1.9,
    "OK": -2.0, "FL": -2.1, "NC": -2.2, "AR": -2.3, "MS": -2.4, "IA": -2.5, "KS": -2.6,
    "CO": -2.7, "IN": -2.8, "WV": -2.9, "MO": -3.0, "LA": -3.1, "KY": -3.2, "NM": -3.3,
    "VA": -3.4, "WI": -3.5, "NV": -3.6, "OH": -3.7, "DE": -3.8, "MN": -3.9, "OR": -4.0,
    "NH": -4.1, "ME": -4.2, "CA": -4.3, "MI": -4.4, "IL": -4.5, "PA": -4.6, "MD": -4.7,
    "WA": -4.8, "CT": -4.9, "NJ": -5.0, "VT": -5.2, "MA": -5.4, "RI": -5.6, "NY": -6.0,
    "HI": -6.5, "DC": -7.1,
}
QUARTERS = ["2019Q4", "2020Q1", "2020Q2", "2020Q3", "2020Q4", "2021Q1", "2021Q2",
            "2021Q3", "2021Q4", "2022Q1"]

ERS_INSEC_CHANGE = {"NY": 1.6, "NV": 0.7, "PA": 0.4, "ME": 0.2}
ERS_SNAP_POSITIVE = {"NV": 8.3, "CA": 4.1, "PA": 2.1, "NM": 1.4, "RI": 0.6}


def r1(x):
    return round(x + 0.0, 1)


def acs(out):
    rng = random.Random(2022)
    with open(os.path.join(out, "acs", "household_response_rates.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["State"] + [str(y) for y in ACS_YEARS])
        for code, name, _ in STATES:
            z = ACS_LEVEL[code]
            row = [name]
            for y in ACS_YEARS:
                noise = 0.0 if y == 2022 else rng.uniform(-0.25, 0.25)
                v = min(99.4, ACS_NATIONAL[y] + ACS_SPREAD[y] * z + noise)
                row.append("%.1f%%" % v)
            w.writerow(row)


def qcew(out):
    rng = random.Random(2020)
    with open(os.path.join(out, "qcew", "leisure_hospitality_oty.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["area_fips", "area_title"] + QUARTERS)
        for code, name, fips in STATES:
            q1 = QCEW_Q1_2020[code]
            vals = {
                "2019Q4": rng.uniform(-0.8, 4.5),
                "2020Q1": q1,
                "2020Q2": rng.uniform(-52, -28),
                "2020Q3": rng.uniform(-32, -12),
                "2020Q4": rng.uniform(-30, -12),
                "2021Q1": rng.uniform(-24, -4),
                "2021Q2": rng.uniform(30, 62),
                "2021Q3": rng.uniform(8, 22),
                "2021Q4": rng.uniform(8, 20),
                "2022Q1": rng.uniform(6, 26),
            }
            if code == "AZ":
                vals["2020Q2"], vals["2021Q2"] = -61.0, 96.0
            if code == "NC":
                vals["2020Q2"], vals["2021Q2"] = -57.5, 88.5
            if code == "HI":
                vals["2020Q2"] = -65.3
            if code == "DC":
                vals["2022Q1"] = 41.2
            w.writerow([fips + "000", name + " -- Statewide"] + ["%.1f" % vals[q] for q in QUARTERS])


def ers(out, counties_path):
    rng = random.Random(2015)
    topo = json.load(open(counties_path))
    counties = sorted((g["id"], g["properties"]["name"]) for g in topo["objects"]["counties"]["geometries"])
    codes = {fips: code for code, _, fips in STATES}

    # state indicators
    others = [c for c, _, _ in STATES if c not in ERS_INSEC_CHANGE]
    insec = dict(ERS_INSEC_CHANGE)
    for i, c in enumerate(sorted(others, key=lambda c: rng.random())):
        insec[c] = -round(0.1 + 0.06 * i, 2)
    snap = dict(ERS_SNAP_POSITIVE)
    for c, _, _ in STATES:
        if c not in snap:
            snap[c] = -round(rng.uniform(1.5, 27.0), 1)
    lacc = {}
    for c, _, _ in STATES:
        lacc[c] = round(rng.uniform(1.2, 3.6), 2)
    lacc["AK"], lacc["DC"] = 6.41, 0.27
    insec15 = {c: round(rng.uniform(8.5, 17.5), 1) for c, _, _ in STATES}

    with open(os.path.join(out, "ers", "state_indicators.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["FIPS", "State", "PCH_SNAP_12_17", "CH_FOODINSEC_14_17", "FOODINSEC_15_17", "PCT_LACCESS_HHNV15"])
        for code, _, fips in STATES:
            w.writerow([fips, code, "%.1f" % snap[code], "%.2f" % insec[code], "%.1f" % insec15[code], "%.2f" % lacc[code]])

    with open(os.path.join(out, "ers", "county_low_access_change.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["FIPS", "State", "County", "PCH_LACCESS_HHNV_10_15"])
        mus = {c: rng.uniform(-12, 8) for c, _, _ in STATES}
        for fips, name in counties:
            code = codes.get(fips[:2])
            if code is None:
                continue
            if code == "AK":
                # most boroughs barely move; a few remote ones swing hard
                v = rng.uniform(-6, 2) if rng.random() < 0.7 else rng.uniform(25, 160)
            else:
                v = rng.gauss(mus[code], 14)
            w.writerow([fips, code, name, "%.2f" % v])


def main(counties_path, out):
    acs(out)
    qcew(out)
    ers(out, counties_path)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
