#!/usr/bin/env python3
"""Independent reference evaluations used to freeze expected values in the
C++ test suite.

Every number asserted in tests/ that is not trivially checkable by hand is
computed here first, with an implementation that deliberately does NOT share
code or algorithm choices with the C++ library:

  * solar position      -> NOAA solar calculator equations (the C++ library
                           uses a different published ephemeris)
  * diffuse fraction    -> direct evaluation of the logistic separation model
  * PAR diffuse share   -> direct evaluation of the canopy-radiation relation
  * clear-sky GHI       -> Haurwitz formula
  * geometry examples   -> closed-form trigonometry

Run:  python3 reference_values.py
"""

import math

D2R = math.pi / 180.0
R2D = 180.0 / math.pi


# --------------------------------------------------------------------------
# NOAA solar position (General Solar Position Calculations, NOAA GML).
# Accuracy is quoted as better than 0.1 degree for years 1900-2100.
# --------------------------------------------------------------------------

def julian_day(y, m, d, hour_utc):
    if m <= 2:
        y -= 1
        m += 12
    a = y // 100
    b = 2 - a + a // 4
    jd = int(365.25 * (y + 4716)) + int(30.6001 * (m + 1)) + d + b - 1524.5
    return jd + hour_utc / 24.0


def noaa_solar(y, m, d, hour_utc, lat, lon):
    """Returns (elevation_deg, azimuth_deg_south0_westpos, eot_minutes,
    hour_angle_deg). Azimuth converted from NOAA's north-clockwise to the
    0=south, positive-toward-west convention."""
    jd = julian_day(y, m, d, hour_utc)
    t = (jd - 2451545.0) / 36525.0

    gml = (280.46646 + t * (36000.76983 + 0.0003032 * t)) % 360.0
    gma = 357.52911 + t * (35999.05029 - 0.0001537 * t)
    ecc = 0.016708634 - t * (0.000042037 + 0.0000001267 * t)
    ceq = (math.sin(gma * D2R) * (1.914602 - t * (0.004817 + 0.000014 * t))
           + math.sin(2 * gma * D2R) * (0.019993 - 0.000101 * t)
           + math.sin(3 * gma * D2R) * 0.000289)
    stl = gml + ceq
    omega = 125.04 - 1934.136 * t
    sal = stl - 0.00569 - 0.00478 * math.sin(omega * D2R)

    moe = (23.0 + (26.0 + (21.448 - t * (46.815 + t * (0.00059 - t * 0.001813))) / 60.0) / 60.0)
    oc = moe + 0.00256 * math.cos(omega * D2R)

    decl = math.asin(math.sin(oc * D2R) * math.sin(sal * D2R)) * R2D

    vy = math.tan(oc / 2.0 * D2R) ** 2
    eot = 4.0 * R2D * (vy * math.sin(2 * gml * D2R)
                       - 2 * ecc * math.sin(gma * D2R)
                       + 4 * ecc * vy * math.sin(gma * D2R) * math.cos(2 * gml * D2R)
                       - 0.5 * vy * vy * math.sin(4 * gml * D2R)
                       - 1.25 * ecc * ecc * math.sin(2 * gma * D2R))  # minutes

    tst = (hour_utc * 60.0 + eot + 4.0 * lon) % 1440.0  # true solar time, minutes
    ha = tst / 4.0 - 180.0
    if ha < -180.0:
        ha += 360.0

    cos_zen = (math.sin(lat * D2R) * math.sin(decl * D2R)
               + math.cos(lat * D2R) * math.cos(decl * D2R) * math.cos(ha * D2R))
    cos_zen = max(-1.0, min(1.0, cos_zen))
    zen = math.acos(cos_zen) * R2D
    elev = 90.0 - zen

    # azimuth, north-based clockwise
    denom = math.cos(lat * D2R) * math.sin(zen * D2R)
    if abs(denom) < 1e-12:
        az_n = 0.0
    else:
        c = (math.sin(lat * D2R) * math.cos(zen * D2R) - math.sin(decl * D2R)) / denom
        c = max(-1.0, min(1.0, c))
        if ha > 0:
            az_n = (math.acos(c) * R2D + 180.0) % 360.0
        else:
            az_n = (540.0 - math.acos(c) * R2D) % 360.0

    # convert: 0 = south, positive toward west, range (-180, 180]
    az_s = az_n - 180.0
    if az_s <= -180.0:
        az_s += 360.0
    return elev, az_s, eot, ha


# --------------------------------------------------------------------------
# Diffuse-fraction separation (logistic, satellite-augmented) and the PAR
# diffuse-share relation.
# --------------------------------------------------------------------------

COEF = dict(C=0.0888, b0=-2.6258, b1=7.2506, b2=-0.0458, b3=0.0099,
            b4=-0.0839, b5=0.5002, b6=-2.1731)


def kd_logistic(kt, ast, zen, dktc, kde, kd_sat, c=COEF):
    e = (c["b0"] + c["b1"] * kt + c["b2"] * ast + c["b3"] * zen
         + c["b4"] * dktc + c["b6"] * kd_sat)
    kd = c["C"] + (1.0 - c["C"]) / (1.0 + math.exp(e)) + c["b5"] * kde
    return kd


def kd_par(kd, elev_deg):
    b = elev_deg
    num = (1.0 + 0.3 * (1.0 - kd * kd)) * kd
    den = 1.0 + (1.0 - kd * kd) * math.cos((90.0 - b) * D2R) ** 2 * math.cos(b * D2R) ** 3
    return num / den


def haurwitz(elev_deg):
    cz = math.sin(elev_deg * D2R)
    if cz <= 0:
        return 0.0
    return 1098.0 * cz * math.exp(-0.059 / cz)


def main():
    print("== solar position (NOAA equations), azimuth 0=S +W ==")
    cases = [
        ("vasteras_midsummer", 2021, 6, 21, 12.0, 59.6099, 16.5448),
        ("vasteras_feb", 2018, 2, 11, 12.0, 59.6099, 16.5448),
        ("lanna_equinox", 2018, 3, 20, 12.0, 58.33, 13.1),
        ("lanna_winter", 2018, 12, 21, 11.0, 58.33, 13.1),
        ("estrees_summer", 2018, 6, 21, 11.0, 49.87, 3.02),
        ("klingenberg_autumn", 2018, 9, 23, 10.0, 50.89, 13.52),
        ("equator_equinox", 2021, 3, 20, 12.0, 0.0, 0.0),
        ("sydney_noonish", 2018, 1, 15, 2.0, -33.87, 151.21),
    ]
    for name, y, m, d, h, lat, lon in cases:
        el, az, eot, ha = noaa_solar(y, m, d, h, lat, lon)
        ast = 12.0 + ha / 15.0
        print(f"  {name}: elev={el:.6f} az={az:.6f} eot_min={eot:.4f} ast_h={ast:.6f}")

    print("== extraterrestrial horizontal, day 1, elev 30 ==")
    e = 1367.0 * (1.0 + 0.033 * math.cos(2 * math.pi * 1 / 365.0)) * math.sin(30 * D2R)
    print(f"  E_ext = {e:.10f}")

    print("== clear-sky GHI (Haurwitz) ==")
    for el in (10.0, 30.0, 60.0, 90.0):
        print(f"  elev {el}: {haurwitz(el):.10f}")

    print("== tracking examples ==")
    w, L = 85.0, 10.0
    s = 1.0 / math.cos(w * D2R)
    print(f"  shadow length s(85deg) = {s:.10f}, sf = {max(0.0, 1.0 - L / s):.10f}")
    wc = math.acos(L * math.cos(w * D2R)) * R2D
    print(f"  backtrack 85/10: wc = {wc:.10f}, witc = {w - wc:.10f}")
    wc2 = math.acos(2.0 * math.cos(70.0 * D2R)) * R2D
    print(f"  backtrack 70/2:  wc = {wc2:.10f}, witc = {70.0 - wc2:.10f}")
    b2 = math.acos(2.0 * math.cos(80.0 * D2R)) * R2D
    print(f"  second-axis 80/2: bitc = {b2:.10f}")

    print("== logistic diffuse fraction: spec tuple + sweep ==")
    v = kd_logistic(kt=0.5, ast=12.0, zen=60.0, dktc=0.1, kde=0.0, kd_sat=0.4)
    print(f"  kd(kt=0.5,AST=12,Z=60,dktc=0.1,kde=0,kds=0.4) = {v:.15f}")
    tuples = []
    for i in range(20):
        kt = 0.1 + 0.8 * i / 19.0
        ast = 6.0 + 12.0 * ((i * 7) % 20) / 19.0
        zen = 20.0 + 70.0 * ((i * 3) % 20) / 19.0
        dktc = -0.2 + 0.6 * ((i * 11) % 20) / 19.0
        kde = 0.0 if i % 3 else 0.15 * (i % 5) / 4.0
        kds = 0.05 + 0.9 * ((i * 13) % 20) / 19.0
        kd = kd_logistic(kt, ast, zen, dktc, kde, kds)
        kdc = min(1.0, max(0.0, kd))
        kp = kd_par(kdc, 90.0 - zen)
        kpc = min(1.0, max(0.0, kp))
        tuples.append((kt, ast, zen, dktc, kde, kds, kd, kpc))
    for t in tuples:
        print("  {%.10f, %.10f, %.10f, %.10f, %.10f, %.10f, %.15f, %.15f}," % t)

    print("== PAR diffuse share examples ==")
    print(f"  kd=0.5 beta=45: {kd_par(0.5, 45.0):.15f}")
    print(f"  kd=1.0 beta=30: {kd_par(1.0, 30.0):.15f}")
    print(f"  kd=0.0 beta=30: {kd_par(0.0, 30.0):.15f}")

    print("== LHI example {1,3} ==")
    xs = [1.0, 3.0]
    mean = sum(xs) / len(xs)
    sd = math.sqrt(sum((x - mean) ** 2 for x in xs) / (len(xs) - 1))
    print(f"  LHI = {100.0 * (1.0 - sd / mean):.10f}")

    print("== projection example ==")
    sz = math.sin(45 * D2R)
    t = -3.0 / sz
    print(f"  t = {t:.10f}, P' = (0, {0.0 + math.cos(45 * D2R) * t:.10f})")


if __name__ == "__main__":
    main()
