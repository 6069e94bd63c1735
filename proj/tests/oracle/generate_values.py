#!/usr/bin/env python3
"""Regenerates tests/unit/oracle_values.hpp from mpmath at 60 digits.

The values are frozen in the header; this script is kept so they can be
audited, not run as part of the build.
"""

import pathlib

import mpmath as mp

mp.mp.dps = 60


def j(nu, t):
    return mp.besselj(mp.mpf(nu), mp.mpf(t), maxprec=10**6, maxterms=10**7)


def y(nu, t):
    return mp.bessely(mp.mpf(nu), mp.mpf(t), maxprec=10**6, maxterms=10**7)


def alphap(nu, t):
    t = mp.mpf(t)
    return 2 / (mp.pi * t * (j(nu, t) ** 2 + y(nu, t) ** 2))


def first_zero(nu, guess):
    return mp.findroot(lambda t: j(nu, t), guess)


# (nu, t) pairs as decimal strings so the header names match exactly.
POINTS = [
    ("0", "1"), ("0.5", "1"), ("0.5", "10"), ("1", "1"), ("2.7", "1"),
    ("0.3", "0.01"), ("0.3", "10"), ("1", "0.01"), ("2.7", "0.01"),
    ("10", "5"), ("10", "15"), ("10", "50"), ("10", "300"),
    ("10.4", "0.5"), ("50", "1"), ("20", "0.02"), ("20", "0.05"),
    ("20", "0.1"), ("20", "0.2"), ("100", "10"), ("100", "50"),
    ("100", "150"), ("100", "200"), ("1000", "1"), ("1000", "500"),
    ("1000", "2000"), ("1e4", "5e3"), ("1e4", "1.2e4"),
    ("1e6", "1"), ("1e8", "1e5"), ("2.5", "1e4"),
    ("5", "0.5"), ("5", "3"), ("1.5", "1.5"),
]

out = []
out.append("// Generated by tests/oracle/generate_values.py (mpmath, 60 digits).")
out.append("// Do not edit by hand.")
out.append("")
out.append("#ifndef BESSELEVAL_TESTS_ORACLE_VALUES_HPP_")
out.append("#define BESSELEVAL_TESTS_ORACLE_VALUES_HPP_")
out.append("")
out.append("namespace oracle {")
out.append("")
out.append("// log|J|, sign J, log|Y|, sign Y.")
out.append("struct Point {")
out.append("  double nu;")
out.append("  double t;")
out.append("  double log_abs_j;")
out.append("  int sign_j;")
out.append("  double log_abs_y;")
out.append("  int sign_y;")
out.append("};")
out.append("")
out.append("inline constexpr Point kPoints[] = {")
for nu, t in POINTS:
    jv = j(nu, t)
    yv = y(nu, t)
    out.append("    {%s, %s, %s, %d, %s, %d}," % (
        nu, t, mp.nstr(mp.log(abs(jv)), 20), 1 if jv > 0 else -1,
        mp.nstr(mp.log(abs(yv)), 20), 1 if yv > 0 else -1))
out.append("};")
out.append("")


def const(name, value):
    out.append("inline constexpr double %s = %s;" % (name, mp.nstr(value, 20)))


const("kJ0At1", j(0, 1))
const("kY0At1", y(0, 1))
const("kAlphap0_3At10", alphap("0.3", 10))
const("kTStar1", first_zero(1, 3.8))
const("kTStar2", first_zero(2, 5.1))
const("kTStar10", first_zero(10, 14.5))
const("kLogCos1", mp.log(mp.cos(1)))
const("kChebExpB0", 2 * mp.besseli(0, 1))
const("kChebExpB1", 2 * mp.besseli(1, 1))
out.append("")
out.append("}  // namespace oracle")
out.append("")
out.append("#endif  // BESSELEVAL_TESTS_ORACLE_VALUES_HPP_")

target = pathlib.Path(__file__).resolve().parent.parent / "unit" / "oracle_values.hpp"
target.write_text("\n".join(out) + "\n")
