"""Norm balls of a Hopf-like link, untwisted and twisted.

The link is a trefoil and the knot 11_440 joined by a Hopf clasp.  The
untwisted ball is a diamond; twisting by an S3 representation over F13
shrinks it in the second direction, which rules out fibrations dual to
the second meridian.

Run with ``python3 demos/hopf_like_example.py``.
"""

from twistnorm import Representation, TwistData, compute, fibering_obstruction, norm_ball_2d, wirtinger
from twistnorm import fixtures
from twistnorm.fields import Field


def describe(label, res):
    ball = norm_ball_2d(res.delta1, res.k)
    print(f"{label}: Delta^1 = {res.delta1.format(['x', 'y'])}")
    print(f"  k = {res.k}, ball vertices = {[(str(a), str(b)) for a, b in ball.vertices]}")
    return ball


def main():
    pres, psi = wirtinger(fixtures.load_pd("hopf_like_L"))
    plain = compute(TwistData(pres, psi, Representation.trivial(pres, Field(0))))
    rep = Representation.from_json(fixtures.load_json("hopf_like_L_s3_f13.json"), pres)
    twisted = compute(TwistData(pres, psi, rep))

    a = describe("untwisted", plain)
    b = describe("twisted (S3, F13)", twisted)
    for phi in ((1, 0), (0, 1), (1, 1)):
        v = fibering_obstruction(a, b, phi)
        print(f"phi = {phi}: norms {v.norm_a} vs {v.norm_b} -> {v.verdict}")


if __name__ == "__main__":
    main()
