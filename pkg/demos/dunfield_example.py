"""A link whose Thurston norm is invisible to the ordinary Alexander norm.

The untwisted Alexander polynomial of this two-component link gives a
norm ball that is too large.  Passing to the double cover dual to the
first meridian and twisting by an F7 character recovers the sharper
parallelogram.

Run with ``python3 demos/dunfield_example.py``; the character search over
the cover takes around ten seconds.
"""

from twistnorm import TwistData, compute, enumerate_characters, norm_ball_2d, reidemeister_schreier
from twistnorm import Representation, fixtures, wirtinger
from twistnorm.covers import cyclic_quotient
from twistnorm.fields import Field
from twistnorm.norms import seminorm_eval


def main():
    pres, psi = wirtinger(fixtures.load_pd("dunfield"))
    plain = compute(TwistData(pres, psi, Representation.trivial(pres, Field(0))))
    print("untwisted Delta:", plain.delta1.format(["x", "y"]))
    ball = norm_ball_2d(plain.delta1, 1)
    print("untwisted ball:", [(str(a), str(b)) for a, b in ball.vertices])

    cover = reidemeister_schreier(pres, cyclic_quotient(psi, (1, 0), 2))
    cpsi = cover.pull_back_map(psi)
    print(f"double cover: {cover.presentation.ngens} generators, "
          f"{len(cover.presentation.relators)} relators")

    # keep the character that gives the widest polynomial
    best = None
    for chi in enumerate_characters(cover.presentation, 7):
        res = compute(TwistData(cover.presentation, cpsi, chi))
        if not res.delta1:
            continue
        w = seminorm_eval(res.delta1, (1, 0)) + seminorm_eval(res.delta1, (0, 1))
        if best is None or w > best[0]:
            best = (w, res)
    res = best[1]
    print("twisted Delta over F7:", res.delta1.format(["x", "y"]))
    # the cover has degree 2, so the scale is k * 2
    tball = norm_ball_2d(res.delta1, 2 * res.k)
    print("twisted ball:", [(str(a), str(b)) for a, b in tball.vertices])


if __name__ == "__main__":
    main()
