"""Payoff against x at the constrained optimum angles, with the advantage window.

Also sweeps the angle box width to show where the advantage over the
restricted classical value disappears.
"""
import math

import numpy as np

from discordgame import game, optimize
from discordgame.optimize import BoxConstraints, OptimizerSettings

PI = math.pi


def main():
    table = optimize.advantage_region(256)
    xs, f, flag = table.T
    edges = np.flatnonzero(np.diff(flag))
    if flag[-1]:
        # last window runs up to 2pi
        edges = np.append(edges, len(flag) - 1)
    print("advantage windows (x/pi):")
    for lo, hi in zip(edges[::2] + 1, edges[1::2]):
        print(f"  [{xs[lo] / PI:.4f}, {xs[hi] / PI:.4f}]  peak f = {f[lo:hi + 1].max():.6f}")

    coarse = OptimizerSettings(angle_points=13, x_points=65, top_k=4)
    print("\nangle box [0, w]:   best f     best f at x=0    gap")
    for w in (PI / 4, PI / 2, 3 * PI / 4, PI):
        quantum = optimize.maximize(game.f_closed_form, BoxConstraints.make((0, w)), coarse).value
        classical = optimize.maximize(game.f_closed_form, BoxConstraints.make((0, w), (0, 0)), coarse).value
        print(f"  w = {w / PI:.2f}pi      {quantum:.6f}   {classical:.6f}       {quantum - classical:+.6f}")


if __name__ == "__main__":
    main()
