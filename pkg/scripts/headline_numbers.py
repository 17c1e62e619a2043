"""Print every headline number of the discorded CHSH game in one table."""
import math
import time

from discordgame import game, hessian, optimize
from discordgame.game import StrategyProfile

PI = math.pi


def main():
    print(f"{'scenario':<26}{'value':>14}  argmax (theta_a, theta_a', theta_b, theta_b', x)   time")
    for name in optimize.SCENARIOS:
        t = time.perf_counter()
        res = optimize.run_scenario(name)
        coords = ", ".join(f"{c / PI:.4f}pi" for c in res.argmax)
        print(f"{name:<26}{res.value:>14.8f}  ({coords})   {time.perf_counter() - t:.1f}s")

    opt = StrategyProfile(PI / 2, 0, PI / 2, 0, 7 * PI / 8)
    d = game.decompose(opt)
    print()
    print(f"f    = {d.total:.8f}   (2 + 2 sqrt2)/16 = {(2 + 2 * math.sqrt(2)) / 16:.8f}")
    print(f"f_Cl = {d.classical:.8f}   4/16")
    print(f"f_Q  = {d.quantum:.8f}   16 f_Q = {16 * d.quantum:.5f}")
    print(f"kappa = {d.kappa:.6f}")
    inf_point = StrategyProfile(PI / 2, PI / 4, 0, 0, 2.0)
    print(f"kappa at (pi/2, pi/4, 0, 0, x=2) = {game.kappa_to_json(game.kappa(inf_point))}")

    rep = hessian.finite_difference_hessian(point=opt)
    print(f"tr H = {rep.trace:.8f}, -2f = {-2 * rep.f_value:.8f}, residual = {rep.residual:.1e}")


if __name__ == "__main__":
    main()
