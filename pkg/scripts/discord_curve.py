"""Sample the discord of rho(x) over one period and write it as CSV.

usage: python scripts/discord_curve.py [samples] [out.csv]
"""
import sys

from discordgame import discord


def main(argv):
    samples = int(argv[1]) if len(argv) > 1 else 201
    out = argv[2] if len(argv) > 2 else "discord_curve.csv"
    curve = discord.discord_curve(samples)
    with open(out, "w", newline="\n") as fh:
        fh.write("x,discord_nats\n")
        for x, d in curve:
            fh.write(f"{x:.17g},{d:.17g}\n")
    k = curve[:, 1].argmax()
    print(f"wrote {samples} rows to {out}; max discord {curve[k, 1]:.6f} nats at x = {curve[k, 0]:.4f}")


if __name__ == "__main__":
    main(sys.argv)
