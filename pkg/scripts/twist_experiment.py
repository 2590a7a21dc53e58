"""Compare rho-factors built from zeta and from zeta^t, character by character.

For each character the script prints the exponent k with
rho_{zeta^t} = zeta_M^k * rho_zeta, next to the exponents of chi(t) and chi(t)^{-1}.

    python3 scripts/twist_experiment.py --t 4 --max-level 3
"""
import argparse

from padic_tate.characters import Character, characters_of_level
from padic_tate.config import SessionConfig
from padic_tate.zeta import rho_closed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ell", type=int, default=3)
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--nroot", type=int, default=4)
    ap.add_argument("--t", type=int, default=None, help="twist exponent, default 1 + l")
    ap.add_argument("--max-level", type=int, default=2)
    args = ap.parse_args()
    P = SessionConfig(args.ell, args.e, 5, args.nroot).params()
    t = args.t if args.t is not None else 1 + P.ell
    Pt = P.with_twist(t)
    ring = P.ring
    counts = {"chi(t)": 0, "chi(t)^-1": 0, "neither": 0}
    for level in range(1, args.max_level + 1):
        for chi in characters_of_level(P, level):
            chit = Character(Pt, chi.level, chi.table, chi.pi_coeff, chi.pi_exp)
            ratio = (rho_closed(chit).value / rho_closed(chi).value).reduced()
            c = chi.unit_exp(P.K.elem(t)) % P.M
            match = next((k for k in range(P.M) if ratio == ring.root(k)), None)
            tag = "chi(t)" if match == c else "chi(t)^-1" if match == (-c) % P.M else "neither"
            if match == c == (-c) % P.M:
                tag = "chi(t)"
            counts[tag] += 1
            print(f"level {level}  table {chi.table[:4]}  k={match}  chi(t)={c}  "
                  f"chi(t)^-1={(-c) % P.M}  -> {tag}")
    print(counts)


if __name__ == "__main__":
    main()
