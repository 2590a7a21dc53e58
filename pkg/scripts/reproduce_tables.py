"""Print the zeta tables of the h_n family and the shell family G[alpha] for one field.

    python3 scripts/reproduce_tables.py --ell 3 --e 1
"""
import argparse
from fractions import Fraction

from padic_tate.characters import dual_char
from padic_tate.config import SessionConfig
from padic_tate.fourier import fourier_shell
from padic_tate.suites import chars_up_to
from padic_tate.zeta import gauss_sum, named_family, rho_closed, zeta_integral, zeta_shell


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ell", type=int, default=3)
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--nroot", type=int, default=4)
    args = ap.parse_args()
    P = SessionConfig(args.ell, args.e, args.p, args.nroot).params()
    print(f"K: l={P.ell}, e={P.e}, q={P.q}, delta={P.delta}, M={P.M}")

    chars = chars_up_to(P, 3)
    print("\nZ(h_n, chi) and Z(h_n^, chi), first character of each level")
    for m, cs in chars.items():
        chi = cs[0]
        g = f"   G = {gauss_sum(chi)}" if m >= 1 else ""
        print(f"level {m}{g}")
        for n in range(4):
            h = named_family(P, "h_n", n=n)
            hh = named_family(P, "h_n_hat", n=n)
            print(f"  n={n}:  Z(h) = {zeta_integral(h, chi)}    Z(h^) = {zeta_integral(hh, chi)}")

    print("\nshell family G[alpha], trivial character")
    chi = chars[0][0]
    for alpha in (P.p, 2 * P.p, P.p ** 2):
        G = named_family(P, "G_bracket", alpha=Fraction(alpha))
        z = zeta_shell(G, chi)
        zh = zeta_shell(fourier_shell(G), dual_char(chi))
        print(f"alpha={alpha}")
        print(f"  Z(G)      = {z}   annulus {z.lo}..{z.hi}")
        print(f"  Z(G^, *)  = {zh}")
        print(f"  ratio     = {(z.value / zh.value).reduced()}")
    print(f"\nrho (closed form) = {rho_closed(chi)}")


if __name__ == "__main__":
    main()
