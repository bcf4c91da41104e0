#!/usr/bin/env python3
"""Reference values for the Rust test suites, computed with mpmath.

Regenerates every frozen constant used by the unit/acceptance tests:
Bessel K goldens, Drude reflection values, the reduced spectral kernel W,
lossless decay rates and forces at the reference configuration, the lossy
(gamma_c = 0.2) rates/forces from high-precision quadrature, and the
population-relaxation series. Working precision is 40 digits; printed
values are good to the last f64 digit.

Usage: python3 tools/goldens.py
"""

import mpmath as mp

mp.mp.dps = 40

HALF = mp.mpf(1) / 2

# Dimensionless units: omega_sp = 1, lengths in c/omega_sp, velocities in
# c, rates in Gamma_0, forces in |F_0|.
OM0 = mp.mpf("0.1")
D = mp.mpf("0.1")
V = mp.mpf("0.05")

DIPOLES = {
    "x": (1, 0, 0, 0),
    "y": (0, 1, 0, 0),
    "z": (0, 0, 1, 0),
    "chiral+": (HALF, 0, HALF, +1),  # (x + iz)/sqrt(2), s_y = +1
    "chiral-": (HALF, 0, HALF, -1),  # (x - iz)/sqrt(2), s_y = -1
}


def show(name, value, digits=18):
    print(f"{name} = {mp.nstr(value, digits)}")


def bracket(xi, px, py, pz, sy, sgn):
    k0 = mp.besselk(0, xi)
    k1 = mp.besselk(1, xi)
    k2 = mp.besselk(2, xi)
    return (px - py) * k0 + (py + pz) / 2 * (k0 + k2) + sgn * sy * k1


def w_kernel(kx, px, py, pz, sy, d=D):
    """W(kx) = integral over ky of exp(-2 kpar d) A(kx, ky)."""
    if kx == 0:
        return (py + pz) / (2 * d**2)
    xi = 2 * abs(kx) * d
    return 2 * kx**2 * bracket(xi, px, py, pz, sy, mp.sign(kx))


def rates_lossless(px, py, pz, sy, om0=OM0, v=V, d=D):
    kp = (1 - om0) / v
    km = -(1 + om0) / v
    return w_kernel(kp, px, py, pz, sy, d) / (2 * v), w_kernel(
        km, px, py, pz, sy, d
    ) / (2 * v)


def im_reflection(om, gc):
    """Im R on the real axis for the Drude metal, omega_sp = 1."""
    return mp.im(1 / (om**2 + 1j * gc * om - 1))


def lossy_channels(px, py, pz, sy, gc, om0=OM0, v=V, d=D):
    """(G+, G-, F_excited, F_ground) by quadrature in u = om0 + kx v."""
    ospp = mp.sqrt(1 - (gc / 2) ** 2)
    w = gc / 2

    def wk(u):
        return w_kernel((u - om0) / v, px, py, pz, sy, d) / v

    pts_plus = [0, mp.mpf("0.5"), ospp - 30 * w, ospp - w, ospp + w,
                ospp + 30 * w, 2, 14]
    pts_minus = [-14, -2, -ospp - 30 * w, -ospp - w, -ospp + w,
                 -ospp + 30 * w, mp.mpf("-0.5"), 0]
    pts_plus = sorted(p for p in pts_plus if 0 <= p <= 14)
    pts_minus = sorted(p for p in pts_minus if -14 <= p <= 0)

    g_plus = mp.quad(lambda u: wk(u) * (-im_reflection(u, gc)), pts_plus) / mp.pi
    g_minus = mp.quad(lambda u: wk(u) * im_reflection(u, gc), pts_minus) / mp.pi
    f_exc = mp.quad(
        lambda u: (u - om0) / v * wk(u) * im_reflection(u, gc), pts_plus
    ) / mp.pi
    f_gnd = mp.quad(
        lambda u: (u - om0) / v * wk(u) * im_reflection(u, gc), pts_minus
    ) / mp.pi
    return g_plus, g_minus, f_exc, f_gnd


def main():
    print("== Bessel K (goldens and oracle grid) ==")
    for x in ["0.2", "1.0", "2.0", "3.6", "4.4"]:
        xx = mp.mpf(x)
        show(f"K0({x})", mp.besselk(0, xx))
        show(f"K1({x})", mp.besselk(1, xx))
        show(f"K2({x})", mp.besselk(2, xx))
    for x in ["1e-3", "0.01", "0.1", "0.5", "1.0", "2.0", "3.0", "5.0",
              "10.0", "50.0", "300.0", "699.0"]:
        xx = mp.mpf(x)
        print(f"({x}, {mp.nstr(mp.besselk(0, xx), 18)}, "
              f"{mp.nstr(mp.besselk(1, xx), 18)}),")

    print("\n== Drude reflection ==")
    def eps(om, gc):
        return 1 - 2 / (om * (om + 1j * gc))

    def refl(om, gc):
        e = eps(om, gc)
        return -(e - 1) / (e + 1)

    show("eps(gc=0.2, om=0.5)", eps(mp.mpc("0.5"), mp.mpf("0.2")))
    show("R(gc=0.2, om=0.5)", refl(mp.mpc("0.5"), mp.mpf("0.2")))
    show("ImR(gc=0.1, om=0.5)", im_reflection(mp.mpf("0.5"), mp.mpf("0.1")))
    gc = mp.mpf("0.02")
    ospp = mp.sqrt(1 - (gc / 2) ** 2)
    show("R(gc=0.02, om=omega_sp')", refl(mp.mpc(ospp), gc))

    print("\n== reduced kernel W ==")
    show("W(-22, chiral-, d=0.1)", w_kernel(-22, HALF, 0, HALF, -1))

    print("\n== lossless rates and forces at the reference config ==")
    for name, (px, py, pz, sy) in DIPOLES.items():
        gp, gm = rates_lossless(px, py, pz, sy)
        print(f"gamma={name}: G+ = {mp.nstr(gp, 18)}  G- = {mp.nstr(gm, 18)}")
    gp, gm = rates_lossless(0, 0, 1, 0)
    show("F_ground(z, pe=0)", -(OM0 + 1) / V * gm)
    show("F_excited_channel(z)", (OM0 - 1) / V * gp)
    show("F_steady(z)", -2 / V * gm * gp / (gm + gp))
    show("pe_inf(z)", gm / (gm + gp))
    _, gm_m = rates_lossless(HALF, 0, HALF, -1)
    _, gm_p = rates_lossless(HALF, 0, HALF, +1)
    show("|F(chiral-)|/|F(chiral+)| (pe=0)", gm_m / gm_p)

    gp2, gm2 = rates_lossless(0, 0, 1, 0, v=mp.mpf("0.5"))
    show("pe_inf(z, v=0.5)", gm2 / (gm2 + gp2))
    _, gm3 = rates_lossless(0, 0, 1, 0, v=mp.mpf("0.005"))
    show("G-(z, v=0.005)", gm3)

    print("\n== population relaxation series (z, pe0 = 0) ==")
    g_tot = gp + gm
    pe_inf = gm / g_tot
    fe = (OM0 - 1) / V * gp
    fg = -(OM0 + 1) / V * gm
    for t in ["0", "0.002", "0.005", "0.02"]:
        tt = mp.mpf(t)
        pe = pe_inf * (1 - mp.exp(-g_tot * tt))
        print(f"t={t}: pe={mp.nstr(pe, 18)} F={mp.nstr(pe * fe + (1 - pe) * fg, 18)}")

    print("\n== lossy (gamma_c = 0.2) rates and force channels ==")
    for name in ["z", "chiral-"]:
        px, py, pz, sy = DIPOLES[name]
        gp, gm, fe, fg = lossy_channels(px, py, pz, sy, mp.mpf("0.2"))
        print(f"gamma={name}: G+={mp.nstr(gp, 18)} G-={mp.nstr(gm, 18)}")
        print(f"           Fe={mp.nstr(fe, 18)} Fg={mp.nstr(fg, 18)}")

    print("\n== lossless-limit cross-check (gamma_c = 1e-4, z, v=0.02) ==")
    _, gm, _, _ = lossy_channels(0, 0, 1, 0, mp.mpf("1e-4"), v=mp.mpf("0.02"))
    show("G-(gc=1e-4, v=0.02)", gm)


if __name__ == "__main__":
    main()
