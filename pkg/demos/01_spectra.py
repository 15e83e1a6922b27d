"""Spectra of the scale-free walk Hamiltonian.

The eigenenergy E_k = Omega * (1 - C(k)) interpolates between the smooth
tight-binding band (b = 1) and a nowhere-differentiable Weierstrass-type
curve once the jump scale b exceeds the amplitude ratio A.  The effective
spectrum adds the bath-induced term -hbar*omega_c*(C^2 + S^2), which
amplifies the rough structure.

Run:  python demos/01_spectra.py   (writes CSV + PNG into demos/output/)
"""

import pathlib

import numpy as np

import levywalk as lw

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

ks = np.linspace(-np.pi, np.pi, 4001)
cases = [(1, 2.0), (2, 4.0), (2, 2.0), (4, 2.0)]

columns = [ks]
header = ["k"]
for b, A in cases:
    params = lw.WalkParams(A=A, b=b, Omega=1.0)
    bath = lw.BathParams.dimensionless(r_c=1.0)  # energy rate hbar*omega_c/Omega = 1
    E = lw.eigenenergy(ks, params)
    E_eff = lw.effective_eigenenergy(ks, params, bath)
    columns += [E, E_eff]
    header += [f"E_b{b}_A{A:g}", f"Eeff_b{b}_A{A:g}"]
    regime = lw.classify_regime(params)
    print(f"b={b}, A={A:g}: regime {regime:8s}  band [{E.min():.3f}, {E.max():.3f}]")

np.savetxt(OUT / "spectra.csv", np.column_stack(columns),
           delimiter=",", header=",".join(header), comments="")
print(f"wrote {OUT / 'spectra.csv'}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for b, A in cases:
        params = lw.WalkParams(A=A, b=b, Omega=1.0)
        bath = lw.BathParams.dimensionless(r_c=1.0)
        axes[0].plot(ks, lw.eigenenergy(ks, params), lw=0.7, label=f"b={b}, A={A:g}")
        axes[1].plot(ks, lw.effective_eigenenergy(ks, params, bath), lw=0.7)
    axes[0].set_title("bare spectrum")
    axes[1].set_title("effective spectrum (energy rate 1)")
    for ax in axes:
        ax.set_xlabel("k")
    axes[0].set_ylabel("E / Omega")
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(OUT / "spectra.png", dpi=150)
    print(f"wrote {OUT / 'spectra.png'}")
except ImportError:
    pass
