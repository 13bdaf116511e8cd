"""Compare the three decoherence kernels: Gaussian (gdm), depolarizing
(dc), and Lorentzian (ldm).

Each kernel is a probability distribution over phase-space translations;
its Fourier transform gives the per-step contraction factor of every chord
mode.  The demo prints weight profiles along the q axis and saves a figure
of the three spectra.

Run:  python3 demos/02_decoherence_kernels.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import torusecho as te


def main():
    N = 64
    space = te.TorusSpace(N)
    eps = 0.05
    kernels = {
        "gdm": te.kernel_gdm(space, eps),
        "dc": te.kernel_dc(space, eps),
        "ldm": te.kernel_ldm(space, eps),
    }

    print(f"N = {N}, coupling epsilon = {eps}\n")
    print("weight profile w(a_q, 0) near the origin (a_q = 0..5):")
    for name, kernel in kernels.items():
        profile = " ".join(f"{kernel.weights[a, 0]:.3e}" for a in range(6))
        print(f"  {name:4s}  {profile}")

    print("\ntail comparison at a_q = N/2 (largest displacement):")
    for name, kernel in kernels.items():
        print(f"  {name:4s}  w = {kernel.weights[N // 2, 0]:.3e}")
    ratio = kernels["ldm"].weights[N // 2, 0] / max(kernels["gdm"].weights[N // 2, 0], 1e-300)
    print(f"  -> Lorentzian tail / Gaussian tail = {ratio:.2e} "
          f"(heavy tails decohere small scales much faster)")

    print("\nspectrum |lambda_b| along b_p (b_q = 0):")
    for name, kernel in kernels.items():
        lam = np.abs(kernel.eigenvalues[0, :6])
        print(f"  {name:4s}  " + " ".join(f"{v:.4f}" for v in lam))
    print("  (dc contracts every mode equally; gdm/ldm are scale-dependent)")

    out = Path(__file__).resolve().parent / "output"
    out.mkdir(exist_ok=True)
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5), constrained_layout=True)
    for ax, (name, kernel) in zip(axes, kernels.items()):
        im = ax.imshow(np.abs(kernel.eigenvalues), origin="lower",
                       vmin=0.0, vmax=1.0, cmap="viridis")
        ax.set_title(f"{name}: |eigenvalue(b_q, b_p)|")
        ax.set_xlabel("b_p")
        ax.set_ylabel("b_q")
    fig.colorbar(im, ax=axes, shrink=0.85)
    path = out / "kernel_spectra.png"
    fig.savefig(path, dpi=120)
    print(f"\nwrote {path}")


if __name__ == "__main__":
    main()
