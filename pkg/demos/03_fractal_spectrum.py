"""Box-counting dimension of the critical eigenenergy graph.

For b > A the spectrum is self-affine with scaling exponent
mu = ln A / ln b < 1, and the box-counting dimension of its graph is
predicted to be D = 2 - mu.  A smooth band (b = 1) serves as the D = 1
sanity floor.

Run:  python demos/03_fractal_spectrum.py
"""

import levywalk as lw

print(f"{'b':>3} {'A':>5} {'mu':>7} {'2-mu':>7} {'D_est':>7} {'r2':>8}")
for b, A in [(1, 2.0), (4, 2.0), (8, 2.0), (16, 2.0)]:
    params = lw.WalkParams(A=A, b=b)
    d_est, r2 = lw.box_counting_dimension(params, k_samples=1 << 18)
    if b > 1:
        mu = params.mu()
        pred = 2 - mu if mu < 1 else 1.0
        print(f"{b:>3} {A:>5g} {mu:>7.3f} {pred:>7.3f} {d_est:>7.3f} {r2:>8.4f}")
    else:
        print(f"{b:>3} {A:>5g} {'--':>7} {'1.000':>7} {d_est:>7.3f} {r2:>8.4f}")
