"""Coarse explicit finite-difference prototype of the half-domain wound model.

Independent of the C++ moving-mesh Galerkin solver: fixed Eulerian grid,
forward Euler in time, central differences in space. Used only to freeze
the early-time sign expectations asserted in tests/test_solver.cpp.

    python3 tests/oracles/explicit_prototype.py
"""
import numpy as np

p = dict(D_F=1e-6, chi_F=2e-3, D_c=2.88e-3, r_F=0.924, r_F_max=2.0, a_c_I=1e-8,
         a_c_II=1e-8, a_c_III=2e8, a_c_IV=1e-9, kappa_F=1e-6, k_F=1.08e7,
         delta_N=2e-2, delta_M=6e-2, k_c=3e-13, delta_c=5e-4, eta_I=2.0,
         eta_II=0.45, k_rho_max=10.0, delta_rho=6e-6, mu=100.0, E=350.0,
         xi=4.4e-2, R=0.995, zeta=400.0, rho_t=1.09, N_bar=1e4, rho_bar=0.1125,
         N_tilde=2e3, c_tilde=1e-8, rho_tilde=0.0225, L=10.0, L_w=3.6, s=0.5)
q = (np.log(p["delta_N"]) - np.log(p["r_F"] * (1 - p["kappa_F"] * p["N_bar"]))) / np.log(p["N_bar"])
k_rho = p["delta_rho"] * p["rho_bar"] ** 2

n = 100
x = np.linspace(-p["L"], 0.0, n + 1)
h = x[1] - x[0]


def ramp(far, wound):
    out = np.full_like(x, far)
    lw, s = p["L_w"], p["s"]
    inner = x >= -lw + s
    out[inner] = wound
    r = (x > -lw) & (x < -lw + s)
    out[r] = 0.5 * (far + wound) - 0.5 * (far - wound) * np.sin(np.pi / s * (x[r] + lw - 0.5 * s))
    return out


N = ramp(p["N_bar"], p["N_tilde"])
M = np.zeros_like(x)
c = ramp(0.0, p["c_tilde"])
rho = ramp(p["rho_bar"], p["rho_tilde"])
v = np.zeros_like(x)
eps = np.zeros_like(x)


def ddx(f):
    g = np.zeros_like(f)
    g[1:-1] = (f[2:] - f[:-2]) / (2 * h)
    g[0] = (f[1] - f[0]) / h
    g[-1] = 0.0  # symmetry
    return g


dt = 0.4 * p["rho_t"] * h * h / (2 * p["mu"])
t = 0.0
T = 1.0
while t < T:
    F = N + M
    cp = np.maximum(c, 0.0)
    g = (N + p["eta_II"] * M) * rho / (1 + p["a_c_III"] * cp)
    RN = p["r_F"] * (1 + p["r_F_max"] * cp / (p["a_c_I"] + cp)) * (1 - p["kappa_F"] * F) * np.maximum(N, 0) ** (1 + q) \
        - p["k_F"] * cp * N - p["delta_N"] * N
    RM = p["r_F"] * ((1 + p["r_F_max"]) * cp / (p["a_c_I"] + cp)) * (1 - p["kappa_F"] * F) * np.maximum(M, 0) ** (1 + q) \
        + p["k_F"] * cp * N - p["delta_M"] * M
    Rc = p["k_c"] * cp / (p["a_c_II"] + cp) * (N + p["eta_I"] * M) - p["delta_c"] * g * cp
    Rr = k_rho * (1 + p["k_rho_max"] * cp / (p["a_c_IV"] + cp)) * (N + p["eta_I"] * M) - p["delta_rho"] * g * rho
    JN = -p["D_F"] * F * ddx(N) + p["chi_F"] * N * ddx(c)
    JM = -p["D_F"] * F * ddx(M) + p["chi_F"] * M * ddx(c)
    Jc = -p["D_c"] * ddx(c)
    JN[-1] = JM[-1] = Jc[-1] = 0.0
    psi = p["xi"] * M * rho / (p["R"] ** 2 + rho ** 2)
    sigma = p["mu"] * ddx(v) + p["E"] * np.sqrt(np.maximum(rho, 0)) * eps
    alpha = p["zeta"] * (N + p["eta_II"] * M) * cp / (1 + p["a_c_III"] * cp)
    vx = ddx(v)
    N = N + dt * (-ddx(N * v) - ddx(JN) + RN)
    M = M + dt * (-ddx(M * v) - ddx(JM) + RM)
    c = c + dt * (-ddx(c * v) - ddx(Jc) + Rc)
    rho = rho + dt * (-ddx(rho * v) + Rr)
    v = v + dt * ((ddx(sigma) + ddx(psi)) / p["rho_t"] - 2 * v * vx)
    eps = eps + dt * (-v * ddx(eps) - (eps - 1) * vx - alpha * eps)
    N[0], M[0], c[0], v[0], v[-1] = p["N_bar"], 0.0, 0.0, 0.0, 0.0
    t += dt

wound = x > -p["L_w"] + p["s"]
print(f"t = {t:.3f} day")
print("v in wound interior: min %.3e max %.3e" % (v[wound][:-1].min(), v[wound][:-1].max()))
print("eps in wound: min %.3e max %.3e" % (eps[wound].min(), eps[wound].max()))
print("eps far field (x < -L_w - 1): min %.3e max %.3e" % (eps[x < -p['L_w'] - 1].min(), eps[x < -p['L_w'] - 1].max()))
print("M max %.3e" % M.max())
