"""Independent reference values for the C++ test suite.

Everything here is computed from scratch with numpy/scipy: the local
generator by brute-force quadrature of exp(-ixK) K' exp(ixK), and the
derivative state by central differences of scipy.linalg.expm. Nothing
here shares code with the library. Values printed by this script are
frozen into tests/*.cpp.
"""
import numpy as np
from scipy.linalg import expm, eigh
from scipy.integrate import quad_vec


def spin_ops(n):
    j = n / 2
    m = np.array([j - k for k in range(n + 1)])
    jz = np.diag(m).astype(complex)
    jp = np.zeros((n + 1, n + 1), complex)
    for k in range(1, n + 1):
        # <m+1|J+|m>, with index k-1 holding m+1
        mm = m[k]
        jp[k - 1, k] = np.sqrt(j * (j + 1) - mm * (mm + 1))
    jx = (jp + jp.conj().T) / 2
    jy = (jp - jp.conj().T) / 2j
    return jx, jy, jz


def hamiltonian(tau, eps, u, n):
    jx, _, jz = spin_ops(n)
    uu = u / n if n else 0.0
    return -tau * jx + eps * jz + uu * jz @ jz


def local_generator(tau, eps, u, n):
    k = hamiltonian(tau, eps, u, n)
    _, _, jz = spin_ops(n)
    f = lambda x: expm(-1j * x * k) @ jz @ expm(1j * x * k)
    val, _ = quad_vec(f, 0.0, 1.0, epsabs=1e-14, epsrel=1e-14)
    return (val + val.conj().T) / 2


def fisher_max(tau, eps, u, n):
    ell = eigh(local_generator(tau, eps, u, n), eigvals_only=True)
    return (ell[-1] - ell[0]) ** 2


def fd_derivative(tau, eps, u, n, psi0, h=1e-4):
    # 4th-order central difference of exp(-iK(eps)) psi0
    def st(e):
        return expm(-1j * hamiltonian(tau, e, u, n)) @ psi0
    return (-st(eps + 2 * h) + 8 * st(eps + h) - 8 * st(eps - h) + st(eps - 2 * h)) / (12 * h)


def main():
    np.set_printoptions(precision=17)
    print("L(tau=1,eps=1,u=1,N=2):")
    lg = local_generator(1, 1, 1, 2)
    for row in lg:
        print("  ", ", ".join(f"{{{z.real:.17g}, {z.imag:.17g}}}" for z in row))
    ell = eigh(lg, eigvals_only=True)
    print("ell:", repr(ell[-1]), repr(ell[0]), "F_M:", repr((ell[-1] - ell[0]) ** 2))
    for args in [(1, 1, 1, 2), (1, 1, 1, 4), (1, 1, 1, 8), (1, 1, 2, 8), (1, 1, 2, 16)]:
        print("F_M", args, repr(fisher_max(*args)), "f_M", repr(fisher_max(*args) / args[3] ** 2))
    # eps -> 0 reference at (tau=1, u=2, N=8)
    print("f_M eps=0 (1,0,2,8):", repr(fisher_max(1, 0.0, 2, 8) / 64))
    print("f_M eps=1e-6 (1,1e-6,2,8):", repr(fisher_max(1, 1e-6, 2, 8) / 64))
    # derivative of a fixed state at (1,1,1,4)
    psi0 = np.array([0.1 + 0.2j, -0.3 + 0.05j, 0.4, 0.2 - 0.6j, -0.15 + 0.1j])
    psi0 /= np.linalg.norm(psi0)
    d = fd_derivative(1, 1, 1, 4, psi0)
    print("dpsi (1,1,1,4):")
    for z in d:
        print(f"  {{{z.real:.17g}, {z.imag:.17g}}},")
    # NOON overlap for u=0- ground state: 2^(1-N)
    for n in (4, 8):
        k = hamiltonian(1, 0, -1e3, n)
        w, v = eigh(k)
        g = v[:, 0]
        print("noon overlap u=-1e3 N=%d" % n, repr(0.5 * (abs(g[0]) + abs(g[-1])) ** 2), "gap", w[1] - w[0])


if __name__ == "__main__":
    main()
