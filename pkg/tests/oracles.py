"""Dense brute-force references the test modules check the package against.

Everything here works on full 2^N amplitude vectors with no shared code
paths into the package internals, so agreement is meaningful.
"""

from math import pi

import numpy as np

import magnonlab as ml


def dense_sigma(vec, n, axis, site):
    """sigma_axis(site) acting on a dense 2^n vector; bit site-1 = up."""
    out = np.zeros_like(vec, dtype=complex)
    bit = 1 << (site - 1)
    idx = np.arange(vec.size)
    up = (idx & bit) > 0
    if axis == "z":
        return np.where(up, vec, -vec).astype(complex)
    if axis == "x":
        out[idx ^ bit] = vec
        return out
    if axis == "y":
        out[idx ^ bit] = np.where(up, 1j, -1j) * vec
        return out
    if axis == "+":
        out[idx[~up] ^ bit] = vec[~up]
        return out
    if axis == "-":
        out[idx[up] ^ bit] = vec[up]
        return out
    raise ValueError(axis)


def dense_magnon_create(vec, n, j):
    k = 2 * pi * j / n
    out = np.zeros_like(vec, dtype=complex)
    for l in range(1, n + 1):
        out += np.exp(1j * k * l) * dense_sigma(vec, n, "+", l)
    return out / np.sqrt(n)


def dense_vcm(vec, n):
    """3n x 3n connected Pauli correlation matrix, ordering x(1..n), y, z."""
    applied = {(a, l): dense_sigma(vec, n, a, l)
               for a in "xyz" for l in range(1, n + 1)}
    mean = {key: np.vdot(vec, w) for key, w in applied.items()}
    v = np.zeros((3 * n, 3 * n), dtype=complex)
    for ai, a in enumerate("xyz"):
        for l in range(1, n + 1):
            for bi, b in enumerate("xyz"):
                for lp in range(1, n + 1):
                    second = np.vdot(applied[(a, l)], applied[(b, lp)])
                    v[ai * n + l - 1, bi * n + lp - 1] = (
                        second - mean[(a, l)] * mean[(b, lp)])
    return v


def dense_rho_a(vec, n):
    """Partial trace over the high-bit half of an even-n dense vector."""
    h = n // 2
    m = vec.reshape(1 << (n - h), 1 << h).T  # rows: A (low bits), cols: B
    return m @ m.conj().T


def dense_fluctuation(vec, n, op):
    """<dA+ dA> from the dense vector for an AdditiveOperator."""
    phi = np.zeros_like(vec, dtype=complex)
    for ai, a in enumerate("xyz"):
        for l in range(1, n + 1):
            c = op.coeffs[ai, l - 1]
            if c != 0:
                phi += c * dense_sigma(vec, n, a, l)
    return float(np.vdot(phi, phi).real - abs(np.vdot(vec, phi)) ** 2)


def builder_states(n, include_heavy=True):
    """Representative (label, PureState) pairs from every builder family."""
    states = [
        (f"dicke({n},1)", ml.dicke_state(n, 1)),
        (f"dicke({n},{n // 2})", ml.dicke_state(n, n // 2)),
        (f"w({n})", ml.w_state(n)),
        (f"ghz({n})", ml.ghz_state(n)),
        (f"product({n},1.0,0.5)", ml.product_state(n, 1.0, 0.5)),
        (f"product({n},pi/3,1.0)", ml.product_state(n, np.pi / 3, 1.0)),
        (f"magnons({n},(0,0))", ml.m_magnon_state(n, [0, 0])),
        (f"magnons({n},(0,1))", ml.m_magnon_state(n, [0, 1])),
    ]
    if include_heavy:
        states += [
            (f"band({n},{n // 2})", ml.band_state(n, n // 2)),
            (f"band({n},{n // 2 - 1},extras=(1,))",
             ml.band_state(n, n // 2 - 1, extras=(1,))),
            (f"magnons({n},(0,1,{n // 2}))", ml.m_magnon_state(n, [0, 1, n // 2])),
        ]
    if n >= 6:
        n1 = n - int(5 - 1).bit_length()  # modulus 5 -> 3 register-2 qubits
        if n1 >= 1:
            states.append((f"modexp({n1},2,5)", ml.modexp_state(n1, 2, 5)))
    return states
