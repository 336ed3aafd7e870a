"""Regenerate the bundled pair documents (numpy only)."""
import json
import pathlib

import numpy as np

rng = np.random.default_rng(20240611)
here = pathlib.Path(__file__).parent


def herm(m):
    return (m + m.conj().T) / 2


def dump(path, n, structure, a, b):
    def enc(m):
        return [[[float(z.real), float(z.imag)] for z in row] for row in m]

    def rows(m):
        return ",\n".join("    " + json.dumps(r) for r in enc(m))

    path.write_text(
        f'{{\n  "n": {n},\n  "structure": "{structure}",\n'
        f'  "A": [\n{rows(a)}\n  ],\n  "B": [\n{rows(b)}\n  ]\n}}\n'
    )


def near_commuting(a, noise, delta=2e-3):
    b = herm(a @ a - 0.3 * a + delta * noise / np.linalg.norm(noise, 2))
    s = max(np.linalg.norm(a, 2), np.linalg.norm(b, 2))
    return a / s, b / s


def selfdual(m):
    p = herm(rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m)))
    q = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    q = (q - q.T) / 2
    return np.block([[p, q], [-q.conj(), p.conj()]])


a = herm(rng.normal(size=(4, 4))).astype(complex)
dump(here / "real_4.json", 4, "real", *near_commuting(a, herm(rng.normal(size=(4, 4))).astype(complex)))

g = lambda: herm(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
dump(here / "complex_3.json", 3, "complex", *near_commuting(g(), g()))

dump(here / "selfdual_4.json", 4, "selfdual", *near_commuting(selfdual(2), selfdual(2)))
