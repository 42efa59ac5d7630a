"""Shift operators from the literature, run through the same battery.

Five constructions are expressed as frequency responses on the graph's
eigenbasis: the adjacency matrix itself (a filter only on regular graphs),
the Girault spectral shift, the Gavili phase family, and the two semigroup
operators exp(i*h*L) and exp(i*h*sqrt(L)).  None of them is simultaneously
atomic, norm-preserving, and real-preserving on a generic graph, which is
exactly the gap the conjugate-paired construction fills.
"""
import numpy as np

from atomfilt import (
    as_fourier_basis,
    comparison_shift,
    eigendecompose,
    gen_sensor,
    path_graph,
    ring_graph,
)


def battery_row(result):
    if result.filter is None:
        return f"not a filter ({result.diagnostic.split(';')[0]})"
    r = result.report
    return (f"atomic={str(r.atomic):5s} norm={str(r.norm_preserving):5s} "
            f"periodic={str(r.periodic):5s} real={str(r.real_preserving):5s} "
            f"normal={r.normal}")


for label, graph in [("ring N=8", ring_graph(8)),
                     ("path N=8", path_graph(8)),
                     ("sensor N=12", gen_sensor(12, radius=0.6, seed=4))]:
    spec = eigendecompose(graph.laplacian())
    basis = as_fourier_basis(spec)
    print(f"\n{label}")
    phases = np.linspace(0.0, 2 * np.pi, graph.n, endpoint=False) + 0.1
    phases[0] = 0.0
    for kind, kwargs in [
        ("adjacency", {}),
        ("girault", {}),
        ("gavili", {"phases": phases}),
        ("schrodinger", {"h": 0.8}),
        ("sqrt_schrodinger", {"h": 0.8}),
    ]:
        result = comparison_shift(graph, spec, basis, kind, **kwargs)
        print(f"  {kind:16s} {battery_row(result)}")
