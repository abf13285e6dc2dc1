"""Compare the compiled and pure-Python simulation backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each workload is run on both backends; results are checked for equality
before timings are reported.
"""
import argparse
import random
import sys
import timeit

from exactsynth import _kernels
from exactsynth.lowering import Circuit, Gate, lower_circuit
from exactsynth.synthesis import decompose
from exactsynth.verify import check_exact, circuit_to_matrix, simulate

ONE_QUBIT = ("H", "S", "Sdg", "T", "Tdg", "X")


def random_circuit(n_wires, count, rng):
    gates = []
    for _ in range(count):
        if n_wires > 1 and rng.random() < 0.25:
            gates.append(Gate("CNOT", tuple(rng.sample(range(n_wires), 2))))
        else:
            gates.append(Gate(rng.choice(ONE_QUBIT), (rng.randrange(n_wires),)))
    return Circuit(n_wires, 0, gates)


def workloads(rng):
    for n, count in ((3, 500), (5, 2000), (6, 1000)):
        circ = random_circuit(n, count, rng)
        yield f"full matrix, {n} wires, {count} gates", lambda b, c=circ: circuit_to_matrix(c, b)
    # a synthesized 3-qubit unitary, checked on the ancilla-0 block
    u = circuit_to_matrix(random_circuit(3, 40, rng))
    circ = lower_circuit(decompose(u), 3)
    yield (
        f"check_exact, synthesized 3-qubit ({len(circ)} gates)",
        lambda b, c=circ, t=u: check_exact(c, t, b),
    )
    circ = random_circuit(8, 3000, rng)
    yield "single column, 8 wires, 3000 gates", lambda b, c=circ: simulate(c, [0], b).column(0)


def _same(a, b):
    # check reports compare by verdict, everything else by value
    if hasattr(a, "passed"):
        return a.passed == b.passed
    return a == b


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    if _kernels.compiled is None:
        print("compiled extension not available; only the Python backend can be timed")
        return 1
    rng = random.Random(args.seed)
    print(f"{'workload':48} {'python (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    for name, fn in workloads(rng):
        if not _same(fn(_kernels.py), fn(_kernels.compiled)):
            raise SystemExit(f"backends disagree on {name}")
        t_py = min(timeit.repeat(lambda: fn(_kernels.py), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: fn(_kernels.compiled), number=1, repeat=args.repeat))
        print(f"{name:48} {t_py * 1e3:12.2f} {t_c * 1e3:14.2f} {t_py / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
