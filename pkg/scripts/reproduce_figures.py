"""Recompute the configuration lattice of every fixture and write DOT files.

    python3 scripts/reproduce_figures.py [--out figures]

Prints one line per fixture with its state and edge counts and whether the
trace oracle agrees.
"""

import argparse
from pathlib import Path

from evstruct import lattice_of, parse, run_oracle
from evstruct.modelfile import export_dot

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for path in sorted(FIXTURES.glob("*.model")):
        x = parse(path.read_text())
        lat = lattice_of(x)
        (args.out / f"{path.stem}.dot").write_text(export_dot(lat, path.stem))
        oracle = run_oracle(x, lattice=lat).render()
        print(f"{path.stem:34} {x.kind:5} states={len(lat.states):3} edges={len(lat.edges):3} oracle={oracle}")


if __name__ == "__main__":
    main()
