"""Write the data behind the four figures as CSV files into a directory.

    python demos/figures.py out/
"""

import sys
from pathlib import Path

from questionmark import minkowski, periodfn, zeta


def main(target: str = "figures") -> None:
    out = Path(target)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "qm.csv", "w") as fh:
        minkowski.write_xy_csv(minkowski.figure_rows("qm", 1024), fh)
    with open(out / "psi.csv", "w") as fh:
        minkowski.write_xy_csv(minkowski.figure_rows("psi", 1024), fh)
    for i in (1, 2, 3, 4):
        with open(out / f"G_lambda{i}.csv", "w") as fh:
            minkowski.write_xy_csv(periodfn.eigenfunction_grid(i), fh, header=("z", "G_lambda"))
    with open(out / "critical_line.csv", "w") as fh:
        minkowski.write_xy_csv(zeta.critical_line_rows(), fh, header=("t", "Z"))
    print(f"wrote 7 files to {out}/")


if __name__ == "__main__":
    main(*sys.argv[1:])
