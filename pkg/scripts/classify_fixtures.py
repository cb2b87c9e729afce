"""Full classification job on the shipped fixtures; prints the markdown report."""

import argparse
from importlib import resources

from hyperfocus.pipeline import classify


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--scan", type=int, default=7, help="largest h to try")
    p.add_argument("--in", dest="input", default=str(resources.files("hyperfocus.data") / "two_fixtures.1fc"))
    p.add_argument("--n", type=int, default=12)
    a = p.parse_args()
    print(classify(a.input, a.n, a.scan).to_markdown())


if __name__ == "__main__":
    main()
