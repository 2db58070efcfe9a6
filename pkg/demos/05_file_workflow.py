"""Drive the full command-line workflow: generate, fit, then evaluate.

Each step below calls the command-line interface in process, exactly as if
the commands had been typed in a shell. Everything lands in ./demo_output so
the files can be inspected afterwards.
"""

from pathlib import Path

from rsm.cli import main as rsm_cli


def run(argv):
    print(f"$ rsm {' '.join(argv)}")
    code = rsm_cli(argv)
    if code != 0:
        raise SystemExit(f"command failed with exit code {code}")
    print()


def main():
    out = Path("demo_output")
    data = out / "data"
    fit_dir = out / "fit"

    run(["generate", "--scenario", "2", "--seed", "42", "--out", str(data)])
    run(["fit", "--network", str(data / "network.txt"),
         "--partition", str(data / "partition.txt"),
         "--k", "3", "--seed", "42", "--out", str(fit_dir)])
    run(["eval", str(data / "true_labels.txt"), str(fit_dir / "labels.txt")])

    print("files written:")
    for path in sorted(out.rglob("*")):
        if path.is_file():
            print(f"  {path} ({path.stat().st_size} bytes)")

    labels = (fit_dir / "labels.txt").read_text().splitlines()
    print()
    print(f"first rows of {fit_dir / 'labels.txt'} (vertex, cluster):")
    for line in labels[:5]:
        print(f"  {line}")


if __name__ == "__main__":
    main()
