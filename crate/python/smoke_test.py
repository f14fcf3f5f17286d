"""Builds the extension with cargo, imports it, and runs a short analysis.

Usage: python3 python/smoke_test.py [path/to/libpylexnet.so]
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_library(argv):
    if len(argv) > 1:
        return Path(argv[1])
    subprocess.run(["cargo", "build", "--release", "-p", "lexnet-py"], cwd=ROOT, check=True)
    for name in ("libpylexnet.so", "libpylexnet.dylib", "pylexnet.dll"):
        path = ROOT / "target" / "release" / name
        if path.exists():
            return path
    sys.exit("extension library not found under target/release")


def main():
    lib = locate_library(sys.argv)
    tmp = Path(tempfile.mkdtemp())
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, tmp / f"pylexnet{suffix}")
    sys.path.insert(0, str(tmp))
    import pylexnet as lx

    tokens = lx.tokenize("The keeper's lamp burned in 1964, all night.")
    assert tokens == ["the", "keeper", "s", "lamp", "burned", "in", "all", "night"], tokens

    stream = lx.preprocess(
        "The keeper lit the lamp and the lamp lit the sea.",
        "en",
        stopwords=["the", "and"],
        lemmas=[("lit", "light")],
    )
    print(stream)
    net = lx.build_cooccurrence([stream.lemmas])
    print(net, net.metrics())

    manifest = ROOT / "crates" / "core" / "data" / "corpus" / "manifest.tsv"
    report = json.loads(lx.analyze_manifest(str(manifest), seed=42))
    for language, books in sorted(report["languages"].items()):
        for book_id, book in sorted(books.items()):
            row = book["undirected"]
            print(
                f"{book_id} {language}: N={row['network']['n']} "
                f"C/C_er={row['verdict']['c_ratio']:.2f} L/L_er={row['verdict']['l_ratio']:.3f}"
            )
    try:
        lx.er_reference_metrics(3, 7)
    except lx.LexnetError as e:
        print("rejected:", e)
    else:
        raise AssertionError("too many links should be rejected")
    print("smoke test passed")


if __name__ == "__main__":
    main()
