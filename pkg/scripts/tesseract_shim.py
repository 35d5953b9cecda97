#!/usr/bin/env python3
"""Adapt a stock Tesseract install to the external-OCR contract.

Usage: tesseract_shim.py <image.png>

Runs `tesseract <image> stdout tsv` and re-emits one `<char>\t<conf>` row per
character, assigning each character its word's confidence.  Point the
pipeline at it with `--ocr external:scripts/tesseract_shim.py`.
"""

import subprocess
import sys


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: tesseract_shim.py <image>", file=sys.stderr)
        return 2
    proc = subprocess.run(
        ["tesseract", sys.argv[1], "stdout", "--psm", "7", "tsv"],
        capture_output=True, text=True)
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        return proc.returncode
    first = True
    for line in proc.stdout.splitlines()[1:]:  # skip header
        fields = line.split("\t")
        if len(fields) != 12:
            continue
        conf, word = fields[10], fields[11]
        try:
            conf_val = float(conf)
        except ValueError:
            continue
        if conf_val < 0 or not word:  # -1 marks structural rows
            continue
        if not first:
            sys.stdout.write(" \t100\n")  # word gap
        first = False
        for ch in word:
            sys.stdout.write(f"{ch}\t{min(100.0, max(0.0, conf_val))}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
