"""Regenerate tests/golden/*.pbm and manifest.json.

Every symbol must be read back by OpenCV's QRCodeDetector (an independent
decoder) before it is written; the script aborts otherwise.
"""

import json
import random
import sys
from pathlib import Path

import cv2
import numpy as np

from proteinoid_qr.qr import EcLevel, encode_numeric, format_pbm, numeric_capacity
from proteinoid_qr.qr.pbm import with_quiet_zone

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

EXAMPLE_STRINGS = {
    "example_by_light": "334422642626242635442264262624263744262666422626554426642626242677442664262624" "26",
    "example_by_proteinoid": "104422642626242611442264262624260144226426262426",
    "example_by_gate": "10370137",
}


def cases():
    for name, digits in EXAMPLE_STRINGS.items():
        yield name, digits, "M", None
    rng = random.Random(18004)
    levels = list(EcLevel)
    for version in range(1, 11):
        for level in rng.sample(levels, 2):
            n = rng.randint(1, numeric_capacity(version, level))
            digits = "".join(rng.choice("0123456789") for _ in range(n))
            yield f"v{version:02d}_{level.value}", digits, level.value, version


def opencv_reads(modules: np.ndarray, digits: str) -> bool:
    detector = cv2.QRCodeDetector()
    for scale in (8, 6, 10, 4, 12, 3, 5, 7, 9, 11, 2):
        img = np.kron(np.where(with_quiet_zone(modules), 0, 255).astype(np.uint8), np.ones((scale, scale), np.uint8))
        text, _, _ = detector.detectAndDecode(img)
        if text:
            return text == digits
    return False


def main() -> int:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    manifest = []
    for name, digits, level, version in cases():
        matrix = encode_numeric(digits, level, version)
        if not opencv_reads(matrix.modules, digits):
            print(f"{name}: OpenCV could not confirm the symbol", file=sys.stderr)
            return 1
        (GOLDEN / f"{name}.pbm").write_text(format_pbm(matrix), encoding="ascii", newline="\n")
        manifest.append(
            {
                "file": f"{name}.pbm",
                "digits": digits,
                "ec_level": level,
                "requested_version": version,
                "version": matrix.version,
                "mask_id": matrix.mask_id,
                "verified_by": f"opencv {cv2.__version__} QRCodeDetector",
            }
        )
        print(f"{name}: v{matrix.version}-{level} mask {matrix.mask_id}, {len(digits)} digits, OpenCV ok")
    (GOLDEN / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    return 0


if __name__ == "__main__":
    sys.exit(main())
