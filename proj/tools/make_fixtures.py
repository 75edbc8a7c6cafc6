#!/usr/bin/env python3
# Copyright 2026 The splicepaint Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the natural-image test fixtures under tests/data.

Crops come from the public-domain / CC0 sample images that ship with
scikit-image. Output is deterministic for a given scikit-image version.
"""
import argparse
import pathlib

import numpy as np
from PIL import Image
from skimage import data


def crops(img, count, size, rng):
    h, w = img.shape[:2]
    out = []
    for _ in range(count):
        y = int(rng.integers(0, h - size + 1))
        x = int(rng.integers(0, w - size + 1))
        out.append(img[y:y + size, x:x + size])
    return out


def shrink(patch, side):
    return np.asarray(Image.fromarray(patch).resize((side, side), Image.BOX))


def rgb(img):
    return np.stack([img] * 3, -1) if img.ndim == 2 else img


def write_split(root, name, patches):
    d = root / name
    d.mkdir(parents=True, exist_ok=True)
    lines = []
    for i, p in enumerate(patches):
        fname = f"{name}_{i:03d}.png"
        Image.fromarray(p).save(d / fname, optimize=False)
        lines.append(f"{name}/{fname}")
    (root / f"{name}.txt").write_text(
        f"# {name} split, {len(patches)} images\n" + "\n".join(lines) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    ap.add_argument("--side", type=int, default=64)
    args = ap.parse_args()
    root = pathlib.Path(args.out)
    rng = np.random.default_rng(20211)

    train_src = [data.astronaut(), data.rocket(), data.coffee()]
    train, val = [], []
    for src in train_src:
        train += [shrink(c, args.side) for c in crops(src, 22, 128, rng)]
        val += [shrink(c, args.side) for c in crops(src, 3, 128, rng)]
    test = [shrink(c, args.side) for c in crops(data.chelsea(), 20, 128, rng)]

    write_split(root, "train", train[:64])
    write_split(root, "val", val[:8])
    write_split(root, "test", test[:20])

    # Larger, more varied training split for the benchmark preset. Separate
    # generator so the splits above are unaffected.
    brng = np.random.default_rng(5)
    bench = []
    for src in [data.astronaut(), data.rocket(), data.coffee(), data.camera(),
                data.brick(), data.grass(), data.gravel(),
                data.immunohistochemistry(), data.hubble_deep_field()]:
        bench += [shrink(c, args.side) for c in crops(rgb(src), 29, 128, brng)]
    write_split(root, "bench", bench[:256])

    cat = data.chelsea()
    side = min(cat.shape[:2])
    y0 = (cat.shape[0] - side) // 2
    x0 = (cat.shape[1] - side) // 2
    square = cat[y0:y0 + side, x0:x0 + side]
    Image.fromarray(shrink(square, 224)).save(root / "natural_224.png", optimize=False)


if __name__ == "__main__":
    main()
