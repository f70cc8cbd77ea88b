#!/usr/bin/env python3
"""Regenerates the bundled vector fixtures under data/.

example_vectors.vec  concept-clustered vectors covering data/example_topics.json
bench_vectors.vec    200 synthetic synonym clusters of 4 words for `topictrack bench`

Each word vector is its concept centre (unit norm) plus isotropic noise of
expected norm SIGMA, so words of one concept are each other's nearest
neighbours. Output is deterministic for a given numpy version.
"""

import argparse
import pathlib

import numpy as np

SIGMA = 0.2

CONCEPTS = {
    "space": "space nasa rocket launch orbit astronaut mars moon satellite mission spacecraft "
             "telescope NASA SpaceX Blue Origin Jeff Bezos",
    "astronomy": "star galaxy planet asteroid comet astronomer universe black hole observatory Hubble",
    "games": "game player console gamer playstation xbox nintendo studio multiplayer esports "
             "Sony Microsoft Nintendo Epic Games Fortnite",
    "covid": "covid virus pandemic vaccine lockdown mask coronavirus quarantine health hospital "
             "WHO CDC Pfizer",
    "social": "facebook twitter social post user account platform instagram follower feed "
              "Facebook Twitter Instagram Mark Zuckerberg",
    "datasec": "data privacy breach security hacker password encryption leak personal information "
               "FTC Equifax",
    "websec": "browser website malware phishing chrome extension vulnerability web attack patch "
              "Google Chrome Firefox",
    "phones": "phone smartphone iphone android camera screen display pixel "
              "Apple Samsung iPhone Pixel",
    "cars": "car electric tesla vehicle driving autonomous charge mile drive ev Tesla Elon Musk",
    "ai": "ai intelligence machine learning algorithm neural model robot automation deep "
          "OpenAI DeepMind",
    "battery": "battery lithium charging",
}

# Words that sit between two concepts.
SHARED = {"battery": ("phones", "cars")}


def unit(v):
    return v / np.linalg.norm(v)


def write_vec(path, words, vectors):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(words)} {vectors.shape[1]}\n")
        for w, v in zip(words, vectors):
            f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")


def example_vectors(rng, dim):
    centres = {name: unit(rng.standard_normal(dim)) for name in CONCEPTS}
    words, rows = [], []
    for name, text in CONCEPTS.items():
        for w in text.split():
            if w in words:
                continue
            c = centres[name]
            if w in SHARED:
                a, b = SHARED[w]
                c = unit(centres[a] + centres[b])
            words.append(w)
            rows.append(c + SIGMA * rng.standard_normal(dim) / np.sqrt(dim))
    return words, np.array(rows)


def bench_vectors(rng, dim, clusters, per_cluster):
    words, rows = [], []
    for k in range(clusters):
        c = unit(rng.standard_normal(dim))
        for j in range(per_cluster):
            words.append(f"c{k:03d}w{j}")
            rows.append(c + SIGMA * rng.standard_normal(dim) / np.sqrt(dim))
    return words, np.array(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=pathlib.Path,
                    default=pathlib.Path(__file__).resolve().parent.parent / "data")
    ap.add_argument("--seed", type=int, default=2021)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    write_vec(args.out / "example_vectors.vec", *example_vectors(rng, 24))
    write_vec(args.out / "bench_vectors.vec", *bench_vectors(rng, 24, 200, 4))


if __name__ == "__main__":
    main()
