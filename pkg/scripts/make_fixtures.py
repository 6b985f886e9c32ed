"""Regenerate the bundled fixture models.

    python3 scripts/make_fixtures.py [--dest DIR]
"""

import argparse
import json
from dataclasses import dataclass, field
from pathlib import Path

from orbigenus.model import model_to_dict, save_model, weighted_projective_model


@dataclass
class FixtureSpec:
    name: str
    a: tuple
    c: tuple
    N: int | None = None


@dataclass
class FixtureConfig:
    dest: Path = Path(__file__).resolve().parent.parent / "src" / "orbigenus" / "fixtures"
    fixtures: list = field(default_factory=lambda: [
        FixtureSpec("cp1", (1, 1), (0, 1)),
        FixtureSpec("cp2", (1, 1, 1), (0, 1, 2)),
        # genuine square root of the anticanonical bundle, l = 5 coprime to N = 2
        FixtureSpec("p112", (1, 1, 2), (0, 1, 4)),
        FixtureSpec("p113", (1, 1, 3), (0, 1, 5)),
    ])


def corrupted_p113():
    """P(1,1,3) with the first tangent character at the orbifold point doubled."""
    d = model_to_dict(weighted_projective_model([1, 1, 3], [0, 1, 5]))
    d["name"] = "P(1,1,3) corrupted"
    d["fixedPoints"][2]["weights"][0]["chi"] = {"0": "0", "1": "2/3", "2": "1/3"}
    return json.dumps(d, indent=2) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", type=Path, default=FixtureConfig.dest)
    cfg = FixtureConfig(dest=ap.parse_args().dest)
    cfg.dest.mkdir(parents=True, exist_ok=True)
    for spec in cfg.fixtures:
        m = weighted_projective_model(list(spec.a), list(spec.c), spec.N)
        save_model(m, cfg.dest / f"{spec.name}.json")
        print(f"{spec.name}: {m.name}, N = {m.bundle.N}, l = {m.bundle.l}, genuine = {m.bundle.genuine}")
    (cfg.dest / "p113_corrupted.json").write_text(corrupted_p113())
    print("p113_corrupted: one character at p2 perturbed")


if __name__ == "__main__":
    main()
