"""Template sentences for fuzzing the rewriter and exercising the sampler."""

from __future__ import annotations

import random
from typing import Iterator

NAMES = ["the nurse", "the doctor", "my neighbour", "the manager", "Alex", "the teacher", "the clerk"]
VERBS_3SG = ["works", "sleeps", "cooks", "watches", "carries", "goes", "tries", "fixes", "laughs", "runs"]
VERBS_PAST = ["worked", "slept", "cooked", "left", "went", "tried", "called", "said"]
OBJECTS = ["book", "car", "dog", "idea", "old house", "very old book", "two cats"]
ADJS = ["happy", "tall", "tired", "ready", "late", "nice"]
PARTS = ["worked", "been", "gone", "done", "seen", "taken", "finished"]

TEMPLATES = [
    "{Subj} {v3} every day .",
    "{Subj} {v3} and {v3b} .",
    "{Subj} {v3} , {v3b} and {v3c} .",
    "{Subj} {vp} {name} yesterday .",
    "{Subj} is {adj} .",
    "{Subj} was {adj} when {subj2} {vp} .",
    "{Subj} 's {adj} .",
    "{Subj}'s {part} here .",
    "{Subj} has {part} it .",
    "{Subj} does n't know {obj} .",
    "{Subj} doesn't like {name} .",
    "I gave it to {obj} .",
    "It is {poss} {noun} .",
    "The {noun} is {indep} .",
    "{Poss} {noun} broke .",
    "{name} saw {obj} yesterday .",
    "{name} told {obj} about {poss} {noun} .",
    "{Subj} hurt {refl} .",
    "{name} asked {obj} whether {subj2} {v3} .",
    "{Subj} said {subj2} {v3} .",
    "Does {subj} know {obj} ?",
    "{Subj} can help {obj} with {poss} {noun} .",
    "That {noun} is not {indep} , it is {indep2} .",
    "{Subj} , however , {v3} .",
    "{name} called {obj} because {subj2} 's {adj} .",
    "{Subj} {vp} {refl} and {v3} .",
]


def _case(word: str, rng: random.Random) -> str:
    r = rng.random()
    if r < 0.1:
        return word.upper()
    if r < 0.2:
        return word.capitalize()
    return word


def _cap(word: str) -> str:
    return word[:1].upper() + word[1:]


def fuzz_sentences(n: int, seed: int = 0) -> Iterator[str]:
    """Yield `n` sentences mixing all eight binary forms, clitics, coordination and casing."""
    rng = random.Random(seed)
    for _ in range(n):
        tpl = rng.choice(TEMPLATES)
        subj = rng.choice(["he", "she"])
        fill = {
            "subj": _case(subj, rng),
            "Subj": _case(_cap(subj), rng) if rng.random() < 0.9 else subj,
            "subj2": _case(rng.choice(["he", "she"]), rng),
            "obj": _case(rng.choice(["him", "her"]), rng),
            "poss": _case(rng.choice(["his", "her"]), rng),
            "Poss": _cap(rng.choice(["his", "her"])),
            "indep": _case(rng.choice(["his", "hers"]), rng),
            "indep2": rng.choice(["his", "hers"]),
            "refl": _case(rng.choice(["himself", "herself"]), rng),
            "v3": rng.choice(VERBS_3SG), "v3b": rng.choice(VERBS_3SG), "v3c": rng.choice(VERBS_3SG),
            "vp": rng.choice(VERBS_PAST),
            "name": rng.choice(NAMES),
            "noun": rng.choice(OBJECTS),
            "adj": rng.choice(ADJS),
            "part": rng.choice(PARTS),
        }
        yield tpl.format(**fill)


# one template per form keeps the sampler corpus's distribution known
FORM_TEMPLATES = {
    "he": "{name} thinks he {v3} {k} .",
    "she": "{name} says she {v3} {k} .",
    "her": "{name} met her on day {k} .",
    "hers": "The {noun} number {k} is hers .",
    "his": "{name} found his {noun} number {k} .",
    "him": "{name} called him at {k} .",
    "himself": "The boy taught himself lesson {k} .",
    "herself": "The girl taught herself lesson {k} .",
}


def sampler_corpus(n_lines: int, weights: dict[str, float] | None = None, seed: int = 0,
                   neutral_share: float = 0.2, mixed_share: float = 0.1) -> list[str]:
    """Distinct lines with a controlled mix of target forms.

    `weights` sets the relative frequency of each single-form template;
    `mixed_share` of lines combine two forms, `neutral_share` contain none.
    """
    rng = random.Random(seed)
    forms = list(FORM_TEMPLATES)
    weights = weights or {f: 1.0 for f in forms}
    w = [weights.get(f, 0.0) for f in forms]
    out = []
    for k in range(n_lines):
        fill = {"name": rng.choice(NAMES).capitalize(), "v3": rng.choice(VERBS_3SG),
                "noun": rng.choice(["book", "car", "dog"]), "k": k}
        r = rng.random()
        if r < neutral_share:
            out.append("They met {name} on day {k} .".format(**fill))
        elif r < neutral_share + mixed_share:
            a, b = rng.choices(forms, weights=w, k=2)
            out.append(FORM_TEMPLATES[a].format(**fill)[:-2] + " and " + FORM_TEMPLATES[b].format(**fill))
        else:
            f = rng.choices(forms, weights=w, k=1)[0]
            out.append(FORM_TEMPLATES[f].format(**fill))
    return out
