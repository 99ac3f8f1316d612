#!/usr/bin/env python3
# Copyright 2026 The adgstego Authors.
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

"""Writes the synthetic movie-review corpus bundled under data/.

The text is produced by a seeded template grammar with Zipf-weighted word
choice, one review per line, with the odd HTML break tag and stray
punctuation so that preprocessing has something to do.
"""

import argparse
import random

ADJ_GOOD = """good great fine brilliant superb wonderful charming moving gripping clever funny sharp
warm tender lovely stunning beautiful solid decent strong smart witty elegant bold fresh honest subtle
rich vivid lively touching delightful engaging compelling thoughtful haunting powerful memorable
remarkable terrific excellent splendid gorgeous masterful inventive playful sincere graceful""".split()
ADJ_BAD = """bad poor weak dull boring bland silly messy lazy tired clumsy awful terrible dreadful flat
shallow predictable tedious forgettable pointless confusing slow stale cheap hollow stiff wooden
annoying painful pretentious sloppy clunky lifeless derivative overlong muddled uneven""".split()
ADV = """very really quite rather truly simply just almost fairly pretty so too incredibly oddly
surprisingly deeply genuinely utterly mostly largely barely hardly nearly somewhat""".split()
NOUN = """film movie story plot script cast acting direction ending score soundtrack music dialogue
scene scenes character characters performance performances pacing cinematography camera editing
humor tone mood premise setting twist climax finale opening sequel remake villain hero heroine
romance drama comedy thriller mystery adventure war western horror documentary animation effects
budget studio audience theater screen shot shots moment moments idea ideas message theme themes
world city town family friendship marriage childhood journey past future night summer winter
house road ship island forest school war army police detective doctor teacher lawyer soldier
writer painter singer dancer farmer king queen prince stranger ghost robot monster alien""".split()
VERB_T = """love loved like liked hate hated enjoy enjoyed admire admired recommend recommended watch
watched see saw remember remembered forget forgot appreciate appreciated miss missed follow followed
understand understood""".split()
VERB_I = """works fails drags shines sparkles stumbles soars collapses wanders flows lingers builds
falters delivers succeeds struggles""".split()
PRON = "i we you they".split()
ROLE = """director writer star lead actor actress composer producer editor newcomer veteran""".split()
TIME = """today yesterday tonight again twice finally recently once""".split()
CONN = """but and although because while though since yet so""".split()
GENRE = """drama comedy thriller romance horror western musical fantasy mystery satire""".split()
NUM = """one two three four five six seven eight nine ten""".split()
FEEL = """laugh cry smile think care wonder sleep cheer shiver sigh""".split()

ONSETS = "b br c ch d dr f g gr h j k l m n p pr r s st t tr v w z".split()
VOWELS = "a e i o u ai ea ou io".split()
CODAS = "n r s l nd rt th x m k ck".split()


def make_names(rng, n, syllables):
    seen = set()
    out = []
    while len(out) < n:
        parts = []
        for _ in range(rng.choice(syllables)):
            parts.append(rng.choice(ONSETS) + rng.choice(VOWELS))
        word = "".join(parts) + rng.choice(CODAS + [""])
        if word not in seen:
            seen.add(word)
            out.append(word)
    return out


class Zipf:
    def __init__(self, rng, words, s=1.05):
        self.rng = rng
        self.words = list(words)
        rng.shuffle(self.words)
        self.weights = [1.0 / (i + 1) ** s for i in range(len(self.words))]

    def __call__(self):
        return self.rng.choices(self.words, self.weights)[0]


def build(rng):
    first = Zipf(rng, make_names(rng, 260, [2]))
    last = Zipf(rng, make_names(rng, 320, [2, 3]))
    title = Zipf(rng, make_names(rng, 420, [2, 3]))
    place = Zipf(rng, make_names(rng, 180, [2, 3]))
    w = {k: Zipf(rng, v) for k, v in dict(good=ADJ_GOOD, bad=ADJ_BAD, adv=ADV, noun=NOUN, vt=VERB_T,
                                           vi=VERB_I, pron=PRON, role=ROLE, time=TIME, conn=CONN,
                                           genre=GENRE, num=NUM, feel=FEEL).items()}

    def adj():
        return w["good"]() if rng.random() < 0.6 else w["bad"]()

    def person():
        return first() + " " + last()

    templates = [
        lambda: f"the {w['noun']()} is {w['adv']()} {adj()}",
        lambda: f"{w['pron']()} {w['vt']()} this {w['noun']()} {w['conn']()} the {w['noun']()} is {adj()}",
        lambda: f"{person()} plays a {adj()} {w['noun']()} in {title()}",
        lambda: f"the {w['role']()} {person()} gives a {w['adv']()} {adj()} performance as the {w['noun']()}",
        lambda: f"{title()} is a {adj()} {w['genre']()} set in {place()}",
        lambda: f"i {w['vt']()} {title()} {w['time']()} and it {w['vi']()} in the {w['noun']()}",
        lambda: f"the {w['noun']()} {w['vi']()} {w['conn']()} the {w['noun']()} never {w['vi']()}",
        lambda: f"it made me {w['feel']()} {w['conn']()} the {w['noun']()} felt {adj()} and {adj()}",
        lambda: f"{w['num']()} of the {w['noun']()} are {w['adv']()} {adj()} but the rest is {adj()}",
        lambda: f"you don't need to {w['vt']()} the first {w['noun']()} to {w['vt']()} this one",
        lambda: f"{person()} and {person()} share a {adj()} {w['noun']()} in {place()}",
        lambda: f"if you {w['vt']()} {w['genre']()} you will {w['vt']()} the {w['noun']()} of {title()}",
        lambda: f"the {w['noun']()} of {title()} is {w['adv']()} {adj()} and the {w['noun']()} is {adj()}",
        lambda: f"i can't {w['vt']()} how {adj()} the {w['noun']()} was {w['time']()}",
        lambda: f"we {w['vt']()} it {w['time']()} {w['conn']()} the {w['noun']()} by {person()} is {adj()}",
        lambda: f"{w['adv']()} {adj()} {w['noun']()} with a {adj()} {w['noun']()} from {place()}",
    ]
    ends = [".", ".", ".", "!", "?", "!!", "..."]

    def review():
        out = []
        for _ in range(rng.randint(2, 7)):
            s = rng.choice(templates)()
            if rng.random() < 0.15:
                s = s.replace(" ", ", ", 1)
            s = s[0].upper() + s[1:] + rng.choice(ends)
            out.append(s)
            if rng.random() < 0.1:
                out.append("<br /><br />")
        return " ".join(out)

    return review


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reviews", type=int, default=6000)
    ap.add_argument("--seed", type=int, default=20260417)
    ap.add_argument("--out", default="data/toy_reviews.txt")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    review = build(rng)
    with open(args.out, "w", encoding="utf-8") as f:
        for _ in range(args.reviews):
            f.write(review() + "\n")


if __name__ == "__main__":
    main()
