#!/usr/bin/env python3
"""Regenerates data/fixture: a small synthetic English/Spanish survey.

Respondents rate a train trip (comfort, punctuality, cleanliness), give a
travel class and a trip purpose, then describe the trip in a few words.
Word choice leans on the scores so the analysis has structure to find.
"""
import csv
import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "fixture"

LEXICON = {
    "en": {
        "comfort_good": ["comfortable", "spacious", "quiet", "seats", "legroom", "relaxing"],
        "comfort_bad": ["cramped", "noisy", "hot", "air", "conditioning", "broken"],
        "time_good": ["punctual", "fast", "on", "time", "smooth"],
        "time_bad": ["late", "delay", "slow", "waiting", "cancelled"],
        "clean_good": ["clean", "tidy", "fresh"],
        "clean_bad": ["dirty", "toilets", "smell", "rubbish"],
        "filler": ["the", "a", "and", "was", "train", "trip", "very", "staff", "food", "wifi", "ticket"],
        "first": ["lounge", "meal", "service"],
        "stop": ["the", "a", "and", "was", "very"],
    },
    "es": {
        "comfort_good": ["cómodo", "amplio", "tranquilo", "asientos", "espacio", "agradable"],
        "comfort_bad": ["estrecho", "ruidoso", "calor", "aire", "acondicionado", "roto"],
        "time_good": ["puntual", "rápido", "hora", "llegada", "fluido"],
        "time_bad": ["retraso", "tarde", "lento", "espera", "cancelado"],
        "clean_good": ["limpio", "ordenado", "fresco"],
        "clean_bad": ["sucio", "baños", "olor", "basura"],
        "filler": ["el", "la", "y", "de", "tren", "viaje", "muy", "personal", "comida", "wifi", "billete"],
        "first": ["sala", "menú", "atención"],
        "stop": ["el", "la", "y", "de", "muy"],
    },
}


def answer(rng, lang, comfort, punctuality, cleanliness, travel_class):
    lex = LEXICON[lang]
    words = []
    n = rng.randint(2, 9)
    for _ in range(n):
        roll = rng.random()
        if roll < 0.3:
            pool = lex["comfort_good"] if comfort + rng.gauss(0, 2) > 5 else lex["comfort_bad"]
        elif roll < 0.55:
            pool = lex["time_good"] if punctuality + rng.gauss(0, 2) > 5 else lex["time_bad"]
        elif roll < 0.7:
            pool = lex["clean_good"] if cleanliness + rng.gauss(0, 1) > 3 else lex["clean_bad"]
        elif roll < 0.78 and travel_class == "first":
            pool = lex["first"]
        else:
            pool = lex["filler"]
        words.append(rng.choice(pool))
    text = " ".join(words)
    if rng.random() < 0.3:
        text = text.capitalize() + rng.choice(["!", ".", "...", " :(", "?"])
    if rng.random() < 0.15:
        text = text.replace(" ", ", ", 1)
    return text


def clamp(v, lo, hi):
    return max(lo, min(hi, int(round(v))))


def write_sample(rng, lang, count, prefix):
    responses, scores = [], []
    for i in range(count):
        rid = f"{prefix}{i + 1:03d}"
        mood = rng.gauss(0, 1)
        # Comfort is recorded on an inverted 0-10 scale (0 = best).
        comfort = clamp(5 + 2.2 * mood + rng.gauss(0, 1.5), 0, 10)
        punctuality = clamp(5 + 1.2 * mood + rng.gauss(0, 2.2), 0, 10)
        cleanliness = clamp(3 + 0.8 * mood + rng.gauss(0, 0.9), 1, 5)
        travel_class = "first" if rng.random() < 0.35 else "second"
        purpose = rng.choice(["work", "leisure", "leisure", "family"])
        text = "" if rng.random() < 0.04 else answer(rng, lang, comfort, punctuality, cleanliness, travel_class)
        responses.append([rid, text])
        row = [rid, str(10 - comfort), str(punctuality), str(cleanliness), travel_class, purpose]
        for k in (1, 2, 3):
            if rng.random() < 0.05:
                row[k] = ""
        if rng.random() < 0.03:
            row[5] = ""
        scores.append(row)
    with open(OUT / f"{lang}_responses.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "text"])
        w.writerows(responses)
    with open(OUT / f"{lang}_scores.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "comfort", "punctuality", "cleanliness", "class", "purpose"])
        w.writerows(scores)
    with open(OUT / f"{lang}_stopwords.txt", "w", encoding="utf-8") as f:
        f.write(f"# {lang} function words\n")
        f.write("\n".join(LEXICON[lang]["stop"]) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240607)
    write_sample(rng, "en", 140, "en")
    write_sample(rng, "es", 180, "es")
    config = {
        "samples": [
            {"name": "english", "language": "en", "responses": "en_responses.csv", "scores": "en_scores.csv",
             "stopwords": "en_stopwords.txt", "min_count": 5},
            {"name": "spanish", "language": "es", "responses": "es_responses.csv", "scores": "es_scores.csv",
             "stopwords": "es_stopwords.txt", "min_count": 5},
        ],
        "tokenizer": {"lowercase": True, "strip_punctuation": True, "min_token_chars": 1},
        "variables": [
            {"name": "comfort", "kind": "quantitative", "invert_scale": 10},
            {"name": "punctuality", "kind": "quantitative"},
            {"name": "cleanliness", "kind": "quantitative"},
            {"name": "class", "kind": "categorical", "categories": ["first", "second"]},
        ],
        "supplementary": [{"name": "purpose", "categories": ["family", "leisure", "work"]}],
        "max_axes": 5,
        "rel_tol": 1e-10,
        "n_permutations": 999,
        "seed": 42,
        "output": "out",
    }
    (OUT / "config.json").write_text(json.dumps(config, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
