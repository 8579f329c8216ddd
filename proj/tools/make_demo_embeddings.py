#!/usr/bin/env python3
"""Writes data/embeddings.txt, a small topic-clustered word2vec text file.

Each content word sits near one of seven topic directions (one per question
category) with a large norm; function words are short random vectors, so they
carry little mass under norm-proportional weighting. The output is
deterministic for a given seed.
"""

import argparse

import numpy as np

TOPICS = {
    "price": [
        "料金", "値段", "入場料", "いくら", "円", "費用", "割引", "チケット",
        "大人", "子供", "price", "cost", "ticket", "admission", "fee", "much",
    ],
    "opening_hours": [
        "時間", "何時", "開館", "閉館", "営業時間", "営業", "朝", "夜", "開い",
        "hours", "time", "open", "close", "morning", "evening",
    ],
    "opening_days": [
        "休み", "曜日", "定休日", "休館日", "毎日", "祝日", "週末", "いつ",
        "days", "closed", "holiday", "weekend", "monday",
    ],
    "station": [
        "駅", "電車", "最寄り", "地下鉄", "徒歩", "何分", "線",
        "station", "train", "subway", "walk", "railway",
    ],
    "highway": [
        "高速", "高速道路", "道路", "インター", "車", "渋滞", "ドライブ", "方法",
        "highway", "car", "drive", "road", "expressway",
    ],
    "parking": [
        "駐車場", "駐車", "停める", "停め", "台", "場所", "無料",
        "parking", "lot", "park", "spaces",
    ],
    "no_question": [
        "特に", "ありません", "大丈夫", "結構", "質問", "十分", "わかりました",
        "いいえ", "nothing", "no", "questions", "fine",
    ],
}

FUNCTION_WORDS = [
    "は", "が", "を", "に", "で", "の", "か", "も", "と", "から", "まで",
    "です", "ですか", "ます", "ますか", "あり", "ありますか", "し", "い",
    "て", "何", "どこ", "どの", "くらい", "教え", "ください", "行け", "行く",
    "近い", "られ", "わかり", "まし", "た", "ね", "よ",
    "the", "is", "are", "a", "there", "how", "what", "where", "when", "i",
    "to", "do", "you", "any", "have", "it", "by", "can", "nearby",
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data/embeddings.txt")
    parser.add_argument("--dim", type=int, default=24)
    parser.add_argument("--seed", type=int, default=20211)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    topics = rng.normal(size=(len(TOPICS), args.dim))
    topics /= np.linalg.norm(topics, axis=1, keepdims=True)

    rows = []
    for t, words in enumerate(TOPICS.values()):
        for w in words:
            noise = rng.normal(size=args.dim) / np.sqrt(args.dim)
            vec = (topics[t] + 0.45 * noise) * rng.uniform(2.0, 3.0)
            rows.append((w, vec))
    for w in FUNCTION_WORDS:
        vec = rng.normal(size=args.dim) / np.sqrt(args.dim)
        vec *= rng.uniform(0.4, 0.8) / np.linalg.norm(vec)
        rows.append((w, vec))

    seen = set()
    for w, _ in rows:
        assert w not in seen, w
        seen.add(w)

    with open(args.out, "w", encoding="utf-8") as f:
        f.write(f"{len(rows)} {args.dim}\n")
        for w, vec in rows:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")


if __name__ == "__main__":
    main()
