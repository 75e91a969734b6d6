#!/usr/bin/env python3
"""Builds tests/data/mammals.tsv: a 2-D Poincare embedding of the WordNet 3.0
mammal.n.01 hyponym closure, corrupted by 11 non-mammal animals.

Each outlier is wired into the graph with is-a edges to randomly chosen mammal
synsets, then everything is trained together with the usual Poincare
embedding objective (Riemannian SGD, sampled negatives).

usage: make_mammals_fixture.py WORDNET_DICT_DIR [--out PATH] [--seed N]
"""

import argparse
import os
import random

import torch

OUTLIER_LEMMAS = [
    "shark", "salmon", "cod", "eagle", "sparrow", "owl",
    "penguin", "crocodile", "lizard", "snake", "frog",
]
NOUN_ANIMAL = 5  # lexicographer file noun.animal
EPS = 1e-5


def read_synsets(dict_dir):
    synsets = {}
    for line in open(os.path.join(dict_dir, "data.noun"), encoding="utf-8"):
        if line.startswith(" "):
            continue
        f = line.split(" ")
        if len(f) < 5:
            continue
        offset, lexfile, wcnt = f[0], int(f[1]), int(f[3], 16)
        words = [f[4 + 2 * i] for i in range(wcnt)]
        i = 4 + 2 * wcnt
        pcnt = int(f[i])
        i += 1
        hypo, hyper = [], []
        for _ in range(pcnt):
            sym, target, pos = f[i], f[i + 1], f[i + 2]
            i += 4
            if pos != "n":
                continue
            if sym == "~":
                hypo.append(target)
            elif sym == "@":
                hyper.append(target)
        synsets[offset] = dict(words=words, lexfile=lexfile, hypo=hypo, hyper=hyper)
    return synsets


def read_sense_index(dict_dir):
    senses = {}
    for line in open(os.path.join(dict_dir, "index.noun"), encoding="utf-8"):
        if line.startswith(" "):
            continue
        f = line.split()
        lemma, scnt, pcnt = f[0], int(f[2]), int(f[3])
        senses[lemma] = f[6 + pcnt : 6 + pcnt + scnt]
    return senses


def synset_name(synsets, senses, offset):
    lemma = synsets[offset]["words"][0].lower()
    number = senses[lemma].index(offset) + 1
    return f"{lemma}.n.{number:02d}"


def closure_edges(synsets, root):
    nodes = [root]
    seen = {root}
    for u in nodes:
        for v in synsets[u]["hypo"]:
            if v not in seen:
                seen.add(v)
                nodes.append(v)

    ancestors = {}

    def up(u):
        if u not in ancestors:
            acc = set()
            if u != root:
                for h in synsets[u]["hyper"]:
                    if h in seen:
                        acc.add(h)
                        acc |= up(h)
            ancestors[u] = acc
        return ancestors[u]

    edges = sorted((u, a) for u in nodes for a in up(u))
    return sorted(nodes), edges


def dist(u, v):
    sq = ((u - v) ** 2).sum(-1)
    alpha = (1 - (u**2).sum(-1)).clamp_min(EPS)
    beta = (1 - (v**2).sum(-1)).clamp_min(EPS)
    x = 1 + 2 * sq / (alpha * beta)
    return torch.acosh(x.clamp_min(1 + 1e-7))


def train(n, edges, seed, epochs, negatives, lr, burn_in, batch):
    gen = torch.Generator().manual_seed(seed)
    emb = (torch.rand(n, 2, generator=gen) - 0.5) * 2e-3
    emb.requires_grad_(True)
    pairs = torch.tensor(edges, dtype=torch.long)
    keys = torch.cat([pairs[:, 0] * n + pairs[:, 1], pairs[:, 1] * n + pairs[:, 0]])
    for epoch in range(epochs):
        rate = lr / 10 if epoch < burn_in else lr
        order = torch.randperm(len(pairs), generator=gen)
        for start in range(0, len(pairs), batch):
            chunk = pairs[order[start : start + batch]]
            neg = torch.randint(0, n, (len(chunk), negatives), generator=gen)
            cand = torch.cat([chunk[:, 1:2], neg], dim=1)
            d = dist(emb[chunk[:, 0:1]], emb[cand])
            # Negatives that are real neighbours must not be pushed away.
            u = chunk[:, 0:1].expand_as(cand)
            mask = torch.isin(u * n + cand, keys) | (u == cand)
            mask[:, 0] = False
            logits = (-d).masked_fill(mask, float("-inf"))
            loss = -torch.log_softmax(logits, dim=1)[:, 0].mean()
            loss.backward()
            with torch.no_grad():
                g = emb.grad
                scale = ((1 - (emb**2).sum(-1, keepdim=True)) ** 2) / 4
                emb -= rate * scale * g
                norms = emb.norm(dim=-1, keepdim=True)
                emb.copy_(torch.where(norms >= 1 - EPS, emb / norms * (1 - EPS), emb))
                emb.grad.zero_()
    return emb.detach().double()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("dict_dir")
    ap.add_argument("--out", default="tests/data/mammals.tsv")
    ap.add_argument("--seed", type=int, default=2017)
    ap.add_argument("--epochs", type=int, default=300)
    ap.add_argument("--negatives", type=int, default=50)
    ap.add_argument("--batch", type=int, default=10)
    ap.add_argument("--lr", type=float, default=0.3)
    ap.add_argument("--burn-in", type=int, default=20)
    ap.add_argument("--links", type=int, default=1)
    ap.add_argument("--attach", choices=["random", "root"], default="random")
    args = ap.parse_args()

    synsets = read_synsets(args.dict_dir)
    senses = read_sense_index(args.dict_dir)
    root = senses["mammal"][0]
    mammals, edges = closure_edges(synsets, root)

    outliers = []
    for lemma in OUTLIER_LEMMAS:
        offset = next(o for o in senses[lemma] if synsets[o]["lexfile"] == NOUN_ANIMAL)
        outliers.append(offset)

    nodes = mammals + outliers
    index = {o: i for i, o in enumerate(nodes)}
    pairs = [(index[u], index[v]) for u, v in edges]
    rng = random.Random(args.seed)
    for o in outliers:
        targets = [root] if args.attach == "root" else rng.sample(mammals, args.links)
        for target in targets:
            pairs.append((index[o], index[target]))

    torch.manual_seed(args.seed)
    emb = train(len(nodes), pairs, args.seed, args.epochs, args.negatives, args.lr, args.burn_in,
                args.batch)

    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        out.write("id\tx\ty\tlabel\tname\n")
        for i, o in enumerate(nodes):
            label = "outlier" if o in outliers else "inlier"
            x, y = emb[i].tolist()
            out.write(f"{i}\t{x:.17g}\t{y:.17g}\t{label}\t{synset_name(synsets, senses, o)}\n")
    print(f"{len(mammals)} mammals + {len(outliers)} outliers, {len(pairs)} edges -> {args.out}")


if __name__ == "__main__":
    main()
