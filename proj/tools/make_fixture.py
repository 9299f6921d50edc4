#!/usr/bin/env python3
"""Builds the bundled synthetic tweet corpus fixture.

The corpus imitates Brazilian election-season chatter: three themes, retweet
storms (exact duplicates after normalization), a family of near-duplicate
spam posts, junk posts that normalize to nothing, and the usual URL/mention/
media noise. Output is deterministic for a given seed, and the generated file
is committed, so regeneration is only needed when the recipe changes.
"""

import argparse
import json
import random

VICTORY_TEMPLATES = [
    "o {cand} venceu o debate de ontem e vai vencer a eleição",
    "{cand} ganhou nas pesquisas e ganha de novo no primeiro turno",
    "a campanha do {cand} tomou as ruas, a vitória vem aí",
    "o povo decidiu, {cand} venceu e o brasil vai mudar",
    "quem foi na rua viu: a esperança venceu o medo, é {cand}",
    "bandeira verde amarela em cada janela, {cand} venceram as redes",
    "meu voto é do {cand}, pela família e pela pátria",
    "a urna vai confirmar o que a rua já sabe, {cand} vence",
    "deus, pátria e família, com {cand} a mudança é agora",
    "pesquisa nenhuma segura o {cand}, a vitória é do povo",
]
VICTORY_CAND = ["capitão", "mito", "candidato", "bozo", "dezessete"]
VICTORY_TAGS = ["b17", "bolsonaro17", "bolsonaropresidente", "elesim",
                "nasruascombolsonaro", "mudabrasil", "brasilacimadetudo"]

REPRESSION_TEMPLATES = [
    "o regime militar torturou e o {who} defende quem torturou",
    "quem elogia a ditadura elogia quem tortura, não esqueçam",
    "o porão da ditadura está cheio de memória e de medo",
    "golpe é golpe, tortura é tortura, não há meio termo",
    "a censura calou jornal, prendeu professor e torturou preso político",
    "anos de chumbo não são saudade, são violência e luto",
    "democracia se defende na rua, contra o golpe e contra o medo",
    "o {who} acha bonito torturar, eu acho crime",
    "quem viveu a ditadura sabe o preço da liberdade",
    "a resistência venceu a ditadura uma vez e vence de novo",
]
REPRESSION_WHO = ["capitão", "candidato", "deputado", "coronel"]
REPRESSION_TAGS = ["elenao", "ditaduranuncamais", "haddad13", "viralula",
                   "democraciasim", "elenunca"]

MEDIA_TEMPLATES = [
    "debate na {tv} hoje às 21h, candidatos falam de economia e imposto",
    "pesquisa {inst} mostra empate técnico no segundo turno",
    "a urna eletrônica passou por teste público do tse, diz o jornal",
    "jornalistas checam fake news sobre a apuração em tempo real",
    "entrevista com candidato rende manchete e memes na mesma noite",
    "reforma da previdência domina o debate econômico da semana",
    "o tse divulga boletim de urna por seção, qualquer um confere",
    "notícia falsa sobre urna fraudada circula de novo, já foi desmentida",
    "{inst} ouviu três mil eleitores em duzentos municípios",
    "economistas divergem sobre imposto único em sabatina na {tv}",
]
MEDIA_TV = ["band", "globo", "record", "sbt"]
MEDIA_INST = ["ibope", "datafolha", "vox populi"]
MEDIA_TAGS = ["eleicoes2018", "debate", "jornalnacional", "urnaeletronica"]

VIRAL = [
    ("a urna eletrônica foi fraudada e a mídia esconde, repassem antes que "
     "apaguem, o povo precisa saber a verdade sobre a fraude", 120,
     ["fraude", "urnafraudada"]),
    ("comprovado: pesquisa comprada mente, o instituto recebeu dinheiro do "
     "partido para inflar número, repassem", 40, ["pesquisacomprada"]),
    ("general avisa que não vai aceitar resultado roubado nas urnas", 12,
     ["intervencao"]),
]

# long base text so an appended token keeps shingle overlap above 0.9
NEAR_BASE = ("atenção eleitores de todo o brasil a justiça eleitoral mudou o "
             "local de votação de milhares de pessoas confira hoje mesmo o "
             "seu título no site do tse antes do dia da eleição para não "
             "perder o seu voto nem a sua vez")
NEAR_SUFFIXES = ["urgente", "repassem", "confirmado", "kkk", "atenção", "olha"]

JUNK = [
    "https://t.co/{u} @{m}",
    "pic.twitter.com/{u}",
    "@{m} https://t.co/{u}",
]

HANDLES = ["cidadao{:02d}".format(i) for i in range(40)]


def tco(rng):
    alphabet = "abcdefghjkmnpqrstuvwxyzABCDEFGHJKMNPQRSTUVWXYZ23456789"
    return "".join(rng.choice(alphabet) for _ in range(10))


def decorate(rng, text, tags):
    chosen = []
    if rng.random() < 0.55:
        chosen = rng.sample(tags, k=min(len(tags), rng.choice([1, 1, 2])))
        text += " " + " ".join("#" + t for t in chosen)
    if rng.random() < 0.30:
        text += " https://t.co/" + tco(rng)
    if rng.random() < 0.12:
        text += " pic.twitter.com/" + tco(rng)
    if rng.random() < 0.18:
        text = "@" + rng.choice(HANDLES) + " " + text
    return text, chosen


def themed_doc(rng, templates, slots, tags):
    template = rng.choice(templates)
    text = template
    for key, pool in slots.items():
        if "{" + key + "}" in text:
            text = text.replace("{" + key + "}", rng.choice(pool))
    return decorate(rng, text, tags)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/fixtures/tweets1k.jsonl")
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=20181007)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    regulars = ["u{:04d}".format(i) for i in range(160)]
    bots = ["bot{:03d}".format(i) for i in range(30)]

    records = []

    def push(text, author, tags, lang="pt"):
        day = rng.randint(0, 38)
        date = "2018-09-{:02d}".format(20 + day) if day < 11 else \
               "2018-10-{:02d}".format(day - 10)
        created = "{}T{:02d}:{:02d}:{:02d}Z".format(
            date, rng.randint(0, 23), rng.randint(0, 59), rng.randint(0, 59))
        rec = {
            "author_id": author,
            "created_at": created,
            "text": text,
            "lang_hint": lang,
        }
        if tags and rng.random() < 0.4:
            rec["hashtags"] = tags
        records.append(rec)

    themes = [
        (VICTORY_TEMPLATES, {"cand": VICTORY_CAND}, VICTORY_TAGS),
        (REPRESSION_TEMPLATES, {"who": REPRESSION_WHO}, REPRESSION_TAGS),
        (MEDIA_TEMPLATES, {"tv": MEDIA_TV, "inst": MEDIA_INST}, MEDIA_TAGS),
    ]
    viral_total = sum(n for _, n, _ in VIRAL)
    junk_total = 3
    near_total = 1 + len(NEAR_SUFFIXES)
    themed_total = args.count - viral_total - junk_total - near_total

    for i in range(themed_total):
        templates, slots, tags = themes[i % len(themes)]
        text, chosen = themed_doc(rng, templates, slots, tags)
        push(text, rng.choice(regulars), chosen)

    # retweet storms: same body, varied RT prefixes, bot authors
    for body, copies, tags in VIRAL:
        tagged = body + " " + " ".join("#" + t for t in tags)
        for _ in range(copies):
            text = tagged
            if rng.random() < 0.5:
                text = "RT @" + rng.choice(HANDLES) + ": " + text
            push(text, rng.choice(bots), tags)

    # near-duplicate family: one appended token per variant
    push(NEAR_BASE, rng.choice(bots), [])
    for suffix in NEAR_SUFFIXES:
        push(NEAR_BASE + " " + suffix, rng.choice(bots), [])

    for template in JUNK:
        push(template.format(u=tco(rng), m=rng.choice(HANDLES)),
             rng.choice(regulars), [], lang="und")

    rng.shuffle(records)
    for i, rec in enumerate(records):
        rec["id"] = "t{:04d}".format(i + 1)

    with open(args.out, "w", encoding="utf-8") as out:
        for rec in records:
            ordered = {k: rec[k] for k in
                       ["id", "author_id", "created_at", "text", "lang_hint"]}
            if "hashtags" in rec:
                ordered["hashtags"] = rec["hashtags"]
            out.write(json.dumps(ordered, ensure_ascii=False) + "\n")
    print("wrote {} records to {}".format(len(records), args.out))


if __name__ == "__main__":
    main()
