#!/usr/bin/env python3
"""Regenerate the demo fixture corpus under data/fixture/.

Deterministic: article texts are assembled from fixed word pools with
planted date and location mentions, so representative anchors, country
breakdowns and marker layouts are known by construction.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "data" / "fixture"

POOLS = {
    "land": "infantry division offensive trench artillery front assault regiment "
            "brigade campaign battle army soldiers casualties flank bombardment".split(),
    "naval": "fleet naval convoy battleship admiral blockade carrier squadron "
             "torpedo harbor sailors maritime escort cruiser".split(),
    "diplomacy": "treaty alliance negotiation ultimatum declaration ambassador "
                 "conference armistice settlement delegation accord ministers".split(),
    "revolt": "uprising revolt protest strike workers movement independence "
              "nationalist agitation rebellion unrest demonstrators".split(),
    "cold": "nuclear atomic missile deterrence espionage satellite ideological "
            "superpower containment propaganda summit standoff".split(),
}

GAZETTEER = [
    # id, name, lat, lon, country, population
    ("germany", "Germany", 51.0, 10.0, "DE", 83000000),
    ("france", "France", 46.6, 2.4, "FR", 67000000),
    ("poland", "Poland", 52.0, 19.3, "PL", 38000000),
    ("serbia", "Serbia", 44.0, 21.0, "RS", 7000000),
    ("belgrade", "Belgrade", 44.8, 20.5, "RS", 1700000),
    ("bulgaria", "Bulgaria", 42.7, 25.5, "BG", 7000000),
    ("sofia", "Sofia", 42.7, 23.3, "BG", 1200000),
    ("bosnia", "Bosnia", 43.9, 17.7, "BA", 3300000),
    ("sarajevo", "Sarajevo", 43.85, 18.36, "BA", 400000),
    ("romania", "Romania", 45.9, 24.97, "RO", 19000000),
    ("bucharest", "Bucharest", 44.43, 26.1, "RO", 1800000),
    ("montenegro", "Montenegro", 42.7, 19.4, "ME", 620000),
    ("cetinje", "Cetinje", 42.39, 18.92, "ME", 14000),
    ("hungary", "Hungary", 47.2, 19.5, "HU", 9700000),
    ("budapest", "Budapest", 47.5, 19.04, "HU", 1750000),
    ("russia", "Russia", 61.5, 105.0, "RU", 146000000),
    ("moscow", "Moscow", 55.75, 37.62, "RU", 12500000),
    ("japan", "Japan", 36.2, 138.25, "JP", 125000000),
    ("china", "China", 35.86, 104.2, "CN", 1400000000),
    ("united_states", "United States", 39.8, -98.6, "US", 331000000),
    ("washington", "Washington", 38.9, -77.04, "US", 700000),
    ("london", "London", 51.5, -0.13, "GB", 8900000),
    ("united_kingdom", "United Kingdom", 54.0, -2.0, "GB", 67000000),
    ("italy", "Italy", 42.8, 12.8, "IT", 60000000),
    ("rome", "Rome", 41.9, 12.5, "IT", 2800000),
    ("austria", "Austria", 47.6, 14.1, "AT", 8900000),
    ("vienna", "Vienna", 48.2, 16.37, "AT", 1900000),
    ("turkey", "Turkey", 39.0, 35.0, "TR", 84000000),
    ("istanbul", "Istanbul", 41.01, 28.98, "TR", 15500000),
    ("greece", "Greece", 39.0, 22.0, "GR", 10700000),
    ("athens", "Athens", 37.98, 23.73, "GR", 660000),
    ("korea", "Korea", 35.9, 127.8, "KR", 51000000),
    ("cuba", "Cuba", 21.5, -77.8, "CU", 11300000),
    ("vietnam", "Vietnam", 14.06, 108.28, "VN", 97000000),
    ("hawaii", "Hawaii", 19.9, -155.58, "US", 1400000),
    ("pearl_harbor", "Pearl Harbor", 21.35, -157.97, "US", 20000),
    ("berlin", "Berlin", 52.52, 13.4, "DE", 3600000),
    ("prague", "Prague", 50.08, 14.44, "CZ", 1300000),
    ("egypt", "Egypt", 26.8, 30.8, "EG", 102000000),
    ("spain", "Spain", 40.46, -3.75, "ES", 47000000),
    ("geneva", "Geneva", 46.2, 6.14, "CH", 200000),
    # longest-match and homonym exercisers
    ("york", "York", 53.96, -1.08, "GB", 210000),
    ("new_york", "New York", 40.71, -74.0, "US", 8800000),
    ("paris", "Paris", 48.85, 2.35, "FR", 2100000),
    ("paris_texas", "Paris", 33.66, -95.55, "US", 25000),
]

WWI, WWII, CW = "World War I", "World War II", "Cold War"

# id, title, categories, types, pools, [(date phrase, n)], [(location name, n)]
ARTICLES = [
    ("ww1", "World War I", [WWI], ["event"], ["land", "diplomacy"],
     [("28 July 1914", 3), ("11 November 1918", 2), ("1916", 1)],
     [("France", 5), ("Germany", 4), ("United Kingdom", 2)]),
    ("ww2", "World War II", [WWII], ["event"], ["land", "naval"],
     [("March 1945", 4), ("1935-10-03", 1), ("22 June 1941", 1),
      ("1 September 1939", 2), ("6 June 1944", 1)],
     [("Germany", 7), ("Poland", 3), ("Japan", 2)]),
    ("coldwar", "Cold War", [CW], ["event"], ["cold", "diplomacy"],
     [("5 March 1946", 3), ("1989", 2), ("1962", 1)],
     [("Moscow", 4), ("Washington", 3), ("United States", 2)]),
    # Balkans, 1910s: RS 4, BG 3, BA 2, RO 1, ME 1, HU 1
    ("balkan_league", "Balkan League", [WWI], ["event"], ["diplomacy", "revolt"],
     [("13 March 1912", 2), ("1912", 1)], [("Belgrade", 3), ("Greece", 1)]),
    ("first_balkan_war", "First Balkan War", [WWI], ["event"], ["land"],
     [("8 October 1912", 3), ("May 1913", 1)], [("Serbia", 4), ("Istanbul", 2)]),
    ("second_balkan_war", "Second Balkan War", [WWI], ["event"], ["land"],
     [("29 June 1913", 3), ("August 1913", 1)], [("Serbia", 3), ("Bulgaria", 2)]),
    ("battle_of_cer", "Battle of Cer", [WWI], ["event"], ["land"],
     [("15 August 1914", 2)], [("Serbia", 3), ("Austria", 1)]),
    ("assassination_sarajevo", "Assassination of Archduke Franz Ferdinand", [WWI],
     ["event"], ["revolt", "diplomacy"],
     [("28 June 1914", 3), ("1914", 1)], [("Sarajevo", 4), ("Serbia", 2), ("Vienna", 1)]),
    ("bosnian_crisis", "Bosnian Annexation Crisis", [WWI], ["event"], ["diplomacy"],
     [("February 1910", 2)], [("Bosnia", 3), ("Vienna", 1)]),
    ("sofia_mobilization", "Sofia Mobilization", [WWI], ["event"], ["land", "revolt"],
     [("22 September 1915", 2)], [("Sofia", 3)]),
    ("bulgarian_entry", "Bulgarian Entry into the War", [WWI], ["event"], ["diplomacy"],
     [("October 14, 1915", 2), ("1915", 1)], [("Bulgaria", 3), ("Germany", 1)]),
    ("doiran_offensive", "Doiran Offensive", [WWI], ["event"], ["land"],
     [("24 April 1917", 2), ("May 1917", 1)], [("Bulgaria", 3), ("Greece", 2)]),
    ("romanian_campaign", "Romanian Campaign", [WWI], ["event"], ["land"],
     [("27 August 1916", 2)], [("Bucharest", 3), ("Romania", 2)]),
    ("montenegrin_campaign", "Montenegrin Campaign", [WWI], ["event"], ["land"],
     [("January 1916", 2)], [("Cetinje", 2), ("Montenegro", 1)]),
    ("budapest_unrest", "Budapest Aster Unrest", [WWI], ["event"], ["revolt"],
     [("31 October 1918", 2)], [("Budapest", 3), ("Hungary", 1)]),
    # other fronts of the 1910s (outside the Balkans box)
    ("july_crisis", "July Crisis", [WWI], ["event"], ["diplomacy"],
     [("23 July 1914", 3), ("1914", 1)], [("Vienna", 3), ("Serbia", 2), ("Germany", 1)]),
    ("battle_of_marne", "First Battle of the Marne", [WWI], ["event"], ["land"],
     [("5 September 1914", 2)], [("Paris", 3), ("France", 2)]),
    ("gallipoli_campaign", "Gallipoli Campaign", [WWI], ["event"], ["naval", "land"],
     [("19 February 1915", 2), ("1916", 1)], [("Istanbul", 3), ("Turkey", 1)]),
    ("battle_of_verdun", "Battle of Verdun", [WWI], ["event"], ["land"],
     [("21 February 1916", 3)], [("France", 4)]),
    ("battle_of_somme", "Battle of the Somme", [WWI], ["event"], ["land"],
     [("July 1, 1916", 3), ("November 1916", 1)], [("France", 3), ("United Kingdom", 2)]),
    ("battle_of_jutland", "Battle of Jutland", [WWI], ["event"], ["naval"],
     [("31 May 1916", 2)], [("Germany", 3), ("United Kingdom", 2)]),
    ("us_entry_war", "American Entry into the War", [WWI], ["event"], ["diplomacy"],
     [("6 April 1917", 2)], [("Washington", 3), ("New York", 1), ("Germany", 1)]),
    ("armistice_compiegne", "Armistice at Compiegne", [WWI], ["event"], ["diplomacy"],
     [("11 November 1918", 3)], [("France", 3), ("Germany", 2)]),
    ("treaty_of_versailles", "Treaty of Versailles", [WWI], ["event"], ["diplomacy"],
     [("28 June 1919", 3), ("1919", 1)], [("Paris", 3), ("Germany", 2)]),
    # interwar and WWII
    ("league_founding", "Founding of the League of Nations", [WWI, CW], ["event"],
     ["diplomacy"], [("10 January 1920", 2)], [("Geneva", 3)]),
    ("manchuria_invasion", "Japanese Invasion of Manchuria", [WWII], ["event"], ["land"],
     [("18 September 1931", 2)], [("China", 3), ("Japan", 2)]),
    ("spanish_civil_war", "Spanish Civil War", [WWII], ["event"], ["revolt", "land"],
     [("17 July 1936", 2), ("April 1939", 1)], [("Spain", 4)]),
    ("second_sino_japanese_war", "Second Sino-Japanese War", [WWII], ["event"], ["land"],
     [("7 July 1937", 2), ("1945", 1)], [("China", 4), ("Japan", 3)]),
    ("invasion_of_poland", "Invasion of Poland", [WWII], ["event"], ["land"],
     [("1 September 1939", 3), ("1939", 1)], [("Poland", 4), ("Germany", 3)]),
    ("battle_of_britain", "Battle of Britain", [WWII], ["event"], ["naval", "land"],
     [("10 July 1940", 2), ("September 1940", 1)], [("London", 3), ("United Kingdom", 2)]),
    ("operation_barbarossa", "Operation Barbarossa", [WWII], ["event"], ["land"],
     [("22 June 1941", 3)], [("Russia", 4), ("Germany", 3)]),
    ("pearl_harbor_attack", "Attack on Pearl Harbor", [WWII], ["event"], ["naval"],
     [("7 December 1941", 3), ("1941-12-07", 1)], [("Pearl Harbor", 3), ("Hawaii", 2), ("Japan", 2)]),
    ("battle_of_midway", "Battle of Midway", [WWII], ["event"], ["naval"],
     [("4 June 1942", 2)], [("Hawaii", 3), ("Japan", 2)]),
    ("battle_of_stalingrad", "Battle of Stalingrad", [WWII], ["event"], ["land"],
     [("23 August 1942", 2), ("February 1943", 1)], [("Russia", 4), ("Germany", 2)]),
    ("normandy_landings", "Normandy Landings", [WWII], ["event"], ["naval", "land"],
     [("6 June 1944", 3)], [("France", 4), ("United Kingdom", 1)]),
    ("belgrade_offensive", "Belgrade Offensive", [WWII], ["event"], ["land"],
     [("14 September 1944", 2)], [("Belgrade", 3), ("Serbia", 1)]),
    ("battle_of_berlin", "Battle of Berlin", [WWII], ["event"], ["land"],
     [("16 April 1945", 3), ("May 1945", 1)], [("Berlin", 4), ("Germany", 2)]),
    ("hiroshima_bombing", "Atomic Bombing of Hiroshima", [WWII], ["event"], ["cold", "naval"],
     [("6 August 1945", 3)], [("Japan", 4)]),
    # cold war
    ("berlin_blockade", "Berlin Blockade", [CW], ["event"], ["cold", "diplomacy"],
     [("24 June 1948", 2), ("May 1949", 1)], [("Berlin", 4), ("Moscow", 1)]),
    ("korean_war", "Korean War", [CW], ["event"], ["land", "cold"],
     [("25 June 1950", 3), ("July 1953", 1)], [("Korea", 4), ("China", 2)]),
    ("hungarian_uprising", "Hungarian Uprising", [CW], ["event"], ["revolt", "cold"],
     [("23 October 1956", 3)], [("Budapest", 3), ("Hungary", 2), ("Moscow", 1)]),
    ("suez_crisis", "Suez Crisis", [CW], ["event"], ["diplomacy", "naval"],
     [("29 October 1956", 2)], [("Egypt", 4), ("France", 1), ("United Kingdom", 1)]),
    ("sputnik_launch", "Sputnik Launch", [CW], ["event"], ["cold"],
     [("4 October 1957", 2), ("1957", 1)], [("Moscow", 3), ("Russia", 1)]),
    ("berlin_wall", "Construction of the Berlin Wall", [CW], ["event"], ["cold"],
     [("13 August 1961", 3)], [("Berlin", 4), ("Germany", 1)]),
    ("cuban_missile_crisis", "Cuban Missile Crisis", [CW], ["event"], ["cold", "naval"],
     [("October 16, 1962", 3), ("1962", 1)], [("Cuba", 4), ("Washington", 2), ("Moscow", 2)]),
    ("vietnam_war", "Vietnam War", [CW], ["event"], ["land", "cold"],
     [("8 March 1965", 2), ("April 1975", 1)], [("Vietnam", 4), ("United States", 2)]),
    ("prague_spring", "Prague Spring", [CW], ["event"], ["revolt", "cold"],
     [("5 January 1968", 2), ("21 August 1968", 1)], [("Prague", 4), ("Moscow", 1)]),
    ("fall_berlin_wall", "Fall of the Berlin Wall", [CW], ["event"], ["revolt", "cold"],
     [("9 November 1989", 3)], [("Berlin", 4), ("Germany", 1)]),
    # unanchored edge cases
    ("unknown_incident", "Unlocated Incident", [CW], ["event"], [], [], []),
    ("undated_skirmish", "Undated Skirmish", [WWI], ["event"], ["land"],
     [], [("Germany", 2)]),
    # category-sharing non-events
    ("kaiser_wilhelm", "Wilhelm II", [WWI], ["person"], ["diplomacy"],
     [("1888", 1), ("June 1941", 1)], [("Germany", 3)]),
    ("woodrow_wilson", "Woodrow Wilson", [WWI], ["person"], ["diplomacy"],
     [("1913", 1)], [("Washington", 2), ("United States", 1)]),
    ("winston_churchill", "Winston Churchill", [WWII], ["person"], ["diplomacy", "naval"],
     [("May 1940", 1)], [("London", 2), ("United Kingdom", 1)]),
    ("truman_doctrine", "Truman Doctrine", [CW], ["policy"], ["cold", "diplomacy"],
     [("12 March 1947", 2)], [("Washington", 2), ("Greece", 1), ("Turkey", 1)]),
    ("iron_curtain_speech", "Iron Curtain Speech", [CW], ["speech"], ["cold", "diplomacy"],
     [("5 March 1946", 2)], [("Moscow", 1), ("United States", 1)]),
    # events outside the seed categories
    ("french_revolution", "French Revolution", ["Eighteenth century"], ["event"],
     ["revolt"], [("14 July 1789", 2)], [("Paris", 3), ("France", 2)]),
    ("moon_landing", "Apollo Moon Landing", ["Space exploration"], ["event"],
     ["cold"], [("20 July 1969", 2)], [("United States", 2)]),
    ("black_death", "Black Death Pandemic", ["Medieval history"], ["event"],
     ["revolt"], [("1347", 2)], [("Italy", 2), ("France", 1)]),
    ("battle_of_hastings", "Battle of Hastings", ["Medieval history"], ["event"],
     ["land"], [("14 October 1066", 2)], [("York", 2), ("United Kingdom", 1)]),
    ("crimean_war", "Crimean War", ["Nineteenth century"], ["event"],
     ["land", "naval"], [("October 1853", 2)], [("Russia", 3), ("Turkey", 2)]),
]

CLICKSTREAM = [
    ("ww1", "assassination_sarajevo", 420),
    ("ww1", "first_balkan_war", 160),
    ("ww1", "battle_of_marne", 140),
    ("ww1", "july_crisis", 120),
    ("first_balkan_war", "second_balkan_war", 90),
    ("second_balkan_war", "assassination_sarajevo", 70),
    ("balkan_league", "first_balkan_war", 60),
    ("assassination_sarajevo", "july_crisis", 110),
    ("july_crisis", "ww1", 95),
    ("battle_of_cer", "assassination_sarajevo", 30),
    ("bosnian_crisis", "assassination_sarajevo", 14),
    ("sofia_mobilization", "bulgarian_entry", 6),
    ("bulgarian_entry", "ww1", 11),
    ("doiran_offensive", "ww1", 7),
    ("romanian_campaign", "ww1", 9),
    ("montenegrin_campaign", "ww1", 5),
    ("budapest_unrest", "ww1", 8),
    ("battle_of_verdun", "battle_of_somme", 25),
    ("battle_of_somme", "battle_of_verdun", 20),
    ("gallipoli_campaign", "ww1", 15),
    ("us_entry_war", "ww1", 17),
    ("armistice_compiegne", "treaty_of_versailles", 26),
    ("treaty_of_versailles", "ww1", 65),
    ("league_founding", "treaty_of_versailles", 16),
    ("ww2", "invasion_of_poland", 300),
    ("ww2", "pearl_harbor_attack", 280),
    ("ww2", "operation_barbarossa", 210),
    ("ww2", "normandy_landings", 190),
    ("ww2", "hiroshima_bombing", 170),
    ("invasion_of_poland", "ww2", 130),
    ("pearl_harbor_attack", "battle_of_midway", 85),
    ("second_sino_japanese_war", "pearl_harbor_attack", 55),
    ("manchuria_invasion", "second_sino_japanese_war", 45),
    ("battle_of_stalingrad", "operation_barbarossa", 22),
    ("normandy_landings", "battle_of_berlin", 28),
    ("battle_of_berlin", "ww2", 33),
    ("battle_of_britain", "ww2", 44),
    ("hiroshima_bombing", "ww2", 66),
    ("battle_of_midway", "ww2", 21),
    ("spanish_civil_war", "ww2", 19),
    ("belgrade_offensive", "ww2", 13),
    ("coldwar", "cuban_missile_crisis", 240),
    ("coldwar", "berlin_wall", 200),
    ("coldwar", "korean_war", 150),
    ("cuban_missile_crisis", "coldwar", 100),
    ("berlin_blockade", "berlin_wall", 40),
    ("berlin_blockade", "coldwar", 23),
    ("korean_war", "vietnam_war", 35),
    ("vietnam_war", "coldwar", 30),
    ("hungarian_uprising", "coldwar", 20),
    ("prague_spring", "hungarian_uprising", 10),
    ("suez_crisis", "coldwar", 12),
    ("sputnik_launch", "coldwar", 18),
    ("berlin_wall", "fall_berlin_wall", 50),
    ("fall_berlin_wall", "berlin_wall", 75),
]

CONFIG = {
    "snapshot": "snapshot.jsonl",
    "gazetteer": "gazetteer.tsv",
    "clickstream": "clickstream.tsv",
    "out_dir": "out",
    "seeds": ["ww1", "ww2", "coldwar"],
    "model": {
        "k_min": 3,
        "k_max": 7,
        "k_step": 2,
        "alpha": 0.2,
        "beta": 0.01,
        "iterations": 400,
        "seed": 11,
        "coherence_window": 110,
    },
    "serve": {"host": "127.0.0.1", "port": 8000},
}


# glue words are stop words, so pool terms carry the topical signal
SENTENCE_SHAPES = [
    "The {} was the {} of the {} and the {}.",
    "There was the {} and then the {} of the {} and {}.",
    "The {} and the {} were the {} of that {}.",
]
DATE_SHAPES = [
    "It was on {} that all of this began.",
    "By {} most of this was over.",
    "What took place on {} would not be undone.",
]
LOCATION_SHAPES = [
    "It was from {} that the first word came.",
    "Much of this was felt in {} above all.",
    "From {} there was no turning back.",
]


def compose_text(rng: random.Random, pools, dates, locations) -> str:
    """Interleave pool sentences with exactly the planted mentions."""
    sentences = []
    words = [w for p in pools for w in POOLS[p]] or POOLS["diplomacy"]
    for i in range(rng.randint(9, 13)):
        picks = [rng.choice(words) for _ in range(4)]
        sentences.append(SENTENCE_SHAPES[i % len(SENTENCE_SHAPES)].format(*picks))
    planted = []
    for phrase, n in dates:
        for i in range(n):
            planted.append(DATE_SHAPES[i % len(DATE_SHAPES)].format(phrase))
    for name, n in locations:
        for i in range(n):
            planted.append(LOCATION_SHAPES[i % len(LOCATION_SHAPES)].format(name))
    rng.shuffle(planted)
    # alternate planted and pool sentences so mentions spread through the text
    out = []
    for i, sent in enumerate(planted):
        out.append(sent)
        if i < len(sentences):
            out.append(sentences[i])
    out.extend(sentences[len(planted):])
    return " ".join(out)


def main() -> None:
    rng = random.Random(20240901)
    OUT.mkdir(parents=True, exist_ok=True)

    links = {}
    for source, target, _ in CLICKSTREAM:
        links.setdefault(source, set()).add(target)

    with open(OUT / "snapshot.jsonl", "w", encoding="utf-8") as fh:
        for aid, title, cats, types, pools, dates, locations in ARTICLES:
            text = compose_text(rng, pools, dates, locations) if (pools or dates or locations) \
                else "It is so. He is. Go on. No."
            rec = {
                "id": aid,
                "title": title,
                "text": text,
                "categories": cats,
                "ontology_types": types,
                "links": sorted(links.get(aid, ())),
            }
            fh.write(json.dumps(rec) + "\n")

    with open(OUT / "gazetteer.tsv", "w", encoding="utf-8") as fh:
        for gid, name, lat, lon, cc, pop in GAZETTEER:
            fh.write(f"{gid}\t{name}\t{lat}\t{lon}\t{cc}\t{pop}\n")

    with open(OUT / "clickstream.tsv", "w", encoding="utf-8") as fh:
        for source, target, count in CLICKSTREAM:
            fh.write(f"{source}\t{target}\t{count}\n")

    (OUT / "config.json").write_text(json.dumps(CONFIG, indent=2) + "\n", encoding="utf-8")
    print(f"wrote fixture with {len(ARTICLES)} articles to {OUT}")


if __name__ == "__main__":
    main()
