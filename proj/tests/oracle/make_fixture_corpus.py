#!/usr/bin/env python3
"""Writes the 20-pair fixture corpus: a Kaggle-style CSV of real articles
(with a handful of rows that ingest must reject or drop) and a JSONL file of
generated counterparts sharing each title and description."""

import csv
import datetime
import json
import random
import sys

PLACES = ["Toronto", "Ontario", "Vancouver", "British Columbia", "Montreal", "Quebec",
          "Alberta", "Calgary", "Ottawa", "Canada", "China", "Italy", "Halifax"]
PEOPLE = ["Dr. Theresa Tam", "Premier Doug Ford", "Prime Minister Justin Trudeau",
          "Dr. Bonnie Henry", "Mayor John Tory", "Health Minister Patty Hajdu",
          "Dr. Eileen de Villa", "Premier Jason Kenney"]
ORGS = ["Health Canada", "the World Health Organization", "Toronto Public Health",
        "the Public Health Agency of Canada", "Air Canada", "the Bank of Canada",
        "the Red Cross", "Toronto General Hospital"]
GOOD = ["Volunteers delivered groceries to seniors, and neighbours said they were grateful.",
        "Officials praised residents for their patience and strong support.",
        "The new funding was welcomed as a great relief by families.",
        "Nurses said they were proud of the teamwork and encouraged by the recoveries.",
        "Businesses celebrated the reopening plan with optimism."]
BAD = ["Officials warned that the outbreak could overwhelm hospitals.",
       "Families described the crisis as terrifying and exhausting.",
       "The number of deaths rose sharply, a devastating blow to the community.",
       "Critics said the response was slow and confusing.",
       "Workers fear losing their jobs as the economic damage spreads."]
NEUTRAL = ["The briefing took place on Tuesday afternoon.",
           "The province will publish new figures every morning.",
           "Schools will remain closed until further notice.",
           "The agency updated its guidance for travellers.",
           "Testing sites will operate seven days a week."]
TOPICS = ["new coronavirus cases", "school closures", "hospital capacity", "travel restrictions",
          "economic relief", "testing capacity", "long-term care homes", "border measures",
          "small business support", "physical distancing rules"]


def article(rng, topic, place, tone):
    person = rng.choice(PEOPLE)
    org = rng.choice(ORGS)
    other = rng.choice(PLACES)
    pool = {"good": GOOD, "bad": BAD}.get(tone, NEUTRAL)
    sentences = [
        "%s said %s announced an update on %s in %s." % (person, org, topic, place),
        rng.choice(pool),
        rng.choice(NEUTRAL),
        "Officials in %s are watching the situation in %s closely." % (place, other),
        rng.choice(pool),
    ]
    return " ".join(sentences)


def main(out_dir):
    rng = random.Random(2020)
    start = datetime.date(2020, 1, 6)
    real_rows, generated = [], []
    for i in range(20):
        date = start + datetime.timedelta(days=6 * i)
        topic = TOPICS[i % len(TOPICS)]
        place = PLACES[i % len(PLACES)]
        title = "%s: update on %s (%d)" % (place, topic, i + 1)
        description = "What we know about %s in %s this week." % (topic, place)
        real_tone = rng.choice(["good", "bad", "neutral"])
        gen_tone = rng.choice(["good", "bad", "neutral"])
        body = article(rng, topic, place, real_tone)
        raw = ("CBC News · Posted: %s 4:00 AM ET | Last Updated: %s\n"
               "Social Sharing\n%s\n(The Canadian Press)" % (date.strftime("%b %d, %Y"),
                                                             date.strftime("%B %d"), body))
        real_rows.append(["%d" % i, "['Cbc News']", title, date.isoformat() + " 09:00:00",
                          description, raw, "https://www.cbc.ca/news/article-%d" % (i + 1)])
        generated.append({"title": title, "description": description,
                          "published_at": date.isoformat(),
                          "body": article(rng, topic, rng.choice(PLACES), gen_tone),
                          "origin": "generated", "model_tag": "model1-t0.50"})
    # Rows ingest must handle: a duplicate, an unparseable date, an empty body.
    bad = [real_rows[3][:], ["x1", "[]", "Bad date row", "someday", "d", "Some text.", ""],
           ["x2", "[]", "Empty body row", "2020-02-02", "d", "Social Sharing", ""]]
    bad[0][0] = "dup"
    rows = real_rows[:10] + bad + real_rows[10:]
    with open(out_dir + "/real.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["", "authors", "title", "publish_date", "description", "text", "url"])
        w.writerows(rows)
        # A row with the wrong number of fields.
        f.write("short,row\n")
    with open(out_dir + "/generated.jsonl", "w", encoding="utf-8") as f:
        for g in generated:
            f.write(json.dumps(g, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
