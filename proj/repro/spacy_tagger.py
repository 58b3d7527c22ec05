#!/usr/bin/env python3
"""Entity tagger speaking cfp's exchange protocol, backed by spaCy.

Reads one request per line ({"article_id", "text"}) on stdin and answers
with {"article_id", "mentions": [{"surface", "kind", "start", "end"}]},
where start/end index whitespace-separated tokens of the text.

Usage: cfp measure ... --tagger external-process \
           --tagger-command "python3 repro/spacy_tagger.py en_core_web_sm"
"""

import bisect
import json
import sys

import spacy

KINDS = {"PERSON": "person", "GPE": "gpe", "ORG": "org"}


def token_starts(text):
    starts, in_token = [], False
    for i, ch in enumerate(text):
        if ch.isspace():
            in_token = False
        elif not in_token:
            starts.append(i)
            in_token = True
    return starts


def main():
    model = sys.argv[1] if len(sys.argv) > 1 else "en_core_web_sm"
    nlp = spacy.load(model)
    for line in sys.stdin:
        request = json.loads(line)
        text = request["text"]
        starts = token_starts(text)
        mentions = []
        for ent in nlp(text).ents:
            kind = KINDS.get(ent.label_)
            if kind is None:
                continue
            first = bisect.bisect_right(starts, ent.start_char) - 1
            last = bisect.bisect_left(starts, ent.end_char)
            if first < 0 or last <= first:
                continue
            mentions.append({"surface": ent.text, "kind": kind, "start": first, "end": last})
        sys.stdout.write(json.dumps({"article_id": request["article_id"], "mentions": mentions}) + "\n")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
