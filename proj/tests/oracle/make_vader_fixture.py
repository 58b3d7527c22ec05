#!/usr/bin/env python3
"""Builds the sentence fixture and its expected compounds using the reference
vaderSentiment package (3.3.2). Run once; the output is committed."""

import random
import sys

from vaderSentiment.vaderSentiment import SentimentIntensityAnalyzer

HANDWRITTEN = [
    "Thousands of cyclists pedalled along empty Toronto highways today, enjoying the good weather and raising money for charity.",
    "'They're good at running them and we have to create the right environment for them,' she said.",
    "She said it's not good enough to say there's a strategy — that the province needs a strategy in action.",
    "Transportation Minister Clare Trevena said the incident is 'obviously' worrisome.",
    "The vaccine rollout was NOT a failure, officials insisted.",
    "This is the best news we have had all year!!!",
    "Is this really happening??",
    "What a terrible, horrible, no good day.",
    "The results were kind of disappointing.",
    "The mayor was extremely happy with the turnout.",
    "Residents were barely able to cope with the flooding.",
    "The plan is good, but the execution was awful.",
    "The plan was awful, but the volunteers were wonderful.",
    "Hospitals are not without hope.",
    "Never have I seen such generosity.",
    "The premier said the situation is the least bit concerning.",
    "At least the rain stopped before the parade.",
    "The show was the bomb, according to fans.",
    "Critics said the budget was a bad ass move.",
    "The team won the game :) and fans cheered.",
    "Prices keep rising :( and families are worried.",
    "I love this city \U0001F600",
    "The outbreak is spreading \U0001F622 and clinics are full.",
    "The new policy is GREAT for small businesses.",
    "The new policy is great for small businesses.",
    "No one was hurt in the crash.",
    "No, the minister did not resign.",
    "There was no evidence of wrongdoing.",
    "Police said the suspect was dangerous and armed.",
    "The ceremony was quiet.",
    "Schools will reopen on Monday.",
    "The council approved the budget after a long debate.",
    "Doctors warned that cases could surge again.",
    "The company reported record profits, delighting investors.",
    "Unemployment claims hit a devastating new high.",
    "Nurses were praised for their courage and dedication.",
    "The decision was hardly surprising.",
    "It was somewhat better than expected.",
    "The storm caused enormous damage to homes.",
    "He is not uncaring about the issue.",
    "The report was insufficiently clear.",
    "It isn't a bad idea, really.",
    "It's not really that bad.",
    "Nothing is worse than uncertainty.",
    "Without doubt this is a success.",
    "The protest remained peaceful throughout the afternoon.",
    "Officials fear the virus will overwhelm hospitals.",
    "Families celebrated the reunion with tears of joy.",
    "The lawsuit alleges fraud and abuse.",
    "Experts say the risk remains low.",
    "The findings are very, very promising.",
    "That was a real kick in the pants.",
    "The lockdown will be lifted soon, hopefully.",
    "Traffic was horrible!",
    "Traffic was horrible!!!!!!",
    "Are we ready? Are we safe?",
    "The crowd booed loudly when the referee left.",
    "Support for the measure is strong.",
    "The deal fell apart, disappointing both sides.",
    "Relief funding was welcomed by struggling restaurants.",
]

SUBJECTS = ["The minister", "Health officials", "Local residents", "The company",
            "Protesters", "The premier", "Researchers", "Teachers", "The mayor",
            "Hospital staff"]
VERBS = ["praised", "criticized", "welcomed", "rejected", "supported", "feared",
         "celebrated", "condemned", "questioned", "trusted"]
OBJECTS = ["the new rules", "the emergency plan", "the vaccine trial", "the budget",
           "the lockdown", "the relief program", "the report", "the announcement"]
MODIFIERS = ["", "", "very ", "extremely ", "barely ", "somewhat ", "not ", "never ",
             "really ", "hardly "]
TAILS = ["", ".", "!", "!!", "?", " but the outcome was uncertain.",
         " and people were happy.", " despite strong opposition.",
         ", calling it a disaster.", ", saying it was a great relief."]


def generated(n, seed=20200301):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = "%s %s%s %s%s" % (rng.choice(SUBJECTS), rng.choice(MODIFIERS),
                              rng.choice(VERBS), rng.choice(OBJECTS), rng.choice(TAILS))
        if rng.random() < 0.15:
            s = s.upper()
        if s not in out:
            out.append(s)
    return out


def main(path):
    sentences = HANDWRITTEN + generated(200 - len(HANDWRITTEN))
    analyzer = SentimentIntensityAnalyzer()
    with open(path, "w", encoding="utf-8") as f:
        for s in sentences:
            f.write("%s\t%.4f\n" % (s, analyzer.polarity_scores(s)["compound"]))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "vader_fixture.tsv")
