"""Closed-class word lists, open-class lexicons and irregular lemma tables.

The tagger is lexicon-plus-suffix driven; unknown words default to nouns.
The lists are tuned for declarative fact sentences, which is the register
the downstream extraction pipeline consumes.
"""
from __future__ import annotations

DETERMINERS = {
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "no",
    "each", "every", "another", "all", "both", "either", "neither", "such",
}

PREPOSITIONS = {
    "in", "on", "at", "by", "with", "from", "about", "for", "of", "to",
    "into", "onto", "over", "under", "near", "inside", "outside", "during",
    "before", "after", "between", "among", "through", "across", "around",
    "against", "along", "behind", "below", "above", "beneath", "beside",
    "within", "without", "like", "as", "than", "until", "toward", "towards",
    "up", "down", "off", "out", "past", "per", "via", "including",
}

SUBJECT_PRONOUNS = {"i", "you", "he", "she", "it", "we", "they"}
OBJECT_PRONOUNS = {"me", "him", "her", "us", "them"}
POSSESSIVE_PRONOUNS = {"my", "your", "his", "her", "its", "our", "their"}
PRONOUNS = SUBJECT_PRONOUNS | OBJECT_PRONOUNS | POSSESSIVE_PRONOUNS | \
    {"who", "which", "what", "something", "anything", "everything", "nothing"}

COORDINATORS = {"and", "or", "but", "nor", "yet"}

BE_FORMS = {"be", "am", "is", "are", "was", "were", "been", "being"}
HAVE_FORMS = {"have", "has", "had", "having"}
DO_FORMS = {"do", "does", "did"}
MODALS = {"will", "would", "can", "could", "may", "might", "must", "shall",
          "should"}

AUX_LEMMAS = {form: "be" for form in BE_FORMS}
AUX_LEMMAS.update({form: "have" for form in HAVE_FORMS})
AUX_LEMMAS.update({form: "do" for form in DO_FORMS})
AUX_LEMMAS.update({form: form for form in MODALS})

ADVERBS = {
    "very", "quite", "too", "so", "often", "never", "always", "sometimes",
    "rarely", "seldom", "almost", "much", "well", "enough", "somewhat",
    "rather", "together", "alone", "once", "twice", "even", "still", "also",
    "here", "there", "now", "then", "soon", "today", "yesterday", "tomorrow",
    "again", "already", "just", "perhaps", "maybe", "far", "away",
}

ADJECTIVES = {
    "big", "small", "large", "little", "long", "short", "tall", "wide",
    "thick", "thin", "heavy", "light", "fast", "slow", "quick", "old",
    "young", "new", "good", "bad", "great", "high", "low", "hot", "cold",
    "warm", "cool", "wet", "dry", "hard", "soft", "strong", "weak", "smart",
    "clever", "active", "quiet", "loud", "early", "late", "dark", "bright",
    "gray", "grey", "black", "white", "brown", "red", "green", "blue",
    "yellow", "many", "few", "several", "most", "other", "same", "different",
    "common", "rare", "wild", "tame", "dangerous", "safe", "friendly",
    "gentle", "fierce", "social", "solitary", "male", "female", "adult",
    "baby", "nocturnal", "diurnal", "native", "endangered", "extinct",
    "herbivorous", "carnivorous", "omnivorous", "muscular", "powerful",
    "playful", "amazing", "beautiful", "surprising", "intelligent", "huge",
    "tiny", "massive", "giant", "african", "asian", "american", "european",
    "canadian", "eurasian", "iberian", "smooth", "rough", "sharp", "flat",
    "deep", "shallow", "fresh", "main", "local", "popular", "important",
    "famous", "various", "certain", "similar", "special", "nice", "fine",
}

VERBS = {
    "eat", "drink", "hunt", "catch", "chase", "kill", "live", "sleep",
    "roam", "wander", "run", "walk", "swim", "climb", "jump", "fly", "dig",
    "grow", "breed", "mate", "raise", "protect", "defend", "attack", "carry",
    "bring", "take", "give", "get", "make", "build", "use", "need", "want",
    "like", "love", "hate", "prefer", "find", "keep", "hold", "put", "move",
    "turn", "pull", "push", "lift", "suck", "chew", "bite", "drop", "feed",
    "play", "perform", "learn", "teach", "know", "think", "say", "tell",
    "call", "see", "hear", "smell", "touch", "feel", "weigh", "measure",
    "reach", "contain", "include", "consist", "compose", "assemble", "form",
    "cover", "produce", "provide", "become", "remain", "stay", "appear",
    "seem", "help", "avoid", "prevent", "cause", "allow", "spend", "travel",
    "migrate", "communicate", "cooperate", "gather", "collect", "store",
    "represent", "deliver", "roll", "work", "serve", "visit", "enjoy",
    "spray", "bathe", "rest", "stand", "sit", "lie", "die", "survive",
    "depend", "belong", "vary", "range", "go", "come",
}

NOUNS = {
    "animal", "plant", "tree", "grass", "leaf", "fruit", "bark", "root",
    "seed", "flower", "water", "food", "meat", "fish", "insect", "bird",
    "mammal", "predator", "prey", "herd", "group", "family", "pride", "pack",
    "male", "female", "baby", "cub", "calf", "year", "month", "week", "day",
    "night", "morning", "evening", "afternoon", "winter", "summer", "spring",
    "autumn", "season", "time", "place", "area", "region", "habitat",
    "forest", "jungle", "savanna", "savannah", "desert", "mountain", "river",
    "lake", "ocean", "sea", "ground", "land", "world", "home", "nest", "den",
    "zoo", "circus", "farm", "captivity", "wild", "body", "head", "eye",
    "ear", "nose", "mouth", "tooth", "tusk", "trunk", "tail", "leg", "paw",
    "claw", "fur", "skin", "hair", "bone", "muscle", "wing", "feather",
    "horn", "antler", "foot", "hoof", "neck", "back", "heart", "brain",
    "blood", "milk", "egg", "diet", "behavior", "species", "kind", "type",
    "size", "weight", "length", "height", "speed", "sound", "voice", "call",
    "people", "person", "human", "man", "woman", "child", "keeper", "trainer",
    "driver", "teacher", "student", "doctor", "lawyer", "client", "waiter",
    "worker", "job", "school", "class", "city", "town", "country", "road",
    "street", "car", "bus", "train", "boat", "ship", "ball", "trick", "toy",
    "game", "fact", "thing", "way", "part", "piece", "number", "amount",
    "lot", "kilogram", "kilometer", "meter", "pound", "mile", "hour",
    "minute", "elephant", "lion", "tiger", "lynx", "dog", "cat", "wolf",
    "bear", "deer", "rabbit", "hare", "mouse", "rat", "squirrel", "monkey",
    "ape", "horse", "cow", "pig", "hog", "sheep", "goat", "chicken", "duck",
    "goose", "snake", "lizard", "frog", "turtle", "shark", "whale",
    "dolphin", "gazelle", "antelope", "gnu", "zebra", "giraffe", "hyena",
    "leopard", "cheetah", "vole", "ptarmigan", "grouse", "wine", "alcohol",
    "mud", "table", "court", "application", "society", "intelligence",
}

# Irregular noun plurals (plural -> singular).
IRREGULAR_NOUNS = {
    "men": "man", "women": "woman", "children": "child", "people": "people",
    "mice": "mouse", "feet": "foot", "teeth": "tooth", "geese": "goose",
    "oxen": "ox", "wolves": "wolf", "leaves": "leaf", "lives": "life",
    "calves": "calf", "halves": "half", "hooves": "hoof", "species": "species",
    "sheep": "sheep", "deer": "deer", "fish": "fish", "lynx": "lynx",
    "moose": "moose", "bison": "bison", "grouse": "grouse",
}

# Irregular verb forms (form -> lemma); participles double as VBN signals.
IRREGULAR_VERBS = {
    "ate": "eat", "eaten": "eat", "drank": "drink", "drunk": "drink",
    "caught": "catch", "found": "find", "made": "make", "built": "build",
    "brought": "bring", "took": "take", "taken": "take", "gave": "give",
    "given": "give", "got": "get", "gotten": "get", "kept": "keep",
    "held": "hold", "put": "put", "ran": "run", "run": "run", "slept": "sleep",
    "grew": "grow", "grown": "grow", "knew": "know", "known": "know",
    "thought": "think", "said": "say", "told": "tell", "saw": "see",
    "seen": "see", "heard": "hear", "felt": "feel", "went": "go",
    "gone": "go", "came": "come", "flew": "fly", "flown": "fly",
    "swam": "swim", "swum": "swim", "bit": "bite", "bitten": "bite",
    "fed": "feed", "lay": "lie", "lain": "lie", "stood": "stand",
    "sat": "sit", "died": "die", "born": "bear", "bore": "bear",
    "borne": "bear",
}

PARTICIPLES = {form for form, lemma in IRREGULAR_VERBS.items()
               if form.endswith("n") or form in {"made", "built", "brought",
                                                 "caught", "found", "kept",
                                                 "held", "put", "fed", "told",
                                                 "said", "heard", "felt"}}

# (verb lemma, particle) pairs treated as phrasal verbs.
PHRASAL_VERBS = {
    ("suck", "up"), ("pick", "up"), ("give", "up"), ("grow", "up"),
    ("take", "off"), ("take", "up"), ("put", "on"), ("put", "up"),
    ("break", "down"), ("calm", "down"), ("cool", "down"), ("slow", "down"),
    ("find", "out"), ("work", "out"), ("carry", "out"), ("point", "out"),
    ("run", "away"), ("scare", "away"), ("turn", "around"), ("wake", "up"),
}

NUMBER_WORDS = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten", "eleven", "twelve", "twenty", "thirty", "forty", "fifty", "sixty",
    "seventy", "eighty", "ninety", "hundred", "thousand", "million",
    "billion", "dozen",
}
