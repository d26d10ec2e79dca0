#include "divbench/perturbation.hpp"

namespace divbench {
namespace {

// Verbs are regular: each takes a plain "s" in the third person singular.
const std::vector<std::string>& adjective_list() {
  static const std::vector<std::string> words{
    "sore", "dangerous", "ancient", "angry", "bashful", "bitter", "blissful", "bold",
    "brave", "breezy", "bright", "brisk", "bumpy", "busy", "calm", "careful", "cheap",
    "cheerful", "chilly", "clever", "cloudy", "clumsy", "cold", "colossal", "crisp",
    "crooked", "cruel", "curious", "damp", "dark", "dazzling", "deep", "delicate",
    "dense", "dizzy", "drab", "dry", "dull", "dusty", "eager", "early", "earnest",
    "elegant", "empty", "endless", "faint", "faithful", "famous", "fancy", "fierce",
    "filthy", "flat", "fluffy", "foggy", "fragile", "frail", "frantic", "fresh",
    "friendly", "frosty", "fuzzy", "gentle", "giant", "gigantic", "glad", "gloomy",
    "glossy", "golden", "graceful", "grand", "greasy", "greedy", "grim", "grumpy",
    "hairy", "handsome", "happy", "hard", "harsh", "hasty", "heavy", "helpless", "hollow",
    "honest", "huge", "humble", "hungry", "icy", "idle", "immense", "jagged", "jolly",
    "juicy", "keen", "kind", "lazy", "lean", "light", "little", "lively", "lonely",
    "loose", "loud", "lucky", "lumpy", "mad", "magnificent", "massive", "meek", "mellow",
    "messy", "mighty", "mild", "misty", "modern", "moist", "muddy", "murky", "mushy",
    "narrow", "nasty", "naughty", "neat", "nervous", "noisy", "nutty", "obedient", "odd",
    "old", "orange", "pale", "plain", "plump", "polite", "poor", "proud", "puny",
    "purple", "quaint", "quick", "quiet", "rapid", "rare", "raspy", "red", "rich",
    "rigid", "ripe", "rough", "round", "royal", "rude", "rusty", "sad", "salty", "scary",
    "shaggy", "shallow", "sharp", "shiny", "short", "shy", "silent", "silky", "silly",
    "simple", "sleepy", "slim", "slimy", "slow", "small", "smoggy", "smooth", "soft",
    "solid", "sour", "sparkling", "spicy", "splendid", "spotless", "square", "stale",
    "steady", "steep", "sticky", "stormy", "strange", "strict", "sturdy", "subtle",
    "sudden", "sunny", "superb", "swift", "tall", "tame", "tart", "tender", "tense",
    "thick", "thin", "thirsty", "tidy", "tiny", "tough", "tranquil", "tricky", "ugly",
    "uneven", "upset", "vacant", "vast", "velvety", "vivid", "wacky", "warm", "weak",
    "weary", "wet", "whispering", "wicked", "wide", "wild", "windy", "wise", "witty",
    "wobbly", "wooden", "worried", "yellow", "young", "zany", "zealous",
  };
  return words;
}

const std::vector<std::string>& noun_list() {
  static const std::vector<std::string> words{
    "enigma", "eyestrain", "complication", "airport", "anchor", "ankle", "apple", "apron",
    "arch", "arrow", "attic", "badge", "bakery", "balloon", "banjo", "barn", "basket",
    "beacon", "beard", "beetle", "bell", "bench", "bicycle", "blanket", "blizzard",
    "boat", "bonnet", "boulder", "bracelet", "branch", "breeze", "brick", "bridge",
    "bucket", "button", "cabin", "cactus", "camera", "canal", "candle", "canyon",
    "carpet", "castle", "cellar", "chair", "chimney", "cliff", "clock", "cloud", "coin",
    "comet", "compass", "cottage", "crayon", "crown", "cupboard", "curtain", "cushion",
    "dagger", "desert", "diamond", "dragon", "drawer", "drum", "eagle", "engine",
    "envelope", "falcon", "feather", "fence", "fiddle", "flag", "flute", "forest",
    "fountain", "garden", "garlic", "giraffe", "glacier", "glove", "goblet", "guitar",
    "hammer", "harbor", "harp", "helmet", "hill", "hinge", "honey", "horizon", "island",
    "jacket", "jungle", "kettle", "kingdom", "kite", "ladder", "lagoon", "lantern",
    "lemon", "library", "lighthouse", "lizard", "locket", "magnet", "mango", "map",
    "marble", "meadow", "mirror", "monastery", "mountain", "mushroom", "necklace",
    "needle", "nest", "notebook", "oasis", "ocean", "orchard", "oven", "owl", "paddle",
    "palace", "parcel", "parrot", "pebble", "pencil", "pepper", "piano", "pillow",
    "pirate", "planet", "pocket", "pond", "potato", "puddle", "pumpkin", "puzzle",
    "quarry", "quilt", "rabbit", "radish", "raft", "rainbow", "ribbon", "river", "robot",
    "rocket", "saddle", "sailor", "sandal", "scarf", "scroll", "shadow", "shell",
    "shovel", "skeleton", "sled", "slipper", "snail", "spider", "spoon", "squirrel",
    "stable", "statue", "stone", "storm", "suitcase", "sunset", "swamp", "sweater",
    "table", "teapot", "telescope", "temple", "thimble", "thunder", "ticket", "tiger",
    "tower", "tractor", "trumpet", "tunnel", "turtle", "umbrella", "valley", "vase",
    "village", "violin", "volcano", "wagon", "walrus", "waterfall", "whale", "whistle",
    "window", "wizard", "wreath", "yacht", "zebra", "confusion", "fragment", "opinion",
    "pudding", "riddle", "rumor", "sermon", "meteor", "tapestry", "ember",
  };
  return words;
}

const std::vector<std::string>& verb_list() {
  static const std::vector<std::string> words{
    "pause", "curl", "clone", "giggle", "accept", "admire", "allow", "annoy", "appear",
    "arrive", "attack", "attend", "bake", "balance", "bang", "bathe", "beg", "behave",
    "belong", "bleed", "blink", "boil", "bolt", "bomb", "book", "bore", "bounce", "bow",
    "bump", "burn", "calculate", "call", "camp", "care", "carve", "challenge", "charge",
    "cheat", "chew", "chop", "clap", "clean", "clear", "climb", "collect", "command",
    "complain", "concern", "connect", "consider", "cook", "correct", "cough", "count",
    "cover", "crawl", "cycle", "dance", "decide", "deliver", "describe", "design",
    "destroy", "develop", "doubt", "drag", "drain", "dream", "drop", "dump", "earn",
    "educate", "embrace", "employ", "enjoy", "enter", "escape", "explain", "explode",
    "fade", "fail", "fasten", "fear", "file", "fill", "film", "float", "flood", "flow",
    "fold", "follow", "form", "frame", "frighten", "gather", "gaze", "glow", "grab",
    "greet", "grin", "grip", "groan", "guard", "guide", "hand", "hang", "happen", "harm",
    "hate", "haunt", "heat", "help", "hop", "hover", "hum", "hunt", "ignore", "imagine",
    "improve", "include", "inform", "inject", "insult", "intend", "invent", "invite",
    "jog", "join", "joke", "juggle", "jump", "kick", "kneel", "knit", "knock", "label",
    "land", "laugh", "lick", "lift", "light", "listen", "load", "lock", "long", "look",
    "love", "manage", "mark", "melt", "mend", "milk", "mine", "moan", "mold", "murmur",
    "nail", "name", "nest", "nod", "note", "notice", "obey", "object", "observe", "offer",
    "open", "order", "own", "paddle", "paint", "park", "peel", "perform", "pick", "plant",
    "play", "plug", "point", "pour", "pray", "prefer", "pretend", "print", "protect",
    "pull", "pump", "question", "race", "rain", "raise", "reflect", "regret", "reject",
    "remain", "remember", "remind", "repeat", "request", "rescue", "return", "reward",
    "roll", "rule", "sail", "scare", "scold", "scream", "shiver", "shock", "sign",
    "signal", "skip", "slip", "smell", "smile", "snow", "spark", "spell", "spill",
    "spoil", "spray", "sprout", "squeak", "stamp", "start", "steer", "step", "store",
    "stroke", "suggest", "surround", "swirl", "talk", "tame", "tempt", "test", "thank",
    "thaw", "tick", "tickle", "tip", "tour", "trace", "trade", "train", "travel", "treat",
    "tremble", "trot", "trust", "tumble", "turn", "twist", "unlock", "unpack", "visit",
    "wait", "walk", "wander", "want", "warn", "weep", "whip", "whisper", "wink", "wobble",
    "wonder", "work", "wrap", "yawn", "yell", "zoom",
  };
  return words;
}

}  // namespace

const WordLists& default_word_lists() {
  static const WordLists lists{adjective_list(), noun_list(), verb_list()};
  return lists;
}

}  // namespace divbench
