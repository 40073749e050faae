#include "ropelab/taskgen.hpp"

namespace ropelab {

// Key vocabulary for line-retrieval prompts: lowercase ASCII words only.

const std::vector<std::string_view>& adjective_list() {
  static const std::vector<std::string_view> words = {
    "able", "absent", "absolute", "abstract", "absurd", "abundant", "academic", "acceptable",
    "accurate", "acidic", "active", "actual", "acute", "adaptable", "adequate", "adjacent",
    "adorable", "adventurous", "aerial", "afraid", "aged", "aggressive", "agile", "agreeable",
    "alert", "alive", "allergic", "alluring", "aloof", "amateur", "amazing", "ambitious",
    "ample", "amused", "ancient", "angry", "angular", "animated", "annual", "anxious",
    "apparent", "appropriate", "aquatic", "arctic", "arid", "aromatic", "artistic", "ashamed",
    "assertive", "astonishing", "athletic", "atomic", "attentive", "attractive", "austere",
    "authentic", "automatic", "autumnal", "available", "average", "awake", "aware", "awesome",
    "awful", "awkward", "babyish", "bad", "bald", "balmy", "bare", "barren", "basic", "bashful",
    "beaming", "bearded", "beautiful", "beloved", "beneficial", "best", "better", "bewildered",
    "big", "bitter", "bizarre", "black", "bland", "blank", "bleak", "blind", "blissful",
    "blond", "bloody", "blue", "blunt", "blurry", "boastful", "bold", "bony", "boring", "bossy",
    "bouncy", "brave", "breezy", "brief", "bright", "brilliant", "brisk", "broad", "broken",
    "bronze", "brown", "bubbly", "bulky", "bumpy", "burly", "busy", "buttery", "calm", "candid",
    "capable", "careful", "careless", "caring", "casual", "cautious", "celestial", "central",
    "certain", "charming", "cheap", "cheerful", "chemical", "chief", "chilly", "chubby",
    "circular", "civic", "classic", "clean", "clear", "clever", "close", "cloudy", "clumsy",
    "coarse", "cold", "colorful", "colossal", "comfortable", "common", "compact", "competent",
    "complete", "complex", "concerned", "concrete", "confident", "confused", "conscious",
    "constant", "content", "cool", "cooperative", "coral", "cordial", "correct", "cosmic",
    "costly", "courageous", "courteous", "cozy", "crafty", "crazy", "creamy", "creative",
    "crimson", "crisp", "critical", "crooked", "crowded", "cruel", "crunchy", "cuddly",
    "cultural", "curious", "curly", "current", "curved", "cute", "cynical", "daily", "damp",
    "dangerous", "daring", "dark", "dashing", "dazzling", "dead", "deafening", "dear", "decent",
    "decisive", "deep", "defiant", "definite", "delicate", "delicious", "delighted", "dense",
    "dependable", "deserted", "detailed", "determined", "devoted", "different", "difficult",
    "digital", "diligent", "dim", "direct", "dirty", "discreet", "distant", "distinct", "dizzy",
    "dominant", "double", "doubtful", "drab", "dramatic", "dreary", "dry", "dual", "dull",
    "durable", "dusty", "dutiful", "dynamic", "eager", "early", "earnest", "easy", "eccentric",
    "economic", "edible", "educated", "efficient", "elaborate", "elastic", "elderly",
    "electric", "elegant", "elementary", "eloquent", "emerald", "eminent", "emotional", "empty",
    "enchanted", "endless", "energetic", "enormous", "entire", "envious", "equal", "equatorial",
    "erratic", "essential", "eternal", "ethical", "even", "evident", "exact", "excellent",
    "excited", "exotic", "expert", "external", "extinct", "extra", "extreme", "exuberant",
    "fabulous", "faded", "faint", "fair", "faithful", "false", "familiar", "famous", "fancy",
    "fantastic", "far", "fascinating", "fast", "fatal", "fearless", "feeble", "feisty",
    "festive", "fickle", "fierce", "filthy", "final", "fine", "firm", "first", "fixed", "flaky",
    "flashy", "flat", "flawless", "flexible", "flimsy", "floral", "fluffy", "fluid", "foggy",
    "foolish", "formal", "former", "fortunate", "fragile", "fragrant", "frank", "free",
    "frequent", "fresh", "friendly", "frigid", "frosty", "frozen", "frugal", "fruitful", "full",
    "functional", "funny", "furry", "fussy", "fuzzy", "gallant", "general", "generous",
    "gentle", "genuine", "giant", "gifted", "gigantic", "giddy", "glad", "glamorous",
    "gleaming", "glib", "global", "gloomy", "glorious", "glossy", "golden", "good", "gorgeous",
    "graceful", "gracious", "grand", "granular", "grateful", "grave", "gray", "greasy", "great",
    "greedy", "green", "grim", "grizzled", "grotesque", "grouchy", "growing", "grumpy",
    "guilty", "gullible", "hairy", "handsome", "handy", "happy", "hardy", "harmless",
    "harmonious", "harsh", "hasty", "hazy", "healthy", "hearty", "heavy", "hefty", "helpful",
    "heroic", "hidden", "high", "hilarious", "hoarse", "hollow", "homely", "honest",
    "honorable", "hopeful", "horizontal", "hospitable", "hot", "huge", "humble", "humid",
    "hungry", "hurried", "hushed", "hybrid", "hysterical", "icy", "ideal", "identical", "idle",
    "ignorant", "illegal", "illustrious", "imaginary", "immaculate", "immense", "immune",
    "impartial", "imperfect", "impolite", "important", "impossible", "impressive", "improbable",
    "incredible", "indigo", "industrial", "inexpensive", "infamous", "infinite", "informal",
    "innocent", "innovative", "inquisitive", "insightful", "intact", "intense", "interior",
    "internal", "intimate", "intrepid", "invisible", "irate", "ironic", "itchy", "jagged",
    "jaunty", "jealous", "jolly", "jovial", "joyful", "joyous", "jubilant", "judicious",
    "juicy", "jumbo", "junior", "juvenile", "keen", "kind", "kindly", "kingly", "knobby",
    "knotty", "knowing", "known", "lame", "large", "last", "late", "lavish", "lawful", "lazy",
    "leading", "lean", "learned", "left", "legal", "legendary", "lengthy", "level", "light",
    "likable", "limber", "limited", "limp", "linear", "liquid", "literal", "little", "lively",
    "livid", "loathsome", "local", "lofty", "logical", "lonely", "long", "loose", "lost",
    "loud", "lovely", "loving", "low", "loyal", "lucid", "lucky", "lumpy", "lunar", "luxurious",
    "lyrical", "magenta", "magical", "magnetic", "magnificent", "main", "majestic", "major",
    "male", "mammoth", "marine", "maroon", "marvelous", "massive", "mature", "meager", "mealy",
    "measly", "mechanical", "medical", "medium", "meek", "mellow", "melodic", "memorable",
    "merciful", "mere", "merry", "messy", "metallic", "mighty", "mild", "military", "milky",
    "mindful", "miniature", "minor", "minty", "misty", "mixed", "mobile", "modern", "modest",
    "moist", "molten", "monstrous", "monthly", "moral", "mortal", "motionless", "mountainous",
    "muddy", "muffled", "murky", "mushy", "musical", "mute", "mutual", "mysterious", "naive",
    "narrow", "nasty", "native", "natural", "naughty", "nautical", "near", "neat", "needy",
    "negative", "nervous", "neutral", "new", "next", "nice", "nifty", "nimble", "nippy",
    "noble", "noisy", "nominal", "normal", "northern", "notable", "novel", "numb", "numerous",
    "nutty", "obedient", "obese", "oblong", "obscure", "observant", "obvious", "occasional",
    "odd", "official", "oily", "old", "olive", "ominous", "onerous", "open", "opposite",
    "optimal", "optimistic", "orange", "orderly", "ordinary", "organic", "original", "ornate",
    "outgoing", "outrageous", "oval", "overjoyed", "pale", "paltry", "parallel", "partial",
    "passionate", "past", "patient", "peaceful", "peach", "peculiar", "perfect", "periodic",
    "perky", "personal", "pertinent", "petite", "physical", "pink", "placid", "plain",
    "pleasant", "plucky", "plump", "plush", "pointed", "polar", "polished", "polite", "poor",
    "popular", "portable", "positive", "possible", "potent", "powerful", "practical",
    "precious", "precise", "pretty", "prickly", "primary", "prime", "pristine", "private",
    "probable", "productive", "profound", "prompt", "proper", "proud", "prudent", "public",
    "puffy", "pungent", "puny", "pure", "purple", "puzzled", "quaint", "qualified", "quick",
    "quiet", "quirky", "quixotic", "radiant", "radical", "ragged", "rainy", "random", "rapid",
    "rare", "rash", "raw", "ready", "real", "realistic", "reasonable", "recent", "reckless",
    "red", "refined", "regal", "regular", "reliable", "remote", "renewed", "repulsive",
    "resilient", "responsible", "rich", "right", "rigid", "ripe", "rising", "robust", "rocky",
    "romantic", "rosy", "rotten", "rough", "round", "royal", "rubbery", "ruddy", "rude",
    "rural", "rustic", "sad", "safe", "salty", "same", "sandy", "sane", "sarcastic", "savage",
    "scaly", "scarce", "scared", "scarlet", "scented", "secret", "secure", "serene", "serious",
    "severe", "shabby", "shaggy", "shallow", "sharp", "shiny", "short", "shrill", "shy",
    "silent", "silky", "silly", "silver", "simple", "sincere", "single", "skinny", "sleepy",
    "slender", "slick", "slim", "slippery", "slow", "small", "smart", "smooth", "snappy",
    "snug", "soft", "solar", "solid", "somber", "sonic", "sour", "southern", "spacious",
    "sparkling", "special", "speedy", "spicy", "spiky", "splendid", "spotless", "spotted",
    "spry", "square", "squeaky", "stable", "stale", "stark", "steady", "steep", "sticky",
    "stiff", "still", "stormy", "straight", "strange", "strict", "striking", "strong",
    "stubborn", "sturdy", "subtle", "sudden", "sugary", "sunny", "super", "superb", "supreme",
    "sure", "swift", "sympathetic", "tactful", "talented", "tall", "tame", "tangible", "tart",
    "tasty", "tattered", "taut", "tedious", "teeming", "temporary", "tender", "tense",
    "terrific", "testy", "thankful", "thick", "thin", "thirsty", "thorny", "thorough",
    "thoughtful", "thrifty", "tidy", "tight", "timely", "timid", "tiny", "tired", "tough",
    "tranquil", "tricky", "trim", "tropical", "true", "trusty", "turbulent", "twin", "typical",
    "ugly", "ultimate", "unaware", "uncommon", "uneven", "unfit", "uniform", "unique", "united",
    "universal", "unkempt", "unknown", "unlucky", "untidy", "unusual", "upbeat", "upper",
    "upright", "urban", "urgent", "useful", "useless", "usual", "utter", "vacant", "vague",
    "vain", "valiant", "valid", "valuable", "vapid", "vast", "velvet", "vengeful", "verbal",
    "vertical", "vibrant", "vicious", "victorious", "vigilant", "vigorous", "violet", "virtual",
    "visible", "vital", "vivid", "vocal", "volatile", "vulgar", "wacky", "warm", "wary",
    "watery", "wavy", "weak", "wealthy", "weary", "weekly", "weird", "welcome", "western",
    "wet", "whimsical", "white", "whole", "wicked", "wide", "wiggly", "wild", "willing",
    "windy", "winged", "wintry", "wise", "witty", "wobbly", "wooden", "woolly", "worldly",
    "worried", "worthy", "wrong", "yearly", "yellow", "young", "youthful", "yummy", "zany",
    "zealous", "zesty", "zigzag",
  };
  return words;
}

const std::vector<std::string_view>& noun_list() {
  static const std::vector<std::string_view> words = {
    "abbey", "accent", "acorn", "actor", "adapter", "admiral", "adventure", "agenda", "airport",
    "aisle", "album", "alcove", "algebra", "alley", "alligator", "almanac", "alpaca", "altar",
    "amber", "anchor", "angle", "ankle", "antelope", "anthem", "antler", "anvil", "apple",
    "apricot", "apron", "aquarium", "arbor", "arcade", "arch", "archer", "archive", "arena",
    "armada", "armor", "arrow", "artist", "ash", "atlas", "atom", "attic", "auction", "aurora",
    "author", "avalanche", "avenue", "avocado", "award", "axle", "badge", "badger", "bagel",
    "bakery", "balcony", "ballad", "balloon", "bamboo", "banana", "bandit", "banjo", "banner",
    "banquet", "barn", "barrel", "basket", "bassoon", "bat", "battery", "bazaar", "beach",
    "beacon", "beagle", "beaker", "bean", "bear", "beaver", "bee", "beetle", "bell", "bench",
    "berry", "bicycle", "billboard", "biscuit", "bishop", "bison", "blanket", "blender",
    "blizzard", "blossom", "boat", "bobcat", "bonfire", "bonnet", "bookcase", "boot", "border",
    "bottle", "boulder", "boulevard", "bouquet", "boutique", "bowl", "bracelet", "branch",
    "breeze", "brick", "bridge", "broom", "brook", "bucket", "buffalo", "bugle", "bull",
    "bungalow", "bunker", "burrow", "bush", "butler", "butterfly", "button", "buzzard", "cabin",
    "cabinet", "cactus", "cafe", "cake", "calendar", "camel", "camera", "canal", "candle",
    "cannon", "canoe", "canopy", "canyon", "captain", "caravan", "cardinal", "cargo",
    "carnival", "carpet", "carrot", "cartoon", "cascade", "castle", "catalog", "caterpillar",
    "cathedral", "cattle", "cavern", "cedar", "cellar", "cello", "chalk", "chamber", "channel",
    "chapel", "chariot", "chef", "cherry", "chess", "chestnut", "chimney", "chipmunk", "chorus",
    "cider", "cinema", "circus", "citadel", "clarinet", "classmate", "claw", "clock", "closet",
    "cloud", "clover", "coach", "coast", "cobra", "coconut", "coffee", "comet", "compass",
    "concert", "condor", "cookie", "copper", "coral", "cottage", "cougar", "courtyard",
    "coyote", "crab", "cradle", "crane", "crater", "crayon", "creek", "cricket", "crocodile",
    "crown", "crystal", "cupboard", "curtain", "cushion", "cymbal", "cypress", "dagger",
    "daisy", "dancer", "deck", "deer", "delta", "denim", "desert", "desk", "dessert", "diamond",
    "diary", "dinosaur", "diploma", "dolphin", "domino", "donkey", "doorway", "dove", "dragon",
    "dragonfly", "drawer", "dream", "drum", "duck", "dune", "dungeon", "eagle", "easel",
    "eclipse", "eel", "elbow", "elephant", "elevator", "elk", "ember", "emerald", "emperor",
    "engine", "envelope", "estate", "falcon", "fable", "factory", "fairy", "fanfare", "farm",
    "feather", "fence", "fern", "ferry", "festival", "fiddle", "field", "fig", "finch", "fjord",
    "flag", "flamingo", "flask", "fleet", "flute", "fog", "folder", "forest", "forge", "fork",
    "fortress", "fossil", "fountain", "fox", "fragment", "frame", "freckle", "frigate", "frog",
    "frost", "fudge", "furnace", "gadget", "galaxy", "gallery", "galleon", "game", "garage",
    "garden", "garlic", "gate", "gazebo", "gazelle", "gecko", "gem", "geyser", "ghost",
    "giraffe", "glacier", "glade", "glove", "gnome", "goat", "goblet", "goblin", "gondola",
    "goose", "gorilla", "gourd", "governor", "granite", "grape", "grass", "grasshopper",
    "gravel", "griffin", "grove", "guitar", "gull", "gumdrop", "guppy", "habitat", "hall",
    "hammer", "hammock", "hamster", "harbor", "harp", "harvest", "hat", "hawk", "hazel",
    "headland", "hedge", "hedgehog", "helmet", "herald", "heron", "hickory", "hill", "hinge",
    "hippo", "hive", "hollow", "honey", "hood", "hook", "horizon", "hornet", "horse", "hotel",
    "hound", "hut", "hyacinth", "iceberg", "icicle", "igloo", "iguana", "inkwell", "inlet",
    "insect", "inversion", "island", "ivory", "ivy", "jackal", "jacket", "jaguar", "jam", "jar",
    "jasmine", "javelin", "jeep", "jelly", "jester", "jetty", "jewel", "journal", "journey",
    "jug", "juggler", "jungle", "juniper", "kangaroo", "kayak", "kernel", "kettle", "key",
    "keyboard", "kingdom", "kiosk", "kite", "kitten", "kiwi", "knight", "knot", "koala",
    "label", "labyrinth", "ladder", "ladle", "lagoon", "lake", "lamb", "lamp", "lantern",
    "lark", "lasso", "lattice", "laurel", "lava", "lawn", "leaf", "ledge", "legend", "lemon",
    "lemur", "lens", "leopard", "letter", "lettuce", "library", "lighthouse", "lily", "lime",
    "limestone", "linen", "lion", "lizard", "llama", "lobster", "locket", "locomotive", "lodge",
    "loft", "lotus", "lounge", "lute", "lynx", "machine", "magnet", "magnolia", "mailbox",
    "mallet", "mammoth", "mandolin", "mango", "mansion", "mantle", "maple", "marble", "mare",
    "marigold", "market", "marsh", "mask", "mast", "meadow", "medal", "melody", "melon",
    "mermaid", "meteor", "microscope", "mill", "minnow", "mint", "mirror", "mitten", "moat",
    "mole", "monarch", "monk", "monkey", "moose", "mosaic", "moss", "moth", "motor", "mountain",
    "mouse", "muffin", "mule", "mural", "museum", "mushroom", "musket", "mustang", "napkin",
    "narwhal", "nebula", "necklace", "needle", "nest", "nettle", "newt", "nickel",
    "nightingale", "noodle", "notebook", "nugget", "nutmeg", "oak", "oar", "oasis", "oboe",
    "ocean", "octopus", "olive", "onion", "opal", "opera", "orange", "orbit", "orchard",
    "orchestra", "orchid", "organ", "osprey", "ostrich", "otter", "outpost", "owl", "oyster",
    "paddle", "pagoda", "palace", "palette", "palm", "pancake", "panda", "panther", "parachute",
    "parade", "parrot", "pasture", "path", "pavilion", "peacock", "peak", "pear", "pebble",
    "pelican", "pencil", "penguin", "pepper", "pharaoh", "pheasant", "piano", "pickle", "pier",
    "pigeon", "pillar", "pillow", "pine", "pineapple", "pioneer", "pirate", "pistachio",
    "planet", "plank", "plateau", "plaza", "plum", "poet", "pond", "pony", "poplar", "porch",
    "porcupine", "portrait", "potato", "pottery", "prairie", "prism", "prophet", "puffin",
    "pumpkin", "puppet", "puzzle", "pyramid", "python", "quail", "quarry", "quartz", "quay",
    "queen", "quill", "quilt", "quiver", "rabbit", "raccoon", "radar", "radish", "raft",
    "rainbow", "raisin", "ranch", "raven", "ravine", "reef", "reindeer", "relic", "reptile",
    "ribbon", "ridge", "river", "robin", "robot", "rocket", "rooster", "root", "rose", "ruby",
    "rudder", "rug", "ruin", "saddle", "saffron", "sailor", "salamander", "salmon", "sandal",
    "sapphire", "satchel", "satellite", "saucer", "savanna", "saxophone", "scarecrow", "scarf",
    "scepter", "scholar", "schooner", "scooter", "scorpion", "scroll", "sculpture", "seagull",
    "seal", "sentinel", "sequoia", "shadow", "shark", "shed", "shell", "shelter", "sheriff",
    "shield", "shore", "shovel", "shrine", "shrub", "sketch", "skillet", "skyline", "sled",
    "sloth", "snail", "snowflake", "soldier", "sonnet", "sparrow", "sphinx", "spider",
    "spinach", "spoon", "spruce", "squirrel", "stable", "stadium", "stag", "stallion",
    "starfish", "statue", "steeple", "stork", "stove", "strawberry", "stream", "submarine",
    "summit", "sunflower", "swallow", "swamp", "swan", "sweater", "sycamore", "symphony",
    "table", "tablet", "tadpole", "tambourine", "tangerine", "tapestry", "tavern", "teapot",
    "telescope", "temple", "tent", "terrace", "thicket", "thimble", "thistle", "throne",
    "thunder", "tiger", "timber", "toad", "toast", "tomato", "tortoise", "totem", "toucan",
    "tower", "tractor", "trail", "train", "trellis", "trinket", "trombone", "trophy", "trout",
    "trumpet", "tulip", "tundra", "tunnel", "turbine", "turkey", "turnip", "turtle", "twig",
    "umbrella", "unicorn", "urchin", "utensil", "valley", "vase", "vault", "velvet", "veranda",
    "vessel", "village", "vine", "vinegar", "violin", "viper", "volcano", "vulture", "wagon",
    "walnut", "walrus", "wand", "warbler", "wardrobe", "warrior", "wasp", "waterfall", "weasel",
    "whale", "wheat", "wheel", "whistle", "widget", "willow", "windmill", "wizard", "wolf",
    "wombat", "woodpecker", "workshop", "wreath", "wren", "yacht", "yak", "yard", "yarn",
    "yodel", "yogurt", "zebra", "zeppelin", "zenith", "zinnia", "zipper", "zither", "zone",
  };
  return words;
}

std::size_t line_key_capacity() { return adjective_list().size() * noun_list().size(); }

}  // namespace ropelab
