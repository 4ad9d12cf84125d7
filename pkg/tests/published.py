"""Reference-study values the suite reproduces, transcribed from the
published tables.

Level indices use the engine convention: level 1 is the first label listed
for the factor.  Regression coefficients are recorded as (level label,
signed value) against the level the publication attributes the positive or
negative sign to.
"""

FACTOR_NAMES = (
    "image_size",
    "color_mode",
    "activation",
    "learning_rate",
    "rescaling",
    "shuffle",
    "vertical_flip",
    "horizontal_flip",
)

# 12 runs by 8 factors, transcribed row by row from the published plan.
PUBLISHED_GRID = (
    (1, 1, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 1, 2, 2, 2),
    (1, 1, 2, 2, 2, 1, 1, 1),
    (1, 2, 1, 2, 2, 1, 2, 2),
    (1, 2, 2, 1, 2, 2, 1, 2),
    (1, 2, 2, 2, 1, 2, 2, 1),
    (2, 1, 2, 2, 1, 1, 2, 2),
    (2, 1, 2, 1, 2, 2, 2, 1),
    (2, 1, 1, 2, 2, 2, 1, 2),
    (2, 2, 2, 1, 1, 1, 1, 2),
    (2, 2, 1, 2, 1, 2, 1, 1),
    (2, 2, 1, 1, 2, 1, 2, 1),
)

# Published per-run (response, snr_db) for approaches 1..3.
PUBLISHED_RESPONSE_SNR = {
    1: (
        (0.89375, -0.9757),
        (0.90260, -0.8901),
        (0.86930, -1.2166),
        (0.51385, -5.7833),
        (0.93355, -0.5972),
        (0.22145, -13.0945),
        (0.89340, -0.9791),
        (0.68530, -3.2824),
        (0.29285, -10.6671),
        (0.86920, -1.2176),
        (0.77855, -2.1743),
        (0.50840, -5.8759),
    ),
    2: (
        (0.34625, 9.2122),
        (0.25675, 11.8098),
        (0.43870, 7.1566),
        (0.69680, 3.1378),
        (0.19840, 14.0492),
        (0.70845, 2.9938),
        (0.66015, 3.6071),
        (0.63220, 3.9829),
        (1.10850, -0.8947),
        (0.53965, 5.3578),
        (0.91060, 0.8134),
        (0.69605, 3.1472),
    ),
    3: (
        (1.58702, 4.0116),
        (1.87241, 5.4480),
        (1.34955, 2.6038),
        (0.68018, -3.3475),
        (2.13399, 6.5838),
        (0.46975, -6.5626),
        (0.98371, -0.1427),
        (0.88541, -1.0571),
        (0.09897, -20.0902),
        (1.15593, 1.2587),
        (0.60656, -4.3426),
        (0.67756, -3.3811),
    ),
}

# Published regression equations: intercept plus, per factor, the signed
# coefficient of the named level (the other level carries the negation).
PUBLISHED_REGRESSIONS = {
    1: (
        -3.90,
        {
            "image_size": ("256×256", 0.14),
            "color_mode": ("Gray", 0.89),
            "activation": ("ReLU", 0.50),
            "learning_rate": ("0.001", 1.76),
            "rescaling": ("True", 0.67),
            "shuffle": ("True", 1.22),
            "vertical_flip": ("True", 1.09),
            "horizontal_flip": ("True", -0.54),
        },
    ),
    2: (
        5.364,
        {
            "image_size": ("256×256", 2.695),
            "color_mode": ("Gray", 0.448),
            "activation": ("Tanh", -0.827),
            "learning_rate": ("0.001", 2.562),
            "rescaling": ("True", 0.268),
            "shuffle": ("True", -0.095),
            "vertical_flip": ("True", 0.585),
            "horizontal_flip": ("True", -0.813),
        },
    ),
    3: (
        -1.58,
        {
            "image_size": ("256×256", 3.04),
            "color_mode": ("Gray", 0.05),
            "activation": ("Tanh", -2.03),
            "learning_rate": ("0.001", 3.73),
            "rescaling": ("True", 1.53),
            "shuffle": ("True", 1.75),
            "vertical_flip": ("True", -0.08),
            "horizontal_flip": ("True", 0.13),
        },
    ),
    4: (
        0.38,
        {
            "image_size": ("256×256", 4.33),
            "color_mode": ("Gray", -0.36),
            "activation": ("Tanh", -4.46),
            "learning_rate": ("0.001", 5.06),
            "rescaling": ("True", 3.96),
            "shuffle": ("True", 4.42),
            "vertical_flip": ("True", -0.90),
            "horizontal_flip": ("True", 0.71),
        },
    ),
    5: (
        -3.37,
        {
            "image_size": ("256×256", 6.55),
            "color_mode": ("Gray", -2.72),
            "activation": ("Tanh", -5.14),
            "learning_rate": ("0.001", 6.99),
            "rescaling": ("True", 4.29),
            "shuffle": ("True", 4.63),
            "vertical_flip": ("True", -3.09),
            "horizontal_flip": ("True", 2.88),
        },
    ),
}

# Published ANOVA summary: factor -> (F, p) per approach.
PUBLISHED_ANOVA = {
    1: {
        "image_size": (0.01, 0.940),
        "color_mode": (0.28, 0.632),
        "activation": (0.09, 0.786),
        "learning_rate": (1.09, 0.373),
        "rescaling": (0.16, 0.715),
        "shuffle": (0.53, 0.520),
        "vertical_flip": (0.42, 0.564),
        "horizontal_flip": (0.10, 0.769),
    },
    2: {
        "image_size": (10.14, 0.050),
        "color_mode": (0.28, 0.633),
        "activation": (0.95, 0.401),
        "learning_rate": (9.16, 0.056),
        "rescaling": (0.10, 0.772),
        "shuffle": (0.01, 0.918),
        "vertical_flip": (0.48, 0.539),
        "horizontal_flip": (0.92, 0.407),
    },
    3: {
        "image_size": (2.03, 0.250),
        "color_mode": (0.00, 0.984),
        "activation": (0.91, 0.411),
        "learning_rate": (3.05, 0.179),
        "rescaling": (0.51, 0.525),
        "shuffle": (0.67, 0.472),
        "vertical_flip": (0.00, 0.973),
        "horizontal_flip": (0.00, 0.955),
    },
    4: {
        "image_size": (1.56, 0.300),
        "color_mode": (0.01, 0.923),
        "activation": (1.65, 0.289),
        "learning_rate": (2.13, 0.240),
        "rescaling": (1.30, 0.336),
        "shuffle": (1.62, 0.292),
        "vertical_flip": (0.07, 0.811),
        "horizontal_flip": (0.04, 0.851),
    },
    5: {
        "image_size": (1.89, 0.263),
        "color_mode": (0.33, 0.608),
        "activation": (1.17, 0.359),
        "learning_rate": (2.15, 0.239),
        "rescaling": (0.81, 0.434),
        "shuffle": (0.95, 0.403),
        "vertical_flip": (0.42, 0.562),
        "horizontal_flip": (0.37, 0.588),
    },
}

# Published optimal configurations (level labels per factor) and the
# published predicted SNR / predicted response per approach.
PUBLISHED_OPTIMAL_CONFIG = {
    1: {
        "image_size": "256×256",
        "color_mode": "Gray",
        "activation": "ReLU",
        "learning_rate": "0.001",
        "rescaling": "True",
        "shuffle": "True",
        "vertical_flip": "True",
        "horizontal_flip": "False",
    },
    2: {
        "image_size": "256×256",
        "color_mode": "Gray",
        "activation": "ReLU",
        "learning_rate": "0.001",
        "rescaling": "True",
        "shuffle": "False",
        "vertical_flip": "True",
        "horizontal_flip": "False",
    },
    3: {
        "image_size": "256×256",
        "color_mode": "Gray",
        "activation": "ReLU",
        "learning_rate": "0.001",
        "rescaling": "True",
        "shuffle": "True",
        "vertical_flip": "False",
        "horizontal_flip": "True",
    },
    4: {
        "image_size": "256×256",
        "color_mode": "RGB",
        "activation": "ReLU",
        "learning_rate": "0.001",
        "rescaling": "True",
        "shuffle": "True",
        "vertical_flip": "False",
        "horizontal_flip": "True",
    },
    5: {
        "image_size": "256×256",
        "color_mode": "RGB",
        "activation": "ReLU",
        "learning_rate": "0.001",
        "rescaling": "True",
        "shuffle": "True",
        "vertical_flip": "False",
        "horizontal_flip": "True",
    },
}

PUBLISHED_PREDICTED_SNR = {1: 2.91, 2: 13.66, 3: 10.34, 4: 20.63, 5: 15.43}
PUBLISHED_PREDICTED_RESPONSE = {1: 1.17, 2: 0.17, 3: 2.23, 4: 4.39, 5: 2.78}

# The published prediction rows for approaches 3..5 evaluate the additive
# model at the means-favored configuration rather than at the printed
# (SNR-optimal) configuration; approaches 1..2 evaluate at the printed one.
# See the README reproduction notes.
PREDICTION_EVALUATED_AT = {1: "snr", 2: "snr", 3: "means", 4: "means", 5: "means"}

# Published final training outcome of the recommended configuration;
# fixture constants only (the source videos are not available).
PUBLISHED_VALIDATION_RUN = {"ta": 0.9884, "va": 0.8625, "tl": 0.0442, "vl": 0.5784}
