//! Published statistic quadruples keyed in from the per-model full-results
//! tables and the budget-reduction ablation table: contributed std,
//! mitigated std, golden-model std and the reported 2-decimal importance.
//! Golden stds use the 3-decimal values where the strategy-comparison
//! table provides them, the 2-decimal table values otherwise.

/// (source, case, factor, c_std, m_std, gm_std, published importance)
pub const PUBLISHED_IMPORTANCE_FIXTURES: &[(&str, &str, &str, f64, f64, f64, f64)] = &[
    (
        "flan-t5",
        "sst2",
        "label_selection",
        2.167,
        0.904,
        2.244,
        0.56,
    ),
    ("flan-t5", "sst2", "data_split", 2.128, 0.693, 2.244, 0.64),
    ("flan-t5", "sst2", "data_order", 0.869, 1.928, 2.244, -0.47),
    (
        "flan-t5",
        "sst2",
        "sample_choice",
        2.123,
        0.844,
        2.244,
        0.57,
    ),
    (
        "flan-t5",
        "cola",
        "label_selection",
        3.257,
        1.61,
        3.811,
        0.43,
    ),
    ("flan-t5", "cola", "data_split", 3.483, 1.344, 3.811, 0.56),
    ("flan-t5", "cola", "data_order", 1.793, 3.044, 3.811, -0.33),
    (
        "flan-t5",
        "cola",
        "sample_choice",
        3.138,
        1.711,
        3.811,
        0.37,
    ),
    (
        "flan-t5",
        "mrpc",
        "label_selection",
        0.363,
        1.21,
        1.328,
        -0.64,
    ),
    ("flan-t5", "mrpc", "data_split", 0.926, 0.119, 1.328, 0.61),
    ("flan-t5", "mrpc", "data_order", 0.209, 1.254, 1.328, -0.79),
    (
        "flan-t5",
        "mrpc",
        "sample_choice",
        0.348,
        1.222,
        1.328,
        -0.66,
    ),
    (
        "flan-t5",
        "ag_news",
        "label_selection",
        0.556,
        0.711,
        3.09,
        -0.05,
    ),
    ("flan-t5", "ag_news", "data_split", 3.777, 1.717, 3.09, 0.67),
    (
        "flan-t5",
        "ag_news",
        "data_order",
        0.686,
        1.115,
        3.09,
        -0.14,
    ),
    (
        "flan-t5",
        "ag_news",
        "sample_choice",
        0.806,
        0.786,
        3.09,
        0.01,
    ),
    (
        "flan-t5",
        "trec",
        "label_selection",
        0.683,
        1.147,
        1.324,
        -0.35,
    ),
    ("flan-t5", "trec", "data_split", 0.892, 0.943, 1.324, -0.04),
    ("flan-t5", "trec", "data_order", 0.815, 0.771, 1.324, 0.03),
    (
        "flan-t5",
        "trec",
        "sample_choice",
        0.819,
        1.235,
        1.324,
        -0.31,
    ),
    (
        "flan-t5",
        "snips",
        "label_selection",
        1.581,
        2.476,
        2.284,
        -0.39,
    ),
    ("flan-t5", "snips", "data_split", 1.602, 2.244, 2.284, -0.28),
    ("flan-t5", "snips", "data_order", 1.769, 1.197, 2.284, 0.25),
    (
        "flan-t5",
        "snips",
        "sample_choice",
        1.59,
        2.897,
        2.284,
        -0.57,
    ),
    (
        "zephyr",
        "sst2",
        "label_selection",
        0.863,
        0.548,
        1.043,
        0.3,
    ),
    ("zephyr", "sst2", "data_split", 0.664, 0.38, 1.043, 0.27),
    ("zephyr", "sst2", "data_order", 0.456, 0.918, 1.043, -0.44),
    ("zephyr", "sst2", "sample_choice", 0.744, 0.338, 1.043, 0.39),
    (
        "zephyr",
        "cola",
        "label_selection",
        5.806,
        2.529,
        9.566,
        0.34,
    ),
    ("zephyr", "cola", "data_split", 7.675, 4.619, 9.566, 0.32),
    ("zephyr", "cola", "data_order", 3.598, 5.379, 9.566, -0.19),
    ("zephyr", "cola", "sample_choice", 9.135, 3.333, 9.566, 0.61),
    (
        "zephyr",
        "mrpc",
        "label_selection",
        5.109,
        11.008,
        12.785,
        -0.46,
    ),
    ("zephyr", "mrpc", "data_split", 5.973, 10.563, 12.785, -0.36),
    ("zephyr", "mrpc", "data_order", 8.038, 6.069, 12.785, 0.15),
    (
        "zephyr",
        "mrpc",
        "sample_choice",
        6.305,
        11.849,
        12.785,
        -0.43,
    ),
    (
        "zephyr",
        "ag_news",
        "label_selection",
        1.46,
        1.004,
        2.066,
        0.22,
    ),
    ("zephyr", "ag_news", "data_split", 1.817, 0.807, 2.066, 0.49),
    ("zephyr", "ag_news", "data_order", 0.919, 1.744, 2.066, -0.4),
    (
        "zephyr",
        "ag_news",
        "sample_choice",
        1.874,
        1.144,
        2.066,
        0.35,
    ),
    (
        "zephyr",
        "trec",
        "label_selection",
        2.963,
        1.494,
        3.884,
        0.38,
    ),
    ("zephyr", "trec", "data_split", 3.221, 1.345, 3.884, 0.48),
    ("zephyr", "trec", "data_order", 1.925, 3.55, 3.884, -0.42),
    ("zephyr", "trec", "sample_choice", 3.279, 1.769, 3.884, 0.39),
    (
        "zephyr",
        "snips",
        "label_selection",
        2.935,
        0.977,
        4.132,
        0.47,
    ),
    ("zephyr", "snips", "data_split", 3.052, 2.242, 4.132, 0.2),
    ("zephyr", "snips", "data_order", 3.007, 1.791, 4.132, 0.29),
    (
        "zephyr",
        "snips",
        "sample_choice",
        3.331,
        2.164,
        4.132,
        0.28,
    ),
    (
        "zephyr",
        "db_pedia",
        "label_selection",
        0.761,
        0.298,
        0.83,
        0.56,
    ),
    ("zephyr", "db_pedia", "data_split", 0.823, 0.466, 0.83, 0.43),
    ("zephyr", "db_pedia", "data_order", 0.592, 0.584, 0.83, 0.01),
    (
        "zephyr",
        "db_pedia",
        "sample_choice",
        0.576,
        0.433,
        0.83,
        0.17,
    ),
    ("llama2", "sst2", "label_selection", 2.191, 1.036, 2.87, 0.4),
    ("llama2", "sst2", "data_split", 2.374, 1.376, 2.87, 0.35),
    ("llama2", "sst2", "data_order", 1.177, 2.694, 2.87, -0.53),
    ("llama2", "cola", "label_selection", 3.47, 1.977, 4.12, 0.36),
    ("llama2", "cola", "data_split", 2.853, 2.288, 4.12, 0.14),
    ("llama2", "cola", "data_order", 2.919, 2.845, 4.12, 0.02),
    ("llama2", "cola", "sample_choice", 3.63, 1.911, 4.12, 0.42),
    (
        "llama2",
        "mrpc",
        "label_selection",
        2.856,
        3.065,
        4.7,
        -0.04,
    ),
    ("llama2", "mrpc", "data_split", 3.924, 3.053, 4.7, 0.19),
    ("llama2", "mrpc", "data_order", 2.91, 2.383, 4.7, 0.11),
    ("llama2", "mrpc", "sample_choice", 3.661, 3.293, 4.7, 0.08),
    (
        "llama2",
        "ag_news",
        "label_selection",
        4.077,
        2.42,
        5.51,
        0.3,
    ),
    ("llama2", "ag_news", "data_split", 4.312, 3.73, 5.51, 0.11),
    ("llama2", "ag_news", "data_order", 4.471, 4.247, 5.51, 0.04),
    (
        "llama2",
        "ag_news",
        "sample_choice",
        5.099,
        2.708,
        5.51,
        0.43,
    ),
    ("llama2", "trec", "label_selection", 3.559, 2.602, 4.1, 0.23),
    ("llama2", "trec", "data_split", 2.601, 2.612, 4.1, -0.0),
    ("llama2", "trec", "data_order", 2.84, 2.242, 4.1, 0.15),
    ("llama2", "trec", "sample_choice", 2.783, 2.775, 4.1, 0.0),
    (
        "llama2",
        "snips",
        "label_selection",
        3.118,
        4.076,
        5.82,
        -0.16,
    ),
    ("llama2", "snips", "data_split", 3.707, 2.244, 5.82, 0.25),
    ("llama2", "snips", "data_order", 3.6, 2.123, 5.82, 0.25),
    ("llama2", "snips", "sample_choice", 3.391, 2.453, 5.82, 0.16),
    (
        "llama2",
        "db_pedia",
        "label_selection",
        2.729,
        3.248,
        4.56,
        -0.11,
    ),
    (
        "llama2",
        "db_pedia",
        "data_split",
        2.439,
        3.662,
        4.56,
        -0.27,
    ),
    ("llama2", "db_pedia", "data_order", 3.72, 1.833, 4.56, 0.41),
    (
        "llama2",
        "db_pedia",
        "sample_choice",
        2.329,
        3.261,
        4.56,
        -0.2,
    ),
    (
        "mistral",
        "sst2",
        "label_selection",
        10.793,
        6.662,
        13.38,
        0.31,
    ),
    ("mistral", "sst2", "data_split", 10.935, 6.302, 13.38, 0.35),
    ("mistral", "sst2", "data_order", 8.629, 10.732, 13.38, -0.16),
    (
        "mistral",
        "sst2",
        "sample_choice",
        12.084,
        3.553,
        13.38,
        0.64,
    ),
    (
        "mistral",
        "cola",
        "label_selection",
        7.913,
        8.511,
        12.73,
        -0.05,
    ),
    ("mistral", "cola", "data_split", 10.947, 4.28, 12.73, 0.52),
    ("mistral", "cola", "data_order", 3.018, 11.459, 12.73, -0.66),
    (
        "mistral",
        "cola",
        "sample_choice",
        8.865,
        6.853,
        12.73,
        0.16,
    ),
    (
        "mistral",
        "mrpc",
        "label_selection",
        1.88,
        2.986,
        3.22,
        -0.34,
    ),
    ("mistral", "mrpc", "data_split", 2.057, 2.767, 3.22, -0.22),
    ("mistral", "mrpc", "data_order", 2.294, 2.586, 3.22, -0.09),
    ("mistral", "mrpc", "sample_choice", 2.521, 2.14, 3.22, 0.12),
    (
        "mistral",
        "ag_news",
        "label_selection",
        4.969,
        3.157,
        6.87,
        0.26,
    ),
    ("mistral", "ag_news", "data_split", 6.018, 3.871, 6.87, 0.31),
    ("mistral", "ag_news", "data_order", 3.943, 3.496, 6.87, 0.07),
    (
        "mistral",
        "ag_news",
        "sample_choice",
        6.066,
        3.322,
        6.87,
        0.4,
    ),
    (
        "mistral",
        "trec",
        "label_selection",
        4.36,
        3.626,
        6.37,
        0.12,
    ),
    ("mistral", "trec", "data_split", 4.472, 3.847, 6.37, 0.1),
    ("mistral", "trec", "data_order", 5.626, 4.846, 6.37, 0.12),
    ("mistral", "trec", "sample_choice", 4.306, 4.051, 6.37, 0.04),
    (
        "mistral",
        "snips",
        "label_selection",
        5.412,
        7.053,
        7.91,
        -0.21,
    ),
    ("mistral", "snips", "data_split", 6.391, 4.597, 7.91, 0.23),
    ("mistral", "snips", "data_order", 5.61, 4.119, 7.91, 0.19),
    ("mistral", "snips", "sample_choice", 5.722, 4.956, 7.91, 0.1),
    (
        "mistral",
        "db_pedia",
        "label_selection",
        1.545,
        0.877,
        2.12,
        0.32,
    ),
    (
        "mistral",
        "db_pedia",
        "data_split",
        1.161,
        0.677,
        2.12,
        0.23,
    ),
    (
        "mistral",
        "db_pedia",
        "data_order",
        1.877,
        1.486,
        2.12,
        0.18,
    ),
    (
        "mistral",
        "db_pedia",
        "sample_choice",
        1.892,
        0.697,
        2.12,
        0.56,
    ),
    ("bert", "sst2", "label_selection", 0.927, 0.453, 0.97, 0.49),
    ("bert", "sst2", "data_split", 0.937, 0.361, 0.97, 0.59),
    ("bert", "sst2", "model_init", 0.828, 0.512, 0.97, 0.33),
    ("bert", "sst2", "data_order", 0.852, 0.417, 0.97, 0.45),
    ("bert", "cola", "label_selection", 1.212, 0.865, 1.473, 0.24),
    ("bert", "cola", "data_split", 1.25, 0.528, 1.473, 0.49),
    ("bert", "cola", "model_init", 1.059, 1.0, 1.473, 0.04),
    ("bert", "cola", "data_order", 1.086, 1.151, 1.473, -0.04),
    ("bert", "mrpc", "label_selection", 2.168, 1.517, 2.929, 0.22),
    ("bert", "mrpc", "model_init", 2.18, 1.6, 2.929, 0.2),
    ("bert", "mrpc", "data_order", 2.081, 1.604, 2.929, 0.16),
    (
        "bert",
        "ag_news",
        "label_selection",
        0.979,
        0.776,
        1.239,
        0.16,
    ),
    ("bert", "ag_news", "data_split", 1.164, 0.388, 1.239, 0.63),
    ("bert", "ag_news", "model_init", 0.693, 0.903, 1.239, -0.17),
    ("bert", "ag_news", "data_order", 0.686, 0.817, 1.239, -0.11),
    ("bert", "trec", "label_selection", 1.348, 1.042, 1.667, 0.18),
    ("bert", "trec", "data_split", 1.568, 0.523, 1.667, 0.63),
    ("bert", "trec", "model_init", 0.939, 1.491, 1.667, -0.33),
    ("bert", "trec", "data_order", 1.019, 1.371, 1.667, -0.21),
    (
        "bert",
        "snips",
        "label_selection",
        0.426,
        0.248,
        0.486,
        0.37,
    ),
    ("bert", "snips", "data_split", 0.442, 0.142, 0.486, 0.62),
    ("bert", "snips", "model_init", 0.27, 0.387, 0.486, -0.24),
    ("bert", "snips", "data_order", 0.246, 0.392, 0.486, -0.3),
    (
        "bert",
        "db_pedia",
        "label_selection",
        0.308,
        0.121,
        0.36,
        0.52,
    ),
    ("bert", "db_pedia", "data_split", 0.294, 0.115, 0.36, 0.5),
    ("bert", "db_pedia", "model_init", 0.121, 0.3, 0.36, -0.5),
    ("bert", "db_pedia", "data_order", 0.103, 0.301, 0.36, -0.55),
    (
        "roberta",
        "sst2",
        "label_selection",
        0.904,
        0.392,
        1.29,
        0.4,
    ),
    ("roberta", "sst2", "data_split", 0.992, 0.375, 1.29, 0.48),
    ("roberta", "sst2", "model_init", 0.89, 0.457, 1.29, 0.34),
    (
        "roberta",
        "cola",
        "label_selection",
        2.171,
        1.312,
        3.22,
        0.27,
    ),
    ("roberta", "cola", "data_split", 2.151, 1.162, 3.22, 0.31),
    ("roberta", "cola", "model_init", 2.051, 1.705, 3.22, 0.11),
    ("roberta", "cola", "data_order", 2.424, 1.769, 3.22, 0.2),
    (
        "roberta",
        "mrpc",
        "label_selection",
        1.723,
        0.99,
        2.16,
        0.34,
    ),
    ("roberta", "mrpc", "data_split", 1.981, 0.709, 2.16, 0.59),
    ("roberta", "mrpc", "model_init", 1.552, 1.312, 2.16, 0.11),
    ("roberta", "mrpc", "data_order", 1.649, 1.097, 2.16, 0.26),
    (
        "roberta",
        "ag_news",
        "label_selection",
        1.15,
        0.639,
        1.56,
        0.33,
    ),
    ("roberta", "ag_news", "data_split", 1.377, 0.392, 1.56, 0.63),
    ("roberta", "ag_news", "model_init", 1.03, 0.953, 1.56, 0.05),
    (
        "roberta",
        "trec",
        "label_selection",
        1.461,
        0.732,
        1.79,
        0.41,
    ),
    ("roberta", "trec", "data_split", 1.581, 0.596, 1.79, 0.55),
    ("roberta", "trec", "model_init", 1.38, 1.038, 1.79, 0.19),
    ("roberta", "trec", "data_order", 1.312, 1.168, 1.79, 0.08),
    ("roberta", "snips", "data_split", 0.506, 0.168, 0.58, 0.58),
    ("roberta", "snips", "model_init", 0.412, 0.367, 0.58, 0.08),
    ("roberta", "snips", "data_order", 0.372, 0.412, 0.58, -0.07),
    (
        "roberta",
        "db_pedia",
        "data_split",
        0.398,
        0.164,
        0.57,
        0.41,
    ),
    (
        "roberta",
        "db_pedia",
        "model_init",
        0.234,
        0.321,
        0.57,
        -0.15,
    ),
    (
        "roberta",
        "db_pedia",
        "data_order",
        0.223,
        0.333,
        0.57,
        -0.19,
    ),
    (
        "protonets",
        "sst2",
        "label_selection",
        0.959,
        0.268,
        0.94,
        0.74,
    ),
    ("protonets", "sst2", "data_split", 0.887, 0.283, 0.94, 0.64),
    ("protonets", "sst2", "model_init", 0.887, 0.631, 0.94, 0.27),
    ("protonets", "sst2", "data_order", 3.233, 2.371, 0.94, 0.92),
    (
        "protonets",
        "sst2",
        "sample_choice",
        0.646,
        0.63,
        0.94,
        0.02,
    ),
    (
        "protonets",
        "cola",
        "label_selection",
        1.924,
        0.665,
        2.111,
        0.6,
    ),
    ("protonets", "cola", "data_split", 2.01, 0.646, 2.111, 0.65),
    ("protonets", "cola", "model_init", 1.801, 1.186, 2.111, 0.29),
    ("protonets", "cola", "data_order", 3.346, 1.659, 2.111, 0.8),
    (
        "protonets",
        "cola",
        "sample_choice",
        1.659,
        1.335,
        2.111,
        0.15,
    ),
    (
        "protonets",
        "mrpc",
        "label_selection",
        1.448,
        0.472,
        1.789,
        0.55,
    ),
    ("protonets", "mrpc", "data_split", 1.791, 0.508, 1.789, 0.72),
    ("protonets", "mrpc", "model_init", 1.24, 1.348, 1.789, -0.06),
    ("protonets", "mrpc", "data_order", 2.265, 1.412, 1.789, 0.48),
    (
        "protonets",
        "mrpc",
        "sample_choice",
        1.084,
        1.393,
        1.789,
        -0.17,
    ),
    ("maml", "sst2", "label_selection", 0.893, 0.5, 2.34, 0.17),
    ("maml", "sst2", "data_split", 0.819, 0.286, 2.34, 0.23),
    ("maml", "sst2", "model_init", 0.678, 0.897, 2.34, -0.09),
    ("maml", "sst2", "data_order", 1.01, 0.827, 2.34, 0.08),
    ("maml", "sst2", "sample_choice", 0.167, 0.977, 2.34, -0.35),
    ("maml", "cola", "label_selection", 1.706, 0.512, 1.86, 0.64),
    ("maml", "cola", "data_split", 1.716, 0.555, 1.86, 0.62),
    ("maml", "cola", "model_init", 1.389, 1.328, 1.86, 0.03),
    ("maml", "cola", "data_order", 2.368, 1.34, 1.86, 0.55),
    ("maml", "cola", "sample_choice", 1.265, 1.352, 1.86, -0.05),
    ("maml", "mrpc", "label_selection", 6.0, 1.988, 6.27, 0.64),
    ("maml", "mrpc", "data_split", 5.868, 2.188, 6.27, 0.59),
    ("maml", "mrpc", "model_init", 4.792, 2.288, 6.27, 0.4),
    ("maml", "mrpc", "data_order", 9.522, 3.727, 6.27, 0.92),
    ("maml", "mrpc", "sample_choice", 1.94, 5.983, 6.27, -0.64),
    (
        "reptile",
        "sst2",
        "label_selection",
        0.897,
        0.141,
        1.46,
        0.52,
    ),
    ("reptile", "sst2", "data_split", 0.747, 0.485, 1.46, 0.18),
    ("reptile", "sst2", "model_init", 0.576, 1.3, 1.46, -0.5),
    ("reptile", "sst2", "data_order", 0.591, 0.951, 1.46, -0.25),
    ("reptile", "sst2", "sample_choice", 0.37, 1.674, 1.46, -0.89),
    (
        "reptile",
        "cola",
        "label_selection",
        9.482,
        3.398,
        10.5,
        0.58,
    ),
    ("reptile", "cola", "data_split", 8.55, 3.175, 10.5, 0.51),
    ("reptile", "cola", "model_init", 8.325, 3.979, 10.5, 0.41),
    ("reptile", "cola", "data_order", 4.69, 2.959, 10.5, 0.16),
    ("reptile", "cola", "sample_choice", 2.51, 2.171, 10.5, 0.03),
    (
        "reptile",
        "mrpc",
        "label_selection",
        4.745,
        1.819,
        5.7,
        0.51,
    ),
    ("reptile", "mrpc", "data_split", 4.74, 1.776, 5.7, 0.52),
    ("reptile", "mrpc", "model_init", 4.853, 2.722, 5.7, 0.37),
    ("reptile", "mrpc", "data_order", 11.446, 3.991, 5.7, 1.31),
    ("reptile", "mrpc", "sample_choice", 4.221, 2.612, 5.7, 0.28),
    (
        "ablation_flan_t5_sst2",
        "m500_eval100",
        "label_selection",
        2.073,
        0.797,
        2.31,
        0.55,
    ),
    (
        "ablation_flan_t5_sst2",
        "m500_eval100",
        "data_split",
        2.112,
        0.712,
        2.31,
        0.61,
    ),
    (
        "ablation_flan_t5_sst2",
        "m500_eval100",
        "data_order",
        0.846,
        2.089,
        2.31,
        -0.54,
    ),
    (
        "ablation_flan_t5_sst2",
        "m500_eval100",
        "sample_choice",
        2.138,
        0.818,
        2.31,
        0.57,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval100",
        "label_selection",
        2.167,
        0.904,
        2.24,
        0.56,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval100",
        "data_split",
        2.128,
        0.693,
        2.24,
        0.64,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval100",
        "data_order",
        0.869,
        1.928,
        2.24,
        -0.47,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval100",
        "sample_choice",
        2.123,
        0.844,
        2.24,
        0.57,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval100",
        "label_selection",
        2.135,
        0.946,
        2.09,
        0.57,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval100",
        "data_split",
        2.138,
        0.662,
        2.09,
        0.71,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval100",
        "data_order",
        0.982,
        2.334,
        2.09,
        -0.65,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval100",
        "sample_choice",
        2.361,
        1.001,
        2.09,
        0.65,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval10",
        "label_selection",
        2.204,
        1.278,
        2.5,
        0.37,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval10",
        "data_split",
        2.372,
        0.708,
        2.5,
        0.67,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval10",
        "data_order",
        0.902,
        2.117,
        2.5,
        -0.49,
    ),
    (
        "ablation_flan_t5_sst2",
        "m100_eval10",
        "sample_choice",
        2.152,
        1.248,
        2.5,
        0.36,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval10",
        "label_selection",
        2.174,
        1.806,
        2.35,
        0.16,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval10",
        "data_split",
        2.422,
        0.729,
        2.35,
        0.72,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval10",
        "data_order",
        1.095,
        2.932,
        2.35,
        -0.78,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval10",
        "sample_choice",
        2.337,
        1.553,
        2.35,
        0.33,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval5",
        "label_selection",
        2.188,
        2.193,
        2.97,
        -0.0,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval5",
        "data_split",
        2.67,
        0.788,
        2.97,
        0.63,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval5",
        "data_order",
        1.149,
        2.988,
        2.97,
        -0.62,
    ),
    (
        "ablation_flan_t5_sst2",
        "m10_eval5",
        "sample_choice",
        2.325,
        1.906,
        2.97,
        0.14,
    ),
];
