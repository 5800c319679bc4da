//! The bundled case-study corpus written by `mmlint init`.

/// `(file name, contents)` pairs.
pub const GOLDEN_FILES: &[(&str, &str)] = &[
    ("model.mm", include_str!("../fixtures/golden/model.mm")),
    ("stories.csv", include_str!("../fixtures/golden/stories.csv")),
    ("golden.aliases", include_str!("../fixtures/golden/golden.aliases")),
    ("priya.persona.txt", include_str!("../fixtures/golden/priya.persona.txt")),
    ("tom.persona.txt", include_str!("../fixtures/golden/tom.persona.txt")),
    ("alex.persona.txt", include_str!("../fixtures/golden/alex.persona.txt")),
];

pub fn golden_file(name: &str) -> Option<&'static str> {
    GOLDEN_FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
