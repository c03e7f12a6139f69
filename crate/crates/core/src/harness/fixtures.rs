use crate::error::{Error, Result};
use crate::graph::Graph;

const FIXTURES: &[(&str, &str)] = &[
    ("c4", include_str!("../../fixtures/c4.edges")),
    ("c5", include_str!("../../fixtures/c5.edges")),
    ("g-ex", include_str!("../../fixtures/g-ex.edges")),
    ("g-b", include_str!("../../fixtures/g-b.edges")),
    (
        "well-covered-9",
        include_str!("../../fixtures/well-covered-9.edges"),
    ),
    (
        "whisker-c4",
        include_str!("../../fixtures/whisker-c4.edges"),
    ),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

/// The edge-list text of a shipped fixture.
pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn fixture(name: &str) -> Result<Graph> {
    let text = fixture_text(name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture `{name}`")))?;
    Graph::parse(text)
}
