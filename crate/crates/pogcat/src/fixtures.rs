//! Workspaces shipped with the binary, found by file name when no such file
//! exists on disk.

pub const ALL: &[(&str, &str)] = &[
    ("unit.cat", include_str!("../fixtures/unit.cat")),
    ("cch.cat", include_str!("../fixtures/cch.cat")),
    ("algebras.cat", include_str!("../fixtures/algebras.cat")),
    ("orbits.cat", include_str!("../fixtures/orbits.cat")),
    ("circle.cat", include_str!("../fixtures/circle.cat")),
    ("trivial.cat", include_str!("../fixtures/trivial.cat")),
];

pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
