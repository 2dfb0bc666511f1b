//! The bundled corpus, one file per example, sorted by name.

use crate::{parse_wz, WzDocument};

pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture { name: $name, text: include_str!(concat!("../fixtures/", $name, ".wz")) }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("barnes1280"),
    fixture!("barnes80"),
    fixture!("cullen"),
    fixture!("deg2_384"),
    fixture!("gourevitch"),
    fixture!("ramanujan128"),
    fixture!("ramanujan16"),
    fixture!("zeta2"),
    fixture!("zeta4"),
];

/// Look up `zeta2`, `zeta2.wz` or `fixtures/zeta2.wz`.
pub fn find(name: &str) -> Option<&'static Fixture> {
    let base = name.rsplit(['/', '\\']).next().unwrap_or(name);
    let base = base.strip_suffix(".wz").unwrap_or(base);
    FIXTURES.iter().find(|f| f.name == base)
}

/// Parsed fixture; the corpus is known to parse.
pub fn load(name: &str) -> WzDocument {
    let f = find(name).unwrap_or_else(|| panic!("no bundled fixture `{name}`"));
    parse_wz(f.text).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}
