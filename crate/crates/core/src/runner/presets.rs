//! Bundled run configs. Names are stable.

use super::config::RunConfig;
use crate::error::{Error, Result};

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        /// `(name, TOML text)` in catalog order.
        pub const PRESETS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../presets/", $name, ".toml")))),*
        ];
    };
}

presets!(
    "fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig5a", "fig5b", "fig5c", "fig5d",
    "fig6a", "fig6b", "fig6c", "fig6d", "fig8", "fig9a", "fig9b", "fig9c", "fig11a", "fig11b",
);

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::config("preset", format!("unknown preset `{name}`")))
}

pub fn load(name: &str) -> Result<RunConfig> {
    RunConfig::parse(text(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_validates() {
        for (name, _) in PRESETS {
            load(name).and_then(|c| c.resolve()).and_then(|c| c.plan()).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_preset_is_a_config_error() {
        assert_eq!(load("fig7").unwrap_err().exit_code(), 2);
    }
}
