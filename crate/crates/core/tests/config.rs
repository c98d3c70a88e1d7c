use std::time::Duration;

use psw::config::{ConfigError, Settings};

#[test]
fn flat_keys_override_live_defaults() {
    let s = Settings::parse("model_id = \"other\"\ntemperature = 0.5\nretries = 1\ntimeout_secs = 9\n").unwrap();
    let live = s.live_config();
    assert_eq!(live.model_id, "other");
    assert_eq!(live.temperature, 0.5);
    assert_eq!(live.retries, 1);
    assert_eq!(live.timeout, Duration::from_secs(9));
    assert_eq!(live.endpoint, psw::cta::DEFAULT_ENDPOINT);
}

#[test]
fn unknown_keys_and_bad_values_are_rejected() {
    assert!(Settings::parse("api_key = \"secret\"\n").is_err());
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("psw.toml");
    std::fs::write(&p, "temperature = 9.0\n").unwrap();
    assert!(matches!(Settings::load(&p), Err(ConfigError::Invalid(_))));
    std::fs::write(&p, "max_depth = \"deep\"\n").unwrap();
    assert!(matches!(Settings::load(&p), Err(ConfigError::Parse { .. })));
}

#[test]
fn empty_file_is_all_defaults() {
    assert_eq!(Settings::parse("").unwrap(), Settings::default());
}
