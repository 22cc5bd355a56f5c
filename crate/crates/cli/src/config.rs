//! `key = value` config files, spliced into argv ahead of explicit flags.

use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Blank lines and lines starting with `#` are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError(format!(
                "config line {}: expected `key = value`",
                i + 1
            )));
        };
        let key = key.trim();
        if key.is_empty() || key.starts_with('-') || key == "config" {
            return Err(ConfigError(format!(
                "config line {}: bad key `{key}`",
                i + 1
            )));
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<Result<String, ConfigError>> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return Some(
                it.next()
                    .cloned()
                    .ok_or_else(|| ConfigError("--config needs a path".into())),
            );
        }
        if let Some(path) = a.strip_prefix("--config=") {
            return Some(Ok(path.to_string()));
        }
    }
    None
}

/// Inserts `--key=value` pairs from the `--config` file right after the
/// subcommand, so explicit flags that follow override them.
pub fn expand_config(argv: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>, ConfigError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let path = path?;
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| ConfigError(format!("cannot read config `{path}`: {e}")))?;
    let pairs = parse_config(&text)?;
    let Some(pos) = argv
        .iter()
        .skip(1)
        .position(|a| subcommands.contains(&a.as_str()))
    else {
        return Ok(argv);
    };
    let insert_at = pos + 2;
    let mut out = argv[..insert_at].to_vec();
    out.extend(pairs.into_iter().map(|(k, v)| format!("--{k}={v}")));
    out.extend_from_slice(&argv[insert_at..]);
    Ok(out)
}
