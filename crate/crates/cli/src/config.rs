//! Flat `key = value` config files merged into the command line.
//!
//! Keys use the flag names without the leading dashes. Flags given on the
//! command line win over the file. `key = true` turns on a switch; `#`
//! starts a comment.

use std::ffi::OsString;
use std::fs;

use anyhow::{bail, Context, Result};

/// Parses the config file text into (key, value) pairs in file order.
pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key = value, got {raw:?}", i + 1);
        };
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            bail!("config line {}: empty key", i + 1);
        }
        pairs.push((key.to_owned(), value.trim().to_owned()));
    }
    Ok(pairs)
}

fn has_flag(args: &[OsString], key: &str) -> bool {
    let long = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| {
        a.to_str()
            .is_some_and(|s| s == long || s.starts_with(&prefix))
    })
}

/// Expands `--config path` into explicit flags placed after the subcommand.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    while let Some(a) = iter.next() {
        match a.to_str() {
            Some("--config") => {
                path = Some(iter.next().context("--config needs a path")?);
            }
            Some(s) if s.starts_with("--config=") => {
                path = Some(OsString::from(&s["--config=".len()..]));
            }
            _ => rest.push(a),
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path:?}"))?;
    let mut extra = Vec::new();
    for (key, value) in parse(&text)? {
        if has_flag(&rest, &key) {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => {
                extra.push(OsString::from(format!("--{key}")));
                extra.push(OsString::from(value));
            }
        }
    }
    // Program name and subcommand come first.
    let split = rest.len().min(2);
    let mut out: Vec<OsString> = rest[..split].to_vec();
    out.extend(extra);
    out.extend_from_slice(&rest[split..]);
    Ok(out)
}
