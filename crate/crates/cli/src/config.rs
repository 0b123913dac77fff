use std::ffi::OsString;
use std::path::Path;

use crate::args::SUBCOMMANDS;

/// Reads `--config FILE` from `argv` and inserts its keys as flags right
/// after the subcommand name. Keys already given on the command line are
/// skipped, so explicit flags win.
///
/// The file is TOML with flat keys: `x = 0.6`, `boxes = "0,0;1,0"`,
/// `plot = true`, `radii = [10, 20, 40]`.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let args: Vec<String> =
        argv.into_iter().map(|a| a.into_string().map_err(|_| "arguments must be UTF-8".to_string())).collect::<Result<_, _>>()?;
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = Some(args.get(i + 1).ok_or("--config needs a file")?.clone());
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(args.into_iter().map(OsString::from).collect()) };
    let extra = flags_from_file(Path::new(&path), &args)?;
    let at = args.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())).map_or(args.len(), |i| i + 1);
    let mut out = args;
    out.splice(at..at, extra);
    Ok(out.into_iter().map(OsString::from).collect())
}

fn flags_from_file(path: &Path, given: &[String]) -> Result<Vec<String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let table: toml::Table = text.parse().map_err(|e| format!("bad config {}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" || given.iter().any(|g| *g == flag || g.starts_with(&format!("{flag}="))) {
            continue;
        }
        let scalar = |v: &toml::Value| -> Result<String, String> {
            match v {
                toml::Value::String(s) => Ok(s.clone()),
                toml::Value::Integer(i) => Ok(i.to_string()),
                toml::Value::Float(f) => Ok(f.to_string()),
                toml::Value::Boolean(b) => Ok(b.to_string()),
                other => Err(format!("config key `{key}`: unsupported value {other}")),
            }
        };
        match &value {
            toml::Value::Boolean(true) => out.push(flag),
            toml::Value::Boolean(false) => {}
            toml::Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect::<Result<_, _>>()?;
                out.push(format!("{flag}={}", parts.join(",")));
            }
            v => out.push(format!("{flag}={}", scalar(v)?)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::io::Write;

    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn config_values_follow_the_subcommand_and_flags_win() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "x = 0.25\nm = 1\nplot = true\nradii = [10, 20]\nseed = 3").unwrap();
        let p = f.path().to_str().unwrap().to_string();
        let out = expand(os(&["sawlab", "--config", &p, "zm", "--x", "0.5"])).unwrap();
        let out: Vec<String> = out.into_iter().map(|s| s.into_string().unwrap()).collect();
        let at = out.iter().position(|a| a == "zm").unwrap();
        assert!(out[at + 1..].contains(&"--m=1".to_string()));
        assert!(out.contains(&"--plot".to_string()));
        assert!(out.contains(&"--radii=10,20".to_string()));
        assert!(!out.iter().any(|a| a == "--x=0.25"));
    }

    #[test]
    fn missing_config_is_an_error() {
        assert!(expand(os(&["sawlab", "--config", "/nonexistent/file", "zm"])).is_err());
        assert!(expand(os(&["sawlab", "zm", "--config"])).is_err());
    }
}
