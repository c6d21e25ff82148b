//! Reading flag values: JSON inputs may be a path or inline JSON text, and
//! polynomials may be given inline or as `@path`.

use std::fs;

use serde_json::Value;

/// Flags whose value names a JSON input.
pub const JSON_FLAGS: &[&str] = &["--points", "--matrix", "--lattice", "--quadrics", "--b", "--a"];

fn is_inline(arg: &str) -> bool {
    matches!(arg.trim_start().chars().next(), Some('{' | '['))
}

pub fn load_json(arg: &str) -> Result<Value, String> {
    let text = if is_inline(arg) {
        arg.to_owned()
    } else {
        fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("{arg}: invalid JSON: {e}"))
}

/// Polynomial text, either literal or `@path` to a file holding the text or
/// a JSON object with an `"f"` field.
pub fn load_polynomial(arg: &str) -> Result<String, String> {
    let Some(path) = arg.strip_prefix('@') else { return Ok(arg.to_owned()) };
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    if is_inline(&text) {
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("{path}: invalid JSON: {e}"))?;
        return v
            .get("f")
            .and_then(Value::as_str)
            .map(str::to_owned)
            .ok_or_else(|| format!("{path}: expected an object with a string field \"f\""));
    }
    Ok(text.trim().to_owned())
}

/// Copy of `args` (program name dropped) with every file input replaced by
/// its contents, so the command can be re-run from a report alone.
pub fn self_contained_argv(args: &[String]) -> Result<Vec<String>, String> {
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.iter().skip(1);
    while let Some(arg) = iter.next() {
        let (flag, attached) = match arg.split_once('=') {
            Some((f, v)) if f.starts_with("--") => (f, Some(v)),
            _ => (arg.as_str(), None),
        };
        let json_flag = JSON_FLAGS.contains(&flag);
        if !(json_flag || flag == "--f") {
            out.push(arg.clone());
            continue;
        }
        out.push(flag.to_owned());
        let Some(value) = attached.map(str::to_owned).or_else(|| iter.next().cloned()) else { break };
        out.push(if json_flag { load_json(&value)?.to_string() } else { load_polynomial(&value)? });
    }
    Ok(out)
}
