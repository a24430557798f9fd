//! Free-form argument parsing for `verify`, whose flags depend on the identity.

use std::collections::BTreeMap;

#[derive(Debug, Default, PartialEq, Eq)]
pub struct VerifyArgs {
    pub paper_form: bool,
    pub out: Option<String>,
    pub format: Option<String>,
    /// Parameter name to inclusive range; single values become `v..v`.
    pub ranges: BTreeMap<String, (i64, i64)>,
    /// True when any parameter was given as a range.
    pub sweep: bool,
}

/// Parses `lo..hi` (inclusive) or a single integer.
pub fn parse_range(text: &str) -> Result<((i64, i64), bool), String> {
    let bad = || format!("expected an integer or lo..hi, got `{text}`");
    match text.split_once("..") {
        Some((lo, hi)) => {
            let lo = lo.trim().parse().map_err(|_| bad())?;
            let hi = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            Ok(((lo, hi), true))
        }
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            Ok(((v, v), false))
        }
    }
}

pub fn parse_verify_args(args: &[String]) -> Result<VerifyArgs, String> {
    let mut out = VerifyArgs::default();
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        let Some(flag) = arg.strip_prefix("--") else {
            return Err(format!("unexpected argument `{arg}`"));
        };
        let (name, inline) = match flag.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (flag, None),
        };
        if name == "paper-form" {
            if inline.is_some() {
                return Err("--paper-form takes no value".into());
            }
            out.paper_form = true;
            continue;
        }
        let value = match inline {
            Some(v) => v,
            None => iter
                .next()
                .cloned()
                .ok_or_else(|| format!("--{name} needs a value"))?,
        };
        match name {
            "out" => out.out = Some(value),
            "format" => out.format = Some(value),
            _ => {
                let (range, is_range) =
                    parse_range(&value).map_err(|e| format!("--{name}: {e}"))?;
                out.sweep |= is_range;
                if out.ranges.insert(name.to_string(), range).is_some() {
                    return Err(format!("--{name} given twice"));
                }
            }
        }
    }
    Ok(out)
}
