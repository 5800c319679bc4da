//! Label quoting shared by the line-oriented formats.
//!
//! A label is written bare unless it would be misread, in which case it is
//! written as a JSON string literal.

pub(crate) fn needs_quoting(label: &str) -> bool {
    label.is_empty()
        || label.starts_with(char::is_whitespace)
        || label.ends_with(char::is_whitespace)
        || label.chars().any(|c| matches!(c, '#' | '"' | ',' | ':' | '=') || c.is_control())
}

pub(crate) fn quote_if_needed(label: &str) -> String {
    if needs_quoting(label) {
        serde_json::to_string(label).expect("string serialization is infallible")
    } else {
        label.to_string()
    }
}

/// Splits a leading JSON string literal off `s` (which starts with `"`).
/// Returns the decoded value and the unconsumed remainder.
pub(crate) fn take_quoted(s: &str) -> Result<(String, &str), String> {
    debug_assert!(s.starts_with('"'));
    let mut escaped = false;
    for (i, c) in s.char_indices().skip(1) {
        match c {
            _ if escaped => escaped = false,
            '\\' => escaped = true,
            '"' => {
                let literal = &s[..=i];
                let value: String = serde_json::from_str(literal).map_err(|e| format!("bad quoted label: {e}"))?;
                return Ok((value, &s[i + 1..]));
            }
            _ => {}
        }
    }
    Err("unterminated quoted label".into())
}

/// Parses one label value: a quoted literal, or bare text up to `#` or any
/// character in `stops`. Returns the label and the remainder (starting at the
/// stop character, if any).
pub(crate) fn take_label<'a>(s: &'a str, stops: &[char]) -> Result<(String, &'a str), String> {
    let s = s.trim_start();
    if s.starts_with('"') {
        let (value, rest) = take_quoted(s)?;
        return Ok((value, rest.trim_start()));
    }
    let end = s.find(|c: char| c == '#' || stops.contains(&c)).unwrap_or(s.len());
    let bare = s[..end].trim();
    if bare.contains('"') {
        return Err("stray quote in label".into());
    }
    Ok((bare.to_string(), &s[end..]))
}

/// Parses a `,`-separated list of labels; stops at end of input or a `#` comment.
pub(crate) fn parse_label_list(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    if rest.is_empty() || rest.starts_with('#') {
        return Ok(out);
    }
    loop {
        let (label, tail) = take_label(rest, &[','])?;
        if label.trim().is_empty() {
            return Err("empty label in list".into());
        }
        out.push(label);
        let tail = tail.trim_start();
        if tail.is_empty() || tail.starts_with('#') {
            return Ok(out);
        }
        match tail.strip_prefix(',') {
            Some(t) => rest = t,
            None => return Err(format!("expected `,` before `{}`", tail.chars().take(12).collect::<String>())),
        }
    }
}

pub(crate) fn emit_label_list(labels: &[String]) -> String {
    labels.iter().map(|l| quote_if_needed(l)).collect::<Vec<_>>().join(", ")
}
