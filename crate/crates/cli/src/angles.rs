//! Angle expressions such as `pi/3`, `-2pi/3`, `3*pi/4 + 0.1` or `1.25`.

use crate::CliError;
use std::f64::consts::PI;

/// Evaluate a sum of products of numbers and `pi` (`π`); juxtaposition
/// (`2pi`) multiplies.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad angle `{text}`: {why}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut total = 0.0;
    let mut rest = s.as_str();
    let mut sign = 1.0;
    let mut first = true;
    loop {
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            continue;
        }
        let end = rest
            .char_indices()
            .skip(1)
            .find(|&(i, c)| (c == '+' || c == '-') && !prev_is_exponent(rest, i))
            .map_or(rest.len(), |(i, _)| i);
        let term = &rest[..end];
        if term.is_empty() {
            return Err(bad(if first { "missing value" } else { "dangling operator" }));
        }
        total += sign * product(term).ok_or_else(|| bad("expected numbers and `pi` joined by `*` or `/`"))?;
        first = false;
        sign = 1.0;
        if end == rest.len() {
            break;
        }
        rest = &rest[end..];
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(bad("not finite"))
    }
}

fn prev_is_exponent(s: &str, i: usize) -> bool {
    let b = s.as_bytes();
    i >= 2 && (b[i - 1] == b'e' || b[i - 1] == b'E') && b[i - 2].is_ascii_digit()
}

fn product(term: &str) -> Option<f64> {
    let mut value = 1.0;
    let mut op = '*';
    let mut start = 0;
    let chars: Vec<(usize, char)> = term.char_indices().collect();
    for k in 0..=chars.len() {
        let at_end = k == chars.len();
        if at_end || chars[k].1 == '*' || chars[k].1 == '/' {
            let end = if at_end { term.len() } else { chars[k].0 };
            let f = factor(&term[start..end])?;
            value = if op == '*' { value * f } else { value / f };
            if !at_end {
                op = chars[k].1;
                start = end + 1;
            }
        }
    }
    Some(value)
}

fn factor(f: &str) -> Option<f64> {
    let (num, pi) = if let Some(n) = f.strip_suffix("pi") {
        (n, true)
    } else if let Some(n) = f.strip_suffix('π') {
        (n, true)
    } else {
        (f, false)
    };
    let base = match (num, pi) {
        ("", true) => 1.0,
        ("", false) => return None,
        (n, _) => n.parse::<f64>().ok()?,
    };
    Some(if pi { base * PI } else { base })
}

/// `alpha:beta`.
pub fn parse_interval(text: &str) -> Result<(f64, f64), CliError> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("bad interval `{text}`: expected `alpha:beta`")))?;
    Ok((parse_angle(a)?, parse_angle(b)?))
}
