//! Descriptor strings accepted on the command line.

use gdk_core::gfield::{ExtField, GaloisExtension};
use gdk_core::group_core::FiniteGroup;

fn args_of<'a>(s: &'a str, head: &str) -> Option<Vec<&'a str>> {
    let inner = s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(split_top(inner))
}

/// Splits on commas outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("{what}: expected a number, got {s:?}"))
}

/// `1`, `Z<n>` or `S<n>`.
pub fn group(s: &str) -> Result<FiniteGroup, String> {
    let s = s.trim();
    if s == "1" || s.eq_ignore_ascii_case("trivial") {
        return Ok(FiniteGroup::trivial());
    }
    if let Some(n) = s.strip_prefix('Z').or_else(|| s.strip_prefix('C')) {
        let n: usize = number(n, "cyclic order")?;
        if n == 0 {
            return Err("cyclic order must be positive".into());
        }
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = s.strip_prefix('S') {
        return FiniteGroup::symmetric(number(n, "symmetric degree")?).map_err(|e| e.to_string());
    }
    Err(format!("unknown group {s:?} (expected 1, Z<n> or S<n>)"))
}

/// `gal(p,m)` or `tower(p,m)`, `split(p,G)`, or `fixed(p,m,G)` for
/// `F_{p^m}` with `G` acting trivially.
pub fn extension(s: &str) -> Result<GaloisExtension, String> {
    let s = s.trim();
    let built = if let Some(a) = args_of(s, "gal").or_else(|| args_of(s, "tower")) {
        let [p, m] = a[..] else {
            return Err(format!("{s:?}: expected two arguments"));
        };
        GaloisExtension::tower(number(p, "p")?, number(m, "m")?)
    } else if let Some(a) = args_of(s, "split") {
        let [p, g] = a[..] else {
            return Err(format!("{s:?}: expected two arguments"));
        };
        GaloisExtension::split(number(p, "p")?, group(g)?)
    } else if let Some(a) = args_of(s, "fixed") {
        let [p, m, g] = a[..] else {
            return Err(format!("{s:?}: expected three arguments"));
        };
        let g = group(g)?;
        ExtField::new(number(p, "p")?, number(m, "m")?)
            .map(|f| GaloisExtension::trivially_acted(f, g))
    } else {
        return Err(format!(
            "unknown extension {s:?} (expected gal(p,m), split(p,G) or fixed(p,m,G))"
        ));
    };
    built.map_err(|e| e.to_string())
}

pub fn is_extension(s: &str) -> bool {
    ["gal(", "tower(", "split(", "fixed("].iter().any(|h| s.trim().starts_with(h))
}
