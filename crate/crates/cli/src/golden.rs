//! Golden files under `<root>/<model>/<command>.txt`.

use std::io;
use std::path::{Path, PathBuf};

/// Versioned root shipped with the crate.
pub fn default_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join("v1")
}

pub fn path(root: &Path, model: &str, command: &str) -> PathBuf {
    root.join(model).join(format!("{command}.txt"))
}

pub enum Golden {
    Match,
    Blessed,
    Missing(PathBuf),
    Differs(String),
}

/// Line diff of the first few mismatches.
fn diff(expected: &str, actual: &str) -> String {
    let e: Vec<&str> = expected.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let mut out = String::new();
    let mut shown = 0;
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            if let Some(x) = x {
                out.push_str(&format!("  line {}: - {x}\n", i + 1));
            }
            if let Some(y) = y {
                out.push_str(&format!("  line {}: + {y}\n", i + 1));
            }
            shown += 1;
            if shown == 10 {
                out.push_str("  ...\n");
                break;
            }
        }
    }
    out
}

/// Compares `text` to the stored file, or rewrites it when `bless` is set.
/// With `subset`, every line of `text` only has to occur in the file.
pub fn check(root: &Path, model: &str, command: &str, text: &str, bless: bool, subset: bool) -> io::Result<Golden> {
    let p = path(root, model, command);
    if bless && !subset {
        std::fs::create_dir_all(p.parent().expect("golden path has a parent"))?;
        std::fs::write(&p, text)?;
        return Ok(Golden::Blessed);
    }
    let stored = match std::fs::read_to_string(&p) {
        Ok(s) => s,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Golden::Missing(p)),
        Err(e) => return Err(e),
    };
    if subset {
        let missing: Vec<&str> = text.lines().filter(|l| !stored.lines().any(|s| s == *l)).collect();
        return Ok(if missing.is_empty() {
            Golden::Match
        } else {
            Golden::Differs(missing.iter().map(|l| format!("  + {l}\n")).collect())
        });
    }
    Ok(if stored == text { Golden::Match } else { Golden::Differs(diff(&stored, text)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bless_then_check() {
        let root = std::env::temp_dir().join(format!("sf-golden-{}", std::process::id()));
        assert!(matches!(check(&root, "Y5", "x", "a\nb\n", false, false).unwrap(), Golden::Missing(_)));
        assert!(matches!(check(&root, "Y5", "x", "a\nb\n", true, false).unwrap(), Golden::Blessed));
        assert!(matches!(check(&root, "Y5", "x", "a\nb\n", false, false).unwrap(), Golden::Match));
        assert!(matches!(check(&root, "Y5", "x", "b\n", false, true).unwrap(), Golden::Match));
        match check(&root, "Y5", "x", "a\nc\n", false, false).unwrap() {
            Golden::Differs(d) => assert!(d.contains("- b") && d.contains("+ c")),
            _ => panic!("expected a diff"),
        }
        std::fs::remove_dir_all(root).unwrap();
    }
}
