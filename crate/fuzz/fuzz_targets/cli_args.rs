#![no_main]

// Whitespace-separated argument vectors against a builtin algebra. Numbers
// are kept small so resolutions stay short, and anything that looks like a
// path is skipped so the target never touches the filesystem.

use gorenstein_cli::{run, EXIT_INVARIANT};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let words: Vec<&str> = text.split_whitespace().take(16).collect();
    let Some(&command) = words.first() else { return };
    if !matches!(command, "sg" | "strip" | "resolve" | "ext" | "period-set" | "complexity") {
        return;
    }
    let risky = |w: &&str| {
        w.contains(['/', '.', '=']) || w.starts_with("--output") || w.starts_with("--algebra") || w.parse::<u64>().is_ok_and(|n| n > 12)
    };
    if words.iter().any(risky) {
        return;
    }
    let args = ["gorenstein", "--algebra", "C3"].into_iter().chain(words.iter().copied());
    let out = run(args, None);
    assert_ne!(out.code, EXIT_INVARIANT, "{}", out.stderr);
});
