//! Compares SFT languages with cycle-substitution languages.

use subshift::{cyclesub, fixtures, Limits};

fn main() -> subshift::Result<()> {
    let limits = Limits::default();
    for (name, g) in [
        ("golden", fixtures::golden()),
        ("mickey", fixtures::mickey()),
        ("mickey-edge", fixtures::mickey_edge()),
    ] {
        let cmp = cyclesub::verify_language_equality(&g, 6, &limits)?;
        println!("{name}: equal up to length {} = {}", cmp.max_length, cmp.equal);
    }
    Ok(())
}
