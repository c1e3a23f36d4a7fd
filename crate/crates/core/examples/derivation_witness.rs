//! Builds and replays a derivation witness for a cycle word read.

use subshift::{cyclesub, fixtures};

fn main() -> subshift::Result<()> {
    let g = fixtures::mickey();
    let alpha = g.alphabet();
    let target = std::env::args().nth(1).unwrap_or_else(|| "213120012".into());
    let u = alpha.parse_word(&target)?;
    let witness = cyclesub::derivation_witness(&g, &u)?;
    println!("root {} depth {}", alpha.symbol(witness.root), witness.depth);

    let theta = cyclesub::vertex_cycle_substitution(&g)?;
    for (i, w) in cyclesub::replay_chain(&theta, &witness)?.iter().enumerate() {
        println!("  {i}: {}", alpha.render(w));
    }
    Ok(())
}
