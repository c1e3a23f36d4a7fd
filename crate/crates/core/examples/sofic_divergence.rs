//! A naive substitution for a sofic shift generates extra words.

use subshift::cyclesub::{self, Side};
use subshift::{fixtures, Limits};

fn main() -> subshift::Result<()> {
    let (alpha, vertices, edges) = fixtures::sofic_graph();
    let shift = cyclesub::labelled_graph_language(&alpha, vertices, &edges, 6)?;
    let s = fixtures::naive_sofic_substitution();
    let table = s.language_upto(6, &Limits::default())?;
    let cmp = cyclesub::compare_languages(&shift, table.levels());
    if let Some(d) = &cmp.first_divergence {
        println!("first divergence: {} (only in {})", alpha.render(&d.word), d.side.as_str());
    }
    for side in [Side::Shift, Side::Substitution] {
        let words: Vec<String> = cmp
            .at_length(6)
            .filter(|d| d.side == side)
            .map(|d| alpha.render(&d.word))
            .collect();
        println!("length 6, only in {}: {} words, e.g. {}", side.as_str(), words.len(), words.iter().take(6).cloned().collect::<Vec<_>>().join(" "));
    }
    let w = alpha.parse_word("302103")?;
    println!("302103: {:?}", cmp.divergence_of(&w).map(|d| d.side.as_str()));
    Ok(())
}
