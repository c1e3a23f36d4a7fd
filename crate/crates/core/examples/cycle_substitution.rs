//! Vertex and edge cycle-substitutions of the Mickey graph.

use subshift::{cyclesub, fixtures};

fn main() -> subshift::Result<()> {
    for g in [fixtures::mickey(), fixtures::mickey_edge()] {
        let theta = cyclesub::cycle_substitution(&g)?;
        println!("{} shift:", g.mode().as_str());
        let alpha = theta.alphabet();
        for a in alpha.letters() {
            let images = theta.images(a).render(alpha);
            println!("  {} -> {{{}}}", alpha.symbol(a), images.join(", "));
        }
        let p = theta.is_primitive();
        println!("  primitive: {} (k = {:?})", p.primitive, p.witness_k);
    }
    Ok(())
}
