//! Product, fractional and epsilon extensions change the entropy.

use subshift::entropy::{
    fractional_block_identity, product_extension, smallest_epsilon_extension, substitution_entropy,
};
use subshift::{fixtures, Limits};

fn main() -> subshift::Result<()> {
    let limits = Limits::default();
    let s = fixtures::random_fibonacci();
    let base = substitution_entropy(&s, 10, &limits)?;

    let (prod, _) = product_extension(&s, 2)?;
    let ext = substitution_entropy(&prod, 10, &limits)?;
    println!("product m=2: {:.4} -> {:.4}", base.sequence[9], ext.sequence[9]);

    for row in fractional_block_identity(1, 2, 2, &[2, 4, 6], &limits)? {
        println!(
            "fractional l=1 k=2: p({}) = {} predicted {} holds {}",
            row.length, row.p_theta, row.predicted, row.holds
        );
    }

    let eps = smallest_epsilon_extension(&s, 4, &limits)?;
    let alpha = s.alphabet();
    let marks: Vec<String> = eps.marked.iter().map(|(w, i)| format!("{}@{i}", alpha.render(w))).collect();
    println!("epsilon extension at power {} marks {}", eps.power, marks.join(" "));
    Ok(())
}
