//! Perron eigenvalue of an SFT against finite-horizon entropy estimates.

use subshift::entropy::{sft_entropy, substitution_entropy};
use subshift::{fixtures, perron_eigenvalue, Limits};

fn main() -> subshift::Result<()> {
    let x = fixtures::mickey_sft();
    let lambda = perron_eigenvalue(x.transition(), 1e-12)?;
    let est = sft_entropy(&x, 16)?;
    println!("mickey: log lambda = {:.6}, log p(16)/16 = {:.6}", lambda.ln(), est.sequence[15]);

    let est = substitution_entropy(&fixtures::random_fibonacci(), 14, &Limits::default())?;
    println!("random Fibonacci: log p(n)/n down to {:.6}, upper bound {:.6}", est.sequence[13], est.upper);
    Ok(())
}
