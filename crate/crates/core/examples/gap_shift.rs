//! Gap shift complexity and its entropy bound.

use subshift::entropy::{gap_shift_entropy_bound, sft_entropy};
use subshift::Sft;

fn main() -> subshift::Result<()> {
    for (k, big_k) in [(2, 3), (2, 5), (3, 6)] {
        let x = Sft::gap_shift(k, big_k)?;
        let est = sft_entropy(&x, 20)?;
        let bound = gap_shift_entropy_bound(k, big_k)?;
        println!(
            "gaps {k}..={big_k}: p(20) = {}, estimate {:.5}, bound {:.5}",
            x.original_complexity(20).get(20).unwrap(),
            est.sequence[19],
            bound
        );
    }
    Ok(())
}
