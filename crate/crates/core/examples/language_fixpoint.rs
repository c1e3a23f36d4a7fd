//! Exact language of the random Fibonacci substitution.

use subshift::{fixtures, Limits};

fn main() -> subshift::Result<()> {
    let s = fixtures::random_fibonacci();
    let table = s.language_upto(8, &Limits::default())?;
    let cert = table.certificate();
    println!("saturated after preperiod {} period {}", cert.preperiod, cert.period);
    for n in 1..=table.max_length() {
        println!("p({n}) = {}", table.level(n).len());
    }
    println!("length 4: {}", table.level(4).render(s.alphabet()).join(" "));

    let aa = s.alphabet().parse_word("bb")?;
    println!("bb legal: {}", s.is_legal(&aa, &Limits::default())?.legal);
    Ok(())
}
