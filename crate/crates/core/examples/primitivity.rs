//! Primitivity and legality checks on hand-written substitutions.

use subshift::{Alphabet, Limits, RandomSubstitution};

fn main() -> subshift::Result<()> {
    let limits = Limits::default();
    let ab = Alphabet::from_chars("ab")?;
    let cases: [(&str, [&[&str]; 2]); 3] = [
        ("random Fibonacci", [&["ab", "ba"], &["a"]]),
        ("a fixed", [&["aa"], &["bb", "ab"]]),
        ("swap", [&["b"], &["a"]]),
    ];
    for (name, images) in cases {
        let s = RandomSubstitution::parse(ab.clone(), &images)?;
        let p = s.is_primitive();
        println!("{name}: primitive {} k {:?}", p.primitive, p.witness_k);
        if p.primitive {
            for w in ["aa", "bb"] {
                let legal = s.is_legal(&ab.parse_word(w)?, &limits)?;
                println!("  {w} legal {} witness {:?}", legal.legal, legal.witness);
            }
        }
    }
    Ok(())
}
