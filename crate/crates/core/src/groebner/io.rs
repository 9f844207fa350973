//! Plain-text ideal files.
//!
//! ```text
//! # twisted cubic
//! ring x0 x1 x2 x3 mod 32003 order degrevlex
//! x0*x2 - x1^2
//! x0*x3 - x1*x2
//! x1*x3 - x2^2
//! ```

use super::GradedIdeal;
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Ring, TermOrder};

/// Parse an ideal file; `prime` overrides the modulus in the header.
pub fn parse_ideal_file(text: &str, prime: Option<u32>) -> Result<GradedIdeal> {
    let mut ring = None;
    let mut gens = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let start = offset;
        offset += line.len() + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        match &ring {
            None => ring = Some(parse_header(body, prime).map_err(|e| at(e, start))?),
            Some(r) => gens.push(Polynomial::parse(r, body).map_err(|e| at(e, start))?),
        }
    }
    let ring = ring.ok_or(Error::Parse {
        pos: 0,
        msg: "missing `ring` header".into(),
    })?;
    GradedIdeal::new(&ring, gens)
}

fn at(e: Error, start: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: start + pos,
            msg,
        },
        other => Error::Parse {
            pos: start,
            msg: other.to_string(),
        },
    }
}

fn parse_header(line: &str, prime: Option<u32>) -> Result<std::sync::Arc<Ring>> {
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: msg.to_string(),
    };
    let words: Vec<&str> = line.split_whitespace().collect();
    if words.first() != Some(&"ring") {
        return Err(bad("expected `ring <vars...> mod <p> order <name>`"));
    }
    let m = words
        .iter()
        .position(|w| *w == "mod")
        .ok_or_else(|| bad("missing `mod`"))?;
    let o = words
        .iter()
        .position(|w| *w == "order")
        .ok_or_else(|| bad("missing `order`"))?;
    if o != m + 2 || words.len() != o + 2 {
        return Err(bad(
            "expected `mod <p> order <name>` at the end of the header",
        ));
    }
    let names: Vec<String> = words[1..m].iter().map(|s| s.to_string()).collect();
    let p: u32 = words[m + 1]
        .parse()
        .map_err(|_| bad("modulus is not an integer"))?;
    let order = TermOrder::from_name(words[o + 1]).ok_or_else(|| bad("unknown term order"))?;
    Ring::new(names, prime.unwrap_or(p), order)
}

/// Header line followed by one generator per line.
pub fn write_ideal_file(ideal: &GradedIdeal) -> String {
    let mut s = ideal.ring().header();
    s.push('\n');
    for g in ideal.gens() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBIC: &str = "# twisted cubic\nring x0 x1 x2 x3 mod 32003 order degrevlex\n\
                         x0*x2 - x1^2  # first minor\nx0*x3 - x1*x2\n\nx1*x3 - x2^2\n";

    #[test]
    fn round_trip() {
        let i = parse_ideal_file(CUBIC, None).unwrap();
        assert_eq!(i.gens().len(), 3);
        let j = parse_ideal_file(&write_ideal_file(&i), None).unwrap();
        assert_eq!(i.gens(), j.gens());
        assert_eq!(write_ideal_file(&i), write_ideal_file(&j));
    }

    #[test]
    fn prime_override_and_block_order() {
        let i = parse_ideal_file("ring a b c mod 7 order block1\na*b - c^2\n", Some(101)).unwrap();
        assert_eq!(i.ring().prime(), 101);
        assert_eq!(i.ring().order(), TermOrder::Block { front: 1 });
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_ideal_file("", None),
            Err(Error::Parse { .. })
        ));
        assert!(parse_ideal_file("ring x y mod 32003\n", None).is_err());
        assert!(parse_ideal_file("ring x y mod 32003 order lex\n", None).is_err());
        let e = parse_ideal_file("ring x y mod 32003 order degrevlex\nx*z\n", None).unwrap_err();
        assert!(matches!(e, Error::Parse { pos, .. } if pos >= 35));
        assert!(parse_ideal_file("ring x y mod 32003 order degrevlex\nx^2 + y\n", None).is_err());
    }
}
