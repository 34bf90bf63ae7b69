//! Text form of matrices: `[[1,0],[0,1]] : 2 -> 2`.
//!
//! The type annotation is optional (`cols -> rows` single factors are assumed).
//! Factors are dimensions; a postfix `*` or `^*` dualizes, and `*` or `⊗`
//! between two factors is tensor, so `2**3` reads as `2* ⊗ 3`.

use super::{Factor, Morphism, TensorObject};
use crate::error::{CategoryError, LiteralError};
use crate::semiring::Semiring;

pub fn parse_object(text: &str) -> Result<TensorObject, LiteralError> {
    let err = |why: &str| LiteralError::new(text, why);
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let starts_factor = |c: char| c.is_ascii_digit() || c == 'I';
    let mut factors = Vec::new();
    loop {
        skip_ws(&mut pos);
        let mut factor = match chars.get(pos) {
            Some('I') => {
                pos += 1;
                None
            }
            Some(c) if c.is_ascii_digit() => {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().collect();
                let dim: usize = digits.parse().map_err(|_| err("bad dimension"))?;
                if dim == 0 {
                    return Err(err("dimension must be positive"));
                }
                Some(Factor::new(dim))
            }
            _ => return Err(err("expected a dimension or I")),
        };
        // postfix duals
        loop {
            skip_ws(&mut pos);
            if chars.get(pos) == Some(&'^') && chars.get(pos + 1) == Some(&'*') {
                pos += 2;
            } else if chars.get(pos) == Some(&'*') {
                let mut look = pos + 1;
                while look < chars.len() && chars[look].is_whitespace() {
                    look += 1;
                }
                if chars.get(look).is_some_and(|&c| starts_factor(c)) {
                    break;
                }
                pos += 1;
            } else {
                break;
            }
            factor = factor.map(Factor::dual);
        }
        factors.extend(factor);
        skip_ws(&mut pos);
        match chars.get(pos) {
            None => break,
            Some('*') | Some('⊗') => pos += 1,
            Some(_) => return Err(err("unexpected character in object")),
        }
    }
    Ok(TensorObject::new(factors))
}

/// Rows of a bracketed matrix literal, without a type annotation.
pub fn parse_rows<S: Semiring>(text: &str) -> Result<Vec<Vec<S>>, LiteralError> {
    let err = |why: &str| LiteralError::new(text, why);
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err("matrix must be wrapped in [ ]"))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| err("expected `[` to open a row"))?;
        let close = body.find(']').ok_or_else(|| err("unterminated row"))?;
        let row = body[..close]
            .split(',')
            .map(|e| S::parse_literal(e))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(err("expected `,` between rows"));
        }
    }
    if rows.is_empty() {
        return Err(err("matrix has no rows"));
    }
    Ok(rows)
}

pub(super) fn parse_morphism<S: Semiring>(text: &str) -> Result<Morphism<S>, CategoryError> {
    let (matrix, annotation) = match text.rfind(':') {
        Some(k) => (&text[..k], Some(&text[k + 1..])),
        None => (text, None),
    };
    let rows = parse_rows::<S>(matrix)?;
    let (dom, cod) = match annotation {
        Some(a) => {
            let (d, c) = a
                .split_once("->")
                .ok_or_else(|| LiteralError::new(a, "expected `dom -> cod`"))?;
            (parse_object(d)?, parse_object(c)?)
        }
        None => (TensorObject::dim(rows[0].len()), TensorObject::dim(rows.len())),
    };
    Morphism::from_rows(dom, cod, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, ComplexRational};

    #[test]
    fn object_grammar() {
        let two = Factor::new(2);
        let three = Factor::new(3);
        assert_eq!(parse_object("2").unwrap(), TensorObject::new(vec![two]));
        assert_eq!(parse_object("2*").unwrap(), TensorObject::new(vec![two.dual()]));
        assert_eq!(parse_object("2^*").unwrap(), TensorObject::new(vec![two.dual()]));
        assert_eq!(parse_object("2*3").unwrap(), TensorObject::new(vec![two, three]));
        assert_eq!(parse_object("2**3").unwrap(), TensorObject::new(vec![two.dual(), three]));
        assert_eq!(parse_object("2* ⊗ 3").unwrap(), TensorObject::new(vec![two.dual(), three]));
        assert_eq!(parse_object("I").unwrap(), TensorObject::unit());
        assert_eq!(parse_object("I * 2").unwrap(), TensorObject::new(vec![two]));
        assert!(parse_object("0").is_err());
        assert!(parse_object("x").is_err());
    }

    #[test]
    fn matrix_with_annotation() {
        let m: Morphism<Boolean> = parse_morphism("[[1,0],[0,1]] : 2 -> 2*").unwrap();
        assert_eq!(m.cod(), &TensorObject::dim(2).dual());
        assert_eq!(m, Morphism::identity(&TensorObject::dim(2)).retype(TensorObject::dim(2), TensorObject::dim(2).dual()));
    }

    #[test]
    fn matrix_default_type_and_complex_entries() {
        let m: Morphism<ComplexRational> = parse_morphism("[[1+i, 0], [2, 1]]").unwrap();
        assert_eq!(m.dom(), &TensorObject::dim(2));
        assert_eq!(m.entry(0, 0), &ComplexRational::int(1, 1));
        let s: Morphism<ComplexRational> = parse_morphism("[[5]] : I -> I").unwrap();
        assert!(s.is_scalar());
    }

    #[test]
    fn shape_errors() {
        assert!(parse_morphism::<Boolean>("[[1,0],[0]]").is_err());
        assert!(parse_morphism::<Boolean>("[[1,0],[0,1]] : 3 -> 2").is_err());
        assert!(parse_morphism::<Boolean>("[1,0]").is_err());
    }
}
