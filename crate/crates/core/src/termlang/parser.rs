//! Lexer and recursive-descent parser for term files.
//!
//! ```text
//! program := decl* term? ';'?
//! decl    := 'obj' IDENT '=' NUM ';'
//!          | 'gen' IDENT ':' obj '->' obj ('=' MATRIX)? ';'
//! term    := tensor ('.' tensor)*
//! tensor  := unary ('*' unary)*
//! unary   := SCALAR '@' unary | primary
//! primary := '(' term ')' | IDENT | keyword '(' args ')'
//! obj     := factor ('*' factor)*        factor := (IDENT | NUM) ('^*' | '*')*
//! ```
//!
//! A `*` right after a factor is a dual unless another factor follows it.

use super::syntax::{Atom, Base, Obj, Term};
use super::TermError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Scalar(String),
    Matrix(String),
    Arrow,
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, TermError> {
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    let bump = |i: &mut usize, line: &mut usize, col: &mut usize| {
        if chars[*i] == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let at = |tok| Spanned { tok, line: l0, col: c0 };
        if c.is_whitespace() {
            bump(&mut i, &mut line, &mut col);
        } else if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                bump(&mut i, &mut line, &mut col);
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            bump(&mut i, &mut line, &mut col);
            bump(&mut i, &mut line, &mut col);
            out.push(at(Tok::Arrow));
        } else if c.is_ascii_digit() || c == '-' {
            let start = i;
            while i < chars.len() {
                let d = chars[i];
                let arrow = d == '-' && chars.get(i + 1) == Some(&'>');
                if arrow || !(d.is_ascii_digit() || "/+-i".contains(d)) {
                    break;
                }
                bump(&mut i, &mut line, &mut col);
            }
            out.push(at(Tok::Scalar(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                bump(&mut i, &mut line, &mut col);
            }
            out.push(at(Tok::Ident(chars[start..i].iter().collect())));
        } else if c == '[' {
            let start = i;
            let mut depth = 0usize;
            loop {
                match chars.get(i) {
                    None => return Err(TermError::syntax(l0, c0, "unterminated matrix literal")),
                    Some('[') => depth += 1,
                    Some(']') => depth -= 1,
                    _ => {}
                }
                bump(&mut i, &mut line, &mut col);
                if depth == 0 {
                    break;
                }
            }
            out.push(at(Tok::Matrix(chars[start..i].iter().collect())));
        } else if ".*@(),;:=^⊗".contains(c) {
            bump(&mut i, &mut line, &mut col);
            out.push(at(Tok::Punct(if c == '⊗' { '*' } else { c })));
        } else {
            return Err(TermError::syntax(l0, c0, format!("unexpected character `{c}`")));
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

/// A declaration from a term or model file.
#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Obj { name: String, dim: usize },
    Gen { name: String, dom: Obj, cod: Obj, matrix: Option<String> },
}

/// The contents of one file: declarations and an optional term.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub decls: Vec<Decl>,
    pub term: Option<Term>,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const KEYWORDS: &[&str] = &["id", "sym", "eta", "eps", "dg", "name", "coname", "tr", "conj", "transp"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> TermError {
        let s = &self.toks[self.pos];
        TermError::syntax(s.line, s.col, msg)
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) | Tok::Scalar(s) => format!("`{s}`"),
            Tok::Matrix(_) => "a matrix literal".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), TermError> {
        if self.peek() == &Tok::Punct(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", Self::describe(self.peek()))))
        }
    }

    fn ident(&mut self) -> Result<String, TermError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            other => Err(self.error(format!("expected a name, found {}", Self::describe(&other)))),
        }
    }

    fn program(&mut self) -> Result<Program, TermError> {
        let mut prog = Program::default();
        loop {
            match self.peek() {
                Tok::Ident(k) if k == "obj" && matches!(self.peek_at(1), Tok::Ident(_)) => {
                    self.next();
                    let name = self.ident()?;
                    self.expect('=')?;
                    let dim = match self.next() {
                        Tok::Scalar(s) => s.parse::<usize>().ok().filter(|&d| d > 0),
                        _ => None,
                    }
                    .ok_or_else(|| self.error("object dimension must be a positive integer"))?;
                    self.expect(';')?;
                    prog.decls.push(Decl::Obj { name, dim });
                }
                Tok::Ident(k) if k == "gen" && matches!(self.peek_at(1), Tok::Ident(_)) => {
                    self.next();
                    let name = self.ident()?;
                    self.expect(':')?;
                    let dom = self.object()?;
                    if self.next() != Tok::Arrow {
                        return Err(self.error("expected `->` in generator type"));
                    }
                    let cod = self.object()?;
                    let mut matrix = None;
                    if self.peek() == &Tok::Punct('=') {
                        self.next();
                        match self.next() {
                            Tok::Matrix(m) => matrix = Some(m),
                            _ => return Err(self.error("expected a matrix literal after `=`")),
                        }
                    }
                    self.expect(';')?;
                    prog.decls.push(Decl::Gen { name, dom, cod, matrix });
                }
                _ => break,
            }
        }
        if self.peek() != &Tok::Eof {
            prog.term = Some(self.term()?);
            if self.peek() == &Tok::Punct(';') {
                self.next();
            }
        }
        if self.peek() != &Tok::Eof {
            return Err(self.error(format!("unexpected {}", Self::describe(self.peek()))));
        }
        Ok(prog)
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let mut parts = vec![self.tensor()?];
        while self.peek() == &Tok::Punct('.') {
            self.next();
            parts.push(self.tensor()?);
        }
        let last = parts.pop().expect("at least one factor");
        Ok(parts.into_iter().rev().fold(last, |acc, g| Term::compose(g, acc)))
    }

    fn tensor(&mut self) -> Result<Term, TermError> {
        let mut t = self.unary()?;
        while self.peek() == &Tok::Punct('*') {
            self.next();
            t = Term::tensor(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, TermError> {
        let scalar = match self.peek() {
            Tok::Scalar(s) => Some(s.clone()),
            Tok::Ident(s) if (s == "true" || s == "false") && self.peek_at(1) == &Tok::Punct('@') => Some(s.clone()),
            _ => None,
        };
        if let Some(s) = scalar {
            self.next();
            self.expect('@')?;
            return Ok(Term::ScalarMul(s, Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term, TermError> {
        match self.peek().clone() {
            Tok::Punct('(') => {
                self.next();
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            Tok::Ident(k) if KEYWORDS.contains(&k.as_str()) && self.peek_at(1) == &Tok::Punct('(') => {
                self.next();
                self.next();
                let t = match k.as_str() {
                    "id" => Term::Id(self.object()?),
                    "eta" => Term::Eta(self.object()?),
                    "eps" => Term::Epsilon(self.object()?),
                    "sym" => {
                        let a = self.object()?;
                        self.expect(',')?;
                        Term::Sym(a, self.object()?)
                    }
                    "tr" => {
                        let t = self.term()?;
                        self.expect(';')?;
                        Term::Trace(Box::new(t), self.object()?)
                    }
                    _ => {
                        let t = Box::new(self.term()?);
                        match k.as_str() {
                            "dg" => Term::Dagger(t),
                            "name" => Term::Name(t),
                            "coname" => Term::Coname(t),
                            "conj" => Term::Conj(t),
                            _ => Term::Transp(t),
                        }
                    }
                };
                self.expect(')')?;
                Ok(t)
            }
            Tok::Ident(name) => {
                self.next();
                Ok(Term::Gen(name))
            }
            other => Err(self.error(format!("expected a term, found {}", Self::describe(&other)))),
        }
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Ident(_)) || matches!(tok, Tok::Scalar(s) if s.chars().all(|c| c.is_ascii_digit()))
    }

    fn object(&mut self) -> Result<Obj, TermError> {
        let mut atoms = Vec::new();
        loop {
            let mut atom = match self.next() {
                Tok::Ident(s) if s == "I" => None,
                Tok::Ident(s) => Some(Atom { base: Base::Named(s), dual: false }),
                Tok::Scalar(s) => match s.parse::<usize>() {
                    Ok(d) if d > 0 => Some(Atom { base: Base::Dim(d), dual: false }),
                    _ => return Err(self.error(format!("`{s}` is not an object"))),
                },
                other => return Err(self.error(format!("expected an object, found {}", Self::describe(&other)))),
            };
            loop {
                if self.peek() == &Tok::Punct('^') && self.peek_at(1) == &Tok::Punct('*') {
                    self.next();
                    self.next();
                } else if self.peek() == &Tok::Punct('*') && !Self::starts_factor(self.peek_at(1)) {
                    self.next();
                } else {
                    break;
                }
                atom = atom.map(|a| a.dual());
            }
            atoms.extend(atom);
            if self.peek() == &Tok::Punct('*') {
                self.next();
            } else {
                break;
            }
        }
        Ok(Obj(atoms))
    }
}

/// Parses a whole file: declarations followed by an optional term.
pub fn parse_program(src: &str) -> Result<Program, TermError> {
    Parser { toks: lex(src)?, pos: 0 }.program()
}

/// Parses a single term.
pub fn parse(src: &str) -> Result<Term, TermError> {
    let prog = parse_program(src)?;
    match (prog.decls.is_empty(), prog.term) {
        (true, Some(t)) => Ok(t),
        (false, _) => Err(TermError::syntax(1, 1, "declarations are not allowed in a bare term")),
        (true, None) => Err(TermError::syntax(1, 1, "empty term")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Obj {
        Obj::named("A")
    }

    #[test]
    fn triangle_parses_right_to_left() {
        let t = parse("eps(A) . (id(A) * eta(A))").unwrap();
        let want = Term::compose(Term::Epsilon(a()), Term::tensor(Term::Id(a()), Term::Eta(a())));
        assert_eq!(t, want);
        let chain = parse("f . g . h").unwrap();
        assert_eq!(chain, Term::compose(Term::gen("f"), Term::compose(Term::gen("g"), Term::gen("h"))));
    }

    #[test]
    fn object_duals_and_tensors() {
        let t = parse("sym(A*, A^* * B)").unwrap();
        let ad = a().dual();
        assert_eq!(t, Term::Sym(ad.clone(), ad.tensor(&Obj::named("B"))));
        assert_eq!(parse("id(A**B)").unwrap(), Term::Id(ad.tensor(&Obj::named("B"))));
        assert_eq!(parse("id(I)").unwrap(), Term::Id(Obj::unit()));
        assert_eq!(parse("id(2*3)").unwrap(), parse("id(2 ⊗ 3)").unwrap());
    }

    #[test]
    fn scalars_bind_tightest() {
        let t = parse("1/2 @ f * g").unwrap();
        assert_eq!(t, Term::tensor(Term::ScalarMul("1/2".into(), Box::new(Term::gen("f"))), Term::gen("g")));
        assert!(matches!(parse("-1+2i @ f").unwrap(), Term::ScalarMul(s, _) if s == "-1+2i"));
        assert!(matches!(parse("true @ f").unwrap(), Term::ScalarMul(s, _) if s == "true"));
    }

    #[test]
    fn trace_and_unary_keywords() {
        let t = parse("tr(dg(f); C)").unwrap();
        assert_eq!(t, Term::Trace(Box::new(Term::dagger(Term::gen("f"))), Obj::named("C")));
        assert!(matches!(parse("name(conj(transp(f)))").unwrap(), Term::Name(_)));
    }

    #[test]
    fn declarations() {
        let p = parse_program("obj A = 2;\ngen f : A -> A* = [[1,0],[0,1]];\ngen g : A*B -> I;\nf").unwrap();
        assert_eq!(p.decls.len(), 3);
        assert_eq!(p.decls[0], Decl::Obj { name: "A".into(), dim: 2 });
        match &p.decls[1] {
            Decl::Gen { cod, matrix, .. } => {
                assert_eq!(cod, &a().dual());
                assert_eq!(matrix.as_deref(), Some("[[1,0],[0,1]]"));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(p.term, Some(Term::gen("f")));
    }

    #[test]
    fn display_round_trips() {
        for src in ["eps(A) . (id(A) * eta(A))", "tr(sym(A, A); A)", "2 @ dg(name(f))", "coname(f) * transp(conj(g))"] {
            let t = parse(src).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{t}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("id(A) .\n  . f") {
            Err(TermError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse("id(A").is_err());
        assert!(parse("f $ g").is_err());
        assert!(parse_program("obj A = 0;").is_err());
    }
}
