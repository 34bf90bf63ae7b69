use std::fmt;

/// What an object atom stands for: a declared name or a literal dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Named(String),
    Dim(usize),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Named(n) => f.write_str(n),
            Base::Dim(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub base: Base,
    pub dual: bool,
}

impl Atom {
    pub fn named(name: &str) -> Self {
        Atom { base: Base::Named(name.to_string()), dual: false }
    }

    pub fn dual(&self) -> Self {
        Atom { base: self.base.clone(), dual: !self.dual }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, if self.dual { "^*" } else { "" })
    }
}

/// A symbolic object: a word of atoms, empty for the unit `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Obj(pub Vec<Atom>);

impl Obj {
    pub fn unit() -> Self {
        Obj(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Obj(vec![a])
    }

    pub fn named(name: &str) -> Self {
        Obj::atom(Atom::named(name))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dual(&self) -> Self {
        Obj(self.0.iter().map(Atom::dual).collect())
    }

    pub fn tensor(&self, other: &Obj) -> Self {
        Obj(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn strip_suffix(&self, suffix: &Obj) -> Option<Obj> {
        self.0.strip_suffix(suffix.0.as_slice()).map(|p| Obj(p.to_vec()))
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Abstract syntax of morphism expressions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(String),
    Id(Obj),
    /// `g ∘ f`: the second component runs first.
    Compose(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    Sym(Obj, Obj),
    Eta(Obj),
    Epsilon(Obj),
    Dagger(Box<Term>),
    Name(Box<Term>),
    Coname(Box<Term>),
    Trace(Box<Term>, Obj),
    /// A scalar literal, kept as text until a semiring is chosen.
    ScalarMul(String, Box<Term>),
    Conj(Box<Term>),
    Transp(Box<Term>),
}

impl Term {
    pub fn gen(name: &str) -> Self {
        Term::Gen(name.to_string())
    }

    pub fn compose(g: Term, f: Term) -> Self {
        Term::Compose(Box::new(g), Box::new(f))
    }

    pub fn tensor(a: Term, b: Term) -> Self {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    pub fn dagger(t: Term) -> Self {
        Term::Dagger(Box::new(t))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Gen(_) | Term::Id(_) | Term::Sym(..) | Term::Eta(_) | Term::Epsilon(_) => 1,
            Term::Compose(a, b) | Term::Tensor(a, b) => 1 + a.size() + b.size(),
            Term::Dagger(t)
            | Term::Name(t)
            | Term::Coname(t)
            | Term::Trace(t, _)
            | Term::ScalarMul(_, t)
            | Term::Conj(t)
            | Term::Transp(t) => 1 + t.size(),
        }
    }

    /// True when the term mentions neither generators nor scalars.
    pub fn is_structural(&self) -> bool {
        match self {
            Term::Gen(_) | Term::ScalarMul(..) => false,
            Term::Id(_) | Term::Sym(..) | Term::Eta(_) | Term::Epsilon(_) => true,
            Term::Compose(a, b) | Term::Tensor(a, b) => a.is_structural() && b.is_structural(),
            Term::Dagger(t) | Term::Name(t) | Term::Coname(t) | Term::Trace(t, _) | Term::Conj(t) | Term::Transp(t) => {
                t.is_structural()
            }
        }
    }
}

fn paren_obj(o: &Obj) -> String {
    o.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(n) => f.write_str(n),
            Term::Id(o) => write!(f, "id({})", paren_obj(o)),
            Term::Compose(g, h) => write!(f, "({g} . {h})"),
            Term::Tensor(a, b) => write!(f, "({a} * {b})"),
            Term::Sym(a, b) => write!(f, "sym({}, {})", paren_obj(a), paren_obj(b)),
            Term::Eta(o) => write!(f, "eta({})", paren_obj(o)),
            Term::Epsilon(o) => write!(f, "eps({})", paren_obj(o)),
            Term::Dagger(t) => write!(f, "dg({t})"),
            Term::Name(t) => write!(f, "name({t})"),
            Term::Coname(t) => write!(f, "coname({t})"),
            Term::Trace(t, c) => write!(f, "tr({t}; {})", paren_obj(c)),
            Term::ScalarMul(s, t) => write!(f, "{s} @ {t}"),
            Term::Conj(t) => write!(f, "conj({t})"),
            Term::Transp(t) => write!(f, "transp({t})"),
        }
    }
}
