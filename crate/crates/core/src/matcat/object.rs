use std::fmt;

/// One base factor of a tensor word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub dim: usize,
    pub dual: bool,
}

impl Factor {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "factor dimension must be positive");
        Factor { dim, dual: false }
    }

    pub fn dual(self) -> Self {
        Factor { dual: !self.dual, ..self }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.dim, if self.dual { "*" } else { "" })
    }
}

/// An object of the strict matrix category: a word of factors.
///
/// The empty word is the monoidal unit `I`. Tensor is concatenation, so the
/// associator and unitors are literally identities and never materialized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TensorObject {
    factors: Vec<Factor>,
}

impl TensorObject {
    pub fn new(factors: Vec<Factor>) -> Self {
        TensorObject { factors }
    }

    pub fn unit() -> Self {
        TensorObject::default()
    }

    /// A single non-dual factor of dimension `n`.
    pub fn dim(n: usize) -> Self {
        TensorObject::new(vec![Factor::new(n)])
    }

    pub fn from_dims(dims: &[usize]) -> Self {
        TensorObject::new(dims.iter().map(|&d| Factor::new(d)).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    /// Pointwise dual; an involution with `I* = I`.
    pub fn dual(&self) -> Self {
        TensorObject::new(self.factors.iter().map(|f| f.dual()).collect())
    }

    pub fn tensor(&self, other: &TensorObject) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        TensorObject::new(factors)
    }

    /// If `self = prefix ⊗ suffix`, returns `prefix`.
    pub fn strip_suffix(&self, suffix: &TensorObject) -> Option<TensorObject> {
        self.factors
            .strip_suffix(suffix.factors.as_slice())
            .map(|p| TensorObject::new(p.to_vec()))
    }
}

impl fmt::Display for TensorObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}
