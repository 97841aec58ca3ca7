use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use super::PolyError;

struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

static INTERNER: Lazy<RwLock<Interner>> =
    Lazy::new(|| RwLock::new(Interner { names: Vec::new(), ids: HashMap::new() }));

/// A named indeterminate.
///
/// Names are interned process-wide, so copying and comparing a `Var` is cheap.
/// The derived ordering follows interning order and is only used for internal
/// storage; anything user-visible is ordered by name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// Interns `name`, which must look like an identifier (`[A-Za-z_][A-Za-z0-9_]*`).
    pub fn new(name: &str) -> Result<Var, PolyError> {
        if !is_identifier(name) {
            return Err(PolyError::InvalidName(name.to_string()));
        }
        if let Some(&id) = INTERNER.read().unwrap().ids.get(name) {
            return Ok(Var(id));
        }
        let mut guard = INTERNER.write().unwrap();
        if let Some(&id) = guard.ids.get(name) {
            return Ok(Var(id));
        }
        let id = guard.names.len() as u32;
        let shared: Arc<str> = Arc::from(name);
        guard.names.push(shared.clone());
        guard.ids.insert(shared, id);
        Ok(Var(id))
    }

    pub fn name(&self) -> Arc<str> {
        INTERNER.read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A power product of indeterminates, kept sorted by variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 == b[j].0 {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            } else if a[i].0 < b[j].0 {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits off the power of `v`, returning `(exponent, rest)`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        (e, Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect()))
    }

    /// Name-ordered view used for printing and for canonical comparisons.
    pub fn named(&self) -> Vec<(Arc<str>, u32)> {
        let mut v: Vec<(Arc<str>, u32)> = self.0.iter().map(|&(x, e)| (x.name(), e)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Canonical term order: total degree ascending, then lexicographic by name
/// with higher powers of earlier names first.
pub(crate) fn canonical_cmp(a: &[(Arc<str>, u32)], b: &[(Arc<str>, u32)]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da: u32 = a.iter().map(|p| p.1).sum();
    let db: u32 = b.iter().map(|p| p.1).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.0.cmp(&y.0) {
                Ordering::Equal => {}
                o => return o,
            }
            match y.1.cmp(&x.1) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        b.len().cmp(&a.len())
    })
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (name, e)) in self.named().into_iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
