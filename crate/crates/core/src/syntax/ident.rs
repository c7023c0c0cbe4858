use std::fmt;
use std::sync::Arc;

/// Name of a function, predicate or type constructor.
pub type Symbol = Arc<str>;

/// An interned name with a freshness index.
///
/// Source identifiers carry index `0`. Renamed copies keep the source base
/// and receive a positive index from a [`NameSource`]; they print as
/// `Base_N`, and the parser reads `Base_N` back into the same identifier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ident {
    base: Arc<str>,
    index: u32,
}

impl Ident {
    pub fn new(base: impl Into<Arc<str>>, index: u32) -> Self {
        Ident {
            base: base.into(),
            index,
        }
    }

    /// Reads a surface identifier, splitting a trailing `_N` suffix.
    pub fn parse(name: &str) -> Self {
        if let Some(pos) = name.rfind('_') {
            let (base, digits) = (&name[..pos], &name[pos + 1..]);
            if !base.is_empty()
                && !digits.is_empty()
                && !digits.starts_with('0')
                && digits.bytes().all(|b| b.is_ascii_digit())
            {
                if let Ok(index) = digits.parse::<u32>() {
                    return Ident::new(base, index);
                }
            }
        }
        Ident::new(name, 0)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            f.write_str(&self.base)
        } else {
            write!(f, "{}_{}", self.base, self.index)
        }
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A term variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub Ident);

/// A type parameter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param(pub Ident);

macro_rules! ident_newtype {
    ($name:ident) => {
        impl $name {
            pub fn named(name: &str) -> Self {
                $name(Ident::parse(name))
            }

            pub fn ident(&self) -> &Ident {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }

        impl From<&str> for $name {
            fn from(name: &str) -> Self {
                $name::named(name)
            }
        }
    };
}

ident_newtype!(Var);
ident_newtype!(Param);

/// Monotone supply of fresh identifiers.
///
/// Every identifier handed out has an index strictly greater than any index
/// issued before, and greater than the floor it was created with.
#[derive(Debug, Clone)]
pub struct NameSource {
    next: u32,
}

impl Default for NameSource {
    fn default() -> Self {
        NameSource { next: 1 }
    }
}

impl NameSource {
    pub fn new() -> Self {
        Self::default()
    }

    /// A source whose names are all above `floor`.
    pub fn above(floor: u32) -> Self {
        NameSource { next: floor + 1 }
    }

    pub fn fresh(&mut self, base: &str) -> Ident {
        let id = Ident::new(base, self.next);
        self.next += 1;
        id
    }

    pub fn fresh_var(&mut self, like: &Var) -> Var {
        Var(self.fresh(like.0.base()))
    }

    pub fn fresh_param(&mut self, like: &Param) -> Param {
        Param(self.fresh(like.0.base()))
    }

    /// Largest index issued so far (or the floor).
    pub fn high_water(&self) -> u32 {
        self.next - 1
    }
}

/// Canonical names `A`, `B`, ..., `Z`, `A1`, ..., `Z1`, `A2`, ...
pub fn canonical_name(n: usize) -> String {
    let letter = (b'A' + (n % 26) as u8) as char;
    match n / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}
