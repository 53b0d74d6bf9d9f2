use std::fmt;

/// Highest supported lattice rank. Ids below this bound are the `μ_i`.
pub const MAX_RANK: usize = 64;

/// Named parameters that can appear next to the `μ_i`, in variable order.
pub const PARAMS: [&str; 10] = ["a", "b", "F", "lam", "c0", "c1", "c2", "c3", "x", "y"];

/// An indeterminate of the coefficient field.
///
/// Ids `0..MAX_RANK` are `μ_1, μ_2, ...`; the named parameters follow in the
/// order of [`PARAMS`]. The id order is the variable order used by the
/// graded-lex monomial order, so every `μ_i` ranks above every parameter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u16);

impl Var {
    /// `μ_{i+1}` (zero based).
    pub fn mu(i: usize) -> Var {
        assert!(i < MAX_RANK, "lattice rank above {MAX_RANK}");
        Var(i as u16)
    }

    pub fn param(name: &str) -> Option<Var> {
        PARAMS
            .iter()
            .position(|p| *p == name)
            .map(|k| Var((MAX_RANK + k) as u16))
    }

    /// Looks up `m1..m64` or a named parameter.
    pub fn from_name(name: &str) -> Option<Var> {
        if let Some(digits) = name.strip_prefix('m') {
            if !digits.is_empty() && !digits.starts_with('0') && digits.bytes().all(|c| c.is_ascii_digit()) {
                let i: usize = digits.parse().ok()?;
                return (1..=MAX_RANK).contains(&i).then(|| Var::mu(i - 1));
            }
        }
        Var::param(name)
    }

    /// Zero-based `μ` index, if this is a `μ_i`.
    pub fn mu_index(self) -> Option<usize> {
        ((self.0 as usize) < MAX_RANK).then_some(self.0 as usize)
    }

    pub fn param_name(self) -> Option<&'static str> {
        let k = (self.0 as usize).checked_sub(MAX_RANK)?;
        PARAMS.get(k).copied()
    }

    pub fn id(self) -> u16 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.mu_index(), self.param_name()) {
            (Some(i), _) => write!(f, "m{}", i + 1),
            (None, Some(p)) => f.write_str(p),
            (None, None) => write!(f, "v{}", self.0),
        }
    }
}

/// The indeterminates a session may mention: `μ_1..μ_n` plus declared parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    n: usize,
    params: Vec<Var>,
}

impl Context {
    /// Fails with the offending name when a parameter is not one of [`PARAMS`].
    pub fn new<S: AsRef<str>>(n: usize, params: &[S]) -> Result<Context, String> {
        assert!((1..=MAX_RANK).contains(&n), "rank must be in 1..={MAX_RANK}");
        let mut vars = Vec::new();
        for p in params {
            let v = Var::param(p.as_ref()).ok_or_else(|| p.as_ref().to_string())?;
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort();
        Ok(Context { n, params: vars })
    }

    /// Rank `n` with every named parameter declared.
    pub fn with_all_params(n: usize) -> Context {
        Context::new(n, &PARAMS).expect("builtin parameters")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[Var] {
        &self.params
    }

    pub fn contains(&self, v: Var) -> bool {
        match v.mu_index() {
            Some(i) => i < self.n,
            None => self.params.contains(&v),
        }
    }

    pub fn resolve(&self, name: &str) -> Option<Var> {
        Var::from_name(name).filter(|v| self.contains(*v))
    }
}
