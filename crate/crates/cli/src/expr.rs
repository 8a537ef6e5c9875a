//! Abstract syntax for morphism expressions and its canonical printer.

use std::fmt;

/// Constants that need no arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    /// Comultiplication `d: F(A) -> F(A) ⊗ F(A)`.
    Comult,
    /// Counit `e: F(A) -> I`.
    Counit,
    /// Single-particle projection `ε: F(A) -> A`.
    Eps,
    /// Adjunction unit at the copying comonoid, `A -> F(A)`.
    Eta,
    /// Vacuum `I -> F(A)`.
    Vac,
    /// Symmetry on `F(A) ⊗ F(A)`.
    Swap,
    /// `ζ: I -> A ⊗ A*`.
    Zeta,
    /// `θ: A* ⊗ A -> I`.
    Theta,
    /// Identity on `F(A)`.
    Id,
    /// Identity on `A`.
    IdA,
}

/// Ladder-style builtins that take a single-particle state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    Raise,
    Lower,
    Coh,
}

/// Builtins indexed by a particle number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Indexed {
    /// Symmetrizer on `A^{⊗n}`.
    Sym,
    /// Sector projection `F(A) -> S^n(A)`.
    Proj,
    /// Sector injection `S^n(A) -> F(A)`.
    Inj,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Const {
        op: Constant,
        cutoff: Option<usize>,
    },
    Ladder {
        op: Ladder,
        cutoff: Option<usize>,
        arg: Box<Expr>,
    },
    Indexed {
        op: Indexed,
        cutoff: Option<usize>,
        n: usize,
    },
    Name(Box<Expr>),
    Dag(Box<Expr>),
    Scale {
        re: f64,
        im: f64,
        body: Box<Expr>,
    },
    With {
        dim: Option<usize>,
        cutoff: Option<usize>,
        body: Box<Expr>,
    },
    /// `first ; second`, meaning `second ∘ first`.
    Seq(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
}

impl Constant {
    pub const ALL: [Constant; 10] = [
        Constant::Comult,
        Constant::Counit,
        Constant::Eps,
        Constant::Eta,
        Constant::Vac,
        Constant::Swap,
        Constant::Zeta,
        Constant::Theta,
        Constant::Id,
        Constant::IdA,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Constant::Comult => "d",
            Constant::Counit => "e",
            Constant::Eps => "eps",
            Constant::Eta => "eta",
            Constant::Vac => "vac",
            Constant::Swap => "swap",
            Constant::Zeta => "zeta",
            Constant::Theta => "theta",
            Constant::Id => "id",
            Constant::IdA => "ida",
        }
    }

    /// Whether the constant lives on the Fock space, so a cutoff makes sense.
    pub fn uses_cutoff(self) -> bool {
        !matches!(self, Constant::Zeta | Constant::Theta | Constant::IdA)
    }
}

impl Ladder {
    pub const ALL: [Ladder; 3] = [Ladder::Raise, Ladder::Lower, Ladder::Coh];

    pub fn keyword(self) -> &'static str {
        match self {
            Ladder::Raise => "raise",
            Ladder::Lower => "lower",
            Ladder::Coh => "coh",
        }
    }
}

impl Indexed {
    pub const ALL: [Indexed; 3] = [Indexed::Sym, Indexed::Proj, Indexed::Inj];

    pub fn keyword(self) -> &'static str {
        match self {
            Indexed::Sym => "sym",
            Indexed::Proj => "proj",
            Indexed::Inj => "inj",
        }
    }

    pub fn uses_cutoff(self) -> bool {
        !matches!(self, Indexed::Sym)
    }
}

/// Words that cannot be used as variable names.
pub const KEYWORDS: [&str; 20] = [
    "d", "e", "eps", "eta", "vac", "swap", "zeta", "theta", "id", "ida", "raise", "lower", "coh",
    "sym", "proj", "inj", "name", "dag", "scale", "with",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

impl Expr {
    pub fn seq(first: Expr, second: Expr) -> Expr {
        Expr::Seq(Box::new(first), Box::new(second))
    }

    pub fn tensor(left: Expr, right: Expr) -> Expr {
        Expr::Tensor(Box::new(left), Box::new(right))
    }

    pub fn sum(left: Expr, right: Expr) -> Expr {
        Expr::Add(Box::new(left), Box::new(right))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn constant(op: Constant) -> Expr {
        Expr::Const { op, cutoff: None }
    }

    pub fn ladder(op: Ladder, arg: Expr) -> Expr {
        Expr::Ladder {
            op,
            cutoff: None,
            arg: Box::new(arg),
        }
    }

    pub fn dag(inner: Expr) -> Expr {
        Expr::Dag(Box::new(inner))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Seq(..) => 0,
            Expr::Add(..) => 1,
            Expr::Tensor(..) => 2,
            _ => 3,
        }
    }
}

fn cutoff_suffix(f: &mut fmt::Formatter<'_>, cutoff: Option<usize>) -> fmt::Result {
    match cutoff {
        Some(n) => write!(f, "[{n}]"),
        None => Ok(()),
    }
}

fn number(x: f64) -> String {
    // `{:?}` always prints a decimal point or an exponent
    format!("{x:?}")
}

/// Prints a binary node: left-associative, so only the right operand needs
/// brackets at equal precedence.
fn binary(f: &mut fmt::Formatter<'_>, prec: u8, l: &Expr, op: &str, r: &Expr) -> fmt::Result {
    if l.precedence() < prec {
        write!(f, "({l})")?;
    } else {
        write!(f, "{l}")?;
    }
    write!(f, " {op} ")?;
    if r.precedence() <= prec {
        write!(f, "({r})")
    } else {
        write!(f, "{r}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Const { op, cutoff } => {
                write!(f, "{}", op.keyword())?;
                cutoff_suffix(f, *cutoff)
            }
            Expr::Ladder { op, cutoff, arg } => {
                write!(f, "{}", op.keyword())?;
                cutoff_suffix(f, *cutoff)?;
                write!(f, "({arg})")
            }
            Expr::Indexed { op, cutoff, n } => {
                write!(f, "{}", op.keyword())?;
                cutoff_suffix(f, *cutoff)?;
                write!(f, "({n})")
            }
            Expr::Name(inner) => write!(f, "name({inner})"),
            Expr::Dag(inner) => write!(f, "dag({inner})"),
            Expr::Scale { re, im, body } => {
                write!(f, "scale({}, {}, {body})", number(*re), number(*im))
            }
            Expr::With { dim, cutoff, body } => {
                write!(f, "with(")?;
                match (dim, cutoff) {
                    (Some(d), Some(n)) => write!(f, "d={d}, N={n}")?,
                    (Some(d), None) => write!(f, "d={d}")?,
                    (None, Some(n)) => write!(f, "N={n}")?,
                    (None, None) => {}
                }
                write!(f, ") {{ {body} }}")
            }
            Expr::Seq(l, r) => binary(f, 0, l, ";", r),
            Expr::Add(l, r) => binary(f, 1, l, "+", r),
            Expr::Tensor(l, r) => binary(f, 2, l, "*", r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_minimal_brackets() {
        let e = Expr::seq(
            Expr::seq(Expr::constant(Constant::Vac), Expr::var("f")),
            Expr::tensor(Expr::var("g"), Expr::sum(Expr::var("h"), Expr::var("k"))),
        );
        assert_eq!(e.to_string(), "vac ; f ; g * (h + k)");
        let right = Expr::seq(Expr::var("a"), Expr::seq(Expr::var("b"), Expr::var("c")));
        assert_eq!(right.to_string(), "a ; (b ; c)");
    }

    #[test]
    fn prints_builtins() {
        let e = Expr::Scale {
            re: 1.0,
            im: -0.5,
            body: Box::new(Expr::Ladder {
                op: Ladder::Coh,
                cutoff: Some(3),
                arg: Box::new(Expr::var("phi")),
            }),
        };
        assert_eq!(e.to_string(), "scale(1.0, -0.5, coh[3](phi))");
        let w = Expr::With {
            dim: None,
            cutoff: Some(2),
            body: Box::new(Expr::Indexed {
                op: Indexed::Proj,
                cutoff: None,
                n: 1,
            }),
        };
        assert_eq!(w.to_string(), "with(N=2) { proj(1) }");
    }

    #[test]
    fn keyword_table_is_complete() {
        for c in Constant::ALL {
            assert!(is_keyword(c.keyword()));
        }
        for l in Ladder::ALL {
            assert!(is_keyword(l.keyword()));
        }
        for i in Indexed::ALL {
            assert!(is_keyword(i.keyword()));
        }
    }
}
