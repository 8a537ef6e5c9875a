//! A small language for writing morphisms between truncated Fock spaces,
//! plus the I/O used by the `fockcat` binary.
//!
//! Expressions read left to right: `f ; g` applies `f` first, so it denotes
//! `g ∘ f`. `*` is the tensor product and `+` adds parallel morphisms;
//! `;` binds loosest, then `+`, then `*`.
//!
//! ```
//! use fockcat_cli::{eval_expr, parse_expr, Environment};
//!
//! let env = Environment::new(2, 3);
//! let one = eval_expr(&parse_expr("vac ; e").unwrap(), &env).unwrap();
//! assert!((one.as_scalar().unwrap().re - 1.0).abs() < 1e-15);
//! ```

pub mod error;
pub mod eval;
pub mod expr;
pub mod io;
pub mod parse;

pub use error::{ExprError, Result};
pub use eval::{eval_expr, eval_typed, typecheck, Environment, Typed};
pub use expr::Expr;
pub use io::load_matrix;
pub use parse::parse_expr;
