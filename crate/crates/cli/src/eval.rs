//! Typechecking and evaluation of expressions against an environment.

use std::collections::BTreeMap;

use fockcat::algebraic::ComonoidPresentation;
use fockcat::fock::{
    coherent_state, comultiplication, counit_e, epsilon_single, eta_comonoid, lowering, raising,
    sector_injection, sector_projection, vacuum_state, FockSpace,
};
use fockcat::morphism::{add, compose, duality_pair, swap, tensor};
use fockcat::symtensor::{sym_object, symmetrizer};
use fockcat::{Cplx, Morphism, SpaceObject};

use crate::error::{ExprError, Result};
use crate::expr::{Constant, Expr, Indexed, Ladder};

/// Variable bindings plus the ambient Fock context `(d, N)`.
#[derive(Debug, Clone)]
pub struct Environment {
    bindings: BTreeMap<String, Morphism>,
    dim: usize,
    cutoff: usize,
}

impl Environment {
    pub fn new(dim: usize, cutoff: usize) -> Self {
        Environment {
            bindings: BTreeMap::new(),
            dim,
            cutoff,
        }
    }

    pub fn bind(&mut self, name: &str, value: Morphism) -> Result<()> {
        if crate::expr::is_keyword(name) || name.is_empty() {
            return Err(ExprError::Syntax {
                line: 1,
                column: 1,
                message: format!("`{name}` cannot be bound"),
            });
        }
        self.bindings.insert(name.to_string(), value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Morphism> {
        self.bindings.get(name)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn context(&self) -> Ctx {
        Ctx {
            dim: self.dim,
            cutoff: self.cutoff,
        }
    }
}

impl Default for Environment {
    fn default() -> Self {
        Environment::new(2, 3)
    }
}

#[derive(Debug, Clone, Copy)]
struct Ctx {
    dim: usize,
    cutoff: usize,
}

impl Ctx {
    fn base(&self) -> SpaceObject {
        SpaceObject::base(self.dim)
    }

    fn fock(&self, cutoff: Option<usize>) -> FockSpace {
        FockSpace::new(&self.base(), cutoff.unwrap_or(self.cutoff))
    }
}

/// An expression with its inferred type attached to every node.
#[derive(Debug, Clone)]
pub struct Typed {
    pub dom: SpaceObject,
    pub cod: SpaceObject,
    pub expr: Expr,
    node: Node,
}

#[derive(Debug, Clone)]
enum Node {
    Var(String),
    Const(Constant, FockSpace),
    Ladder(Ladder, FockSpace, Box<Typed>),
    Indexed(Indexed, FockSpace, usize),
    Name(Box<Typed>),
    Dag(Box<Typed>),
    Scale(Cplx, Box<Typed>),
    With(Box<Typed>),
    Seq(Box<Typed>, Box<Typed>),
    Tensor(Box<Typed>, Box<Typed>),
    Add(Box<Typed>, Box<Typed>),
}

impl Typed {
    /// Children in evaluation order.
    pub fn children(&self) -> Vec<&Typed> {
        match &self.node {
            Node::Var(_) | Node::Const(..) | Node::Indexed(..) => vec![],
            Node::Ladder(_, _, a)
            | Node::Name(a)
            | Node::Dag(a)
            | Node::Scale(_, a)
            | Node::With(a) => vec![a],
            Node::Seq(a, b) | Node::Tensor(a, b) | Node::Add(a, b) => vec![a, b],
        }
    }
}

fn mismatch(e: &Expr, message: &str, left: &SpaceObject, right: &SpaceObject) -> ExprError {
    ExprError::Type {
        subexpr: e.to_string(),
        message: message.to_string(),
        left: left.clone(),
        right: right.clone(),
    }
}

fn leaf(expr: &Expr, node: Node, dom: SpaceObject, cod: SpaceObject) -> Typed {
    Typed {
        dom,
        cod,
        expr: expr.clone(),
        node,
    }
}

/// Infers the type of every subexpression without evaluating anything.
pub fn typecheck(e: &Expr, env: &Environment) -> Result<Typed> {
    check(e, env, env.context())
}

fn check(e: &Expr, env: &Environment, ctx: Ctx) -> Result<Typed> {
    let wrap = |node: Node, dom: SpaceObject, cod: SpaceObject| leaf(e, node, dom, cod);
    Ok(match e {
        Expr::Var(name) => {
            let m = env
                .get(name)
                .ok_or_else(|| ExprError::Unbound(name.clone()))?;
            wrap(Node::Var(name.clone()), m.dom().clone(), m.cod().clone())
        }
        Expr::Const { op, cutoff } => {
            let f = ctx.fock(*cutoff);
            let a = ctx.base();
            let fo = f.object().clone();
            let ff = SpaceObject::tensor(&fo, &fo);
            let (dom, cod) = match op {
                Constant::Comult => (fo, ff),
                Constant::Counit => (fo, SpaceObject::unit()),
                Constant::Eps => (fo, a),
                Constant::Eta => (a, fo),
                Constant::Vac => (SpaceObject::unit(), fo),
                Constant::Swap => (ff.clone(), ff),
                Constant::Zeta => (
                    SpaceObject::unit(),
                    SpaceObject::tensor(&a, &SpaceObject::dual(&a)),
                ),
                Constant::Theta => (
                    SpaceObject::tensor(&SpaceObject::dual(&a), &a),
                    SpaceObject::unit(),
                ),
                Constant::Id => (fo.clone(), fo),
                Constant::IdA => (a.clone(), a),
            };
            wrap(Node::Const(*op, f), dom, cod)
        }
        Expr::Ladder { op, cutoff, arg } => {
            let f = ctx.fock(*cutoff);
            let arg = check(arg, env, ctx)?;
            let a = ctx.base();
            if arg.dom.dim() != 1 {
                return Err(mismatch(
                    &arg.expr,
                    &format!(
                        "argument of {} must be a state, not a map out of",
                        op.keyword()
                    ),
                    &arg.dom,
                    &SpaceObject::unit(),
                ));
            }
            if arg.cod.dim() != a.dim() {
                return Err(mismatch(
                    &arg.expr,
                    &format!(
                        "argument of {} must be a single-particle state",
                        op.keyword()
                    ),
                    &arg.cod,
                    &a,
                ));
            }
            let fo = f.object().clone();
            let (dom, cod) = match op {
                Ladder::Coh => (SpaceObject::unit(), fo),
                _ => (fo.clone(), fo),
            };
            wrap(Node::Ladder(*op, f, Box::new(arg)), dom, cod)
        }
        Expr::Indexed { op, cutoff, n } => {
            let f = ctx.fock(*cutoff);
            let a = ctx.base();
            let (dom, cod) = match op {
                Indexed::Sym => {
                    let p = SpaceObject::tensor_power(&a, *n);
                    (p.clone(), p)
                }
                _ if *n > f.cutoff() => {
                    return Err(mismatch(
                        e,
                        &format!("sector {n} lies above the cutoff of"),
                        &sym_object(&a, *n),
                        f.object(),
                    ))
                }
                Indexed::Proj => (f.object().clone(), sym_object(&a, *n)),
                Indexed::Inj => (sym_object(&a, *n), f.object().clone()),
            };
            wrap(Node::Indexed(*op, f, *n), dom, cod)
        }
        Expr::Name(inner) => {
            let t = check(inner, env, ctx)?;
            let cod = SpaceObject::tensor(&t.cod, &SpaceObject::dual(&t.dom));
            wrap(Node::Name(Box::new(t)), SpaceObject::unit(), cod)
        }
        Expr::Dag(inner) => {
            let t = check(inner, env, ctx)?;
            let (dom, cod) = (t.cod.clone(), t.dom.clone());
            wrap(Node::Dag(Box::new(t)), dom, cod)
        }
        Expr::Scale { re, im, body } => {
            let t = check(body, env, ctx)?;
            let (dom, cod) = (t.dom.clone(), t.cod.clone());
            wrap(Node::Scale(Cplx::new(*re, *im), Box::new(t)), dom, cod)
        }
        Expr::With { dim, cutoff, body } => {
            if *dim == Some(0) {
                return Err(mismatch(
                    e,
                    "single-particle space must be nonzero, not",
                    &SpaceObject::zero(),
                    &SpaceObject::base(1),
                ));
            }
            let inner = Ctx {
                dim: dim.unwrap_or(ctx.dim),
                cutoff: cutoff.unwrap_or(ctx.cutoff),
            };
            let t = check(body, env, inner)?;
            let (dom, cod) = (t.dom.clone(), t.cod.clone());
            wrap(Node::With(Box::new(t)), dom, cod)
        }
        Expr::Seq(l, r) => {
            let (l, r) = (check(l, env, ctx)?, check(r, env, ctx)?);
            if !l.cod.is_compatible(&r.dom) {
                return Err(mismatch(
                    e,
                    "codomain of the first step does not match the domain of the second",
                    &l.cod,
                    &r.dom,
                ));
            }
            let (dom, cod) = (l.dom.clone(), r.cod.clone());
            wrap(Node::Seq(Box::new(l), Box::new(r)), dom, cod)
        }
        Expr::Tensor(l, r) => {
            let (l, r) = (check(l, env, ctx)?, check(r, env, ctx)?);
            let dom = SpaceObject::tensor(&l.dom, &r.dom);
            let cod = SpaceObject::tensor(&l.cod, &r.cod);
            wrap(Node::Tensor(Box::new(l), Box::new(r)), dom, cod)
        }
        Expr::Add(l, r) => {
            let (l, r) = (check(l, env, ctx)?, check(r, env, ctx)?);
            if !l.dom.is_compatible(&r.dom) {
                return Err(mismatch(
                    e,
                    "summands have different domains",
                    &l.dom,
                    &r.dom,
                ));
            }
            if !l.cod.is_compatible(&r.cod) {
                return Err(mismatch(
                    e,
                    "summands have different codomains",
                    &l.cod,
                    &r.cod,
                ));
            }
            let (dom, cod) = (l.dom.clone(), l.cod.clone());
            wrap(Node::Add(Box::new(l), Box::new(r)), dom, cod)
        }
    })
}

fn at(t: &Typed, r: fockcat::Result<Morphism>) -> Result<Morphism> {
    r.map_err(|source| ExprError::Eval {
        subexpr: t.expr.to_string(),
        source,
    })
}

/// Evaluates a typechecked expression.
pub fn eval_typed(t: &Typed, env: &Environment) -> Result<Morphism> {
    let m = match &t.node {
        Node::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| ExprError::Unbound(name.clone()))?,
        Node::Const(op, f) => {
            let a = f.base().clone();
            match op {
                Constant::Comult => comultiplication(f),
                Constant::Counit => counit_e(f),
                Constant::Eps => at(t, epsilon_single(f))?,
                Constant::Eta => at(t, eta_comonoid(&ComonoidPresentation::copy(&a), f))?,
                Constant::Vac => vacuum_state(f),
                Constant::Swap => swap(f.object(), f.object()),
                Constant::Zeta => duality_pair(&a).0,
                Constant::Theta => duality_pair(&a).1,
                Constant::Id => Morphism::identity(f.object()),
                Constant::IdA => Morphism::identity(&a),
            }
        }
        Node::Ladder(op, f, arg) => {
            let phi = eval_typed(arg, env)?;
            let phi = at(arg, phi.cast(&SpaceObject::unit(), f.base()))?;
            match op {
                Ladder::Raise => at(t, raising(f, &phi))?,
                Ladder::Lower => at(t, lowering(f, &phi))?,
                Ladder::Coh => at(t, coherent_state(f, &phi))?,
            }
        }
        Node::Indexed(op, f, n) => match op {
            Indexed::Sym => symmetrizer(f.base(), *n),
            Indexed::Proj => at(t, sector_projection(f, *n))?,
            Indexed::Inj => at(t, sector_injection(f, *n))?,
        },
        Node::Name(inner) => eval_typed(inner, env)?.name_of(),
        Node::Dag(inner) => eval_typed(inner, env)?.dagger(),
        Node::Scale(z, inner) => eval_typed(inner, env)?.scale(*z),
        Node::With(inner) => eval_typed(inner, env)?,
        Node::Seq(l, r) => {
            let (f, g) = (eval_typed(l, env)?, eval_typed(r, env)?);
            at(t, compose(&g, &f))?
        }
        Node::Tensor(l, r) => tensor(&eval_typed(l, env)?, &eval_typed(r, env)?),
        Node::Add(l, r) => {
            let (f, g) = (eval_typed(l, env)?, eval_typed(r, env)?);
            at(t, add(&f, &g))?
        }
    };
    at(t, m.cast(&t.dom, &t.cod))
}

/// Typechecks and evaluates `e`.
pub fn eval_expr(e: &Expr, env: &Environment) -> Result<Morphism> {
    eval_typed(&typecheck(e, env)?, env)
}
