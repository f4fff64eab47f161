//! Expressions over the free generators ρ, a, b, η.
//!
//! An [`Expr`] is an immutable, reference-counted DAG. Shared subexpressions
//! are shared nodes, and both evaluation and the τ-rewrite memoize on node
//! identity, so work is proportional to the number of distinct nodes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::NonInvertible;
use crate::fields::{Field, Ring};

mod eval;
pub mod pit;

pub use eval::{generic_degree_ring, symbolic_evaluator, Evaluator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Rho = 0,
    A = 1,
    B = 2,
    Eta = 3,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Rho, Generator::A, Generator::B, Generator::Eta];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Rho => "rho",
            Generator::A => "a",
            Generator::B => "b",
            Generator::Eta => "eta",
        }
    }
}

#[derive(Debug)]
pub enum Node {
    Const(i64),
    Gen(Generator),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Pow(Expr, i64),
}

#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl Expr {
    fn wrap(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn constant(n: i64) -> Self {
        Self::wrap(Node::Const(n))
    }

    pub fn gen(g: Generator) -> Self {
        Self::wrap(Node::Gen(g))
    }

    pub fn rho() -> Self {
        Self::gen(Generator::Rho)
    }
    pub fn a() -> Self {
        Self::gen(Generator::A)
    }
    pub fn b() -> Self {
        Self::gen(Generator::B)
    }
    pub fn eta() -> Self {
        Self::gen(Generator::Eta)
    }

    pub fn as_const(&self) -> Option<i64> {
        match self.node() {
            Node::Const(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_literal_zero(&self) -> bool {
        self.as_const() == Some(0)
    }

    pub fn add(&self, other: &Expr) -> Expr {
        match (self.as_const(), other.as_const()) {
            (Some(0), _) => other.clone(),
            (_, Some(0)) => self.clone(),
            (Some(x), Some(y)) if x.checked_add(y).is_some() => Expr::constant(x + y),
            _ => Self::wrap(Node::Add(self.clone(), other.clone())),
        }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        match (self.as_const(), other.as_const()) {
            (_, Some(0)) => self.clone(),
            (Some(x), Some(y)) if x.checked_sub(y).is_some() => Expr::constant(x - y),
            _ => Self::wrap(Node::Sub(self.clone(), other.clone())),
        }
    }

    pub fn neg(&self) -> Expr {
        match self.as_const() {
            Some(x) if x.checked_neg().is_some() => Expr::constant(-x),
            _ => Self::wrap(Node::Mul(Expr::constant(-1), self.clone())),
        }
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        match (self.as_const(), other.as_const()) {
            (Some(0), _) | (_, Some(0)) => Expr::constant(0),
            (Some(1), _) => other.clone(),
            (_, Some(1)) => self.clone(),
            (Some(x), Some(y)) if x.checked_mul(y).is_some() => Expr::constant(x * y),
            _ => Self::wrap(Node::Mul(self.clone(), other.clone())),
        }
    }

    pub fn div(&self, other: &Expr) -> Expr {
        match (self.as_const(), other.as_const()) {
            (Some(0), Some(d)) if d != 0 => Expr::constant(0),
            (_, Some(1)) => self.clone(),
            _ => Self::wrap(Node::Div(self.clone(), other.clone())),
        }
    }

    pub fn pow(&self, k: i64) -> Expr {
        match (k, self.as_const()) {
            (0, _) => Expr::constant(1),
            (1, _) => self.clone(),
            (_, Some(1)) => self.clone(),
            _ => Self::wrap(Node::Pow(self.clone(), k)),
        }
    }

    pub fn inv(&self) -> Expr {
        self.pow(-1)
    }

    /// Applies τ: ρ ↦ ρ², a ↦ a⁻¹, b ↦ η⁵b⁻², η ↦ η²b⁻¹, extended
    /// homomorphically; constants are fixed.
    pub fn tau(&self) -> Expr {
        TauRewriter::new().apply(self)
    }

    /// τᵏ, k ≥ 0.
    pub fn tau_pow(&self, k: usize) -> Expr {
        let mut e = self.clone();
        for _ in 0..k {
            e = e.tau();
        }
        e
    }

    /// Number of distinct nodes reachable from this root.
    pub fn node_count(&self) -> usize {
        fn walk(e: &Expr, seen: &mut std::collections::HashSet<usize>) {
            if !seen.insert(e.id()) {
                return;
            }
            match e.node() {
                Node::Const(_) | Node::Gen(_) => {}
                Node::Add(l, r) | Node::Sub(l, r) | Node::Mul(l, r) | Node::Div(l, r) => {
                    walk(l, seen);
                    walk(r, seen);
                }
                Node::Pow(b, _) => walk(b, seen),
            }
        }
        let mut seen = std::collections::HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    /// Plain recursive evaluation without memoization; reference path for
    /// testing [`Evaluator`].
    pub fn eval_naive<F: Field>(&self, field: &F, gens: &[F::El; 4]) -> Result<F::El, NonInvertible> {
        Ok(match self.node() {
            Node::Const(n) => field.from_int(*n),
            Node::Gen(g) => gens[*g as usize].clone(),
            Node::Add(l, r) => field.add(&l.eval_naive(field, gens)?, &r.eval_naive(field, gens)?),
            Node::Sub(l, r) => field.sub(&l.eval_naive(field, gens)?, &r.eval_naive(field, gens)?),
            Node::Mul(l, r) => field.mul(&l.eval_naive(field, gens)?, &r.eval_naive(field, gens)?),
            Node::Div(l, r) => field.div(&l.eval_naive(field, gens)?, &r.eval_naive(field, gens)?)?,
            Node::Pow(b, k) => field.pow_signed(&b.eval_naive(field, gens)?, *k)?,
        })
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::constant(n)
    }
}

impl From<Generator> for Expr {
    fn from(g: Generator) -> Self {
        Expr::gen(g)
    }
}

/// Memoizing τ-rewriter. Reusing one rewriter across related expressions
/// preserves sharing between their images.
#[derive(Default)]
pub struct TauRewriter {
    memo: HashMap<usize, (Expr, Expr)>,
    images: Option<[Expr; 4]>,
}

impl TauRewriter {
    pub fn new() -> Self {
        Self::default()
    }

    fn generator_image(&mut self, g: Generator) -> Expr {
        let images = self.images.get_or_insert_with(|| {
            let (rho, a, b, eta) = (Expr::rho(), Expr::a(), Expr::b(), Expr::eta());
            [
                rho.pow(2),
                a.pow(-1),
                eta.pow(5).mul(&b.pow(-2)),
                eta.pow(2).mul(&b.pow(-1)),
            ]
        });
        images[g as usize].clone()
    }

    pub fn apply(&mut self, e: &Expr) -> Expr {
        if let Some((_, img)) = self.memo.get(&e.id()) {
            return img.clone();
        }
        let img = match e.node() {
            Node::Const(_) => e.clone(),
            Node::Gen(g) => self.generator_image(*g),
            Node::Add(l, r) => {
                let (l, r) = (self.apply(l), self.apply(r));
                l.add(&r)
            }
            Node::Sub(l, r) => {
                let (l, r) = (self.apply(l), self.apply(r));
                l.sub(&r)
            }
            Node::Mul(l, r) => {
                let (l, r) = (self.apply(l), self.apply(r));
                l.mul(&r)
            }
            Node::Div(l, r) => {
                let (l, r) = (self.apply(l), self.apply(r));
                l.div(&r)
            }
            Node::Pow(b, k) => self.apply(b).pow(*k),
        };
        self.memo.insert(e.id(), (e.clone(), img.clone()));
        img
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized rendering in the CLI expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(n) if *n < 0 => write!(f, "({n})"),
            Node::Const(n) => write!(f, "{n}"),
            Node::Gen(g) => write!(f, "{}", g.name()),
            Node::Add(l, r) => write!(f, "({l} + {r})"),
            Node::Sub(l, r) => write!(f, "({l} - {r})"),
            Node::Mul(l, r) => write!(f, "({l} * {r})"),
            Node::Div(l, r) => write!(f, "({l} / {r})"),
            Node::Pow(b, k) if matches!(b.node(), Node::Pow(..)) => write!(f, "({b})^{k}"),
            Node::Pow(b, k) => write!(f, "{b}^{k}"),
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

/// The syntactic ring of expressions. Operations build DAG nodes; only
/// literal zeros are recognised by `is_zero`, and `inv` never fails except on
/// a literal zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExprRing;

impl Ring for ExprRing {
    type El = Expr;

    fn zero(&self) -> Expr {
        Expr::constant(0)
    }
    fn one(&self) -> Expr {
        Expr::constant(1)
    }
    fn from_int(&self, n: i64) -> Expr {
        Expr::constant(n)
    }
    fn add(&self, x: &Expr, y: &Expr) -> Expr {
        x.add(y)
    }
    fn sub(&self, x: &Expr, y: &Expr) -> Expr {
        x.sub(y)
    }
    fn neg(&self, x: &Expr) -> Expr {
        x.neg()
    }
    fn mul(&self, x: &Expr, y: &Expr) -> Expr {
        x.mul(y)
    }
    fn is_zero(&self, x: &Expr) -> bool {
        x.is_literal_zero()
    }
    fn decides_zero(&self) -> bool {
        false
    }
    fn equal(&self, x: &Expr, y: &Expr) -> bool {
        x.ptr_eq(y) || matches!((x.as_const(), y.as_const()), (Some(p), Some(q)) if p == q)
    }
    fn pow(&self, x: &Expr, k: u64) -> Expr {
        x.pow(k as i64)
    }
}

impl Field for ExprRing {
    fn inv(&self, x: &Expr) -> Result<Expr, NonInvertible> {
        if x.is_literal_zero() {
            Err(NonInvertible)
        } else {
            Ok(x.inv())
        }
    }
    fn div(&self, x: &Expr, y: &Expr) -> Result<Expr, NonInvertible> {
        if y.is_literal_zero() {
            Err(NonInvertible)
        } else {
            Ok(x.div(y))
        }
    }
    fn pow_signed(&self, x: &Expr, k: i64) -> Result<Expr, NonInvertible> {
        if k < 0 && x.is_literal_zero() {
            Err(NonInvertible)
        } else {
            Ok(x.pow(k))
        }
    }
}

/// Least k ≥ 1 with τᵏ fixing ρ, a, b and η, decided exactly in
/// Q(ρ)(a, b, η). `None` if no such k ≤ `limit`.
pub fn tau_power_order(limit: usize) -> Option<usize> {
    let mut images: Vec<Expr> = Generator::ALL.iter().map(|g| Expr::gen(*g)).collect();
    for k in 1..=limit {
        let mut rw = TauRewriter::new();
        images = images.iter().map(|e| rw.apply(e)).collect();
        let fixed = Generator::ALL
            .iter()
            .zip(&images)
            .all(|(g, img)| symbolic_equal(img, &Expr::gen(*g)));
        if fixed {
            return Some(k);
        }
    }
    None
}

/// Exact equality in Q(ρ)(a, b, η). Expressions whose evaluation divides by
/// zero compare unequal.
pub fn symbolic_equal(e1: &Expr, e2: &Expr) -> bool {
    let mut ev = symbolic_evaluator();
    match (ev.eval(e1), ev.eval(e2)) {
        (Ok(x), Ok(y)) => x.equals(&y),
        _ => false,
    }
}
